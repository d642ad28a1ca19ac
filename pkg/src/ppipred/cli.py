"""Command-line pipeline: featurize, split, negatives, train, predict,
eval, cv, export-scales.

Every output file embeds the tool version, the scale variant, and the
seed that produced it (as '#' comments in TSV/CSV, as fields in JSON),
so any result can be regenerated byte-for-byte.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .classifier import TrainConfig, load_model, save_model, train_svm
from .errors import InfeasibleSplitError, ParseError, PpiPredError
from .evaluation import evaluate_model, kfold_cv
from .features import featurize_dataset
from .scales import ScaleVariant, scale_table
from .sequences import (
    InteractionRecord,
    UnknownResiduePolicy,
    load_fasta,
    load_pairs,
    write_pairs,
)
from .splitgen import SplitTargets, generate_split, sample_negatives, verify_split


def _seed_arg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("seed must be >= 0")
    return value


def _provenance(variant: str, seed) -> list[str]:
    return [
        f"ppipred_version={__version__}",
        f"scale_variant={variant}",
        f"seed={seed if seed is not None else 'none'}",
    ]


def _add_scale_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--scale-variant", choices=["paper", "corrected"],
                   default="paper", help="scale table variant (default: paper)")
    p.add_argument("--unknown-residue", choices=["error", "skip"],
                   default="error",
                   help="policy for residues outside the 20-letter alphabet")


def _add_svm_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--C", type=float, default=1.0, help="soft-margin penalty")
    p.add_argument("--epochs", type=int, default=200)
    p.add_argument("--tol", type=float, default=1e-6,
                   help="relative per-epoch improvement threshold")
    p.add_argument("--no-standardize", action="store_true",
                   help="train on raw feature columns")


def _featurize(args) -> int:
    seqs = load_fasta(args.fasta, policy=UnknownResiduePolicy(args.unknown_residue))
    records = load_pairs(args.pairs)
    table = scale_table(ScaleVariant(args.scale_variant))
    fm = featurize_dataset(records, seqs, table)
    Path(args.out).write_text(
        fm.to_csv(header_comments=_provenance(args.scale_variant, None))
    )
    print(f"featurized {len(fm)} pairs -> {args.out}")
    return 0


def _split(args) -> int:
    records = load_pairs(args.pairs)
    ratio = _parse_ratio(args.ratio)
    targets = _targets_from(args, ratio)
    last_error: InfeasibleSplitError | None = None
    for attempt in range(args.retries + 1):
        seed = args.seed + attempt
        try:
            split = generate_split(records, targets, seed=seed)
            break
        except InfeasibleSplitError as exc:
            last_error = exc
    else:
        raise last_error  # type: ignore[misc]
    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    header = "\n".join(_provenance("n/a", seed))
    for name, recs in split.sets().items():
        (outdir / f"{name}.tsv").write_text(write_pairs(recs, header=header))
    report = verify_split(split)
    payload = {
        "ppipred_version": __version__,
        "seed": seed,
        "config": {
            "pairs": str(args.pairs),
            "out_dir": str(args.out_dir),
            "train_size": args.train_size,
            "c1_size": args.c1_size,
            "c2_size": args.c2_size,
            "c3_size": args.c3_size,
            "ratio": args.ratio,
            "seed": args.seed,
            "retries": args.retries,
        },
        "targets": {
            name: {"positives": t.positives, "negatives": t.negatives}
            for name, t in (("train", targets.train), ("c1", targets.c1),
                            ("c2", targets.c2), ("c3", targets.c3))
        },
        "verification": report.to_dict(),
    }
    (outdir / "split_report.json").write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n"
    )
    print(f"split written to {outdir} (seed {seed}, verified ok={report.ok})")
    return 0


def _parse_ratio(text: str) -> float:
    try:
        pos, neg = (int(v) for v in text.split(":"))
        if pos <= 0 or neg <= 0:
            raise ValueError
    except ValueError:
        raise ParseError(f"ratio must look like '1:1', got {text!r}")
    return pos / (pos + neg)


def _targets_from(args, pos_fraction: float) -> SplitTargets:
    from .splitgen import ClassTarget

    def target(total: int) -> ClassTarget:
        pos = round(total * pos_fraction)
        return ClassTarget(positives=pos, negatives=total - pos)

    return SplitTargets(train=target(args.train_size), c1=target(args.c1_size),
                        c2=target(args.c2_size), c3=target(args.c3_size))


def _negatives(args) -> int:
    seqs = load_fasta(args.fasta, policy=UnknownResiduePolicy.SKIP)
    nodes = list(seqs)
    known = {r.key() for r in load_pairs(args.known)} if args.known else set()
    records = sample_negatives(nodes, known, n=args.n, seed=args.seed)
    header = "\n".join(_provenance("n/a", args.seed))
    Path(args.out).write_text(write_pairs(records, header=header))
    print(f"sampled {len(records)} negatives -> {args.out}")
    return 0


def _train(args) -> int:
    seqs = load_fasta(args.fasta, policy=UnknownResiduePolicy(args.unknown_residue))
    records = load_pairs(args.pairs)
    variant = ScaleVariant(args.scale_variant)
    fm = featurize_dataset(records, seqs, scale_table(variant))
    config = TrainConfig(C=args.C, epochs=args.epochs, tol=args.tol,
                         seed=args.seed, standardize=not args.no_standardize)
    model = train_svm(fm.values, fm.labels, config=config, scale_variant=variant)
    save_model(model, args.out)
    print(f"trained on {len(fm)} pairs (seed {args.seed}, "
          f"final objective {model.objective_history[-1]:.6g}) -> {args.out}")
    return 0


def _load_pairs_loose(path) -> list[tuple[str, str, int | None]]:
    """Pairs file where the label column is optional (prediction input)."""
    out: list[tuple[str, str, int | None]] = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) == 2:
            ida, idb, label = fields[0].strip(), fields[1].strip(), None
        elif len(fields) == 3:
            ida, idb = fields[0].strip(), fields[1].strip()
            if fields[2].strip() not in ("0", "1"):
                raise ParseError(f"label must be 0 or 1, got {fields[2]!r}",
                                 line=lineno)
            label = int(fields[2])
        else:
            raise ParseError(f"expected 2 or 3 fields, got {len(fields)}",
                             line=lineno)
        if not ida or not idb:
            raise ParseError("empty protein id", line=lineno)
        out.append((ida, idb, label))
    return out


def _predict(args) -> int:
    model = load_model(args.model)
    seqs = load_fasta(args.fasta, policy=UnknownResiduePolicy(args.unknown_residue))
    pairs = _load_pairs_loose(args.pairs)
    records = [InteractionRecord(a=a, b=b, label=0) for a, b, _ in pairs]
    fm = featurize_dataset(records, seqs, scale_table(model.scale_variant))
    decisions = model.decisions(fm.values)
    lines = [f"# {c}" for c in
             _provenance(model.scale_variant.value, model.config.seed)]
    for (a, b, _), dec in zip(pairs, decisions):
        lines.append(f"{a}\t{b}\t{dec:.17g}\t{1 if dec >= 0 else 0}")
    Path(args.out).write_text("\n".join(lines) + "\n")
    print(f"predicted {len(records)} pairs -> {args.out}")
    return 0


def _eval(args) -> int:
    model = load_model(args.model)
    seqs = load_fasta(args.fasta, policy=UnknownResiduePolicy(args.unknown_residue))
    table = scale_table(model.scale_variant)
    named: dict[str, str] = {}
    for spec_arg in args.test:
        if "=" not in spec_arg:
            raise ParseError(f"--test expects NAME=PATH, got {spec_arg!r}")
        name, _, path = spec_arg.partition("=")
        named[name] = path
    results: dict[str, dict] = {}
    for name, path in named.items():
        records = load_pairs(path)
        fm = featurize_dataset(records, seqs, table)
        report = evaluate_model(model, fm.values, fm.labels.tolist())
        results[name] = {"n_pairs": len(fm), **report.as_dict()}
    payload = {
        "ppipred_version": __version__,
        "scale_variant": model.scale_variant.value,
        "seed": model.config.seed,
        "config": {
            "model": str(args.model),
            "fasta": str(args.fasta),
            "tests": dict(named),
            "unknown_residue": args.unknown_residue,
        },
        "results": results,
    }
    out_text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(out_text)
    print(f"{'set':<8}{'precision':>11}{'recall':>9}{'accuracy':>10}{'f1':>8}")
    for name, row in results.items():
        cells = [
            f"{row[m]:.3f}" if row[m] is not None else "undef"
            for m in ("precision", "recall", "accuracy", "f1")
        ]
        print(f"{name:<8}{cells[0]:>11}{cells[1]:>9}{cells[2]:>10}{cells[3]:>8}")
    return 0


def _cv(args) -> int:
    seqs = load_fasta(args.fasta, policy=UnknownResiduePolicy(args.unknown_residue))
    records = load_pairs(args.pairs)
    variant = ScaleVariant(args.scale_variant)
    fm = featurize_dataset(records, seqs, scale_table(variant))
    config = TrainConfig(C=args.C, epochs=args.epochs, tol=args.tol,
                         seed=args.seed, standardize=not args.no_standardize)
    result = kfold_cv(fm, k=args.k, seed=args.seed, config=config,
                      scale_variant=variant)
    payload = {
        "ppipred_version": __version__,
        "scale_variant": args.scale_variant,
        "seed": args.seed,
        "config": {
            "fasta": str(args.fasta),
            "pairs": str(args.pairs),
            "k": args.k,
            "seed": args.seed,
            "scale_variant": args.scale_variant,
            "unknown_residue": args.unknown_residue,
            "C": args.C,
            "epochs": args.epochs,
            "tol": args.tol,
            "standardize": not args.no_standardize,
        },
        **result.to_dict(),
    }
    Path(args.out).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    mean_acc = result.mean["accuracy"]
    shown = f"{mean_acc:.4f}" if mean_acc is not None else "undefined"
    print(f"{args.k}-fold cv (seed {args.seed}): mean accuracy {shown}")
    return 0


def _export_scales(args) -> int:
    table = scale_table(ScaleVariant(args.variant))
    lines = [f"# {c}" for c in _provenance(args.variant, None)]
    Path(args.out).write_text("\n".join(lines) + "\n" + table.to_csv())
    print(f"scale table ({args.variant}) -> {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ppipred",
        description="Sequence-based protein-protein interaction prediction "
                    "with physicochemical pair features and a linear SVM.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("featurize", help="pair feature CSV from FASTA + pairs TSV")
    p.add_argument("--fasta", required=True)
    p.add_argument("--pairs", required=True)
    p.add_argument("--out", required=True)
    _add_scale_args(p)
    p.set_defaults(func=_featurize)

    p = sub.add_parser("split", help="generate a verified train/C1/C2/C3 split")
    p.add_argument("--pairs", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--train-size", type=int, required=True)
    p.add_argument("--c1-size", type=int, required=True)
    p.add_argument("--c2-size", type=int, required=True)
    p.add_argument("--c3-size", type=int, required=True)
    p.add_argument("--ratio", default="1:1", help="positive:negative ratio")
    p.add_argument("--seed", type=_seed_arg, required=True)
    p.add_argument("--retries", type=int, default=0,
                   help="extra consecutive seeds to try on infeasibility")
    p.set_defaults(func=_split)

    p = sub.add_parser("negatives", help="sample non-interacting pairs")
    p.add_argument("--fasta", required=True, help="defines the node universe")
    p.add_argument("--known", help="pairs TSV of known interactions to exclude")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=_seed_arg, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_negatives)

    p = sub.add_parser("train", help="fit the linear SVM")
    p.add_argument("--fasta", required=True)
    p.add_argument("--pairs", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=_seed_arg, required=True)
    _add_scale_args(p)
    _add_svm_args(p)
    p.set_defaults(func=_train)

    p = sub.add_parser("predict", help="apply a trained model to pairs")
    p.add_argument("--model", required=True)
    p.add_argument("--fasta", required=True)
    p.add_argument("--pairs", required=True,
                   help="TSV with 2 (unlabeled) or 3 columns (label ignored)")
    p.add_argument("--out", required=True)
    p.add_argument("--unknown-residue", choices=["error", "skip"], default="error")
    p.set_defaults(func=_predict)

    p = sub.add_parser("eval", help="metrics of a model on labeled test sets")
    p.add_argument("--model", required=True)
    p.add_argument("--fasta", required=True)
    p.add_argument("--test", action="append", required=True,
                   metavar="NAME=PATH", help="repeatable labeled pairs TSV")
    p.add_argument("--out", help="optional JSON report path")
    p.add_argument("--unknown-residue", choices=["error", "skip"], default="error")
    p.set_defaults(func=_eval)

    p = sub.add_parser("cv", help="stratified k-fold cross-validation")
    p.add_argument("--fasta", required=True)
    p.add_argument("--pairs", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--seed", type=_seed_arg, required=True)
    _add_scale_args(p)
    _add_svm_args(p)
    p.set_defaults(func=_cv)

    p = sub.add_parser("export-scales", help="emit the scale table as CSV")
    p.add_argument("--variant", choices=["paper", "corrected"], default="paper")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_export_scales)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PpiPredError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
