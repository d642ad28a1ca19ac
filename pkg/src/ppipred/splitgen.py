"""Leakage-controlled train/test partitions and negative sampling.

Test pairs are classed by how many of their endpoints occur among the
training proteins: C1 both, C2 exactly one, C3 neither; a pair whose
exact edge is in the training set is rejected outright. The generator
fills per-class, per-label quotas deterministically from a seeded
shuffle.

A naive "fill train first, classify the rest" pass starves C3 whenever
quotas use most of the pair budget: training absorbs a uniform share of
every region of the graph, leaving far too few pairs with both endpoints
untouched. The generator therefore reserves candidate pairs before
filling train: C3 candidates are taken from the smallest connected
components outward (cheapest isolation), C2 free endpoints from the
lowest-degree side of remaining pairs, and every pair touching a
reserved node is excluded from training. Classification of the final
sets is still done against the actual training node set, so reservations
can never produce a mislabeled class; they only raise the odds that
quotas are reachable. Infeasible targets raise
:class:`InfeasibleSplitError` with the achieved counts (callers may
retry with another seed).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import InfeasibleSplitError, ValidationError
from .sequences import InteractionRecord

PairKey = tuple[str, str]


class TestClass(enum.Enum):
    C1 = "c1"   # both endpoints among training proteins
    C2 = "c2"   # exactly one
    C3 = "c3"   # neither


def pair_key(a: str, b: str) -> PairKey:
    return (a, b) if a <= b else (b, a)


def classify_pair(
    pair: InteractionRecord,
    train_nodes: set[str],
    train_pairs: set[PairKey],
) -> TestClass | None:
    """Class of a candidate test pair, or None if its edge is in training."""
    if pair.key() in train_pairs:
        return None
    if pair.a == pair.b:
        return TestClass.C1 if pair.a in train_nodes else TestClass.C3
    hits = (pair.a in train_nodes) + (pair.b in train_nodes)
    return (TestClass.C3, TestClass.C2, TestClass.C1)[hits]


@dataclass(frozen=True)
class ClassTarget:
    positives: int
    negatives: int

    def __post_init__(self):
        if self.positives < 0 or self.negatives < 0:
            raise ValidationError("targets must be non-negative")

    @property
    def total(self) -> int:
        return self.positives + self.negatives


@dataclass(frozen=True)
class SplitTargets:
    train: ClassTarget
    c1: ClassTarget
    c2: ClassTarget
    c3: ClassTarget

    @staticmethod
    def balanced(train: int, c1: int, c2: int, c3: int) -> "SplitTargets":
        """1:1 positive:negative targets (counts must be even)."""
        for name, n in (("train", train), ("c1", c1), ("c2", c2), ("c3", c3)):
            if n % 2:
                raise ValidationError(f"balanced {name} target must be even, got {n}")
        return SplitTargets(
            train=ClassTarget(train // 2, train // 2),
            c1=ClassTarget(c1 // 2, c1 // 2),
            c2=ClassTarget(c2 // 2, c2 // 2),
            c3=ClassTarget(c3 // 2, c3 // 2),
        )

    @property
    def total(self) -> int:
        return self.train.total + self.c1.total + self.c2.total + self.c3.total


@dataclass
class SplitResult:
    train_pairs: list[InteractionRecord]
    c1: list[InteractionRecord]
    c2: list[InteractionRecord]
    c3: list[InteractionRecord]
    seed: int
    train_nodes: set[str] = field(default_factory=set)

    def __post_init__(self):
        if not self.train_nodes:
            for r in self.train_pairs:
                self.train_nodes.add(r.a)
                self.train_nodes.add(r.b)

    def sets(self) -> dict[str, list[InteractionRecord]]:
        return {"train": self.train_pairs, "c1": self.c1, "c2": self.c2, "c3": self.c3}


@dataclass
class VerificationReport:
    """Per-invariant booleans plus the counts needed to audit a split."""

    disjoint: bool
    class_conditions: dict[str, bool]
    train_nodes_exact: bool
    label_counts: dict[str, dict[int, int]]
    unique_nodes: dict[str, int]
    violations: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.disjoint and self.train_nodes_exact and all(
            self.class_conditions.values()
        )

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "disjoint": self.disjoint,
            "class_conditions": dict(self.class_conditions),
            "train_nodes_exact": self.train_nodes_exact,
            "label_counts": {
                k: {str(l): c for l, c in v.items()}
                for k, v in self.label_counts.items()
            },
            "unique_nodes": dict(self.unique_nodes),
            "violations": list(self.violations),
            "warnings": list(self.warnings),
        }


def sample_negatives(
    nodes: list[str],
    known_pairs: set[PairKey],
    n: int,
    seed: int,
) -> list[InteractionRecord]:
    """Sample ``n`` distinct unordered non-self pairs not in ``known_pairs``.

    Uniform via seeded rejection; when the request is a large fraction of
    the candidate space the candidates are enumerated and shuffled
    instead, so near-exhaustion cannot stall. Deterministic given
    (node order, seed).
    """
    if seed < 0:
        raise ValidationError(f"seed must be >= 0, got {seed}")
    if len(set(nodes)) != len(nodes):
        raise ValidationError("node list contains duplicates")
    m = len(nodes)
    possible = m * (m - 1) // 2
    node_set = set(nodes)
    known_inside = sum(
        1 for (u, v) in known_pairs if u != v and u in node_set and v in node_set
    )
    feasible = possible - known_inside
    if n > feasible:
        raise InfeasibleSplitError(
            f"requested {n} negatives but only {feasible} candidate pairs exist"
        )
    rng = np.random.default_rng(seed)
    chosen: set[PairKey] = set()
    out: list[InteractionRecord] = []
    if n > feasible // 4:
        # dense regime: enumerate, shuffle, take the head
        candidates = [
            pair_key(nodes[i], nodes[j])
            for i in range(m)
            for j in range(i + 1, m)
            if pair_key(nodes[i], nodes[j]) not in known_pairs
        ]
        for idx in rng.permutation(len(candidates))[:n]:
            u, v = candidates[idx]
            out.append(InteractionRecord(a=u, b=v, label=0))
        return out
    while len(out) < n:
        i, j = rng.integers(0, m, size=2)
        if i == j:
            continue
        key = pair_key(nodes[int(i)], nodes[int(j)])
        if key in known_pairs or key in chosen:
            continue
        chosen.add(key)
        out.append(InteractionRecord(a=key[0], b=key[1], label=0))
    return out


class _Quota:
    def __init__(self, target: ClassTarget):
        self.remaining = {1: target.positives, 0: target.negatives}

    def open_for(self, label: int) -> bool:
        return self.remaining[label] > 0

    def take(self, label: int) -> None:
        self.remaining[label] -= 1

    @property
    def unfilled(self) -> int:
        return self.remaining[0] + self.remaining[1]


def _component_sizes(ea: np.ndarray, eb: np.ndarray, n_nodes: int) -> np.ndarray:
    """Per-node size of its connected component (union-find, path halving)."""
    parent = list(range(n_nodes))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in zip(ea.tolist(), eb.tolist()):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[rv] = ru
    roots = np.fromiter((find(i) for i in range(n_nodes)), dtype=np.int64,
                        count=n_nodes)
    return np.bincount(roots, minlength=n_nodes)[roots]


def generate_split(
    all_pairs: list[InteractionRecord],
    targets: SplitTargets,
    seed: int,
) -> SplitResult:
    """Deterministic seeded split meeting ``targets``, verified before return."""
    if seed < 0:
        raise ValidationError(f"seed must be >= 0, got {seed}")
    if targets.total > len(all_pairs):
        raise InfeasibleSplitError(
            f"targets need {targets.total} pairs but only {len(all_pairs)} given"
        )
    all_keys = [r.key() for r in all_pairs]
    seen: set[PairKey] = set()
    for k in all_keys:
        if k in seen:
            raise ValidationError(f"duplicate unordered pair {k!r} in input")
        seen.add(k)

    # integer node ids for the array-based bookkeeping below
    node_id: dict[str, int] = {}
    n = len(all_pairs)
    ea = np.empty(n, dtype=np.int64)
    eb = np.empty(n, dtype=np.int64)
    for i, r in enumerate(all_pairs):
        ea[i] = node_id.setdefault(r.a, len(node_id))
        eb[i] = node_id.setdefault(r.b, len(node_id))
    n_nodes = len(node_id)
    degree = np.bincount(ea, minlength=n_nodes) + np.bincount(eb, minlength=n_nodes)
    comp_size = _component_sizes(ea, eb, n_nodes)

    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    labels = np.fromiter((r.label for r in all_pairs), dtype=np.int64, count=n)
    p_lab = labels[perm].tolist()
    p_ea = ea[perm]
    p_eb = eb[perm]
    p_ea_l = p_ea.tolist()
    p_eb_l = p_eb.tolist()

    quotas = {
        "train": _Quota(targets.train),
        "c1": _Quota(targets.c1),
        "c2": _Quota(targets.c2),
        "c3": _Quota(targets.c3),
    }

    # reserve C3 candidates: smallest components first, then cheapest
    # (lowest-degree) pairs, so isolating them costs the fewest train
    # candidates; ties keep shuffle order (lexsort is stable)
    reserved = np.zeros(n, dtype=bool)  # indexed by shuffle position
    f3 = np.zeros(n_nodes, dtype=bool)
    if targets.c3.total > 0:
        todo = dict(quotas["c3"].remaining)
        c3_order = np.lexsort((degree[p_ea] + degree[p_eb], comp_size[p_ea]))
        for j in c3_order.tolist():
            if todo[p_lab[j]] <= 0:
                continue
            reserved[j] = True
            f3[p_ea_l[j]] = True
            f3[p_eb_l[j]] = True
            todo[p_lab[j]] -= 1
            if todo[0] <= 0 and todo[1] <= 0:
                break

    # reserve C2 free endpoints, but only where reservation is free of
    # collateral: a degree-1 endpoint whose partner (degree >= 2) stays
    # trainable. Denser C2 pairs classify organically after train fill.
    f2 = np.zeros(n_nodes, dtype=bool)
    if targets.c2.total > 0:
        todo = dict(quotas["c2"].remaining)
        deg_l = degree.tolist()
        for j in range(n):
            if todo[p_lab[j]] <= 0:
                continue
            u, v = p_ea_l[j], p_eb_l[j]
            if reserved[j] or f3[u] or f3[v]:
                continue
            da, db = deg_l[u], deg_l[v]
            if da == 1 and db >= 2:
                f2[u] = True
            elif db == 1 and da >= 2:
                f2[v] = True
            else:
                continue
            todo[p_lab[j]] -= 1
            if todo[0] <= 0 and todo[1] <= 0:
                break

    forbidden = (f3 | f2).tolist()

    # greedy train fill over unreserved pairs avoiding reserved nodes
    train: list[InteractionRecord] = []
    in_train = np.zeros(n, dtype=bool)
    trained = np.zeros(n_nodes, dtype=bool)
    tq = quotas["train"]
    reserved_l = reserved.tolist()
    for j in range(n):
        if not tq.open_for(p_lab[j]):
            if tq.unfilled == 0:
                break
            continue
        u, v = p_ea_l[j], p_eb_l[j]
        if reserved_l[j] or forbidden[u] or forbidden[v]:
            continue
        in_train[j] = True
        trained[u] = True
        trained[v] = True
        train.append(all_pairs[int(perm[j])])
        tq.take(p_lab[j])

    achieved = {"train": {1: targets.train.positives - tq.remaining[1],
                          0: targets.train.negatives - tq.remaining[0]}}
    if tq.unfilled:
        raise InfeasibleSplitError(
            f"train quota unreachable: {achieved['train']} of "
            f"{targets.train.positives}/{targets.train.negatives} pos/neg",
            achieved=achieved,
        )

    # classify everything else against the actual training set and fill
    out = {"c1": [], "c2": [], "c3": []}
    names = ("c3", "c2", "c1")  # indexed by trained-endpoint count
    trained_l = trained.tolist()
    in_train_l = in_train.tolist()
    for j in range(n):
        if in_train_l[j]:
            continue
        u, v = p_ea_l[j], p_eb_l[j]
        hits = 2 * trained_l[u] if u == v else trained_l[u] + trained_l[v]
        q = quotas[names[hits]]
        if q.open_for(p_lab[j]):
            out[names[hits]].append(all_pairs[int(perm[j])])
            q.take(p_lab[j])

    for name in ("c1", "c2", "c3"):
        q = quotas[name]
        achieved[name] = {
            1: getattr(targets, name).positives - q.remaining[1],
            0: getattr(targets, name).negatives - q.remaining[0],
        }
    shortfalls = [n for n in ("c1", "c2", "c3") if quotas[n].unfilled]
    if shortfalls:
        raise InfeasibleSplitError(
            "class quota unreachable for "
            + ", ".join(f"{n} (got {achieved[n]})" for n in shortfalls)
            + "; retry with a different seed",
            achieved=achieved,
        )

    trained_names = {name for name, i in node_id.items() if trained_l[i]}
    split = SplitResult(
        train_pairs=train, c1=out["c1"], c2=out["c2"], c3=out["c3"],
        seed=seed, train_nodes=trained_names,
    )
    report = verify_split(split)
    if not report.ok:
        raise InfeasibleSplitError(
            f"generated split failed verification: {report.violations}"
        )
    return split


def verify_split(
    split: SplitResult,
    identity_map: dict[PairKey, float] | None = None,
    identity_threshold: float = 0.4,
) -> VerificationReport:
    """Check every split invariant; failures are reported, not raised."""
    sets = split.sets()
    violations: list[str] = []

    key_owner: dict[PairKey, str] = {}
    disjoint = True
    for name, records in sets.items():
        for rec in records:
            k = rec.key()
            if k in key_owner:
                disjoint = False
                violations.append(f"pair {k} occurs in {key_owner[k]} and {name}")
            else:
                key_owner[k] = name

    derived_nodes: set[str] = set()
    for rec in split.train_pairs:
        derived_nodes.update((rec.a, rec.b))
    train_nodes_exact = derived_nodes == split.train_nodes
    if not train_nodes_exact:
        violations.append("train_nodes does not equal endpoints of train_pairs")

    train_keys = {r.key() for r in split.train_pairs}
    tn = split.train_nodes
    by_hits = ("c3", "c2", "c1")
    class_conditions: dict[str, bool] = {}
    for name in ("c1", "c2", "c3"):
        ok = True
        for rec in sets[name]:
            k = rec.key()
            if k in train_keys:
                got = "rejected"
            else:
                hits = 2 * (rec.a in tn) if rec.a == rec.b else (rec.a in tn) + (rec.b in tn)
                got = by_hits[hits]
            if got != name:
                ok = False
                violations.append(f"{name} pair {k} classifies as {got}")
        class_conditions[name] = ok

    label_counts = {
        name: {
            1: sum(1 for r in records if r.label == 1),
            0: sum(1 for r in records if r.label == 0),
        }
        for name, records in sets.items()
    }
    unique_nodes = {
        name: len({n for r in records for n in (r.a, r.b)})
        for name, records in sets.items()
    }

    warnings: list[str] = []
    if identity_map:
        test_nodes = {
            n for name in ("c1", "c2", "c3") for r in sets[name] for n in (r.a, r.b)
        }
        for (u, v), ident in sorted(identity_map.items()):
            if ident > identity_threshold and (
                (u in split.train_nodes and v in test_nodes)
                or (v in split.train_nodes and u in test_nodes)
            ):
                warnings.append(
                    f"sequences {u}/{v} are {ident:.0%} identical across train/test"
                )

    return VerificationReport(
        disjoint=disjoint,
        class_conditions=class_conditions,
        train_nodes_exact=train_nodes_exact,
        label_counts=label_counts,
        unique_nodes=unique_nodes,
        violations=violations,
        warnings=warnings,
    )
