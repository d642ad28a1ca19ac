"""Binary-classification metrics and stratified k-fold cross-validation.

Metrics with a zero denominator are *undefined* and surfaced as None,
never as 0: silent zeros would corrupt cross-validation averages. CV
summaries average only defined values and report how many folds were
undefined per metric.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classifier import LinearModel, TrainConfig, train_svm
from .errors import ValidationError
from .features import FeatureMatrix
from .scales import ScaleVariant

METRIC_NAMES = ("precision", "recall", "accuracy", "f1")


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    fn: int
    tn: int

    def __post_init__(self):
        if min(self.tp, self.fp, self.fn, self.tn) < 0:
            raise ValidationError("confusion counts must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class MetricsReport:
    """Metric values in [0, 1]; None marks an undefined value."""

    precision: float | None
    recall: float | None
    accuracy: float | None
    f1: float | None

    def as_dict(self) -> dict[str, float | None]:
        return {name: getattr(self, name) for name in METRIC_NAMES}


def confusion(predictions, labels) -> ConfusionMatrix:
    """Count tp/fp/fn/tn with 1 as the positive class."""
    preds = list(predictions)
    labs = list(labels)
    if len(preds) != len(labs):
        raise ValidationError(
            f"{len(preds)} predictions vs {len(labs)} labels"
        )
    if not preds:
        raise ValidationError("cannot build a confusion matrix from no pairs")
    for v in preds + labs:
        if v not in (0, 1):
            raise ValidationError(f"predictions and labels must be 0/1, got {v!r}")
    tp = sum(1 for p, l in zip(preds, labs) if p == 1 and l == 1)
    fp = sum(1 for p, l in zip(preds, labs) if p == 1 and l == 0)
    fn = sum(1 for p, l in zip(preds, labs) if p == 0 and l == 1)
    tn = sum(1 for p, l in zip(preds, labs) if p == 0 and l == 0)
    return ConfusionMatrix(tp=tp, fp=fp, fn=fn, tn=tn)


def metrics(cm: ConfusionMatrix) -> MetricsReport:
    """Precision, recall, accuracy, F1 from counts."""
    if cm.total == 0:
        raise ValidationError("empty confusion matrix")
    precision = cm.tp / (cm.tp + cm.fp) if cm.tp + cm.fp > 0 else None
    recall = cm.tp / (cm.tp + cm.fn) if cm.tp + cm.fn > 0 else None
    accuracy = (cm.tp + cm.tn) / cm.total
    if precision is None or recall is None or precision + recall == 0:
        f1 = None
    else:
        f1 = 2.0 * precision * recall / (precision + recall)
    return MetricsReport(precision=precision, recall=recall, accuracy=accuracy, f1=f1)


@dataclass
class FoldResult:
    fold: int
    test_indices: np.ndarray
    model: LinearModel
    cm: ConfusionMatrix
    report: MetricsReport


@dataclass
class CVResult:
    folds: list[FoldResult]
    mean: dict[str, float | None]
    std: dict[str, float | None]
    undefined_counts: dict[str, int]
    k: int
    seed: int

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "seed": self.seed,
            "folds": [
                {
                    "fold": f.fold,
                    "size": int(len(f.test_indices)),
                    **{k: v for k, v in f.report.as_dict().items()},
                }
                for f in self.folds
            ],
            "mean": dict(self.mean),
            "std": dict(self.std),
            "undefined_counts": dict(self.undefined_counts),
        }


def stratified_folds(labels: np.ndarray, k: int, seed: int) -> list[np.ndarray]:
    """Seeded stratified fold assignment; class counts per fold differ by <= 1."""
    labels = np.asarray(labels)
    if k < 2:
        raise ValidationError(f"k must be >= 2, got {k}")
    if seed < 0:
        raise ValidationError(f"seed must be >= 0, got {seed}")
    rng = np.random.default_rng(seed)
    folds: list[list[int]] = [[] for _ in range(k)]
    for cls in (1, 0):
        idx = np.flatnonzero(labels == cls)
        if 0 < len(idx) < k:
            raise ValidationError(
                f"class {cls} has {len(idx)} members, fewer than k={k}"
            )
        shuffled = idx[rng.permutation(len(idx))]
        for pos, sample in enumerate(shuffled):
            folds[pos % k].append(int(sample))
    return [np.array(sorted(f), dtype=np.intp) for f in folds]


def kfold_cv(
    X: FeatureMatrix | np.ndarray,
    labels: np.ndarray | None = None,
    k: int = 10,
    seed: int = 42,
    config: TrainConfig = TrainConfig(),
    scale_variant: ScaleVariant = ScaleVariant.PAPER,
) -> CVResult:
    """Stratified k-fold CV; standardizer and model are refitted per fold
    on the k-1 training folds only."""
    if isinstance(X, FeatureMatrix):
        values = X.values
        labels = X.labels
    else:
        values = np.asarray(X, dtype=np.float64)
        if labels is None:
            raise ValidationError("labels are required with a raw matrix")
        labels = np.asarray(labels)
    folds = stratified_folds(labels, k=k, seed=seed)

    results: list[FoldResult] = []
    for i, test_idx in enumerate(folds):
        mask = np.ones(len(labels), dtype=bool)
        mask[test_idx] = False
        model = train_svm(values[mask], labels[mask], config=config,
                          scale_variant=scale_variant)
        preds = model.predict_many(values[test_idx])
        cm = confusion(preds.tolist(), labels[test_idx].tolist())
        results.append(FoldResult(fold=i, test_indices=test_idx, model=model,
                                  cm=cm, report=metrics(cm)))

    mean: dict[str, float | None] = {}
    std: dict[str, float | None] = {}
    undefined: dict[str, int] = {}
    for name in METRIC_NAMES:
        vals = [getattr(r.report, name) for r in results]
        defined = [v for v in vals if v is not None]
        undefined[name] = len(vals) - len(defined)
        if defined:
            arr = np.array(defined)
            mean[name] = float(arr.mean())
            std[name] = float(arr.std())  # population std over folds
        else:
            mean[name] = None
            std[name] = None
    return CVResult(folds=results, mean=mean, std=std,
                    undefined_counts=undefined, k=k, seed=seed)


def evaluate_model(model: LinearModel, X: np.ndarray, labels) -> MetricsReport:
    """Metrics of ``model`` on a labeled feature matrix."""
    preds = model.predict_many(np.asarray(X, dtype=np.float64))
    return metrics(confusion(preds.tolist(), list(labels)))
