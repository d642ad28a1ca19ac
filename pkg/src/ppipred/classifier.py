"""Soft-margin linear SVM trained by seeded stochastic subgradient descent.

Objective (labels y in {-1,+1}):

    J(w, b) = 0.5*||w||^2 + C * sum_i max(0, 1 - y_i*(w.x_i + b))

The solver is a Pegasos-style primal SGD with per-step learning rate
eta_t = 1/(lam*(t+1)), lam = 1/(C*n), plus three stabilizers:

  * projection of w onto the ball ||w|| <= 2*sqrt(C*min(n+, n-)), a bound
    no optimum can exceed (a constant classifier already achieves
    J = 2*C*min(n+, n-));
  * a scale-free harmonic step (1/(t+1)) for the unregularized intercept,
    whose eta_t step would otherwise start at C*n;
  * suffix averaging with doubling restarts: the candidate after each
    epoch is the average of the iterates since the last restart (restarts
    at epochs 1, 2, 4, 8, ...), which forgets the large early transient.

After each epoch both the suffix average and the raw iterate are scored
on J and the best candidate so far is kept; training stops once no
candidate has improved the objective by tol*J(0,0) for `_PATIENCE`
consecutive epochs. A deterministic pattern-search polish then descends
J from the best candidate (symmetric +/- probes along the subgradient,
the coordinates, and seeded random directions with a shrinking step
ladder). All of it is deterministic given the seed; negating every label
produces an exactly mirrored trajectory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import ModelFormatError, TrainingError, ValidationError
from .scales import ScaleVariant

MODEL_FORMAT_VERSION = 1

_PATIENCE = 10
_POLISH_RANDOM_DIRS = 8
_POLISH_LADDER_RETRIES = 2


@dataclass(frozen=True)
class TrainConfig:
    """SVM hyperparameters. ``tol`` is relative to the initial objective."""

    C: float = 1.0
    epochs: int = 200
    tol: float = 1e-6
    seed: int = 42
    standardize: bool = True

    def __post_init__(self):
        if self.C <= 0:
            raise ValidationError(f"C must be positive, got {self.C}")
        if self.epochs < 1:
            raise ValidationError(f"epochs must be >= 1, got {self.epochs}")
        if self.tol < 0:
            raise ValidationError(f"tol must be >= 0, got {self.tol}")
        if self.seed < 0:
            raise ValidationError(f"seed must be >= 0, got {self.seed}")


@dataclass(frozen=True, eq=False)
class Standardizer:
    """Per-column z-scoring statistics, fitted on training rows only."""

    means: np.ndarray
    stds: np.ndarray  # constant columns carry 1.0

    def transform(self, X: np.ndarray) -> np.ndarray:
        return (X - self.means) / self.stds

    @staticmethod
    def identity(dim: int) -> "Standardizer":
        return Standardizer(means=np.zeros(dim), stds=np.ones(dim))


def fit_standardizer(X: np.ndarray) -> Standardizer:
    """Column means and population stds; zero stds are replaced by 1."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] == 0:
        raise ValidationError("standardizer needs a non-empty 2-D matrix")
    means = X.mean(axis=0)
    stds = X.std(axis=0)
    stds = np.where(stds == 0.0, 1.0, stds)
    return Standardizer(means=means, stds=stds)


def apply_standardizer(s: Standardizer, x: np.ndarray) -> np.ndarray:
    return s.transform(np.asarray(x, dtype=np.float64))


@dataclass(frozen=True, eq=False)
class LinearModel:
    """Trained linear classifier: decision(x) = w . standardize(x) + b."""

    weights: np.ndarray
    bias: float
    standardizer: Standardizer
    config: TrainConfig
    scale_variant: ScaleVariant = ScaleVariant.PAPER
    objective_history: tuple[float, ...] = field(default=(), compare=False)

    @property
    def dim(self) -> int:
        return len(self.weights)

    def decision(self, x: np.ndarray) -> float:
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.dim,):
            raise ValidationError(f"expected a length-{self.dim} vector")
        if not np.all(np.isfinite(x)):
            raise ValidationError("non-finite feature value")
        return float(np.dot(self.weights, self.standardizer.transform(x)) + self.bias)

    def decisions(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        if not np.all(np.isfinite(X)):
            raise ValidationError("non-finite feature value")
        return self.standardizer.transform(X) @ self.weights + self.bias

    def predict(self, x: np.ndarray) -> int:
        # Tie at exactly 0 goes to the positive class.
        return 1 if self.decision(x) >= 0.0 else 0

    def predict_many(self, X: np.ndarray) -> np.ndarray:
        return (self.decisions(X) >= 0.0).astype(np.int64)


def svm_objective(w: np.ndarray, b: float, X: np.ndarray, y: np.ndarray, C: float) -> float:
    """Primal objective J(w, b) on rows X with labels y in {-1,+1}."""
    margins = y * (X @ w + b)
    return 0.5 * float(np.dot(w, w)) + C * float(np.sum(np.maximum(0.0, 1.0 - margins)))


def svm_subgradient(
    w: np.ndarray, b: float, X: np.ndarray, y: np.ndarray, C: float
) -> tuple[np.ndarray, float]:
    """Subgradient of J; at margins exactly 1 the zero branch is taken."""
    viol = y * (X @ w + b) < 1.0
    gw = w - C * (y[viol, None] * X[viol]).sum(axis=0)
    gb = -C * float(y[viol].sum())
    return gw, gb


def _polish(w, b, X, y, C, seed, max_evals):
    """Deterministic pattern search on J from (w, b).

    Probes symmetric +/- pairs so that a label-negated run mirrors every
    move exactly. Step grows on success, halves after
    `_POLISH_LADDER_RETRIES` fruitless rounds.
    """
    d = len(w)
    rng = np.random.default_rng(seed)
    J = svm_objective(w, b, X, y, C)
    scale = math.sqrt(float(np.dot(w, w)) + b * b) + 1.0
    step = 0.25 * scale
    evals = 0
    fails = 0
    eye = np.eye(d)
    while evals < max_evals and step > 1e-13 * scale:
        dirs: list[tuple[np.ndarray, float]] = []
        gw, gb = svm_subgradient(w, b, X, y, C)
        gn = math.sqrt(float(np.dot(gw, gw)) + gb * gb)
        if gn > 0.0:
            dirs.append((gw / gn, gb / gn))
        for i in range(d):
            dirs.append((eye[i], 0.0))
        dirs.append((np.zeros(d), 1.0))
        for _ in range(_POLISH_RANDOM_DIRS):
            v = rng.standard_normal(d + 1)
            v /= math.sqrt(float(np.dot(v, v)))
            dirs.append((v[:d], float(v[d])))
        improved = False
        for dw, db in dirs:
            lo = svm_objective(w - step * dw, b - step * db, X, y, C)
            hi = svm_objective(w + step * dw, b + step * db, X, y, C)
            evals += 2
            if lo <= hi and lo < J:
                w, b, J = w - step * dw, b - step * db, lo
                improved = True
            elif hi < lo and hi < J:
                w, b, J = w + step * dw, b + step * db, hi
                improved = True
            if evals >= max_evals:
                break
        if improved:
            fails = 0
            step *= 1.6
        else:
            fails += 1
            if fails >= _POLISH_LADDER_RETRIES:
                step *= 0.5
                fails = 0
    return w, b, J


def train_svm(
    X: np.ndarray,
    labels: np.ndarray,
    config: TrainConfig = TrainConfig(),
    scale_variant: ScaleVariant = ScaleVariant.PAPER,
) -> LinearModel:
    """Fit the SVM on feature rows ``X`` with binary ``labels`` (0/1).

    Raises :class:`TrainingError` on single-class input or non-finite
    features. Bit-identical runs for identical (inputs, config).
    """
    X = np.ascontiguousarray(X, dtype=np.float64)
    labels = np.asarray(labels)
    if X.ndim != 2 or X.shape[0] < 2:
        raise TrainingError("need at least 2 training rows")
    if labels.shape != (X.shape[0],):
        raise TrainingError("labels must align with feature rows")
    bad = np.flatnonzero(~np.isfinite(X).all(axis=1))
    if bad.size:
        raise TrainingError(f"non-finite feature in row {int(bad[0])}")
    uniq = set(np.unique(labels).tolist())
    if not uniq <= {0, 1}:
        raise TrainingError(f"labels must be 0/1, got {sorted(uniq)}")
    if len(uniq) < 2:
        raise TrainingError("training data contains a single class")

    n, d = X.shape
    if config.standardize:
        standardizer = fit_standardizer(X)
        Xs = np.ascontiguousarray(standardizer.transform(X))
    else:
        standardizer = Standardizer.identity(d)
        Xs = X
    y = np.where(np.asarray(labels) == 1, 1.0, -1.0)

    C = config.C
    lam = 1.0 / (C * n)
    npos = int(np.sum(y > 0))
    radius = 2.0 * math.sqrt(C * min(npos, n - npos))
    rng = np.random.default_rng(config.seed)

    w = np.zeros(d)
    b = 0.0
    t = 0
    J0 = svm_objective(w, b, Xs, y, C)
    best_w = w.copy()
    best_b = 0.0
    best_J = J0
    wsum = np.zeros(d)
    bsum = 0.0
    win = 0
    next_restart = 1
    history: list[float] = []
    stale = 0

    for epoch in range(config.epochs):
        order = rng.permutation(n)
        b, bsum, t = _kernels.svm_epoch(Xs, y, order, w, wsum, b, bsum, t, lam, radius)
        win += n
        improved = False
        for cw, cb in ((wsum / win, bsum / win), (w, b)):
            J = svm_objective(cw, cb, Xs, y, C)
            if J < best_J - config.tol * J0:
                improved = True
            if J < best_J:
                best_w, best_b, best_J = np.array(cw, copy=True), float(cb), J
        stale = 0 if improved else stale + 1
        history.append(best_J)
        if stale >= _PATIENCE:
            break
        if epoch + 1 >= next_restart:
            wsum[:] = 0.0
            bsum = 0.0
            win = 0
            next_restart *= 2

    max_evals = 20000 if n * d <= 4096 else 2000
    best_w, best_b, best_J = _polish(
        best_w, best_b, Xs, y, C, seed=config.seed + 0x5EED, max_evals=max_evals
    )
    history.append(best_J)

    return LinearModel(
        weights=best_w,
        bias=best_b,
        standardizer=standardizer,
        config=config,
        scale_variant=scale_variant,
        objective_history=tuple(history),
    )


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _fmt_arr(a: np.ndarray) -> str:
    return ",".join(_fmt(float(v)) for v in a)


def save_model(model: LinearModel, path) -> None:
    """Write the versioned key-value model file (full float precision)."""
    lines = [
        f"format_version={MODEL_FORMAT_VERSION}",
        f"scale_variant={model.scale_variant.value}",
        f"standardize={'true' if model.config.standardize else 'false'}",
        f"dim={model.dim}",
        f"means={_fmt_arr(model.standardizer.means)}",
        f"stds={_fmt_arr(model.standardizer.stds)}",
        f"weights={_fmt_arr(model.weights)}",
        f"bias={_fmt(model.bias)}",
        f"C={_fmt(model.config.C)}",
        f"epochs={model.config.epochs}",
        f"tol={_fmt(model.config.tol)}",
        f"seed={model.config.seed}",
    ]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


_REQUIRED_KEYS = (
    "format_version", "scale_variant", "standardize", "dim", "means",
    "stds", "weights", "bias", "C", "epochs", "tol", "seed",
)


def load_model(path) -> LinearModel:
    """Read a model file; decisions round-trip bit-exactly."""
    kv: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ModelFormatError(f"malformed line {line!r}")
            key, _, value = line.partition("=")
            kv[key.strip()] = value.strip()
    missing = [k for k in _REQUIRED_KEYS if k not in kv]
    if missing:
        raise ModelFormatError(f"truncated model file: missing {missing}")
    if kv["format_version"] != str(MODEL_FORMAT_VERSION):
        raise ModelFormatError(
            f"unsupported format_version {kv['format_version']!r}"
        )
    try:
        variant = ScaleVariant(kv["scale_variant"])
    except ValueError:
        raise ModelFormatError(f"unknown scale_variant {kv['scale_variant']!r}")
    if kv["standardize"] not in ("true", "false"):
        raise ModelFormatError(f"bad standardize flag {kv['standardize']!r}")

    def arr(key: str) -> np.ndarray:
        try:
            a = np.array([float(v) for v in kv[key].split(",")], dtype=np.float64)
        except ValueError:
            raise ModelFormatError(f"unparseable numbers in {key!r}")
        return a

    dim = int(kv["dim"])
    means, stds, weights = arr("means"), arr("stds"), arr("weights")
    for name, a in (("means", means), ("stds", stds), ("weights", weights)):
        if a.shape != (dim,):
            raise ModelFormatError(f"{name} has {len(a)} values, expected {dim}")
        if not np.all(np.isfinite(a)):
            raise ModelFormatError(f"non-finite value in {name}")
    if np.any(stds <= 0.0):
        raise ModelFormatError("stored std must be positive")
    bias = float(kv["bias"])
    if not math.isfinite(bias):
        raise ModelFormatError("non-finite bias")
    config = TrainConfig(
        C=float(kv["C"]),
        epochs=int(kv["epochs"]),
        tol=float(kv["tol"]),
        seed=int(kv["seed"]),
        standardize=kv["standardize"] == "true",
    )
    return LinearModel(
        weights=weights,
        bias=bias,
        standardizer=Standardizer(means=means, stds=stds),
        config=config,
        scale_variant=variant,
    )
