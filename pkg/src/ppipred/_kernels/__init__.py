"""Hot-loop kernels with backend selection at import.

The compiled extension (``_fastcore``, Cython) is preferred; the pure
Python twin (``_pycore``) is the fallback. Set ``PPIPRED_BACKEND=pure``
or ``PPIPRED_BACKEND=compiled`` to force one. Both produce bit-identical
results; ``benchmarks/bench_backends.py`` compares their speed.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pycore

_requested = os.environ.get("PPIPRED_BACKEND", "").strip().lower()

if _requested == "pure":
    _impl = _pycore
elif _requested == "compiled":
    from . import _fastcore as _impl  # noqa: F401  (ImportError is the point)
else:
    try:
        from . import _fastcore as _impl
    except ImportError:
        _impl = _pycore


def backend_name() -> str:
    """Active backend: 'compiled' or 'pure'."""
    return _impl.BACKEND


def get_backend(name: str | None = None):
    """Return a kernel module by name (None = the active one)."""
    if name is None:
        return _impl
    if name == "pure":
        return _pycore
    if name == "compiled":
        from . import _fastcore
        return _fastcore
    raise ValueError(f"unknown backend {name!r}")


def seq_mean_rows(table, codes, offsets, impl=None) -> np.ndarray:
    """Per-sequence mean of table rows; see ``_pycore.seq_mean_rows``."""
    table = np.ascontiguousarray(table, dtype=np.float64)
    codes = np.ascontiguousarray(codes, dtype=np.intp)
    offsets = np.ascontiguousarray(offsets, dtype=np.intp)
    return (impl or _impl).seq_mean_rows(table, codes, offsets)


def svm_epoch(X, y, order, w, wsum, b, bsum, t0, lam, radius, impl=None):
    """One epoch of subgradient updates; see ``_pycore.svm_epoch``."""
    order = np.ascontiguousarray(order, dtype=np.intp)
    return (impl or _impl).svm_epoch(
        X, y, order, w, wsum, float(b), float(bsum), int(t0), float(lam), float(radius)
    )
