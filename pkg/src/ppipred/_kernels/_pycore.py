"""Pure-Python twin of the compiled kernels.

Both backends execute the same IEEE-754 double operations in the same
order, so their outputs are bit-identical; the parity test in the suite
asserts this whenever the compiled core is importable. Keep any change
here in lockstep with ``_fastcore.pyx``.
"""

from __future__ import annotations

from math import sqrt

import numpy as np

BACKEND = "pure"


def seq_mean_rows(table: np.ndarray, codes: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    """Mean table row over each residue run.

    ``table`` is (20, n_scales); ``codes`` concatenates the row indices of
    every sequence; ``offsets`` (len m+1) delimits sequence i as
    ``codes[offsets[i]:offsets[i+1]]``. Accumulation is left-to-right per
    column. Returns an (m, n_scales) matrix.
    """
    rows = [tuple(map(float, r)) for r in table]
    codes_l = codes.tolist()
    d = table.shape[1]
    m = len(offsets) - 1
    out = np.empty((m, d), dtype=np.float64)
    for i in range(m):
        lo = int(offsets[i])
        hi = int(offsets[i + 1])
        acc = [0.0] * d
        for j in range(lo, hi):
            row = rows[codes_l[j]]
            for k in range(d):
                acc[k] += row[k]
        n = float(hi - lo)
        for k in range(d):
            out[i, k] = acc[k] / n
    return out


def svm_epoch(
    X: np.ndarray,
    y: np.ndarray,
    order: np.ndarray,
    w: np.ndarray,
    wsum: np.ndarray,
    b: float,
    bsum: float,
    t0: int,
    lam: float,
    radius: float,
) -> tuple[float, float, int]:
    """One pass of subgradient updates over ``order``.

    Updates ``w`` and ``wsum`` in place; returns the new (b, bsum, t).
    Per step t: eta = 1/(lam*(t+1)); on margin violation
    w <- (t/(t+1))*w + eta*y*x and b <- b + y/(t+1), else w <- (t/(t+1))*w;
    then w is projected onto the ball of ``radius`` and both accumulators
    are advanced.
    """
    d = X.shape[1]
    xl = X.tolist()
    yl = y.tolist()
    wl = w.tolist()
    wsl = wsum.tolist()
    t = int(t0)
    r2 = radius * radius
    for i in order.tolist():
        xi = xl[i]
        yi = yl[i]
        eta = 1.0 / (lam * (t + 1.0))
        decay = t / (t + 1.0)
        s = 0.0
        for k in range(d):
            s += wl[k] * xi[k]
        s += b
        if yi * s < 1.0:
            a = eta * yi
            for k in range(d):
                wl[k] = decay * wl[k] + a * xi[k]
            b = b + yi / (t + 1.0)
        else:
            for k in range(d):
                wl[k] = decay * wl[k]
        nw = 0.0
        for k in range(d):
            nw += wl[k] * wl[k]
        if nw > r2:
            f = radius / sqrt(nw)
            for k in range(d):
                wl[k] = wl[k] * f
        for k in range(d):
            wsl[k] += wl[k]
        bsum += b
        t += 1
    w[:] = wl
    wsum[:] = wsl
    return b, bsum, t
