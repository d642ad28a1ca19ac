# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_pycore``.

Must stay operation-for-operation identical to the pure implementation;
the build disables FP contraction so both backends round identically.
"""

from libc.math cimport sqrt

import numpy as np

BACKEND = "compiled"


def seq_mean_rows(const double[:, ::1] table, const Py_ssize_t[::1] codes,
                  const Py_ssize_t[::1] offsets):
    cdef Py_ssize_t d = table.shape[1]
    cdef Py_ssize_t m = offsets.shape[0] - 1
    out_arr = np.empty((m, d), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double[::1] acc = np.zeros(d, dtype=np.float64)
    cdef Py_ssize_t i, j, k, lo, hi
    cdef double n
    for i in range(m):
        lo = offsets[i]
        hi = offsets[i + 1]
        for k in range(d):
            acc[k] = 0.0
        for j in range(lo, hi):
            for k in range(d):
                acc[k] += table[codes[j], k]
        n = <double>(hi - lo)
        for k in range(d):
            out[i, k] = acc[k] / n
    return out_arr


def svm_epoch(const double[:, ::1] X, const double[::1] y, const Py_ssize_t[::1] order,
              double[::1] w, double[::1] wsum,
              double b, double bsum, long long t0, double lam, double radius):
    cdef Py_ssize_t d = X.shape[1]
    cdef Py_ssize_t n = order.shape[0]
    cdef long long t = t0
    cdef double r2 = radius * radius
    cdef Py_ssize_t i, k, idx
    cdef double eta, decay, s, a, yi, nw, f
    for i in range(n):
        idx = order[i]
        yi = y[idx]
        eta = 1.0 / (lam * (<double>t + 1.0))
        decay = (<double>t) / (<double>t + 1.0)
        s = 0.0
        for k in range(d):
            s += w[k] * X[idx, k]
        s += b
        if yi * s < 1.0:
            a = eta * yi
            for k in range(d):
                w[k] = decay * w[k] + a * X[idx, k]
            b = b + yi / (<double>t + 1.0)
        else:
            for k in range(d):
                w[k] = decay * w[k]
        nw = 0.0
        for k in range(d):
            nw += w[k] * w[k]
        if nw > r2:
            f = radius / sqrt(nw)
            for k in range(d):
                w[k] = w[k] * f
        for k in range(d):
            wsum[k] += w[k]
        bsum += b
        t += 1
    return b, bsum, t
