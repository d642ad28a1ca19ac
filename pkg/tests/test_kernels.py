"""Bit-parity between the compiled and pure kernel backends."""

import numpy as np
import pytest

from ppipred._kernels import get_backend, seq_mean_rows, svm_epoch

try:
    COMPILED = get_backend("compiled")
except ImportError:
    COMPILED = None

PURE = get_backend("pure")

needs_compiled = pytest.mark.skipif(
    COMPILED is None, reason="compiled core not built"
)


@needs_compiled
def test_seq_mean_rows_bit_identical():
    rng = np.random.default_rng(0)
    table = rng.normal(0, 50, (20, 14))
    codes = rng.integers(0, 20, 500)
    cuts = np.sort(rng.choice(np.arange(1, 500), size=30, replace=False))
    offsets = np.concatenate([[0], cuts, [500]])
    a = seq_mean_rows(table, codes, offsets, impl=PURE)
    b = seq_mean_rows(table, codes, offsets, impl=COMPILED)
    assert np.array_equal(a, b)


@needs_compiled
def test_svm_epoch_bit_identical():
    rng = np.random.default_rng(1)
    n, d = 200, 14
    X = np.ascontiguousarray(rng.normal(0, 2, (n, d)))
    y = np.where(rng.random(n) < 0.5, 1.0, -1.0)
    state = {}
    for name, impl in (("pure", PURE), ("compiled", COMPILED)):
        w = np.zeros(d)
        wsum = np.zeros(d)
        b, bsum, t = 0.0, 0.0, 0
        loc_rng = np.random.default_rng(7)
        for _ in range(5):
            order = loc_rng.permutation(n)
            b, bsum, t = svm_epoch(X, y, order, w, wsum, b, bsum, t,
                                   1.0 / n, 25.0, impl=impl)
        state[name] = (w, wsum, b, bsum, t)
    for a, b_ in zip(state["pure"], state["compiled"]):
        if isinstance(a, np.ndarray):
            assert np.array_equal(a, b_)
        else:
            assert a == b_


@needs_compiled
def test_trained_models_identical_across_backends():
    from ppipred import TrainConfig, train_svm
    from tests.conftest import gaussian_blobs

    X, labels = gaussian_blobs(seed=5, n_per_class=50, dim=14)
    models = []
    for impl in (PURE, COMPILED):
        import ppipred._kernels as K

        saved = K._impl
        K._impl = impl
        try:
            models.append(train_svm(X, labels, TrainConfig(epochs=30, seed=9)))
        finally:
            K._impl = saved
    assert np.array_equal(models[0].weights, models[1].weights)
    assert models[0].bias == models[1].bias
    assert models[0].objective_history == models[1].objective_history


def test_projection_kernel_behavior():
    # a single huge-step update must come back onto the radius ball
    X = np.ascontiguousarray([[10.0, 0.0]])
    y = np.array([1.0])
    w = np.zeros(2)
    wsum = np.zeros(2)
    b, bsum, t = svm_epoch(X, y, np.array([0]), w, wsum, 0.0, 0.0, 0,
                           1.0, 2.0, impl=PURE)
    assert np.linalg.norm(w) <= 2.0 + 1e-12
    assert t == 1
