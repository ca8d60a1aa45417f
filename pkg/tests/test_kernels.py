import importlib.util
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from crossint import kernels
from crossint.duality import DualContext
from crossint.stirling import stirling

HAVE_CYTHON = importlib.util.find_spec("crossint._ckernels") is not None
needs_cython = pytest.mark.skipif(not HAVE_CYTHON, reason="compiled extension not built")


def test_backend_is_known():
    assert kernels.BACKEND in ("cython", "python")
    assert kernels.get_backend("python") is kernels._pykernels
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")


@pytest.mark.parametrize("backend", ["python", pytest.param("cython", marks=needs_cython)])
def test_rgs_rows_are_partitions(backend):
    n, k = 7, 3
    arr = kernels.rgs_block_masks(n, k, stirling(n, k), backend=backend)
    assert arr.shape == (stirling(n, k), k)
    full = (1 << n) - 1
    for row in arr.tolist():
        assert sum(row) == full
        acc = 0
        for b in row:
            assert b and not acc & b
            acc |= b


@needs_cython
@pytest.mark.parametrize("n", range(1, 10))
def test_rgs_backends_agree(n):
    for k in range(1, n + 1):
        c = stirling(n, k)
        py = kernels.rgs_block_masks(n, k, c, backend="python")
        cy = kernels.rgs_block_masks(n, k, c, backend="cython")
        assert np.array_equal(py, cy)


@needs_cython
@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from([(6, 3, 3, 1), (6, 3, 2, 1), (7, 4, 3, 1), (7, 4, 4, 2), (5, 3, 3, 2)]),
    st.integers(0, 2**32 - 1),
)
def test_dual_backends_agree(params, seed):
    n, k, l, t = params
    rng = random.Random(seed)
    py = DualContext(n, k, l, t, backend="python")
    cy = DualContext(n, k, l, t, backend="cython")
    size = py.U["k"].size
    bits = 0
    for i in rng.sample(range(size), rng.randint(0, min(6, size))):
        bits |= 1 << i
    assert py.dual_bits(bits, "k") == cy.dual_bits(bits, "k")
    assert py.closure_bits(bits, "k") == cy.closure_bits(bits, "k")


@needs_cython
@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_shared_counts_backends_agree(seed):
    rng = random.Random(seed)
    n, k = 6, 3
    arr = kernels.rgs_block_masks(n, k, stirling(n, k), backend="python")
    probe = [int(b) for b in arr[rng.randrange(len(arr))]][: rng.randint(0, k)]
    py = kernels.shared_counts(arr, probe, backend="python")
    cy = kernels.shared_counts(arr, probe, backend="cython")
    assert np.array_equal(py, cy)
    expect = [len(set(row) & set(probe)) for row in arr.tolist()]
    assert py.tolist() == expect
