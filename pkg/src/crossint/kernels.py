"""Backend selection for the hot kernels.

The compiled extension ``crossint._ckernels`` is used when importable;
otherwise, or when ``CROSSINT_PURE_PYTHON=1``, the pure-Python module
``crossint._pykernels`` provides the same functions.
"""

import os

import numpy as np

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("CROSSINT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels


def get_backend(name=None):
    """Return the kernel module for ``name`` ("cython", "python" or None)."""
    if name is None:
        return _impl
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


def prepare_block_bits(table, backend=None):
    """Convert a (blocks, words) uint64 table to the backend's bitset form."""
    mod = get_backend(backend)
    if mod is _pykernels:
        return [int.from_bytes(row.tobytes(), "little") for row in table]
    return np.ascontiguousarray(table, dtype=np.uint64)


def rgs_block_masks(n, k, count, backend=None):
    return get_backend(backend).rgs_block_masks(n, k, count)


def dual_mask(bits, fam_ids, t, nbits, backend=None):
    mod = get_backend(backend)
    if mod is not _pykernels:
        fam_ids = np.ascontiguousarray(fam_ids, dtype=np.int32)
        if fam_ids.ndim != 2:
            fam_ids = fam_ids.reshape(0, 1)
    return mod.dual_mask(bits, fam_ids, t, nbits)


def shared_counts(member_masks, probe, backend=None):
    return get_backend(backend).shared_counts(
        np.ascontiguousarray(member_masks, dtype=np.uint64), probe
    )
