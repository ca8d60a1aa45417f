"""Pure-Python implementations of the hot kernels.

Same signatures and results as the compiled ``_ckernels`` module; used when
the extension is not built or ``CROSSINT_PURE_PYTHON=1`` is set.
"""

import numpy as np


def rgs_block_masks(n, k, count):
    """All k-partitions of [n] as a ``(count, k)`` uint64 array.

    Rows follow lexicographic order of restricted growth strings; column j
    holds the mask of the j-th block (blocks ordered by least element,
    element i is bit i-1).
    """
    if count == 0 or n == 0 or k == 0:
        return np.zeros((count, k), dtype=np.uint64)
    # grow all RGS prefixes one element at a time; children of a prefix are
    # ordered by the value of the new element, which keeps lexicographic order
    masks = np.zeros((1, k), dtype=np.uint64)
    masks[0, 0] = 1
    used = np.ones(1, dtype=np.int64)
    for m in range(1, n):
        left = n - m - 1
        bit = np.uint64(1 << m)
        parts, counts, keys = [], [], []
        for v in range(k):
            new_used = np.maximum(used, v + 1)
            idx = np.nonzero((v <= used) & (new_used + left >= k))[0]
            if idx.size == 0:
                continue
            child = masks[idx]
            child[:, v] |= bit
            parts.append(child)
            counts.append(new_used[idx])
            keys.append(idx * k + v)
        order = np.argsort(np.concatenate(keys), kind="stable")
        masks = np.concatenate(parts)[order]
        used = np.concatenate(counts)[order]
    out = np.ascontiguousarray(masks)
    row = len(out)
    if row != count:
        raise AssertionError(f"enumerated {row} partitions, expected {count}")
    return out


def dual_mask(block_bits, fam_ids, t, nbits):
    """Bitset of target-universe members sharing >= t blocks with every row.

    ``block_bits`` is a sequence of Python-int bitsets (one per target block
    id); ``fam_ids`` is an int array of shape (F, kmax) of block ids with -1
    for "no such block in the target universe".
    """
    acc = (1 << nbits) - 1
    ids = fam_ids.tolist() if hasattr(fam_ids, "tolist") else fam_ids
    for row in ids:
        levels = [0] * t
        for b in row:
            if b < 0:
                continue
            x = block_bits[b]
            for lvl in range(t - 1, 0, -1):
                levels[lvl] |= levels[lvl - 1] & x
            levels[0] |= x
        acc &= levels[t - 1]
        if not acc:
            break
    return acc


def shared_counts(member_masks, probe):
    """Number of blocks each row of ``member_masks`` shares with ``probe``."""
    pset = {int(b) for b in probe if b}
    return np.array(
        [sum(1 for b in row if b and int(b) in pset) for row in member_masks.tolist()],
        dtype=np.int64,
    )
