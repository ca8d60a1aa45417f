"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Prints one JSON line per (kernel, size) with the best wall time of each
backend and the speedup.  Both backends are checked to agree first.
"""

import argparse
import json
import random
import timeit

import numpy as np

from crossint import kernels
from crossint.duality import DualContext
from crossint.stirling import stirling


def bench(label, fn_py, fn_cy, repeat):
    out_py, out_cy = fn_py(), fn_cy()
    if isinstance(out_py, np.ndarray):
        assert np.array_equal(out_py, out_cy), label
    else:
        assert out_py == out_cy, label
    t_py = min(timeit.repeat(fn_py, number=1, repeat=repeat))
    t_cy = min(timeit.repeat(fn_cy, number=1, repeat=repeat))
    return {"kernel": label, "python_s": round(t_py, 6), "cython_s": round(t_cy, 6),
            "speedup": round(t_py / t_cy, 1) if t_cy > 0 else None}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    try:
        kernels.get_backend("cython")
    except ImportError:
        print(json.dumps({"error": "compiled extension not built"}))
        return 1

    rows = []
    for n, k in [(9, 4), (10, 4), (11, 5)]:
        c = stirling(n, k)
        rows.append(bench(
            f"rgs_block_masks(n={n},k={k})",
            lambda: kernels.rgs_block_masks(n, k, c, backend="python"),
            lambda: kernels.rgs_block_masks(n, k, c, backend="cython"),
            args.repeat,
        ))

    rng = random.Random(args.seed)
    for n, k, l, t in [(8, 4, 3, 1), (9, 4, 4, 1), (9, 5, 4, 2)]:
        py = DualContext(n, k, l, t, backend="python")
        cy = DualContext(n, k, l, t, backend="cython")
        size = py.U["k"].size
        bits = sum(1 << i for i in rng.sample(range(size), min(size, 400)))
        rows.append(bench(
            f"dual(n={n},k={k},l={l},t={t})",
            lambda: py.dual_bits(bits, "k"),
            lambda: cy.dual_bits(bits, "k"),
            args.repeat,
        ))

    for row in rows:
        print(json.dumps(row))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
