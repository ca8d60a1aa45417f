"""Independent brute-force oracles.

These work on plain Python sets of frozensets of ints and share no code
with the package, so agreement with them is real evidence.
"""

from __future__ import annotations

import itertools
from functools import lru_cache


@lru_cache(maxsize=None)
def set_partitions(n: int) -> tuple[frozenset, ...]:
    """Every partition of {1..n}, built by inserting n into partitions of {1..n-1}."""
    if n == 0:
        return (frozenset(),)
    out = []
    for p in set_partitions(n - 1):
        out.append(p | {frozenset({n})})
        for b in p:
            out.append((p - {b}) | {b | {n}})
    return tuple(out)


def partitions_k(n: int, k: int) -> list[frozenset]:
    return [p for p in set_partitions(n) if len(p) == k]


def partial_partitions(n: int, size: int) -> list[frozenset]:
    """Every collection of ``size`` pairwise disjoint nonempty subsets of {1..n}."""
    out = []
    for support in range(1, n + 1):
        for S in itertools.combinations(range(1, n + 1), support):
            # relabel partitions of {1..|S|} onto S
            for p in partitions_k(support, size):
                out.append(frozenset(frozenset(S[i - 1] for i in b) for b in p))
    return out


def stirling_count(n: int, k: int) -> int:
    return len(partitions_k(n, k))


def as_sets(fam) -> list[frozenset]:
    """Package family (or list of Partitions) to sets of frozensets."""
    return [frozenset(frozenset(b) for b in p.element_lists()) for p in fam]


def cross_ok(F: list[frozenset], G: list[frozenset], t: int) -> bool:
    return all(len(a & b) >= t for a in F for b in G)


def dual(F: list[frozenset], n: int, l: int, t: int) -> set[frozenset]:
    return {q for q in partitions_k(n, l) if all(len(q & p) >= t for p in F)}


def tau(F: list[frozenset], n: int, t: int) -> int:
    for size in range(t, n + 1):
        for T in partial_partitions(n, size):
            if all(len(T & p) >= t for p in F):
                return size
    raise ValueError("no cover")


def min_shared(F: frozenset, others: list[list[frozenset]]) -> int:
    best = len(F)
    for choice in itertools.product(*others):
        common = set(F)
        for p in choice:
            common &= p
        best = min(best, len(common))
    return best
