"""r-cross t-intersecting tuples (r >= 3): G_i families, s_i values, tuple duals.

For a tuple F_1..F_r, G_i collects the intersections of one member from
every F_j with j != i.  G_i can be huge, so the default path never builds
it: :func:`min_shared_over_choices` walks the reachable subsets of a
single partition's blocks instead (at most 2^k states).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .partitions import Family, Partition, common_blocks, universe

MATERIALIZE_CAP = 10**5


def _check(families: Sequence[Family]):
    if any(len(f) == 0 for f in families):
        raise ValueError("families must be nonempty")
    if len({f.n for f in families}) > 1:
        raise ValueError("families over different ground sets")


def _reachable(F: Partition, others: Sequence[Family], floor: int | None = None) -> set[int]:
    blocks = F.sorted_blocks()
    pos = {b: i for i, b in enumerate(blocks)}
    states = {(1 << len(blocks)) - 1}
    for fam in others:
        # blocks of F each member keeps, as a bitmask over F's blocks
        keeps = set()
        for p in fam:
            m = 0
            for b in p.blocks & F.blocks:
                m |= 1 << pos[b]
            keeps.add(m)
        states = {s & m for s in states for m in keeps}
        if floor is not None and any(s.bit_count() < floor for s in states):
            return {next(s for s in states if s.bit_count() < floor)}
    return states


def min_shared_over_choices(F: Partition, others: Sequence[Family]) -> int:
    """min over F_j in others[j] of the number of blocks of F lying in every F_j."""
    _check(others)
    return min(s.bit_count() for s in _reachable(F, others))


def brute_min_shared(F: Partition, others: Sequence[Family]) -> int:
    """Same quantity by running over the full product of choices."""
    _check(others)
    best = len(F)
    for choice in itertools.product(*others):
        common = F.blocks
        for p in choice:
            common = common & p.blocks
        best = min(best, len(common))
    return best


def s_values(families: Sequence[Family]) -> list[int]:
    """s_i = least size of a member of G_i, for each i."""
    _check(families)
    r = len(families)
    if r < 2:
        raise ValueError("need at least two families")
    out = []
    for i in range(r):
        rest = [families[j] for j in range(r) if j != i]
        head, tail = rest[0], rest[1:]
        if not tail:
            out.append(min(len(p) for p in head))
            continue
        out.append(min(min_shared_over_choices(p, tail) for p in head))
    return out


def is_r_cross_t_intersecting(families: Sequence[Family], t: int) -> bool:
    _check(families)
    head, tail = families[0], families[1:]
    return all(min(s.bit_count() for s in _reachable(p, tail)) >= t for p in head)


def tuple_dual(i: int, families: Sequence[Family], t: int, budget: int | None = None) -> Family:
    """Every k_i-partition F with min_shared_over_choices(F, others) >= t (``i`` 0-based).

    Only the other families need to be nonempty; ``families[i]`` just fixes n and k_i.
    """
    fam = families[i]
    others = [families[j] for j in range(len(families)) if j != i]
    _check(others)
    U = universe(fam.n, fam.k, budget)
    return U.filter(lambda p: min(s.bit_count() for s in _reachable(p, others, floor=t)) >= t)


def is_tuple_maximal(families: Sequence[Family], t: int) -> bool:
    return all(tuple_dual(i, families, t) == families[i] for i in range(len(families)))


@dataclass
class FixedPointResult:
    families: list[Family]
    status: str  # "fixed" or "cycle"
    iterations: int
    cycle_length: int = 0


def iterate_tuple_dual(families: Sequence[Family], t: int, max_iter: int = 100) -> FixedPointResult:
    """Replace each family by its tuple dual, in turn, until nothing changes.

    A revisited state is reported as a cycle instead of looping forever.
    """
    fams = list(families)
    seen = {tuple(fams): 0}
    for it in range(1, max_iter + 1):
        for i in range(len(fams)):
            fams[i] = tuple_dual(i, fams, t)
        key = tuple(fams)
        if key in seen:
            prev = seen[key]
            if prev == it - 1:
                return FixedPointResult(fams, "fixed", it)
            return FixedPointResult(fams, "cycle", it, it - prev)
        seen[key] = it
    raise RuntimeError(f"no fixed point or cycle within {max_iter} rounds")


def materialize_G(i: int, families: Sequence[Family], cap: int = MATERIALIZE_CAP) -> list[Partition]:
    """G_i as a list of distinct partial partitions (only when the product is small)."""
    _check(families)
    others = [families[j] for j in range(len(families)) if j != i]
    size = math.prod(len(f) for f in others)
    if size > cap:
        raise ValueError(f"G_{i + 1} would need {size} intersections, above cap {cap}")
    n = families[0].n
    out = set()
    for choice in itertools.product(*others):
        common = choice[0].blocks
        for p in choice[1:]:
            common = common & p.blocks
        out.add(Partition._trusted(n, common))
    return sorted(out, key=Partition.sort_key)


def tuple_product(families: Sequence[Family]) -> int:
    return math.prod(len(f) for f in families)


def is_nontrivial(families: Sequence[Family], t: int) -> bool:
    return len(common_blocks(families)) < t
