"""t-covers and the exact t-covering number.

A t-cover of a family is a partial partition sharing at least t blocks
with every member.  Only blocks occurring in some member can contribute to
a shared count, so the search draws candidates from those blocks alone: a
cover using any other block stays a cover after that block is dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .partitions import Family, Partition, _low


class NoCoverExists(ValueError):
    pass


@dataclass
class CoverResult:
    tau: int
    witnesses: list[Partition] = field(default_factory=list)
    explored: int = 0


def _ground(fam: Family | Sequence[Partition]) -> int:
    if len(fam) == 0:
        raise ValueError("t-covers of an empty family are undefined")
    if isinstance(fam, Family):
        return fam.n
    ns = {p.n for p in fam}
    if len(ns) > 1:
        raise ValueError("members over different ground sets")
    return ns.pop()


def is_t_cover(T: Partition, fam: Family | Sequence[Partition], t: int) -> bool:
    if T.n != _ground(fam):
        raise ValueError("cover and family over different ground sets")
    blocks = T.blocks
    return all(len(blocks & p.blocks) >= t for p in fam)


class _Search:
    """Depth-first branch-and-bound over disjoint candidate blocks."""

    def __init__(self, fam: Family | Sequence[Partition], t: int):
        self.n = _ground(fam)
        self.t = t
        self.members = [p.sorted_blocks() for p in fam]
        occ: dict[int, list[int]] = {}
        for i, bl in enumerate(self.members):
            for b in bl:
                occ.setdefault(b, []).append(i)
        self.occ = occ
        self.counts = [0] * len(self.members)
        self.explored = 0

    def run(self, size: int, collect: bool, exact_size: bool = False) -> set[frozenset]:
        """Covers with ``size`` blocks (or fewer unless ``exact_size``)."""
        self.found: set[frozenset] = set()
        self.collect = collect
        self.size = size
        self.exact = exact_size
        self._dfs([], 0)
        return self.found

    def _add(self, b):
        for i in self.occ.get(b, ()):
            self.counts[i] += 1

    def _remove(self, b):
        for i in self.occ.get(b, ()):
            self.counts[i] -= 1

    def _dfs(self, chosen: list[int], used: int) -> bool:
        self.explored += 1
        t = self.t
        left = self.size - len(chosen)
        worst = -1
        worst_def = 0
        for i, c in enumerate(self.counts):
            d = t - c
            if d > worst_def:
                worst_def, worst = d, i
                if d > left:
                    return False
        if worst < 0:
            if self.exact and left > 0:
                return self._pad(chosen, used, left)
            self.found.add(frozenset(chosen))
            return not self.collect
        for b in self.members[worst]:
            if b & used or b in chosen:
                continue
            chosen.append(b)
            self._add(b)
            stop = self._dfs(chosen, used | b)
            self._remove(b)
            chosen.pop()
            if stop:
                return True
        return False

    def _pad(self, chosen, used, left) -> bool:
        # covers already satisfied; extend by any disjoint candidate blocks
        cands = sorted((b for b in self.occ if not b & used), key=lambda b: (_low(b), b))

        def rec(start, cur, u, left):
            if left == 0:
                self.found.add(frozenset(chosen + cur))
                return
            for j in range(start, len(cands)):
                b = cands[j]
                if b & u:
                    continue
                cur.append(b)
                rec(j + 1, cur, u | b, left - 1)
                cur.pop()

        rec(0, [], used, left)
        return False


def _sorted_covers(n: int, found: Iterable[frozenset]) -> list[Partition]:
    return sorted((Partition._trusted(n, c) for c in found), key=Partition.sort_key)


def tau_t(fam: Family | Sequence[Partition], t: int, collect_witnesses: bool = False) -> CoverResult:
    """Exact t-covering number by iterative deepening.

    With ``collect_witnesses`` every minimum cover is returned, in
    canonical order.
    """
    n = _ground(fam)
    if t < 1:
        raise ValueError("t must be at least 1")
    search = _Search(fam, t)
    for size in range(t, n + 1):
        found = search.run(size, collect_witnesses)
        if found:
            wit = _sorted_covers(n, found) if collect_witnesses else [
                Partition._trusted(n, next(iter(found)))
            ]
            return CoverResult(size, wit, search.explored)
    raise NoCoverExists(f"family of {len(fam)} members has no {t}-cover")


def min_covers(fam: Family | Sequence[Partition], t: int, size: int) -> list[Partition]:
    """All t-covers with exactly ``size`` blocks drawn from member blocks."""
    n = _ground(fam)
    if size < t:
        return []
    search = _Search(fam, t)
    return _sorted_covers(n, search.run(size, True, exact_size=True))
