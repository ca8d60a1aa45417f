"""The dual operator on families and next-closure enumeration of maximal pairs.

``dual(F, l, t)`` is the set of l-partitions sharing at least t blocks
with every member of F.  Families inside a universe are handled as
Python-int bitsets over member indices; the hot loop is
:func:`crossint.kernels.dual_mask`.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import kernels
from .partitions import Family, Universe, common_blocks, universe

DEFAULT_CLOSURE_BUDGET = int(os.environ.get("CROSSINT_CLOSURE_BUDGET", 10**5))


class DualContext:
    """Universes S([n], k) and S([n], l) with block-id maps between them.

    Side "k" holds the F families, side "l" the G families.
    """

    def __init__(self, n: int, k: int, l: int, t: int, budget: int | None = None, backend=None):
        if t < 1:
            raise ValueError("t must be at least 1")
        self.n, self.k, self.l, self.t = n, k, l, t
        self.backend = backend
        self.U = {"k": universe(n, k, budget), "l": universe(n, l, budget)}
        Uk, Ul = self.U["k"], self.U["l"]
        # member rows of one side expressed in block ids of the other side
        self._rows = {
            "k": Uk.block_ids_in(Ul)[Uk.member_blocks],  # F members as l-side ids
            "l": Ul.block_ids_in(Uk)[Ul.member_blocks],  # G members as k-side ids
        }
        self.evaluations = 0

    def __repr__(self):
        return f"DualContext(n={self.n}, k={self.k}, l={self.l}, t={self.t})"

    @staticmethod
    def other(side: str) -> str:
        return "l" if side == "k" else "k"

    def dual_bits(self, bits: int, side: str) -> int:
        """Dual of the side-``side`` family ``bits``, as bits on the other side."""
        src = self.U[side]
        dst = self.U[self.other(side)]
        rows = self._rows[side][src.indices(bits)]
        self.evaluations += 1
        return kernels.dual_mask(
            dst.prepared_bits(self.backend), rows, self.t, dst.size, backend=self.backend
        )

    def closure_bits(self, bits: int, side: str = "l") -> int:
        return self.dual_bits(self.dual_bits(bits, side), self.other(side))

    def family(self, bits: int, side: str) -> Family:
        return self.U[side].family(bits)

    def bits(self, fam: Family, side: str) -> int:
        return self.U[side].bits_of(fam)


def _external_dual(fam: Family, l: int, t: int, budget=None, backend=None) -> Family:
    target = universe(fam.n, l, budget)
    rows = np.full((len(fam), max(fam.k, 1)), -1, dtype=np.int32)
    for i, p in enumerate(fam):
        for j, b in enumerate(p.sorted_blocks()):
            rows[i, j] = target.block_id.get(b, -1)
    bits = kernels.dual_mask(target.prepared_bits(backend), rows, t, target.size, backend=backend)
    return target.family(bits)


def dual(fam: Family, l: int, t: int, budget: int | None = None, backend=None) -> Family:
    """All l-partitions sharing at least t blocks with every member of ``fam``.

    The dual of the empty family is the whole universe S([n], l).
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    return _external_dual(fam, l, t, budget, backend)


def closure(g: Family, k: int, t: int, budget: int | None = None, backend=None) -> Family:
    """dual(dual(g)), passing through the k-partitions."""
    return dual(dual(g, k, t, budget, backend), g.k, t, budget, backend)


def is_maximal_pair(F: Family, G: Family, t: int) -> bool:
    """F = dual(G) and G = dual(F); implies cross t-intersection."""
    return dual(G, F.k, t) == F and dual(F, G.k, t) == G


# -- next-closure -------------------------------------------------------


class ClosureBudgetExceeded(RuntimeError):
    def __init__(self, partial: "PairEnumeration"):
        super().__init__(
            f"closure budget {partial.budget} reached after {partial.closed_count} closed families"
        )
        self.partial = partial


@dataclass
class PairEnumeration:
    """Certificate of a maximal-pair enumeration (complete or partial)."""

    n: int
    k: int
    l: int
    t: int
    budget: int
    closed_count: int = 0
    evaluations: int = 0
    complete: bool = False
    last_closed: int | None = None  # G-side bits of the last emitted pair


def iter_maximal_pairs(
    ctx: DualContext, budget: int | None = None, certificate: PairEnumeration | None = None
) -> Iterator[tuple[int, int]]:
    """Yield ``(F_bits, G_bits)`` for every maximal pair, in lectic order of G.

    Each closed G-side family appears once.  ``budget`` bounds the number of
    closure evaluations; reaching it raises :class:`ClosureBudgetExceeded`
    carrying the partial certificate.
    """
    budget = DEFAULT_CLOSURE_BUDGET if budget is None else budget
    cert = certificate or PairEnumeration(ctx.n, ctx.k, ctx.l, ctx.t, budget)
    cert.budget = budget
    N = ctx.U["l"].size

    def clo(bits):
        if cert.evaluations >= budget:
            raise ClosureBudgetExceeded(cert)
        cert.evaluations += 1
        F = ctx.dual_bits(bits, "l")
        return F, ctx.dual_bits(F, "k")

    F, A = clo(0)
    while True:
        cert.closed_count += 1
        cert.last_closed = A
        yield F, A
        nxt = None
        for i in range(N - 1, -1, -1):
            bit = 1 << i
            if A & bit:
                continue
            low = A & (bit - 1)
            F2, B = clo(low | bit)
            if B & (bit - 1) == low:
                nxt = (F2, B)
                break
        if nxt is None:
            cert.complete = True
            return
        F, A = nxt


@dataclass
class PairSummary:
    best_product: int
    witnesses: list[tuple[Family, Family]] = field(default_factory=list)
    certificate: PairEnumeration | None = None


def best_maximal_pairs(
    ctx: DualContext, nontrivial: bool = False, budget: int | None = None
) -> PairSummary:
    """Exhaustive maximum of |F||G| over maximal pairs, all optimal witnesses kept.

    Raises :class:`ClosureBudgetExceeded` when the enumeration cannot finish.
    """
    cert = PairEnumeration(ctx.n, ctx.k, ctx.l, ctx.t, budget or DEFAULT_CLOSURE_BUDGET)
    best = 0
    wits: list[tuple[int, int]] = []
    for F, G in iter_maximal_pairs(ctx, budget, cert):
        if not F or not G:
            continue
        prod = F.bit_count() * G.bit_count()
        if prod < best:
            continue
        if nontrivial:
            fams = [ctx.family(F, "k"), ctx.family(G, "l")]
            if len(common_blocks(fams)) >= ctx.t:
                continue
        if prod > best:
            best, wits = prod, []
        wits.append((F, G))
    return PairSummary(
        best,
        [(ctx.family(F, "k"), ctx.family(G, "l")) for F, G in wits],
        cert,
    )
