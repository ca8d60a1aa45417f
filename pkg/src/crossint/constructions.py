"""Extremal families, their exact sizes, and the bound functions f, g, h, phi, r.

Every family can be produced two ways: ``mode="enumerate"`` filters the
universe S([n], k) (budgeted), ``mode="predicate"`` returns a membership
test usable at any n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from .partitions import Family, Partition, singletons, universe
from .stirling import binom, stirling

KINDS = ("A", "B", "C", "D", "HM1", "HM2", "P28i", "P28ii", "W")


class ConstructionError(ValueError):
    pass


# -- closed forms -------------------------------------------------------


def _nonneg(v: int, what: str) -> int:
    if v < 0:
        raise ArithmeticError(f"{what} evaluated to negative {v}")
    return v


def size_A(n: int, k: int, l: int, t: int) -> int:
    """|A(k, l, t)| by inclusion-exclusion over the blocks of [[l]] minus [[t]]."""
    total = sum(
        (-1) ** (j - 1) * binom(l - t, j) * stirling(n - t - j, k - t - j)
        for j in range(1, l - t + 1)
    )
    return _nonneg(total, "size_A")


def size_B(n: int, l: int, t: int) -> int:
    return stirling(n - t, l - t) + t


def size_C(n: int, k: int, t: int) -> int:
    return stirling(n - t - 1, k - t - 1)


def size_D(n: int, l: int, t: int) -> int:
    return _nonneg((t + 1) * stirling(n - t, l - t) - t * stirling(n - t - 1, l - t - 1), "size_D")


def size_r1(n: int, k: int, l: int, t: int) -> int:
    return size_A(n, k, l, t) * size_B(n, l, t)


def size_r2(n: int, k: int, l: int, t: int) -> int:
    return size_C(n, k, t) * size_D(n, l, t)


def size_r(n: int, k: int, l: int, t: int) -> int:
    return max(size_r1(n, k, l, t), size_r2(n, k, l, t))


def size_h(m: int, k: int, t: int, n: int) -> int:
    """Number of k-partitions of [n] containing at least t of the singletons of [[m]].

    Sums, over u >= t, the partitions containing exactly u of them.
    """
    if not t <= m <= n:
        raise ValueError(f"need t <= m <= n, got m={m}, t={t}, n={n}")
    total = 0
    for u in range(t, m + 1):
        exact = 0
        for w in range(m - u + 1):
            exact += (-1) ** w * binom(m - u, w) * stirling(n - u - w, k - u - w)
        total += binom(m, u) * exact
    return _nonneg(total, "size_h")


def size_h_closed(k: int, t: int, n: int) -> int:
    """h(t+1, k, t, n) in closed form; equals |D(k, t)|."""
    return size_D(n, k, t)


def size_phi(m: int, a: int, ks: Sequence[int], t: int, n: int) -> int:
    """phi(m, a; k_1..k_r, n) with ``a`` 1-based."""
    if not 1 <= a <= len(ks):
        raise ValueError(f"index a={a} outside 1..{len(ks)}")
    if m < t:
        raise ValueError("need m >= t")
    v = size_h(m, ks[a - 1], t, n)
    for i, ki in enumerate(ks, start=1):
        if i != a:
            v *= stirling(n - m, ki - m)
    return v


def bound_f(m: int, k: int, l: int, t: int, n: int) -> int:
    if not t <= m <= k:
        raise ValueError(f"need t <= m <= k, got m={m}, t={t}, k={k}")
    if m == k:
        return (l - t + 1) ** (k - t) * binom(k, t)
    return (l - t + 1) ** (m - t) * binom(m, t) * stirling(n - m, k - m)


def bound_g(m: int, k: int, l: int, t: int, n: int) -> int:
    return max(bound_f(m, k, l, t, n), bound_f(k, k, l, t, n))


def hm_bound(n: int, k: int, t: int, branch: str) -> int:
    if branch == "i":
        total = sum(
            (-1) ** (j - 1) * binom(k - t, j) * stirling(n - t - j, k - t - j)
            for j in range(1, k - t + 1)
        )
        return _nonneg(total + t, "hm_bound(i)")
    if branch == "ii":
        v = (t + 2) * stirling(n - t - 1, k - t - 1) - (t + 1) * stirling(n - t - 2, k - t - 2)
        return _nonneg(v, "hm_bound(ii)")
    raise ValueError(f"branch must be 'i' or 'ii', got {branch!r}")


def size_thm16(n: int, ks: Sequence[int], t: int) -> int:
    """Upper bound for non-trivial r-cross t-intersecting tuples (k_1 >= ... >= k_r)."""
    ks = sorted(ks, reverse=True)
    v = size_D(n, ks[-1], t)
    for ki in ks[:-1]:
        v *= stirling(n - t - 1, ki - t - 1)
    return v


# -- construction specs -------------------------------------------------


@dataclass(frozen=True)
class ConstructionSpec:
    """A named family plus its parameters.

    ``k`` is the uniformity of the family being built.  ``l`` is the size
    of M for A (defaults to ``k``).  Anchors default to the singleton
    specializations: X=[[t]], M=[[l]], T=[[t+1]], G=[[t]] plus the rest.
    For P28i/P28ii, ``k == t + 1`` builds the (t+1)-partition side and
    ``k >= t + 2`` builds the other side.
    """

    kind: str
    n: int
    k: int
    t: int
    l: int | None = None
    X: Partition | None = None
    M: Partition | None = None
    T: Partition | None = None
    G: Partition | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConstructionError(f"unknown construction {self.kind!r}")
        if self.t < 1:
            raise ConstructionError("t must be at least 1")
        if not 1 <= self.k <= self.n:
            raise ConstructionError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")

    def anchors(self) -> dict:
        n, t = self.n, self.t
        kind = self.kind
        if kind in ("A", "B"):
            l = self.l if self.l is not None else self.k
            if kind == "B":
                l = self.k
            M = self.M if self.M is not None else singletons(min(l, n), n)
            X = self.X if self.X is not None else singletons(t, n)
            if len(X) != t:
                raise ConstructionError(f"|X| must be t={t}, got {len(X)}")
            if not X.issubset(M):
                raise ConstructionError("X must be a subset of M")
            if kind == "B" and len(M) != self.k:
                raise ConstructionError(f"M must have l={self.k} blocks for B")
            if kind == "B" and M.union == (1 << n) - 1:
                raise ConstructionError("B needs the union of M to differ from [n]")
            return {"X": X, "M": M}
        if kind in ("C", "D"):
            T = self.T if self.T is not None else singletons(t + 1, n)
            if len(T) != t + 1:
                raise ConstructionError(f"T must have t+1={t + 1} blocks")
            return {"T": T}
        if kind in ("HM1", "HM2"):
            return {}
        if kind == "P28i":
            G = self.G if self.G is not None else _default_G(n, t)
            if not G.is_full(t + 1):
                raise ConstructionError("G must be a full (t+1)-partition")
            return {"G": G}
        if kind == "P28ii":
            M = self.M if self.M is not None else singletons(t + 1, n)
            if len(M) < t + 1:
                raise ConstructionError("M needs at least t+1 blocks")
            if M.is_full(t + 1):
                raise ConstructionError("M must not be a full (t+1)-partition")
            return {"M": M}
        if kind == "W":
            if self.G is None:
                raise ConstructionError("W needs an anchor partition G")
            return {"G": self.G}
        raise AssertionError(kind)


def _default_G(n: int, t: int) -> Partition:
    blocks = [1 << i for i in range(t)]
    blocks.append(((1 << n) - 1) & ~((1 << t) - 1))
    return Partition(n, blocks)


def _complement_block(n: int, A: Sequence[int]) -> int:
    u = 0
    for b in A:
        u |= b
    return ((1 << n) - 1) & ~u


def _p28ii_side(n: int, t: int, M: Partition) -> list[Partition]:
    out = []
    for A in itertools.combinations(M.sorted_blocks(), t):
        rest = _complement_block(n, A)
        out.append(Partition(n, list(A) + [rest]))
    return out


def _b_extra(n: int, X: Partition, M: Partition) -> list[Partition]:
    outside = _complement_block(n, M.blocks)
    out = []
    for b in X.sorted_blocks():
        blocks = [c for c in M.blocks if c != b] + [b | outside]
        out.append(Partition(n, blocks))
    return out


def predicate(spec: ConstructionSpec) -> Callable[[Partition], bool]:
    """Membership test for the family described by ``spec`` (any n)."""
    n, k, t = spec.n, spec.k, spec.t
    an = spec.anchors()
    kind = spec.kind

    def full(p):
        return p.n == n and p.is_full(k)

    if kind == "A":
        X, M = an["X"].blocks, an["M"].blocks
        rest = M - X
        return lambda p: full(p) and X <= p.blocks and bool(p.blocks & rest)
    if kind == "B":
        X = an["X"].blocks
        extra = frozenset(_b_extra(n, an["X"], an["M"]))
        return lambda p: full(p) and (X <= p.blocks or p in extra)
    if kind == "C":
        T = an["T"].blocks
        return lambda p: full(p) and T <= p.blocks
    if kind == "D":
        T = an["T"].blocks
        return lambda p: full(p) and len(T & p.blocks) >= t
    if kind == "HM1":
        X = singletons(t, n).blocks
        mid = frozenset(1 << i for i in range(t, k))
        extra = frozenset(
            _b_extra(n, Partition._trusted(n, [1 << i]), singletons(k, n))[0] for i in range(t)
        )
        return lambda p: full(p) and ((X <= p.blocks and bool(p.blocks & mid)) or p in extra)
    if kind == "HM2":
        S = singletons(t + 2, n).blocks
        return lambda p: full(p) and len(S & p.blocks) >= t + 1
    if kind == "P28i":
        G = an["G"]
        if k == t + 1:
            return lambda p: p == G
        return lambda p: full(p) and len(G.blocks & p.blocks) == t
    if kind == "P28ii":
        M = an["M"]
        if k == t + 1:
            side = frozenset(_p28ii_side(n, t, M))
            return lambda p: p in side
        return lambda p: full(p) and M.blocks <= p.blocks
    if kind == "W":
        G = an["G"].blocks
        return lambda p: full(p) and len(G & p.blocks) >= t
    raise AssertionError(kind)


def build_family(spec: ConstructionSpec, mode: str = "enumerate", budget: int | None = None):
    """Return the family (``enumerate``) or its membership test (``predicate``)."""
    if mode == "predicate":
        return predicate(spec)
    if mode != "enumerate":
        raise ValueError(f"mode must be 'enumerate' or 'predicate', got {mode!r}")
    n, k, t = spec.n, spec.k, spec.t
    an = spec.anchors()
    if spec.kind == "P28i" and k == t + 1:
        return Family(n, k, [an["G"]])
    if spec.kind == "P28ii" and k == t + 1:
        return Family(n, k, _p28ii_side(n, t, an["M"]))
    U = universe(n, k, budget)
    return U.filter(predicate(spec))


def family_W(G: Partition, k: int, t: int, n: int, budget: int | None = None) -> Family:
    """All k-partitions of [n] sharing at least t blocks with G."""
    return build_family(ConstructionSpec("W", n, k, t, G=G), budget=budget)


def named(kind: str, n: int, k: int, t: int, l: int | None = None, budget=None) -> Family:
    """Singleton specializations A(k,l,t), B(l,t), C(k,t), D(l,t), HM1, HM2."""
    return build_family(ConstructionSpec(kind, n, k, t, l=l), budget=budget)


def closed_size(kind: str, n: int, k: int, t: int, l: int | None = None) -> int:
    """Closed-form size of a singleton specialization."""
    if kind == "A":
        return size_A(n, k, k if l is None else l, t)
    if kind == "B":
        return size_B(n, k, t)
    if kind == "C":
        return size_C(n, k, t)
    if kind == "D":
        return size_D(n, k, t)
    if kind == "HM1":
        return hm_bound(n, k, t, "i")
    if kind == "HM2":
        return hm_bound(n, k, t, "ii")
    raise ValueError(f"no closed form for {kind!r}")
