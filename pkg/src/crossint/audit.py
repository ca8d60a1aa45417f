"""Finite-grid certification of the technical inequalities.

Each catalog entry maps a lemma id to a checker producing one
:class:`Verdict` per grid point.  Inequalities built from Stirling numbers,
binomials and rational constants are decided exactly, after clearing
denominators or raising both sides to an integer power.  Inequalities
involving e, ln or non-integral powers are decided with certified
intervals (:mod:`crossint.certified`); those may end "inconclusive" at the
precision cap, never with a guess.

Hypotheses of the form ``n >= L(k, t)`` (and shifted or doubled variants)
are decided by the exact integer tests of :mod:`crossint.stirling`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator

import numpy as np

from . import certified
from .constructions import (
    bound_f,
    bound_g,
    size_h,
    size_phi,
    size_r1,
    size_r2,
    size_r,
)
from .parallel import pmap
from .stirling import (
    L_base,
    binom,
    min_n_for_2L,
    min_n_for_L,
    stirling,
    threshold_2L_holds,
    threshold_L_holds,
)

PASS, FAIL, INCONCLUSIVE, SKIPPED = "pass", "fail", "inconclusive", "skipped"


@dataclass
class Verdict:
    lemma: str
    params: dict
    verdict: str
    lhs: object = None
    rhs: object = None
    note: str = ""

    def to_dict(self) -> dict:
        d = {
            "lemma": self.lemma,
            "params": {k: (str(v) if isinstance(v, int) and abs(v) >= 2**53 else v) for k, v in self.params.items()},
            "verdict": self.verdict,
            "lhs": None if self.lhs is None else str(self.lhs),
            "rhs": None if self.rhs is None else str(self.rhs),
        }
        if self.note:
            d["note"] = self.note
        return d


@dataclass(frozen=True)
class Grid:
    t_max: int = 3
    k_max: int = 8
    n_extra: int = 10

    def ts(self):
        return range(1, self.t_max + 1)

    def to_dict(self):
        return {"t_max": self.t_max, "k_max": self.k_max, "n_extra": self.n_extra}


@dataclass
class AuditReport:
    lemma: str
    grid: dict
    verdicts: list[Verdict] = field(default_factory=list)

    @property
    def totals(self) -> dict:
        out = {PASS: 0, FAIL: 0, INCONCLUSIVE: 0, SKIPPED: 0}
        for v in self.verdicts:
            out[v.verdict] += 1
        return out

    @property
    def ok(self) -> bool:
        return self.totals[FAIL] == 0

    def failures(self) -> list[Verdict]:
        return [v for v in self.verdicts if v.verdict == FAIL]


# -- helpers --------------------------------------------------------------


def _exact(lemma, params, lhs, rhs, op: str, note: str = "") -> Verdict:
    ok = {">": lhs > rhs, ">=": lhs >= rhs, "<": lhs < rhs, "<=": lhs <= rhs, "==": lhs == rhs}[op]
    return Verdict(lemma, params, PASS if ok else FAIL, lhs, rhs, note or op)


def _interval(lemma, params, dec: certified.Decision, note: str = "") -> Verdict:
    v = PASS if dec.value else (INCONCLUSIVE if dec.value is None else FAIL)
    return Verdict(lemma, params, v, note=f"{note} prec={dec.prec} {dec.detail}".strip())


def _n_range(n0: int, grid: Grid) -> range:
    return range(n0, n0 + grid.n_extra + 1)


def _descending(values, r):
    for combo in itertools.combinations_with_replacement(sorted(values, reverse=True), r):
        yield tuple(combo)


# -- Stirling estimates -----------------------------------------------------


def check_log_concavity(grid: Grid) -> Iterator[Verdict]:
    # (k-1) S(n,k)^2 >= k S(n,k+1) S(n,k-1), cleared of the fraction k/(k-1)
    for n in range(2, 26):
        for k in range(2, n + 1):
            lhs = (k - 1) * stirling(n, k) ** 2
            rhs = k * stirling(n, k + 1) * stirling(n, k - 1)
            yield _exact("log-concavity", {"n": n, "k": k}, lhs, rhs, ">=")


def check_spn_lower_bounds(grid: Grid) -> Iterator[Verdict]:
    # Both sides are nonnegative, so x >= 2^((m-1)/(r-1)) y  iff  x^(r-1) >= 2^(m-1) y^(r-1).
    for r in range(2, grid.k_max + 1):
        for m in range(r, 31):
            a = stirling(m - 1, r - 1)
            lhs = (r * stirling(m - 1, r) + 2 * a) ** (r - 1)
            rhs = (1 << (m - 1)) * a ** (r - 1)
            yield _exact("spn-lower-bounds", {"part": "i", "m": m, "r": r}, lhs, rhs, ">=")
            lhs = (stirling(m, r) + a) ** (r - 1)
            yield _exact("spn-lower-bounds", {"part": "ii", "m": m, "r": r}, lhs, rhs, ">=")


def _spn_gap(grid: Grid, part: str) -> Iterator[Verdict]:
    lemma = f"spn-gap-{part}"
    for t in grid.ts():
        for j in range(t + 2, grid.k_max + 1):
            a = L_base(j, t)
            if part == "i":
                # n >= L(j,t) - 1  iff  2^(n-t) >= a^(j-t+1)
                n0 = min_n_for_L(j, t) - 1
                holds = lambda n: threshold_L_holds(n + 1, j, t)
                coef = a
            else:
                # n >= 2L(j,t) - t - 2  iff  2^(n-t) >= a^(2(j-t+1))
                n0 = min_n_for_2L(j, t) - t - 2
                holds = lambda n: threshold_2L_holds(n + t + 2, j, t)
                coef = a * a
            assert holds(n0) and not holds(n0 - 1)
            for k in range(t + 2, j + 1):
                for s in range(0, k - t - 1):
                    for n in _n_range(n0, grid):
                        lhs = stirling(n - t - s, k - t - s)
                        rhs = coef * stirling(n - t - s - 1, k - t - s - 1)
                        yield _exact(lemma, {"t": t, "j": j, "k": k, "s": s, "n": n}, lhs, rhs, ">")


def check_spn_gap_i(grid):
    return _spn_gap(grid, "i")


def check_spn_gap_ii(grid):
    return _spn_gap(grid, "ii")


def check_growth_eq4(grid: Grid) -> Iterator[Verdict]:
    for n in range(2, 31):
        for k in range(2, n + 1):
            yield _exact("growth-eq4", {"n": n, "k": k}, stirling(n, k), k * stirling(n - 1, k), ">")


def check_r_lower_bound(grid: Grid) -> Iterator[Verdict]:
    # Multiply by D = 2(t+1)^2: the two coefficients become (l-t)D - 1 and (t+1)D - (t+1).
    for t in grid.ts():
        D = 2 * (t + 1) ** 2
        for k in range(t + 2, grid.k_max + 1):
            for l in range(t + 2, grid.k_max + 1):
                c = max((l - t) * D - 1, (t + 1) * D - (t + 1))
                for n in _n_range(min_n_for_2L(max(k, l), t), grid):
                    lhs = D * size_r(n, k, l, t)
                    rhs = c * stirling(n - t - 1, k - t - 1) * stirling(n - t, l - t)
                    yield _exact("r-lower-bound", {"t": t, "k": k, "l": l, "n": n}, lhs, rhs, ">")


def _least_int_at_least(expr: Callable) -> int:
    """Least integer m with m >= expr(ctx), for an irrational enclosure."""
    prec = 64
    while True:
        x = expr(certified.context(prec))
        lo, hi = math.ceil(float(x.a)), math.ceil(float(x.b))
        if lo == hi:
            cx = certified.context(prec)
            if (cx.mpf(lo) >= expr(cx)) is True and (cx.mpf(lo - 1) >= expr(cx)) is False:
                return lo
        prec *= 2
        if prec > certified.MAX_PREC:
            raise ArithmeticError("could not separate the hypothesis threshold from an integer")


def check_stirling_estimate(grid: Grid) -> Iterator[Verdict]:
    lemma = "stirling-estimate"
    for r in range(2, grid.k_max + 1):
        for c in (1, 2, 3):
            hyp = lambda ctx, r=r, c=c: c * r * (1 + ctx.log(r))
            m0 = _least_int_at_least(hyp)
            for m in range(m0, m0 + grid.n_extra + 1):
                p = {"r": r, "c": c, "m": m}
                rf = math.factorial(r)
                S = stirling(m, r)

                def lower(ctx, r=r, c=c, m=m, S=S, rf=rf):
                    lhs = (1 - r * (ctx.e * r) ** (-c)) * ctx.mpf(r) ** m
                    return lhs < rf * S, certified.fmt(lhs)

                yield _interval(lemma, {**p, "part": "lower"}, certified.decide(lower), f"r!S={rf * S}")
                yield _exact(lemma, {**p, "part": "upper"}, rf * S, r**m, "<")
                yield _exact(lemma, {**p, "part": "quarter"}, 4 * S, r ** (m - r + 2), ">")


# -- Q(s, t) --------------------------------------------------------------


def _Q_exact(s: int, t: int) -> Fraction | None:
    """Q(s,t) as an exact rational when s or (t+1)(s+1) is a power of two."""
    a = (t + 1) * (s + 1)
    if s & (s - 1) == 0:
        p = s.bit_length() - 1
        core = Fraction(a ** (p * (s + 1)))
    elif a & (a - 1) == 0:
        q = a.bit_length() - 1
        core = Fraction(s ** ((s + 1) * q))
    else:
        return None
    return core * Fraction(1, s ** (2 * s - 2)) / binom(s + t, t)


def _lnQ(ctx, s: int, t: int):
    # ln Q = (2 - 2s) ln s + (s+1) log2((t+1)(s+1)) ln s - ln C(s+t, t)
    ln_s = ctx.log(s)
    a = (t + 1) * (s + 1)
    return (2 - 2 * s) * ln_s + (s + 1) * ctx.log(a) / ctx.log(2) * ln_s - ctx.log(binom(s + t, t))


def _lnQ_or_exact(ctx, s, t):
    q = _Q_exact(s, t)
    if q is not None:
        return ctx.log(ctx.mpf(q.numerator) / q.denominator)
    return _lnQ(ctx, s, t)


def check_Q_monotone(grid: Grid) -> Iterator[Verdict]:
    lemma = "Q-monotone"
    for t in range(1, 7):
        for s in range(2, 13):
            p = {"t": t, "s": s, "part": "floor"}
            q = _Q_exact(s, t)
            if q is not None:
                yield _exact(lemma, p, q, 18, ">=", "exact")
            else:
                dec = certified.decide(lambda ctx: (_lnQ(ctx, s, t) >= ctx.log(18), certified.fmt(_lnQ(ctx, s, t))))
                yield _interval(lemma, p, dec, "ln Q vs ln 18")
        for s in range(2, 12):
            p = {"t": t, "s": s, "part": "increasing"}
            q0, q1 = _Q_exact(s, t), _Q_exact(s + 1, t)
            if q0 is not None and q1 is not None:
                yield _exact(lemma, p, q1, q0, ">", "exact")
            else:
                dec = certified.decide(lambda ctx: _lnQ_or_exact(ctx, s + 1, t) > _lnQ_or_exact(ctx, s, t))
                yield _interval(lemma, p, dec, "ln Q(s+1) vs ln Q(s)")


def check_ublkt(grid: Grid) -> Iterator[Verdict]:
    # 5 - k + 2k log2 k > L(k,t)  iff  32 k^(2k) > 2^(k+t+1) a^(k-t+1), a = (t+1)(k-t+1)
    for t in grid.ts():
        for k in range(t + 2, grid.k_max + 1):
            lhs = 32 * k ** (2 * k)
            rhs = (1 << (k + t + 1)) * L_base(k, t) ** (k - t + 1)
            yield _exact("ublkt", {"t": t, "k": k}, lhs, rhs, ">")


# -- monotonicity lemmas -------------------------------------------------


def _L_grid(grid: Grid, l_min_offset: int = 0):
    """(t, k, l, n) with k >= t+2, l >= t + offset, n from the exact L threshold."""
    for t in grid.ts():
        for k in range(t + 2, grid.k_max + 1):
            for l in range(t + l_min_offset, grid.k_max + 1):
                for n in _n_range(min_n_for_L(max(k, l), t), grid):
                    yield t, k, l, n


def check_mono_doubleprime(grid: Grid) -> Iterator[Verdict]:
    for t, k, l, n in _L_grid(grid):
        for u in range(t, k - 1):
            lhs = binom(u, t) * stirling(n - u, k - u)
            rhs = binom(k, t) * (l - t + 1) ** (k - u) * (k - u)
            yield _exact("mono-doubleprime", {"t": t, "k": k, "l": l, "n": n, "u": u}, lhs, rhs, ">")


def check_mono_i(grid: Grid) -> Iterator[Verdict]:
    for t, k, l, n in _L_grid(grid):
        for m in range(t, k - 1):
            p = {"t": t, "k": k, "l": l, "n": n, "m": m}
            a = (l - t + 1) ** (m - t) * stirling(n - m, k - m)
            b = (l - t + 1) ** (m + 1 - t) * stirling(n - m - 1, k - m - 1)
            yield _exact("mono-i", {**p, "fn": "power"}, a, b, ">")
            yield _exact("mono-i", {**p, "fn": "f"}, bound_f(m, k, l, t, n), bound_f(m + 1, k, l, t, n), ">")


def check_mono_ii(grid: Grid) -> Iterator[Verdict]:
    for t, k, l, n in _L_grid(grid):
        for u in range(t, k - 1):
            fu = bound_f(u, k, l, t, n)
            for m in range(u, k + 1):
                op = "<=" if m == u else "<"
                p = {"t": t, "k": k, "l": l, "n": n, "u": u, "m": m}
                yield _exact("mono-ii", p, bound_g(m, k, l, t, n), fu, op)


def check_mono_iii(grid: Grid) -> Iterator[Verdict]:
    for t, k, l, n in _L_grid(grid):
        top = stirling(n - t, k - t)
        for m in range(t, k + 1):
            op = "<=" if m == t else "<"
            p = {"t": t, "k": k, "l": l, "n": n, "m": m}
            yield _exact("mono-iii", p, bound_g(m, k, l, t, n), top, op)


def check_mono_prime(grid: Grid) -> Iterator[Verdict]:
    for t, k, l, n in _L_grid(grid, l_min_offset=1):
        for u in range(0, t):
            for i in (0, 1):
                p = {"t": t, "k": k, "l": l, "n": n, "u": u, "i": i}
                if l - i - u < t - u:
                    yield Verdict("mono-prime", p, SKIPPED, note="degenerate binomial")
                    continue
                lhs = binom(l - i - u, t - u) * stirling(n - t - i - (t - u), k - t - (t - u))
                rhs = (l - i - t + 1) * stirling(n - t - i - 1, k - t - 1)
                yield _exact("mono-prime", p, lhs, rhs, "<=")


# -- W(G) -------------------------------------------------------------------


def _c_coeffs(t: int, top: int) -> list[int]:
    # [|X| >= t] = sum over V subset of X of c(|V|)
    return [sum((-1) ** (v - j) * binom(v, j) for j in range(t, v + 1)) for v in range(top + 1)]


def count_W(sizes, k: int, t: int, n: int) -> int:
    """|{F in S([n], k) : |F cap G| >= t}| for G with the given block sizes."""
    sizes = list(sizes)
    c = _c_coeffs(t, len(sizes))
    total = 0
    for v in range(t, min(len(sizes), k) + 1):
        if not c[v]:
            continue
        for V in itertools.combinations(sizes, v):
            total += c[v] * stirling(n - sum(V), k - v)
    return total


def _shapes(n: int, s: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n into exactly s parts, non-increasing."""
    if max_part is None:
        max_part = n
    if s == 0:
        if n == 0:
            yield ()
        return
    for first in range(min(max_part, n - (s - 1)), 0, -1):
        if first * s < n:
            break
        for rest in _shapes(n - first, s - 1, first):
            yield (first,) + rest


def max_W(n: int, k: int, t: int, s: int, max_singletons: int | None = None) -> tuple[int, tuple]:
    """Largest |W(G)| over s-partitions G of [n] (optionally few singletons).

    Uses subset-count tables N[v, sigma] built incrementally along the
    shape recursion, so each shape costs one table update plus a dot
    product with c(v) S(n - sigma, k - v).
    """
    c = _c_coeffs(t, s)
    vmax = min(s, k)
    weights = {}
    for v in range(t, vmax + 1):
        if c[v]:
            for sig in range(v, n + 1):
                w = c[v] * stirling(n - sig, k - v)
                if w:
                    weights[(v, sig)] = w
    keys = sorted(weights)
    kv = np.array([key[0] for key in keys], dtype=np.int64)
    ks = np.array([key[1] for key in keys], dtype=np.int64)
    wlist = [weights[key] for key in keys]
    best = (-1, ())

    def rec(rem, parts, max_part, N, shape, singles):
        nonlocal best
        if parts == 0:
            if rem:
                return
            counts = N[kv, ks].tolist()
            val = sum(cnt * w for cnt, w in zip(counts, wlist) if cnt)
            if val > best[0]:
                best = (val, tuple(shape))
            return
        for b in range(min(max_part, rem - (parts - 1)), 0, -1):
            if b * parts < rem:
                break
            sg = singles + (b == 1)
            if max_singletons is not None and sg > max_singletons:
                continue
            N2 = N.copy()
            N2[1:, b:] += N[:-1, : N.shape[1] - b]
            shape.append(b)
            rec(rem - b, parts - 1, b, N2, shape, sg)
            shape.pop()

    N0 = np.zeros((s + 1, n + 1), dtype=np.int64)
    N0[0, 0] = 1
    rec(n, s, n, N0, [], 0)
    return best


def check_W_bound_i(grid: Grid) -> Iterator[Verdict]:
    for t in grid.ts():
        for k in range(t + 2, grid.k_max + 1):
            for n in _n_range(min_n_for_L(k, t), grid):
                p = {"t": t, "k": k, "n": n, "s": t + 2}
                w, shape = max_W(n, k, t, t + 2)
                yield _exact("W-bound-i", {**p, "part": "h"}, w, size_h(t + 1, k, t, n), "<=", f"max at {shape}")
                # |W| < (t + 0.6) S(n-t, k-t), times 5
                w, shape = max_W(n, k, t, t + 2, max_singletons=t)
                yield _exact(
                    "W-bound-i", {**p, "part": "0.6"}, 5 * w, (5 * t + 3) * stirling(n - t, k - t), "<",
                    f"max at {shape}",
                )


def check_W_bound_ii(grid: Grid) -> Iterator[Verdict]:
    for t in grid.ts():
        for k in range(t + 2, grid.k_max + 1):
            for n in _n_range(min_n_for_L(k, t), grid):
                for s in range(t + 2, k + 1):
                    w, shape = max_W(n, k, t, s)
                    p = {"t": t, "k": k, "n": n, "s": s}
                    yield _exact("W-bound-ii", p, w, 6 * size_h(s, k, t, n), "<=", f"max at {shape}")


# -- regime comparisons ------------------------------------------------------


def check_r2_swap(grid: Grid) -> Iterator[Verdict]:
    for t in grid.ts():
        for l in range(t + 2, grid.k_max):
            for k in range(l + 1, grid.k_max + 1):
                for n in _n_range(k + 1, grid):
                    p = {"t": t, "k": k, "l": l, "n": n}
                    yield _exact("r2-swap", p, size_r2(n, k, l, t), size_r2(n, l, k, t), ">")


def _r1_vs_r2(grid: Grid, part: str) -> Iterator[Verdict]:
    lemma = f"r1-vs-r2-{part}"
    for t in grid.ts():
        for l in range(t + 2, grid.k_max + 1):
            if (part == "i") != (l >= 2 * t + 2):
                continue
            for k in range(l, grid.k_max + 1):
                excluded = part == "ii" and (k, l) in ((2 * t + 1, 2 * t + 1), (4, 3))
                for n in _n_range(min_n_for_2L(k, t), grid):
                    p = {"t": t, "k": k, "l": l, "n": n}
                    if excluded:
                        yield Verdict(lemma, p, SKIPPED, note="excluded (k,l) pair")
                        continue
                    r1, r2 = size_r1(n, k, l, t), size_r2(n, k, l, t)
                    yield _exact(lemma, p, r1, r2, ">" if part == "i" else "<")


def check_r1_vs_r2_i(grid):
    return _r1_vs_r2(grid, "i")


def check_r1_vs_r2_ii(grid):
    return _r1_vs_r2(grid, "ii")


def check_r1_swap(grid: Grid) -> Iterator[Verdict]:
    for t in grid.ts():
        for l in range(t + 2, grid.k_max):
            for k in range(l + 1, grid.k_max + 1):
                n0 = max(min_n_for_2L(k, t), t + 1 + (k - t) * (l - t))
                for n in _n_range(n0, grid):
                    p = {"t": t, "k": k, "l": l, "n": n}
                    yield _exact("r1-swap", p, size_r1(n, k, l, t), size_r1(n, l, k, t), ">")


# -- r >= 3 ---------------------------------------------------------------------


@lru_cache(maxsize=None)
def _h(m, k, t, n):
    return size_h(m, k, t, n)


def _phi(m, a, ks, t, n):
    v = _h(m, ks[a - 1], t, n)
    for i, ki in enumerate(ks, start=1):
        if i != a:
            v *= stirling(n - m, ki - m)
    return v


def check_phi_mono(grid: Grid) -> Iterator[Verdict]:
    for t in grid.ts():
        for r in (3, 4):
            for ks in _descending(range(t + 2, grid.k_max + 1), r):
                for n in _n_range(min_n_for_L(ks[0], t), grid):
                    top = _phi(t + 1, r, ks, t, n)
                    for m in range(t + 1, ks[0] + 1):
                        for a in range(1, r + 1):
                            p = {"t": t, "ks": list(ks), "n": n, "m": m, "a": a}
                            v = _phi(m, a, ks, t, n)
                            if m == t + 1 and ks[a - 1] == ks[-1]:
                                yield _exact("phi-mono", p, v, top, "==", "equality case")
                            else:
                                yield _exact("phi-mono", p, v, top, "<")


def check_case21(grid: Grid) -> Iterator[Verdict]:
    # h > (m-t)(m-t+1) g / C(m,t), times C(m,t)
    for t, k, l, n in _L_grid(grid):
        h = _h(t + 1, k, t, n)
        for m in range(t + 2, k + 1):
            p = {"t": t, "k": k, "l": l, "n": n, "m": m}
            lhs = binom(m, t) * h
            rhs = (m - t) * (m - t + 1) * bound_g(m, k, l, t, n)
            yield _exact("case21", p, lhs, rhs, ">")


def check_case22(grid: Grid) -> Iterator[Verdict]:
    for t in grid.ts():
        for r in (4, 5):
            for ks in _descending(range(t + 2, grid.k_max + 1), r):
                for n in _n_range(min_n_for_L(ks[0], t), grid):
                    # each factor g/C(m,t) maximized over its own m and l
                    best = [
                        max(
                            Fraction(bound_g(m, kj, l, t, n), binom(m, t))
                            for m in range(t + 2, kj + 1)
                            for l in range(t, ks[0] + 1)
                        )
                        for kj in ks
                    ]
                    top = size_phi(t + 1, r, ks, t, n)
                    for a, b in itertools.combinations(range(r), 2):
                        lhs = best[a] * best[b]
                        for i in range(r):
                            if i not in (a, b):
                                lhs *= stirling(n - t - 2, ks[i] - t - 2)
                        p = {"t": t, "ks": list(ks), "n": n, "a": a + 1, "b": b + 1}
                        yield _exact("case22", p, lhs, top, "<", "lhs maximized over m_j, l_j")


# -- catalog ---------------------------------------------------------------------

CATALOG: dict[str, tuple[Callable[[Grid], Iterator[Verdict]], str]] = {
    "log-concavity": (check_log_concavity, "exact"),
    "spn-lower-bounds": (check_spn_lower_bounds, "exact"),
    "spn-gap-i": (check_spn_gap_i, "exact"),
    "spn-gap-ii": (check_spn_gap_ii, "exact"),
    "growth-eq4": (check_growth_eq4, "exact"),
    "r-lower-bound": (check_r_lower_bound, "exact"),
    "stirling-estimate": (check_stirling_estimate, "interval"),
    "Q-monotone": (check_Q_monotone, "interval"),
    "mono-doubleprime": (check_mono_doubleprime, "exact"),
    "mono-i": (check_mono_i, "exact"),
    "mono-ii": (check_mono_ii, "exact"),
    "mono-iii": (check_mono_iii, "exact"),
    "mono-prime": (check_mono_prime, "exact"),
    "W-bound-i": (check_W_bound_i, "exact"),
    "W-bound-ii": (check_W_bound_ii, "exact"),
    "r2-swap": (check_r2_swap, "exact"),
    "r1-vs-r2-i": (check_r1_vs_r2_i, "exact"),
    "r1-vs-r2-ii": (check_r1_vs_r2_ii, "exact"),
    "r1-swap": (check_r1_swap, "exact"),
    "phi-mono": (check_phi_mono, "exact"),
    "case21": (check_case21, "exact"),
    "case22": (check_case22, "exact"),
    "ublkt": (check_ublkt, "exact"),
}

LEMMA_IDS = tuple(CATALOG)


def audit(lemma: str, grid: Grid | None = None) -> AuditReport:
    if lemma not in CATALOG:
        raise KeyError(f"unknown lemma id {lemma!r}; choose from {', '.join(LEMMA_IDS)}")
    grid = grid or Grid()
    checker, _ = CATALOG[lemma]
    return AuditReport(lemma, grid.to_dict(), list(checker(grid)))


def _audit_task(args):
    return audit(*args)


def audit_all(grid: Grid | None = None, workers: int | None = None, lemmas=None) -> list[AuditReport]:
    grid = grid or Grid()
    ids = list(lemmas or LEMMA_IDS)
    return pmap(_audit_task, [(lem, grid) for lem in ids], workers)


# -- regime comparison ----------------------------------------------------


def compare_regimes(n: int, t: int, k: int | None = None) -> dict:
    """Sign of r1 - r2 at k = l = 2t+1 against the two sufficient conditions.

    ``former``: n - t - 1 > 2 t^2 ln t predicts r1 > r2.
    ``latter``: 2L(2t+1, t) <= n < t + 1 + t^2 ln t / 2 predicts r1 < r2.
    """
    k = 2 * t + 1 if k is None else k
    report = {"n": n, "t": t, "k": k, "l": k}
    if t < 2 or k != 2 * t + 1:
        report["status"] = SKIPPED
        report["note"] = "needs t >= 2 and k = l = 2t+1"
        return report
    r1, r2 = size_r1(n, k, k, t), size_r2(n, k, k, t)
    report["r1"], report["r2"] = r1, r2
    report["sign"] = (r1 > r2) - (r1 < r2)
    former = certified.decide(lambda c: c.mpf(n - t - 1) > 2 * t * t * c.log(t))
    upper = certified.decide(lambda c: c.mpf(n) < t + 1 + c.mpf(t * t) * c.log(t) / 2)
    in_2L = threshold_2L_holds(n, k, t)
    latter = None if upper.value is None else (in_2L and upper.value)
    report["regime_2L"] = in_2L
    report["former_condition"] = former.value
    report["latter_condition"] = latter
    if former.value is None or latter is None:
        report["status"] = INCONCLUSIVE
    elif former.value:
        report["status"] = PASS if r1 > r2 else FAIL
        report["predicted"] = "r1 > r2"
    elif latter:
        report["status"] = PASS if r1 < r2 else FAIL
        report["predicted"] = "r1 < r2"
    else:
        report["status"] = "neutral"
    return report
