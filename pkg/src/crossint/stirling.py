"""Exact Stirling partition numbers and integer-exact threshold tests.

Every threshold of the form ``n >= L(k, t)`` with

    L(k, t) = (t + 1) + (k - t + 1) * log2((t + 1) * (k - t + 1))

is decided by comparing powers of integers, never by evaluating a
logarithm in floating point.  :func:`L_value` exists for display only.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

__all__ = [
    "stirling",
    "stirling_row",
    "stirling_closed_form",
    "binom",
    "L_base",
    "L_value",
    "threshold_L_holds",
    "min_n_for_L",
    "threshold_2L_holds",
    "min_n_for_2L",
    "L0Params",
    "L0_bound_params",
    "L0_holds",
    "thm16_threshold_holds",
    "min_n_for_thm16",
    "ThresholdError",
]


class ThresholdError(ValueError):
    """Raised when threshold parameters violate k >= t + 2, t >= 1."""


# (n, k) -> S(n, k).  Append-only; a racing insert writes the same value.
_memo: dict[tuple[int, int], int] = {(0, 0): 1}
_rows: dict[int, list[int]] = {0: [1]}
_lock = threading.Lock()


def stirling_row(n: int) -> list[int]:
    """Return ``[S(n, 0), ..., S(n, n)]`` for ``n >= 0``."""
    if n < 0:
        raise ValueError("row index must be nonnegative")
    row = _rows.get(n)
    if row is not None:
        return row
    with _lock:
        top = max(m for m in _rows if m <= n)
        prev = _rows[top]
        for m in range(top + 1, n + 1):
            cur = [0] * (m + 1)
            for j in range(1, m + 1):
                below = prev[j] if j < m else 0
                cur[j] = prev[j - 1] + j * below
            _rows[m] = cur
            prev = cur
        return _rows[n]


def stirling(n: int, k: int) -> int:
    """S(n, k), the number of k-partitions of an n-set.

    Total function: zero for ``k <= 0`` (except ``S(0, 0) = 1``), for
    ``k > n`` and for ``n < 0``.
    """
    if n < 0 or k < 0 or k > n:
        return 0
    key = (n, k)
    v = _memo.get(key)
    if v is None:
        v = stirling_row(n)[k]
        _memo[key] = v
    return v


def binom(a: int, b: int) -> int:
    """Binomial coefficient with C(a, b) = 0 outside 0 <= b <= a."""
    if b < 0 or a < 0 or b > a:
        return 0
    return math.comb(a, b)


def stirling_closed_form(n: int, k: int) -> int:
    """S(n, k) via the alternating sum over surjections, exactly."""
    if not (n >= k >= 1):
        raise ValueError(f"closed form needs n >= k >= 1, got n={n}, k={k}")
    total = 0
    for j in range(k + 1):
        term = math.comb(k, j) * (k - j) ** n
        total += -term if j & 1 else term
    q, r = divmod(total, math.factorial(k))
    if r:
        raise ArithmeticError(f"non-exact division in closed form at ({n}, {k})")
    return q


def _check(k: int, t: int) -> None:
    if t < 1 or k < t + 2:
        raise ThresholdError(f"need t >= 1 and k >= t + 2, got k={k}, t={t}")


def L_base(k: int, t: int) -> int:
    """The integer ``(t + 1) * (k - t + 1)`` inside the logarithm."""
    return (t + 1) * (k - t + 1)


def L_value(k: int, t: int) -> float:
    """Floating-point L(k, t).  Display only, never used for decisions."""
    return (t + 1) + (k - t + 1) * math.log2(L_base(k, t))


def _pow2_ge(e: int, rhs: int) -> bool:
    # 2**e >= rhs, with rhs >= 1; negative e gives a value below 1.
    if e < 0:
        return False
    return (1 << e) >= rhs


def _min_e(rhs: int) -> int:
    # least e >= 0 with 2**e >= rhs
    return max(0, (rhs - 1).bit_length())


def threshold_L_holds(n: int, k: int, t: int) -> bool:
    """``n >= L(k, t)``, decided as ``2**(n-t-1) >= a**(k-t+1)``."""
    _check(k, t)
    return _pow2_ge(n - t - 1, L_base(k, t) ** (k - t + 1))


def min_n_for_L(k: int, t: int) -> int:
    """Least integer n with ``n >= L(k, t)``."""
    _check(k, t)
    n = t + 1 + _min_e(L_base(k, t) ** (k - t + 1))
    assert threshold_L_holds(n, k, t) and not threshold_L_holds(n - 1, k, t)
    return n


def threshold_2L_holds(n: int, k: int, t: int) -> bool:
    """``n >= 2 L(k, t)``, decided as ``2**(n-2t-2) >= a**(2(k-t+1))``."""
    _check(k, t)
    return _pow2_ge(n - 2 * t - 2, L_base(k, t) ** (2 * (k - t + 1)))


def min_n_for_2L(k: int, t: int) -> int:
    """Least integer n with ``n >= 2 L(k, t)``."""
    _check(k, t)
    n = 2 * t + 2 + _min_e(L_base(k, t) ** (2 * (k - t + 1)))
    assert threshold_2L_holds(n, k, t) and not threshold_2L_holds(n - 1, k, t)
    return n


def thm16_threshold_holds(n: int, k: int) -> bool:
    """``n >= 5 - k + 2k log2 k``, decided as ``2**(n+k-5) >= k**(2k)``."""
    if k < 2:
        raise ThresholdError("need k >= 2")
    return _pow2_ge(n + k - 5, k ** (2 * k))


def min_n_for_thm16(k: int) -> int:
    if k < 2:
        raise ThresholdError("need k >= 2")
    return 5 - k + _min_e(k ** (2 * k))


def _L_pow2(k: int, s: int) -> int:
    # 2**L(k, s) as an exact integer
    return (1 << (s + 1)) * L_base(k, s) ** (k - s + 1)


@dataclass(frozen=True)
class L0Params:
    """Outcome of :func:`L0_bound_params`.

    ``argmax_s`` maximizes L(k, s) over ``t+1 <= s <= k-2`` (smallest on
    ties); ``min_n_per_s`` maps each s to the least n with n >= L(k, s);
    ``min_n`` is the least n with n >= L0(k, t).
    """

    k: int
    t: int
    argmax_s: int
    min_n_per_s: dict[int, int]
    min_n: int
    thm16_min_n: int

    def holds(self, n: int) -> bool:
        return all(threshold_L_holds(n, self.k, s) for s in self.min_n_per_s)


def L0_bound_params(k: int, t: int) -> L0Params:
    if t < 1 or t + 1 > k - 2:
        raise ThresholdError(f"empty range t+1..k-2 for k={k}, t={t}")
    best = t + 1
    for s in range(t + 2, k - 1):
        if _L_pow2(k, s) > _L_pow2(k, best):
            best = s
    per_s = {s: min_n_for_L(k, s) for s in range(t + 1, k - 1)}
    return L0Params(
        k=k,
        t=t,
        argmax_s=best,
        min_n_per_s=per_s,
        min_n=max(per_s.values()),
        thm16_min_n=min_n_for_thm16(k),
    )


def L0_holds(n: int, k: int, t: int) -> bool:
    return L0_bound_params(k, t).holds(n)
