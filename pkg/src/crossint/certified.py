"""Certified comparisons with outward-rounded interval arithmetic.

Built on mpmath's interval context.  A comparison between intervals is
``True`` or ``False`` only when it holds for every point of both
intervals; overlapping intervals give ``None``.  :func:`decide` re-runs a
check at doubled precision until it becomes conclusive or hits the cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from mpmath.ctx_iv import MPIntervalContext

START_PREC = 64
MAX_PREC = 4096


@dataclass(frozen=True)
class Decision:
    value: bool | None  # None means inconclusive at the cap
    prec: int
    detail: str = ""

    @property
    def conclusive(self) -> bool:
        return self.value is not None


def context(prec: int) -> MPIntervalContext:
    ctx = MPIntervalContext()
    ctx.prec = prec
    return ctx


def decide(check: Callable[[MPIntervalContext], object], start: int = START_PREC, cap: int = MAX_PREC) -> Decision:
    """Evaluate ``check(ctx)`` with growing precision.

    ``check`` returns ``True``/``False``/``None``, or a tuple whose first
    item is that value and second item a printable detail (e.g. the
    enclosing intervals).
    """
    prec = start
    while True:
        out = check(context(prec))
        value, detail = (out if isinstance(out, tuple) else (out, ""))
        if value is not None or prec >= cap:
            return Decision(value, prec, str(detail))
        prec *= 2


def fmt(x) -> str:
    """Compact enclosure ``[a, b]`` of an interval, 20 significant digits."""
    from mpmath import mpf, nstr, workprec

    lo, hi = x._mpi_
    with workprec(MAX_PREC):
        return f"[{nstr(mpf(lo), 20)}, {nstr(mpf(hi), 20)}]"


def L_interval(ctx: MPIntervalContext, k: int, t: int):
    """Enclosure of L(k, t) = (t+1) + (k-t+1) log2((t+1)(k-t+1))."""
    return (t + 1) + (k - t + 1) * log2_interval(ctx, (t + 1) * (k - t + 1))


def log2_interval(ctx: MPIntervalContext, a: int):
    """Enclosure of log2(a) for a positive integer; exact when a is a power of two."""
    v = (a & -a).bit_length() - 1
    odd = a >> v
    if odd == 1:
        return ctx.mpf(v)
    return v + ctx.log(odd) / ctx.log(2)


def interval_L_holds(n: int, k: int, t: int, prec: int = 200) -> bool | None:
    """``n >= L(k, t)`` by interval evaluation at fixed precision."""
    ctx = context(prec)
    return ctx.mpf(n) >= L_interval(ctx, k, t)
