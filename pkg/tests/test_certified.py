import mpmath
import pytest

from crossint.certified import L_interval, START_PREC, context, decide, fmt, interval_L_holds
from crossint.stirling import min_n_for_L, threshold_L_holds


def test_comparisons_are_three_valued():
    ctx = context(64)
    x = ctx.pi
    assert (x > 3) is True
    assert (x < 3) is False
    assert (x >= ctx.pi) is None


def test_decide_doubles_until_conclusive():
    def close_call(ctx):
        gap = ctx.mpf(2) ** -200
        return ctx.pi + gap > ctx.pi

    d = decide(close_call)
    assert d.value is True
    assert START_PREC < d.prec <= 512


def test_decide_reports_inconclusive_at_cap():
    d = decide(lambda ctx: ctx.pi >= ctx.pi, cap=256)
    assert d.value is None and not d.conclusive and d.prec == 256


@pytest.mark.parametrize("prec", [64, 128, 1024])
def test_widening_never_flips_a_verdict(prec):
    for k, t in [(3, 1), (5, 2), (8, 3)]:
        for n in range(5, 60):
            v = interval_L_holds(n, k, t, prec=prec)
            assert v is None or v == threshold_L_holds(n, k, t)


def test_interval_L_encloses_value():
    ctx = context(128)
    enc = L_interval(ctx, 3, 1)
    with mpmath.workdps(80):
        exact = 2 + 3 * mpmath.log(6, 2)
        assert enc.a <= exact <= enc.b
    assert fmt(enc).startswith("[9.7548875021634")


def test_integer_L_is_decided_exactly_at_its_boundary():
    # (t+1)(k-t+1) a power of two makes L(k, t) an integer
    for k, t, boundary in [(4, 1, 14), (8, 1, 34), (6, 3, 20), (10, 3, 44)]:
        assert min_n_for_L(k, t) == boundary
        assert interval_L_holds(boundary, k, t, prec=64) is True
        assert interval_L_holds(boundary - 1, k, t, prec=64) is False
