import pytest
from hypothesis import given, settings, strategies as st

from conftest import freud, gs
from freud_sobolev.errors import ParameterError
from freud_sobolev.freud import eval_P
from freud_sobolev.numerics import context, poly_eval, sign
from freud_sobolev.zeros import (DEGENERATE, FAIL, PASS, compare_positive, interlacing_report,
                                 normalized_x2_recurrence_check, refine_root, strictly_alternate, zeros_P,
                                 zeros_Q)

P = 256
ctx = context(P)
TOL = ctx.mpf("1e-40")


def close(a, b, tol=1e-6):
    return abs(a - ctx.mpf(b)) <= tol


def test_refine_root_certifies():
    f = lambda x: x * x - 2
    z, r = refine_root(f, ctx.mpf(1), ctx.mpf(2), TOL)
    assert r <= TOL and sign(f(z - r)) != sign(f(z + r))
    assert abs(z - ctx.sqrt(2)) <= r
    with pytest.raises(ParameterError):
        refine_root(f, ctx.mpf(2), ctx.mpf(3), TOL)


def test_zeros_P_examples(F):
    z = zeros_P(F, 2, TOL).zeros
    assert close(z[1], "0.5813683") and abs(z[0] + z[1]) < 1e-39
    assert abs(z[1] - ctx.sqrt(F.c[1])) <= 1e-39
    z3 = zeros_P(F, 3, TOL).zeros
    assert z3[1] == 0 and abs(z3[2] - ctx.sqrt(F.c[1] + F.c[2])) <= 1e-39
    assert close(z3[2], "0.8600400")
    assert zeros_P(F, 1, TOL).zeros == (0,)


def test_zeros_Q_examples():
    z = zeros_Q(gs(("1",), 4), 2, TOL).zeros
    assert close(z[1], "0.4667207") and abs(z[0] + z[1]) < 1e-39
    F = freud()
    zq = zeros_Q(gs(("1", "0"), 4), 3, TOL, F).zeros
    zp = zeros_P(F, 3, TOL).zeros
    assert all(abs(a - b) <= 1e-38 for a, b in zip(zq, zp))
    z = zeros_Q(gs(("0", "1"), 4), 3, TOL).zeros
    assert z[1] == 0 and close(z[2], "0.5301120") and abs(z[0] + z[2]) < 1e-39


def test_interlacing_examples(F):
    r = interlacing_report(gs(("1",), 8), F, 4, TOL)
    assert r.interlace.strict and r.interlace.verdict == PASS
    r = interlacing_report(gs(("1", "0"), 8), F, 5, TOL)
    assert r.interlace.verdict == DEGENERATE
    r = interlacing_report(gs(("10",), 8), F, 6, TOL)
    assert r.interlace.strict
    with pytest.raises(ParameterError):
        interlacing_report(gs(("1",), 8), F, 2, TOL)


def test_compare_positive_pairs():
    t = ctx.mpf("1e-30")
    v = compare_positive([ctx.mpf(2), ctx.mpf(4)], [ctx.mpf(1), ctx.mpf(3)], t)
    assert v.order == "P-first" and v.outer_beyond and v.pairs == (PASS, PASS)
    v = compare_positive([ctx.mpf(1), ctx.mpf(3)], [ctx.mpf(2), ctx.mpf(4)], t)
    assert v.strict and v.order == "Q-first" and not v.outer_beyond and v.pairs == (FAIL, FAIL)
    assert not strictly_alternate([1, 2], [3, 4])


def test_x2_recurrence_examples():
    rep = normalized_x2_recurrence_check(gs(("0", "1"), 14), 12, 1e-22)
    assert rep.passed
    assert all(c.passed for c in rep.by_name("x2_recurrence.symmetry"))
    assert any(c.n == 0 for c in rep.by_name("x2_recurrence.residual"))
    inter = rep.by_name("x2_recurrence.zeros_interlace_n_vs_n-2")
    assert inter and all(c.passed for c in inter if c.n <= 10)
    with pytest.raises(ParameterError):
        normalized_x2_recurrence_check(gs(("1", "1", "1"), 6), 4)


def test_nonreal_zeros_reported():
    r = zeros_Q(gs(("1", "1", "1"), 6), 4, TOL)
    assert not r.all_real and r.found < 4


@pytest.mark.parametrize("n", range(1, 61))
def test_P_zeros_interlace_consecutive(F, n):
    a = zeros_P(F, n, TOL).zeros
    b = zeros_P(F, n + 1, TOL).zeros
    assert strictly_alternate(a, b)


def _check_report(rep, f):
    zs, rs = rep.zeros, rep.radii
    if rep.all_real:
        gaps = [b - a for a, b in zip(zs, zs[1:])]
        assert all(g > 2 * max(rs) for g in gaps)
    for z, r in zip(zs, rs):
        if r == 0:
            assert f(z) == 0
        else:
            assert sign(f(z - r)) != sign(f(z + r))
    for z in zs:
        assert min(abs(z + w) for w in zs) <= 2 * TOL


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([("1",), ("0.5",), ("10",), ("0", "1"), ("1", "1"), ("3", "0.25")]), st.integers(2, 16))
def test_zero_report_invariants(lam, n):
    t = gs(lam, 16)
    rep = zeros_Q(t, n, TOL)
    _check_report(rep, lambda x: poly_eval(t.Q[n], x))
    # slope bound: |Q(z)| <= max|Q'| on the enclosure times its radius
    dq = t.Q[n].derivative()
    for z, r in zip(rep.zeros, rep.radii):
        slope = max(abs(poly_eval(dq, z - r)), abs(poly_eval(dq, z + r))) * 2 + 1
        assert abs(poly_eval(t.Q[n], z)) <= slope * r


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 40))
def test_zero_report_invariants_P(n):
    F = freud()
    _check_report(zeros_P(F, n, TOL), lambda x: eval_P(F, n, x))
