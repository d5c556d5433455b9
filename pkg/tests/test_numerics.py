import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from freud_sobolev.errors import IterationError, ParameterError
from freud_sobolev.numerics import (EVEN, NONE, ODD, Poly, context, decimal_digits, gamma_quarter,
                                    poly_eval, symtridiag_eigen, to_decimal)

P = 256
ctx = context(P)


def test_context_is_isolated():
    a, b = context(128), context(512)
    assert a.prec == 128 and b.prec == 512
    assert mpmath.mp.prec == 53


def test_context_rejects_low_precision():
    with pytest.raises(ParameterError):
        context(32)


def test_gamma_quarter_matches_mpmath():
    ref = context(P + 64)
    for j in (1, 3, 5, 7, 9, 11, 21):
        g = gamma_quarter(j, P)
        assert abs(g - ref.gamma(ref.mpf(j) / 4)) <= ctx.ldexp(abs(g), 4 - P)


def test_gamma_quarter_spec_values():
    assert abs(gamma_quarter(1, P) - ctx.mpf("3.6256099082")) < 1e-10
    assert gamma_quarter(5, P) == gamma_quarter(1, P) / 4
    assert abs(gamma_quarter(1, P) * gamma_quarter(3, P) - ctx.pi * ctx.sqrt(2)) <= ctx.ldexp(1, 4 - P) * 5


@pytest.mark.parametrize("j", [0, 2, -1, 4])
def test_gamma_quarter_rejects(j):
    with pytest.raises(ParameterError):
        gamma_quarter(j, P)


@pytest.mark.parametrize("j", [1, 3, 5, 7, 9])
def test_gamma_functional_equation(j):
    lhs = gamma_quarter(j + 4, P)
    rhs = ctx.mpf(j) / 4 * gamma_quarter(j, P)
    assert abs(lhs - rhs) <= 4 * ctx.ldexp(abs(lhs), -P + 1)


def test_poly_eval_examples():
    assert poly_eval(Poly.from_coeffs([-1, 0, 1]), 1) == 0
    assert poly_eval(Poly.from_coeffs([0, 1]), 1j) == ctx.mpc(0, 1)
    p3 = Poly.from_coeffs([0, "-0.7396687", 0, 1])
    assert abs(poly_eval(p3, "0.8600400")) < 1e-6


def test_poly_parity_tags():
    assert Poly.from_coeffs([1, 0, 2]).parity == EVEN
    assert Poly.from_coeffs([0, 1, 0, 3]).parity == ODD
    assert Poly.from_coeffs([1, 1]).parity == NONE
    with pytest.raises(ParameterError):
        Poly((1, 1), P, EVEN)
    m = Poly.monomial(5)
    assert m.is_monic and m.degree == 5 and m.parity == ODD


def test_poly_ops():
    p = Poly.from_coeffs([1, 0, 1])
    assert (p.mul_x2() - Poly.from_coeffs([0, 0, 1, 0, 1])).degree == -1
    assert p.derivative().coeffs == (0, 2)
    assert (p + p).coeffs == p.scale(2).coeffs


coeff = st.integers(-50, 50).map(lambda k: ctx.mpf(k) / 7)


@given(st.integers(0, 8), st.lists(coeff, min_size=9, max_size=9), st.integers(-20, 20))
def test_parity_symmetry(deg, cs, xi):
    full = [c if i % 2 == deg % 2 else ctx.zero for i, c in enumerate(cs[:deg])] + [ctx.one]
    p = Poly.from_coeffs(full)
    x = ctx.mpf(xi) / 3
    assert poly_eval(p, -x) == (-1) ** deg * poly_eval(p, x)


def test_eigen_examples():
    ev = symtridiag_eigen([0, 0], [1])
    assert abs(ev[0] + 1) < 1e-70 and abs(ev[1] - 1) < 1e-70
    assert symtridiag_eigen([0], []) == [0]
    c1 = ctx.mpf("0.3379891200336423644977238")
    c2 = ctx.mpf("0.4016796597635173585799815")
    ev = symtridiag_eigen([0, 0, 0], [ctx.sqrt(c1), ctx.sqrt(c2)])
    assert abs(ev[1]) < 1e-60 and abs(ev[2] - ctx.mpf("0.8600400")) < 1e-6


def test_eigen_shape_error():
    with pytest.raises(ParameterError):
        symtridiag_eigen([0, 0], [])


def test_eigen_iteration_budget():
    with pytest.raises(IterationError) as info:
        symtridiag_eigen([1, 2, 3, 4], [1, 1, 1], max_iter=0)
    assert info.value.index == 0


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=2, max_size=9), st.data())
def test_eigen_vs_mpmath(diag, data):
    n = len(diag)
    off = data.draw(st.lists(st.integers(1, 9), min_size=n - 1, max_size=n - 1))
    ours = symtridiag_eigen([ctx.mpf(d) for d in diag], [ctx.mpf(o) / 3 for o in off], prec=128)
    ref = context(192)
    A = ref.zeros(n, n)
    for i, d in enumerate(diag):
        A[i, i] = d
    for i, o in enumerate(off):
        A[i, i + 1] = A[i + 1, i] = ref.mpf(o) / 3
    ev = sorted(ref.eigsy(A, eigvals_only=True))
    for a, b in zip(ours, ev):
        assert abs(a - b) < 1e-30


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(1, 20), min_size=1, max_size=10))
def test_zero_diagonal_spectrum_symmetric(off):
    ev = symtridiag_eigen([0] * (len(off) + 1), [ctx.mpf(o) / 5 for o in off])
    for e in ev:
        assert min(abs(e + f) for f in ev) < 1e-60


def test_to_decimal_digits():
    s = to_decimal(ctx.pi, P)
    assert len(s.replace(".", "").lstrip("0")) >= decimal_digits(P) >= 0.3 * P
