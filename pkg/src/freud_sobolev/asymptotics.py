"""Conformal map, scaled-ratio targets, limit diagnostics and the r >= 2 experiment."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, ParameterError, PoleError
from .freud import FreudTable, eval_P, freud_table
from .numerics import DEFAULT_PREC, context
from .report import ASSERT, REPORT, VerifyReport
from .sobolev import (LAMBDA2_POS, LAMBDA2_ZERO, ConnectionTable, SobolevParams, SobolevTable,
                      freud_for, gram_schmidt_Q, need_norms)
from .zeros import q_evaluator

GUARD_BITS = 16
DEFAULT_REAL_XS = (1.2, 1.5, 2, 3)
DEFAULT_COMPLEX_XS = (1 + 1j, 2 + 0.5j, 0.5 + 2j)
DEFAULT_NS = (16, 32, 64, 128, 256)
PREDICTION_NS = (16, 32, 64, 100, 128, 200)
CONJECTURE = "conjecture diagnostics: trend only, no proof"


def support_edge(prec: int = DEFAULT_PREC):
    """(4/3)^{1/4}, the right end of the scaled zero interval."""
    ctx = context(prec)
    return ctx.root(ctx.mpf(4) / 3, 4)


def _on_cut(ctx, z, half_width):
    z = ctx.convert(z)
    return ctx.im(z) == 0 and abs(ctx.re(z)) <= half_width


def phi(z, prec: int = DEFAULT_PREC):
    """Exterior branch of ``z + sqrt(z^2 - 1)`` with ``|phi| > 1`` off ``[-1, 1]``.

    ``sqrt(z - 1) * sqrt(z + 1)`` (principal roots) has its cut exactly on
    ``[-1, 1]`` and grows like ``z``, which selects the right branch without
    case analysis.
    """
    ctx = context(prec)
    z = ctx.convert(z)
    if _on_cut(ctx, z, 1):
        raise DomainError(f"phi is undefined on the cut [-1, 1], got {z}")
    with ctx.extraprec(GUARD_BITS):
        w = z + ctx.sqrt(z - 1) * ctx.sqrt(z + 1)
    return +w


def _scaled_arg(ctx, x):
    x = ctx.convert(x)
    if _on_cut(ctx, x, ctx.root(ctx.mpf(4) / 3, 4)):
        raise DomainError(f"x={x} lies on the scaled cut")
    return x, ctx.root(ctx.mpf(3) / 4, 4) * x


def ratio_target(x, r: int, prec: int = DEFAULT_PREC):
    """``(12^{1/4} x phi(u) / (1 + phi(u)^2))^{r+1}`` with ``u = (3/4)^{1/4} x``.

    Since ``phi + 1/phi = 2u`` this equals 1 wherever it is defined; it is
    still evaluated term by term so the constancy can be tested.
    """
    if r < 0:
        raise ParameterError("r must be nonnegative")
    ctx = context(prec)
    x, u = _scaled_arg(ctx, x)
    f = phi(u, prec)
    return (ctx.root(12, 4) * x * f / (1 + f * f)) ** (r + 1)


def p_ratio_limit_target(x, prec: int = DEFAULT_PREC):
    """``12^{1/4} / phi(u)``: limit of ``n^{1/4} P_{n-1}(n^{1/4}x) / P_n(n^{1/4}x)``."""
    ctx = context(prec)
    _, u = _scaled_arg(ctx, x)
    return ctx.root(12, 4) / phi(u, prec)


@dataclass(frozen=True)
class RatioSample:
    x: object
    n: int
    params: SobolevParams
    empirical: object  # P_n / Q_n at n^{1/4} x
    target: object
    abs_error: object

    @property
    def reciprocal(self):
        return 1 / self.empirical


def _pole_guard(ctx, q, p, point):
    if q == 0 or abs(q) <= ctx.ldexp(abs(p), 8 - ctx.prec):
        raise PoleError(f"Q_n vanishes (to rounding) at {point}", point=point)


def empirical_ratio(n: int, x, st: SobolevTable, freud: FreudTable | None = None) -> RatioSample:
    """``P_n(n^{1/4} x) / Q_n(n^{1/4} x)`` paired with :func:`ratio_target`.

    Q is evaluated by its recurrence where the table has one, else from
    coefficients; with all masses zero Q is P by definition and the same
    evaluation is reused.
    """
    freud = freud_for(st, freud, n)
    prec = max(st.prec, freud.prec)
    ctx = context(prec)
    x, _ = _scaled_arg(ctx, x)
    X = ctx.root(n, 4) * x
    p = ctx.convert(eval_P(freud, n, X))
    if st.params.all_zero:
        q = p
    else:
        q = ctx.convert(q_evaluator(st, n, freud)(X))
    _pole_guard(ctx, q, p, X)
    emp = p / q
    target = ratio_target(x, st.params.r, prec)
    return RatioSample(x=x, n=n, params=st.params, empirical=emp, target=target,
                       abs_error=abs(emp - target))


def p_ratio(n: int, x, freud: FreudTable):
    """``n^{1/4} P_{n-1}(n^{1/4} x) / P_n(n^{1/4} x)``."""
    ctx = context(freud.prec)
    x, _ = _scaled_arg(ctx, x)
    s = ctx.root(n, 4)
    X = s * x
    den = eval_P(freud, n, X)
    num = eval_P(freud, n - 1, X)
    _pole_guard(ctx, den, num, X)
    return s * num / den


# --------------------------------------------------------------------------
# limit constants
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class LimitDiagnostics:
    name: str
    samples: tuple  # (n, value)
    limit: object
    deviations: tuple

    def deviation_at(self, n: int):
        for (m, _), d in zip(self.samples, self.deviations):
            if m == n:
                return d
        raise KeyError(n)


def _diag(name, pairs, limit):
    pairs = tuple(pairs)
    return LimitDiagnostics(name, pairs, limit, tuple(abs(v - limit) for _, v in pairs))


def limit_diagnostics(conn: ConnectionTable, freud: FreudTable, ns) -> list:
    """Scaled coefficient sequences against their limiting constants.

    The value-mass case gives ``c_n, a_n, b_n`` over ``sqrt(n)``; the
    derivative-mass case the five ``x^2`` sequences, ``khat_n/k_n`` (as
    ``delta_n k_{n-2} / k_n``) and the odd-step ``a_n / sqrt(2n)``.
    """
    ctx = context(freud.prec)
    ns = sorted(set(int(n) for n in ns))
    if not ns or ns[0] < 2:
        raise ParameterError("sample indices must be >= 2")
    freud.require(ns[-1], "limit sample")
    half3 = 1 / (2 * ctx.sqrt(3))
    rt3 = 1 / ctx.sqrt(3)
    twelfth = ctx.mpf(1) / 12
    out = [_diag("c_n/sqrt(n)", [(n, freud.c[n] / ctx.sqrt(n)) for n in ns], half3)]

    def have(seq, n):
        return n < len(seq) and seq[n] is not None

    if conn.case == LAMBDA2_ZERO:
        out.append(_diag("a_n/sqrt(n)", [(n, conn.a[n] / ctx.sqrt(n)) for n in ns if have(conn.a, n)], half3))
        out.append(_diag("b_n/sqrt(n)", [(n, conn.b[n] / ctx.sqrt(n)) for n in ns if have(conn.b, n)], half3))
    elif conn.case == LAMBDA2_POS:
        out.append(_diag("a_n/sqrt(2n)", [(n, conn.a[n] / ctx.sqrt(2 * n)) for n in ns if have(conn.a, n)],
                         half3))
        out.append(_diag("b_n/sqrt(n)", [(n, conn.b[n] / ctx.sqrt(n)) for n in ns if have(conn.b, n)], rt3))
        out.append(_diag("alpha_n/n", [(n, conn.alpha[n] / n) for n in ns if have(conn.alpha, n)], twelfth))
        out.append(_diag("sigma_n/sqrt(n)", [(n, conn.sigma[n] / ctx.sqrt(n)) for n in ns
                                             if have(conn.sigma, n)], rt3))
        out.append(_diag("delta_n/n", [(n, conn.delta[n] / n) for n in ns if have(conn.delta, n)], twelfth))
        k = need_norms(freud).k
        out.append(_diag("khat_n/k_n", [(n, conn.delta[n] * k[n - 2] / k[n]) for n in ns
                                        if have(conn.delta, n)], ctx.one))
    else:
        raise ParameterError(f"no limit constants for case {conn.case!r}")
    return out


class QSqrt3:
    """Exact ``p + q sqrt(3)`` with rational ``p, q``."""

    __slots__ = ("p", "q")

    def __init__(self, p=0, q=0):
        self.p, self.q = Fraction(p), Fraction(q)

    def __add__(self, o):
        return QSqrt3(self.p + o.p, self.q + o.q)

    def __mul__(self, o):
        return QSqrt3(self.p * o.p + 3 * self.q * o.q, self.p * o.q + self.q * o.p)

    def __eq__(self, o):
        return self.p == o.p and self.q == o.q

    def __repr__(self):
        return f"{self.p} + {self.q}*sqrt(3)"


def _poly_mul(a, b):
    out = [QSqrt3() for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def quartic_factorization_check():
    """``1 - 4 sqrt3 t + 18 t^2 - 12 sqrt3 t^3 + 9 t^4 = 9 (t - 1/sqrt3)^4`` exactly.

    Returns ``(residual coefficients, root, multiplicity)``; all residuals are
    exact zeros, so ``1/sqrt3`` is the only real root.
    """
    lhs = [QSqrt3(1), QSqrt3(0, -4), QSqrt3(18), QSqrt3(0, -12), QSqrt3(9)]
    lin = [QSqrt3(0, Fraction(-1, 3)), QSqrt3(1)]  # t - sqrt3/3
    rhs = [QSqrt3(9)]
    for _ in range(4):
        rhs = _poly_mul(rhs, lin)
    resid = [l + r * QSqrt3(-1) for l, r in zip(lhs, rhs)]
    return resid, QSqrt3(0, Fraction(1, 3)), 4


# --------------------------------------------------------------------------
# higher-order masses
# --------------------------------------------------------------------------

def prediction_experiment(r: int, lambdas, ns=PREDICTION_NS, xs=(1.5, 3), prec: int | None = None,
                          table: SobolevTable | None = None) -> VerifyReport:
    """Deviation of ``P_n/Q_n`` from the target for masses up to order ``r >= 2``.

    One ``prediction.trend`` check per ``x`` passes when the deviation at the
    largest ``n`` is below the one at the smallest. Per-sample deviations are
    informational. Nothing here is a proof.
    """
    if r < 2:
        raise ParameterError("the experiment is for r >= 2; r = 0, 1 have proven limits")
    params = lambdas if isinstance(lambdas, SobolevParams) else SobolevParams(tuple(str(v) for v in lambdas))
    if params.r != r:
        raise ParameterError(f"expected {r + 1} masses, got {len(params.lambdas)}")
    vals = params.values(64)
    if not (params.all_zero or all(v > 0 for v in vals)):
        raise ParameterError("masses must be all positive (or all zero for the degenerate check)")
    ns = sorted(set(int(n) for n in ns))
    st = table if table is not None else gram_schmidt_Q(ns[-1], params, prec)
    freud = freud_table(ns[-1] + 2, st.prec)
    ctx = context(st.prec)
    noise = ctx.ldexp(ctx.one, -st.prec // 2)  # Q = P up to rounding
    rep = VerifyReport(title=f"prediction r={r} lambdas={list(params.lambdas)} ({CONJECTURE})")
    rep.notes.append(CONJECTURE)
    for x in xs:
        devs = []
        for n in ns:
            s = empirical_ratio(n, x, st, freud)
            devs.append(s.abs_error)
            rep.add("prediction.deviation", n, s.abs_error, ctx.inf, kind=REPORT, note=f"x={x}")
        first, last = devs[0], devs[-1]
        if last <= noise:
            ratio = ctx.zero
        else:
            ratio = last / first if first != 0 else ctx.inf
        drops = sum(1 for u, v in zip(devs, devs[1:]) if v <= u)
        rep.add("prediction.trend", None, ratio, ctx.one - ctx.eps, kind=ASSERT,
                note=f"x={x}; {drops}/{len(devs) - 1} consecutive steps non-increasing")
    return rep
