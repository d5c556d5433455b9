"""Sobolev-type inner product with derivative masses at the origin.

``<f, g>_S = int f g exp(-x^4) dx + sum_k lambdas[k] f^(k)(0) g^(k)(0)``.

Index convention: ``lambdas[0]`` weights values at 0 and ``lambdas[1]``
weights first derivatives, so ``lambdas = [l0]`` is the value-mass family and
``lambdas = [l0, l1]`` the derivative-mass family.

Three independent constructions of the monic orthogonal ``Q_n``:

* :func:`gram_schmidt_Q` -- the reference, Gram-Schmidt on monomials with
  adaptive precision;
* :func:`khat_recurrence_lambda2zero` -- norm recurrence for ``lambdas=[l0]``;
* :func:`uvarov_table` -- rank-one mass update of the Freud polynomials in
  each parity block (valid for ``r <= 1``), O(N) per index.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath

from .errors import ParameterError, PrecisionEscalation, RangeError
from .freud import FreudTable, d_coeff, eval_P_all, freud_norms, freud_table, moments, p_polys
from .numerics import DEFAULT_PREC, EVEN, ODD, Poly, context, poly_eval
from .report import REPORT, VerifyReport, relative

LAMBDA2_ZERO, LAMBDA2_POS, GENERAL = "lambda2_zero", "lambda2_pos", "general"
PREC_CAP = 16384


@dataclass(frozen=True)
class SobolevParams:
    """Nonnegative masses; ``lambdas[k]`` multiplies ``f^(k)(0) g^(k)(0)``."""

    lambdas: tuple

    def __post_init__(self):
        if len(self.lambdas) == 0:
            raise ParameterError("at least one mass (possibly 0) is required")
        norm = []
        for lam in self.lambdas:
            text = str(lam).strip()
            try:
                val = mpmath.mpmathify(text)
            except (ValueError, TypeError) as exc:
                raise ParameterError(f"cannot parse mass {lam!r}") from exc
            if isinstance(val, mpmath.mpc) or not mpmath.isfinite(val) or val < 0:
                raise ParameterError(f"masses must be finite and nonnegative, got {lam!r}")
            norm.append(text)
        object.__setattr__(self, "lambdas", tuple(norm))

    @classmethod
    def parse(cls, text: str) -> SobolevParams:
        return cls(tuple(t for t in text.split(",") if t.strip()))

    @property
    def r(self) -> int:
        return len(self.lambdas) - 1

    def values(self, prec: int) -> list:
        ctx = context(prec)
        return [ctx.mpf(t) for t in self.lambdas]

    @property
    def all_zero(self) -> bool:
        return all(mpmath.mpf(t) == 0 for t in self.lambdas)

    @property
    def case(self) -> str:
        return {0: LAMBDA2_ZERO, 1: LAMBDA2_POS}.get(self.r, GENERAL)


@dataclass(frozen=True)
class ConnectionTable:
    """Connection coefficients; undefined entries are ``None``.

    ``lambda2_zero``: ``a[n] = k_n / khat_{n-1}``, ``b[n] = khat_n / k_{n-1}``.
    ``lambda2_pos``: ``a`` is the half-index sequence of
    ``x P_{2n-1} = Q_{2n} + a_n Q_{2n-2}``; ``b``, ``alpha``, ``sigma``,
    ``delta`` belong to the ``x^2`` relations.
    """

    case: str
    a: tuple
    b: tuple
    alpha: tuple = ()
    sigma: tuple = ()
    delta: tuple = ()


@dataclass(frozen=True)
class SobolevTable:
    params: SobolevParams
    N: int
    prec: int
    khat: tuple
    Q: tuple | None = None
    conn: ConnectionTable | None = None
    source: str = "gram_schmidt"
    # rank-one update data (uvarov_table only)
    extra: dict = field(default_factory=dict, compare=False, hash=False)


# --------------------------------------------------------------------------
# inner product and Gram-Schmidt
# --------------------------------------------------------------------------

def _mass_values(params: SobolevParams, prec: int) -> list:
    ctx = context(prec)
    return [lam * ctx.factorial(k) ** 2 for k, lam in enumerate(params.values(prec))]


def sobolev_inner(p: Poly, q: Poly, params: SobolevParams):
    """Exact moments for the integral plus the point masses."""
    prec = max(p.prec, q.prec)
    ctx = context(prec)
    mu = moments(p.degree + q.degree if p.degree >= 0 and q.degree >= 0 else 0, prec)
    total = []
    for i, pi in enumerate(p.coeffs):
        if pi == 0:
            continue
        for j, qj in enumerate(q.coeffs):
            if qj != 0 and (i + j) % 2 == 0:
                total.append(ctx.convert(pi) * ctx.convert(qj) * mu[i + j])
    s = ctx.fsum(total)
    for k, w in enumerate(_mass_values(params, prec)):
        if w != 0:
            s += w * ctx.convert(p[k]) * ctx.convert(q[k])
    return s


def _gram_block(idx, mu, masses):
    G = []
    for i in idx:
        row = []
        for j in idx:
            v = mu[i + j]
            if i == j and i < len(masses):
                v = v + masses[i]
            row.append(v)
        G.append(row)
    return G


def _gram_schmidt_run(N: int, params: SobolevParams, prec: int):
    ctx = context(prec)
    mu = moments(2 * N, prec)
    masses = _mass_values(params, prec)
    Q = [None] * (N + 1)
    khat = [None] * (N + 1)
    for parity in (0, 1):
        idx = list(range(parity, N + 1, 2))
        G = _gram_block(idx, mu, masses)
        basis = []  # (coefficient vector over idx, G @ q, khat)
        for pos, n in enumerate(idx):
            q = [ctx.zero] * len(idx)
            q[pos] = ctx.one
            for qm, Gqm, km in basis:
                f = Gqm[pos] / km
                for t in range(len(idx)):
                    if qm[t] != 0:
                        q[t] -= f * qm[t]
            q[pos] = ctx.one
            Gq = [ctx.fdot(G[s][:pos + 1], q[:pos + 1]) for s in range(len(idx))]
            kh = ctx.fdot(q[:pos + 1], Gq[:pos + 1])
            basis.append((q, Gq, kh))
            coeffs = [ctx.zero] * (n + 1)
            for t in range(pos + 1):
                coeffs[idx[t]] = q[t]
            Q[n] = Poly(tuple(coeffs), prec, EVEN if parity == 0 else ODD)
            khat[n] = kh
    return Q, khat


def gram_schmidt_Q(N: int, params: SobolevParams, prec: int | None = None, tol=None,
                   cap: int = PREC_CAP) -> SobolevTable:
    """Monic ``Q_0..Q_N`` by Gram-Schmidt in the even/odd monomial blocks.

    Runs at ``max(prec, 8 N)`` bits and again at twice that; the first run is
    accepted once every ``khat_n`` agrees to relative ``tol`` (default
    ``1e-40``), otherwise the precision keeps doubling up to ``cap``.
    """
    if N < 0:
        raise ParameterError("N must be >= 0")
    p = max(prec or DEFAULT_PREC, 8 * N, DEFAULT_PREC)
    tol = mpmath.mpf(tol) if tol is not None else mpmath.mpf("1e-40")
    lo = _gram_schmidt_run(N, params, p)
    while True:
        if 2 * p > cap:
            bad = _first_disagreement(lo[1], None, tol)
            raise PrecisionEscalation(f"Gram-Schmidt unstable at the {cap}-bit cap", index=bad,
                                      prec=p, capped=True)
        hi = _gram_schmidt_run(N, params, 2 * p)
        bad = _first_disagreement(lo[1], hi[1], tol)
        if bad is None:
            Q, khat = lo
            if any(k <= 0 for k in khat):
                raise PrecisionEscalation("nonpositive norm", index=next(
                    n for n, k in enumerate(khat) if k <= 0), prec=p)
            return SobolevTable(params=params, N=N, prec=p, khat=tuple(khat), Q=tuple(Q))
        p *= 2
        lo = hi


def _first_disagreement(k_lo, k_hi, tol):
    if k_hi is None:
        return 0
    for n, (a, b) in enumerate(zip(k_lo, k_hi)):
        if a <= 0 or abs(a - b) > tol * abs(b):
            return n
    return None


def orthogonality_defect(st: SobolevTable, nmax: int | None = None):
    """max over m < n <= nmax of ``|<Q_m, Q_n>_S| / sqrt(khat_m khat_n)``."""
    if st.Q is None:
        raise ParameterError("table carries no coefficient vectors")
    nmax = st.N if nmax is None else nmax
    ctx = context(st.prec)
    worst = ctx.zero
    for n in range(nmax + 1):
        for m in range(n % 2, n, 2):  # opposite parity is exactly orthogonal
            v = abs(sobolev_inner(st.Q[m], st.Q[n], st.params)) / ctx.sqrt(st.khat[m] * st.khat[n])
            worst = max(worst, v)
    return worst


# --------------------------------------------------------------------------
# fast paths
# --------------------------------------------------------------------------

def need_norms(freud: FreudTable) -> FreudTable:
    return freud if freud.k is not None else freud_norms(freud)


def freud_for(st: SobolevTable, freud: FreudTable | None, n: int) -> FreudTable:
    """``freud`` if it covers index ``n`` at exactly ``st.prec`` bits, else a fresh table."""
    if freud is not None and freud.prec == st.prec and freud.trusted >= n + 1:
        return need_norms(freud)
    return freud_table(max(n + 2, 2), st.prec)


def khat_recurrence_lambda2zero(N: int, lambda0, freud: FreudTable):
    """``(khat, a, b)`` for ``lambdas = [lambda0]``.

    ``khat_{n+1} = (c_{n+1} + c_n) k_n - k_n^2 / khat_{n-1}``, from the norm of
    ``x P_n = Q_{n+1} + a_n Q_{n-1}``. ``a[0]`` and ``b[0]`` are ``None``.
    """
    freud = need_norms(freud)
    freud.require(N, "khat index")
    ctx = context(freud.prec)
    lam = ctx.mpf(str(lambda0)) if not isinstance(lambda0, mpmath.mpf) else ctx.convert(lambda0)
    c, k = freud.c, freud.k
    if lam == 0:
        khat = list(k[:N + 1])
        return khat, [None] + [c[n] for n in range(1, N + 1)], [None] + [c[n] for n in range(1, N + 1)]
    khat = [k[0] + lam]
    if N >= 1:
        khat.append(k[1])
    for n in range(1, N):
        if khat[n - 1] <= 0:
            raise PrecisionEscalation("khat recurrence lost positivity", index=n - 1, prec=freud.prec)
        khat.append((c[n + 1] + c[n]) * k[n] - k[n] ** 2 / khat[n - 1])
    a = [None] + [k[n] / khat[n - 1] for n in range(1, N + 1)]
    b = [None] + [khat[n] / k[n - 1] for n in range(1, N + 1)]
    return khat, a, b


def sobolev_fast(N: int, lambda0, freud: FreudTable) -> SobolevTable:
    """Norm-recurrence table (no coefficient vectors) for ``lambdas = [lambda0]``."""
    khat, a, b = khat_recurrence_lambda2zero(N, lambda0, freud)
    conn = ConnectionTable(case=LAMBDA2_ZERO, a=tuple(a), b=tuple(b))
    return SobolevTable(params=SobolevParams((str(lambda0),)), N=N, prec=freud.prec,
                        khat=tuple(khat), conn=conn, source="khat_recurrence")


def q_eval_fast(n: int, x, conn: ConnectionTable, freud: FreudTable):
    """``Q_n(x)`` from ``Q_{j+1} = x P_j - a_j Q_{j-1}`` (value-mass case)."""
    if conn.case != LAMBDA2_ZERO:
        raise ParameterError("q_eval_fast needs the lambda2_zero connection table")
    if n < 0 or n > len(conn.a):
        raise RangeError(f"Q index {n} beyond connection table")
    ctx = context(freud.prec)
    x = ctx.convert(x)
    if n == 0:
        return ctx.one
    P = eval_P_all(freud, n - 1, x)
    q0, q1 = ctx.one, x
    for j in range(1, n):
        q0, q1 = q1, x * P[j] - conn.a[j] * q0
    return q1


def _origin_data(freud: FreudTable, N: int):
    """``s0[n]``: ``P_n(0)`` for even n, ``P_n'(0)`` for odd n."""
    ctx = context(freud.prec)
    c = freud.c
    val = [ctx.one, ctx.zero]
    der = [ctx.zero, ctx.one]
    for n in range(1, N):
        val.append(-c[n] * val[n - 1])
        der.append(val[n] - c[n] * der[n - 1])
    return [val[n] if n % 2 == 0 else der[n] for n in range(N + 1)]


def uvarov_table(N: int, params: SobolevParams, freud: FreudTable) -> SobolevTable:
    """Rank-one mass update, parity block by parity block (``r <= 1``).

    In ``t = x^2`` each parity block of the Freud polynomials is an ordinary
    orthogonal family with norms ``k_n``; the mass ``lambdas[0]`` (even block)
    or ``lambdas[1]`` (odd block) adds a point mass at ``t = 0``. With the
    Christoffel-Darboux kernel ``K`` at the origin,

        khat_n = k_n + lam s_n^2 / (1 + lam K_{n-2}),

    where ``s_n`` is the block polynomial's value at 0.
    """
    if params.r > 1:
        raise ParameterError("uvarov_table handles masses on f(0) and f'(0) only")
    freud = need_norms(freud)
    freud.require(N + 2, "uvarov index")
    ctx = context(freud.prec)
    lams = params.values(freud.prec) + [ctx.zero]
    s0 = _origin_data(freud, N + 2)
    k, c = freud.k, freud.c
    kern = [None] * (N + 3)
    khat = [None] * (N + 3)
    denom = [None] * (N + 3)
    for n in range(N + 3):
        lam = lams[n % 2]
        prev = kern[n - 2] if n >= 2 else ctx.zero
        denom[n] = 1 + lam * prev
        khat[n] = k[n] + lam * s0[n] ** 2 / denom[n]
        kern[n] = prev + s0[n] ** 2 / k[n]
    # coefficient of x^{n-2}: P_n has -(c_1 + ... + c_{n-1})
    psub = [ctx.zero, ctx.zero]
    for n in range(2, N + 3):
        psub.append(psub[-1] - c[n - 1])
    qsub = [ctx.zero, ctx.zero]
    for n in range(2, N + 3):
        lam = lams[n % 2]
        qsub.append(psub[n] - lam * s0[n] * s0[n - 2] / (k[n - 2] * denom[n]))
    extra = {"s0": s0, "kern": kern, "denom": denom, "psub": psub, "qsub": qsub,
             "khat_ext": khat}
    return SobolevTable(params=params, N=N, prec=freud.prec, khat=tuple(khat[:N + 1]),
                        source="uvarov", extra=extra)


def uvarov_eval(n: int, x, st: SobolevTable, freud: FreudTable):
    """``Q_n(x) = P_n(x) - lam s_n K_{n-2}(x, 0) / (1 + lam K_{n-2}(0, 0))``."""
    if st.source != "uvarov":
        raise ParameterError("table was not built by uvarov_table")
    if n < 0 or n > st.N + 2:
        raise RangeError(f"Q index {n} beyond table")
    freud = need_norms(freud)
    ctx = context(freud.prec)
    lams = st.params.values(freud.prec) + [ctx.zero]
    lam = lams[n % 2]
    P = eval_P_all(freud, n, x)
    if lam == 0 or n < 2:
        return P[n]
    s0, denom = st.extra["s0"], st.extra["denom"]
    kx = ctx.fsum(P[j] * s0[j] / freud.k[j] for j in range(n % 2, n - 1, 2))
    return P[n] - lam * s0[n] * kx / denom[n]


# --------------------------------------------------------------------------
# connection coefficients
# --------------------------------------------------------------------------

def connection_zero(st: SobolevTable, freud: FreudTable) -> ConnectionTable:
    """``a_n = k_n / khat_{n-1}``, ``b_n = khat_n / k_{n-1}`` from any table's norms."""
    freud = need_norms(freud)
    k, kh = freud.k, st.khat
    a = [None] + [k[n] / kh[n - 1] for n in range(1, st.N + 1)]
    b = [None] + [kh[n] / k[n - 1] for n in range(1, st.N + 1)]
    return ConnectionTable(case=LAMBDA2_ZERO, a=tuple(a), b=tuple(b))


def connection_pos(st: SobolevTable, freud: FreudTable, N: int | None = None) -> ConnectionTable:
    """Coefficients of the ``x^2`` relations, read off from their definitions.

    ``alpha_n = k_n / khat_{n-2}``, ``delta_n = khat_n / k_{n-2}``,
    ``b_n = <x^2 P_n, Q_n>_S / khat_n``, ``sigma_n = b_n khat_n / k_n`` and the
    half-index ``a_n = k_{2n-1} / khat_{2n-2}``. Gram-Schmidt tables supply
    ``b_n`` by the inner product; rank-one tables by comparing the
    ``x^n`` coefficients of ``x^2 P_n`` and ``Q_{n+2}``.
    """
    if st.params.r != 1:
        raise ParameterError("connection_pos needs lambdas = [l0, l1]")
    freud = need_norms(freud)
    N = st.N if N is None else N
    k, kh = freud.k, st.khat
    alpha = [None, None] + [k[n] / kh[n - 2] for n in range(2, N + 1)]
    delta = [None, None] + [kh[n] / k[n - 2] for n in range(2, N + 1)]
    b = []
    if st.Q is not None:
        P = p_polys(freud, N)
        for n in range(N + 1):
            b.append(sobolev_inner(P[n].mul_x2(), st.Q[n], st.params) / kh[n])
    else:
        psub, qsub = st.extra["psub"], st.extra["qsub"]
        b = [psub[n] - qsub[n + 2] for n in range(N + 1)]
    sigma = [b[n] * kh[n] / k[n] for n in range(N + 1)]
    a = [None] + [k[2 * n - 1] / kh[2 * n - 2] for n in range(1, N // 2 + 1)]
    return ConnectionTable(case=LAMBDA2_POS, a=tuple(a), b=tuple(b), alpha=tuple(alpha),
                           sigma=tuple(sigma), delta=tuple(delta))


def with_connection(st: SobolevTable, freud: FreudTable) -> SobolevTable:
    from dataclasses import replace
    if st.params.r == 0:
        return replace(st, conn=connection_zero(st, freud))
    if st.params.r == 1:
        return replace(st, conn=connection_pos(st, freud))
    return st


def build_table(N: int, params: SobolevParams, freud: FreudTable, prec: int | None = None,
                tol=None) -> SobolevTable:
    """Gram-Schmidt table with its connection coefficients attached."""
    st = gram_schmidt_Q(N, params, prec if prec is not None else freud.prec, tol)
    if st.params.r <= 1:
        # connection coefficients are evaluated at the Gram-Schmidt precision
        st = with_connection(st, freud_for(st, freud, N + 3))
    return st


# --------------------------------------------------------------------------
# identity residuals
# --------------------------------------------------------------------------

def _poly_residual(lhs: Poly, terms) -> object:
    """Largest coefficient of ``lhs - sum(terms)`` relative to the largest input coefficient."""
    rhs = terms[0]
    for t in terms[1:]:
        rhs = rhs + t
    diff = lhs - rhs
    scale = max([lhs.max_abs_coeff()] + [t.max_abs_coeff() for t in terms])
    return diff.max_abs_coeff() / scale


def derivative_identity_residuals(freud: FreudTable, nmax: int, tol, report: VerifyReport):
    freud = need_norms(freud)
    P = p_polys(freud, nmax)
    for n in range(3, nmax + 1):
        res = _poly_residual(P[n].derivative(), [P[n - 1].scale(n), P[n - 3].scale(d_coeff(freud, n))])
        report.add("derivative_identity", n, res, tol)


def identity_residuals(st: SobolevTable, conn: ConnectionTable, freud: FreudTable, nmax: int,
                       tol=1e-18) -> VerifyReport:
    """Residual of every identity and connection relation for ``n <= nmax``.

    Indices whose ingredients fall outside the tables are skipped.
    """
    freud = freud_for(st, freud, st.N + 3)
    ctx = context(freud.prec)
    tol = ctx.convert(tol)
    rep = VerifyReport(title=f"identities lambdas={list(st.params.lambdas)} case={conn.case}")
    c = freud.c
    N = st.N
    nmax = min(nmax, N)
    derivative_identity_residuals(freud, nmax, tol, rep)
    P = p_polys(freud, N + 2) if st.Q is not None else None
    if conn.case == LAMBDA2_ZERO:
        _identities_zero(st, conn, freud, nmax, tol, rep, P)
    elif conn.case == LAMBDA2_POS:
        _identities_pos(st, conn, freud, nmax, tol, rep, P)
    return rep


def _identities_zero(st, conn, freud, nmax, tol, rep, P):
    c, k = freud.c, freud.k
    a, b = conn.a, conn.b
    N = st.N
    ctx = context(freud.prec)
    for n in range(1, nmax + 1):
        if n + 2 <= N:
            rep.add("value.a_recursion", n, relative(c[n + 2] * c[n + 1] / a[n + 2] + a[n], c[n + 1] + c[n]), tol)
        if n + 1 <= N:
            rep.add("value.ab_product", n, relative(a[n + 1] * b[n], c[n + 1] * c[n]), tol)
    if st.Q is None:
        return
    Q = st.Q
    for n in range(1, nmax + 1):
        if n + 1 <= N:
            rep.add("relation.xP=Q+aQ", n,
                    _poly_residual(P[n].mul_x(), [Q[n + 1], Q[n - 1].scale(a[n])]), tol)
            rep.add("relation.xQ=P+bP", n,
                    _poly_residual(Q[n].mul_x(), [P[n + 1], P[n - 1].scale(b[n])]), tol)
    mu = moments(2 * N + 2, freud.prec)
    two_gamma54 = 2 * mu[0] / 2  # 2 Gamma(5/4) = Gamma(1/4) / 2 = mu_0
    for m in range(1, min(10, (N - 1) // 2) + 1):
        q = Q[2 * m + 1]
        integral = ctx.fsum(q[2 * j + 1] * mu[2 * j] for j in range(m + 1))
        prod = ctx.one
        for kk in range(1, m + 1):
            prod *= a[2 * kk]
        rhs = two_gamma54 * (-1) ** m * prod
        rep.add("odd_integral", m, relative(integral, rhs), tol)
    q0 = [poly_eval(Q[n], 0) for n in range(N + 1)]
    for m in range(1, N // 2 + 1):
        rep.add("Q2m(0).from_relation", m, relative(q0[2 * m], -a[2 * m - 1] * q0[2 * m - 2]), tol,
                note="x P_{2m-1} = Q_{2m} + a_{2m-1} Q_{2m-2} at x = 0")
        rep.add("Q2m(0).shifted_index", m, relative(q0[2 * m], -a[2 * m] * q0[2 * m - 2]), tol, kind=REPORT,
                note="shifted factor a_{2m}")
        prod = ctx.one
        for kk in range(2, m + 1):
            prod *= a[2 * kk]
        rep.add("Q2m(0).product_formula", m, relative(q0[2 * m], (-1) ** m * prod), tol, kind=REPORT,
                note="(-1)^m prod_{k=2}^m a_{2k}")


def _identities_pos(st, conn, freud, nmax, tol, rep, P):
    c, k = freud.c, freud.k
    a, b, al, sg, de = conn.a, conn.b, conn.alpha, conn.sigma, conn.delta
    N = st.N
    for n in range(1, nmax + 1):
        if n + 1 < len(a):
            lhs = c[2 * n + 1] * c[2 * n] / a[n + 1] + a[n]
            rep.add("deriv.a_recursion", n, relative(lhs, c[2 * n] + c[2 * n - 1]), tol)
    for n in range(2, nmax + 1):
        if n + 4 < len(al):
            lhs = c[n + 2] * c[n + 1] + c[n] * c[n - 1] + (c[n + 1] + c[n]) ** 2
            rhs = (c[n + 4] * c[n + 3] * c[n + 2] * c[n + 1] / al[n + 4]
                   + b[n] ** 2 * c[n + 2] * c[n + 1] / al[n + 2] + al[n])
            rep.add("deriv.alpha_recursion", n, relative(lhs, rhs), tol)
        if n <= N:
            rep.add("deriv.sigma_from_c", n, relative(sg[n], n / (4 * c[n]) + c[n - 2] - b[n - 2]), tol)
            rep.add("deriv.sigma_delta", n, relative(sg[n], de[n] * b[n] / (c[n] * c[n - 1])), tol)
        if n + 2 <= N:
            rhs = n / context(freud.prec).mpf(2) + context(freud.prec).mpf(1) / 4
            lhs = c[n + 2] * c[n + 1] * sg[n + 2] / b[n + 2] + b[n] * sg[n] + al[n]
            rep.add("deriv.sigma_sum.b_form", n, relative(lhs, rhs), tol,
                    note="sigma_{n+2} / b_{n+2}")
            lhs = c[n + 2] * c[n + 1] * sg[n + 2] / al[n + 2] + b[n] * sg[n] + al[n]
            rep.add("deriv.sigma_sum.alpha_form", n, relative(lhs, rhs), tol, kind=REPORT,
                    note="sigma_{n+2} / alpha_{n+2}")
    if st.Q is None:
        return
    Q = st.Q
    for n in range(1, nmax + 1):
        if 2 * n <= N:
            rep.add("relation.xP_odd=Q+aQ", n,
                    _poly_residual(P[2 * n - 1].mul_x(), [Q[2 * n], Q[2 * n - 2].scale(a[n])]), tol)
    for n in range(0, nmax + 1):
        if n + 2 > N:
            break
        terms = [Q[n + 2], Q[n].scale(b[n])] + ([Q[n - 2].scale(al[n])] if n >= 2 else [])
        rep.add("relation.x2P=Q+bQ+alphaQ", n, _poly_residual(P[n].mul_x2(), terms), tol)
        terms = [P[n + 2], P[n].scale(sg[n])] + ([P[n - 2].scale(de[n])] if n >= 2 else [])
        rep.add("relation.x2Q=P+sigmaP+deltaP", n, _poly_residual(Q[n].mul_x2(), terms), tol)
