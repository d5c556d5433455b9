"""Recurrence coefficients, norms, polynomials and quadrature for exp(-x^4).

The monic orthogonal polynomials satisfy ``x P_n = P_{n+1} + c_n P_{n-1}``
with ``n = 4 c_n (c_{n+1} + c_n + c_{n-1})``, ``c_0 = 0`` and
``c_1 = Gamma(3/4) / Gamma(1/4)``. Two engines produce the ``c_n``:

* :func:`string_forward` runs the recurrence upward. It loses roughly
  ``log2(2 + sqrt 3)`` bits per step, so it is paired with a second run at
  higher precision that certifies a trusted prefix.
* :func:`string_newton` solves all equations simultaneously with a
  tridiagonal Newton iteration and an asymptotic tail closure. The boundary
  error decays like ``(2 - sqrt 3)^k`` into the interior, so the system is
  extended past ``N`` by a precision-dependent buffer that is discarded.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache

from .errors import IterationError, ParameterError, PrecisionEscalation, RangeError
from .numerics import (DEFAULT_PREC, EVEN, ODD, Poly, context, gamma_quarter,
                       symtridiag_eigen)

FORWARD, NEWTON, BOTH = "forward", "newton", "both"

# error amplification per step of the forward recurrence: 2 + sqrt(3)
_GROWTH_BITS = math.log2(2 + math.sqrt(3))


@dataclass(frozen=True)
class FreudTable:
    """Recurrence data ``c_0..c_M`` (``M >= N``) and norms ``k_0..k_M``.

    ``trusted`` is the largest index whose ``c`` value is certified; ``N``
    the requested length. ``residual[n]`` holds the string-equation residual
    ``4 c_n (c_{n+1} + c_n + c_{n-1}) - n`` for ``1 <= n < len(c) - 1``
    (``None`` elsewhere).
    """

    N: int
    c: tuple
    k: tuple | None
    method: str
    prec: int
    trusted: int
    residual: tuple

    @property
    def max_index(self) -> int:
        return len(self.c) - 1

    def require(self, n: int, what: str = "index"):
        if n < 0 or n > self.trusted:
            raise RangeError(f"{what} {n} outside trusted range 0..{self.trusted}")

    def max_relative_residual(self, upto: int | None = None):
        """max |residual_n| / n over ``1 <= n <= upto`` (default: trusted range)."""
        ctx = context(self.prec)
        upto = min(self.trusted if upto is None else upto, len(self.c) - 2)
        vals = [abs(self.residual[n]) / n for n in range(1, upto + 1)]
        return max(vals) if vals else ctx.zero


def moment(m: int, prec: int = DEFAULT_PREC):
    """Integral of ``x^m exp(-x^4)`` over the real line."""
    if m < 0:
        raise ParameterError("moment order must be nonnegative")
    if m % 2:
        return context(prec).zero
    return gamma_quarter(m + 1, prec) / 2


@lru_cache(maxsize=32)
def moments(mmax: int, prec: int = DEFAULT_PREC) -> tuple:
    """``(mu_0, ..., mu_mmax)`` built incrementally from the functional equation."""
    ctx = context(prec)
    out = [ctx.zero] * (mmax + 1)
    if mmax >= 0:
        out[0] = moment(0, prec)
    if mmax >= 2:
        out[2] = moment(2, prec)
    for m in range(4, mmax + 1, 2):
        # mu_m = ((m - 3) / 4) mu_{m-4}
        out[m] = out[m - 4] * (m - 3) / 4
    return tuple(out)


def _residuals(c, prec):
    ctx = context(prec)
    res = [None] * len(c)
    for n in range(1, len(c) - 1):
        res[n] = 4 * c[n] * (c[n + 1] + c[n] + c[n - 1]) - n
    return tuple(res)


def _forward_run(N: int, prec: int, truncate: bool):
    ctx = context(prec)
    c = [ctx.zero, gamma_quarter(3, prec) / gamma_quarter(1, prec)]
    for n in range(1, N):
        nxt = n / (4 * c[n]) - c[n] - c[n - 1]
        if nxt <= 0:
            if truncate:
                return c, n + 1
            raise PrecisionEscalation(
                f"forward recurrence produced c_{n + 1} <= 0 at {prec} bits", index=n + 1, prec=prec)
        c.append(nxt)
    return c, None


def string_forward(N: int, prec: int = DEFAULT_PREC, *, truncate: bool = False,
                   guard_bits: int = 64) -> FreudTable:
    """Upward iteration ``c_{n+1} = n / (4 c_n) - c_n - c_{n-1}``.

    A second run at ``prec + guard_bits`` certifies the prefix on which both
    runs agree to a relative ``2^(-prec/2)``. With ``truncate=True`` the
    table stops at the first nonpositive entry instead of raising.
    """
    if N < 1:
        raise ParameterError("N must be >= 1")
    lo, stop_lo = _forward_run(N, prec, truncate)
    hi, _ = _forward_run(len(lo) - 1, prec + guard_bits, True)
    ctx = context(prec)
    thresh = ctx.ldexp(ctx.one, -(prec // 2))
    trusted = 0
    for n in range(1, min(len(lo), len(hi))):
        if abs(lo[n] - ctx.convert(hi[n])) > thresh * abs(lo[n]):
            break
        trusted = n
    res = _residuals(lo, prec)
    return FreudTable(N=N, c=tuple(lo), k=None, method=FORWARD, prec=prec,
                      trusted=trusted, residual=res)


def newton_buffer(prec: int) -> int:
    """Extra unknowns so the tail-closure error decays below ``2^-prec``."""
    return math.ceil(prec / _GROWTH_BITS) + 10


def _solve_tridiagonal(sub, diag, sup, rhs):
    n = len(diag)
    cp = [None] * n
    dp = [None] * n
    cp[0] = sup[0] / diag[0]
    dp[0] = rhs[0] / diag[0]
    for i in range(1, n):
        m = diag[i] - sub[i] * cp[i - 1]
        cp[i] = sup[i] / m
        dp[i] = (rhs[i] - sub[i] * dp[i - 1]) / m
    x = [None] * n
    x[-1] = dp[-1]
    for i in range(n - 2, -1, -1):
        x[i] = dp[i] - cp[i] * x[i + 1]
    return x


def string_newton(N: int, prec: int = DEFAULT_PREC, tol=None, *, buffer: int | None = None,
                  max_iter: int = 60) -> FreudTable:
    """Positive solution of the string equations by damped Newton iteration.

    Unknowns ``c_1..c_M`` with ``M = N + buffer``; equations ``n = 1..M``;
    ``c_{M+1} = sqrt((M+1)/12)`` closes the system. ``c_1`` is not imposed,
    so matching Gamma(3/4)/Gamma(1/4) is an emergent check.
    """
    if N < 2:
        raise ParameterError("N must be >= 2")
    ctx = context(prec)
    buffer = newton_buffer(prec) if buffer is None else buffer
    M = N + buffer
    if tol is None:
        tol = ctx.ldexp(ctx.one, -prec + 8) * M
    tol = ctx.convert(tol)
    c = [ctx.zero] + [ctx.sqrt(ctx.mpf(n) / 12) for n in range(1, M + 2)]

    def residual(cv):
        return [4 * cv[n] * (cv[n + 1] + cv[n] + cv[n - 1]) - n for n in range(1, M + 1)]

    F = residual(c)
    err = max(abs(f) for f in F)
    history = [err]
    min_step = ctx.ldexp(ctx.one, -30)
    converged_steps = 0
    for it in range(max_iter):
        if err <= tol:
            converged_steps += 1
            # one extra step after convergence pushes the residual to roundoff
            if converged_steps > 1:
                break
        sub = [4 * c[n] for n in range(1, M + 1)]
        diag = [4 * (c[n + 1] + 2 * c[n] + c[n - 1]) for n in range(1, M + 1)]
        step = _solve_tridiagonal(sub, diag, sub, [-f for f in F])
        t = ctx.one
        accepted = None
        while t >= min_step:
            trial = c[:]
            for i, s in enumerate(step):
                trial[i + 1] = c[i + 1] + t * s
            if all(v > 0 for v in trial[1:M + 1]):
                Ft = residual(trial)
                et = max(abs(f) for f in Ft)
                if et < err or et <= tol:
                    accepted = (trial, Ft, et)
                    break
            t /= 2
        if accepted is None:
            if err <= tol:
                break
            raise IterationError("Newton step could not be damped into a positive, decreasing iterate",
                                 index=it, diagnostics={"residual_history": history})
        c, F, err = accepted
        history.append(err)
    if err > tol:
        raise IterationError(f"Newton stagnated at residual {ctx.nstr(err, 5)}", index=len(history),
                             diagnostics={"residual_history": history})
    res = _residuals(c, prec)
    return FreudTable(N=N, c=tuple(c), k=None, method=NEWTON, prec=prec, trusted=N, residual=res)


def freud_norms(table: FreudTable) -> FreudTable:
    """Fill ``k_n = c_n k_{n-1}`` from ``k_0 = mu_0``."""
    k = [moment(0, table.prec)]
    for n in range(1, len(table.c)):
        k.append(table.c[n] * k[-1])
    return replace(table, k=tuple(k))


def freud_table(N: int, prec: int = DEFAULT_PREC, method: str = NEWTON, **kw) -> FreudTable:
    """Convenience constructor: coefficients plus norms."""
    if method == NEWTON:
        t = string_newton(N, prec, **kw)
    elif method == FORWARD:
        t = string_forward(N, prec, **kw)
    else:
        raise ParameterError(f"unknown method {method!r}")
    return freud_norms(t)


def eval_P(table: FreudTable, n: int, x):
    """Monic ``P_n(x)`` by the upward three-term recurrence."""
    table.require(n - 1 if n > 0 else 0, "P index")
    ctx = context(table.prec)
    x = ctx.convert(x)
    if n == 0:
        return ctx.one
    p0, p1 = ctx.one, x
    for j in range(1, n):
        p0, p1 = p1, x * p1 - table.c[j] * p0
    return p1


def eval_P_all(table: FreudTable, n: int, x) -> list:
    """``[P_0(x), ..., P_n(x)]``."""
    table.require(n - 1 if n > 0 else 0, "P index")
    ctx = context(table.prec)
    x = ctx.convert(x)
    vals = [ctx.one]
    if n >= 1:
        vals.append(x)
    for j in range(1, n):
        vals.append(x * vals[j] - table.c[j] * vals[j - 1])
    return vals


def p_polys(table: FreudTable, n: int) -> list:
    """Monic coefficient vectors ``[P_0, ..., P_n]`` as :class:`Poly`."""
    table.require(n - 1 if n > 0 else 0, "P index")
    prec = table.prec
    ctx = context(prec)
    polys = [Poly((ctx.one,), prec, EVEN)]
    if n >= 1:
        polys.append(Poly((ctx.zero, ctx.one), prec, ODD))
    for j in range(1, n):
        polys.append(polys[j].mul_x() - polys[j - 1].scale(table.c[j]))
    return polys


def p_coefficients(table: FreudTable, n: int) -> Poly:
    return p_polys(table, n)[n]


def d_coeff(table: FreudTable, n: int):
    """``d_n = 4 c_n c_{n-1} c_{n-2}`` from ``P_n' = n P_{n-1} + d_n P_{n-3}``."""
    if n < 3:
        raise RangeError("d_n is defined for n >= 3")
    table.require(n, "d index")
    return 4 * table.c[n] * table.c[n - 1] * table.c[n - 2]


def jacobi_offdiag(table: FreudTable, n: int) -> list:
    """Off-diagonal ``sqrt(c_1), ..., sqrt(c_{n-1})`` of the n x n Jacobi matrix."""
    ctx = context(table.prec)
    return [ctx.sqrt(table.c[j]) for j in range(1, n)]


def gauss_freud(table: FreudTable, n: int, tol=None):
    """Gauss rule with ``n`` nodes for exp(-x^4).

    Nodes are the Jacobi-matrix eigenvalues; the weight at ``x_i`` is
    ``1 / sum_j p_j(x_i)^2`` with orthonormal ``p_j = P_j / sqrt(k_j)``.
    """
    if n < 1:
        raise ParameterError("need at least one node")
    table.require(n - 1, "quadrature size")
    if table.k is None:
        table = freud_norms(table)
    ctx = context(table.prec)
    if tol is None:
        tol = ctx.ldexp(ctx.one, -table.prec // 2)
    nodes = symtridiag_eigen([ctx.zero] * n, jacobi_offdiag(table, n), tol=None, prec=table.prec)
    weights = []
    for x in nodes:
        vals = eval_P_all(table, n - 1, x)
        weights.append(1 / ctx.fsum(v * v / table.k[j] for j, v in enumerate(vals)))
    return nodes, weights
