"""Extended-precision substrate.

Every computation runs inside an explicit :class:`mpmath.MPContext` obtained
from :func:`context`; nothing touches the global ``mpmath.mp`` precision.
Scalars are the context's ``mpf``/``mpc`` instances.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import mpmath

from .errors import IterationError, ParameterError

DEFAULT_PREC = 256
MIN_PREC = 64

EVEN, ODD, NONE = "even", "odd", "none"


@lru_cache(maxsize=None)
def context(prec: int = DEFAULT_PREC) -> mpmath.MPContext:
    """Return the shared context for ``prec`` mantissa bits."""
    prec = int(prec)
    if prec < MIN_PREC:
        raise ParameterError(f"precision must be >= {MIN_PREC} bits, got {prec}")
    ctx = mpmath.MPContext()
    ctx.prec = prec
    return ctx


def eps(prec: int):
    ctx = context(prec)
    return ctx.ldexp(ctx.one, -prec)


def decimal_digits(prec: int) -> int:
    """Significant digits used when serializing a ``prec``-bit scalar."""
    return max(1, math.ceil(0.3 * prec))


def to_decimal(x, prec: int) -> str:
    ctx = context(prec)
    return ctx.nstr(ctx.convert(x), decimal_digits(prec), strip_zeros=False, min_fixed=-4, max_fixed=8)


def sign(x) -> int:
    return (x > 0) - (x < 0)


# --------------------------------------------------------------------------
# Gamma at quarter integers
# --------------------------------------------------------------------------

@lru_cache(maxsize=64)
def _gamma_quarter_base(prec: int):
    # Gamma(1/4)^2 = (2 pi)^{3/2} / AGM(1, sqrt 2); Gamma(3/4) by reflection.
    ctx = context(prec)
    with ctx.extraprec(32):
        g14 = ctx.sqrt((2 * ctx.pi) ** ctx.mpf(1.5) / ctx.agm(1, ctx.sqrt(2)))
        g34 = ctx.pi * ctx.sqrt(2) / g14
    return +g14, +g34


def gamma_quarter(j: int, prec: int = DEFAULT_PREC):
    """Gamma(j/4) for odd positive ``j``.

    Only Gamma(1/4) and Gamma(3/4) are computed directly; larger arguments
    use Gamma(z + 1) = z Gamma(z).
    """
    if not isinstance(j, int) or j < 1 or j % 2 == 0:
        raise ParameterError(f"gamma_quarter needs an odd positive integer, got {j!r}")
    ctx = context(prec)
    g14, g34 = _gamma_quarter_base(prec)
    z, g = (ctx.mpf(1) / 4, g14) if j % 4 == 1 else (ctx.mpf(3) / 4, g34)
    while z * 4 < j:
        g = g * z
        z = z + 1
    return g


# --------------------------------------------------------------------------
# Dense polynomials
# --------------------------------------------------------------------------

def _parity_of(coeffs) -> str:
    if all(c == 0 for c in coeffs[1::2]):
        return EVEN
    if all(c == 0 for c in coeffs[0::2]):
        return ODD
    return NONE


@dataclass(frozen=True)
class Poly:
    """Dense polynomial, ``coeffs[i]`` multiplies ``x**i``."""

    coeffs: tuple
    prec: int = DEFAULT_PREC
    parity: str = NONE

    def __post_init__(self):
        ctx = context(self.prec)
        cs = [ctx.convert(c) for c in self.coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [ctx.zero]
        object.__setattr__(self, "coeffs", tuple(cs))
        if self.parity not in (EVEN, ODD, NONE):
            raise ParameterError(f"bad parity tag {self.parity!r}")
        if self.parity != NONE:
            skip = 1 if self.parity == EVEN else 0
            if any(c != 0 for c in cs[skip::2]):
                raise ParameterError(f"coefficients contradict parity tag {self.parity}")

    @classmethod
    def monomial(cls, n: int, prec: int = DEFAULT_PREC) -> Poly:
        ctx = context(prec)
        return cls((ctx.zero,) * n + (ctx.one,), prec, EVEN if n % 2 == 0 else ODD)

    @classmethod
    def from_coeffs(cls, coeffs, prec: int = DEFAULT_PREC) -> Poly:
        """Build and infer the parity tag from exact zeros."""
        ctx = context(prec)
        cs = [ctx.convert(c) for c in coeffs]
        return cls(tuple(cs), prec, _parity_of(cs) if len(cs) > 1 else EVEN)

    @property
    def degree(self) -> int:
        if len(self.coeffs) == 1 and self.coeffs[0] == 0:
            return -1
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return context(self.prec).zero

    def _combine(self, other: Poly, sign_: int) -> Poly:
        ctx = context(self.prec)
        m = max(len(self.coeffs), len(other.coeffs))
        cs = []
        for i in range(m):
            b = ctx.convert(other[i])
            cs.append(self[i] + b if sign_ > 0 else self[i] - b)
        parity = self.parity if self.parity == other.parity else NONE
        if parity == NONE:
            parity = _parity_of(cs) if len(cs) > 1 else EVEN
        return Poly(tuple(cs), self.prec, parity)

    def __add__(self, other: Poly) -> Poly:
        return self._combine(other, 1)

    def __sub__(self, other: Poly) -> Poly:
        return self._combine(other, -1)

    def scale(self, s) -> Poly:
        ctx = context(self.prec)
        s = ctx.convert(s)
        return Poly(tuple(c * s for c in self.coeffs), self.prec, self.parity)

    def mul_x(self) -> Poly:
        ctx = context(self.prec)
        flip = {EVEN: ODD, ODD: EVEN, NONE: NONE}[self.parity]
        return Poly((ctx.zero,) + self.coeffs, self.prec, flip)

    def mul_x2(self) -> Poly:
        ctx = context(self.prec)
        return Poly((ctx.zero, ctx.zero) + self.coeffs, self.prec, self.parity)

    def derivative(self) -> Poly:
        ctx = context(self.prec)
        cs = [i * c for i, c in enumerate(self.coeffs)][1:] or [ctx.zero]
        flip = {EVEN: ODD, ODD: EVEN, NONE: NONE}[self.parity]
        return Poly(tuple(cs), self.prec, flip)

    def max_abs_coeff(self):
        return max(abs(c) for c in self.coeffs)

    def __call__(self, x):
        return poly_eval(self, x)


def poly_eval(p: Poly, x):
    """Horner evaluation at a real or complex point, in ``p.prec`` bits."""
    ctx = context(p.prec)
    x = ctx.convert(x)
    acc = ctx.zero
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


# --------------------------------------------------------------------------
# Symmetric tridiagonal eigenvalues (implicit-shift QL)
# --------------------------------------------------------------------------

def symtridiag_eigen(diag: Sequence, offdiag: Sequence, tol=None,
                     prec: int = DEFAULT_PREC, max_iter: int = 60) -> list:
    """Eigenvalues of a real symmetric tridiagonal matrix, ascending.

    Implicit-shift QL with Wilkinson-type shifts. An off-diagonal entry is
    dropped once it is negligible against its diagonal neighbours or below
    ``tol / 4``; by Weyl's inequality every returned eigenvalue is then within
    ``tol`` (or a few ulps) of the exact one.
    """
    ctx = context(prec)
    n = len(diag)
    if n == 0:
        return []
    if len(offdiag) != n - 1:
        raise ParameterError("offdiag must have exactly len(diag) - 1 entries")
    d = [ctx.convert(v) for v in diag]
    e = [ctx.convert(v) for v in offdiag] + [ctx.zero]
    small = ctx.ldexp(ctx.one, 2 - prec)
    floor = ctx.convert(tol) / 4 if tol is not None else ctx.zero

    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= small * dd or abs(e[m]) <= floor:
                    break
                m += 1
            if m == l:
                break
            if it >= max_iter:
                raise IterationError(f"QL iteration did not converge for eigenvalue {l}", index=l)
            it += 1
            g = (d[l + 1] - d[l]) / (2 * e[l])
            r = ctx.hypot(g, 1)
            g = d[m] - d[l] + e[l] / (g + (r if g >= 0 else -r))
            s = c = ctx.one
            p = ctx.zero
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = ctx.hypot(f, g)
                e[i + 1] = r
                if r == 0:
                    d[i + 1] -= p
                    e[m] = ctx.zero
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = ctx.zero
    return sorted(d)
