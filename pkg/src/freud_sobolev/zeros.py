"""Certified real zeros and interlacing verdicts.

A zero is *certified* when the polynomial changes sign across
``[z - radius, z + radius]`` (or vanishes exactly at ``z``, radius 0).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import ParameterError
from .freud import FreudTable, eval_P, jacobi_offdiag
from .numerics import context, poly_eval, sign, symtridiag_eigen
from .report import VerifyReport
from .sobolev import (LAMBDA2_ZERO, SobolevTable, freud_for, q_eval_fast, sobolev_inner,
                      uvarov_eval)

PASS, FAIL, DEGENERATE = "pass", "fail", "degenerate"
DEGENERATE_FACTOR = 100


@dataclass(frozen=True)
class Interlacing:
    """Comparison of two ascending positive zero lists.

    ``pairs[k]`` applies the orientation ``p_k < q_k < p_{k+1}`` (last one:
    ``q_m > p_m``); ``strict`` is plain alternation in either orientation.
    """

    verdict: str
    strict: bool
    order: str | None
    outer_beyond: bool | None
    pairs: tuple


@dataclass(frozen=True)
class ZeroReport:
    n: int
    family: str
    zeros: tuple
    radii: tuple
    all_real: bool
    found: int
    reference: tuple | None = None
    interlace: Interlacing | None = None
    notes: tuple = field(default=())

    def positive(self) -> list:
        return [z for z, r in zip(self.zeros, self.radii) if z > r]


def refine_root(f, lo, hi, tol, flo=None, fhi=None, max_iter=500):
    """Shrink a sign-change bracket until its half-width is at most ``tol``.

    Regula falsi guesses are tested at ``x -/+ tol/2``; when the
    two probes straddle the root the bracket is returned at once. Bisection
    steps keep the worst case linear.
    """
    flo = f(lo) if flo is None else flo
    fhi = f(hi) if fhi is None else fhi
    if sign(flo) == 0:
        return lo, lo - lo
    if sign(fhi) == 0:
        return hi, hi - hi
    if sign(flo) == sign(fhi):
        raise ParameterError("refine_root needs a sign change")
    half = tol / 2
    stale = 0
    for _ in range(max_iter):
        width = hi - lo
        if width <= 2 * tol:
            break
        if stale >= 2:
            x = (lo + hi) / 2
            stale = 0
        else:
            x = (lo * fhi - hi * flo) / (fhi - flo)
        x = min(max(x, lo + half), hi - half)
        a, b = x - half, x + half
        fa, fb = f(a), f(b)
        if sign(fa) == 0:
            return a, a - a
        if sign(fb) == 0:
            return b, b - b
        if sign(fa) != sign(fb):
            return x, half
        # both probes on one side of the root: each one moves an end
        if sign(fa) == sign(flo):
            lo, flo = b, fb
        else:
            hi, fhi = a, fa
        stale = stale + 1 if (hi - lo) > width / 2 else 0
    return (lo + hi) / 2, (hi - lo) / 2


def _default_tol(prec):
    ctx = context(prec)
    return ctx.ldexp(ctx.one, -(prec * 2) // 5)


def _sweep(f, grid, tol):
    """Certified zeros from sign changes of ``f`` on an ascending grid."""
    vals = [(x, f(x)) for x in grid]
    zeros = []
    last = None  # last nonzero sample
    for x, v in vals:
        s = sign(v)
        if s == 0:
            zeros.append((x, x - x))
            last = None
            continue
        if last is not None and sign(last[1]) != s:
            zeros.append(refine_root(f, last[0], x, tol, last[1], v))
        last = (x, v)
    return zeros


def _certified(zs, n, prec):
    zs = sorted(zs, key=lambda t: t[0])
    ctx = context(prec)
    return ZeroReport(n=n, family="", zeros=tuple(z for z, _ in zs), radii=tuple(ctx.convert(r) for _, r in zs),
                      all_real=len(zs) == n, found=len(zs))


@lru_cache(maxsize=512)
def _zeros_P_cached(freud: FreudTable, n: int, tol):
    ctx = context(freud.prec)
    if n == 0:
        return ZeroReport(n=0, family="P", zeros=(), radii=(), all_real=True, found=0)
    eig = symtridiag_eigen([ctx.zero] * n, jacobi_offdiag(freud, n), prec=freud.prec)

    def f(x):
        return eval_P(freud, n, x)

    out = []
    for i, z in enumerate(eig):
        if n % 2 == 1 and i == n // 2 and f(ctx.zero) == 0:
            out.append((ctx.zero, ctx.zero))
            continue
        lo = (eig[i - 1] + z) / 2 if i > 0 else z - 1
        hi = (z + eig[i + 1]) / 2 if i + 1 < n else z + 1
        # tight bracket first; widen only if the eigenvalue is off by more than tol
        r = tol
        while True:
            a, b = max(z - r, lo), min(z + r, hi)
            fa, fb = f(a), f(b)
            if sign(fa) != sign(fb) or sign(fa) == 0 or sign(fb) == 0:
                break
            if a == lo and b == hi:
                raise ParameterError(f"no sign change around eigenvalue {i} of P_{n}")
            r *= 16
        out.append(refine_root(f, a, b, tol, fa, fb))
    rep = _certified(out, n, freud.prec)
    return ZeroReport(n=n, family="P", zeros=rep.zeros, radii=rep.radii, all_real=True, found=n)


def zeros_P(freud: FreudTable, n: int, tol=None) -> ZeroReport:
    """Jacobi-matrix eigenvalues, each certified by a sign change of ``P_n``."""
    freud.require(max(n - 1, 0), "P index")
    ctx = context(freud.prec)
    tol = _default_tol(freud.prec) if tol is None else ctx.convert(tol)
    return _zeros_P_cached(freud, n, tol)


def q_evaluator(st: SobolevTable, n: int, freud: FreudTable | None = None):
    """Callable ``x -> Q_n(x)`` using the best representation available."""
    if st.Q is not None and n <= st.N:
        q = st.Q[n]
        return lambda x: poly_eval(q, x)
    if freud is None:
        raise ParameterError("fast-path tables need the Freud table for evaluation")
    if st.source == "uvarov":
        return lambda x: uvarov_eval(n, x, st, freud)
    if st.conn is not None and st.conn.case == LAMBDA2_ZERO:
        return lambda x: q_eval_fast(n, x, st.conn, freud)
    raise ParameterError("table cannot evaluate Q_n")


def zeros_Q(st: SobolevTable, n: int, tol=None, freud: FreudTable | None = None) -> ZeroReport:
    """Real zeros of ``Q_n`` bracketed by the zeros of ``P_{n-1}, P_n, P_{n+1}``.

    When fewer than ``n`` sign changes turn up, the grid is enriched with the
    real parts of all roots from a simultaneous (Durand-Kerner) iteration
    and swept again. A shortfall after that is reported, not raised.
    """
    if n > st.N and st.Q is not None and st.source == "gram_schmidt":
        raise ParameterError(f"Q_{n} not in table (N={st.N})")
    freud = freud_for(st, freud, n)
    ctx = context(st.prec)
    tol = _default_tol(st.prec) if tol is None else ctx.convert(tol)
    if n == 0:
        return ZeroReport(n=0, family="Q", zeros=(), radii=(), all_real=True, found=0)
    f = q_evaluator(st, n, freud)
    pts = set()
    for m in (n - 1, n, n + 1):
        if m >= 1:
            pts.update(zeros_P(freud, m, tol).zeros)
    edge = max(abs(p) for p in pts) + 1 if pts else ctx.one
    pts.update([-edge, edge])
    if n % 2 == 1:
        pts.add(ctx.zero)
    grid = sorted(pts)
    found = _sweep(f, grid, tol)
    notes = []
    if len(found) < n and st.Q is not None:
        roots = ctx.polyroots(list(reversed(st.Q[n].coeffs)), maxsteps=400, extraprec=st.prec)
        extra = sorted({ctx.re(r) for r in roots} | set(grid))
        mids = [(extra[i] + extra[i + 1]) / 2 for i in range(len(extra) - 1)]
        grid = sorted(set(extra) | set(mids))
        found = _sweep(f, grid, tol)
        notes.append("companion fallback sweep used")
    rep = _certified(found, n, st.prec)
    return ZeroReport(n=n, family="Q", zeros=rep.zeros, radii=rep.radii, all_real=rep.all_real,
                      found=rep.found, notes=tuple(notes))


def strictly_alternate(xs, ys) -> bool:
    """True when the merged ascending sequence alternates between the lists."""
    merged = sorted([(x, 0) for x in xs] + [(y, 1) for y in ys], key=lambda t: t[0])
    for (u, fu), (v, fv) in zip(merged, merged[1:]):
        if fu == fv or not u < v:
            return False
    return True


def compare_positive(qs, ps, tol) -> Interlacing:
    """Interlacing verdict for positive zeros ``qs`` (Q) against ``ps`` (P)."""
    band = DEGENERATE_FACTOR * tol
    if len(qs) == len(ps) and all(abs(q - p) <= band for q, p in zip(qs, ps)):
        return Interlacing(DEGENERATE, False, None, None, tuple(DEGENERATE for _ in qs))
    pairs = []
    m = len(ps)
    for k, q in enumerate(qs):
        if k < m and abs(q - ps[k]) <= band:
            pairs.append(DEGENERATE)
            continue
        lower_ok = k < m and q > ps[k]
        upper_ok = q < ps[k + 1] if k + 1 < m else True
        pairs.append(PASS if lower_ok and upper_ok else FAIL)
    strict = len(qs) == len(ps) and strictly_alternate(qs, ps)
    order = None
    if qs and ps:
        order = "Q-first" if qs[0] < ps[0] else "P-first"
    outer = bool(qs and ps and qs[-1] > ps[-1])
    return Interlacing(PASS if strict else FAIL, strict, order, outer, tuple(pairs))


def interlacing_report(st: SobolevTable, freud: FreudTable, n: int, tol=None) -> ZeroReport:
    """Positive zeros of ``Q_n`` against those of ``P_n``."""
    if n < 3:
        raise ParameterError("interlacing is examined for n >= 3")
    freud = freud_for(st, freud, n)
    ctx = context(st.prec)
    tol = _default_tol(st.prec) if tol is None else ctx.convert(tol)
    q = zeros_Q(st, n, tol, freud)
    p = zeros_P(freud, n, tol)
    verdict = compare_positive(q.positive(), p.positive(), tol)
    return ZeroReport(n=n, family="Q", zeros=q.zeros, radii=q.radii, all_real=q.all_real, found=q.found,
                      reference=p.zeros, interlace=verdict, notes=q.notes)


def normalized_x2_recurrence_check(st: SobolevTable, nmax: int, tol=1e-20,
                                   freud: FreudTable | None = None) -> VerifyReport:
    """Three-term ``x^2`` recurrence of the unit-norm ``Qhat_n = Q_n / sqrt(khat_n)``.

    Also records whether the zeros of ``Qhat_n`` and ``Qhat_{n-2}`` alternate.
    """
    if st.Q is None:
        raise ParameterError("needs coefficient vectors (Gram-Schmidt table)")
    if st.params.r > 1:
        # x^2 is self-adjoint for the Sobolev product only while r <= 1
        raise ParameterError("the x^2 recurrence needs at most first derivatives in the product")
    ctx = context(st.prec)
    tol = ctx.convert(tol)
    rep = VerifyReport(title=f"normalized x^2 recurrence lambdas={list(st.params.lambdas)}")
    Qh = [st.Q[n].scale(1 / ctx.sqrt(st.khat[n])) for n in range(st.N + 1)]
    A = {}
    for n in range(0, min(nmax, st.N - 2) + 1):
        x2 = Qh[n].mul_x2()
        A[n] = sobolev_inner(x2, Qh[n + 2], st.params)
        B = sobolev_inner(x2, Qh[n], st.params)
        terms = [Qh[n + 2].scale(A[n]), Qh[n].scale(B)]
        if n >= 2:
            terms.append(Qh[n - 2].scale(A[n - 2]))
        rhs = terms[0]
        for t in terms[1:]:
            rhs = rhs + t
        scale = max([x2.max_abs_coeff()] + [t.max_abs_coeff() for t in terms])
        rep.add("x2_recurrence.residual", n, (x2 - rhs).max_abs_coeff() / scale, tol)
        sym = sobolev_inner(Qh[n + 2].mul_x2(), Qh[n], st.params)
        rep.add("x2_recurrence.symmetry", n, abs(sym - A[n]) / abs(A[n]), tol)
    freud = freud_for(st, freud, min(nmax, st.N))
    ztol = _default_tol(st.prec)
    for n in range(3, min(nmax, st.N) + 1):
        a = zeros_Q(st, n, ztol, freud)
        b = zeros_Q(st, n - 2, ztol, freud)
        ok = a.all_real and b.all_real and strictly_alternate(a.positive(), b.positive())
        rep.add("x2_recurrence.zeros_interlace_n_vs_n-2", n, ctx.zero if ok else ctx.one, ctx.mpf(0.5))
    return rep
