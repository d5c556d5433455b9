"""Command-line front end.

Every number is written as a decimal string with at least ``0.3 * prec_bits``
significant digits; missing entries become empty CSV cells or JSON nulls.
Output is deterministic: no timestamps unless ``SOURCE_DATE_EPOCH`` is set.

Exit codes: 0 success, 2 bad configuration, 3 precision cap reached,
4 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict, dataclass, field

import mpmath

from . import __version__
from .asymptotics import (DEFAULT_NS, PREDICTION_NS, empirical_ratio, limit_diagnostics,
                          prediction_experiment)
from .errors import DomainError, ParameterError, PoleError, PrecisionEscalation, RangeError
from .freud import BOTH, FORWARD, NEWTON, freud_table, string_forward, string_newton, freud_norms
from .numerics import MIN_PREC, context, decimal_digits, to_decimal
from .report import ASSERT, VerifyReport, relative
from .sobolev import (LAMBDA2_POS, SobolevParams, build_table, connection_pos, freud_for,
                      identity_residuals, orthogonality_defect, sobolev_fast,
                      uvarov_table, with_connection)
from .zeros import interlacing_report, normalized_x2_recurrence_check, zeros_P, zeros_Q

COMMANDS = ("coeffs", "sobolev", "zeros", "limits", "ratio", "verify", "predict")
EXIT_OK, EXIT_CONFIG, EXIT_CAP, EXIT_VERIFY = 0, 2, 3, 4
GS_LIMIT = 64  # above this, value/derivative masses use the O(N) routes


@dataclass
class RunConfig:
    command: str
    n_max: int = 30
    lambdas: list = field(default_factory=lambda: ["1"])
    prec_bits: int = 256
    method: str = NEWTON
    format: str = "json"
    out_path: str | None = None
    tol: str = "1e-20"
    x: list = field(default_factory=list)
    n: list = field(default_factory=list)
    r: int | None = None

    def validate(self):
        if self.command not in COMMANDS:
            raise ParameterError(f"unknown command {self.command!r}")
        if self.n_max < 1:
            raise ParameterError("--n-max must be >= 1")
        if self.prec_bits < MIN_PREC:
            raise ParameterError(f"--prec-bits must be >= {MIN_PREC}")
        if self.method not in (FORWARD, NEWTON, BOTH):
            raise ParameterError(f"unknown method {self.method!r}")
        if self.format not in ("csv", "json"):
            raise ParameterError(f"unknown format {self.format!r}")
        SobolevParams(tuple(self.lambdas))
        try:
            t = mpmath.mpf(self.tol)
        except (ValueError, TypeError) as exc:
            raise ParameterError(f"bad --tol {self.tol!r}") from exc
        if not t > 0:
            raise ParameterError("--tol must be positive")
        if any(int(v) < 1 for v in self.n):
            raise ParameterError("--n entries must be >= 1")
        return self

    @property
    def params(self) -> SobolevParams:
        return SobolevParams(tuple(self.lambdas))


def _split(text):
    return [t.strip() for t in text.split(",") if t.strip()] if text else []


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="freud-sobolev",
                                 description="Freud-weight exp(-x^4) and Sobolev orthogonal polynomials.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--n-max", type=int, default=30)
    ap.add_argument("--lambdas", default=None, help="comma list lambda_0,lambda_1,... (masses on f, f', ...)")
    ap.add_argument("--prec-bits", type=int, default=256)
    ap.add_argument("--method", default=NEWTON, choices=(FORWARD, NEWTON, BOTH))
    ap.add_argument("--tol", default="1e-20")
    ap.add_argument("--format", default="json", choices=("csv", "json"))
    ap.add_argument("--out", default=None)
    ap.add_argument("--x", default=None, help="comma list of evaluation points (complex as 2+0.5j)")
    ap.add_argument("--n", default=None, help="comma list of indices")
    ap.add_argument("--r", type=int, default=None)
    return ap


def config_from_args(argv=None) -> RunConfig:
    a = build_parser().parse_args(argv)
    lambdas = _split(a.lambdas)
    if not lambdas and a.command == "predict":
        lambdas = ["1"] * ((a.r if a.r is not None else 2) + 1)
    elif not lambdas:
        lambdas = ["1"]
    return RunConfig(command=a.command, n_max=a.n_max, lambdas=lambdas, prec_bits=a.prec_bits,
                     method=a.method, format=a.format, out_path=a.out, tol=a.tol,
                     x=_split(a.x), n=[int(v) for v in _split(a.n)], r=a.r).validate()


# --------------------------------------------------------------------------
# serialization
# --------------------------------------------------------------------------

class Emitter:
    """Turns scalars into decimal strings at the run's precision."""

    def __init__(self, prec: int):
        self.prec = prec
        self.ctx = context(prec)

    def num(self, v):
        if v is None:
            return None
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, int):
            return str(v)
        v = self.ctx.convert(v)
        if isinstance(v, self.ctx.mpc):
            if v.imag == 0:
                return to_decimal(v.real, self.prec)
            im = to_decimal(abs(v.imag), self.prec)
            return f"{to_decimal(v.real, self.prec)}{'-' if v.imag < 0 else '+'}{im}j"
        return to_decimal(v, self.prec)


def _parse_point(ctx, text):
    try:
        return ctx.mpmathify(text)
    except (ValueError, TypeError) as exc:
        raise ParameterError(f"cannot parse point {text!r}") from exc


def render(cfg: RunConfig, rows: list, meta: dict) -> str:
    if cfg.format == "json":
        return json.dumps({"meta": meta, "rows": rows}, indent=2) + "\n"
    buf = io.StringIO()
    fields = list(rows[0].keys()) if rows else []
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(fields)
    for row in rows:
        w.writerow(["" if row[f] is None else row[f] for f in fields])
    return buf.getvalue()


def _meta(cfg: RunConfig, extra: dict | None = None) -> dict:
    meta = {"package": "freud-sobolev", "version": __version__, "config": asdict(cfg),
            "decimal_digits": decimal_digits(cfg.prec_bits)}
    stamp = os.environ.get("SOURCE_DATE_EPOCH")
    if stamp:
        meta["source_date_epoch"] = stamp
    if extra:
        meta.update(extra)
    return meta


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def _freud(cfg: RunConfig, N: int):
    return freud_table(N, cfg.prec_bits, NEWTON)


def cmd_coeffs(cfg: RunConfig, em: Emitter):
    N = cfg.n_max
    extra = {}
    if cfg.method == FORWARD:
        tab = freud_norms(string_forward(N, cfg.prec_bits))
        trusted = [n <= tab.trusted for n in range(N + 1)]
    else:
        tab = freud_norms(string_newton(N, cfg.prec_bits))
        trusted = [n <= tab.trusted for n in range(N + 1)]
        if cfg.method == BOTH:
            fw = string_forward(N, cfg.prec_bits, truncate=True)
            ctx = context(cfg.prec_bits)
            thresh = ctx.ldexp(ctx.one, -(cfg.prec_bits // 2))
            # Newton is primary; the forward run can only veto inside its certified prefix
            trusted = [t and (n > fw.trusted or relative(tab.c[n], fw.c[n]) <= thresh)
                       for n, t in enumerate(trusted)]
            extra["forward_certified_prefix"] = fw.trusted
    rows = [{"n": n, "c_n": em.num(tab.c[n]), "k_n": em.num(tab.k[n]),
             "residual": em.num(tab.residual[n]), "trusted": em.num(trusted[n])} for n in range(N + 1)]
    extra.update({"method": cfg.method, "trusted": min(tab.trusted, N)})
    return rows, extra, EXIT_OK


def _sobolev_table(cfg: RunConfig, N: int):
    """Gram-Schmidt up to ``GS_LIMIT``, O(N) routes beyond (r <= 1)."""
    params = cfg.params
    if N <= GS_LIMIT or params.r > 1:
        F = _freud(cfg, N + 4)
        st = build_table(N, params, F, cfg.prec_bits)
        return st, freud_for(st, F, N + 3)
    F = _freud(cfg, N + 4)
    if params.r == 0:
        return sobolev_fast(N, params.lambdas[0], F), F
    st = uvarov_table(N, params, F)
    return with_connection(st, F), F


def cmd_sobolev(cfg: RunConfig, em: Emitter):
    st, _ = _sobolev_table(cfg, cfg.n_max)
    conn = st.conn

    def get(seq, n):
        return seq[n] if seq is not None and n < len(seq) else None

    rows = []
    for n in range(st.N + 1):
        row = {"n": n, "khat_n": em.num(st.khat[n])}
        for name in ("a", "b", "alpha", "sigma", "delta"):
            row[f"{name}_n"] = em.num(get(getattr(conn, name), n)) if conn is not None else None
        rows.append(row)
    meta = {"case": st.params.case, "source": st.source, "table_prec": st.prec}
    if conn is not None and conn.case == LAMBDA2_POS:
        meta["a_indexing"] = "x P_{2n-1} = Q_{2n} + a_n Q_{2n-2}"
    return rows, meta, EXIT_OK


def cmd_zeros(cfg: RunConfig, em: Emitter):
    ns = cfg.n or [cfg.n_max]
    st, F = _sobolev_table(cfg, max(ns))
    ctx = context(st.prec)
    tol = ctx.mpf(cfg.tol)
    rows, verdicts = [], {}
    for n in ns:
        p = zeros_P(F, n, tol)
        q = interlacing_report(st, F, n, tol) if n >= 3 else zeros_Q(st, n, tol, F)
        il = q.interlace
        qpos = q.positive()
        for fam, rep in (("P", p), ("Q", q)):
            for i, (z, r) in enumerate(zip(rep.zeros, rep.radii)):
                pair = None
                if fam == "Q" and il is not None and z in qpos:
                    pair = il.pairs[qpos.index(z)]
                rows.append({"n": n, "family": fam, "k": i + 1, "zero": em.num(z), "radius": em.num(r),
                             "pair_verdict": pair})
        verdicts[str(n)] = {"all_real": q.all_real, "found": q.found,
                            "verdict": il.verdict if il else None, "order": il.order if il else None,
                            "outer_beyond": il.outer_beyond if il else None, "notes": list(q.notes)}
    return rows, {"interlacing": verdicts}, EXIT_OK


def cmd_limits(cfg: RunConfig, em: Emitter):
    ns = cfg.n or [n for n in (10, 50, 100, 250, 500, 1000) if n <= cfg.n_max] or [cfg.n_max]
    params = cfg.params
    if params.r > 1:
        raise ParameterError("limit constants are known for at most two masses")
    N = max(ns)
    F = _freud(cfg, N + 4)
    if params.r == 0:
        conn = sobolev_fast(N, params.lambdas[0], F).conn
    else:
        conn = connection_pos(uvarov_table(N, params, F), F)
    rows = []
    for d in limit_diagnostics(conn, F, ns):
        for (n, v), dev in zip(d.samples, d.deviations):
            rows.append({"name": d.name, "n": n, "value": em.num(v), "limit": em.num(d.limit),
                         "deviation": em.num(dev)})
    return rows, {"case": params.case}, EXIT_OK


def cmd_ratio(cfg: RunConfig, em: Emitter):
    ns = cfg.n or list(DEFAULT_NS)
    ctx = context(cfg.prec_bits)
    xs = [_parse_point(ctx, t) for t in (cfg.x or ["1.5"])]
    st, F = _sobolev_table(cfg, max(ns))
    rows = []
    for x in xs:
        for n in ns:
            s = empirical_ratio(n, x, st, F)
            rows.append({"n": n, "x": em.num(s.x), "empirical": em.num(s.empirical),
                         "target": em.num(s.target), "abs_error": em.num(s.abs_error)})
    return rows, {"ratio": "P_n(n^(1/4) x) / Q_n(n^(1/4) x)"}, EXIT_OK


def verify_suite(cfg: RunConfig) -> VerifyReport:
    """Identity residuals, orthogonality and (r <= 1) the normalized x^2 recurrence."""
    tol = cfg.tol
    st, F = _sobolev_table(cfg, cfg.n_max)
    rep = VerifyReport(title=f"verify lambdas={cfg.lambdas} n_max={cfg.n_max}")
    ctx = context(st.prec)
    if st.conn is not None:
        rep.extend(identity_residuals(st, st.conn, F, cfg.n_max, tol))
    if st.Q is not None:
        rep.add("orthogonality", None, orthogonality_defect(st), ctx.mpf(tol))
        if st.params.r <= 1 and st.N >= 2:
            rep.extend(normalized_x2_recurrence_check(st, min(cfg.n_max, 20), tol, F))
    return rep


def cmd_verify(cfg: RunConfig, em: Emitter):
    rep = verify_suite(cfg)
    rows = [{"check": c.name, "n": c.n, "residual": em.num(c.residual), "tol": em.num(c.tol),
             "kind": c.kind, "passed": em.num(c.passed)} for c in rep.checks]
    status = EXIT_OK if rep.passed else EXIT_VERIFY
    return rows, {"passed": rep.passed, "failures": len(rep.failures()), "notes": rep.notes}, status


def cmd_predict(cfg: RunConfig, em: Emitter):
    r = cfg.r if cfg.r is not None else cfg.params.r
    ns = cfg.n or list(PREDICTION_NS)
    xs = [_parse_point(context(cfg.prec_bits), t) for t in (cfg.x or ["1.5", "3"])]
    rep = prediction_experiment(r, cfg.params, ns, xs, cfg.prec_bits)
    rows = [{"check": c.name, "n": c.n, "value": em.num(c.residual), "kind": c.kind,
             "passed": em.num(c.passed) if c.kind == ASSERT else None, "note": c.note} for c in rep.checks]
    return rows, {"label": "conjecture", "notes": rep.notes, "trend_passed": rep.passed}, EXIT_OK


HANDLERS = {"coeffs": cmd_coeffs, "sobolev": cmd_sobolev, "zeros": cmd_zeros, "limits": cmd_limits,
            "ratio": cmd_ratio, "verify": cmd_verify, "predict": cmd_predict}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute ``cfg``; returns ``(exit status, rendered output)``."""
    em = Emitter(cfg.prec_bits)
    rows, extra, status = HANDLERS[cfg.command](cfg, em)
    text = render(cfg, rows, _meta(cfg, extra))
    if cfg.out_path:
        with open(cfg.out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return status, text


def main(argv=None) -> int:
    try:
        cfg = config_from_args(argv)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        status, text = run(cfg)
    except PrecisionEscalation as exc:
        print(f"precision escalation: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ParameterError, DomainError, RangeError, PoleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if not cfg.out_path:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
