"""Scaled connection coefficients against their limits, on a decade grid."""
import argparse
from dataclasses import dataclass

from freud_sobolev.asymptotics import limit_diagnostics
from freud_sobolev.freud import freud_table
from freud_sobolev.sobolev import SobolevParams, connection_pos, sobolev_fast, uvarov_table


@dataclass
class Config:
    lambdas: tuple = ("1",)
    ns: tuple = (10, 50, 100, 500, 1000)
    prec: int = 256


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lambdas", default="1", help="one value (value mass) or two (value, derivative)")
    ap.add_argument("--ns", default="10,50,100,500,1000")
    ap.add_argument("--prec", type=int, default=256)
    a = ap.parse_args(argv)
    cfg = Config(tuple(a.lambdas.split(",")), tuple(int(n) for n in a.ns.split(",")), a.prec)
    params = SobolevParams(cfg.lambdas)
    N = max(cfg.ns)
    F = freud_table(2 * N + 8, cfg.prec)
    if params.r == 0:
        conn = sobolev_fast(N, params.lambdas[0], F).conn
    else:
        # a_n uses Q_{2n}, so the table runs to 2N
        conn = connection_pos(uvarov_table(2 * N, params, F), F)
    for d in limit_diagnostics(conn, F, cfg.ns):
        print(f"{d.name}  limit {float(d.limit):.8f}")
        for (n, v), dev in zip(d.samples, d.deviations):
            print(f"  n={n:>5}  value {float(v):.8f}  deviation {float(dev):.3e}")


if __name__ == "__main__":
    main()
