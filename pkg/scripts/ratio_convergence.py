"""Ratio P_n(n^{1/4} x) / Q_n(n^{1/4} x) against its limit as n grows.

    python scripts/ratio_convergence.py --lambdas 1,1 --x 1.5,3 --ns 16,32,64,128,256
"""
import argparse
from dataclasses import dataclass

from freud_sobolev.asymptotics import empirical_ratio
from freud_sobolev.freud import freud_table
from freud_sobolev.sobolev import SobolevParams, build_table, sobolev_fast, uvarov_table, with_connection


@dataclass
class Config:
    lambdas: tuple = ("1",)
    xs: tuple = ("1.5",)
    ns: tuple = (16, 32, 64, 128, 256)
    prec: int = 256


def table_for(cfg: Config, F):
    params = SobolevParams(cfg.lambdas)
    N = max(cfg.ns)
    if params.r == 0:
        return sobolev_fast(N, params.lambdas[0], F)
    if params.r == 1:
        return with_connection(uvarov_table(N, params, F), F)
    return build_table(N, params, F, cfg.prec)  # Gram-Schmidt; keep N small


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lambdas", default="1")
    ap.add_argument("--x", default="1.5")
    ap.add_argument("--ns", default="16,32,64,128,256")
    ap.add_argument("--prec", type=int, default=256)
    a = ap.parse_args(argv)
    cfg = Config(tuple(a.lambdas.split(",")), tuple(a.x.split(",")),
                 tuple(int(n) for n in a.ns.split(",")), a.prec)
    F = freud_table(max(cfg.ns) + 8, cfg.prec)
    st = table_for(cfg, F)
    print(f"{'x':>6} {'n':>5} {'|ratio - 1|':>14}")
    for x in cfg.xs:
        for n in cfg.ns:
            s = empirical_ratio(n, x, st, F)
            print(f"{x:>6} {n:>5} {float(s.abs_error):>14.6e}")


if __name__ == "__main__":
    main()
