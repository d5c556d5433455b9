"""Zero interlacing of Q_n against P_n for a range of even degrees.

Prints the alternation order and whether a Q-zero lies past the last P-zero.
"""
import argparse
from dataclasses import dataclass

from freud_sobolev.freud import freud_table
from freud_sobolev.sobolev import SobolevParams, build_table
from freud_sobolev.zeros import interlacing_report


@dataclass
class Config:
    lambdas: tuple = ("1",)
    n_max: int = 30
    prec: int = 256


def survey(cfg: Config):
    F = freud_table(max(cfg.n_max + 8, 64), cfg.prec)
    st = build_table(cfg.n_max, SobolevParams(cfg.lambdas), F, cfg.prec)
    for n in range(4, cfg.n_max + 1, 2):
        rep = interlacing_report(st, F, n)
        il = rep.interlace
        yield n, rep.all_real, il.verdict, il.order, il.outer_beyond, float(rep.zeros[-1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lambdas", default="1")
    ap.add_argument("--n-max", type=int, default=30)
    ap.add_argument("--prec", type=int, default=256)
    a = ap.parse_args(argv)
    cfg = Config(tuple(a.lambdas.split(",")), a.n_max, a.prec)
    print(f"{'n':>3} {'real':>5} {'verdict':>10} {'order':>8} {'beyond':>6} {'max Q-zero':>12}")
    for n, real, verdict, order, beyond, top in survey(cfg):
        print(f"{n:>3} {str(real):>5} {verdict:>10} {str(order):>8} {str(beyond):>6} {top:>12.6f}")


if __name__ == "__main__":
    main()
