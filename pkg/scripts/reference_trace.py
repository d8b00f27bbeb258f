"""Run the decision procedure on the reduced variational equation for one
(lambda, omega2^2) pair and print the full trace."""

import argparse
import time
from dataclasses import dataclass
from fractions import Fraction

from liouvillian.kovacic import kovacic
from liouvillian.report import kovacic_record, render_text
from liouvillian.wilberforce import VariationalParams, normal_variational_r


@dataclass
class TraceConfig:
    lam: Fraction = Fraction(1)
    omega2_sq: Fraction = Fraction(1)
    B: Fraction = Fraction(1)


def run(cfg: TraceConfig) -> dict:
    t0 = time.perf_counter()
    normal = normal_variational_r(VariationalParams(cfg.B, cfg.lam, cfg.omega2_sq))
    verdict = kovacic(normal)
    return kovacic_record(verdict, normal.r, time.perf_counter() - t0)


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--lam", type=Fraction, default=Fraction(1))
    p.add_argument("--omega2-sq", type=Fraction, default=Fraction(1))
    args = p.parse_args()
    print(render_text(run(TraceConfig(lam=args.lam, omega2_sq=args.omega2_sq))))


if __name__ == "__main__":
    main()
