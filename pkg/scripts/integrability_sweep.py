"""Grid sweep of (b, c, f, B) through the integrability pipeline, written as CSV."""

import argparse
import csv
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from liouvillian.wilberforce import sweep


@dataclass
class SweepConfig:
    b: list[Fraction] = field(default_factory=lambda: [Fraction(1, 2), Fraction(1), Fraction(2)])
    c: list[Fraction] = field(default_factory=lambda: [Fraction(0)])
    f: list[Fraction] = field(default_factory=lambda: [Fraction(1, 4), Fraction(1, 2), Fraction(1)])
    B: list[Fraction] = field(default_factory=lambda: [Fraction(1, 2), Fraction(1)])
    jobs: int = 1


def run(cfg: SweepConfig, out) -> dict[str, int]:
    rows = list(product(cfg.b, cfg.c, cfg.f, cfg.B))
    writer = csv.writer(out)
    writer.writerow(["b", "c", "f", "B", "conclusion", "omega2_sq"])
    tally: dict[str, int] = {}
    for row, res in zip(rows, sweep(rows, cfg.jobs)):
        if isinstance(res, Exception):
            label, w2 = type(res).__name__, ""
        else:
            label, w2 = res.conclusion, str(res.modes.omega2_sq)
        tally[label] = tally.get(label, 0) + 1
        writer.writerow([str(v) for v in row] + [label, w2])
    return tally


def _fractions(text: str) -> list[Fraction]:
    return [Fraction(t) for t in text.split(",")]


def main():
    p = argparse.ArgumentParser(description=__doc__)
    for name in ("b", "c", "f", "B"):
        p.add_argument(f"--{name}", type=_fractions, default=getattr(SweepConfig(), name))
    p.add_argument("--jobs", type=int, default=1)
    args = p.parse_args()
    cfg = SweepConfig(args.b, args.c, args.f, args.B, args.jobs)
    tally = run(cfg, sys.stdout)
    print("# " + ", ".join(f"{k}={v}" for k, v in sorted(tally.items())), file=sys.stderr)


if __name__ == "__main__":
    main()
