"""Integrate the spring-pendulum and record a Poincare section.

Prints energy drift, the number of crossings and, optionally, a scatter plot
of (coordinate, momentum) pairs at the crossings.
"""

import argparse
import csv
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from liouvillian.numeric import poincare_section, simulate
from liouvillian.wilberforce import STATE_FIELDS, DimensionlessParams


@dataclass
class SectionConfig:
    b: Fraction = Fraction(1)
    c: Fraction = Fraction(1)
    f: Fraction = Fraction(1, 2)
    state: tuple[float, ...] = (1.1, 0.3, 0.2, 0.0, 0.0, 0.0)
    t_end: float = 500.0
    dt: float = 1e-2
    coordinate: str = "theta"
    value: float = 0.0
    direction: int = 1


def run(cfg: SectionConfig):
    traj = simulate(DimensionlessParams(cfg.b, cfg.c, cfg.f), cfg.state, cfg.t_end, cfg.dt)
    return traj, poincare_section(traj, cfg.coordinate, cfg.value, cfg.direction)


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--b", type=Fraction, default=Fraction(1))
    p.add_argument("--c", type=Fraction, default=Fraction(1))
    p.add_argument("--f", type=Fraction, default=Fraction(1, 2))
    p.add_argument("--state", type=float, nargs=6, default=list(SectionConfig.state))
    p.add_argument("--t-end", type=float, default=500.0)
    p.add_argument("--dt", type=float, default=1e-2)
    p.add_argument("--coordinate", default="theta", choices=STATE_FIELDS)
    p.add_argument("--direction", type=int, default=1, choices=(-1, 0, 1))
    p.add_argument("--out", help="CSV of section points")
    p.add_argument("--plot", help="PNG scatter of rho vs P_rho at the crossings (needs matplotlib)")
    args = p.parse_args()
    cfg = SectionConfig(args.b, args.c, args.f, tuple(args.state), args.t_end, args.dt,
                        args.coordinate, 0.0, args.direction)
    traj, pts = run(cfg)
    print(f"steps={len(traj.times) - 1} energy_drift={traj.energy_drift():.3e} crossings={len(pts)}")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["t", *STATE_FIELDS])
            for pt in pts:
                w.writerow([repr(pt.t), *(repr(float(v)) for v in pt.state)])
    if args.plot and pts:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        arr = np.array([pt.state for pt in pts])
        plt.figure(figsize=(5, 5))
        plt.scatter(arr[:, 0], arr[:, 3], s=2)
        plt.xlabel("rho")
        plt.ylabel("P_rho")
        plt.title(f"section {cfg.coordinate} = {cfg.value}")
        plt.savefig(args.plot, dpi=120)


if __name__ == "__main__":
    main()
