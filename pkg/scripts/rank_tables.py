#!/usr/bin/env python3
"""Tabulate Witt ranks and the graded Johnson ranks of the standard subgroups.

Prints the Witt numbers for small alphabet sizes, then the computed rank and
torsion of the degree-c Johnson image for H, E, H1 and the full McCool group
M3, one line per degree with wall-clock timing.  Degree 4 for M3 evaluates a
few hundred commutators and takes a couple of minutes single-threaded.
"""

import argparse
import time
from dataclasses import dataclass

from magnuslab.freelie import witt_rank
from magnuslab.mccool import (
    graded_johnson_rank,
    m3_presentation,
    spec_e,
    spec_h,
    spec_h1,
)


@dataclass
class Config:
    max_degree: int = 3
    workers: int = 1
    skip_m3: bool = False


def parse_args() -> Config:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-degree", type=int, default=3, metavar="c",
                    help="largest degree to tabulate (default 3)")
    ap.add_argument("--workers", type=int, default=1, metavar="k",
                    help="worker processes for the row evaluations")
    ap.add_argument("--skip-m3", action="store_true",
                    help="skip the full McCool group (the slow column)")
    a = ap.parse_args()
    return Config(max_degree=a.max_degree, workers=a.workers, skip_m3=a.skip_m3)


def main() -> None:
    cfg = parse_args()
    degrees = range(1, cfg.max_degree + 1)

    print("Witt ranks (alphabet size m, degree c):")
    print(f"{'m/c':>4} " + " ".join(f"{c:>6}" for c in degrees))
    for m in (2, 3, 6):
        print(f"{m:>4} " + " ".join(f"{witt_rank(m, c):>6}" for c in degrees))
    print()

    specs = [spec_h(), spec_e(), spec_h1()]
    if not cfg.skip_m3:
        specs.append(m3_presentation()[0])
    for spec in specs:
        m = len(spec.gen_names)
        for c in degrees:
            t0 = time.perf_counter()
            rep = graded_johnson_rank(spec, c, workers=cfg.workers)
            dt = time.perf_counter() - t0
            tor = list(rep.torsion) if rep.torsion else "-"
            print(
                f"{spec.name:>4} c={c}: rank {rep.rank:>3}  torsion {tor}  "
                f"witt({m},{c}) = {witt_rank(m, c):>3}  [{dt:6.2f}s]"
            )
        print()


if __name__ == "__main__":
    main()
