"""Sweep random systems and record the smallest positive limit objective at a vertex.

When a system has no binary solution but the box polytope is nonempty, the limit
objective sum x(1-x) is bounded away from zero on the polytope.  This records how
small that gap gets as N grows, on systems built around a half-integral point.

    python3 scripts/sweep_min_positive.py --n-max 10 --per-size 40 > gap.csv
"""

import argparse
import csv
import random
import sys
from dataclasses import dataclass, asdict
from fractions import Fraction

from alpreduce.analyzer import decide
from alpreduce.instance import BinaryLinearSystem


def half_planted(n: int, m: int, rng: random.Random) -> BinaryLinearSystem:
    """Rows satisfied by a random point of {0, 1/2, 1}^N, so the polytope is never empty."""
    x = [Fraction(rng.randint(0, 2), 2) for _ in range(n)]
    rows, rhs = [], []
    while len(rows) < m:
        row = [rng.choice((-1, 0, 1)) for _ in range(n)]
        v = sum(a * xi for a, xi in zip(row, x))
        if v in (-1, 0, 1):
            rows.append(row)
            rhs.append(int(v))
    return BinaryLinearSystem(rows, rhs)


@dataclass
class SweepConfig:
    n_min: int = 2
    n_max: int = 10
    m_max: int = 6
    per_size: int = 40
    seed: int = 0


def run(cfg: SweepConfig, out):
    rng = random.Random(cfg.seed)
    w = csv.writer(out)
    w.writerow(["n", "instances", "false_nonempty", "smallest_gap", "smallest_gap_float", "disagreements"])
    for n in range(cfg.n_min, cfg.n_max + 1):
        gaps = []
        disagree = 0
        for _ in range(cfg.per_size):
            m = rng.randint(1, cfg.m_max)
            rep = decide(half_planted(n, m, rng))
            disagree += not rep.oracles_agree
            if rep.polytope_feasible and not rep.verdict:
                gaps.append(rep.polytope_min)
        g = min(gaps) if gaps else None
        w.writerow([n, cfg.per_size, len(gaps), g, f"{float(g):.4f}" if g is not None else "", disagree])
        out.flush()


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in asdict(SweepConfig()).items():
        p.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    cfg = SweepConfig(**vars(p.parse_args()))
    run(cfg, sys.stdout)


if __name__ == "__main__":
    main()
