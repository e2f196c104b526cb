"""Size of normalized reduced instances against the input size and the stated bound.

    python3 scripts/normalization_blowup.py --n-max 12
"""

import argparse
from dataclasses import dataclass

from alpreduce.alp_model import UNIT_ALPHABET, coefficient_alphabet
from alpreduce.instance import generate_planted
from alpreduce.normalizer import normalize, size_bound
from alpreduce.reducer import reduce


@dataclass
class BlowupConfig:
    n_max: int = 12
    m: int = 4
    seed: int = 0


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n-max", type=int, default=BlowupConfig.n_max)
    p.add_argument("--m", type=int, default=BlowupConfig.m)
    p.add_argument("--seed", type=int, default=BlowupConfig.seed)
    cfg = BlowupConfig(**vars(p.parse_args()))

    print(f"{'N':>3} {'cons in':>8} {'cons out':>9} {'vars in':>8} {'vars out':>9} {'bound':>7} {'unit':>5}")
    for n in range(1, cfg.n_max + 1):
        inst = reduce(generate_planted(n, cfg.m, cfg.seed + n)[0])
        res = normalize(inst)
        out = res.instance
        unit = coefficient_alphabet(out) <= UNIT_ALPHABET
        print(
            f"{n:>3} {len(inst.all_constraints()):>8} {len(out.constraints):>9} "
            f"{len(inst.variables):>8} {len(out.variables):>9} {size_bound(inst):>7} {str(unit):>5}"
        )


if __name__ == "__main__":
    main()
