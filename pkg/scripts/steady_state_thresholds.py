"""K0 reported by the Q(K) simplex on reduced and normalized instances.

Prints the threshold, pivot count and whether the finite run at K0 + 1 agrees.

    python3 scripts/steady_state_thresholds.py --count 20
"""

import argparse
import random

from alpreduce.alp_simplex import eval_lp_at, phase1_feasible
from alpreduce.instance import generate_random
from alpreduce.normalizer import normalize
from alpreduce.reducer import reduce


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    rng = random.Random(args.seed)
    print("n  m  form        feasible  K0      pivots  agree@K0+1")
    for _ in range(args.count):
        n, m = rng.randint(1, args.n_max), rng.randint(1, 4)
        inst = reduce(generate_random(n, m, rng.randrange(10**9)))
        for label, alp in (("reduced", inst), ("normalized", normalize(inst).instance)):
            res = phase1_feasible(alp)
            agree = eval_lp_at(alp, res.threshold + 1).feasible == res.feasible
            print(f"{n:<2} {m:<2} {label:<11} {str(res.feasible):<9} {str(res.threshold):<7} {res.pivots:<7} {agree}")


if __name__ == "__main__":
    main()
