"""Number of distinct icosahedra found against the number of multistart seeds.

    python scripts/start_saturation.py --cubics 10 --seed 0
"""

import argparse

from icosaharm.cli import random_harmonic
from icosaharm.search import SearchConfig, find_icosahedra


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cubics", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    starts = (16, 32, 64, 128, 256, 512, 1024)
    print("cubic seed  " + "  ".join(f"{s:>5}" for s in starts))
    for cs in range(args.seed, args.seed + args.cubics):
        f = random_harmonic(cs)
        row = []
        for n in starts:
            out = find_icosahedra(f, SearchConfig(starts=n, seed=args.seed))
            row.append(f"{out.count!s:>5}/{out.converged_count:<4}")
        print(f"{cs:>10}  " + "  ".join(row))
    print("entries: count / converged starts")


if __name__ == "__main__":
    main()
