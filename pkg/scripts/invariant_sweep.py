"""Compare the sign of J = 3a3 - 4a1a2 and of K = a3 - a1a2 with the icosahedron count.

    python scripts/invariant_sweep.py --n 300 --seed0 0
"""

import argparse
import time

from icosaharm.cli import random_harmonic
from icosaharm.invariant import j_invariant
from icosaharm.search import SearchConfig, find_icosahedra


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=300)
    ap.add_argument("--seed0", type=int, default=0)
    ap.add_argument("--search-seed", type=int, default=0)
    args = ap.parse_args()
    cfg = SearchConfig(seed=args.search_seed)
    table = {}
    t0 = time.perf_counter()
    for s in range(args.seed0, args.seed0 + args.n):
        f = random_harmonic(s)
        rep = j_invariant(f)
        count = find_icosahedra(f, cfg).count
        key = (rep.sign, rep.sign_K, count)
        table[key] = table.get(key, 0) + 1
    print(f"{args.n} random harmonic cubics, seeds {args.seed0}..{args.seed0 + args.n - 1}, {time.perf_counter() - t0:.0f}s")
    print("sign J  sign K  count   n")
    for (sj, sk, c), n in sorted(table.items(), key=str):
        print(f"{sj:>6}  {sk:>6}  {c!s:>5}  {n:>4}")
    wrong_j = sum(n for (sj, _, c), n in table.items() if c != (2 if sj > 0 else 0))
    wrong_k = sum(n for (_, sk, c), n in table.items() if c != (2 if sk > 0 else 0))
    print(f"'count = 2 iff invariant > 0' violations: J {wrong_j}, K {wrong_k}")


if __name__ == "__main__":
    main()
