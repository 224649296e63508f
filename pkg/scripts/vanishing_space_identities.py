"""Exact identities on the 4-dimensional space of cubics vanishing on the icosahedron.

Prints the appendix report: the moment-matrix constants, fitted sigma-expansions
of tr M^k, of 3 tau3 - 4 tau1 tau2, of tau1 tau2 - tau3, of J and of K, and the
verdict on each printed formula.

    python scripts/vanishing_space_identities.py --samples 16 --seed 1
"""

import argparse

from icosaharm.icosa import appendix_verify


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rep = appendix_verify(samples=args.samples, seed=args.seed)
    for line in rep.lines():
        print(line)


if __name__ == "__main__":
    main()
