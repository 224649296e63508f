"""Second icosahedron of the cubics x3 (a(phi^4 x1^2 + x2^2 - phi^2 x3^2) + b x1 x2).

Runs the search over several b for fixed a, including b = +-2 a phi and the
exceptional ratios b = +-2 a phi^2 (b^2 = 4 a^2 phi^4), and prints the count
and the distance of each icosahedron found to the standard one and to the
predicted rotation about e3.

    python scripts/conic_family.py
"""

import argparse
import math

import numpy as np

from icosaharm.icosa import conic_family_cubic, second_icosahedron_angle, z_rotation
from icosaharm.invariant import j_invariant
from icosaharm.search import UNIT_AXES, axis_set_distance, find_icosahedra

PHI = (1 + math.sqrt(5)) / 2


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--a", type=float, default=1.0)
    args = ap.parse_args()
    a = args.a
    bs = [0.0, 0.5, 1.0, -1.0, 3.0, 2 * PHI * a, -2 * PHI * a, 2 * PHI**2 * a, -2 * PHI**2 * a, 2 * PHI**2 * a + 1e-3]
    for b in bs:
        f = conic_family_cubic(a, b)
        out = find_icosahedra(f)
        rep = j_invariant(f)
        theta = second_icosahedron_angle(a, b)
        sols = out.family.samples if out.family is not None else out.icosahedra
        target = UNIT_AXES @ z_rotation(float(theta)).T
        found = ", ".join(
            f"(std {axis_set_distance(s.axes, UNIT_AXES):.1e}, rot {axis_set_distance(s.axes, target):.1e})" for s in sols[:4]
        )
        print(f"b={b:+.6f}  count={out.count!s:<6} sign J={rep.sign:+d} sign K={rep.sign_K:+d}  theta={float(theta):+.6f}  {found}")


if __name__ == "__main__":
    main()
