"""Command line entry point ``icosaharm``.

Exit codes: 0 success, 2 bad input (parse errors, non-harmonic cubic),
3 a theorem inconsistency or a failed verification check.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from .io import CubicParseError, cubic_to_obj, parse_cubic, write_cubic
from .poly3 import Cubic, HarmonicCubic, standard_h_basis

EXIT_OK, EXIT_INPUT, EXIT_INCONSISTENT = 0, 2, 3


def _search_config(args):
    from .search import SearchConfig

    cfg = SearchConfig(seed=args.seed)
    if args.starts is not None:
        cfg.starts = args.starts
    if args.tol is not None:
        cfg.accept_tol = args.tol
    return cfg


def _load_harmonic(path: str) -> Cubic:
    f = parse_cubic(path)
    if not f.is_harmonic():
        raise CubicParseError(f"cubic is not harmonic; Laplacian coefficients {list(map(str, f.laplacian()))}", path)
    if f.is_zero():
        raise CubicParseError("zero cubic", path)
    return f


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2, default=str)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_classify(args) -> int:
    from .invariant import classify

    f = _load_harmonic(args.file)
    rep = classify(f, _search_config(args), invariant=args.invariant)
    obj = rep.to_json()
    obj["seed"] = args.seed
    _emit(obj, args.output)
    return EXIT_INCONSISTENT if rep.consistent is False else EXIT_OK


def cmd_search(args) -> int:
    from .search import find_icosahedra

    f = _load_harmonic(args.file)
    out = find_icosahedra(f, _search_config(args))
    _emit(out.to_json(), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import SUITES

    names = list(SUITES) if args.suite == "all" else [args.suite]
    failed = 0
    for name in names:
        kw = {"seed": args.seed}
        if args.samples is not None:
            kw["samples"] = args.samples
        print(f"== {name}")
        for check in SUITES[name](**kw):
            print(check.line())
            failed += check.ok is False
    return EXIT_INCONSISTENT if failed else EXIT_OK


def _parse_quaternion(text: str):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise CubicParseError("rotation must be 'w,x,y,z'", "--rotation")
    try:
        return [Fraction(p) for p in parts], True
    except ValueError:
        pass
    try:
        return [float(p) for p in parts], False
    except ValueError:
        raise CubicParseError(f"bad quaternion {text!r}", "--rotation") from None


def cmd_basis(args) -> int:
    from .icosa import q_basis, rational_rotation, standard_icosahedron, vanishing_space
    from .poly3 import rotate
    from .scalars import scalar_to_json

    ico = standard_icosahedron()
    qs = list(q_basis())
    V = vanishing_space(ico)
    if args.rotation:
        q, exact = _parse_quaternion(args.rotation)
        if exact:
            if not any(q):
                raise CubicParseError("zero quaternion", "--rotation")
            R = rational_rotation(q)
        else:
            from .search import quat_to_matrix

            qv = np.array(q) / np.linalg.norm(q)
            R = tuple(tuple(float(x) for x in row) for row in quat_to_matrix(qv))
        ico = ico.rotated(R)
        qs = [rotate(p.to_float() if not exact else p, R) for p in qs]
        V = [rotate(p.to_float() if not exact else p, R) for p in V]
    obj = {
        "rotation": [[scalar_to_json(x) for x in row] for row in ico.rotation],
        "axes": [[scalar_to_json(x) for x in a] for a in ico.axes],
        "q": [cubic_to_obj(p) for p in qs],
        "vanishing_space": [cubic_to_obj(p) for p in V],
    }
    _emit(obj, args.output)
    return EXIT_OK


def cmd_nodal_mesh(args) -> int:
    from .mesh import nodal_mesh

    f = parse_cubic(args.file)
    if f.is_zero():
        raise CubicParseError("zero cubic", args.file)
    marks = None
    if args.mark_icosahedra:
        from .search import SearchConfig, find_icosahedra

        out = find_icosahedra(f, SearchConfig(seed=args.seed))
        sols = out.family.samples if out.family is not None else out.icosahedra
        marks = [s.axes for s in sols]
    mesh = nodal_mesh(f, args.resolution, icosahedra=marks)
    mesh.save(args.output)
    print(f"{len(mesh.vertices)} vertices, {len(mesh.segments)} segments, {mesh.components()} polylines -> {args.output}")
    return EXIT_OK


def random_harmonic(seed: int) -> HarmonicCubic:
    """Gaussian coefficients in a Bombieri-orthonormal basis of H."""
    hb = standard_h_basis()
    G = np.array([[float(x) for x in row] for row in hb.gram])
    B = np.array([[float(c) for c in b.coeffs] for b in hb.basis])
    L = np.linalg.cholesky(G)
    ortho = np.linalg.solve(L, B)  # rows orthonormal
    g = np.random.default_rng(seed).standard_normal(7)
    c = g @ ortho
    # project out the rounding-level Laplacian
    from .poly3 import harmonic_projection

    return harmonic_projection(Cubic(tuple(float(x) for x in c)))


def cmd_random_harmonic(args) -> int:
    f = random_harmonic(args.seed)
    if args.output:
        write_cubic(f, args.output, meta={"seed": args.seed})
    else:
        print(json.dumps(cubic_to_obj(f, meta={"seed": args.seed})))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="icosaharm", description="Icosahedra on nodal sets of harmonic cubics.")
    sub = p.add_subparsers(dest="command", required=True)

    def search_flags(sp):
        sp.add_argument("--starts", type=int, default=None)
        sp.add_argument("--tol", type=float, default=None, help="acceptance tolerance on residuals")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("-o", "--output", default=None)

    sp = sub.add_parser("classify", help="invariant sign, predicted and found icosahedra")
    sp.add_argument("file")
    search_flags(sp)
    sp.add_argument("--invariant", choices=("J", "K"), default="J", help="invariant used for the prediction")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("search", help="enumerate inscribed icosahedra")
    sp.add_argument("file")
    search_flags(sp)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("verify", help="exact identity suites")
    sp.add_argument("suite", choices=("appendix", "clebsch", "pfaffian", "all"))
    sp.add_argument("--samples", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("basis", help="exact icosahedral data")
    sp.add_argument("what", choices=("icosahedron",))
    sp.add_argument("--rotation", default=None, help="quaternion 'w,x,y,z' (rational entries stay exact)")
    sp.add_argument("-o", "--output", default=None)
    sp.set_defaults(func=cmd_basis)

    sp = sub.add_parser("nodal-mesh", help="polyline mesh of the nodal set")
    sp.add_argument("file")
    sp.add_argument("--resolution", type=int, default=64)
    sp.add_argument("-o", "--output", required=True, help=".json or .obj")
    sp.add_argument("--mark-icosahedra", action="store_true")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_nodal_mesh)

    sp = sub.add_parser("random-harmonic", help="seeded random harmonic cubic")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("-o", "--output", default=None)
    sp.set_defaults(func=cmd_random_harmonic)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CubicParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
