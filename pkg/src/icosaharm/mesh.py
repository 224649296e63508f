"""Polyline extraction of the nodal set ``{f = 0}`` on the unit sphere.

Marching squares on a latitude-longitude grid (rotated by a fixed generic
rotation so that no grid line is special for coordinate cubics), with
triangle fans over the two polar caps. Every crossing is refined by
bisection along its grid edge, so emitted vertices lie on the nodal set to
rounding. Saddle cells are split once. Crossing cells with a small
tangential gradient seed a Newton search for singular points (where nodal
curves cross).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .poly3 import Cubic, bombieri_norm
from .search import axis_angle_matrix, eval_cubic

# generic fixed frame for the grid
_GRID_FRAME = axis_angle_matrix([0.3141, 0.5926, 0.5358], 0.9793)


@dataclass
class NodalMesh:
    vertices: np.ndarray
    segments: np.ndarray
    markers: dict = field(default_factory=dict)
    resolution: int = 0

    def components(self) -> int:
        """Number of connected polylines."""
        n = len(self.vertices)
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for a, b in self.segments:
            ra, rb = find(int(a)), find(int(b))
            if ra != rb:
                parent[ra] = rb
        used = {int(v) for s in self.segments for v in s}
        return len({find(v) for v in used})

    def to_json(self) -> dict:
        return {
            "resolution": self.resolution,
            "vertices": self.vertices.tolist(),
            "segments": self.segments.tolist(),
            "markers": {k: np.asarray(v).tolist() for k, v in self.markers.items()},
        }

    def to_obj(self) -> str:
        lines = [f"v {x:.17g} {y:.17g} {z:.17g}" for x, y, z in self.vertices]
        lines += [f"l {a + 1} {b + 1}" for a, b in self.segments]
        for name, pts in self.markers.items():
            lines.append(f"# marker {name}")
            lines += [f"# p {x:.17g} {y:.17g} {z:.17g}" for x, y, z in np.asarray(pts).reshape(-1, 3)]
        return "\n".join(lines) + "\n"

    def save(self, path: str) -> None:
        with open(path, "w") as fh:
            if path.endswith(".obj"):
                fh.write(self.to_obj())
            else:
                json.dump(self.to_json(), fh)


def _unit(v):
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def _bisect(c, A, B, iters: int = 64):
    """Roots of ``f`` on the chords ``A[k] -> B[k]`` (projected to the sphere); signs differ at the ends."""
    fa = eval_cubic(c, A)[0]
    lo, hi = np.zeros(len(A)), np.ones(len(A))
    for _ in range(iters):
        mid = (lo + hi) / 2
        fm = eval_cubic(c, _unit(A + mid[:, None] * (B - A)))[0]
        same = np.sign(fm) == np.sign(fa)
        lo = np.where(same, mid, lo)
        hi = np.where(same, hi, mid)
    t = (lo + hi) / 2
    return _unit(A + t[:, None] * (B - A))


def _tangent_newton(c, x0, iters: int = 50):
    """Gauss-Newton for ``f = 0, grad_T f = 0`` on the sphere; returns the point or None."""
    x = _unit(np.asarray(x0, dtype=float))
    h = 1e-6
    for _ in range(iters):

        def F(y):
            y = _unit(y)
            v, g = eval_cubic(c, y[None, :])
            g = g[0] - (g[0] @ y) * y
            return np.concatenate([[v[0]], g])

        r = F(x)
        # tangent frame
        t = np.eye(3)[np.argmin(np.abs(x))]
        e1 = _unit(np.cross(x, t))
        e2 = np.cross(x, e1)
        Jm = np.stack([(F(x + h * e) - F(x - h * e)) / (2 * h) for e in (e1, e2)], axis=1)
        step, *_ = np.linalg.lstsq(Jm, -r, rcond=None)
        x = _unit(x + step[0] * e1 + step[1] * e2)
        if np.linalg.norm(step) < 1e-15:
            break
    r = F(x)
    return x if np.max(np.abs(r)) < 1e-10 else None


def _grid(resolution: int):
    nt, nphi = resolution, 2 * resolution
    theta = (np.arange(nt) + 0.5) * math.pi / nt
    phi = np.arange(nphi) * 2 * math.pi / nphi
    T, P = np.meshgrid(theta, phi, indexing="ij")
    pts = np.stack([np.sin(T) * np.cos(P), np.sin(T) * np.sin(P), np.cos(T)], axis=-1)
    poles = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]])
    return pts @ _GRID_FRAME.T, poles @ _GRID_FRAME.T


def nodal_mesh(f: Cubic, resolution: int = 64, icosahedra=None, merge_tol: float = 1e-9) -> NodalMesh:
    """Polyline mesh of the nodal set of ``f``.

    ``icosahedra`` (list of 6x3 axis arrays) become vertex markers; singular
    points are reported as ``markers["singular"]``.
    """
    if resolution < 4:
        raise ValueError("resolution must be at least 4")
    c = np.array([float(x) for x in f.coeffs])
    n = bombieri_norm(f)
    if n == 0:
        raise ValueError("zero cubic")
    c = c / n
    grid, poles = _grid(resolution)
    nt, nphi = grid.shape[:2]
    flat = np.concatenate([grid.reshape(-1, 3), poles])
    vals = eval_cubic(c, flat)[0]
    pos = vals >= 0
    NORTH, SOUTH = nt * nphi, nt * nphi + 1

    def vid(i, j):
        return i * nphi + (j % nphi)

    edges: dict = {}

    def edge(a, b):
        key = (a, b) if a < b else (b, a)
        if key not in edges:
            edges[key] = len(edges)
        return edges[key]

    seg_edges = []  # pairs of edge ids
    saddles = []
    crossing_cells = []
    for i in range(nt - 1):
        for j in range(nphi):
            corners = [vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)]
            s = [pos[k] for k in corners]
            cross = [k for k in range(4) if s[k] != s[(k + 1) % 4]]
            if not cross:
                continue
            crossing_cells.append(corners)
            if len(cross) == 2:
                seg_edges.append(
                    (edge(corners[cross[0]], corners[(cross[0] + 1) % 4]), edge(corners[cross[1]], corners[(cross[1] + 1) % 4]))
                )
            else:
                saddles.append(corners)
    for ring, pole in ((0, NORTH), (nt - 1, SOUTH)):
        for j in range(nphi):
            tri = [pole, vid(ring, j), vid(ring, j + 1)]
            s = [pos[k] for k in tri]
            cross = [k for k in range(3) if s[k] != s[(k + 1) % 3]]
            if cross:
                seg_edges.append(
                    (edge(tri[cross[0]], tri[(cross[0] + 1) % 3]), edge(tri[cross[1]], tri[(cross[1] + 1) % 3]))
                )
    keys = sorted(edges, key=edges.get)
    if keys:
        A = flat[[k[0] for k in keys]]
        B = flat[[k[1] for k in keys]]
        verts = list(_bisect(c, A, B))
    else:
        verts = []
    segs = [tuple(p) for p in seg_edges]
    for corners in saddles:
        new_v, new_s, _ = _split_saddle(c, flat[corners])
        base = len(verts)
        verts.extend(new_v)
        segs.extend((base + a, base + b) for a, b in new_s)
    singular = _singular_points(c, flat, crossing_cells, math.pi / nt)
    V = np.array(verts).reshape(-1, 3)
    S = np.array(segs, dtype=int).reshape(-1, 2)
    V, S = _merge(V, S, merge_tol)
    markers = {}
    if singular:
        markers["singular"] = _merge_points(np.array(singular), 1e-7)
    if icosahedra:
        markers["icosahedron_vertices"] = np.concatenate([np.concatenate([X, -X]) for X in icosahedra])
    return NodalMesh(V, S, markers, resolution)


def _tangential_grad_norm(c, X):
    _, g = eval_cubic(c, X)
    g = g - np.sum(g * X, axis=-1, keepdims=True) * X
    return np.linalg.norm(g, axis=-1)


def _singular_points(c, flat, cells, h):
    """Zeros of ``f`` where the tangential gradient also vanishes.

    Newton is seeded from crossing cells whose centre gradient is small
    compared with the largest gradient on the grid.
    """
    if not cells:
        return []
    G = float(np.max(_tangential_grad_norm(c, flat)))
    centres = _unit(flat[np.array(cells)].mean(axis=1))
    gc = _tangential_grad_norm(c, centres)
    out = []
    for x0 in centres[gc < 4 * h * G]:
        if any(np.linalg.norm(x0 - q) < 2 * h for q in out):
            continue
        x = _tangent_newton(c, x0)
        if x is not None and not any(np.linalg.norm(x - q) < 1e-7 for q in out):
            out.append(x)
    return out


def _split_saddle(c, P):
    """Marching squares on the 2x2 subdivision of an ambiguous cell."""
    mid = lambda a, b: _unit((a + b) / 2)
    p0, p1, p2, p3 = P
    g = [
        [p0, mid(p0, p3), p3],
        [mid(p0, p1), _unit(P.sum(axis=0)), mid(p2, p3)],
        [p1, mid(p1, p2), p2],
    ]
    verts, segs = [], []
    persistent = False
    for a in range(2):
        for b in range(2):
            q = np.array([g[a][b], g[a + 1][b], g[a + 1][b + 1], g[a][b + 1]])
            fv = eval_cubic(c, q)[0]
            s = fv >= 0
            cross = [k for k in range(4) if s[k] != s[(k + 1) % 4]]
            if not cross:
                continue
            roots = {k: _bisect(c, q[k][None], q[(k + 1) % 4][None])[0] for k in cross}
            if len(cross) == 2:
                pairs = [(cross[0], cross[1])]
            else:
                persistent = True
                centre = eval_cubic(c, _unit(q.mean(axis=0))[None])[0][0] >= 0
                pairs = [(0, 1), (2, 3)] if centre == s[0] else [(3, 0), (1, 2)]
            for e1, e2 in pairs:
                verts.extend([roots[e1], roots[e2]])
                segs.append((len(verts) - 2, len(verts) - 1))
    return verts, segs, persistent


def _merge(V, S, tol):
    if len(V) == 0:
        return V, S
    tree = cKDTree(V)
    parent = np.arange(len(V))
    for a, b in sorted(tree.query_pairs(tol)):
        ra, rb = parent[a], parent[b]
        while parent[ra] != ra:
            ra = parent[ra]
        while parent[rb] != rb:
            rb = parent[rb]
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    root = np.array([_root(parent, i) for i in range(len(V))])
    keep, remap = np.unique(root, return_inverse=True)
    S = remap[S] if len(S) else S
    S = S[S[:, 0] != S[:, 1]] if len(S) else S
    return V[keep], S


def _root(parent, i):
    while parent[i] != i:
        i = parent[i]
    return i


def _merge_points(P, tol):
    out = []
    for p in P:
        if not any(np.linalg.norm(p - q) < tol for q in out):
            out.append(p)
    return np.array(out)
