"""Skew forms ``ω_u(p, q) = (u·p, q)`` on harmonic cubics, Pfaffians, and
isotropic-subspace checks.

The Bombieri product is rotation invariant, so the infinitesimal action is
skew-adjoint and every ``ω_u`` is an honest skew form, linear in ``u``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import nullspace, rank
from .poly3 import Cubic, HarmonicCubic, Poly, bombieri_inner, lie_action, standard_h_basis
from .scalars import simplify

E = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


@dataclass(frozen=True)
class Subspace:
    """Exact basis cubics of a subspace of H; ``ambient`` is a label ("H", "W", "X", "V")."""

    basis: tuple
    ambient: str = "H"

    def __post_init__(self):
        if self.basis and all(b.is_exact() for b in self.basis):
            if rank([list(b.coeffs) for b in self.basis]) != len(self.basis):
                raise ValueError("subspace basis is linearly dependent")

    def __len__(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class SkewFormMatrix:
    basis: tuple
    u: tuple
    entries: tuple

    def rows(self):
        return [list(r) for r in self.entries]

    def rank(self) -> int:
        return rank(self.rows())

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)


def _basis_of(sub):
    return sub.basis if isinstance(sub, Subspace) else tuple(sub)


def omega_matrix(u, sub) -> SkewFormMatrix:
    """``Ω_ab = (u·b_a, b_b)`` on the basis of ``sub``."""
    basis = _basis_of(sub)
    moved = [lie_action(u, b) for b in basis]
    n = len(basis)
    M = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = bombieri_inner(moved[i], basis[j])
            M[i][j] = v
            M[j][i] = simplify(-v)
    return SkewFormMatrix(basis, tuple(u), tuple(tuple(r) for r in M))


def omega_symbolic(sub):
    """``Ω(u)`` with entries linear forms in ``u`` (:class:`Poly`)."""
    mats = [omega_matrix(e, sub).entries for e in E]
    n = len(_basis_of(sub))
    return [[Poly.linear([mats[k][i][j] for k in range(3)]) for j in range(n)] for i in range(n)]


def pfaffian(A):
    """Pfaffian by expansion along the first row (``(2m-1)!!`` matchings).

    Works over any commutative ring, including :class:`Poly` entries.
    Convention: ``Pf([[0, a], [-a, 0]]) = a``.
    """
    n = len(A)
    if n % 2:
        raise ValueError(f"Pfaffian needs an even dimension, got {n}")
    if n == 0:
        return Fraction(1)

    def rec(idx):
        if not idx:
            return Fraction(1)
        i, rest = idx[0], idx[1:]
        total = None
        for k, j in enumerate(rest):
            a = A[i][j]
            if isinstance(a, Poly) and a.is_zero() or (not isinstance(a, Poly) and a == 0):
                continue
            term = a * rec(rest[:k] + rest[k + 1:])
            if k % 2:
                term = -term
            total = term if total is None else total + term
        return Fraction(0) if total is None else total

    out = rec(tuple(range(n)))
    return out if isinstance(out, Poly) else simplify(out)


def orthogonal_complement(p: Cubic, hb=None) -> Subspace:
    """Exact basis of ``W = p^⊥`` inside H (dimension 6)."""
    if p.is_zero():
        raise ValueError("p must be nonzero")
    hb = hb or standard_h_basis()
    row = [bombieri_inner(b, p) for b in hb.basis]
    coords = nullspace([row])
    if len(coords) != 6:
        raise ValueError("degenerate complement; p is not in H")
    return Subspace(tuple(hb.combine(c) for c in coords), "W")


def pfaffian_cubic(p: Cubic, hb=None) -> Cubic:
    """``Pf(ω_u|_W)`` as a cubic in ``u``; a nonzero multiple of ``p``."""
    W = orthogonal_complement(p, hb)
    pf = pfaffian(omega_symbolic(W))
    if not isinstance(pf, Poly) or pf.is_zero():
        raise ValueError("Pfaffian vanished identically")
    return Cubic.from_poly(pf)


def omega_rank_on_W(p: Cubic, u, hb=None) -> int:
    return omega_matrix(u, orthogonal_complement(p, hb)).rank()


def kernel_on_H(u, hb=None):
    """Kernel of ``ω_u`` on H as cubics."""
    hb = hb or standard_h_basis()
    Om = omega_matrix(u, hb.basis)
    return [hb.combine(v) for v in nullspace(Om.rows())]


@dataclass(frozen=True)
class IsotropyResult:
    isotropic: bool
    rank: int
    witness: tuple | None = None  # (u, i, j, value)

    def __bool__(self) -> bool:
        return self.isotropic


def reduce_to_basis(cubics):
    """Exact row-reduced basis of the span of ``cubics``."""
    from .linalg import rref

    R, piv = rref([list(c.coeffs) for c in cubics])
    return [Cubic(tuple(R[i])) for i in range(len(piv))]


def isotropic_check(X, tol: float = 0.0) -> IsotropyResult:
    """Do ``ω_{e1}, ω_{e2}, ω_{e3}`` all vanish on ``X`` (dimension 3)?

    ``X`` may be given by generators (e.g. the six axis harmonics of an
    icosahedron); an exact basis is extracted first. Float input is compared
    against ``tol`` relative to the largest coefficient.
    """
    gens = list(_basis_of(X))
    exact = all(g.is_exact() for g in gens)
    if exact:
        basis = reduce_to_basis(gens)
    else:
        import numpy as np

        A = np.array([[float(c) for c in g.coeffs] for g in gens])
        U, s, Vt = np.linalg.svd(A)
        r = int(np.sum(s > 1e-9 * s[0]))
        basis = [Cubic(tuple(Vt[i])) for i in range(r)]
    if len(basis) != 3:
        raise ValueError(f"isotropic_check needs a 3-dimensional subspace, got dimension {len(basis)}")
    scale = max(abs(float(c)) for b in basis for c in b.coeffs) ** 2
    for u in E:
        Om = omega_matrix(u, basis)
        for i in range(3):
            for j in range(i + 1, 3):
                v = Om.entries[i][j]
                if (v != 0) if exact else abs(float(v)) > tol * scale:
                    return IsotropyResult(False, 3, (u, i, j, v))
    return IsotropyResult(True, 3)


def harmonic_vanishing_at(u, rng, hb=None) -> HarmonicCubic:
    """A random exact harmonic cubic with ``p(u) = 0``."""
    hb = hb or standard_h_basis()
    row = [b.evaluate(u) for b in hb.basis]
    ns = nullspace([row])
    coeffs = [Fraction(0)] * 7
    for v in ns:
        c = Fraction(int(rng.integers(-5, 6)))
        coeffs = [a + c * b for a, b in zip(coeffs, v)]
    return hb.combine(coeffs)
