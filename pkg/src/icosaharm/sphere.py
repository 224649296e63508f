"""Exact integration of polynomials over the unit sphere and the moment
matrices ``S`` and ``M`` of a harmonic cubic."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

from .linalg import dot
from .poly3 import MONOMIALS, Cubic, Poly
from .scalars import PiScalar, pi_scalar_to_json, simplify


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


@lru_cache(maxsize=None)
def _monomial_coeff(i: int, j: int, k: int) -> Fraction:
    if i % 2 or j % 2 or k % 2:
        return Fraction(0)
    num = _double_factorial(i - 1) * _double_factorial(j - 1) * _double_factorial(k - 1)
    return Fraction(4 * num, _double_factorial(i + j + k + 1))


def integrate_monomial(exponents) -> PiScalar:
    """``∫_{S^2} x1^i x2^j x3^k dS`` as an exact multiple of pi.

    Zero unless all exponents are even, else
    ``4 pi (i-1)!! (j-1)!! (k-1)!! / (i+j+k+1)!!``.
    """
    i, j, k = (int(e) for e in exponents)
    if min(i, j, k) < 0:
        raise ValueError("exponents must be non-negative")
    return PiScalar(_monomial_coeff(i, j, k), 1)


def c_constant(n: int) -> PiScalar:
    """Universal constant ``c_n = 2^(n+2) pi n! / (2n+1)!`` of the pairing formula."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return PiScalar(Fraction(2 ** (n + 2) * factorial(n), factorial(2 * n + 1)), 1)


def perfect_matchings(items):
    """Yield every partition of ``items`` (even length) into unordered pairs."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for idx in range(len(rest)):
        pair = (first, rest[idx])
        remaining = rest[:idx] + rest[idx + 1:]
        for m in perfect_matchings(remaining):
            yield [pair] + m


def linear_product_integral(vectors) -> PiScalar:
    """``∫ (a_1,x)...(a_2n,x) dS = c_n * sum over pairings of prod (a_i, a_j)``."""
    vectors = [list(v) for v in vectors]
    if len(vectors) % 2:
        raise ValueError("an odd number of linear factors integrates to zero; pass an even count")
    n = len(vectors) // 2
    gram = [[dot(u, v) for v in vectors] for u in vectors]
    total = Fraction(0)
    for m in perfect_matchings(range(len(vectors))):
        term = Fraction(1)
        for i, j in m:
            term = term * gram[i][j]
            if term == 0:
                break
        total = total + term
    return c_constant(n) * simplify(total)


def integrate(p: Poly) -> PiScalar:
    """Exact sphere integral of a polynomial with exact (or float) coefficients."""
    total = Fraction(0)
    for m, c in p.terms.items():
        w = _monomial_coeff(*m)
        if w:
            total = total + c * w
    return PiScalar(simplify(total), 1)


@lru_cache(maxsize=1)
def _moment_table():
    """``T[a][b][i][j] = ∫ m_a m_b x_i x_j dS / pi`` over cubic monomials."""
    T = [[[[Fraction(0)] * 3 for _ in range(3)] for _ in range(10)] for _ in range(10)]
    for a, ma in enumerate(MONOMIALS):
        for b, mb in enumerate(MONOMIALS):
            for i in range(3):
                for j in range(3):
                    e = [ma[t] + mb[t] for t in range(3)]
                    e[i] += 1
                    e[j] += 1
                    T[a][b][i][j] = _monomial_coeff(*e)
    return T


@lru_cache(maxsize=1)
def _moment_table_float() -> np.ndarray:
    return np.array(_moment_table(), dtype=float)


@dataclass(frozen=True)
class MomentPair:
    """``S_ij = ∫ f^2 x_i x_j`` and ``M = S - (4/15) tr(S) I``; entries are PiScalars (pi^1)."""

    S: tuple
    M: tuple

    def to_json(self) -> dict:
        return {
            "S": [[pi_scalar_to_json(x) for x in row] for row in self.S],
            "M": [[pi_scalar_to_json(x) for x in row] for row in self.M],
        }

    def S_float(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.S])

    def M_float(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.M])


def moment_matrix_S(f: Cubic):
    """Coefficient (of pi) matrix of ``S``; exact for exact input, float otherwise."""
    if not f.is_exact():
        c = np.array([float(x) for x in f.coeffs])
        return np.einsum("a,b,abij->ij", c, c, _moment_table_float())
    T = _moment_table()
    c = f.coeffs
    nz = [a for a in range(10) if c[a] != 0]
    S = [[Fraction(0)] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(i, 3):
            total = Fraction(0)
            for a in nz:
                for b in nz:
                    w = T[a][b][i][j]
                    if w:
                        total = total + c[a] * c[b] * w
            S[i][j] = S[j][i] = simplify(total)
    return S


def moment_matrices(f: Cubic) -> MomentPair:
    """Moment matrices of ``f`` by term-wise exact integration of ``f^2 x_i x_j``."""
    S = moment_matrix_S(f)
    if isinstance(S, np.ndarray):
        tr = float(np.trace(S))
        M = S - (4.0 / 15.0) * tr * np.eye(3)
        wrap = lambda A: tuple(tuple(PiScalar(float(x), 1) for x in row) for row in A)
        return MomentPair(wrap(S), wrap(M))
    tr = simplify(S[0][0] + S[1][1] + S[2][2])
    M = [[simplify(S[i][j] - (Fraction(4, 15) * tr if i == j else 0)) for j in range(3)] for i in range(3)]
    wrap = lambda A: tuple(tuple(PiScalar(x, 1) for x in row) for row in A)
    return MomentPair(wrap(S), wrap(M))
