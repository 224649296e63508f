"""Exact dense linear algebra over Q and Q(sqrt5).

Matrices are lists of rows. Every routine works for any field whose elements
support ``+ - * /`` and exact comparison with ``0`` (``Fraction``, ``Golden``).
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import simplify


class SingularSystemError(ValueError):
    """Raised when an exact linear system has no solution.

    ``residual`` holds the inconsistent row of the reduced augmented system.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


def _copy(rows):
    return [list(r) for r in rows]


def rref(rows):
    """Reduced row echelon form; returns ``(R, pivot_columns)``."""
    A = _copy(rows)
    if not A:
        return A, []
    m, n = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c] if not isinstance(A[r][c], int) else Fraction(1, A[r][c])
        A[r] = [simplify(x * inv) for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [simplify(x - f * y) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, ncols: int | None = None):
    """Basis of ``{x : A x = 0}`` read off the reduced echelon form."""
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    R, piv = rref(rows)
    n = len(rows[0])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(piv):
            v[pc] = simplify(-R[i][fc])
        basis.append(v)
    return basis


def solve(A, b):
    """Unique or particular exact solution of ``A x = b``.

    Raises :class:`SingularSystemError` with the offending reduced row when the
    system is inconsistent.
    """
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, piv = rref(aug)
    n = len(A[0])
    if n in piv:
        i = piv.index(n)
        raise SingularSystemError("inconsistent linear system", residual=R[i])
    x = [Fraction(0)] * n
    for i, pc in enumerate(piv):
        x[pc] = R[i][n]
    return x


def det(A):
    """Determinant by Bareiss fraction-free elimination."""
    M = _copy(A)
    n = len(M)
    if n == 0:
        return Fraction(1)
    sgn = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            p = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if p is None:
                return Fraction(0)
            M[k], M[p] = M[p], M[k]
            sgn = -sgn
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = simplify((M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev)
        prev = M[k][k]
    return simplify(sgn * M[n - 1][n - 1])


def matmul(A, B):
    Bt = list(zip(*B))
    return [[simplify(sum((a * b for a, b in zip(row, col)), Fraction(0))) for col in Bt] for row in A]


def matvec(A, v):
    return [simplify(sum((a * x for a, x in zip(row, v)), Fraction(0))) for row in A]


def transpose(A):
    return [list(r) for r in zip(*A)]


def identity(n: int):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def dot(u, v):
    return simplify(sum((a * b for a, b in zip(u, v)), Fraction(0)))


def cross(u, v):
    return [
        simplify(u[1] * v[2] - u[2] * v[1]),
        simplify(u[2] * v[0] - u[0] * v[2]),
        simplify(u[0] * v[1] - u[1] * v[0]),
    ]


def leading_minors(A):
    return [det([row[:k] for row in A[:k]]) for k in range(1, len(A) + 1)]


def span_contains(basis, vectors) -> bool:
    """True when every vector lies in the span of ``basis``."""
    r = rank(basis)
    return all(rank(list(basis) + [list(v)]) == r for v in vectors)
