"""Polynomials on R^3: cubics, the Laplacian, harmonic projection, the
Bombieri inner product and the infinitesimal rotation action.

A :class:`Cubic` is a fixed-length coefficient vector in the monomial order
:data:`MONOMIALS`. Intermediate products (``f^2``, ``f^2 x_i x_j``, Pfaffians
in ``u``) use the sparse :class:`Poly`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .linalg import leading_minors, rank
from .scalars import Golden, is_exact, simplify

MONOMIALS: tuple[tuple[int, int, int], ...] = (
    (3, 0, 0),
    (2, 1, 0),
    (2, 0, 1),
    (1, 2, 0),
    (1, 1, 1),
    (1, 0, 2),
    (0, 3, 0),
    (0, 2, 1),
    (0, 1, 2),
    (0, 0, 3),
)
MONOMIAL_INDEX = {m: i for i, m in enumerate(MONOMIALS)}

# (x^alpha, x^alpha) = alpha!/3!
BOMBIERI_WEIGHTS: tuple[Fraction, ...] = tuple(
    Fraction(factorial(i) * factorial(j) * factorial(k), 6) for i, j, k in MONOMIALS
)

_HARMONIC_FLOAT_TOL = 1e-12


def _zero_like(x):
    return 0.0 if isinstance(x, float) else Fraction(0)


class Poly:
    """Sparse polynomial in three variables, ``{(i, j, k): coeff}``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if c != 0:
                    self.terms[tuple(m)] = simplify(c)

    @classmethod
    def constant(cls, c) -> Poly:
        return cls({(0, 0, 0): c})

    @classmethod
    def variable(cls, k: int) -> Poly:
        e = [0, 0, 0]
        e[k] = 1
        return cls({tuple(e): Fraction(1)})

    @classmethod
    def linear(cls, v) -> Poly:
        return cls({(1, 0, 0): v[0], (0, 1, 0): v[1], (0, 0, 1): v[2]})

    def __repr__(self) -> str:
        return f"Poly({self.terms!r})"

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly({m: c * other for m, c in self.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                p = c1 * c2
                out[m] = out[m] + p if m in out else p
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        out = Poly.constant(Fraction(1))
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            other = Poly.constant(other) if other != 0 else Poly()
        return self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def diff(self, k: int) -> Poly:
        out = {}
        for m, c in self.terms.items():
            if m[k]:
                e = list(m)
                e[k] -= 1
                out[tuple(e)] = c * m[k]
        return Poly(out)

    def evaluate(self, x):
        total = _zero_like(x[0])
        for (i, j, k), c in self.terms.items():
            total = total + c * x[0] ** i * x[1] ** j * x[2] ** k
        return simplify(total)

    def substitute(self, forms: Sequence[Poly]) -> Poly:
        """Replace ``x_k`` by ``forms[k]``."""
        out = Poly()
        cache: dict = {}
        for (i, j, k), c in self.terms.items():
            term = Poly.constant(c)
            for var, e in ((0, i), (1, j), (2, k)):
                if e:
                    key = (var, e)
                    if key not in cache:
                        cache[key] = forms[var] ** e
                    term = term * cache[key]
            out = out + term
        return out

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)


R2 = Poly({(2, 0, 0): Fraction(1), (0, 2, 0): Fraction(1), (0, 0, 2): Fraction(1)})


@dataclass(frozen=True, eq=False)
class Cubic:
    """Homogeneous cubic in the fixed monomial order :data:`MONOMIALS`.

    Equality is by coefficients, so a :class:`HarmonicCubic` equals the plain
    cubic with the same coefficients.
    """

    coeffs: tuple

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cubic):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __post_init__(self):
        if len(self.coeffs) != 10:
            raise ValueError(f"a cubic needs 10 coefficients, got {len(self.coeffs)}")
        object.__setattr__(
            self,
            "coeffs",
            tuple(Fraction(c) if isinstance(c, int) and not isinstance(c, bool) else simplify(c) for c in self.coeffs),
        )

    @classmethod
    def zero(cls) -> Cubic:
        return cls((Fraction(0),) * 10)

    @classmethod
    def monomial(cls, exps, coeff=Fraction(1)) -> Cubic:
        c = [Fraction(0)] * 10
        c[MONOMIAL_INDEX[tuple(exps)]] = coeff
        return cls(tuple(c))

    @classmethod
    def from_poly(cls, p: Poly) -> Cubic:
        c = [Fraction(0)] * 10
        for m, v in p.terms.items():
            if m not in MONOMIAL_INDEX:
                raise ValueError(f"term x^{m} is not cubic")
            c[MONOMIAL_INDEX[m]] = v
        return cls(tuple(c))

    def to_poly(self) -> Poly:
        return Poly(dict(zip(MONOMIALS, self.coeffs)))

    def __getitem__(self, m) -> object:
        return self.coeffs[MONOMIAL_INDEX[tuple(m)]]

    # linear structure; harmonic + harmonic stays harmonic
    def _wrap(self, coeffs, other=None):
        cls = Cubic
        if isinstance(self, HarmonicCubic) and (other is None or isinstance(other, HarmonicCubic)):
            cls = HarmonicCubic
        return cls(tuple(coeffs))

    def __add__(self, other: Cubic) -> Cubic:
        if not isinstance(other, Cubic):
            return NotImplemented
        return self._wrap((a + b for a, b in zip(self.coeffs, other.coeffs)), other)

    def __sub__(self, other: Cubic) -> Cubic:
        if not isinstance(other, Cubic):
            return NotImplemented
        return self._wrap((a - b for a, b in zip(self.coeffs, other.coeffs)), other)

    def __neg__(self) -> Cubic:
        return self._wrap(-a for a in self.coeffs)

    def __mul__(self, s) -> Cubic:
        if isinstance(s, (Cubic, Poly)):
            return NotImplemented
        return self._wrap(a * s for a in self.coeffs)

    __rmul__ = __mul__

    def __truediv__(self, s) -> Cubic:
        return self._wrap(a / s for a in self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self.coeffs)

    def scalar_kind(self) -> str:
        if not self.is_exact():
            return "float"
        if any(isinstance(c, Golden) and c.b != 0 for c in self.coeffs):
            return "golden"
        return "rational"

    def to_float(self) -> Cubic:
        return Cubic(tuple(float(c) for c in self.coeffs))

    def evaluate(self, x):
        return evaluate(self, x)

    def laplacian(self):
        return laplacian(self)

    def is_harmonic(self, tol: float = _HARMONIC_FLOAT_TOL) -> bool:
        lap = laplacian(self)
        if self.is_exact():
            return all(c == 0 for c in lap)
        scale = max((abs(float(c)) for c in self.coeffs), default=0.0)
        return all(abs(float(c)) <= tol * max(scale, 1e-300) for c in lap)


class HarmonicCubic(Cubic):
    """A cubic with identically vanishing Laplacian.

    Exact coefficients must satisfy the three linear conditions exactly; float
    coefficients within a relative ``1e-12``.
    """

    def __post_init__(self):
        super().__post_init__()
        if not Cubic.is_harmonic(self):
            raise ValueError(f"cubic is not harmonic: Laplacian = {laplacian(self)}")

    @classmethod
    def of(cls, p: Cubic) -> HarmonicCubic:
        if isinstance(p, HarmonicCubic):
            return p
        return cls(p.coeffs)


def evaluate(p: Cubic, x):
    """Value of ``p`` at ``x``; exact for exact scalars."""
    total = Fraction(0)
    for (i, j, k), c in zip(MONOMIALS, p.coeffs):
        if c != 0:
            total = total + c * x[0] ** i * x[1] ** j * x[2] ** k
    return simplify(total)


def laplacian(p: Cubic) -> tuple:
    """Coefficients ``(l1, l2, l3)`` of the linear form ``Δp = l1 x1 + l2 x2 + l3 x3``."""
    c = dict(zip(MONOMIALS, p.coeffs))
    # Δ x^alpha contributes alpha_k (alpha_k - 1) x^(alpha - 2 e_k)
    l1 = 6 * c[(3, 0, 0)] + 2 * c[(1, 2, 0)] + 2 * c[(1, 0, 2)]
    l2 = 2 * c[(2, 1, 0)] + 6 * c[(0, 3, 0)] + 2 * c[(0, 1, 2)]
    l3 = 2 * c[(2, 0, 1)] + 2 * c[(0, 2, 1)] + 6 * c[(0, 0, 3)]
    return (simplify(l1), simplify(l2), simplify(l3))


def harmonic_projection(p: Cubic) -> HarmonicCubic:
    """Harmonic part ``p - (x,x) Δp / 10`` of a cubic."""
    lap = laplacian(p)
    correction = Cubic.from_poly(R2 * Poly.linear([l / 10 for l in lap]))
    return HarmonicCubic((p - correction).coeffs)


def axis_harmonic(a) -> HarmonicCubic:
    """The zonal cubic ``f_a(x) = (a,x)^3 - 3/5 (a,a)(a,x)(x,x)``."""
    if all(c == 0 for c in a):
        raise ValueError("axis_harmonic needs a nonzero axis")
    ax = Poly.linear(a)
    aa = sum((c * c for c in a), _zero_like(a[0]) if isinstance(a[0], float) else Fraction(0))
    f = ax ** 3 - ax * R2 * (Fraction(3, 5) * aa)
    return HarmonicCubic(Cubic.from_poly(f).coeffs)


def special_form(u, a) -> Cubic:
    """``(u,x)((a,x)^2 - (a,a)(x,x)/5)``; harmonic when ``(u,a) = 0``."""
    ax = Poly.linear(a)
    aa = sum((c * c for c in a), Fraction(0) if is_exact(a[0]) else 0.0)
    return Cubic.from_poly(Poly.linear(u) * (ax * ax - R2 * (aa / 5)))


def bombieri_inner(p: Cubic, q: Cubic):
    """Inner product with ``(x^alpha, x^beta) = delta * alpha!/3!``, so that
    ``(p, (a,x)^3) = p(a)``."""
    total = Fraction(0)
    for w, a, b in zip(BOMBIERI_WEIGHTS, p.coeffs, q.coeffs):
        if a != 0 and b != 0:
            total = total + w * a * b
    return simplify(total)


def bombieri_norm(p: Cubic) -> float:
    return float(sum(float(w) * float(c) ** 2 for w, c in zip(BOMBIERI_WEIGHTS, p.coeffs))) ** 0.5


def lie_action(u, p: Cubic) -> Cubic:
    """Infinitesimal rotation ``u . p = sum eps_ijk x_i u_j dp/dx_k = (x × u) . grad p``."""
    P = p.to_poly()
    x = [Poly.variable(k) for k in range(3)]
    xu = [x[1] * u[2] - x[2] * u[1], x[2] * u[0] - x[0] * u[2], x[0] * u[1] - x[1] * u[0]]
    out = Poly()
    for k in range(3):
        out = out + xu[k] * P.diff(k)
    res = Cubic.from_poly(out)
    if isinstance(p, HarmonicCubic) and res.is_exact():
        return HarmonicCubic(res.coeffs)
    return res


def rotate(p: Cubic, R) -> Cubic:
    """Rotated cubic ``(R p)(x) = p(R^T x)``."""
    forms = [Poly.linear([R[0][k], R[1][k], R[2][k]]) for k in range(3)]
    out = Cubic.from_poly(p.to_poly().substitute(forms))
    if isinstance(p, HarmonicCubic):
        return HarmonicCubic(out.coeffs)
    return out


def proportional(p: Cubic, q: Cubic) -> bool:
    """Exact proportionality by cross-multiplication of all coefficient pairs."""
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    a, b = p.coeffs, q.coeffs
    return all(a[i] * b[j] == a[j] * b[i] for i in range(10) for j in range(i + 1, 10))


def proportionality_constant(p: Cubic, q: Cubic):
    """The ``c`` with ``p = c q``; raises unless exactly proportional."""
    if not proportional(p, q):
        raise ValueError("cubics are not proportional")
    i = next(i for i, c in enumerate(q.coeffs) if c != 0)
    return simplify(p.coeffs[i] / q.coeffs[i])


@dataclass(frozen=True)
class HBasis:
    """Seven harmonic cubics spanning H and their Bombieri Gram matrix."""

    basis: tuple
    gram: tuple

    def __len__(self) -> int:
        return len(self.basis)

    def combine(self, coords) -> HarmonicCubic:
        out = HarmonicCubic.of(Cubic.zero())
        for c, b in zip(coords, self.basis):
            out = out + b * c
        return HarmonicCubic.of(out)


_BASIS_SEEDS = ((3, 0, 0), (0, 3, 0), (0, 0, 3), (1, 2, 0), (0, 1, 2), (2, 0, 1), (1, 1, 1))


def standard_h_basis() -> HBasis:
    """Harmonic projections of x1^3, x2^3, x3^3, x1x2^2, x2x3^2, x3x1^2, x1x2x3."""
    basis = tuple(harmonic_projection(Cubic.monomial(m)) for m in _BASIS_SEEDS)
    if rank([list(b.coeffs) for b in basis]) != 7:
        raise RuntimeError("harmonic basis is rank deficient")
    gram = tuple(tuple(bombieri_inner(a, b) for b in basis) for a in basis)
    if not all(m > 0 for m in leading_minors([list(r) for r in gram])):
        raise RuntimeError("Gram matrix of the harmonic basis is not positive definite")
    return HBasis(basis, gram)


def random_rational_cubic(rng, lo: int = -9, hi: int = 9, den: int = 7) -> Cubic:
    return Cubic(tuple(Fraction(int(rng.integers(lo, hi + 1)), int(rng.integers(1, den + 1))) for _ in range(10)))


def random_rational_harmonic(rng, **kw) -> HarmonicCubic:
    return harmonic_projection(random_rational_cubic(rng, **kw))
