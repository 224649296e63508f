"""Exact scalar types: rationals, the field Q(sqrt5) and rational multiples of pi^k.

Rationals are plain :class:`fractions.Fraction`. :class:`Golden` stores
``a + b*sqrt(5)`` with rational ``a`` and ``b``; the golden ratio is the
named constant :data:`PHI`. :class:`PiScalar` carries the powers of pi that
every sphere integral produces.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from numbers import Rational as _Rational
from typing import Union

SQRT5_FLOAT = math.sqrt(5.0)

Exact = Union[int, Fraction, "Golden"]


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


@total_ordering
class Golden:
    """Element ``a + b*sqrt(5)`` of Q(sqrt5).

    Instances are immutable and hash equal to the equivalent rational when
    ``b == 0``, so they can be mixed freely with ``int`` and ``Fraction``.
    """

    __slots__ = ("_a", "_b")

    def __init__(self, a=0, b=0):
        self._a = _q(a)
        self._b = _q(b)

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @classmethod
    def coerce(cls, x) -> Golden:
        if isinstance(x, Golden):
            return x
        return cls(_q(x), 0)

    def __repr__(self) -> str:
        return f"Golden({self._a!s}, {self._b!s})"

    def __str__(self) -> str:
        if self._b == 0:
            return str(self._a)
        if self._a == 0:
            return f"{self._b}*sqrt5"
        sign = "+" if self._b > 0 else "-"
        return f"{self._a} {sign} {abs(self._b)}*sqrt5"

    # arithmetic -----------------------------------------------------------

    def _other(self, other):
        if isinstance(other, Golden):
            return other
        if isinstance(other, (int, Fraction)):
            return Golden(other, 0)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, float):
                return float(self) + other
            return NotImplemented
        return Golden(self._a + o._a, self._b + o._b)

    __radd__ = __add__

    def __neg__(self) -> Golden:
        return Golden(-self._a, -self._b)

    def __pos__(self) -> Golden:
        return self

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, float):
                return float(self) - other
            return NotImplemented
        return Golden(self._a - o._a, self._b - o._b)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, float):
                return other - float(self)
            return NotImplemented
        return Golden(o._a - self._a, o._b - self._b)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, float):
                return float(self) * other
            return NotImplemented
        a, b, c, d = self._a, self._b, o._a, o._b
        return Golden(a * c + 5 * b * d, a * d + b * c)

    __rmul__ = __mul__

    def conj(self) -> Golden:
        """Galois conjugate ``a - b*sqrt(5)``."""
        return Golden(self._a, -self._b)

    def norm(self) -> Fraction:
        """Field norm ``x * conj(x) = a^2 - 5 b^2``."""
        return self._a * self._a - 5 * self._b * self._b

    def inv(self) -> Golden:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("Golden division by zero")
        return Golden(self._a / n, -self._b / n)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, float):
                return float(self) / other
            return NotImplemented
        if o._b == 0:
            if o._a == 0:
                raise ZeroDivisionError("Golden division by zero")
            return Golden(self._a / o._a, self._b / o._a)
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, float):
                return other / float(self)
            return NotImplemented
        return o * self.inv()

    def __pow__(self, n: int) -> Golden:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        result, base = Golden(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison -----------------------------------------------------------

    def sign(self) -> int:
        """Exact sign of ``a + b*sqrt(5)``."""
        sa = (self._a > 0) - (self._a < 0)
        sb = (self._b > 0) - (self._b < 0)
        if sa == 0:
            return sb
        if sb == 0 or sa == sb:
            return sa
        # opposite signs: compare a^2 with 5 b^2
        d = self._a * self._a - 5 * self._b * self._b
        return sa if d > 0 else -sa

    def __eq__(self, other) -> bool:
        o = self._other(other)
        if o is None:
            if isinstance(other, float):
                return float(self) == other
            return NotImplemented
        return self._a == o._a and self._b == o._b

    def __lt__(self, other) -> bool:
        o = self._other(other)
        if o is None:
            if isinstance(other, float):
                return float(self) < other
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(self._a)
        return hash((self._a, self._b))

    def __bool__(self) -> bool:
        return self._a != 0 or self._b != 0

    def __abs__(self) -> Golden:
        return -self if self.sign() < 0 else self

    def __float__(self) -> float:
        # a and b are converted separately; error is a few ulps of max(|a|, |b|*sqrt5)
        return float(self._a) + float(self._b) * SQRT5_FLOAT

    def is_rational(self) -> bool:
        return self._b == 0


SQRT5 = Golden(0, 1)
PHI = Golden(Fraction(1, 2), Fraction(1, 2))


def sign(x) -> int:
    """Sign of an exact or float scalar."""
    if isinstance(x, Golden):
        return x.sign()
    if isinstance(x, PiScalar):
        return x.sign()
    return (x > 0) - (x < 0)


def to_float(x) -> float:
    return float(x)


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, Golden))


def simplify(x):
    """Collapse a rational-valued Golden to a Fraction."""
    if isinstance(x, Golden) and x.b == 0:
        return x.a
    return x


@total_ordering
class PiScalar:
    """``coeff * pi**pi_power`` with exact (or float) ``coeff``.

    Products add powers; sums and comparisons need equal powers.
    """

    __slots__ = ("coeff", "pi_power")

    def __init__(self, coeff, pi_power: int = 1):
        if pi_power < 0:
            raise ValueError("pi_power must be non-negative")
        if isinstance(coeff, int) and not isinstance(coeff, bool):
            coeff = Fraction(coeff)
        self.coeff = coeff
        self.pi_power = int(pi_power)

    def __repr__(self) -> str:
        return f"PiScalar({self.coeff!s}, pi^{self.pi_power})"

    def _check_power(self, other: PiScalar) -> None:
        if self.pi_power != other.pi_power:
            raise ValueError(
                f"cannot add pi^{self.pi_power} and pi^{other.pi_power} terms"
            )

    def _lift(self, other) -> PiScalar | None:
        if isinstance(other, PiScalar):
            return other
        if other == 0:
            return PiScalar(0 * self.coeff, self.pi_power)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        self._check_power(o)
        return PiScalar(self.coeff + o.coeff, self.pi_power)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        self._check_power(o)
        return PiScalar(self.coeff - o.coeff, self.pi_power)

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self) -> PiScalar:
        return PiScalar(-self.coeff, self.pi_power)

    def __mul__(self, other):
        if isinstance(other, PiScalar):
            return PiScalar(self.coeff * other.coeff, self.pi_power + other.pi_power)
        if isinstance(other, (int, Fraction, Golden, float)):
            return PiScalar(self.coeff * other, self.pi_power)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PiScalar):
            return PiScalar(self.coeff / other.coeff, self.pi_power - other.pi_power)
        if isinstance(other, (int, Fraction, Golden, float)):
            return PiScalar(self.coeff / other, self.pi_power)
        return NotImplemented

    def __pow__(self, n: int) -> PiScalar:
        return PiScalar(self.coeff ** n, self.pi_power * n)

    def sign(self) -> int:
        # pi > 0
        return sign(self.coeff)

    def __eq__(self, other) -> bool:
        if isinstance(other, PiScalar):
            if self.coeff == 0 and other.coeff == 0:
                return True
            return self.pi_power == other.pi_power and self.coeff == other.coeff
        if other == 0:
            return self.coeff == 0
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.coeff, self.pi_power))

    def __lt__(self, other) -> bool:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        self._check_power(o)
        return sign(self.coeff - o.coeff) < 0

    def __float__(self) -> float:
        return float(self.coeff) * math.pi ** self.pi_power


# serialization ------------------------------------------------------------


def rational_to_json(x) -> str:
    x = _q(x)
    return f"{x.numerator}/{x.denominator}"


def rational_from_json(s) -> Fraction:
    if isinstance(s, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(s, float):
        raise TypeError(f"float {s!r} given where an exact rational is required")
    return _q(s)


def golden_to_json(x) -> dict:
    x = Golden.coerce(x)
    return {"a": rational_to_json(x.a), "b": rational_to_json(x.b)}


def golden_from_json(obj) -> Golden:
    if isinstance(obj, dict):
        if set(obj) != {"a", "b"}:
            raise ValueError(f"Golden must have keys 'a' and 'b', got {sorted(obj)}")
        return Golden(rational_from_json(obj["a"]), rational_from_json(obj["b"]))
    return Golden(rational_from_json(obj), 0)


def scalar_to_json(x):
    if isinstance(x, Golden):
        return golden_to_json(x)
    if isinstance(x, (int, Fraction)):
        return rational_to_json(x)
    return float(x)


def pi_scalar_to_json(x: PiScalar) -> dict:
    return {"coeff": scalar_to_json(x.coeff), "pi": x.pi_power}


def pi_scalar_from_json(obj) -> PiScalar:
    c = obj["coeff"]
    if isinstance(c, dict):
        coeff = golden_from_json(c)
    elif isinstance(c, float):
        coeff = c
    else:
        coeff = rational_from_json(c)
    return PiScalar(coeff, int(obj["pi"]))
