"""Exact arithmetic in real quadratic fields Q(sqrt(d)).

Elements are stored as ``a + b*sqrt(d)`` with rational ``a``, ``b`` and a
square-free integer ``d >= 2``.  All arithmetic is closed and exact; sign
determination never touches floating point, so field elements can be totally
ordered and used as pivots in certified linear algebra.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Union

# Rationals are plain stdlib fractions: always reduced, positive denominator.
Rational = Fraction

Scalar = Union[int, Fraction, "QuadExt"]


def _is_square_free(d: int) -> bool:
    if d < 2:
        return False
    n, p = d, 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        if n % p == 0:
            n //= p
        p += 1
    return True


class QuadExt:
    """An element a + b*sqrt(d) of the real quadratic field Q(sqrt(d))."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Scalar, b: Scalar = 0, d: int = 5):
        if not _is_square_free(d):
            raise ValueError(f"d must be a square-free integer >= 2, got {d}")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    @classmethod
    def rational(cls, x, d: int) -> "QuadExt":
        return cls(Fraction(x), 0, d)

    @classmethod
    def sqrt_d(cls, d: int) -> "QuadExt":
        return cls(0, 1, d)

    def _coerce(self, other: Scalar) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.d != self.d:
                if other.b == 0:
                    return QuadExt(other.a, 0, self.d)
                if self.b == 0:
                    raise _FieldMismatch(self.d, other.d)
                raise _FieldMismatch(self.d, other.d)
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(other, 0, self.d)
        return NotImplemented  # type: ignore[return-value]

    # -- ring operations -------------------------------------------------

    def __add__(self, other: Scalar) -> "QuadExt":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "QuadExt":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadExt(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other: Scalar) -> "QuadExt":
        return (-self) + other

    def __neg__(self) -> "QuadExt":
        return QuadExt(-self.a, -self.b, self.d)

    def __mul__(self, other: Scalar) -> "QuadExt":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadExt(
            self.a * o.a + self.b * o.b * self.d,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(d))")
        return QuadExt(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other: Scalar) -> "QuadExt":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Scalar) -> "QuadExt":
        return self.inverse() * other

    def __pow__(self, n: int) -> "QuadExt":
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadExt(1, 0, self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "QuadExt":
        """Galois conjugate a - b*sqrt(d)."""
        return QuadExt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """Field norm a^2 - b^2 d (a rational number)."""
        return self.a * self.a - self.b * self.b * self.d

    # -- comparisons ------------------------------------------------------

    def sign(self) -> int:
        """Sign of the real number a + b*sqrt(d), by exact case analysis."""
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # Mixed signs: |a| vs |b|*sqrt(d) decided by squaring.
        aa, bbd = a * a, b * b * self.d
        if aa == bbd:
            return 0
        a_dominates = aa > bbd
        if a > 0:
            return 1 if a_dominates else -1
        return -1 if a_dominates else 1

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadExt):
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.d, self.a, self.b))

    def __lt__(self, other: Scalar) -> bool:
        o = self._coerce(other)
        return (self - o).sign() < 0

    def __le__(self, other: Scalar) -> bool:
        o = self._coerce(other)
        return (self - o).sign() <= 0

    def __gt__(self, other: Scalar) -> bool:
        o = self._coerce(other)
        return (self - o).sign() > 0

    def __ge__(self, other: Scalar) -> bool:
        o = self._coerce(other)
        return (self - o).sign() >= 0

    def __float__(self) -> float:
        # Approximate, for display and plotting only; certificates never use it.
        return float(self.a) + float(self.b) * self.d ** 0.5

    def __repr__(self) -> str:
        if self.b == 0:
            return f"QuadExt({self.a}, 0, d={self.d})"
        return f"QuadExt({self.a}, {self.b}, d={self.d})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.d})"

    def to_json(self):
        return {
            "a": [self.a.numerator, self.a.denominator],
            "b": [self.b.numerator, self.b.denominator],
            "d": self.d,
        }

    @classmethod
    def from_json(cls, data) -> "QuadExt":
        return cls(
            Fraction(data["a"][0], data["a"][1]),
            Fraction(data["b"][0], data["b"][1]),
            data["d"],
        )


class _FieldMismatch(ValueError):
    def __init__(self, d1, d2):
        super().__init__(f"cannot mix elements of Q(sqrt({d1})) and Q(sqrt({d2}))")


def quad_sign(x: Scalar) -> int:
    """Sign in {-1, 0, +1} of a rational or quadratic-field element."""
    if isinstance(x, QuadExt):
        return x.sign()
    return (x > 0) - (x < 0)


class MinimalPolynomial(NamedTuple):
    """Monic minimal polynomial, coefficients listed from constant to leading."""

    coefficients: tuple
    is_algebraic_integer: bool

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def evaluate(self, x: Scalar):
        acc = x * 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc


def minimal_polynomial(x: Scalar) -> MinimalPolynomial:
    """Minimal polynomial of x over Q, plus algebraic-integrality of x.

    Degree 1 (X - x) for rational x, otherwise X^2 - 2a X + (a^2 - b^2 d).
    """
    if not isinstance(x, QuadExt):
        x = QuadExt(Fraction(x), 0, 5)
    if x.b == 0:
        coeffs = (-x.a, Fraction(1))
    else:
        coeffs = (x.norm(), -2 * x.a, Fraction(1))
    integral = all(c.denominator == 1 for c in coeffs)
    return MinimalPolynomial(coeffs, integral)


# Frequently used constants.

def golden_ratio() -> QuadExt:
    """phi = (1 + sqrt(5)) / 2."""
    return QuadExt(Fraction(1, 2), Fraction(1, 2), 5)
