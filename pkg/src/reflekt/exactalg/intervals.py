"""Arbitrary-precision interval arithmetic with certified enclosures.

Thin wrapper over mpmath's interval context.  Every operation rounds
outward, so a ``BigFloatInterval`` is always a true enclosure of the real
number it tracks.  Containment of exact rationals and quadratic-field
elements is decided exactly: the dyadic endpoints are converted to
fractions and compared in the field, with no floating-point step.
"""

from __future__ import annotations

import numbers
from fractions import Fraction

import mpmath
from mpmath.ctx_iv import MPIntervalContext

from .quadfield import QuadExt

DEFAULT_PRECISION_BITS = 256


def mpf_to_fraction(x) -> Fraction:
    """Exact value of a finite mpmath float as a Fraction."""
    if hasattr(x, "_mpf_"):
        raw = x._mpf_
    else:
        raw = x
    sign, man, exp, _ = raw
    if man == 0 and exp != 0:
        raise ValueError(f"non-finite endpoint {x!r}")
    man = int(man)
    value = Fraction(man)
    if exp >= 0:
        value *= 2 ** exp
    else:
        value /= 2 ** (-exp)
    return -value if sign else value


class IntervalContext:
    """A fixed-precision interval arithmetic context."""

    def __init__(self, precision: int = DEFAULT_PRECISION_BITS):
        if precision < 2:
            raise ValueError("precision must be at least 2 bits")
        self.precision = precision
        self._ctx = MPIntervalContext()
        self._ctx.prec = precision

    def _wrap(self, ival) -> "BigFloatInterval":
        return BigFloatInterval(self, ival)

    def convert(self, x) -> "BigFloatInterval":
        if isinstance(x, BigFloatInterval):
            if x.context is not self:
                return self._wrap(self._ctx.mpf((x.raw.a, x.raw.b)))
            return x
        if isinstance(x, QuadExt):
            return self.from_quadext(x)
        if isinstance(x, Fraction):
            return self.from_fraction(x)
        if isinstance(x, numbers.Integral):
            return self._wrap(self._ctx.mpf(int(x)))
        if isinstance(x, float):
            return self._wrap(self._ctx.mpf(x))
        raise TypeError(f"cannot convert {type(x).__name__} to an interval")

    def from_fraction(self, q) -> "BigFloatInterval":
        q = Fraction(q)
        num = self._ctx.mpf(q.numerator)
        den = self._ctx.mpf(q.denominator)
        return self._wrap(num / den)

    def from_quadext(self, x: QuadExt) -> "BigFloatInterval":
        a = self.from_fraction(x.a)
        if x.b == 0:
            return a
        b = self.from_fraction(x.b)
        return a + b * self.sqrt_int(x.d)

    def sqrt_int(self, n: int) -> "BigFloatInterval":
        return self._wrap(self._ctx.sqrt(self._ctx.mpf(n)))

    def pi(self) -> "BigFloatInterval":
        return self._wrap(+self._ctx.pi)

    def cos(self, x) -> "BigFloatInterval":
        return self._wrap(self._ctx.cos(self.convert(x).raw))

    def sin(self, x) -> "BigFloatInterval":
        return self._wrap(self._ctx.sin(self.convert(x).raw))

    def zero(self) -> "BigFloatInterval":
        return self._wrap(self._ctx.mpf(0))

    def one(self) -> "BigFloatInterval":
        return self._wrap(self._ctx.mpf(1))


class BigFloatInterval:
    """A closed interval [lo, hi] of arbitrary-precision floats."""

    __slots__ = ("context", "raw")

    def __init__(self, context: IntervalContext, raw):
        self.context = context
        self.raw = raw

    # -- endpoint access --------------------------------------------------

    @property
    def lo(self):
        return self.raw.a

    @property
    def hi(self):
        return self.raw.b

    @property
    def precision(self) -> int:
        return self.context.precision

    def width(self) -> float:
        return float(self.raw.delta)

    def midpoint_float(self) -> float:
        return float(self.raw.mid)

    def endpoints_fractions(self) -> tuple:
        lo_raw, hi_raw = self.raw._mpi_
        return mpf_to_fraction(lo_raw), mpf_to_fraction(hi_raw)

    # -- arithmetic --------------------------------------------------------

    def _other(self, x):
        return self.context.convert(x).raw

    def __add__(self, x):
        return BigFloatInterval(self.context, self.raw + self._other(x))

    __radd__ = __add__

    def __sub__(self, x):
        return BigFloatInterval(self.context, self.raw - self._other(x))

    def __rsub__(self, x):
        return BigFloatInterval(self.context, self._other(x) - self.raw)

    def __mul__(self, x):
        return BigFloatInterval(self.context, self.raw * self._other(x))

    __rmul__ = __mul__

    def __truediv__(self, x):
        return BigFloatInterval(self.context, self.raw / self._other(x))

    def __rtruediv__(self, x):
        return BigFloatInterval(self.context, self._other(x) / self.raw)

    def __neg__(self):
        return BigFloatInterval(self.context, -self.raw)

    def sqrt(self):
        return BigFloatInterval(self.context, self.context._ctx.sqrt(self.raw))

    # -- certified predicates ----------------------------------------------

    def contains_exact(self, x) -> bool:
        """Whether the exact number x lies in [lo, hi]; decided exactly."""
        lo, hi = self.endpoints_fractions()
        if isinstance(x, QuadExt):
            return (x - lo).sign() >= 0 and (x - hi).sign() <= 0
        x = Fraction(x)
        return lo <= x <= hi

    def excludes_exact(self, x) -> bool:
        return not self.contains_exact(x)

    def intersects(self, other: "BigFloatInterval") -> bool:
        a1, b1 = self.endpoints_fractions()
        a2, b2 = other.endpoints_fractions()
        return a1 <= b2 and a2 <= b1

    def is_subset_of(self, other: "BigFloatInterval") -> bool:
        a1, b1 = self.endpoints_fractions()
        a2, b2 = other.endpoints_fractions()
        return a2 <= a1 and b1 <= b2

    def distance_to_exact(self, x) -> float:
        """0.0 when x is enclosed, otherwise the gap to the nearer endpoint."""
        lo, hi = self.endpoints_fractions()
        if isinstance(x, QuadExt):
            if (x - lo).sign() >= 0 and (x - hi).sign() <= 0:
                return 0.0
            if (x - lo).sign() < 0:
                return float(lo - x.a) - float(x.b) * x.d ** 0.5
            return float(x) - float(hi)
        x = Fraction(x)
        if lo <= x <= hi:
            return 0.0
        return float(lo - x) if x < lo else float(x - hi)

    def __float__(self):
        return self.midpoint_float()

    def __repr__(self):
        return f"BigFloatInterval({mpmath.nstr(self.raw, 20)}, bits={self.precision})"

    def format_endpoints(self, digits: int = 40) -> list:
        return [mpmath.nstr(self.raw.a, digits), mpmath.nstr(self.raw.b, digits)]
