"""Exact complex scalars and conservative complex ball arithmetic.

Two layers: GaussianRational is the exact coefficient field (rational real
and imaginary parts), used by every symbolic decision in the package.
ComplexBall is a floating center/radius pair used only to *report* locations
of algebraic numbers; no equality or distinctness decision is ever made from
a ball alone.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath
from mpmath import mpf, mpc

DEFAULT_PRECISION = 128
PRECISION_CAP = 16384

# Guard bits used for intermediate ball computations; the radius padding
# below assumes correctly rounded mpf/mpc arithmetic at prec + _GUARD bits.
_GUARD = 32


class PrecisionExhausted(Exception):
    """A certified computation failed to separate at the precision cap."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to an exact rational")


class GaussianRational:
    """Exact element of Q(i): a complex number with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- coercion -----------------------------------------------------------

    @staticmethod
    def coerce(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussianRational")

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_one(self) -> bool:
        return self.re == 1 and not self.im

    def is_real(self) -> bool:
        return not self.im

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero GaussianRational")
        norm = other.re * other.re + other.im * other.im
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm_squared(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # -- comparison / hashing -----------------------------------------------

    def __eq__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    # -- conversion ---------------------------------------------------------

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def to_mpc(self, prec: int) -> mpc:
        with mpmath.workprec(prec):
            re = mpf(self.re.numerator) / mpf(self.re.denominator)
            im = mpf(self.im.numerator) / mpf(self.im.denominator)
            return mpc(re, im)

    def __repr__(self):
        if not self.im:
            return f"GaussianRational({self.re})"
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        from .expr import format_scalar

        return format_scalar(self)


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)


def gaussian(re, im=0) -> GaussianRational:
    """Shorthand constructor accepting ints, Fractions, or 'a/b' strings."""
    if isinstance(re, str):
        re = Fraction(re)
    if isinstance(im, str):
        im = Fraction(im)
    return GaussianRational(re, im)


# ---------------------------------------------------------------------------
# Complex balls
# ---------------------------------------------------------------------------


class ComplexBall:
    """Closed disk center +- radius guaranteed to contain one true value.

    All operations are conservative: the exact result of an operation on
    exact values lies inside the ball produced by the same operation on
    balls containing those values.  Radius bookkeeping assumes correctly
    rounded mpf arithmetic and pads every step by a few ulps.
    """

    __slots__ = ("center", "radius", "prec")

    def __init__(self, center, radius, prec: int = DEFAULT_PRECISION):
        # construct under the ball's own precision: mpmath constructors
        # round to the active context precision
        self.prec = prec
        with mpmath.workprec(prec + _GUARD):
            if isinstance(center, complex):
                center = mpc(center.real, center.imag)
            self.center = mpc(center)
            self.radius = mpf(radius)
        if self.radius < 0:
            raise ValueError("negative ball radius")

    @staticmethod
    def from_exact(value: GaussianRational, prec: int = DEFAULT_PRECISION) -> "ComplexBall":
        with mpmath.workprec(prec + _GUARD):
            c = value.to_mpc(prec + _GUARD)
            pad = (abs(c.real) + abs(c.imag)) * mpf(2) ** (4 - prec)
            return ComplexBall(c, pad, prec)

    @staticmethod
    def exact_zero(prec: int = DEFAULT_PRECISION) -> "ComplexBall":
        return ComplexBall(mpc(0), mpf(0), prec)

    def _pad(self, c: mpc) -> mpf:
        return (abs(c.real) + abs(c.imag)) * mpf(2) ** (4 - self.prec)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "ComplexBall") -> "ComplexBall":
        prec = min(self.prec, other.prec)
        with mpmath.workprec(prec + _GUARD):
            c = self.center + other.center
            r = self.radius + other.radius + self._pad(c)
            return ComplexBall(c, r, prec)

    def __neg__(self) -> "ComplexBall":
        # negate under the ball's precision: the ambient context would
        # round the center to its own (possibly much lower) precision
        with mpmath.workprec(self.prec + _GUARD):
            return ComplexBall(-self.center, self.radius, self.prec)

    def __sub__(self, other: "ComplexBall") -> "ComplexBall":
        return self + (-other)

    def __mul__(self, other: "ComplexBall") -> "ComplexBall":
        prec = min(self.prec, other.prec)
        with mpmath.workprec(prec + _GUARD):
            c = self.center * other.center
            a = abs(self.center)
            b = abs(other.center)
            r = (
                a * other.radius
                + b * self.radius
                + self.radius * other.radius
                + self._pad(c)
            )
            # pad the magnitude products for their own rounding
            r = r * (1 + mpf(2) ** (4 - prec))
            return ComplexBall(c, r, prec)

    def __truediv__(self, other: "ComplexBall") -> "ComplexBall":
        prec = min(self.prec, other.prec)
        if not other.is_certainly_nonzero():
            raise ZeroDivisionError("ball division by a possibly-zero ball")
        with mpmath.workprec(prec + _GUARD):
            c = self.center / other.center
            denom_low = abs(other.center) - other.radius
            r = (self.radius + abs(c) * other.radius) / denom_low + self._pad(c)
            r = r * (1 + mpf(2) ** (4 - prec))
            return ComplexBall(c, r, prec)

    def __pow__(self, n: int) -> "ComplexBall":
        result = ComplexBall.from_exact(GR_ONE, self.prec)
        for _ in range(n):
            result = result * self
        return result

    # -- certified predicates -------------------------------------------------

    def abs_lower(self) -> mpf:
        """Certified lower bound for |value|."""
        with mpmath.workprec(self.prec + _GUARD):
            lo = abs(self.center) * (1 - mpf(2) ** (4 - self.prec)) - self.radius
            return lo if lo > 0 else mpf(0)

    def abs_upper(self) -> mpf:
        """Certified upper bound for |value|."""
        with mpmath.workprec(self.prec + _GUARD):
            return abs(self.center) * (1 + mpf(2) ** (4 - self.prec)) + self.radius

    def is_certainly_nonzero(self) -> bool:
        """True only when every point of the ball is nonzero."""
        return self.abs_lower() > 0

    def contains_zero_possibly(self) -> bool:
        return not self.is_certainly_nonzero()

    def is_disjoint_from(self, other: "ComplexBall") -> bool:
        """Certified: the two disks share no point."""
        with mpmath.workprec(min(self.prec, other.prec) + _GUARD):
            d = abs(self.center - other.center)
            lo = d * (1 - mpf(2) ** (4 - min(self.prec, other.prec)))
            return lo > self.radius + other.radius

    def certainly_excludes_point(self, point: GaussianRational) -> bool:
        return (self - ComplexBall.from_exact(point, self.prec)).is_certainly_nonzero()

    def may_contain_point(self, point: GaussianRational) -> bool:
        return not self.certainly_excludes_point(point)

    # -- rendering ----------------------------------------------------------

    def key(self):
        """Deterministic sort key (real then imaginary center part)."""
        return (self.center.real, self.center.imag)

    def as_strings(self, digits: int = 20) -> dict:
        return {
            "re": mpmath.nstr(self.center.real, digits),
            "im": mpmath.nstr(self.center.imag, digits),
            "radius": mpmath.nstr(self.radius, 6),
            "precision_bits": self.prec,
        }

    def __complex__(self):
        return complex(self.center)

    def __repr__(self):
        return f"ComplexBall({mpmath.nstr(self.center, 10)}, r={mpmath.nstr(self.radius, 4)})"


def locate_point_among_balls(point: GaussianRational, balls) -> int:
    """Index of the unique ball that may contain an exact point.

    Caller guarantees the point is one of the values the (pairwise disjoint)
    balls isolate.  Every other ball must certifiedly exclude the point;
    raises PrecisionExhausted-style ValueError when separation fails.
    """
    candidates = [i for i, b in enumerate(balls) if b.may_contain_point(point)]
    if len(candidates) != 1:
        raise ValueError(f"point matches {len(candidates)} balls, need exactly 1")
    return candidates[0]
