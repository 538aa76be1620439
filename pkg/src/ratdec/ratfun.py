"""Reduced rational functions over GaussianRational.

A RatFun is a pair numer/denom of Poly values with gcd(numer, denom) = 1
and a monic denominator.  The numerator is deliberately NOT normalized:
whether it is monic is a meaningful hypothesis checked by the condition
analysis, and rescaling it would change the function.
"""

from __future__ import annotations

from .scalars import GaussianRational, GR_ONE, GR_ZERO, ComplexBall
from . import poly


class RatFun:
    __slots__ = ("numer", "denom")

    def __init__(self, numer, denom=poly.ONE, _reduced=False):
        if not isinstance(numer, tuple):
            numer = poly.make(numer)
        if not isinstance(denom, tuple):
            denom = poly.make(denom)
        if poly.is_zero(denom):
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            numer, denom = _reduce_pair(numer, denom)
        object.__setattr__(self, "numer", numer)
        object.__setattr__(self, "denom", denom)

    def __setattr__(self, name, value):
        raise AttributeError("RatFun is immutable")

    # -- structure ------------------------------------------------------------

    def is_zero(self) -> bool:
        return poly.is_zero(self.numer)

    def is_constant(self) -> bool:
        return poly.is_constant(self.numer) and poly.is_constant(self.denom)

    def degree(self) -> int:
        """max(deg numer, deg denom); 0 for the zero function."""
        if self.is_zero():
            return 0
        return max(len(self.numer), len(self.denom)) - 1

    def is_numer_monic(self) -> bool:
        return bool(self.numer) and poly.leading(self.numer).is_one()

    # -- calculus / transforms --------------------------------------------------

    def derivative(self) -> "RatFun":
        a, b = self.numer, self.denom
        raw = poly.sub(poly.mul(poly.derivative(a), b), poly.mul(a, poly.derivative(b)))
        return RatFun(raw, poly.mul(b, b))

    def reciprocal(self) -> "RatFun":
        if self.is_zero():
            raise ZeroDivisionError("reciprocal of the zero function")
        return RatFun(self.denom, self.numer)

    def shift(self, h) -> "RatFun":
        """The function F + h; the denominator is untouched."""
        h = GaussianRational.coerce(h) if not isinstance(h, GaussianRational) else h
        return RatFun(poly.add(self.numer, poly.scale(self.denom, h)), self.denom)

    # -- evaluation ------------------------------------------------------------

    def eval_exact(self, a) -> GaussianRational:
        den = poly.eval_exact(self.denom, a)
        if den.is_zero():
            raise ZeroDivisionError("evaluation at a pole")
        return poly.eval_exact(self.numer, a) / den

    def eval_ball(self, b: ComplexBall) -> ComplexBall:
        den = poly.eval_ball(self.denom, b)
        return poly.eval_ball(self.numer, b) / den

    # -- field arithmetic (parser support) ---------------------------------------

    def __add__(self, other: "RatFun") -> "RatFun":
        return RatFun(
            poly.add(poly.mul(self.numer, other.denom), poly.mul(other.numer, self.denom)),
            poly.mul(self.denom, other.denom),
        )

    def __neg__(self) -> "RatFun":
        return RatFun(poly.neg(self.numer), self.denom, _reduced=True)

    def __sub__(self, other: "RatFun") -> "RatFun":
        return self + (-other)

    def __mul__(self, other: "RatFun") -> "RatFun":
        return RatFun(
            poly.mul(self.numer, other.numer), poly.mul(self.denom, other.denom)
        )

    def __truediv__(self, other: "RatFun") -> "RatFun":
        if other.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RatFun(
            poly.mul(self.numer, other.denom), poly.mul(self.denom, other.numer)
        )

    def __pow__(self, n: int) -> "RatFun":
        if n < 0:
            return self.reciprocal() ** (-n)
        return RatFun(poly.pow_poly(self.numer, n), poly.pow_poly(self.denom, n))

    # -- identity ----------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.numer == other.numer and self.denom == other.denom

    def __hash__(self):
        return hash((self.numer, self.denom))

    def __repr__(self):
        return f"RatFun({self.numer!r}, {self.denom!r})"

    def __str__(self):
        from .expr import format_ratfun

        return format_ratfun(self)


def _reduce_pair(numer, denom):
    if poly.is_zero(numer):
        return poly.ZERO, poly.ONE
    g = poly.gcd(numer, denom)
    if len(g) > 1:
        numer = poly.exact_div(numer, g)
        denom = poly.exact_div(denom, g)
    lead = poly.leading(denom)
    if not lead.is_one():
        inv = GR_ONE / lead
        numer = poly.scale(numer, inv)
        denom = poly.scale(denom, inv)
    return numer, denom


def reduce(numer, denom) -> RatFun:
    """Build a reduced, monic-denominator rational function."""
    return RatFun(numer, denom)


def from_scalar(c) -> RatFun:
    return RatFun(poly.constant(c), poly.ONE, _reduced=True)


X = RatFun(poly.X, poly.ONE, _reduced=True)


def distinct_zero_count(p) -> int:
    """Number of distinct complex zeros: degree of the squarefree part."""
    if poly.is_zero(p):
        raise ValueError("zero polynomial has no zero count")
    return len(poly.squarefree_part(p)) - 1


def min_distinct_zero_count(f: RatFun) -> int:
    """min over numerator and denominator of the distinct-zero counts."""
    return min(distinct_zero_count(f.numer), distinct_zero_count(f.denom))
