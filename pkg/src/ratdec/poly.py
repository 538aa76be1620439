"""Dense univariate polynomial algebra over GaussianRational.

A polynomial is a tuple of GaussianRational coefficients, constant term
first, with no trailing zero entries.  The zero polynomial is the empty
tuple and its degree is the sentinel None, never -1.

Everything that decides anything downstream (gcd, resultant, squarefree
structure) is exact.  Root isolation is the one numeric routine, and it
returns certified disjoint balls; no equality decision is made from them.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath
from mpmath import mpc, mpf

from .scalars import (
    DEFAULT_PRECISION,
    PRECISION_CAP,
    ComplexBall,
    GaussianRational,
    GR_ONE,
    GR_ZERO,
    PrecisionExhausted,
)

Poly = tuple  # tuple of GaussianRational, constant term first

ZERO: Poly = ()
ONE: Poly = (GR_ONE,)
X: Poly = (GR_ZERO, GR_ONE)


def make(coeffs) -> Poly:
    """Normalize an iterable of coefficient-like values into a Poly."""
    out = [GaussianRational.coerce(c) if not isinstance(c, GaussianRational) else c
           for c in coeffs]
    while out and out[-1].is_zero():
        out.pop()
    return tuple(out)


def from_ints(*coeffs) -> Poly:
    return make(coeffs)


def is_zero(p: Poly) -> bool:
    return len(p) == 0


def degree(p: Poly):
    """Degree of p, or None for the zero polynomial."""
    return len(p) - 1 if p else None


def leading(p: Poly) -> GaussianRational:
    if not p:
        raise ValueError("zero polynomial has no leading coefficient")
    return p[-1]


def constant_term(p: Poly) -> GaussianRational:
    return p[0] if p else GR_ZERO


def is_constant(p: Poly) -> bool:
    return len(p) <= 1


def constant(c) -> Poly:
    return make([c])


def monic(p: Poly) -> Poly:
    if not p:
        raise ValueError("cannot normalize the zero polynomial")
    lead = p[-1]
    if lead.is_one():
        return p
    return tuple(c / lead for c in p)


def add(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] = out[i] + c
    return make(out)


def neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def scale(p: Poly, c) -> Poly:
    c = GaussianRational.coerce(c) if not isinstance(c, GaussianRational) else c
    if c.is_zero():
        return ZERO
    return tuple(a * c for a in p)


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ZERO
    out = [GR_ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a.is_zero():
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return make(out)


def mul_xk(p: Poly, k: int) -> Poly:
    if not p:
        return ZERO
    return (GR_ZERO,) * k + p


def pow_poly(p: Poly, n: int) -> Poly:
    result = ONE
    base = p
    while n:
        if n & 1:
            result = mul(result, base)
        base = mul(base, base)
        n >>= 1
    return result


def divide(p: Poly, q: Poly):
    """Quotient and remainder with deg(rem) < deg(q)."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    if len(p) < len(q):
        return ZERO, p
    rem = list(p)
    dq = len(q) - 1
    lead_inv = GR_ONE / q[-1]
    quot = [GR_ZERO] * (len(p) - dq)
    for i in range(len(p) - 1, dq - 1, -1):
        c = rem[i]
        if c.is_zero():
            continue
        factor = c * lead_inv
        quot[i - dq] = factor
        for j in range(dq + 1):
            rem[i - dq + j] = rem[i - dq + j] - factor * q[j]
    return make(quot), make(rem)


def remainder(p: Poly, q: Poly) -> Poly:
    return divide(p, q)[1]


def exact_div(p: Poly, q: Poly) -> Poly:
    quot, rem = divide(p, q)
    if rem:
        raise ArithmeticError("division expected to be exact left a remainder")
    return quot


def derivative(p: Poly) -> Poly:
    if len(p) <= 1:
        return ZERO
    return make(p[i] * i for i in range(1, len(p)))


def eval_exact(p: Poly, a) -> GaussianRational:
    a = GaussianRational.coerce(a) if not isinstance(a, GaussianRational) else a
    acc = GR_ZERO
    for c in reversed(p):
        acc = acc * a + c
    return acc


def eval_ball(p: Poly, b: ComplexBall) -> ComplexBall:
    """Horner evaluation in conservative ball arithmetic."""
    acc = ComplexBall.exact_zero(b.prec)
    for c in reversed(p):
        acc = acc * b + ComplexBall.from_exact(c, b.prec)
    return acc


def reversed_poly(p: Poly) -> Poly:
    """x^deg(p) * p(1/x): the coefficient sequence reversed."""
    return make(reversed(p))


def from_roots(roots) -> Poly:
    out = ONE
    for r in roots:
        r = GaussianRational.coerce(r) if not isinstance(r, GaussianRational) else r
        out = mul(out, (-r, GR_ONE))
    return out


# ---------------------------------------------------------------------------
# gcd via a subresultant remainder sequence
# ---------------------------------------------------------------------------


def _clear_denominators(p: Poly) -> Poly:
    """Scale p by a positive integer so all parts are integers."""
    lcm = 1
    for c in p:
        lcm = lcm * c.re.denominator // math.gcd(lcm, c.re.denominator)
        lcm = lcm * c.im.denominator // math.gcd(lcm, c.im.denominator)
    if lcm == 1:
        return p
    return scale(p, lcm)


def _pseudo_remainder(a: Poly, b: Poly) -> Poly:
    delta = len(a) - len(b)
    scaled = scale(a, leading(b) ** (delta + 1))
    return remainder(scaled, b)


def gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor.

    Uses the subresultant PRS on denominator-cleared inputs so the
    intermediate coefficients stay integral instead of exploding the way
    naive fraction Euclid does.
    """
    if not p and not q:
        raise ValueError("gcd of two zero polynomials")
    if not p:
        return monic(q)
    if not q:
        return monic(p)
    if is_constant(p) or is_constant(q):
        return ONE
    a, b = _clear_denominators(p), _clear_denominators(q)
    if len(a) < len(b):
        a, b = b, a
    g = GR_ONE
    h = GR_ONE
    while True:
        delta = len(a) - len(b)
        r = _pseudo_remainder(a, b)
        if not r:
            return monic(b)
        if is_constant(r):
            return ONE
        a, b = b, scale(r, GR_ONE / (g * h ** delta))
        g = leading(a)
        if delta == 0:
            continue
        h = g ** delta / h ** (delta - 1)


# ---------------------------------------------------------------------------
# resultant
# ---------------------------------------------------------------------------


def resultant(p: Poly, q: Poly) -> GaussianRational:
    """Sylvester resultant of two nonzero polynomials.

    Computed by the Euclidean recurrence
    res(p, q) = (-1)^(deg p * deg q) * lc(q)^(deg p - deg r) * res(q, r)
    with r = p mod q, which matches the Sylvester determinant exactly.
    """
    if not p or not q:
        raise ValueError("resultant requires nonzero inputs")
    acc = GR_ONE
    while True:
        m, n = len(p) - 1, len(q) - 1
        if m == 0 and n == 0:
            return acc
        if m == 0:
            return acc * p[0] ** n
        if n == 0:
            return acc * q[0] ** m
        if m < n:
            if (m * n) % 2 == 1:
                acc = -acc
            p, q = q, p
            continue
        r = remainder(p, q)
        if not r:
            return GR_ZERO
        d = len(r) - 1
        if (m * n) % 2 == 1:
            acc = -acc
        acc = acc * leading(q) ** (m - d)
        p, q = q, r


# ---------------------------------------------------------------------------
# squarefree structure
# ---------------------------------------------------------------------------


def squarefree_part(p: Poly) -> Poly:
    """Monic polynomial with the same roots as p, all simple."""
    if not p:
        raise ValueError("squarefree part of the zero polynomial")
    if is_constant(p):
        return ONE
    g = gcd(p, derivative(p))
    return monic(exact_div(p, g))


def squarefree_decomposition(p: Poly):
    """Yun decomposition: list of (monic factor, multiplicity).

    p equals its leading coefficient times the product of
    factor^multiplicity; factors are squarefree and pairwise coprime.
    """
    if not p:
        raise ValueError("squarefree decomposition of the zero polynomial")
    if is_constant(p):
        return []
    g = gcd(p, derivative(p))
    if is_constant(g):
        return [(monic(p), 1)]
    out = []
    w = exact_div(p, g)
    y = exact_div(derivative(p), g)
    z = sub(y, derivative(w))
    i = 1
    while len(w) > 1:
        gi = gcd(w, z) if z else monic(w)
        if len(gi) > 1:
            out.append((gi, i))
        w = exact_div(w, gi)
        y = exact_div(z, gi) if z else ZERO
        z = sub(y, derivative(w))
        i += 1
    return out


def multiplicity_signature(p: Poly):
    """Sorted (multiplicity, distinct-root-count) histogram, for tests."""
    return sorted((m, len(f) - 1) for f, m in squarefree_decomposition(p))


# ---------------------------------------------------------------------------
# interpolation
# ---------------------------------------------------------------------------


def interpolate(points) -> Poly:
    """Exact Lagrange interpolation through (x_i, y_i) with distinct x_i."""
    xs = [GaussianRational.coerce(x) if not isinstance(x, GaussianRational) else x
          for x, _ in points]
    ys = [GaussianRational.coerce(y) if not isinstance(y, GaussianRational) else y
          for _, y in points]
    # Newton divided differences keep the work quadratic
    n = len(xs)
    coeffs = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (xs[i] - xs[i - j])
    result = ZERO
    for i in range(n - 1, -1, -1):
        result = add(mul(result, (-xs[i], GR_ONE)), constant(coeffs[i]))
    return result


# ---------------------------------------------------------------------------
# certified root isolation
# ---------------------------------------------------------------------------


def _aberth_approximations(sq: Poly, workbits: int):
    """Simultaneous-iteration root approximations of a squarefree poly."""
    n = len(sq) - 1
    with mpmath.workprec(workbits):
        coeffs = [c.to_mpc(workbits) for c in sq]
        lead = coeffs[-1]
        radius = mpf(1) + max(abs(c / lead) for c in coeffs[:-1])
        zs = [
            radius * mpmath.expjpi(mpf(2 * k) / n + mpf(1) / (2 * n))
            for k in range(n)
        ]
        dcoeffs = [coeffs[i] * i for i in range(1, len(coeffs))]

        def horner(cs, z):
            acc = mpc(0)
            for c in reversed(cs):
                acc = acc * z + c
            return acc

        eps = mpf(2) ** (-(workbits - 8))
        for _ in range(400):
            moved = mpf(0)
            for i in range(n):
                z = zs[i]
                pv = horner(coeffs, z)
                dv = horner(dcoeffs, z)
                if dv == 0:
                    zs[i] = z + radius * mpf(2) ** (-(workbits // 2))
                    moved = radius
                    continue
                w = pv / dv
                s = mpc(0)
                collision = False
                for j in range(n):
                    if j == i:
                        continue
                    dz = z - zs[j]
                    if dz == 0:
                        collision = True
                        break
                    s += 1 / dz
                if collision:
                    zs[i] = z + radius * mpf(2) ** (-(workbits // 2))
                    moved = radius
                    continue
                denom = 1 - w * s
                step = w if denom == 0 else w / denom
                zs[i] = z - step
                moved = max(moved, abs(step))
            if moved <= eps * max(mpf(1), radius):
                break
        return zs


def _certify_roots(sq: Poly, zs, prec: int):
    """Wrap approximations in balls guaranteed to contain one root each.

    For squarefree P of degree n, the distance from z to the nearest root
    is at most n*|P(z)/P'(z)|, so the ball around z with that radius
    contains at least one root; n pairwise-disjoint balls then contain
    exactly one root each.  Returns None when certification fails.
    """
    n = len(sq) - 1
    dsq = derivative(sq)
    balls = []
    for z in zs:
        zball = ComplexBall(z, 0, prec)
        pv = eval_ball(sq, zball)
        dv = eval_ball(dsq, zball)
        lower = dv.abs_lower()
        if not lower > 0:
            return None
        with mpmath.workprec(prec + 32):
            rho = (n * pv.abs_upper() / lower) * (1 + mpf(2) ** (4 - prec))
        balls.append(ComplexBall(z, rho, prec))
    for i in range(n):
        for j in range(i + 1, n):
            if not balls[i].is_disjoint_from(balls[j]):
                return None
    return balls


def isolate_squarefree(sq: Poly, precision: int = DEFAULT_PRECISION):
    """Certified pairwise-disjoint balls, one per root of a squarefree poly."""
    if len(sq) < 2:
        return []
    if len(sq) == 2:
        root = -sq[0] / sq[1]
        return [ComplexBall.from_exact(root, precision)]
    bits = precision
    while bits <= PRECISION_CAP:
        zs = _aberth_approximations(sq, bits + 32)
        balls = _certify_roots(sq, zs, bits)
        if balls is not None:
            return sorted(balls, key=lambda b: b.key())
        bits *= 2
    raise PrecisionExhausted(
        f"root isolation failed below {PRECISION_CAP} bits for degree "
        f"{len(sq) - 1}"
    )


def isolate_roots(p: Poly, precision: int = DEFAULT_PRECISION):
    """Disjoint certified balls, one per distinct root of p."""
    if not p:
        raise ValueError("cannot isolate roots of the zero polynomial")
    if is_constant(p):
        raise ValueError("constant polynomial has no roots")
    return isolate_squarefree(squarefree_part(p), precision)


def isolate_with_multiplicity(p: Poly, precision: int = DEFAULT_PRECISION):
    """List of (ball, multiplicity) pairs covering every distinct root.

    Balls are pairwise disjoint across the whole list; the Yun factors are
    coprime, so cross-factor disjointness is reachable by raising precision.
    """
    if not p:
        raise ValueError("cannot isolate roots of the zero polynomial")
    decomposition = squarefree_decomposition(p)
    bits = precision
    while bits <= PRECISION_CAP:
        out = []
        for factor, mult in decomposition:
            for ball in isolate_squarefree(factor, bits):
                out.append((ball, mult))
        ok = True
        for i in range(len(out)):
            for j in range(i + 1, len(out)):
                if not out[i][0].is_disjoint_from(out[j][0]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return sorted(out, key=lambda pair: pair[0].key())
        bits *= 2
    raise PrecisionExhausted(
        f"cross-factor separation failed below {PRECISION_CAP} bits"
    )


def to_fraction_pairs(p: Poly):
    """Plain (re, im) Fraction pairs, for serialization and oracles."""
    return [(c.re, c.im) for c in p]


def to_complex_list(p: Poly):
    """Python complex coefficients, constant first (numeric work only)."""
    return [complex(c) for c in p] if p else [0j]
