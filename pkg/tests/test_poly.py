"""Polynomial layer tests against naive independent oracles.

The gcd oracle is the classical remainder-sequence Euclid over the exact
field, the resultant oracle is a Sylvester determinant expanded by exact
Gaussian elimination, and the isolation oracle is numpy.roots.
"""

import random
from fractions import Fraction

import numpy as np
import pytest

from ratdec import poly
from ratdec.poly import ONE, X, ZERO
from ratdec.scalars import ComplexBall, GR_ONE, GR_ZERO, GaussianRational


def rand_poly(rng, max_deg=6, span=9, denom=1):
    deg = rng.randint(0, max_deg)
    coeffs = []
    for _ in range(deg + 1):
        re = Fraction(rng.randint(-span, span), rng.randint(1, denom))
        im = Fraction(rng.randint(-span, span), rng.randint(1, denom))
        coeffs.append(GaussianRational(re, im))
    p = poly.make(coeffs)
    return p


def nonzero_rand_poly(rng, max_deg=6, span=9, denom=1):
    while True:
        p = rand_poly(rng, max_deg, span, denom)
        if not poly.is_zero(p):
            return p


def euclid_gcd_oracle(p, q):
    """Plain Euclidean algorithm; valid because coefficients form a field."""
    a, b = p, q
    while not poly.is_zero(b):
        a, b = b, poly.remainder(a, b)
    if poly.is_zero(a):
        return a
    return poly.monic(a)


def sylvester_resultant_oracle(p, q):
    """Determinant of the Sylvester matrix by exact Gaussian elimination."""
    m = poly.degree(p)
    n = poly.degree(q)
    if m is None or n is None:
        return GR_ZERO
    if m == 0 and n == 0:
        return GR_ONE
    size = m + n
    rows = []
    pc = list(reversed(p))
    qc = list(reversed(q))
    for i in range(n):
        rows.append([GR_ZERO] * i + pc + [GR_ZERO] * (size - m - 1 - i))
    for i in range(m):
        rows.append([GR_ZERO] * i + qc + [GR_ZERO] * (size - n - 1 - i))
    det = GR_ONE
    for col in range(size):
        pivot = None
        for r in range(col, size):
            if not rows[r][col].is_zero():
                pivot = r
                break
        if pivot is None:
            return GR_ZERO
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det = det * rows[col][col]
        inv = GR_ONE / rows[col][col]
        for r in range(col + 1, size):
            factor = rows[r][col] * inv
            if factor.is_zero():
                continue
            rows[r] = [
                rows[r][c] - factor * rows[col][c] for c in range(size)
            ]
    return det


def test_make_strips_leading_zeros():
    p = poly.make([GaussianRational(1), GaussianRational(0), GaussianRational(0)])
    assert poly.degree(p) == 0
    assert poly.degree(ZERO) is None
    assert poly.degree(poly.from_ints(0, 0)) is None


def test_arithmetic_ring_axioms():
    rng = random.Random(101)
    for _ in range(60):
        a = rand_poly(rng, 5)
        b = rand_poly(rng, 5)
        c = rand_poly(rng, 5)
        assert poly.add(a, b) == poly.add(b, a)
        assert poly.mul(a, b) == poly.mul(b, a)
        assert poly.mul(a, poly.add(b, c)) == poly.add(poly.mul(a, b), poly.mul(a, c))
        assert poly.sub(a, a) == ZERO
        assert poly.mul(a, ONE) == a
        assert poly.mul(a, ZERO) == ZERO


def test_division_identity():
    rng = random.Random(102)
    for _ in range(80):
        a = rand_poly(rng, 8, denom=3)
        b = nonzero_rand_poly(rng, 4, denom=3)
        q, r = poly.divide(a, b)
        assert poly.add(poly.mul(q, b), r) == a
        if not poly.is_zero(r):
            assert poly.degree(r) < poly.degree(b)


def test_exact_div_round_trip():
    rng = random.Random(103)
    for _ in range(40):
        a = nonzero_rand_poly(rng, 4)
        b = nonzero_rand_poly(rng, 4)
        prod = poly.mul(a, b)
        assert poly.exact_div(prod, b) == a


def test_derivative_product_rule():
    rng = random.Random(104)
    for _ in range(40):
        a = rand_poly(rng, 5)
        b = rand_poly(rng, 5)
        lhs = poly.derivative(poly.mul(a, b))
        rhs = poly.add(
            poly.mul(poly.derivative(a), b), poly.mul(a, poly.derivative(b))
        )
        assert lhs == rhs


def test_eval_exact_matches_horner():
    rng = random.Random(105)
    for _ in range(40):
        p = rand_poly(rng, 6, denom=4)
        x = GaussianRational(
            Fraction(rng.randint(-5, 5), rng.randint(1, 3)),
            Fraction(rng.randint(-5, 5), rng.randint(1, 3)),
        )
        acc = GR_ZERO
        for c in reversed(p):
            acc = acc * x + c
        assert poly.eval_exact(p, x) == acc


def test_eval_ball_contains_exact_value():
    rng = random.Random(106)
    for _ in range(30):
        p = rand_poly(rng, 6, denom=3)
        x = GaussianRational(Fraction(rng.randint(-4, 4), 3), Fraction(rng.randint(-4, 4), 3))
        exact = poly.eval_exact(p, x)
        ball = poly.eval_ball(p, ComplexBall.from_exact(x, 128))
        assert ball.may_contain_point(exact)


def test_gcd_matches_euclid_oracle():
    rng = random.Random(107)
    for _ in range(120):
        a = rand_poly(rng, 6)
        b = rand_poly(rng, 6)
        got = poly.gcd(a, b)
        want = euclid_gcd_oracle(a, b)
        assert got == want


def test_gcd_with_forced_common_factor():
    rng = random.Random(108)
    for _ in range(60):
        common = poly.monic(nonzero_rand_poly(rng, 3))
        a = poly.mul(common, nonzero_rand_poly(rng, 3))
        b = poly.mul(common, nonzero_rand_poly(rng, 3))
        g = poly.gcd(a, b)
        q, r = poly.divide(g, common)
        assert poly.is_zero(r)
        assert g == euclid_gcd_oracle(a, b)


def test_gcd_edge_cases():
    p = poly.from_ints(2, 4)
    assert poly.gcd(p, ZERO) == poly.monic(p)
    assert poly.gcd(ZERO, p) == poly.monic(p)
    with pytest.raises(ValueError):
        poly.gcd(ZERO, ZERO)
    assert poly.leading(poly.gcd(p, poly.from_ints(0, 2))) == GR_ONE


def test_resultant_matches_sylvester_oracle():
    rng = random.Random(109)
    checked = 0
    for _ in range(100):
        a = nonzero_rand_poly(rng, 5)
        b = nonzero_rand_poly(rng, 5)
        if poly.degree(a) + poly.degree(b) == 0:
            continue
        got = poly.resultant(a, b)
        want = sylvester_resultant_oracle(a, b)
        assert got == want
        checked += 1
    assert checked > 80


def test_resultant_multiplicative_in_first_argument():
    rng = random.Random(110)
    for _ in range(40):
        a = nonzero_rand_poly(rng, 3)
        b = nonzero_rand_poly(rng, 3)
        c = nonzero_rand_poly(rng, 3)
        if poly.degree(c) == 0:
            continue
        lhs = poly.resultant(poly.mul(a, b), c)
        rhs = poly.resultant(a, c) * poly.resultant(b, c)
        assert lhs == rhs


def test_resultant_zero_iff_common_root():
    x_minus_1 = poly.from_ints(-1, 1)
    a = poly.mul(x_minus_1, poly.from_ints(1, 1))
    b = poly.mul(x_minus_1, poly.from_ints(2, 1))
    assert poly.resultant(a, b).is_zero()
    c = poly.from_ints(1, 1)
    d = poly.from_ints(2, 1)
    assert not poly.resultant(c, d).is_zero()


def test_squarefree_decomposition_reconstructs():
    rng = random.Random(111)
    for _ in range(40):
        base1 = poly.monic(nonzero_rand_poly(rng, 2))
        base2 = poly.monic(nonzero_rand_poly(rng, 2))
        if poly.degree(base1) == 0 or poly.degree(base2) == 0:
            continue
        if not poly.gcd(base1, base2) == ONE:
            continue
        p = poly.mul(base1, poly.mul(base2, base2))
        parts = poly.squarefree_decomposition(p)
        rebuilt = ONE
        for factor, mult in parts:
            assert poly.leading(factor) == GR_ONE
            rebuilt = poly.mul(rebuilt, poly.pow_poly(factor, mult))
        assert rebuilt == poly.monic(p)
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                assert poly.gcd(parts[i][0], parts[j][0]) == ONE


def test_squarefree_part_kills_multiplicity():
    p = poly.from_roots([GaussianRational(1), GaussianRational(1), GaussianRational(2)])
    sq = poly.squarefree_part(p)
    assert poly.degree(sq) == 2
    assert poly.eval_exact(sq, GaussianRational(1)).is_zero()
    assert poly.eval_exact(sq, GaussianRational(2)).is_zero()


def test_multiplicity_signature():
    p = poly.mul(
        poly.pow_poly(poly.from_ints(-1, 1), 3),
        poly.pow_poly(poly.from_ints(2, 1), 2),
    )
    sig = poly.multiplicity_signature(p)
    assert sig == ((1, 0), (2, 1), (3, 1)) or dict(sig) == {2: 1, 3: 1}


def test_interpolation_round_trip():
    rng = random.Random(112)
    for _ in range(30):
        p = rand_poly(rng, 8, denom=2)
        d = poly.degree(p)
        if d is None:
            continue
        points = []
        for k in range(d + 1):
            xk = GaussianRational(k)
            points.append((xk, poly.eval_exact(p, xk)))
        assert poly.interpolate(points) == p


def test_from_roots_and_reversed():
    roots = [GaussianRational(1), GaussianRational(-2), GaussianRational(0, 1)]
    p = poly.from_roots(roots)
    assert poly.degree(p) == 3
    for r in roots:
        assert poly.eval_exact(p, r).is_zero()
    rev = poly.reversed_poly(p)
    assert len(rev) <= len(p)
    x4 = poly.from_ints(0, 0, 0, 0, 1)
    assert poly.reversed_poly(x4) == ONE


def test_isolation_against_numpy_oracle():
    rng = random.Random(113)
    trials = 0
    while trials < 25:
        p = poly.monic(nonzero_rand_poly(rng, 6))
        d = poly.degree(p)
        if d is None or d == 0:
            continue
        if poly.degree(poly.gcd(p, poly.derivative(p))) != 0:
            continue
        trials += 1
        balls = poly.isolate_roots(p)
        assert len(balls) == d
        for i in range(len(balls)):
            for j in range(i + 1, len(balls)):
                assert balls[i].is_disjoint_from(balls[j])
        np_roots = np.roots([complex(c) for c in reversed(p)])
        used = set()
        for ball in balls:
            c = complex(float(ball.center.real), float(ball.center.imag))
            best = min(
                (idx for idx in range(len(np_roots)) if idx not in used),
                key=lambda idx: abs(np_roots[idx] - c),
            )
            assert abs(np_roots[best] - c) < 1e-6
            used.add(best)


def test_isolation_with_multiplicity():
    p = poly.mul(
        poly.pow_poly(poly.from_ints(-1, 1), 2),
        poly.from_ints(3, 1),
    )
    located = poly.isolate_with_multiplicity(p)
    mults = sorted(m for _, m in located)
    assert mults == [1, 2]
    for ball, mult in located:
        if mult == 2:
            assert ball.may_contain_point(GaussianRational(1))
        else:
            assert ball.may_contain_point(GaussianRational(-3))


def test_isolation_rejects_zero_poly():
    with pytest.raises(ValueError):
        poly.isolate_roots(ZERO)


def test_gaussian_integer_coefficients():
    p = poly.make([GaussianRational(0, 1), GR_ONE])
    balls = poly.isolate_roots(p)
    assert len(balls) == 1
    assert balls[0].may_contain_point(GaussianRational(0, -1))
