"""Value-distribution laboratory tests.

Closed-form expectations below come from textbook identities: exp has
m(r) = r/pi and no zeros or poles, tan has simple poles on the half-odd
multiples of pi, sin takes the value 1 with double points on the lattice
pi/2 + 2 pi k, and a function and its shifted reciprocal share their
characteristic up to a bounded window.
"""

import cmath
import math
import random

import pytest

from ratdec.expr import parse_ratfun
from ratdec.nevanlinna import (
    MeroExpr,
    QuadratureError,
    argument_principle_count,
    characteristic_T,
    check_composition_identity,
    check_degree_growth,
    check_second_main,
    compose,
    counting_N,
    counting_Z,
    evaluate,
    inventory_poles,
    inventory_zeros,
    mero,
    proximity_m,
    render_svg,
)
from ratdec.ratfun import from_scalar
from ratdec.scalars import GaussianRational


def test_proximity_of_exp_matches_closed_form():
    for r in (1.0, math.pi, 10.0):
        assert abs(proximity_m(mero("exp"), r) - r / math.pi) < 1e-8


def test_counting_poles_of_tan():
    got, got_bar = counting_N(mero("tan"), 2.0)
    want = 2 * math.log(4 / math.pi)
    assert abs(got - want) < 1e-10
    assert abs(got_bar - want) < 1e-10


def test_counting_zeros_of_sin():
    z, zbar = counting_Z(mero("sin"), 0j, 4.0)
    want = math.log(4) + 2 * math.log(4 / math.pi)
    assert abs(z - want) < 1e-10
    assert abs(zbar - want) < 1e-10


def test_counting_pole_at_origin():
    n, _ = counting_N(mero("1/x"), math.e)
    assert abs(n - 1.0) < 1e-12


def test_inventory_ramification_of_sin():
    # sin - 1 has double roots exactly on pi/2 + 2 pi k
    inv = inventory_zeros(mero("sin"), 1 + 0j, 10.0)
    moduli = sorted(round(m, 3) for m, _ in inv)
    assert moduli == [1.571, 4.712, 7.854]
    assert all(mult == 2 for _, mult in inv)


def test_inventory_omitted_values():
    assert inventory_zeros(mero("exp"), 0j, 50.0) == []
    assert inventory_zeros(mero("tan"), 1j, 50.0) == []
    assert inventory_zeros(mero("tan"), -1j, 50.0) == []


def test_inventory_poles_of_tan():
    inv = inventory_poles(mero("tan"), 2.0)
    assert sorted(round(m, 4) for m, _ in inv) == [1.5708, 1.5708]
    assert all(mult == 1 for _, mult in inv)


def test_inventory_agrees_with_argument_principle():
    rng = random.Random(601)
    h = mero("sin")
    for r in (3.0, 7.0):
        for _ in range(3):
            b = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            inv = inventory_zeros(h, b, r)
            total = sum(mult for _, mult in inv)
            oracle = argument_principle_count(h, b, r)
            assert total == oracle


def test_radius_collision_guard():
    with pytest.raises(ValueError):
        counting_N(mero("tan"), math.pi / 2)
    with pytest.raises(ValueError):
        proximity_m(mero("1/(x - 1)"), 1.0)


def test_quadrature_cap_reports_worst_panel():
    # a pole just outside the collision window forces the panel cap
    h = mero("1/(x - 1)")
    with pytest.raises(QuadratureError) as info:
        proximity_m(h, 1.0000001)
    err = info.value
    assert err.panels == 2 ** 20
    assert err.radius == 1.0000001
    assert err.worst_interval is not None
    lo, hi = err.worst_interval
    assert 0 <= lo < hi


def test_characteristic_is_nondecreasing():
    radii = [1.0, 2.0, 4.0, 8.0, 16.0]
    for text in ("tan", "sin", "exp", "(sin^2 - 1)/(sin + 2)"):
        table = characteristic_T(mero(text), radii)
        for a, b in zip(table.T, table.T[1:]):
            assert b >= a - 1e-9


def test_characteristic_of_tan_grows_linearly():
    t = characteristic_T(mero("tan"), [50.0]).T[0]
    assert abs(t / 50.0 - 2 / math.pi) < 0.05 * (2 / math.pi)


def test_first_main_window():
    # T(r, 1/(h - b)) stays within a bounded window of T(r, h)
    tan = mero("tan")
    for b in (0, 1):
        shifted = tan.outer - from_scalar(GaussianRational(b))
        recip = MeroExpr(tan.base, from_scalar(GaussianRational(1)) / shifted)
        window = 2 * math.log(max(1.0, abs(b)) if b else 1.0) + 3.0
        for r in (3.0, 7.0, 12.0):
            t1 = characteristic_T(tan, [r]).T[0]
            t2 = characteristic_T(recip, [r]).T[0]
            assert abs(t1 - t2) <= window


def test_csv_format_frozen():
    table = characteristic_T(mero("tan"), [1.0, 2.0], targets=[0j])
    csv = table.to_csv({"expr": "tan"})
    lines = csv.strip().split("\n")
    assert lines[0] == "# function: tan"
    assert lines[1] == "# expr: tan"
    assert lines[2] == "r,m,N,Nbar,Z[0],Zbar[0],T"
    assert len(lines) == 5
    first = lines[3].split(",")
    assert first[0] == "1"
    assert float(first[2]) == 0.0
    # rendering twice gives identical bytes
    assert table.to_csv({"expr": "tan"}) == csv


def test_radii_validation():
    with pytest.raises(ValueError):
        characteristic_T(mero("tan"), [])
    with pytest.raises(ValueError):
        characteristic_T(mero("tan"), [2.0, 1.0])
    with pytest.raises(ValueError):
        characteristic_T(mero("tan"), [-1.0, 2.0])


def test_second_main_residual_policy():
    radii = [5.1, 11.3, 17.2, 23.4, 29.1, 35.3]
    verdict = check_second_main(mero("tan"), [0j, 1 + 0j], radii)
    assert verdict.passed
    assert len(verdict.residuals) == len(radii)
    payload = verdict.to_json_dict()
    assert payload["passed"] is True
    assert payload["relation"]
    verdict2 = check_second_main(mero("exp"), [0j, 1 + 0j], radii)
    assert verdict2.passed


def test_second_main_rejects_degenerate_grid():
    with pytest.raises(ValueError):
        check_second_main(mero("sin"), [0j, 1 + 0j], [0.001, 0.002, 0.003])
    with pytest.raises(ValueError):
        check_second_main(mero("sin"), [0j, 0j], [1.0, 2.0, 4.0])


def test_degree_growth_tracks_outer_degree():
    radii = [2.0 * (40.0 / 2.0) ** (i / 9.0) for i in range(10)]
    for text, deg in (("x^2", 2), ("(x^2 - 1)/x^2", 2)):
        verdict = check_degree_growth(parse_ratfun(text), mero("sin"), radii)
        assert verdict.passed
        # residuals hold ratio minus degree; the tail must sit inside the band
        assert abs(verdict.residuals[-1]) < 0.05 * deg


def test_compose_is_exact():
    outer = parse_ratfun("(x^2 + 1)/(x - 3)")
    inner = parse_ratfun("(x^3 - 2)/(x + 1)")
    comp = compose(outer, inner)
    rng = random.Random(602)
    for _ in range(20):
        x = GaussianRational(rng.randint(-8, 8), rng.randint(-8, 8))
        try:
            want = outer.eval_exact(inner.eval_exact(x))
        except ZeroDivisionError:
            continue
        assert comp.eval_exact(x) == want


def sample_points(rng, count, radius, clearances):
    """Uniform square samples keeping all listed moduli above 1e-2."""
    out = []
    while len(out) < count:
        z = complex(rng.uniform(-radius, radius), rng.uniform(-radius, radius))
        if all(abs(fn(z)) >= 1e-2 for fn in clearances):
            out.append(z)
    return out


def test_composition_identity_on_reciprocal_squares():
    F = parse_ratfun("(x^2 - 1)/x^2")
    G = parse_ratfun("x^2/(x^2 - 1)")
    rng = random.Random(604)
    pts = sample_points(rng, 300, 3.0, [cmath.sin, cmath.cos])
    result = check_composition_identity(F, G, mero("sin"), mero("cos"), pts)
    assert result.passed
    assert result.max_deviation <= 1e-9
    assert result.samples_used > 0


def test_composition_identity_detects_mismatch():
    F = parse_ratfun("x^2")
    G = parse_ratfun("x^3")
    rng = random.Random(605)
    pts = sample_points(rng, 200, 3.0, [cmath.sin])
    result = check_composition_identity(F, G, mero("sin"), mero("sin"), pts)
    assert not result.passed


def test_evaluate_matches_cmath():
    h = mero("(sin^2 - 1)/(sin + 2)")
    rng = random.Random(603)
    for _ in range(20):
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        s = cmath.sin(z)
        want = (s * s - 1) / (s + 2)
        got = evaluate(h, z)
        assert abs(got - want) < 1e-9 * max(1.0, abs(want))


def test_svg_renders_deterministically():
    series = [("T", [1.0, 2.0, 3.0], [0.5, 1.1, 1.9])]
    a = render_svg(series, "growth", "r", "T")
    b = render_svg(series, "growth", "r", "T")
    assert a == b
    assert a.startswith("<svg")
    assert "growth" in a and "</svg>" in a
