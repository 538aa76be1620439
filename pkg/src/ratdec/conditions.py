"""Admissibility analysis for pairs of rational functions.

Given nonconstant F = A/B and G = C/D over the Gaussian rationals, this
module finds the critical values of F, decides per value whether the pair
passes the admissibility conditions (variant "M" or the stricter
"M-prime"), and certifies the fiber structure (q*k pairwise distinct
points b such that C(b) = y_j * D(b)) that the degree bounds rest on.

Every accept/reject decision is made by exact gcd/resultant computations.
Complex balls only localize algebraic numbers for reporting and for
matching objects that exact bookkeeping already proved equal; when a ball
is too coarse to match, the whole analysis retries at doubled precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .scalars import (
    DEFAULT_PRECISION,
    PRECISION_CAP,
    ComplexBall,
    GaussianRational,
    GR_ONE,
    GR_ZERO,
    PrecisionExhausted,
)
from . import poly
from .ratfun import RatFun

VARIANTS = ("M", "M-prime")

REASON_VALUE_ONE = "condition3-value-equals-1"
REASON_G_HITS = "condition4-G-hits-value"
REASON_D_VANISHES = "condition4-D-vanishes"
REASON_C_VANISHES = "condition4prime-C-vanishes"
REASON_NOT_MONIC = "monicity-failure-global"
REASON_POLE = "value-at-pole"


class _Ambiguous(Exception):
    """Internal: ball matching failed at the current precision; retry."""


class FiberDegreeError(RuntimeError):
    """The fiber polynomial cannot reach degree q*k for this input."""


class FiberCertificationError(RuntimeError):
    """Distinctness of the fiber roots could not be certified."""


@dataclass
class CriticalPoint:
    location: ComplexBall
    multiplicity_s: int  # vanishing order of F - F(c) at c, always >= 2
    value_ball: ComplexBall

    def to_json_dict(self):
        return {
            "location": self.location.as_strings(),
            "vanishing_order": self.multiplicity_s,
            "value": self.value_ball.as_strings(),
        }


@dataclass
class ValueRecord:
    value_ball: ComplexBall
    witnesses: list  # CriticalPoint entries sharing this value

    @property
    def witness(self) -> CriticalPoint:
        return self.witnesses[0]


@dataclass
class CriticalValueData:
    value_poly: tuple  # polynomial in y whose roots are the critical values
    records: list  # ValueRecord per distinct critical value


@dataclass
class Exclusion:
    ball: ComplexBall | None
    reason: str
    note: str = ""

    def to_json_dict(self):
        return {
            "value": self.ball.as_strings() if self.ball is not None else None,
            "reason": self.reason,
            "note": self.note,
        }


@dataclass
class ConditionReport:
    variant: str
    admissible: list  # ValueRecord per admissible value
    k: int
    exclusions: list  # Exclusion entries
    checked_condition1: bool
    trace: str
    value_poly: tuple
    adm_poly: tuple  # monic squarefree; roots are the admissible values
    F: RatFun
    G: RatFun
    precision: int

    @property
    def inapplicable(self) -> bool:
        return not self.checked_condition1

    def to_json_dict(self):
        return {
            "variant": self.variant,
            "k": self.k,
            "checked_condition1": self.checked_condition1,
            "trace": self.trace,
            "admissible": [
                {
                    "value": rec.value_ball.as_strings(),
                    "witness": rec.witness.to_json_dict(),
                    "witness_count": len(rec.witnesses),
                }
                for rec in self.admissible
            ],
            "exclusions": [e.to_json_dict() for e in self.exclusions],
        }


@dataclass
class FiberEntry:
    value_ball: ComplexBall
    witness_ball: ComplexBall
    vanishing_order: int
    residual_at_witness: ComplexBall  # certified nonzero
    roots: list  # q ComplexBall entries

    def to_json_dict(self):
        return {
            "value": self.value_ball.as_strings(),
            "witness": self.witness_ball.as_strings(),
            "vanishing_order": self.vanishing_order,
            "residual_at_witness": self.residual_at_witness.as_strings(),
            "roots": [b.as_strings() for b in self.roots],
        }


@dataclass
class FiberReport:
    q: int
    k: int
    entries: list = field(default_factory=list)
    certified: bool = True

    @property
    def all_roots(self):
        return [b for e in self.entries for b in e.roots]

    def to_json_dict(self):
        return {
            "q": self.q,
            "k": self.k,
            "root_count": self.q * self.k,
            "certified": self.certified,
            "values": [e.to_json_dict() for e in self.entries],
        }


# ---------------------------------------------------------------------------
# critical structure of F
# ---------------------------------------------------------------------------


def _critical_numerator_full(F: RatFun):
    """Numerator of F' with every factor shared with the denominator removed.

    Returns (N, stripped): roots of N are exactly the zeros of F' that are
    not poles of F; stripped collects the removed pole-supported factors.
    """
    if F.is_constant():
        raise ValueError("constant function has no critical structure")
    a, b = F.numer, F.denom
    raw = poly.sub(
        poly.mul(poly.derivative(a), b), poly.mul(a, poly.derivative(b))
    )
    stripped = poly.ONE
    if poly.is_zero(raw):
        raise ValueError("constant function has no critical structure")
    g = poly.gcd(raw, b)
    while len(g) > 1:
        raw = poly.exact_div(raw, g)
        stripped = poly.mul(stripped, g)
        g = poly.gcd(raw, b)
    return raw, stripped


def critical_numerator(F: RatFun) -> tuple:
    return _critical_numerator_full(F)[0]


def _critical_points(F: RatFun, N: tuple, prec: int):
    pts = []
    for ball, mult in poly.isolate_with_multiplicity(N, prec):
        den = poly.eval_ball(F.denom, ball)
        if not den.is_certainly_nonzero():
            raise _Ambiguous("denominator not separated from a critical point")
        value = poly.eval_ball(F.numer, ball) / den
        pts.append(CriticalPoint(ball, mult + 1, value))
    return pts


def _witness_order(cp: CriticalPoint):
    return (-cp.multiplicity_s, cp.location.center.real, cp.location.center.imag)


def value_polynomial(F: RatFun) -> tuple:
    """Polynomial in y whose roots (with multiplicity) are F's critical values."""
    N = critical_numerator(F)
    if poly.is_constant(N):
        return poly.ONE
    return resultant_pencil(N, poly.ZERO, F.numer, F.denom)


def critical_values(F: RatFun, precision: int = DEFAULT_PRECISION) -> CriticalValueData:
    bits = precision
    while bits <= PRECISION_CAP:
        try:
            return _critical_values_at(F, bits)
        except _Ambiguous:
            bits *= 2
    raise PrecisionExhausted("critical value grouping failed at the precision cap")


def _critical_values_at(F: RatFun, prec: int) -> CriticalValueData:
    N = critical_numerator(F)
    if poly.is_constant(N):
        return CriticalValueData(poly.ONE, [])
    vp = resultant_pencil(N, poly.ZERO, F.numer, F.denom)
    w = poly.squarefree_part(vp)
    balls = poly.isolate_squarefree(w, prec)
    groups = [[] for _ in balls]
    for cp in _critical_points(F, N, prec):
        candidates = [
            i for i, vb in enumerate(balls)
            if not vb.is_disjoint_from(cp.value_ball)
        ]
        if len(candidates) != 1:
            raise _Ambiguous("critical value not separated")
        groups[candidates[0]].append(cp)
    records = []
    for i, vb in enumerate(balls):
        assert groups[i], "a root of the value polynomial has no witness"
        groups[i].sort(key=_witness_order)
        records.append(ValueRecord(vb, groups[i]))
    return CriticalValueData(vp, records)


# ---------------------------------------------------------------------------
# resultants of pencils, by evaluation and exact interpolation
# ---------------------------------------------------------------------------


def resultant_pencil(p1: tuple, q1: tuple, p2: tuple, q2: tuple) -> tuple:
    """R(y) = Res_x(p1 - y*q1, p2 - y*q2) as an exact polynomial in y.

    The resultant is taken at the generic degrees m = deg(p1 - y*q1) and
    n = deg(p2 - y*q2); sample points where either degree drops are
    skipped, so every sample is a true resultant of full-degree inputs.
    """

    def pencil_degree(p, q):
        if poly.is_zero(p) and poly.is_zero(q):
            raise ValueError("zero pencil in resultant computation")
        dp = len(p) - 1 if p else -1
        dq = len(q) - 1 if q else -1
        return max(dp, dq)

    m = pencil_degree(p1, q1)
    n = pencil_degree(p2, q2)
    if m == 0 and n == 0:
        return poly.ONE
    if n == 0:
        base = poly.make([poly.constant_term(p2), -poly.constant_term(q2)])
        return poly.pow_poly(base, m)
    if m == 0:
        base = poly.make([poly.constant_term(p1), -poly.constant_term(q1)])
        return poly.pow_poly(base, n)
    bound = (0 if poly.is_zero(q1) else n) + (0 if poly.is_zero(q2) else m)
    if bound == 0:
        return poly.constant(poly.resultant(p1, p2))
    samples = []
    t = 0
    while len(samples) < bound + 1:
        y = GaussianRational(t)
        t += 1
        s1 = poly.sub(p1, poly.scale(q1, y))
        s2 = poly.sub(p2, poly.scale(q2, y))
        if len(s1) - 1 != m or len(s2) - 1 != n:
            continue
        samples.append((y, poly.resultant(s1, s2)))
    return poly.interpolate(samples)


def condition4_resultants(G: RatFun, variant: str = "M"):
    """The three exclusion resultants in y for the critical-value test.

    With S_y = C - y*D and S_y' its x-derivative:
      R1(y) = Res_x(S_y, S_y')   zero iff S_y has a repeated root,
      R2(y) = Res_x(D, S_y')     zero iff D vanishes at a root of S_y',
      R3(y) = Res_x(C, S_y')     zero iff C vanishes there (strict variant).
    """
    _require_variant(variant)
    c, d = G.numer, G.denom
    cp, dp = poly.derivative(c), poly.derivative(d)
    r1 = resultant_pencil(c, d, cp, dp)
    r2 = resultant_pencil(d, poly.ZERO, cp, dp)
    r3 = resultant_pencil(c, poly.ZERO, cp, dp) if variant == "M-prime" else None
    return r1, r2, r3


def _require_variant(variant: str):
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")


def _direct_exclusion_at(G: RatFun, y0: GaussianRational, variant: str):
    """Decide the per-value conditions exactly at one rational value y0.

    Used where the interpolated pencil resultants are blind because both
    pencil degrees drop (the value 0 when deg C < deg D).
    """
    c, d = G.numer, G.denom
    s = poly.sub(c, poly.scale(d, y0))
    sp = poly.sub(poly.derivative(c), poly.scale(poly.derivative(d), y0))
    if poly.is_zero(sp):
        # every point of the plane is a root of S_y0'
        if len(s) > 1:
            return REASON_G_HITS
        if len(d) > 1:
            return REASON_D_VANISHES
        if variant == "M-prime" and len(c) > 1:
            return REASON_C_VANISHES
        return None
    if poly.is_constant(sp):
        return None  # nonzero constant has no roots
    if len(s) > 1 and len(poly.gcd(s, sp)) > 1:
        return REASON_G_HITS
    if len(d) > 1 and len(poly.gcd(d, sp)) > 1:
        return REASON_D_VANISHES
    if variant == "M-prime" and len(c) > 1 and len(poly.gcd(c, sp)) > 1:
        return REASON_C_VANISHES
    return None


# ---------------------------------------------------------------------------
# the decision procedure
# ---------------------------------------------------------------------------


def check_conditions(
    F: RatFun, G: RatFun, variant: str = "M", precision: int = DEFAULT_PRECISION
) -> ConditionReport:
    """Full admissibility analysis of the pair (F, G).

    Returns a report carrying the maximal admissible k (one witness per
    surviving distinct critical value of F), the exact polynomial whose
    roots are the admissible values, and a reason for every exclusion.
    """
    _require_variant(variant)
    if F.is_constant() or G.is_constant():
        raise ValueError("condition analysis requires nonconstant F and G")
    bits = precision
    while bits <= PRECISION_CAP:
        try:
            return _check_conditions_at(F, G, variant, bits)
        except _Ambiguous:
            bits *= 2
    raise PrecisionExhausted("condition analysis failed at the precision cap")


def _check_conditions_at(F, G, variant, prec) -> ConditionReport:
    if not G.is_numer_monic():
        return ConditionReport(
            variant=variant,
            admissible=[],
            k=0,
            exclusions=[
                Exclusion(None, REASON_NOT_MONIC, "numerator of G is not monic")
            ],
            checked_condition1=False,
            trace="inapplicable: numerator of G is not monic",
            value_poly=poly.ONE,
            adm_poly=poly.ONE,
            F=F,
            G=G,
            precision=prec,
        )

    exclusions = []
    n_crit, stripped = _critical_numerator_full(F)
    if len(stripped) > 1:
        for ball in poly.isolate_roots(stripped, prec):
            exclusions.append(
                Exclusion(ball, REASON_POLE, "multiple pole of F; value infinite")
            )

    if poly.is_constant(n_crit):
        return ConditionReport(
            variant=variant,
            admissible=[],
            k=0,
            exclusions=exclusions,
            checked_condition1=True,
            trace="no critical points",
            value_poly=poly.ONE,
            adm_poly=poly.ONE,
            F=F,
            G=G,
            precision=prec,
        )

    vp = resultant_pencil(n_crit, poly.ZERO, F.numer, F.denom)
    work = poly.squarefree_part(vp)
    exclusion_factors = []

    c, d = G.numer, G.denom
    c_deg, d_deg = len(c) - 1, len(d) - 1

    # fibers over the value 1 degenerate when deg C = deg D (both monic)
    if c_deg == d_deg and poly.eval_exact(vp, GR_ONE).is_zero():
        exclusions.append(
            Exclusion(
                ComplexBall.from_exact(GR_ONE, prec),
                REASON_VALUE_ONE,
                "deg C = deg D",
            )
        )
        one_factor = poly.make([-1, 1])
        exclusion_factors.append(one_factor)
        work = poly.exact_div(work, one_factor)

    # when deg C < deg D both pencils drop degree at y = 0, which blinds the
    # interpolated resultants there; decide the value 0 directly
    zero_admissible = False
    if c_deg < d_deg and not poly.eval_exact(work, GR_ZERO):
        reason = _direct_exclusion_at(G, GR_ZERO, variant)
        if reason is not None:
            exclusions.append(
                Exclusion(
                    ComplexBall.from_exact(GR_ZERO, prec),
                    reason,
                    "checked directly at y = 0",
                )
            )
            exclusion_factors.append(poly.X)
        else:
            zero_admissible = True
        work = poly.exact_div(work, poly.X)

    r1, r2, r3 = condition4_resultants(G, variant)
    stages = [(r1, REASON_G_HITS), (r2, REASON_D_VANISHES)]
    if r3 is not None:
        stages.append((r3, REASON_C_VANISHES))
    for res_poly, reason in stages:
        if len(work) <= 1:
            break
        g = poly.gcd(work, res_poly)
        if len(g) > 1:
            for ball in poly.isolate_squarefree(g, prec):
                exclusions.append(Exclusion(ball, reason))
            exclusion_factors.append(g)
            work = poly.exact_div(work, g)

    adm = poly.mul(work, poly.X) if zero_admissible else work
    k = len(adm) - 1

    admissible = []
    if k > 0:
        adm_balls = poly.isolate_squarefree(adm, prec)
        groups = [[] for _ in adm_balls]
        for cp in _critical_points(F, n_crit, prec):
            if poly.eval_ball(adm, cp.value_ball).is_certainly_nonzero():
                continue  # this critical value is certifiedly not admissible
            for f in exclusion_factors:
                if not poly.eval_ball(f, cp.value_ball).is_certainly_nonzero():
                    raise _Ambiguous("critical value not attributed to a factor")
            candidates = [
                i for i, vb in enumerate(adm_balls)
                if not vb.is_disjoint_from(cp.value_ball)
            ]
            if len(candidates) != 1:
                raise _Ambiguous("critical value matches several value balls")
            groups[candidates[0]].append(cp)
        for i, vb in enumerate(adm_balls):
            assert groups[i], "admissible value without a witnessing critical point"
            groups[i].sort(key=_witness_order)
            admissible.append(ValueRecord(vb, groups[i]))

    return ConditionReport(
        variant=variant,
        admissible=admissible,
        k=k,
        exclusions=exclusions,
        checked_condition1=True,
        trace=f"k = {k}",
        value_poly=vp,
        adm_poly=adm,
        F=F,
        G=G,
        precision=prec,
    )


# ---------------------------------------------------------------------------
# fiber verification
# ---------------------------------------------------------------------------


def _refine_within(squarefree: tuple, old: ComplexBall, prec: int) -> ComplexBall:
    """A fresh, smaller certified ball for the root of `squarefree` in `old`.

    Isolation balls are pairwise disjoint and exhaust the roots, so the
    old ball excludes every other root; at high enough precision exactly
    one new ball intersects it, and that one holds the same root.
    """
    bits = prec
    while bits <= PRECISION_CAP:
        balls = poly.isolate_squarefree(squarefree, bits)
        hits = [b for b in balls if not b.is_disjoint_from(old)]
        if len(hits) == 1:
            return hits[0]
        bits *= 2
    raise PrecisionExhausted("ball refinement failed at the precision cap")


def verify_fibers(
    F: RatFun, G: RatFun, report: ConditionReport, precision: int = DEFAULT_PRECISION
) -> FiberReport:
    """Certify the q*k distinct fiber roots behind an admissibility report.

    For every admissible value y_j the polynomial C - y_j*D must have q
    distinct roots, and the q*k roots must be pairwise distinct overall.
    Distinctness is certified exactly (the product polynomial over all
    admissible values is squarefree of degree q*k); balls then isolate the
    roots and group them by value.  Any failure here is raised loudly: the
    admissibility analysis is supposed to make failure impossible.
    """
    q = G.degree()
    k = report.k
    if k == 0:
        return FiberReport(q=q, k=0, entries=[], certified=True)
    adm = report.adm_poly
    c, d = G.numer, G.denom
    if len(c) < len(d) and not poly.eval_exact(adm, GR_ZERO):
        raise FiberDegreeError(
            "admissible value 0 with deg(numerator) < deg(denominator): "
            "the fiber polynomial drops below degree q there and cannot be "
            "certified by this construction"
        )

    # product over admissible values y_j of C - y_j*D, exactly, as a
    # resultant in y recovered by interpolation in x
    samples = []
    t = 0
    while len(samples) < q * k + 1:
        x0 = GaussianRational(t)
        t += 1
        lin = poly.make([poly.eval_exact(c, x0), -poly.eval_exact(d, x0)])
        samples.append((x0, poly.resultant(adm, lin)))
    fiber_poly = poly.interpolate(samples)

    if len(fiber_poly) - 1 != q * k:
        raise FiberDegreeError(
            f"fiber polynomial has degree {len(fiber_poly) - 1}, expected q*k = {q * k}"
        )
    repeated = poly.gcd(fiber_poly, poly.derivative(fiber_poly))
    if len(repeated) > 1:
        collisions = poly.isolate_squarefree(repeated, precision)
        centers = ", ".join(str(complex(b)) for b in collisions)
        raise FiberCertificationError(
            f"fiber roots are not pairwise distinct; collisions near: {centers}"
        )

    bits = precision
    while bits <= PRECISION_CAP:
        try:
            return _group_fibers_at(F, G, report, poly.monic(fiber_poly), bits)
        except _Ambiguous:
            bits *= 2
    raise PrecisionExhausted("fiber grouping failed at the precision cap")


def _group_fibers_at(F, G, report, fiber_monic, prec) -> FiberReport:
    q = G.degree()
    k = report.k
    c, d = G.numer, G.denom
    roots = poly.isolate_squarefree(fiber_monic, prec)
    n_sqfree = poly.squarefree_part(critical_numerator(F))
    targets = [rec.value_ball for rec in report.admissible]
    groups = [[] for _ in targets]
    for ball in roots:
        den = poly.eval_ball(d, ball)
        if not den.is_certainly_nonzero():
            raise _Ambiguous("fiber root not separated from denominator zeros")
        value = poly.eval_ball(c, ball) / den
        candidates = [
            i for i, vb in enumerate(targets) if not vb.is_disjoint_from(value)
        ]
        if len(candidates) != 1:
            raise _Ambiguous("fiber root value matches several admissible values")
        groups[candidates[0]].append(ball)
    entries = []
    for i, rec in enumerate(report.admissible):
        if len(groups[i]) != q:
            raise FiberCertificationError(
                f"admissible value #{i} received {len(groups[i])} fiber roots, expected {q}"
            )
        residual = _residual_at_witness(F, rec, report.adm_poly, n_sqfree, prec)
        entries.append(
            FiberEntry(
                value_ball=rec.value_ball,
                witness_ball=rec.witness.location,
                vanishing_order=rec.witness.multiplicity_s,
                residual_at_witness=residual,
                roots=groups[i],
            )
        )
    return FiberReport(q=q, k=k, entries=entries, certified=True)


def _residual_at_witness(
    F: RatFun, rec: ValueRecord, adm: tuple, n_sqfree: tuple, prec: int
) -> ComplexBall:
    """Certified-nonzero value of (F - y_j) / (x - c_j)^s at x = c_j.

    Computed as the s-th derivative of A - y_j*B at c_j divided by
    s! * B(c_j); the vanishing order bookkeeping guarantees the true value
    is nonzero, so refinement terminates.
    """
    a, b = F.numer, F.denom
    s = rec.witness.multiplicity_s
    bits = prec
    y = rec.value_ball
    witness = rec.witness.location
    while bits <= PRECISION_CAP:
        width = max(len(a), len(b))
        coeffs = []
        for idx in range(width):
            ca = ComplexBall.from_exact(a[idx] if idx < len(a) else GR_ZERO, bits)
            cb = ComplexBall.from_exact(b[idx] if idx < len(b) else GR_ZERO, bits)
            coeffs.append(ca - y * cb)
        for _ in range(s):
            coeffs = [
                coeffs[idx] * ComplexBall.from_exact(GaussianRational(idx), bits)
                for idx in range(1, len(coeffs))
            ] or [ComplexBall.exact_zero(bits)]
        acc = ComplexBall.exact_zero(bits)
        for cf in reversed(coeffs):
            acc = acc * witness + cf
        den = poly.eval_ball(b, witness) * ComplexBall.from_exact(
            GaussianRational(math.factorial(s)), bits
        )
        if den.is_certainly_nonzero():
            value = acc / den
            if value.is_certainly_nonzero():
                return value
        bits *= 2
        y = _refine_within(adm, rec.value_ball, bits)
        witness = _refine_within(n_sqfree, rec.witness.location, bits)
    raise PrecisionExhausted("residual certification failed at the precision cap")


# ---------------------------------------------------------------------------
# reciprocal and shift transforms
# ---------------------------------------------------------------------------


def reciprocal_pair_check(
    F: RatFun, G: RatFun, precision: int = DEFAULT_PRECISION
) -> bool:
    """Whether (1/F, 1/G) stays admissible (strict variant) at the
    reciprocals of F's admissible critical values.

    Decided exactly: the reciprocals of the admissible values are the roots
    of the reversed admissible polynomial, and membership is a divisibility
    test against the reciprocal pair's admissible polynomial.
    """
    rep = check_conditions(F, G, "M-prime", precision)
    if rep.k == 0:
        raise ValueError("reciprocal check needs a strict-admissible pair with k >= 1")
    if not poly.eval_exact(rep.adm_poly, GR_ZERO):
        raise ValueError("inapplicable: 0 is an admissible critical value of F")
    rep2 = check_conditions(F.reciprocal(), G.reciprocal(), "M-prime", precision)
    reversed_adm = poly.monic(poly.reversed_poly(rep.adm_poly))
    if rep2.k < rep.k:
        return False
    return poly.gcd(rep2.adm_poly, reversed_adm) == reversed_adm


def smallest_shift(value_poly: tuple) -> int:
    """Least non-negative integer h with value_poly(-h) != 0."""
    h = 0
    while not poly.eval_exact(value_poly, GaussianRational(-h)):
        h += 1
    return h


def shift_to_nonzero_values(F: RatFun, G: RatFun):
    """Add the least integer h >= 0 making all critical values of F nonzero."""
    vp = value_polynomial(F)
    h = smallest_shift(vp)
    hval = GaussianRational(h)
    return F.shift(hval), G.shift(hval), hval
