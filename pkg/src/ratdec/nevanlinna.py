"""Numerical lab for value-distribution functionals of meromorphic maps.

The catalog of functions is h(z) = outer(base(z)) with base one of
identity, exp, sin, cos, tan and outer an exact rational map.  For such h
every zero/pole inventory is known analytically: level sets of the bases
are explicit lattices, and multiplicities come from the exact squarefree
decomposition of outer's numerator pencil.  On top of the inventories the
module computes the classical functionals

  m(r, h)   proximity, by adaptive periodic quadrature of log+|h|,
  N(r, h)   integrated pole counting, in closed form,
  Z(r, h-b) integrated zero counting for a target b, in closed form,
  T(r, h)   characteristic m + N,

and runs three empirical checks: a second-main-theorem style residual
bound, degree-growth of T under rational composition, and pointwise
composition identities.  Asymptotic relations are replaced by an explicit
finite-sample policy: the stated tolerance must hold on the last quartile
of the radius grid (recorded in every verdict).

Everything here is floating point by design; exact certification lives in
the other modules.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .scalars import GaussianRational
from . import poly
from .ratfun import RatFun
from .expr import format_mero, parse_mero

BASES = ("identity", "exp", "sin", "cos", "tan")

TAIL_FRACTION = 0.25
SECOND_MAIN_TOLERANCE = 0.10
DEGREE_GROWTH_TOLERANCE = 0.05
MAX_PANELS = 2 ** 20
_MIN_PANELS = 256
_ORIGIN_EPS = 1e-12
_RADIUS_GUARD = 1e-9

_TWO_PI = 2.0 * math.pi


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to converge; carries panel diagnostics."""

    def __init__(self, message, radius=None, panels=None, worst_interval=None):
        super().__init__(message)
        self.radius = radius
        self.panels = panels
        self.worst_interval = worst_interval


@dataclass(frozen=True)
class MeroExpr:
    """h(z) = outer(base(z)) with an exact rational outer map."""

    base: str
    outer: RatFun

    def __post_init__(self):
        if self.base not in BASES:
            raise ValueError(f"base must be one of {BASES}, got {self.base!r}")

    def degree(self) -> int:
        return self.outer.degree()

    def is_constant(self) -> bool:
        return self.outer.is_constant()

    def __str__(self):
        return format_mero(self.base, self.outer)


def mero(text: str) -> MeroExpr:
    """Parse ratdec-mero v1 text into a MeroExpr."""
    base, outer = parse_mero(text)
    return MeroExpr(base, outer)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def _np_coeffs(p: tuple) -> np.ndarray:
    """Highest-degree-first complex coefficients for numpy."""
    if not p:
        return np.array([0j])
    return np.array([complex(c) for c in reversed(p)])


def _eval_base(base: str, z):
    if base == "identity":
        return z
    if base == "exp":
        return np.exp(z)
    if base == "sin":
        return np.sin(z)
    if base == "cos":
        return np.cos(z)
    return np.tan(z)


def _eval_base_derivative(base: str, z, w):
    if base == "identity":
        return np.ones_like(np.asarray(z, dtype=complex))
    if base == "exp":
        return w
    if base == "sin":
        return np.cos(z)
    if base == "cos":
        return -np.sin(z)
    return 1.0 + w * w


def eval_ratfun_complex(f: RatFun, w):
    """Double-precision evaluation of an exact rational map."""
    num = _np_coeffs(f.numer)
    den = _np_coeffs(f.denom)
    with np.errstate(all="ignore"):
        return np.polyval(num, w) / np.polyval(den, w)


def evaluate(h: MeroExpr, z):
    """h(z) in double precision; scalars in, scalar out."""
    arr = np.asarray(z, dtype=complex)
    w = _eval_base(h.base, arr)
    out = eval_ratfun_complex(h.outer, w)
    return out if arr.shape else complex(out)


def derivative_values(h: MeroExpr, z):
    """h'(z) via the chain rule with the exact outer derivative."""
    arr = np.asarray(z, dtype=complex)
    w = _eval_base(h.base, arr)
    douter = eval_ratfun_complex(h.outer.derivative(), w)
    return douter * _eval_base_derivative(h.base, arr, w)


def compose(outer: RatFun, inner: RatFun) -> RatFun:
    """Exact composition outer(inner(x))."""

    def poly_at(p: tuple, t: RatFun) -> RatFun:
        acc = RatFun(poly.constant(poly.leading(p)) if p else poly.ZERO)
        for c in reversed(p[:-1] if p else ()):
            acc = acc * t + RatFun(poly.constant(c))
        return acc

    return poly_at(outer.numer, inner) / poly_at(outer.denom, inner)


# ---------------------------------------------------------------------------
# analytic inventories
# ---------------------------------------------------------------------------


def _as_gaussian(b) -> GaussianRational:
    if isinstance(b, GaussianRational):
        return b
    c = complex(b)
    # binary floats are dyadic rationals, so this conversion is exact
    return GaussianRational(Fraction(c.real), Fraction(c.imag))


def _factor_has_root(factor: tuple, value: GaussianRational, w: complex) -> bool:
    """Exactly test whether w (a numeric root of factor) is `value`."""
    if abs(w - complex(value)) > 1e-7:
        return False
    return not poly.eval_exact(factor, value)


def _line_lattice(start: float, period: float, offset: float, r: float):
    """Moduli of start + period*k (k integer) at transverse offset, <= r."""
    if abs(offset) > r:
        return []
    span = math.sqrt(max(r * r - offset * offset, 0.0))
    kmin = math.ceil((-span - start) / period - 1e-12)
    kmax = math.floor((span - start) / period + 1e-12)
    out = []
    for k in range(kmin, kmax + 1):
        mod = math.hypot(start + period * k, offset)
        if mod <= r * (1.0 + 1e-15):
            out.append(mod)
    return out


_GR_I = GaussianRational(0, 1)
_GR_MINUS_I = GaussianRational(0, -1)
_GR_ONE = GaussianRational(1)
_GR_MINUS_ONE = GaussianRational(-1)
_GR_ZERO = GaussianRational(0)


def _pullback_moduli(base: str, w: complex, r: float, factor: tuple):
    """(modulus, local multiplicity) of solutions of base(z) = w, |z| <= r.

    `factor` is the exact squarefree polynomial w is a root of; it decides
    exactly whether w sits at one of the base's ramification or omitted
    values (sin/cos ramify over +-1; exp omits 0; tan omits +-i).
    """
    if base == "identity":
        m = abs(w)
        return [(m, 1)] if m <= r else []
    if base == "exp":
        if _factor_has_root(factor, _GR_ZERO, w):
            return []  # exp omits 0
        logw = cmath.log(w)
        return [
            (m, 1)
            for m in _line_lattice(logw.imag, _TWO_PI, logw.real, r)
        ]
    if base == "sin":
        if _factor_has_root(factor, _GR_ONE, w):
            return [(m, 2) for m in _line_lattice(math.pi / 2, _TWO_PI, 0.0, r)]
        if _factor_has_root(factor, _GR_MINUS_ONE, w):
            return [(m, 2) for m in _line_lattice(-math.pi / 2, _TWO_PI, 0.0, r)]
        a = cmath.asin(w)
        first = _line_lattice(a.real, _TWO_PI, a.imag, r)
        second = _line_lattice(math.pi - a.real, _TWO_PI, -a.imag, r)
        return [(m, 1) for m in first + second]
    if base == "cos":
        if _factor_has_root(factor, _GR_ONE, w):
            return [(m, 2) for m in _line_lattice(0.0, _TWO_PI, 0.0, r)]
        if _factor_has_root(factor, _GR_MINUS_ONE, w):
            return [(m, 2) for m in _line_lattice(math.pi, _TWO_PI, 0.0, r)]
        a = cmath.acos(w)
        first = _line_lattice(a.real, _TWO_PI, a.imag, r)
        second = _line_lattice(-a.real, _TWO_PI, -a.imag, r)
        return [(m, 1) for m in first + second]
    # tan
    if _factor_has_root(factor, _GR_I, w) or _factor_has_root(factor, _GR_MINUS_I, w):
        return []  # tan omits +-i
    a = cmath.atan(w)
    return [(m, 1) for m in _line_lattice(a.real, math.pi, a.imag, r)]


def _base_pole_moduli(base: str, r: float):
    """Moduli of the base function's poles within |z| <= r (all simple)."""
    if base == "tan":
        return _line_lattice(math.pi / 2, math.pi, 0.0, r)
    return []


def _outer_levels(outer: RatFun, b):
    """Solutions of outer(w) = b: finite (root, mult, exact factor) triples
    plus the multiplicity with which w = infinity solves it."""
    bg = _as_gaussian(b)
    pencil = poly.sub(outer.numer, poly.scale(outer.denom, bg))
    if poly.is_zero(pencil):
        raise ValueError("function is identically equal to the target")
    levels = []
    for factor, mult in poly.squarefree_decomposition(pencil):
        for w in np.roots(_np_coeffs(factor)):
            levels.append((complex(w), mult, factor))
    infinity_mult = outer.degree() - (len(pencil) - 1)
    return levels, infinity_mult


def inventory_zeros(h: MeroExpr, b, r: float):
    """(modulus, multiplicity) of every zero of h - b with |z| <= r."""
    levels, inf_mult = _outer_levels(h.outer, b)
    entries = []
    for w, mult, factor in levels:
        for modulus, local in _pullback_moduli(h.base, w, r, factor):
            entries.append((modulus, mult * local))
    if inf_mult > 0:
        for modulus in _base_pole_moduli(h.base, r):
            entries.append((modulus, inf_mult))
    return entries


def inventory_poles(h: MeroExpr, r: float):
    """(modulus, multiplicity) of every pole of h with |z| <= r."""
    entries = []
    den = h.outer.denom
    if not poly.is_constant(den):
        for factor, mult in poly.squarefree_decomposition(den):
            for w in np.roots(_np_coeffs(factor)):
                for modulus, local in _pullback_moduli(
                    h.base, complex(w), r, factor
                ):
                    entries.append((modulus, mult * local))
    order_at_inf = (len(h.outer.numer) - 1) - (len(den) - 1)
    if order_at_inf > 0:
        for modulus in _base_pole_moduli(h.base, r):
            entries.append((modulus, order_at_inf))
    return entries


def _integrate_counting(entries, r: float):
    """Closed-form (integrated, integrated-distinct) counting functions.

    N(r) = sum over points 0 < |z| <= r of mult * log(r/|z|), plus
    n(0) * log r for a point at the origin; the distinct variant counts
    every point once.
    """
    n0 = 0
    n0_seen = False
    acc = 0.0
    acc_bar = 0.0
    for modulus, mult in entries:
        if modulus > r:
            continue
        if modulus <= _ORIGIN_EPS:
            n0 += mult
            n0_seen = True
        else:
            acc += mult * math.log(r / modulus)
            acc_bar += math.log(r / modulus)
    logr = math.log(r)
    return acc + n0 * logr, acc_bar + (logr if n0_seen else 0.0)


def counting_N(h: MeroExpr, r: float):
    """Integrated pole counting (N, Nbar) at radius r."""
    if r <= 0:
        raise ValueError("radius must be positive")
    entries = inventory_poles(h, r * (1.0 + 1e-6))
    for modulus, _ in entries:
        if abs(modulus - r) < _RADIUS_GUARD:
            raise ValueError(
                f"radius {r} collides with a pole modulus {modulus}; "
                "perturb the radius slightly"
            )
    return _integrate_counting(entries, r)


def counting_Z(h: MeroExpr, b, r: float):
    """Integrated zero counting (Z, Zbar) of h - b at radius r."""
    if r <= 0:
        raise ValueError("radius must be positive")
    return _integrate_counting(inventory_zeros(h, b, r), r)


# ---------------------------------------------------------------------------
# proximity by adaptive periodic quadrature
# ---------------------------------------------------------------------------


def _logabs_h_factory(h: MeroExpr, r: float):
    """Vectorized theta -> log|h(r e^{i theta})| evaluated through root
    factorizations, which stays finite-safe for very large |h|."""
    num = _np_coeffs(h.outer.numer)
    den = _np_coeffs(h.outer.denom)
    lead = math.log(abs(num[0])) - math.log(abs(den[0]))
    roots_num = np.roots(num) if num.size > 1 else np.array([])
    roots_den = np.roots(den) if den.size > 1 else np.array([])

    def logabs(thetas: np.ndarray) -> np.ndarray:
        z = r * np.exp(1j * thetas)
        w = _eval_base(h.base, z)
        acc = np.full(thetas.shape, lead)
        with np.errstate(divide="ignore"):
            for root in roots_num:
                acc = acc + np.log(np.abs(w - root))
            for root in roots_den:
                acc = acc - np.log(np.abs(w - root))
        return acc

    return logabs


def proximity_m(h: MeroExpr, r: float, tol: float = 1e-8) -> float:
    """(1/2pi) integral of log+|h(r e^{i theta})| to absolute tolerance tol.

    Periodic trapezoid sums with panel doubling; stops when one doubling
    changes the estimate by at most tol/2.  Radii within tol of a pole
    modulus are rejected (perturb the radius instead).
    """
    if r <= 0:
        raise ValueError("radius must be positive")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    for modulus, _ in inventory_poles(h, r * (1.0 + 1e-6)):
        if abs(modulus - r) < tol:
            raise ValueError(
                f"radius {r} is within {tol} of a pole modulus {modulus}; "
                "perturb the radius slightly"
            )
    logabs = _logabs_h_factory(h, r)

    n = _MIN_PANELS
    thetas = np.arange(n) * (_TWO_PI / n)
    vals = np.maximum(0.0, logabs(thetas))
    if not np.isfinite(vals).all():
        raise QuadratureError(
            "integrand not finite at a quadrature node", radius=r, panels=n
        )
    total = float(vals.sum())
    estimate = total * (_TWO_PI / n)
    mids = None
    while n <= MAX_PANELS // 2:
        mids = np.arange(n) * (_TWO_PI / n) + (math.pi / n)
        midvals = np.maximum(0.0, logabs(mids))
        if not np.isfinite(midvals).all():
            raise QuadratureError(
                "integrand not finite at a quadrature node", radius=r, panels=2 * n
            )
        total = total + float(midvals.sum())
        refined = total * (_TWO_PI / (2 * n))
        done = abs(refined - estimate) <= tol / 2
        estimate = refined
        n *= 2
        if done:
            return estimate / _TWO_PI
    # non-convergence: report the worst panel at the last level
    worst = None
    if mids is not None:
        step = _TWO_PI / (len(mids))
        idx = int(np.argmax(np.abs(np.diff(np.maximum(0.0, logabs(mids))))))
        worst = (idx * step, (idx + 2) * step)
    raise QuadratureError(
        f"proximity quadrature did not reach tol={tol} within {MAX_PANELS} panels",
        radius=r,
        panels=MAX_PANELS,
        worst_interval=worst,
    )


# ---------------------------------------------------------------------------
# characteristic tables
# ---------------------------------------------------------------------------


def _target_label(b) -> str:
    c = complex(b)

    def fmt(x: float) -> str:
        return f"{int(x)}" if x == int(x) else f"{x:.12g}"

    if c.imag == 0:
        return fmt(c.real)
    if c.real == 0:
        return f"{fmt(c.imag)}i"
    sign = "+" if c.imag > 0 else "-"
    return f"{fmt(c.real)}{sign}{fmt(abs(c.imag))}i"


@dataclass
class CountingTable:
    function: str
    radii: list
    targets: list
    m: list = field(default_factory=list)
    N: list = field(default_factory=list)
    Nbar: list = field(default_factory=list)
    Z: list = field(default_factory=list)  # one list per target
    Zbar: list = field(default_factory=list)
    T: list = field(default_factory=list)

    def to_csv(self, config: dict | None = None) -> str:
        lines = []
        cfg = {"function": self.function}
        if config:
            cfg.update(config)
        for key in cfg:
            lines.append(f"# {key}: {cfg[key]}")
        header = ["r", "m", "N", "Nbar"]
        header += [f"Z[{_target_label(b)}]" for b in self.targets]
        header += [f"Zbar[{_target_label(b)}]" for b in self.targets]
        header.append("T")
        lines.append(",".join(header))
        for i, r in enumerate(self.radii):
            row = [f"{r:.12g}", f"{self.m[i]:.12g}", f"{self.N[i]:.12g}",
                   f"{self.Nbar[i]:.12g}"]
            row += [f"{self.Z[j][i]:.12g}" for j in range(len(self.targets))]
            row += [f"{self.Zbar[j][i]:.12g}" for j in range(len(self.targets))]
            row.append(f"{self.T[i]:.12g}")
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"


def characteristic_T(
    h: MeroExpr, radii, tol: float = 1e-8, targets=()
) -> CountingTable:
    """Per-radius table of m, N, Nbar, Z/Zbar per target, and T = m + N."""
    radii = [float(r) for r in radii]
    if not radii or any(r <= 0 for r in radii):
        raise ValueError("radii must be positive")
    if any(b >= a for a, b in zip(radii[1:], radii)):
        raise ValueError("radii must be strictly increasing")
    targets = list(targets)
    table = CountingTable(
        function=str(h),
        radii=radii,
        targets=targets,
        Z=[[] for _ in targets],
        Zbar=[[] for _ in targets],
    )
    for r in radii:
        mv = proximity_m(h, r, tol)
        nv, nbar = counting_N(h, r)
        table.m.append(mv)
        table.N.append(nv)
        table.Nbar.append(nbar)
        for j, b in enumerate(targets):
            zv, zbar = counting_Z(h, b, r)
            table.Z[j].append(zv)
            table.Zbar[j].append(zbar)
        table.T.append(mv + nv)
    return table


# ---------------------------------------------------------------------------
# asymptotic checks
# ---------------------------------------------------------------------------


@dataclass
class AsymptoticVerdict:
    relation: str  # "tilde-less" or "tilde-equal"
    radii: list
    residuals: list  # per-radius margin series
    reference: list  # per-radius reference scale (a T column)
    passed: bool
    policy: str
    table: CountingTable | None = None

    def to_json_dict(self):
        return {
            "relation": self.relation,
            "passed": self.passed,
            "policy": self.policy,
            "radii": list(self.radii),
            "residuals": list(self.residuals),
            "reference": list(self.reference),
        }


def _tail_indices(count: int):
    width = max(1, count // 4)
    return range(count - width, count)


def check_second_main(
    h: MeroExpr, targets, radii, tol: float = 1e-6
) -> AsymptoticVerdict:
    """Residual check of (n-1)T(r) <= sum_j Zbar(r, h - b_j) + Nbar(r, h).

    The measure-zero exceptional set of the asymptotic statement is
    replaced by a finite policy: the relative residual must stay below
    10% of T on the last quartile of the radius grid.
    """
    targets = list(targets)
    if len(set(map(complex, targets))) != len(targets):
        raise ValueError("targets must be pairwise distinct")
    if h.is_constant():
        raise ValueError("second-main check needs a nonconstant function")
    n = len(targets)
    table = characteristic_T(h, radii, tol, targets)
    count = len(table.radii)
    residuals = []
    for i in range(count):
        zbar_sum = sum(table.Zbar[j][i] for j in range(n))
        residuals.append((n - 1) * table.T[i] - zbar_sum - table.Nbar[i])
    tail = list(_tail_indices(count))
    if any(table.T[i] <= 1e-9 for i in tail):
        raise ValueError("radius range too small: T is degenerate on the tail")
    passed = all(
        residuals[i] / table.T[i] <= SECOND_MAIN_TOLERANCE for i in tail
    )
    policy = (
        f"residual/T <= {SECOND_MAIN_TOLERANCE} on the last quartile "
        f"of {count} radii"
    )
    return AsymptoticVerdict(
        relation="tilde-less",
        radii=table.radii,
        residuals=residuals,
        reference=list(table.T),
        passed=passed,
        policy=policy,
        table=table,
    )


def check_degree_growth(
    R: RatFun, base: MeroExpr, radii, tol: float = 1e-6
) -> AsymptoticVerdict:
    """Ratio check of T(r, R(base)) against deg(R) * T(r, base).

    Pass iff the last-quartile ratios deviate from deg(R) by less than 5%.
    """
    d = R.degree()
    if d < 1:
        raise ValueError("outer map must be nonconstant")
    if base.is_constant():
        raise ValueError("base function must be nonconstant")
    composed = MeroExpr(base.base, compose(R, base.outer))
    table_c = characteristic_T(composed, radii, tol)
    table_b = characteristic_T(base, radii, tol)
    count = len(table_b.radii)
    tail = list(_tail_indices(count))
    if any(table_b.T[i] <= 1e-9 for i in tail):
        raise ValueError("radius range too small: T is degenerate on the tail")
    ratios = [
        table_c.T[i] / table_b.T[i] if table_b.T[i] > 1e-9 else float("inf")
        for i in range(count)
    ]
    residuals = [ratio - d for ratio in ratios]
    passed = all(
        abs(residuals[i]) < DEGREE_GROWTH_TOLERANCE * d for i in tail
    )
    policy = (
        f"|T(r, R(base))/T(r, base) - deg R| < {DEGREE_GROWTH_TOLERANCE} * deg R "
        f"on the last quartile of {count} radii"
    )
    return AsymptoticVerdict(
        relation="tilde-equal",
        radii=table_b.radii,
        residuals=residuals,
        reference=list(table_b.T),
        passed=passed,
        policy=policy,
        table=table_c,
    )


# ---------------------------------------------------------------------------
# pointwise composition identities
# ---------------------------------------------------------------------------


@dataclass
class IdentityCheck:
    passed: bool
    max_deviation: float
    samples_used: int
    samples_skipped: int
    middle_max_deviation: float | None = None
    middle_passed: bool | None = None

    def to_json_dict(self):
        return {
            "passed": self.passed,
            "max_deviation": self.max_deviation,
            "samples_used": self.samples_used,
            "samples_skipped": self.samples_skipped,
            "middle_max_deviation": self.middle_max_deviation,
            "middle_passed": self.middle_passed,
        }


def _deflate(coeffs: np.ndarray, root: complex, times: int) -> np.ndarray:
    out = coeffs
    for _ in range(times):
        out, _rem = np.polydiv(out, np.array([1.0, -root]))
    return out


def check_composition_identity(
    F: RatFun, G: RatFun, f: MeroExpr, g: MeroExpr, samples, tol: float = 1e-9,
    report=None,
) -> IdentityCheck:
    """Pointwise check of F(f(z)) = G(g(z)) on the given samples.

    Samples where any constituent is non-finite or astronomically large
    (pole-adjacent) are skipped with a count; all-skipped is an error.
    When an admissibility report with k >= 1 is supplied, the factored
    middle forms are checked too: for each admissible value y_j with
    witness c_j and vanishing order s_j,

      F(f) - y_j = (f - c_j)^s_j * R_j(f)
      G(g) - y_j = lc_j * prod_l (g - b_{j,l}) / D(g)

    with R_j obtained by synthetic deflation and b_{j,l} the numeric roots
    of C - y_j*D.  Middle forms are compared at max(tol, 1e-8) to absorb
    double-precision root-finding error.
    """
    z = np.asarray(list(samples), dtype=complex)
    if z.size == 0:
        raise ValueError("no samples supplied")
    wf = _eval_base(f.base, z)
    wg = _eval_base(g.base, z)
    fv = eval_ratfun_complex(f.outer, wf)
    gv = eval_ratfun_complex(g.outer, wg)
    lhs = eval_ratfun_complex(F, fv)
    rhs = eval_ratfun_complex(G, gv)
    keep = (
        np.isfinite(lhs) & np.isfinite(rhs)
        & np.isfinite(fv) & np.isfinite(gv)
        & (np.abs(lhs) < 1e10) & (np.abs(rhs) < 1e10)
    )
    used = int(keep.sum())
    skipped = int(z.size - used)
    if used == 0:
        raise ValueError("every sample was skipped as pole-adjacent")
    deviation = float(np.max(np.abs(lhs[keep] - rhs[keep])))
    passed = deviation <= tol

    middle_dev = None
    middle_passed = None
    if report is not None and getattr(report, "k", 0) >= 1:
        middle_tol = max(tol, 1e-8)
        a_coeffs = _np_coeffs(F.numer)
        b_coeffs = _np_coeffs(F.denom)
        c_coeffs = _np_coeffs(G.numer)
        d_coeffs = _np_coeffs(G.denom)
        width = max(a_coeffs.size, b_coeffs.size)
        a_pad = np.concatenate([np.zeros(width - a_coeffs.size), a_coeffs])
        b_pad = np.concatenate([np.zeros(width - b_coeffs.size), b_coeffs])
        middle_dev = 0.0
        with np.errstate(all="ignore"):
            bf = np.polyval(b_pad, fv[keep])
            dg = np.polyval(d_coeffs, gv[keep])
        for rec in report.admissible:
            yj = complex(rec.value_ball)
            cj = complex(rec.witness.location)
            sj = rec.witness.multiplicity_s
            pencil_f = a_pad - yj * b_pad
            r_num = _deflate(pencil_f, cj, sj)
            with np.errstate(all="ignore"):
                left = lhs[keep] - yj
                factored = (
                    (fv[keep] - cj) ** sj * np.polyval(r_num, fv[keep]) / bf
                )
                middle_dev = max(
                    middle_dev, float(np.max(np.abs(left - factored)))
                )
                wd = max(c_coeffs.size, d_coeffs.size)
                c_p = np.concatenate([np.zeros(wd - c_coeffs.size), c_coeffs])
                d_p = np.concatenate([np.zeros(wd - d_coeffs.size), d_coeffs])
                pencil_g = np.trim_zeros(c_p - yj * d_p, "f")
                b_roots = np.roots(pencil_g)
                prod = np.full(gv[keep].shape, pencil_g[0])
                for root in b_roots:
                    prod = prod * (gv[keep] - root)
                right = rhs[keep] - yj
                middle_dev = max(
                    middle_dev, float(np.max(np.abs(right - prod / dg)))
                )
        middle_passed = middle_dev <= middle_tol
        passed = passed and middle_passed
    return IdentityCheck(
        passed=passed,
        max_deviation=deviation,
        samples_used=used,
        samples_skipped=skipped,
        middle_max_deviation=middle_dev,
        middle_passed=middle_passed,
    )


# ---------------------------------------------------------------------------
# independent oracle: argument-principle counting
# ---------------------------------------------------------------------------


def argument_principle_count(h: MeroExpr, b, r: float, tol: float = 1e-6) -> int:
    """Zeros of h - b inside |z| < r, counted with multiplicity, by contour
    integration of h'/(h - b) minus the enclosed pole count.

    This is a validation oracle for the analytic inventories and never
    feeds the counting tables.  The contour integral equals
    (zero count) - (pole count); poles are added back from the known base
    lattices and the exact pole orders of the outer map.
    """
    bc = complex(b)
    pole_total = sum(mult for _, mult in inventory_poles(h, r))

    n = 512
    last_round = None
    while n <= 2 ** 18:
        thetas = np.arange(n) * (_TWO_PI / n)
        z = r * np.exp(1j * thetas)
        with np.errstate(all="ignore"):
            hv = evaluate(h, z)
            hp = derivative_values(h, z)
            integrand = z * hp / (hv - bc)
        if not np.isfinite(integrand).all():
            raise QuadratureError(
                "argument-principle integrand not finite at a node",
                radius=r,
                panels=n,
            )
        value = complex(np.mean(integrand))
        diff = value.real - round(value.real)
        if abs(diff) < tol and abs(value.imag) < tol:
            rounded = round(value.real)
            if last_round == rounded:
                return int(rounded) + pole_total
            last_round = rounded
        else:
            last_round = None
        n *= 2
    raise QuadratureError(
        "argument-principle integral did not stabilize at an integer",
        radius=r,
        panels=2 ** 18,
    )


# ---------------------------------------------------------------------------
# deterministic SVG line plots
# ---------------------------------------------------------------------------

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def render_svg(series, title: str, xlabel: str, ylabel: str) -> str:
    """Minimal deterministic SVG line plot.

    `series` is a list of (label, xs, ys).  No timestamps, no randomness:
    identical input produces identical bytes.
    """
    width, height = 800, 480
    left, right, top, bottom = 70, 160, 40, 50
    plot_w = width - left - right
    plot_h = height - top - bottom

    xs_all = [x for _, xs, _ in series for x in xs]
    ys_all = [y for _, _, ys in series for y in ys]
    if not xs_all:
        raise ValueError("no data to plot")
    xmin, xmax = min(xs_all), max(xs_all)
    ymin, ymax = min(ys_all), max(ys_all)
    if xmax == xmin:
        xmax = xmin + 1.0
    if ymax == ymin:
        ymax = ymin + 1.0
    ypad = 0.05 * (ymax - ymin)
    ymin -= ypad
    ymax += ypad

    def sx(x):
        return left + (x - xmin) / (xmax - xmin) * plot_w

    def sy(y):
        return top + (ymax - y) / (ymax - ymin) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width // 2}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{title}</text>',
        f'<rect x="{left}" y="{top}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="#444" stroke-width="1"/>',
    ]
    for i in range(6):
        xv = xmin + (xmax - xmin) * i / 5
        yv = ymin + (ymax - ymin) * i / 5
        px = sx(xv)
        py = sy(yv)
        parts.append(
            f'<line x1="{px:.2f}" y1="{top + plot_h}" x2="{px:.2f}" '
            f'y2="{top + plot_h + 5}" stroke="#444"/>'
        )
        parts.append(
            f'<text x="{px:.2f}" y="{top + plot_h + 20}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{xv:.4g}</text>'
        )
        parts.append(
            f'<line x1="{left - 5}" y1="{py:.2f}" x2="{left}" y2="{py:.2f}" '
            f'stroke="#444"/>'
        )
        parts.append(
            f'<text x="{left - 8}" y="{py + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{yv:.4g}</text>'
        )
    parts.append(
        f'<text x="{left + plot_w / 2:.2f}" y="{height - 10}" '
        f'text-anchor="middle" font-family="sans-serif" font-size="13">'
        f'{xlabel}</text>'
    )
    parts.append(
        f'<text x="18" y="{top + plot_h / 2:.2f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 18 {top + plot_h / 2:.2f})">{ylabel}</text>'
    )
    for idx, (label, xs, ys) in enumerate(series):
        color = _PALETTE[idx % len(_PALETTE)]
        points = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs, ys))
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
            f'points="{points}"/>'
        )
        ly = top + 16 + 18 * idx
        lx = left + plot_w + 10
        parts.append(
            f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 18}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="1.5"/>'
        )
        parts.append(
            f'<text x="{lx + 24}" y="{ly}" font-family="sans-serif" '
            f'font-size="11">{label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
