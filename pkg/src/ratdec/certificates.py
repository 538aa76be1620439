"""Degree-bound evaluation and non-decomposability certificates.

Three bounds are checked against the admissibility count k of a pair
(F, G) with p = deg F, q = deg G:

  T1-entire          k*q <= p                    entire solutions
  T2-meromorphic     k*q <= p*(1 + k*gamma(D))   meromorphic solutions
  T3-meromorphic     k*q <= p*(1 + k*lambda(G))  meromorphic, strict variant

gamma(D) counts the distinct zeros of the denominator of G and lambda(G)
is the minimum of the distinct-zero counts of G's numerator and
denominator.  A strict violation k*q > bound certifies that no
nonconstant pair f, g of the stated class satisfies F(f) = G(g), and is
emitted as canonical JSON embedding the full exclusion ledger.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .ratfun import RatFun, distinct_zero_count, min_distinct_zero_count
from .conditions import ConditionReport, check_conditions, shift_to_nonzero_values
from .expr import EXPR_GRAMMAR_VERSION, format_ratfun

THEOREM_ENTIRE = "T1-entire"
THEOREM_MEROMORPHIC = "T2-meromorphic"
THEOREM_MEROMORPHIC_STRICT = "T3-meromorphic"

CONCLUSION_ENTIRE = "no nonconstant entire f, g with F(f) = G(g)"
CONCLUSION_MEROMORPHIC = "no nonconstant meromorphic f, g with F(f) = G(g)"


@dataclass
class BoundEvaluation:
    theorem: str
    F_text: str
    G_text: str
    p: int
    q: int
    k: int
    bound: int
    certificate: bool
    inequality: str
    conclusion: str
    report: ConditionReport
    swapped: bool = False
    note: str = ""

    def to_json_dict(self) -> dict:
        if not self.certificate:
            raise ValueError("only a violated bound yields a certificate")
        return {
            "theorem": self.theorem,
            "p": self.p,
            "q": self.q,
            "k": self.k,
            "bound": self.bound,
            "inequality": self.inequality,
            "conclusion": self.conclusion,
            "F": self.F_text,
            "G": self.G_text,
            "exclusions": [e.to_json_dict() for e in self.report.exclusions],
            "grammar": EXPR_GRAMMAR_VERSION,
        }

    def to_canonical_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


@dataclass
class EvaluationBundle:
    evaluations: list

    @property
    def certificates(self) -> list:
        return [e for e in self.evaluations if e.certificate]


def _inequality_text(k: int, q: int, bound: int) -> str:
    lhs = k * q
    rel = ">" if lhs > bound else "<="
    return f"k*q = {lhs} {rel} {bound} = bound"


def _finish(theorem, F, G, k, bound, report, conclusion_text, swapped, note=""):
    p, q = F.degree(), G.degree()
    cert = k * q > bound
    return BoundEvaluation(
        theorem=theorem,
        F_text=format_ratfun(F),
        G_text=format_ratfun(G),
        p=p,
        q=q,
        k=k,
        bound=bound,
        certificate=cert,
        inequality=_inequality_text(k, q, bound),
        conclusion=conclusion_text if cert else "bound satisfied; no conclusion",
        report=report,
        swapped=swapped,
        note=note,
    )


def evaluate_entire(F: RatFun, G: RatFun, precision=None, swapped=False) -> BoundEvaluation:
    """Entire-solution bound: certificate iff k*q > p."""
    kwargs = {} if precision is None else {"precision": precision}
    report = check_conditions(F, G, "M", **kwargs)
    note = "hypothesis void: k = 0" if report.k == 0 else ""
    if report.inapplicable:
        note = report.trace
    return _finish(
        THEOREM_ENTIRE, F, G, report.k, F.degree(), report,
        CONCLUSION_ENTIRE, swapped, note,
    )


def evaluate_meromorphic(F: RatFun, G: RatFun, precision=None, swapped=False) -> BoundEvaluation:
    """Meromorphic-solution bound: certificate iff k*q > p*(1 + k*gamma(D)).

    The analysis first shifts both functions by the least integer h >= 0
    that moves every critical value of F away from 0, then recomputes the
    admissibility report on the shifted pair; degrees and the denominator
    zero count are invariant under the shift.
    """
    kwargs = {} if precision is None else {"precision": precision}
    F2, G2, h = shift_to_nonzero_values(F, G)
    report = check_conditions(F2, G2, "M", **kwargs)
    k = report.k
    gamma_d = distinct_zero_count(G.denom)
    bound = F.degree() * (1 + k * gamma_d)
    note = f"analysis on pair shifted by h = {h}" if not h.is_zero() else ""
    if k == 0:
        note = (note + "; " if note else "") + "hypothesis void: k = 0"
    if report.inapplicable:
        note = (note + "; " if note else "") + report.trace
    return _finish(
        THEOREM_MEROMORPHIC, F, G, k, bound, report,
        CONCLUSION_MEROMORPHIC, swapped, note,
    )


def evaluate_meromorphic_strict(F: RatFun, G: RatFun, precision=None, swapped=False) -> BoundEvaluation:
    """Strict-variant meromorphic bound: certificate iff k*q > p*(1 + k*lambda(G))."""
    kwargs = {} if precision is None else {"precision": precision}
    report = check_conditions(F, G, "M-prime", **kwargs)
    k = report.k
    lam = min_distinct_zero_count(G)
    bound = F.degree() * (1 + k * lam)
    note = "hypothesis void: k = 0" if k == 0 else ""
    if report.inapplicable:
        note = report.trace
    return _finish(
        THEOREM_MEROMORPHIC_STRICT, F, G, k, bound, report,
        CONCLUSION_MEROMORPHIC, swapped, note,
    )


def evaluate_all(
    F: RatFun, G: RatFun, symmetric: bool = False, precision=None
) -> EvaluationBundle:
    """All three bounds; with symmetric=True also for the swapped pair.

    The defining equation F(f) = G(g) is symmetric under swapping (F, f)
    with (G, g), so a certificate for either orientation rules out the
    same decompositions.
    """
    evals = [
        evaluate_entire(F, G, precision),
        evaluate_meromorphic(F, G, precision),
        evaluate_meromorphic_strict(F, G, precision),
    ]
    if symmetric:
        evals.extend(
            [
                evaluate_entire(G, F, precision, swapped=True),
                evaluate_meromorphic(G, F, precision, swapped=True),
                evaluate_meromorphic_strict(G, F, precision, swapped=True),
            ]
        )
    return EvaluationBundle(evals)
