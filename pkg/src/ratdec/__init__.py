"""ratdec: exact decomposition analysis for pairs of rational functions.

The package decides, with exact certificates, when a pair (F, G) of
rational functions over the Gaussian rationals admits no nonconstant
entire or meromorphic solutions of F(f) = G(g), and numerically validates
the value-distribution machinery those decisions rest on.

Modules:
  scalars       Gaussian-rational field elements and complex balls
  poly          exact univariate polynomial engine with certified roots
  ratfun        reduced rational functions
  expr          the text grammars and canonical formatting
  conditions    admissibility analysis and fiber certification
  certificates  degree-bound evaluation and certificate emission
  nevanlinna    floating-point value-distribution lab
  cli           the ratdec command-line tool
"""

from .scalars import (
    ComplexBall,
    DEFAULT_PRECISION,
    GaussianRational,
    GR_I,
    GR_ONE,
    GR_ZERO,
    PrecisionExhausted,
    gaussian,
)
from .ratfun import RatFun, distinct_zero_count, min_distinct_zero_count, reduce
from .expr import (
    EXPR_GRAMMAR_VERSION,
    MERO_GRAMMAR_VERSION,
    ParseError,
    format_mero,
    format_ratfun,
    parse_mero,
    parse_ratfun,
)
from .conditions import (
    ConditionReport,
    CriticalPoint,
    FiberCertificationError,
    FiberDegreeError,
    FiberReport,
    check_conditions,
    critical_numerator,
    critical_values,
    reciprocal_pair_check,
    shift_to_nonzero_values,
    verify_fibers,
)
from .certificates import (
    BoundEvaluation,
    evaluate_all,
    evaluate_entire,
    evaluate_meromorphic,
    evaluate_meromorphic_strict,
)
from .nevanlinna import (
    MeroExpr,
    QuadratureError,
    argument_principle_count,
    characteristic_T,
    check_composition_identity,
    check_degree_growth,
    check_second_main,
    counting_N,
    counting_Z,
    mero,
    proximity_m,
)

__version__ = "1.0.0"

__all__ = [
    "BoundEvaluation",
    "ComplexBall",
    "ConditionReport",
    "CriticalPoint",
    "DEFAULT_PRECISION",
    "EXPR_GRAMMAR_VERSION",
    "FiberCertificationError",
    "FiberDegreeError",
    "FiberReport",
    "GR_I",
    "GR_ONE",
    "GR_ZERO",
    "GaussianRational",
    "MERO_GRAMMAR_VERSION",
    "MeroExpr",
    "ParseError",
    "PrecisionExhausted",
    "QuadratureError",
    "RatFun",
    "argument_principle_count",
    "characteristic_T",
    "check_composition_identity",
    "check_conditions",
    "check_degree_growth",
    "check_second_main",
    "counting_N",
    "counting_Z",
    "critical_numerator",
    "critical_values",
    "distinct_zero_count",
    "evaluate_all",
    "evaluate_entire",
    "evaluate_meromorphic",
    "evaluate_meromorphic_strict",
    "format_mero",
    "format_ratfun",
    "gaussian",
    "mero",
    "min_distinct_zero_count",
    "parse_mero",
    "parse_ratfun",
    "proximity_m",
    "reciprocal_pair_check",
    "reduce",
    "shift_to_nonzero_values",
    "verify_fibers",
]
