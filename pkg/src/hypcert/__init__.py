"""Exact-arithmetic toolkit for terminating hypergeometric series.

The package evaluates pFq series exactly in rational arithmetic, recognizes
hypergeometric terms from their consecutive-term ratios, applies Whipple's
second theorem to the specially-poised 4F3(-1), and certifies a binomial
sum identity by checking that three independent evaluation pathways agree
exactly.
"""

from .errors import (
    AmbiguousCancellation,
    DivergentSeries,
    HypergeometricError,
    NonConvergedWithinBudget,
    NotRationallyFactorable,
    NotTerminating,
    PoleEncountered,
    PoleInClosedForm,
    PoleOnPath,
    VerificationError,
)
from .exact_arith import Rational, binomial, factorial, pochhammer
from .hyper_series import (
    Classification,
    HypSeries,
    PrefactoredSeries,
    SeriesKind,
    classify,
    eval_exact,
    eval_numeric,
    normalize,
    parametric_excess,
)
from .sesma_identity import (
    IdentityReport,
    explore_sum,
    lhs_sum,
    lhs_term,
    rewrite,
    sesma_ratio,
    sweep,
    verify,
)
from .term_recognize import IntPolynomial, TermRatio, rational_roots, recognize, term_at
from .whipple import WhippleMatch, log_gamma, match_whipple, rhs_exact_terminating, rhs_numeric

__version__ = "0.1.0"

__all__ = [
    "AmbiguousCancellation",
    "Classification",
    "DivergentSeries",
    "HypSeries",
    "HypergeometricError",
    "IdentityReport",
    "IntPolynomial",
    "NonConvergedWithinBudget",
    "NotRationallyFactorable",
    "NotTerminating",
    "PoleEncountered",
    "PoleInClosedForm",
    "PoleOnPath",
    "PrefactoredSeries",
    "Rational",
    "SeriesKind",
    "TermRatio",
    "VerificationError",
    "WhippleMatch",
    "binomial",
    "classify",
    "eval_exact",
    "eval_numeric",
    "explore_sum",
    "factorial",
    "lhs_sum",
    "lhs_term",
    "log_gamma",
    "match_whipple",
    "normalize",
    "parametric_excess",
    "pochhammer",
    "rational_roots",
    "recognize",
    "rewrite",
    "rhs_exact_terminating",
    "rhs_numeric",
    "sesma_ratio",
    "sweep",
    "term_at",
    "verify",
]
