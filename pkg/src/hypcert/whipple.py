"""Detection and closed-form evaluation of the specially-poised 4F3(-1)
summed by Whipple's second theorem:

    4F3(a, 1+a/2, b, c; a/2, a-b+1, a-c+1; -1)
        = Gamma(a-b+1) Gamma(a-c+1) / (Gamma(a+1) Gamma(a-b-c+1))

Two verified regimes are supported: terminating instances (b or c a
nonpositive integer) evaluate exactly as a Pochhammer ratio, and instances
with all four Gamma arguments positive evaluate numerically through
log-gamma.  Anything else is refused rather than analytically continued.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import NotTerminating, PoleInClosedForm
from .exact_arith import Rational, is_nonpositive_integer, pochhammer
from .hyper_series import HypSeries

__all__ = ["WhippleMatch", "match_whipple", "rhs_exact_terminating", "log_gamma", "rhs_numeric"]


@dataclass(frozen=True)
class WhippleMatch:
    """Parameters (a, b, c) of a matched Whipple-shaped 4F3 at z = -1."""

    a: Fraction
    b: Fraction
    c: Fraction


def match_whipple(s: HypSeries) -> Optional[WhippleMatch]:
    """Try to present the series as 4F3(a, 1+a/2, b, c; a/2, a-b+1, a-c+1; -1).

    Every upper parameter is tried as the candidate a; the companion 1+a/2
    must also sit in the upper list and a/2 in the lower list (multiset
    removal, so repeated values are honored).  Among multiple valid
    decompositions the one with the largest a, then the smallest b, wins;
    the closed-form value itself does not depend on the choice.
    """
    if len(s.upper) != 4 or len(s.lower) != 3 or s.z != -1:
        return None
    matches: list[tuple[Fraction, Fraction, Fraction]] = []
    upper_counts = Counter(s.upper)
    lower_counts = Counter(s.lower)
    for a in sorted(upper_counts, reverse=True):
        rest_upper = upper_counts.copy()
        rest_upper[a] -= 1
        companion = 1 + a / 2
        if rest_upper[companion] < 1:
            continue
        rest_upper[companion] -= 1
        rest_lower = lower_counts.copy()
        if rest_lower[a / 2] < 1:
            continue
        rest_lower[a / 2] -= 1
        b, c = sorted((+rest_upper).elements())
        if Counter([a - b + 1, a - c + 1]) == +rest_lower:
            matches.append((a, b, c))
    if not matches:
        return None
    a, b, c = max(matches, key=lambda t: (t[0], -t[1]))
    return WhippleMatch(a, b, c)


def rhs_exact_terminating(m: WhippleMatch) -> Rational:
    """Closed form for a terminating match, reduced to a Pochhammer ratio.

    With b = -M the Gamma ratio collapses to (a+1)_M / (a-c+1)_M; the right
    side is symmetric in b and c, so a terminating c is swapped into the b
    slot first.
    """
    b, c = m.b, m.c
    if not is_nonpositive_integer(b):
        if not is_nonpositive_integer(c):
            raise NotTerminating(f"neither b = {b} nor c = {c} is a nonpositive integer")
        b, c = c, b
    shift = -int(b)
    denominator = pochhammer(m.a - c + 1, shift)
    if denominator == 0:
        raise PoleInClosedForm(f"({m.a - c + 1})_{shift} = 0 in the closed form")
    return pochhammer(m.a + 1, shift) / denominator


# Lanczos approximation with g = 607/128 and 15 coefficients (the classic
# double-precision set); relative error of the rational sum is below 1e-15
# across the positive axis, comfortably inside the 1e-12 contract.
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_COEFFS = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_LN_SQRT_2PI = 0.9189385332046727


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0.

    Arguments below 0.5 are lifted through ln Gamma(x) = ln Gamma(x+1) - ln x
    so the Lanczos sum only ever runs on its well-conditioned range.
    """
    if not x > 0:
        raise ValueError(f"log_gamma requires a positive argument, got {x}")
    if x < 0.5:
        return log_gamma(x + 1.0) - math.log(x)
    z = x - 1.0
    acc = _LANCZOS_COEFFS[0]
    for i in range(1, len(_LANCZOS_COEFFS)):
        acc += _LANCZOS_COEFFS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _LN_SQRT_2PI + (z + 0.5) * math.log(t) - t + math.log(acc)


def rhs_numeric(m: WhippleMatch) -> float:
    """Gamma-ratio closed form evaluated in floating point.

    All four Gamma arguments must be strictly positive; sign bookkeeping via
    the reflection formula is deliberately out of scope.
    """
    args = (m.a - m.b + 1, m.a - m.c + 1, m.a + 1, m.a - m.b - m.c + 1)
    if any(arg <= 0 for arg in args):
        raise ValueError(f"nonpositive Gamma argument among {tuple(str(a) for a in args)}")
    num1, num2, den1, den2 = (float(arg) for arg in args)
    return math.exp(log_gamma(num1) + log_gamma(num2) - log_gamma(den1) - log_gamma(den2))
