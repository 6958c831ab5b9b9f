"""Generalized hypergeometric series: representation, classification, evaluation.

A pFq series is given by numerator parameters a_1..a_p, denominator
parameters b_1..b_q, and an argument z, all rational.  Terms follow
t_0 = 1, t_{n+1} = t_n * prod(a_i + n) / prod(b_j + n) * z / (n + 1).

Terminating series are summed exactly in rational arithmetic; convergent
nonterminating series can be summed numerically with a tolerance gate.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional

from .errors import (
    AmbiguousCancellation,
    DivergentSeries,
    NonConvergedWithinBudget,
    NotTerminating,
    PoleEncountered,
)
from .exact_arith import Rational, is_nonpositive_integer

__all__ = [
    "HypSeries",
    "PrefactoredSeries",
    "Classification",
    "SeriesKind",
    "classify",
    "parametric_excess",
    "eval_exact",
    "eval_numeric",
    "normalize",
    "DEFAULT_MAX_TERMS",
]

DEFAULT_MAX_TERMS = 100_000


def _as_param_tuple(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class HypSeries:
    """A pFq series: upper parameters, lower parameters, argument z.

    Parameter order is preserved as given (evaluation is order-independent);
    :meth:`canonical` sorts each list ascending for display and reports.
    """

    upper: tuple[Fraction, ...]
    lower: tuple[Fraction, ...]
    z: Fraction

    def __init__(self, upper: Iterable, lower: Iterable, z) -> None:
        object.__setattr__(self, "upper", _as_param_tuple(upper))
        object.__setattr__(self, "lower", _as_param_tuple(lower))
        object.__setattr__(self, "z", Fraction(z))

    def canonical(self) -> "HypSeries":
        return HypSeries(sorted(self.upper), sorted(self.lower), self.z)

    def __str__(self) -> str:
        up = ",".join(str(a) for a in self.upper)
        lo = ",".join(str(b) for b in self.lower)
        return f"{len(self.upper)}F{len(self.lower)}({up}; {lo}; {self.z})"


@dataclass(frozen=True)
class PrefactoredSeries:
    """A constant prefactor times a pFq series; the prefactor is the
    initial term t_0 of the concrete sum the series was derived from."""

    prefactor: Fraction
    series: HypSeries


class SeriesKind(Enum):
    TERMINATING = "terminating"
    CONVERGENT = "nonterminating_convergent"
    DIVERGENT = "nonterminating_divergent"
    ILL_POSED = "ill_posed"


@dataclass(frozen=True)
class Classification:
    """Outcome of :func:`classify`.

    ``index`` is the termination index N for TERMINATING (minimal N with
    some upper parameter equal to -N) or the pole index M for ILL_POSED
    (minimal M with some lower parameter equal to -M, reached strictly
    before any termination).
    """

    kind: SeriesKind
    index: Optional[int] = None

    @property
    def is_terminating(self) -> bool:
        return self.kind is SeriesKind.TERMINATING

    def __str__(self) -> str:
        if self.index is None:
            return self.kind.value
        return f"{self.kind.value}({self.index})"


def _min_termination_index(params: tuple[Fraction, ...]) -> Optional[int]:
    hits = [-p.numerator for p in params if is_nonpositive_integer(p)]
    return min(hits) if hits else None


def classify(s: HypSeries) -> Classification:
    """Decide how (and whether) the series can be summed.

    A lower-parameter pole strictly below every termination index makes the
    series ill-posed; a pole at or beyond the termination index is harmless
    because summation stops before reaching it.  Nonterminating series are
    split by the standard convergence rule: p <= q converges everywhere,
    p = q + 1 inside the unit circle plus the parametric-excess conditions
    on its boundary, and p > q + 1 only at z = 0.
    """
    n_term = _min_termination_index(s.upper)
    n_pole = _min_termination_index(s.lower)
    if n_pole is not None and (n_term is None or n_pole < n_term):
        return Classification(SeriesKind.ILL_POSED, n_pole)
    if n_term is not None:
        return Classification(SeriesKind.TERMINATING, n_term)

    p, q = len(s.upper), len(s.lower)
    z = s.z
    if z == 0 or p <= q:
        return Classification(SeriesKind.CONVERGENT)
    if p > q + 1:
        return Classification(SeriesKind.DIVERGENT)
    # p == q + 1: radius of convergence 1
    if abs(z) < 1:
        return Classification(SeriesKind.CONVERGENT)
    if abs(z) > 1:
        return Classification(SeriesKind.DIVERGENT)
    excess = parametric_excess(s)
    if z == 1:
        good = excess > 0
    else:  # z == -1
        good = excess > -1
    return Classification(SeriesKind.CONVERGENT if good else SeriesKind.DIVERGENT)


def parametric_excess(s: HypSeries) -> Rational:
    """(sum of lower parameters) - (sum of upper parameters)."""
    return sum(s.lower, Fraction(0)) - sum(s.upper, Fraction(0))


def _ratio_factors(s: HypSeries) -> tuple[list[tuple[int, int]], list[tuple[int, int]], int, int]:
    up = [(a.numerator, a.denominator) for a in s.upper]
    lo = [(b.numerator, b.denominator) for b in s.lower]
    return up, lo, s.z.numerator, s.z.denominator


def eval_exact(s: HypSeries) -> Rational:
    """Exact rational sum of a terminating series.

    The terms are accumulated as one integer numerator over the running
    product of the (integer-cleared) ratio denominators, with a single
    gcd reduction at the end; no floating point and no per-term reduction.
    """
    cls = classify(s)
    if cls.kind is SeriesKind.ILL_POSED:
        raise PoleEncountered(f"lower-parameter pole at index {cls.index} in {s}")
    if cls.kind is not SeriesKind.TERMINATING:
        raise NotTerminating(f"series {s} is {cls}, exact summation needs termination")
    n_terms = cls.index  # sum runs n = 0..N
    up, lo, z_num, z_den = _ratio_factors(s)
    # t_{n+1}/t_n = P(n)/Q(n) with
    #   P(n) = prod(p_i + n q_i) * prod(s_j) * z_num
    #   Q(n) = prod(r_j + n s_j) * prod(q_i) * z_den * (n + 1)
    p_const = math.prod(q for _, q in lo) * z_num
    q_const = math.prod(q for _, q in up) * z_den
    term_num = 1
    acc_num = 1
    acc_den = 1
    for n in range(n_terms):
        p_n = p_const
        for num, den in up:
            p_n *= num + n * den
        q_n = q_const * (n + 1)
        for num, den in lo:
            q_n *= num + n * den
        term_num *= p_n
        acc_num = acc_num * q_n + term_num
        acc_den *= q_n
    return Fraction(acc_num, acc_den)


def eval_numeric(s: HypSeries, tol: float, max_terms: int = DEFAULT_MAX_TERMS) -> float:
    """Floating-point sum with compensated (Kahan) accumulation.

    Terminating series sum their N+1 terms outright.  Nonterminating
    convergent series stop once three consecutive terms fall below
    tol * max(1, |partial sum|); a single small term is not trusted because
    alternating series at z = -1 can have one accidental near-cancellation.
    """
    if not tol > 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    cls = classify(s)
    if cls.kind is SeriesKind.ILL_POSED:
        raise PoleEncountered(f"lower-parameter pole at index {cls.index} in {s}")
    if cls.kind is SeriesKind.DIVERGENT:
        raise DivergentSeries(f"series {s} diverges at z = {s.z}")

    upper = [float(a) for a in s.upper]
    lower = [float(b) for b in s.lower]
    z = float(s.z)

    total = 0.0
    comp = 0.0
    term = 1.0

    def add(value: float) -> None:
        nonlocal total, comp
        y = value - comp
        t = total + y
        comp = (t - total) - y
        total = t

    if cls.is_terminating:
        assert cls.index is not None
        for n in range(cls.index + 1):
            add(term)
            if n == cls.index:
                break  # a lower pole AT the index would make t_{N+1} a 0/0
            num = math.prod(a + n for a in upper)
            den = math.prod(b + n for b in lower) * (n + 1)
            term *= num / den * z
        return total

    small_streak = 0
    for n in range(max_terms):
        add(term)
        num = math.prod(a + n for a in upper)
        den = math.prod(b + n for b in lower) * (n + 1)
        term *= num / den * z
        if abs(term) < tol * max(1.0, abs(total)):
            small_streak += 1
            if small_streak >= 3:
                return total
        else:
            small_streak = 0
    raise NonConvergedWithinBudget(
        f"no convergence after {max_terms} terms of {s} at tolerance {tol}"
    )


def normalize(s: HypSeries) -> tuple[HypSeries, list[Fraction]]:
    """Cancel parameter values present in both lists, one occurrence at a time.

    Refuses to cancel a nonpositive integer: such a pair hides a 0/0 factor
    and auto-cancelling it would change the value of an ill-posed series.
    Returns the reduced series and the cancelled values sorted ascending.
    """
    shared = Counter(s.upper) & Counter(s.lower)
    cancelled: list[Fraction] = []
    for value, count in shared.items():
        if is_nonpositive_integer(value):
            raise AmbiguousCancellation(
                f"parameter {value} appears in both lists and is a nonpositive integer"
            )
        cancelled.extend([value] * count)
    remaining = Counter(shared)

    def strip(params: tuple[Fraction, ...], budget: Counter) -> list[Fraction]:
        out = []
        for value in params:
            if budget[value] > 0:
                budget[value] -= 1
            else:
                out.append(value)
        return out

    new_upper = strip(s.upper, Counter(remaining))
    new_lower = strip(s.lower, Counter(remaining))
    return HypSeries(new_upper, new_lower, s.z), sorted(cancelled)
