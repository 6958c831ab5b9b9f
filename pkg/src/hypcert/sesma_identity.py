"""Certification of the binomial sum identity

    sum_{n=0}^{m} C(m,n) C(k+n,m) / C(k+m+n, m+n) * (2n+k+1)/(m+n+k+1) = 1

for integers k >= m >= 0, by three independent exact pathways:

  1. direct rational summation of the binomial terms,
  2. the closed-form prefactor times the exact sum of the equivalent
     4F3(k+1, 1+(k+1)/2, -m, m+1; (k+1)/2, k+m+2, k-m+1; -1),
  3. the same prefactor times the terminating closed form of Whipple's
     second theorem applied to that 4F3.

Every pathway must produce exactly 1; a report records all three values.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import VerificationError
from .exact_arith import Rational, binomial, factorial
from .hyper_series import HypSeries, PrefactoredSeries, eval_exact
from .term_recognize import IntPolynomial, TermRatio
from .whipple import match_whipple, rhs_exact_terminating

__all__ = [
    "IdentityReport",
    "lhs_term",
    "lhs_sum",
    "explore_sum",
    "sesma_ratio",
    "rewrite",
    "verify",
    "sweep",
]


@dataclass(frozen=True)
class IdentityReport:
    """Per-(k, m) record of the three evaluation pathways.

    ``all_equal_one`` is true exactly when all three values are 1; the
    constructor refuses inconsistent records.
    """

    k: int
    m: int
    direct: Fraction
    via_series: Fraction
    via_whipple: Fraction
    all_equal_one: bool

    def __post_init__(self) -> None:
        expected = self.direct == self.via_series == self.via_whipple == 1
        if self.all_equal_one != expected:
            raise ValueError("all_equal_one contradicts the pathway values")


def _check_km(k: int, m: int) -> None:
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    if k < m:
        raise ValueError(f"the identity requires k >= m, got k = {k}, m = {m}")


def lhs_term(k: int, m: int, n: int) -> Rational:
    """Term n of the binomial sum, for k >= m >= n >= 0."""
    _check_km(k, m)
    if n < 0 or n > m:
        raise ValueError(f"term index must satisfy 0 <= n <= m, got n = {n}, m = {m}")
    num = binomial(m, n) * binomial(k + n, m) * (2 * n + k + 1)
    den = binomial(k + m + n, m + n) * (m + n + k + 1)
    return Fraction(num, den)


def lhs_sum(k: int, m: int) -> Rational:
    """Exact value of the full binomial sum over n = 0..m.

    The terms are put over the common denominator (k+2m+1)!/k! so the loop
    is pure integer arithmetic: the two binomials and the weight
    (m+n)! (k+2m+1)!/(k+m+n+1)! are all carried incrementally (each step is
    one small multiply and one exact small division of the running value).
    Equal to sum(lhs_term(k, m, n)) by construction.
    """
    _check_km(k, m)
    weight = factorial(m) * math.prod(range(k + m + 2, k + 2 * m + 2))
    choose_m_n = 1  # C(m, n)
    choose_kn_m = math.comb(k, m)  # C(k+n, m)
    total = 0
    for n in range(m + 1):
        total += choose_m_n * choose_kn_m * (2 * n + k + 1) * weight
        if n < m:  # the update divisions are exact only below the last index
            choose_m_n = choose_m_n * (m - n) // (n + 1)
            choose_kn_m = choose_kn_m * (k + n + 1) // (k + n + 1 - m)
            weight = weight * (m + n + 1) // (k + m + n + 2)
    return Fraction(total * factorial(k), factorial(k + 2 * m + 1))


def explore_sum(k: int, m: int) -> Rational:
    """The same binomial sum without the k >= m gate.

    Out-of-range binomials vanish, so the expression stays well defined for
    any k, m >= 0; this exploratory mode reports the actual value instead of
    asserting the identity, whose claim covers k >= m only.
    """
    if k < 0 or m < 0:
        raise ValueError(f"k and m must be nonnegative, got k = {k}, m = {m}")
    total = Fraction(0)
    for n in range(m + 1):
        num = binomial(m, n) * binomial(k + n, m) * (2 * n + k + 1)
        den = binomial(k + m + n, m + n) * (m + n + k + 1)
        total += Fraction(num, den)
    return total


def sesma_ratio(k: int, m: int) -> TermRatio:
    """Consecutive-term ratio of the binomial sum as integer polynomials.

    Telescoping the factorials in lhs_term(k, m, n+1) / lhs_term(k, m, n)
    gives

        P(n) = (m-n)(k+n+1)(m+n+1)(2n+k+3)
        Q(n) = (n+1)(k-m+n+1)(2n+k+1)(m+n+k+2)

    with initial term t0 = lhs_term(k, m, 0).
    """
    _check_km(k, m)
    num = IntPolynomial.from_linear_factors([(m, -1), (k + 1, 1), (m + 1, 1), (k + 3, 2)])
    den = IntPolynomial.from_linear_factors([(1, 1), (k - m + 1, 1), (k + 1, 2), (m + k + 2, 1)])
    return TermRatio(num=num, den=den, t0=lhs_term(k, m, 0))


def rewrite(k: int, m: int) -> PrefactoredSeries:
    """The binomial sum in hypergeometric normal form: prefactor times
    4F3(k+1, 1+(k+1)/2, -m, m+1; (k+1)/2, k+m+2, k-m+1; -1).

    The prefactor (k+1)! k! / ((k-m)! (k+m+1)!) equals lhs_term(k, m, 0).
    """
    _check_km(k, m)
    prefactor = Fraction(
        factorial(k + 1) * factorial(k),
        factorial(k - m) * factorial(k + m + 1),
    )
    half = Fraction(k + 1, 2)
    series = HypSeries(
        upper=(Fraction(k + 1), 1 + half, Fraction(-m), Fraction(m + 1)),
        lower=(half, Fraction(k + m + 2), Fraction(k - m + 1)),
        z=Fraction(-1),
    )
    return PrefactoredSeries(prefactor=prefactor, series=series)


def verify(k: int, m: int) -> IdentityReport:
    """Run all three pathways for one (k, m) and report their values.

    All pathways are attempted even if an earlier one fails, so a failure
    surfaces with every collected diagnostic rather than a partial report.
    """
    _check_km(k, m)
    failures: dict[str, str] = {}
    direct = via_series = via_whipple = None

    try:
        direct = lhs_sum(k, m)
    except Exception as exc:  # pragma: no cover - no known failing input
        failures["direct"] = str(exc)

    prefactored = rewrite(k, m)
    try:
        via_series = prefactored.prefactor * eval_exact(prefactored.series)
    except Exception as exc:  # pragma: no cover - no known failing input
        failures["via_series"] = str(exc)

    try:
        match = match_whipple(prefactored.series)
        if match is None:
            raise ValueError("series did not match the Whipple shape")
        expected = (Fraction(k + 1), Fraction(-m), Fraction(m + 1))
        if (match.a, match.b, match.c) != expected:
            raise ValueError(
                f"matched ({match.a}, {match.b}, {match.c}), "
                f"expected (a, b, c) = ({k + 1}, {-m}, {m + 1})"
            )
        via_whipple = prefactored.prefactor * rhs_exact_terminating(match)
    except Exception as exc:
        failures["via_whipple"] = str(exc)

    if failures:
        raise VerificationError(k, m, failures)
    assert direct is not None and via_series is not None and via_whipple is not None
    return IdentityReport(
        k=k,
        m=m,
        direct=direct,
        via_series=via_series,
        via_whipple=via_whipple,
        all_equal_one=(direct == 1 and via_series == 1 and via_whipple == 1),
    )


def _verify_pair(pair: tuple[int, int]) -> IdentityReport:
    return verify(*pair)


def sweep(k_max: int, jobs: int = 1) -> list[IdentityReport]:
    """verify(k, m) for every 0 <= m <= k <= k_max, in lexicographic order.

    With jobs > 1 the reports are computed in worker processes; the output
    order (and hence any serialized form) is identical for every job count.
    """
    if k_max < 0:
        raise ValueError(f"k_max must be nonnegative, got {k_max}")
    pairs = [(k, m) for k in range(k_max + 1) for m in range(k + 1)]
    if jobs <= 1:
        return [verify(k, m) for k, m in pairs]
    chunk = max(1, len(pairs) // (jobs * 16))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_verify_pair, pairs, chunksize=chunk))
