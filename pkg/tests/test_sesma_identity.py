import random
from collections import Counter
from fractions import Fraction

import pytest

from hypcert.errors import VerificationError
from hypcert.exact_arith import binomial, factorial, pochhammer
from hypcert.hyper_series import eval_exact, normalize
from hypcert.sesma_identity import (
    IdentityReport,
    explore_sum,
    lhs_sum,
    lhs_term,
    rewrite,
    sesma_ratio,
    sweep,
    verify,
)
from hypcert.term_recognize import recognize, term_at
from hypcert.whipple import match_whipple


class TestLhsTerm:
    def test_all_factors_one(self):
        assert lhs_term(0, 0, 0) == 1

    def test_small_values(self):
        assert lhs_term(2, 1, 0) == Fraction(1, 2)
        assert lhs_term(2, 1, 1) == Fraction(1, 2)
        assert lhs_term(5, 1, 0) == Fraction(5, 7)
        assert lhs_term(5, 1, 1) == Fraction(2, 7)

    def test_rejects_k_below_m(self):
        with pytest.raises(ValueError):
            lhs_term(1, 2, 0)

    def test_rejects_n_above_m(self):
        with pytest.raises(ValueError):
            lhs_term(3, 2, 3)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            lhs_term(3, -1, 0)
        with pytest.raises(ValueError):
            lhs_term(3, 2, -1)


class TestLhsSum:
    @pytest.mark.parametrize("k,m", [(0, 0), (2, 1), (5, 1)])
    def test_known_instances(self, k, m):
        assert lhs_sum(k, m) == 1

    def test_matches_naive_summation(self):
        for k in range(26):
            for m in range(k + 1):
                naive = sum(lhs_term(k, m, n) for n in range(m + 1))
                assert lhs_sum(k, m) == naive == 1

    def test_larger_spot_checks(self):
        for k, m in [(80, 37), (120, 120), (200, 3)]:
            naive = sum(lhs_term(k, m, n) for n in range(m + 1))
            assert lhs_sum(k, m) == naive == 1

    def test_rejects_k_below_m(self):
        with pytest.raises(ValueError):
            lhs_sum(1, 2)


class TestExploreSum:
    def test_agrees_in_range(self):
        for k in range(8):
            for m in range(k + 1):
                assert explore_sum(k, m) == lhs_sum(k, m)

    def test_out_of_range_reports_actual_value(self):
        # beyond the identity's k >= m domain nothing is asserted about the
        # value; the mode just reports what the (still well-defined) sum is
        for k, m in [(0, 1), (1, 3), (2, 5), (0, 4)]:
            naive = Fraction(0)
            for n in range(m + 1):
                # binomial(k+n, m) vanishes while k+n < m
                naive += Fraction(
                    binomial(m, n) * binomial(k + n, m) * (2 * n + k + 1),
                    binomial(k + m + n, m + n) * (m + n + k + 1),
                )
            assert explore_sum(k, m) == naive

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            explore_sum(-1, 0)


class TestSesmaRatio:
    def test_ratio_values(self):
        r = sesma_ratio(2, 1)
        assert Fraction(r.num(0), r.den(0)) == 1
        assert r.t0 == Fraction(1, 2)

        r = sesma_ratio(5, 1)
        assert Fraction(r.num(0), r.den(0)) == Fraction(2, 5)
        assert r.t0 == Fraction(5, 7)

    def test_m_zero_terminates_immediately(self):
        r = sesma_ratio(3, 0)
        assert r.num(0) == 0
        assert r.t0 == 1

    def test_terms_match_lhs(self):
        for k in range(14):
            for m in range(k + 1):
                r = sesma_ratio(k, m)
                for n in range(m + 1):
                    assert term_at(r, n) == lhs_term(k, m, n)

    def test_rejects_k_below_m(self):
        with pytest.raises(ValueError):
            sesma_ratio(0, 1)


class TestRewrite:
    def test_small_instance(self):
        got = rewrite(2, 1)
        assert got.prefactor == Fraction(1, 2)
        assert sorted(got.series.upper) == [-1, 2, Fraction(5, 2), 3]
        assert sorted(got.series.lower) == [Fraction(3, 2), 2, 5]
        assert got.series.z == -1

    def test_k5_instance(self):
        got = rewrite(5, 1)
        assert got.prefactor == Fraction(5, 7)
        assert sorted(got.series.upper) == [-1, 2, 4, 6]
        assert sorted(got.series.lower) == [3, 5, 8]

    def test_trivial_instance(self):
        got = rewrite(0, 0)
        assert got.prefactor == 1
        assert sorted(got.series.upper) == [0, 1, 1, Fraction(3, 2)]
        assert sorted(got.series.lower) == [Fraction(1, 2), 1, 2]
        assert eval_exact(got.series) == 1

    def test_prefactor_is_initial_term(self):
        for k in range(16):
            for m in range(k + 1):
                assert rewrite(k, m).prefactor == lhs_term(k, m, 0)


class TestDerivationChain:
    @pytest.mark.parametrize("k,m", [(2, 1), (5, 1), (0, 0), (4, 2), (6, 3), (7, 3), (9, 4)])
    def test_recognize_matches_rewrite_reduced(self, k, m):
        recognized = recognize(sesma_ratio(k, m))
        reduced, _ = normalize(rewrite(k, m).series)
        assert recognized.prefactor == rewrite(k, m).prefactor
        assert recognized.series.z == reduced.z == -1
        assert Counter(recognized.series.upper) == Counter(reduced.upper)
        assert Counter(recognized.series.lower) == Counter(reduced.lower)

    def test_collision_cases(self):
        # k = 2m merges m+1 with k-m+1; k = 2m+1 merges two pairs; m = 0
        # merges k+1 across the lists; all must reduce identically
        for k, m in [(4, 2), (8, 4), (5, 2), (9, 4), (6, 0), (1, 1), (3, 1), (1, 0)]:
            recognized = recognize(sesma_ratio(k, m))
            reduced, _ = normalize(rewrite(k, m).series)
            assert Counter(recognized.series.upper) == Counter(reduced.upper)
            assert Counter(recognized.series.lower) == Counter(reduced.lower)

    def test_series_terms_match_binomial_terms(self):
        # both the closed-form rewrite and the recognized ratio, termwise
        for k, m in [(2, 1), (5, 1), (6, 3), (8, 4), (7, 0)]:
            for prefactored in (rewrite(k, m), recognize(sesma_ratio(k, m))):
                for n in range(m + 1):
                    term = prefactored.prefactor * Fraction(-1) ** n / factorial(n)
                    for a in prefactored.series.upper:
                        term *= pochhammer(a, n)
                    for b in prefactored.series.lower:
                        term /= pochhammer(b, n)
                    assert term == lhs_term(k, m, n)


class TestWhipplePathway:
    def test_match_is_the_expected_substitution(self):
        for k in range(12):
            for m in range(k + 1):
                match = match_whipple(rewrite(k, m).series)
                assert match is not None
                assert (match.a, match.b, match.c) == (k + 1, -m, m + 1)

    def test_prefactor_times_closed_form_is_one(self):
        for k in range(20):
            for m in range(k + 1):
                lhs = (
                    pochhammer(Fraction(k + 2), m)
                    / pochhammer(Fraction(k - m + 1), m)
                    * Fraction(
                        factorial(k + 1) * factorial(k),
                        factorial(k - m) * factorial(k + m + 1),
                    )
                )
                assert lhs == 1


class TestVerify:
    @pytest.mark.parametrize("k,m", [(2, 1), (5, 1), (0, 0)])
    def test_examples(self, k, m):
        report = verify(k, m)
        assert report.direct == 1
        assert report.via_series == 1
        assert report.via_whipple == 1
        assert report.all_equal_one

    def test_report_fields(self):
        report = verify(5, 1)
        assert isinstance(report, IdentityReport)
        assert (report.k, report.m) == (5, 1)

    def test_rejects_k_below_m(self):
        with pytest.raises(ValueError):
            verify(1, 2)

    def test_inconsistent_report_refused(self):
        with pytest.raises(ValueError):
            IdentityReport(
                k=1,
                m=1,
                direct=Fraction(1),
                via_series=Fraction(1),
                via_whipple=Fraction(2),
                all_equal_one=True,
            )


class TestSweep:
    def test_single_report(self):
        reports = sweep(0)
        assert len(reports) == 1
        assert reports[0].all_equal_one

    def test_k_max_two(self):
        reports = sweep(2)
        assert len(reports) == 6
        assert all(r.all_equal_one for r in reports)

    def test_lexicographic_order(self):
        reports = sweep(4)
        assert [(r.k, r.m) for r in reports] == [
            (k, m) for k in range(5) for m in range(k + 1)
        ]

    def test_parallel_matches_serial(self):
        serial = sweep(8, jobs=1)
        parallel = sweep(8, jobs=2)
        assert serial == parallel

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            sweep(-1)


class TestVerificationError:
    def test_structured_failure(self):
        err = VerificationError(3, 1, {"via_whipple": "nope"})
        assert err.k == 3 and err.m == 1
        assert "via_whipple" in err.failures
        assert "(k=3, m=1)" in str(err)
