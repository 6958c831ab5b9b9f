import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hypcert.errors import NotTerminating, PoleInClosedForm
from hypcert.exact_arith import factorial
from hypcert.hyper_series import HypSeries, eval_exact
from hypcert.whipple import (
    WhippleMatch,
    log_gamma,
    match_whipple,
    rhs_exact_terminating,
    rhs_numeric,
)


def whipple_series(a, b, c) -> HypSeries:
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    return HypSeries(
        upper=(a, 1 + a / 2, b, c),
        lower=(a / 2, a - b + 1, a - c + 1),
        z=Fraction(-1),
    )


def random_terminating_match(rng: random.Random) -> WhippleMatch:
    q = rng.choice([1, 2, 4])
    a = Fraction(rng.randint(q, 20 * q), q)
    shift = rng.randint(0, 12)
    cq = rng.choice([1, 2, 4])
    # a - c + 1 > 0, i.e. c < a + 1
    c_max_num = math.ceil((a + 1) * cq) - 1
    c = Fraction(rng.randint(c_max_num - 30 * cq, c_max_num), cq)
    return WhippleMatch(a=a, b=Fraction(-shift), c=c)


class TestMatchWhipple:
    def test_family_instance_small(self):
        s = HypSeries([3, Fraction(5, 2), -1, 2], [Fraction(3, 2), 5, 2], -1)
        assert match_whipple(s) == WhippleMatch(Fraction(3), Fraction(-1), Fraction(2))

    def test_family_instance_k5(self):
        s = HypSeries([6, 4, -1, 2], [3, 5, 8], -1)
        assert match_whipple(s) == WhippleMatch(Fraction(6), Fraction(-1), Fraction(2))

    def test_argument_must_be_minus_one(self):
        s = HypSeries([3, Fraction(5, 2), -1, 2], [Fraction(3, 2), 5, 2], 1)
        assert match_whipple(s) is None

    def test_wrong_shape_rejected(self):
        assert match_whipple(HypSeries([1, 2, 3], [4, 5], -1)) is None
        assert match_whipple(HypSeries([6, 4, -1, 2], [3, 5, 7], -1)) is None

    def test_permutation_invariance(self):
        s = whipple_series(6, -1, 2)
        expected = match_whipple(s)
        rng = random.Random(33)
        for _ in range(20):
            upper = list(s.upper)
            lower = list(s.lower)
            rng.shuffle(upper)
            rng.shuffle(lower)
            assert match_whipple(HypSeries(upper, lower, -1)) == expected

    def test_repeated_parameters(self):
        # a = 2 duplicates its own companion: upper holds three 2s at k=m=1
        s = HypSeries([2, 2, -1, 2], [1, 4, 1], -1)
        assert match_whipple(s) == WhippleMatch(Fraction(2), Fraction(-1), Fraction(2))

    def test_roundtrip_constructed(self):
        rng = random.Random(77)
        for _ in range(60):
            m = random_terminating_match(rng)
            got = match_whipple(whipple_series(m.a, m.b, m.c))
            assert got is not None
            # the decomposition may legitimately differ; its value may not
            assert rhs_exact_terminating(got) == rhs_exact_terminating(m)


class TestRhsExactTerminating:
    def test_small(self):
        m = WhippleMatch(Fraction(3), Fraction(-1), Fraction(2))
        assert rhs_exact_terminating(m) == 2

    def test_k5(self):
        m = WhippleMatch(Fraction(6), Fraction(-1), Fraction(2))
        assert rhs_exact_terminating(m) == Fraction(7, 5)

    def test_empty_shift(self):
        assert rhs_exact_terminating(WhippleMatch(Fraction(3), Fraction(0), Fraction(2))) == 1

    def test_terminating_c_is_swapped_in(self):
        sym = rhs_exact_terminating(WhippleMatch(Fraction(5), Fraction(7, 2), Fraction(-2)))
        assert sym == rhs_exact_terminating(WhippleMatch(Fraction(5), Fraction(-2), Fraction(7, 2)))

    def test_symmetric_when_both_terminate(self):
        for b, c in [(-1, -3), (-2, -2), (0, -4)]:
            one = rhs_exact_terminating(WhippleMatch(Fraction(9, 2), Fraction(b), Fraction(c)))
            two = rhs_exact_terminating(WhippleMatch(Fraction(9, 2), Fraction(c), Fraction(b)))
            assert one == two

    def test_not_terminating(self):
        with pytest.raises(NotTerminating):
            rhs_exact_terminating(WhippleMatch(Fraction(3), Fraction(1, 2), Fraction(2)))

    def test_pole_in_closed_form(self):
        # a - c + 1 = -1 and shift 2 put a zero into the denominator product
        with pytest.raises(PoleInClosedForm):
            rhs_exact_terminating(WhippleMatch(Fraction(1), Fraction(-2), Fraction(3)))

    def test_equals_series_sum(self):
        rng = random.Random(2024)
        for _ in range(80):
            m = random_terminating_match(rng)
            series = whipple_series(m.a, m.b, m.c)
            assert eval_exact(series) == rhs_exact_terminating(m)


class TestLogGamma:
    def test_at_one(self):
        assert abs(log_gamma(1.0)) <= 1e-12

    def test_at_half(self):
        assert log_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), abs=1e-12)

    def test_at_ten(self):
        assert log_gamma(10.0) == pytest.approx(math.log(factorial(9)), rel=1e-13)

    def test_small_arguments_via_recurrence(self):
        assert log_gamma(0.25) == pytest.approx(math.lgamma(0.25), rel=1e-12)
        assert log_gamma(0.01) == pytest.approx(math.lgamma(0.01), rel=1e-12)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            log_gamma(0.0)
        with pytest.raises(ValueError):
            log_gamma(-3.5)

    def test_grid_against_stdlib(self):
        # math.lgamma is an independent implementation (C library)
        for i in range(3000):
            x = 0.5 + i * (170.0 - 0.5) / 2999
            expected = math.lgamma(x)
            assert abs(log_gamma(x) - expected) <= 1e-12 * max(1.0, abs(expected))

    def test_factorials(self):
        for n in range(1, 151):
            expected = math.log(factorial(n))
            assert abs(log_gamma(n + 1.0) - expected) <= 1e-12 * max(1.0, abs(expected))


class TestRhsNumeric:
    def test_small(self):
        m = WhippleMatch(Fraction(3), Fraction(-1), Fraction(2))
        assert rhs_numeric(m) == pytest.approx(2.0, abs=1e-10)

    def test_k5(self):
        m = WhippleMatch(Fraction(6), Fraction(-1), Fraction(2))
        assert rhs_numeric(m) == pytest.approx(1.4, abs=1e-10)

    def test_zero_shift(self):
        m = WhippleMatch(Fraction(3), Fraction(0), Fraction(2))
        assert rhs_numeric(m) == pytest.approx(1.0, abs=1e-10)

    def test_rejects_nonpositive_gamma_argument(self):
        # a + 1 fine, but a - b - c + 1 = -1/2 < 0
        with pytest.raises(ValueError):
            rhs_numeric(WhippleMatch(Fraction(1), Fraction(1), Fraction(3, 2)))

    def test_close_to_exact(self):
        rng = random.Random(5)
        for _ in range(80):
            m = random_terminating_match(rng)
            exact = float(rhs_exact_terminating(m))
            got = rhs_numeric(m)
            assert abs(got - exact) <= 1e-9 * max(1.0, abs(exact))


@given(
    st.integers(1, 40),
    st.sampled_from([1, 2, 4]),
    st.integers(0, 10),
    st.integers(-12, 12),
    st.sampled_from([1, 2, 4]),
)
@settings(max_examples=120, deadline=None)
def test_whipple_theorem_property(a_num, a_den, shift, c_num, c_den):
    a = Fraction(a_num, a_den)
    c = Fraction(c_num, c_den)
    if a - c + 1 <= 0:
        return
    m = WhippleMatch(a=a, b=Fraction(-shift), c=c)
    assert eval_exact(whipple_series(m.a, m.b, m.c)) == rhs_exact_terminating(m)
