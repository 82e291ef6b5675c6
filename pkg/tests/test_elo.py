import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cbalance.elo import K_FACTOR, update, win_probability
from cbalance.errors import DomainError

ratings = st.floats(min_value=-1e4, max_value=1e4, allow_nan=False)


def wp_oracle(a, b):
    with mpmath.workdps(50):
        return 1 / (1 + mpmath.power(10, -(mpmath.mpf(a) - mpmath.mpf(b)) / 400))


def test_equal_ratings():
    assert win_probability(1500, 1500) == 0.5


def test_matches_high_precision_oracle():
    # 400-point gap: 1 / (1 + 10^-1) = 10/11
    assert win_probability(1900, 1500) == pytest.approx(float(wp_oracle(1900, 1500)), abs=1e-15)
    assert win_probability(1900, 1500) == pytest.approx(10 / 11, abs=1e-15)


def test_worked_example_pairwise_terms():
    diffs = [6, 234, 154, 240, 160, 80]
    total = sum(win_probability(1500 + d, 1500) for d in diffs)
    assert total == pytest.approx(4.138, abs=1e-3)


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_non_finite_rejected(bad):
    with pytest.raises(DomainError):
        win_probability(bad, 1500)
    with pytest.raises(DomainError):
        win_probability(1500, bad)


def test_huge_gap_does_not_overflow():
    assert win_probability(1e6, 0) == 1.0
    assert win_probability(0, 1e6) == 0.0


@given(ratings, ratings)
def test_complement(a, b):
    assert win_probability(a, b) + win_probability(b, a) == pytest.approx(1.0, abs=1e-12)


@given(ratings, ratings, st.floats(min_value=1e-3, max_value=500))
def test_monotone_in_difference(a, b, step):
    # Strictness only resolvable where the probability is not saturated.
    if abs(a - b) < 3000:
        assert win_probability(a + step, b) > win_probability(a, b)


@given(ratings)
def test_identity(a):
    assert win_probability(a, a) == 0.5


def test_update_equal_ratings():
    assert update(1600, 1600, 0.5) == (0.0, 0.0)
    assert update(1600, 1600, 1) == (10.0, -10.0)


def test_update_loss_against_oracle():
    di, dj = update(1911, 1677, 0)
    expected = float(-K_FACTOR * wp_oracle(1911, 1677))
    assert di == pytest.approx(expected, abs=1e-12)
    assert dj == -di


@given(ratings, ratings, st.sampled_from([0, 0.5, 1]))
def test_update_zero_sum(a, b, q):
    di, dj = update(a, b, q)
    assert di + dj == pytest.approx(0, abs=1e-12)


@pytest.mark.parametrize("q", [0.25, 2, -1])
def test_update_rejects_bad_outcome(q):
    with pytest.raises(DomainError):
        update(1500, 1500, q)
