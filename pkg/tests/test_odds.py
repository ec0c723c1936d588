import math

import pytest
from hypothesis import given, settings, strategies as st

from groupodds import (
    Coefficients,
    DomainError,
    Event,
    RangeError,
    all_zeros,
    enumerate_events,
    log_odds,
    odds_of_event,
    oracle_odds_ratio,
    probability_of_event,
)

LN2, LN3, LN5 = math.log(2), math.log(3), math.log(5)


def test_log_odds_examples():
    zero = Coefficients(0.0, (0.0, 0.0, 0.0))
    assert all(log_odds(zero, e) == 0.0 for e in enumerate_events(3))
    assert log_odds(Coefficients(-1.25, (3.0, 4.0)), all_zeros(2)) == -1.25
    # 1 + 2*1 + 3*0
    assert log_odds(Coefficients(1.0, (2.0, 3.0)), Event.from_bits((1, 0))) == 3.0


def test_dimension_mismatch():
    with pytest.raises(DomainError, match="N=2"):
        log_odds(Coefficients(0.0, (1.0, 2.0)), Event(3, 1))


def test_odds_examples():
    assert odds_of_event(Coefficients(0.0, (0.0,)), Event(1, 1)) == 1.0
    assert odds_of_event(Coefficients(LN2, (5.0,)), all_zeros(1)) == pytest.approx(2.0, rel=1e-15)
    assert odds_of_event(Coefficients(0.0, (LN3,)), Event(1, 1)) == pytest.approx(3.0, rel=1e-15)


def test_odds_overflow_is_an_error():
    with pytest.raises(RangeError, match="701"):
        odds_of_event(Coefficients(701.0, (0.0,)), all_zeros(1))
    with pytest.raises(RangeError):
        odds_of_event(Coefficients(-400.0, (-400.0,)), Event(1, 1))


def test_probability_examples():
    assert probability_of_event(Coefficients(0.0, (0.0,)), Event(1, 0)) == 0.5
    assert probability_of_event(Coefficients(0.0, (LN3,)), Event(1, 1)) == pytest.approx(0.75, rel=1e-15)


def test_oracle_examples():
    c = Coefficients(0.37, (LN2, LN3, LN5))
    assert oracle_odds_ratio(c, Event(3, 0), Event(3, 5)) == pytest.approx(10.0, rel=1e-13)
    assert oracle_odds_ratio(c, Event(3, 4), Event(3, 7)) == pytest.approx(15.0, rel=1e-13)
    # second route: quotient of p/(1-p)
    p0 = probability_of_event(c, Event(3, 0))
    p5 = probability_of_event(c, Event(3, 5))
    assert (p5 / (1 - p5)) / (p0 / (1 - p0)) == pytest.approx(10.0, rel=1e-12)
    zero = Coefficients(-2.0, (0.0, 0.0, 0.0))
    assert oracle_odds_ratio(zero, Event(3, 1), Event(3, 6)) == pytest.approx(1.0, rel=1e-15)


def test_oracle_rejects_equal_events():
    with pytest.raises(DomainError, match="differ"):
        oracle_odds_ratio(Coefficients(0.0, (1.0,)), Event(1, 1), Event(1, 1))


@st.composite
def models(draw, max_n=8, scale=4.0):
    n = draw(st.integers(1, max_n))
    finite = st.floats(-scale, scale, allow_nan=False)
    return Coefficients(draw(finite), tuple(draw(finite) for _ in range(n)))


@settings(max_examples=60)
@given(models(), st.floats(-50, 50))
def test_oracle_intercept_invariance(c, shift):
    evs = enumerate_events(c.n_vars)
    moved = c.shifted(shift)
    for r in evs[:4]:
        for t in evs:
            if r != t:
                a = oracle_odds_ratio(c, r, t)
                b = oracle_odds_ratio(moved, r, t)
                assert a > 0
                assert b == pytest.approx(a, rel=1e-12)


# 1 - p loses digits once |log-odds| grows past a few units, so keep the
# linear predictor within +/-4.5 for the 1e-12 comparison.
@settings(max_examples=60)
@given(models(scale=0.5))
def test_probability_odds_consistency(c):
    for e in enumerate_events(c.n_vars):
        p = probability_of_event(c, e)
        assert 0.0 < p < 1.0
        assert p / (1 - p) == pytest.approx(odds_of_event(c, e), rel=1e-12)
