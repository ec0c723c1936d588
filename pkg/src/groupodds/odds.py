"""Log-odds, odds and probability of an event under a logit model.

:func:`oracle_odds_ratio` is deliberately the long way round: it
exponentiates both log-odds and divides, so it shares no algebra with the
closed-form exponents in :mod:`groupodds.ratios` and can be used to check them.
"""
from __future__ import annotations

import math

from .errors import DomainError, RangeError
from .model import Coefficients, Event

# exp() of anything larger is within a factor ~e^9 of float overflow
MAX_ABS_LOG_ODDS = 700.0


def _check_dims(coeffs: Coefficients, event: Event) -> None:
    if coeffs.n_vars != event.n_vars:
        raise DomainError(
            f"model has N={coeffs.n_vars} variables but event {event.name} has {event.n_vars}"
        )


def log_odds(coeffs: Coefficients, event: Event) -> float:
    _check_dims(coeffs, event)
    total = coeffs.intercept
    for b, s in zip(coeffs.betas, event.bits):
        total += b * s
    return total


def odds_of_event(coeffs: Coefficients, event: Event) -> float:
    g = log_odds(coeffs, event)
    if abs(g) > MAX_ABS_LOG_ODDS:
        raise RangeError(
            f"log-odds {g!r} of {event.name} is outside +/-{MAX_ABS_LOG_ODDS:g}; "
            "odds are not representable"
        )
    return math.exp(g)


def probability_of_event(coeffs: Coefficients, event: Event) -> float:
    """P(y=1 | event) = odds / (1 + odds)."""
    odds = odds_of_event(coeffs, event)
    return odds / (1.0 + odds)


def oracle_odds_ratio(coeffs: Coefficients, reference: Event, target: Event) -> float:
    """Odds of ``target`` divided by odds of ``reference``, evaluated literally."""
    if reference == target:
        raise DomainError("reference and target events must differ (E_r != E_t)")
    return odds_of_event(coeffs, target) / odds_of_event(coeffs, reference)
