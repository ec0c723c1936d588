"""Basic, group and inverse odds ratios from the closed-form exponent.

Every ratio here is ``exp(sum of slopes over the variables that switch 0 -> 1)``.
Exponents are summed in log space and exponentiated once; the intercept
never enters.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import DomainError, RangeError
from .events import all_ones, all_zeros, event_for_single_variable
from .model import Coefficients, Event, OddsRatioRecord, SubsetSpec, check_capacity
from .odds import MAX_ABS_LOG_ODDS

UNIT_TOLERANCE = 1e-12


@lru_cache(maxsize=4096)
def _subset(n_vars: int, number: int) -> SubsetSpec:
    return SubsetSpec.from_number(n_vars, number)


def _exp(exponent: float) -> float:
    if abs(exponent) > MAX_ABS_LOG_ODDS:
        raise RangeError(f"odds-ratio exponent {exponent!r} is outside +/-{MAX_ABS_LOG_ODDS:g}")
    return math.exp(exponent)


def _exponent(coeffs: Coefficients, subset: SubsetSpec) -> float:
    return math.fsum(coeffs.betas[m - 1] for m in subset.members)


def _check_model(coeffs: Coefficients, *events: Event) -> None:
    for ev in events:
        if ev.n_vars != coeffs.n_vars:
            raise DomainError(
                f"model has N={coeffs.n_vars} variables but {ev.name} has {ev.n_vars}"
            )


def _record(coeffs, subset, reference, target) -> OddsRatioRecord:
    exponent = _exponent(coeffs, subset)
    kind = "basic" if len(subset.members) == 1 else "group"
    return OddsRatioRecord(subset, reference, target, exponent, _exp(exponent), kind)


def basic_odds_ratio(coeffs: Coefficients, var_index: int) -> OddsRatioRecord:
    """exp(beta_n): ``x<var_index>`` switching 0 -> 1 from the all-zeros event."""
    n = coeffs.n_vars
    target = event_for_single_variable(n, var_index)
    return _record(coeffs, _subset(n, target.number), all_zeros(n), target)


def odds_ratio_between(coeffs: Coefficients, reference: Event, target: Event) -> OddsRatioRecord:
    """Odds ratio of ``target`` relative to ``reference``.

    Only pure 0 -> 1 transitions are accepted: every variable that differs
    must be 0 in the reference and 1 in the target.
    """
    _check_model(coeffs, reference, target)
    r, t = reference.number, target.number
    if r == t:
        raise DomainError("reference and target events must differ (E_r != E_t)")
    falling = r & ~t
    if falling:
        rising = t & ~r
        n = coeffs.n_vars
        down = [f"x{i + 1}" for i in range(n) if (falling >> (n - 1 - i)) & 1]
        msg = f"{reference.name} -> {target.name} is not a pure 0->1 transition: "
        msg += f"{', '.join(down)} go 1->0"
        if rising:
            up = [f"x{i + 1}" for i in range(n) if (rising >> (n - 1 - i)) & 1]
            msg += f" while {', '.join(up)} go 0->1"
        raise DomainError(msg)
    return _record(coeffs, _subset(coeffs.n_vars, t ^ r), reference, target)


def group_odds_ratio(coeffs: Coefficients, subset: SubsetSpec) -> OddsRatioRecord:
    """Ratio for ``subset`` switching 0 -> 1 together, referenced to E_0.

    Singletons come back with ``kind="basic"`` and are identical to
    :func:`basic_odds_ratio`.
    """
    if subset.n_vars != coeffs.n_vars:
        raise DomainError(f"subset is over N={subset.n_vars}, model has N={coeffs.n_vars}")
    if not subset.members:
        raise DomainError("the empty subset has no odds ratio")
    n = coeffs.n_vars
    return _record(coeffs, subset, all_zeros(n), Event(n, subset.number))


def inverse_odds_ratio(coeffs: Coefficients) -> OddsRatioRecord:
    """All variables switching 1 -> 0: odds of E_0 over odds of the all-ones event."""
    n = coeffs.n_vars
    full = _subset(n, (1 << n) - 1)
    exponent = -math.fsum(coeffs.betas)
    return OddsRatioRecord(full, all_ones(n), all_zeros(n), exponent, _exp(exponent), "inverse")


def iter_ensemble(
    coeffs: Coefficients, start: int = 1, stop: int | None = None
) -> Iterator[OddsRatioRecord]:
    """Group odds ratios for target events ``start <= t < stop`` in order.

    Ranges can be handed to separate workers and concatenated; each record
    depends only on its own target number.
    """
    n = coeffs.n_vars
    top = 1 << n
    stop = top if stop is None else min(stop, top)
    ref = all_zeros(n)
    for t in range(max(start, 1), stop):
        yield _record(coeffs, _subset(n, t), ref, Event(n, t))


def ensemble(coeffs: Coefficients, include_inverse: bool = False) -> list[OddsRatioRecord]:
    """All 2^N - 1 group odds ratios ordered by target event number."""
    check_capacity(coeffs.n_vars, "odds ratios")
    records = list(iter_ensemble(coeffs))
    if include_inverse:
        records.append(inverse_odds_ratio(coeffs))
    return records


@dataclass(frozen=True)
class EnsembleSummary:
    count: int
    min_value: float
    max_value: float
    geometric_mean: float
    argmin: SubsetSpec
    argmax: SubsetSpec
    n_above: int
    n_equal: int
    n_below: int

    def as_dict(self) -> dict:
        return {
            "count": self.count,
            "min": self.min_value,
            "argmin": self.argmin.name,
            "max": self.max_value,
            "argmax": self.argmax.name,
            "geometric_mean": self.geometric_mean,
            "above_one": self.n_above,
            "equal_one": self.n_equal,
            "below_one": self.n_below,
        }


class SummaryBuilder:
    """Incremental form of :func:`ensemble_summary` for streamed records."""

    def __init__(self):
        self.count = self.above = self.equal = self.below = 0
        self.lo = self.hi = None
        self.exp_sum = 0.0

    def add(self, rec: OddsRatioRecord) -> None:
        self.count += 1
        self.exp_sum += rec.exponent
        if self.lo is None or rec.value < self.lo.value:
            self.lo = rec
        if self.hi is None or rec.value > self.hi.value:
            self.hi = rec
        if abs(rec.value - 1.0) <= UNIT_TOLERANCE:
            self.equal += 1
        elif rec.value > 1.0:
            self.above += 1
        else:
            self.below += 1

    def result(self) -> EnsembleSummary:
        if self.count == 0:
            raise DomainError("cannot summarize an empty set of odds ratios")
        return EnsembleSummary(
            count=self.count,
            min_value=self.lo.value,
            max_value=self.hi.value,
            geometric_mean=math.exp(self.exp_sum / self.count),
            argmin=self.lo.subset,
            argmax=self.hi.subset,
            n_above=self.above,
            n_equal=self.equal,
            n_below=self.below,
        )


def ensemble_summary(records: Iterable[OddsRatioRecord]) -> EnsembleSummary:
    """Extremes, geometric mean and >1 / =1 / <1 counts in a single pass.

    Ties for the extremes go to the first record seen. "= 1" means within
    1e-12 of one.
    """
    builder = SummaryBuilder()
    for rec in records:
        builder.add(rec)
    return builder.result()
