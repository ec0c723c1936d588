"""Exhaustive consistency checks of the closed-form ratios.

Each law is checked over every relevant event pair of one model and
reports the worst relative error seen plus a counterexample on failure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, RangeError
from .events import enumerate_events, iter_reference_target_pairs
from .model import Coefficients, Event, SubsetSpec
from .odds import oracle_odds_ratio
from .ratios import (
    basic_odds_ratio,
    ensemble,
    group_odds_ratio,
    inverse_odds_ratio,
    odds_ratio_between,
)

MAX_EXHAUSTIVE_N = 12
ORACLE_TOLERANCE = 1e-10
LAW_TOLERANCE = 1e-12
INTERCEPT_SHIFTS = (-7.5, -1.0, 0.5, 12.25)


def rel_error(a: float, b: float) -> float:
    if a == b:
        return 0.0
    return abs(a - b) / max(abs(a), abs(b))


@dataclass
class LawResult:
    law: str
    tolerance: float
    checks: int = 0
    worst: float = 0.0
    counterexample: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def observe(self, err: float, context: Callable[[], dict]) -> None:
        self.checks += 1
        if err > self.worst or math.isnan(err):
            self.worst = err
        if (err > self.tolerance or math.isnan(err)) and self.counterexample is None:
            self.counterexample = {**context(), "relative_error": err}

    def merge(self, other: "LawResult") -> None:
        self.checks += other.checks
        self.worst = max(self.worst, other.worst)
        if self.counterexample is None:
            self.counterexample = other.counterexample

    def as_dict(self) -> dict:
        return {
            "law": self.law,
            "passed": self.passed,
            "checks": self.checks,
            "worst_relative_error": self.worst,
            "tolerance": self.tolerance,
            "counterexample": self.counterexample,
        }


def _ctx(coeffs: Coefficients, ref: Event, tgt: Event, **extra) -> Callable[[], dict]:
    return lambda: {
        "intercept": coeffs.intercept,
        "betas": list(coeffs.betas),
        "reference": ref.number,
        "target": tgt.number,
        "reference_bits": list(ref.bits),
        "target_bits": list(tgt.bits),
        **extra,
    }


def check_oracle_equivalence(coeffs, events) -> LawResult:
    res = LawResult("oracle_equivalence", ORACLE_TOLERANCE)
    for t, tgt in enumerate(events):
        sub = (t - 1) & t
        # every proper submask r of t is a pure 0->1 reference for t
        while True:
            if sub != t:
                ref = events[sub]
                got = odds_ratio_between(coeffs, ref, tgt).value
                want = oracle_odds_ratio(coeffs, ref, tgt)
                res.observe(abs(got / want - 1.0), _ctx(coeffs, ref, tgt, closed_form=got, oracle=want))
            if sub == 0:
                break
            sub = (sub - 1) & t
    return res


def check_product_law(coeffs, events) -> LawResult:
    res = LawResult("product", LAW_TOLERANCE)
    n = coeffs.n_vars
    basics = [basic_odds_ratio(coeffs, i).value for i in range(1, n + 1)]
    for tgt in events[1:]:
        subset = SubsetSpec.from_number(n, tgt.number)
        got = group_odds_ratio(coeffs, subset).value
        want = math.prod(basics[m - 1] for m in subset.members)
        res.observe(rel_error(got, want), _ctx(coeffs, events[0], tgt, group=got, product=want))
    return res


def check_context_free(coeffs, events) -> LawResult:
    res = LawResult("context_free", LAW_TOLERANCE)
    n = coeffs.n_vars
    for var in range(1, n + 1):
        single = SubsetSpec(n, (var,))
        anchor = None
        for ref, tgt in iter_reference_target_pairs(single):
            value = odds_ratio_between(coeffs, ref, tgt).value
            if anchor is None:
                anchor = value
            res.observe(rel_error(value, anchor), _ctx(coeffs, ref, tgt, variable=var, value=value, anchor=anchor))
    return res


def check_subsumption(coeffs, events) -> LawResult:
    res = LawResult("subsumption", 0.0)
    n = coeffs.n_vars
    records = ensemble(coeffs)
    for var in range(1, n + 1):
        t = 1 << (n - var)
        rec = records[t - 1]
        basic = basic_odds_ratio(coeffs, var)
        err = 0.0 if rec == basic else max(rel_error(rec.value, basic.value), math.ulp(1.0))
        res.observe(err, _ctx(coeffs, rec.reference, rec.target, variable=var))
    return res


def check_inverse_law(coeffs, events) -> LawResult:
    res = LawResult("inverse", LAW_TOLERANCE)
    n = coeffs.n_vars
    inv = inverse_odds_ratio(coeffs)
    full = group_odds_ratio(coeffs, SubsetSpec(n, tuple(range(1, n + 1))))
    prod = inv.value * full.value
    res.observe(abs(prod - 1.0), _ctx(coeffs, inv.reference, inv.target, product=prod))
    return res


def check_intercept_invariance(coeffs, events) -> LawResult:
    res = LawResult("intercept_invariance", LAW_TOLERANCE)
    base = ensemble(coeffs, include_inverse=True)
    base_oracle = [oracle_odds_ratio(coeffs, r.reference, r.target) for r in base]
    for delta in INTERCEPT_SHIFTS:
        shifted = coeffs.shifted(delta)
        moved = ensemble(shifted, include_inverse=True)
        try:
            moved_oracle = [oracle_odds_ratio(shifted, r.reference, r.target) for r in base]
        except RangeError:
            # shift pushed some odds past float range; nothing to compare
            continue
        for rec, rec2, orc, orc2 in zip(base, moved, base_oracle, moved_oracle):
            # closed form must not see the intercept at all
            err = 0.0 if rec.value == rec2.value else rel_error(rec.value, rec2.value) or math.ulp(1.0)
            err = max(err, rel_error(orc, orc2))
            res.observe(err, _ctx(coeffs, rec.reference, rec.target, shift=delta))
    return res


LAWS = (
    check_oracle_equivalence,
    check_product_law,
    check_context_free,
    check_subsumption,
    check_inverse_law,
    check_intercept_invariance,
)


def verify_model(coeffs: Coefficients) -> list[LawResult]:
    if coeffs.n_vars > MAX_EXHAUSTIVE_N:
        raise DomainError(
            f"exhaustive verification supports N <= {MAX_EXHAUSTIVE_N}, got N={coeffs.n_vars}"
        )
    events = enumerate_events(coeffs.n_vars)
    return [law(coeffs, events) for law in LAWS]


def random_coefficients(n_vars: int, seed: int, scale: float = 2.0) -> Coefficients:
    rng = np.random.default_rng(seed)
    values = rng.uniform(-scale, scale, size=n_vars + 1)
    return Coefficients(float(values[0]), tuple(float(v) for v in values[1:]))


def verify_models(models) -> list[LawResult]:
    """Run every law over several models and merge per law."""
    merged = None
    for coeffs in models:
        results = verify_model(coeffs)
        if merged is None:
            merged = results
        else:
            for acc, r in zip(merged, results):
                acc.merge(r)
    if merged is None:
        raise DomainError("no models to verify")
    return merged
