"""Odds-ratio ensembles for logistic regression with binary, non-interacting predictors."""

__version__ = "0.1.0"

from .errors import (
    CapacityError,
    CollinearityError,
    ConvergenceError,
    DataError,
    DegenerateResponseError,
    DomainError,
    FitError,
    GorError,
    RangeError,
    SchemaError,
    SeparationError,
    ValidationError,
)
from .model import Coefficients, Dataset, Event, OddsRatioRecord, SubsetSpec
from .events import (
    all_ones,
    all_zeros,
    enumerate_events,
    event_for_single_variable,
    event_from_number,
    iter_events,
    reference_target_pairs,
    subset_from_event,
)
from .odds import log_odds, odds_of_event, oracle_odds_ratio, probability_of_event
from .ratios import (
    EnsembleSummary,
    basic_odds_ratio,
    ensemble,
    ensemble_summary,
    group_odds_ratio,
    inverse_odds_ratio,
    iter_ensemble,
    odds_ratio_between,
)
from .fit import FitOptions, FitResult, fit_logit
from .data import generate_synthetic, load_csv, write_csv
