"""Value types shared across the package.

Bit convention used everywhere: an event over N variables is numbered by
reading its states as an N-digit binary integer with ``x1`` as the most
significant digit, so for N=3 the number 2 = (010)b is the event {0,1,0}.
Variables are addressed 1-based (``x1..xN``) on every public surface.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Literal, Optional, Sequence

import numpy as np

from .errors import CapacityError, DomainError

DEFAULT_MAX_N = 20
MAX_N_ENV = "GOR_MAX_N"

RatioKind = Literal["basic", "group", "inverse"]


def max_materialized_n() -> int:
    """Largest N for which 2^N items may be built in memory at once.

    Overridable with the ``GOR_MAX_N`` environment variable.
    """
    raw = os.environ.get(MAX_N_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_N
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"{MAX_N_ENV}={raw!r} is not an integer") from None
    if value < 1:
        raise DomainError(f"{MAX_N_ENV} must be >= 1, got {value}")
    return value


def check_capacity(n_vars: int, what: str = "events") -> None:
    cap = max_materialized_n()
    if n_vars > cap:
        raise CapacityError(
            f"N={n_vars} exceeds the materialization cap N<={cap} "
            f"(2^{n_vars} {what}); use the streaming variant or raise {MAX_N_ENV}"
        )


def _check_n(n_vars) -> None:
    if isinstance(n_vars, bool) or not isinstance(n_vars, (int, np.integer)) or n_vars < 1:
        raise DomainError(f"n_vars must be a positive integer, got {n_vars!r}")


@dataclass(frozen=True, slots=True)
class Event:
    """One realization of all N binary variables, identified by its number."""

    n_vars: int
    number: int
    bits: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _check_n(self.n_vars)
        top = (1 << self.n_vars) - 1
        if not 0 <= self.number <= top:
            raise DomainError(
                f"event number {self.number} out of range 0..{top} for N={self.n_vars}"
            )
        n = self.n_vars
        object.__setattr__(
            self, "bits", tuple((self.number >> (n - 1 - i)) & 1 for i in range(n))
        )

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "Event":
        if len(bits) == 0:
            raise DomainError("an event needs at least one variable")
        number = 0
        for b in bits:
            if b not in (0, 1):
                raise DomainError(f"event states must be 0 or 1, got {b!r}")
            number = (number << 1) | int(b)
        return cls(len(bits), number)

    @property
    def name(self) -> str:
        return f"E_{self.number}"

    @property
    def binary(self) -> str:
        return format(self.number, f"0{self.n_vars}b")

    def braces(self) -> str:
        """Render as ``{0,1,0}``."""
        return "{" + ",".join(str(b) for b in self.bits) + "}"

    def __str__(self):
        return f"{self.name}={self.braces()}"


@dataclass(frozen=True, slots=True)
class Coefficients:
    """Logit parameters: intercept (log-odds at the all-zeros event) and slopes."""

    intercept: float
    betas: tuple

    def __post_init__(self):
        betas = tuple(float(b) for b in self.betas)
        if not betas:
            raise DomainError("at least one slope coefficient is required")
        intercept = float(self.intercept)
        for value in (intercept, *betas):
            if not math.isfinite(value):
                raise DomainError(f"coefficients must be finite, got {value!r}")
        object.__setattr__(self, "betas", betas)
        object.__setattr__(self, "intercept", intercept)

    @property
    def n_vars(self) -> int:
        return len(self.betas)

    def beta(self, var_index: int) -> float:
        """Slope of ``x<var_index>`` (1-based)."""
        if not 1 <= var_index <= self.n_vars:
            raise DomainError(f"variable index {var_index} out of range 1..{self.n_vars}")
        return self.betas[var_index - 1]

    def shifted(self, delta: float) -> "Coefficients":
        return Coefficients(self.intercept + delta, self.betas)

    @classmethod
    def parse(cls, text: str) -> "Coefficients":
        """Parse ``"b0,b1,...,bN"``."""
        parts = [p.strip() for p in text.split(",")]
        try:
            values = [float(p) for p in parts]
        except ValueError:
            raise DomainError(f"cannot parse coefficients {text!r}") from None
        if len(values) < 2:
            raise DomainError("expected 'b0,b1,...,bN' with N >= 1")
        return cls(values[0], tuple(values[1:]))


@dataclass(frozen=True, slots=True)
class SubsetSpec:
    """A subset of the variables; numbered like the indicator event it maps to."""

    n_vars: int
    members: tuple
    number: int = field(init=False, compare=False)

    def __post_init__(self):
        _check_n(self.n_vars)
        members = tuple(int(m) for m in self.members)
        if len(set(members)) != len(members):
            raise DomainError(f"duplicate variable in subset {members}")
        for m in members:
            if not 1 <= m <= self.n_vars:
                raise DomainError(f"variable index {m} out of range 1..{self.n_vars}")
        members = tuple(sorted(members))
        number = 0
        for m in members:
            number |= 1 << (self.n_vars - m)
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "number", number)

    @classmethod
    def from_number(cls, n_vars: int, number: int) -> "SubsetSpec":
        ev = Event(n_vars, number)
        return cls(n_vars, tuple(i + 1 for i, b in enumerate(ev.bits) if b))

    @property
    def indicator(self) -> Event:
        return Event(self.n_vars, self.number)

    @property
    def name(self) -> str:
        return f"S_{self.number}"

    def __len__(self):
        return len(self.members)

    def braces(self) -> str:
        """Render as ``{x1,x3}`` (``{}`` for the empty set)."""
        return "{" + ",".join(f"x{m}" for m in self.members) + "}"

    def symbolic(self) -> str:
        """Exponent as a sum of slope names, e.g. ``b1+b3``."""
        return "+".join(f"b{m}" for m in self.members)

    def __str__(self):
        return f"{self.name}={self.braces()}"


@dataclass(frozen=True, slots=True)
class OddsRatioRecord:
    subset: SubsetSpec
    reference: Event
    target: Event
    exponent: float
    value: float
    kind: RatioKind

    def __post_init__(self):
        if self.kind not in ("basic", "group", "inverse"):
            raise DomainError(f"unknown ratio kind {self.kind!r}")
        if self.kind == "basic" and len(self.subset.members) != 1:
            raise DomainError("a basic odds ratio involves exactly one variable")
        if not self.value > 0:
            raise DomainError(f"odds ratio must be positive, got {self.value!r}")

    @property
    def symbolic(self) -> str:
        s = self.subset.symbolic()
        return f"-({s})" if self.kind == "inverse" else s

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "subset": self.subset.name,
            "members": list(self.subset.members),
            "reference": self.reference.number,
            "target": self.target.number,
            "reference_bits": list(self.reference.bits),
            "target_bits": list(self.target.bits),
            "exponent_symbolic": self.symbolic,
            "exponent": self.exponent,
            "value": self.value,
        }


@dataclass(frozen=True, eq=False)
class Dataset:
    """A (0,1)-coded observation table.

    ``x`` is an ``(n_rows, n_vars)`` uint8 array and ``y`` an ``(n_rows,)``
    uint8 array. ``weights`` holds positive per-row counts for grouped data.
    Arrays are made read-only on construction.
    """

    var_names: tuple
    response_name: str
    x: np.ndarray
    y: np.ndarray
    weights: Optional[np.ndarray] = None
    weight_name: Optional[str] = None

    def __post_init__(self):
        x = np.array(self.x, dtype=float, copy=True)
        y = np.array(self.y, dtype=float, copy=True).reshape(-1)
        if x.ndim != 2:
            raise DomainError("x must be a 2-D array")
        if x.shape[0] != y.shape[0]:
            raise DomainError(f"x has {x.shape[0]} rows but y has {y.shape[0]}")
        if x.shape[1] != len(self.var_names) or x.shape[1] < 1:
            raise DomainError("one variable name per explanatory column is required")
        if not (np.isin(x, (0, 1)).all() and np.isin(y, (0, 1)).all()):
            raise DomainError("every x and y value must be exactly 0 or 1")
        x = x.astype(np.uint8)
        y = y.astype(np.uint8)
        x.flags.writeable = False
        y.flags.writeable = False
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "var_names", tuple(self.var_names))
        if self.weights is not None:
            w = np.array(self.weights, dtype=float, copy=True).reshape(-1)
            if w.shape != y.shape:
                raise DomainError("one weight per row is required")
            if not (np.isfinite(w).all() and (w > 0).all()):
                raise DomainError("weights must be positive and finite")
            w.flags.writeable = False
            object.__setattr__(self, "weights", w)

    @property
    def n_vars(self) -> int:
        return self.x.shape[1]

    @property
    def n_rows(self) -> int:
        return self.x.shape[0]

    def row_weights(self) -> np.ndarray:
        if self.weights is None:
            return np.ones(self.n_rows)
        return self.weights

    def expanded(self) -> "Dataset":
        """Unweighted copy with each row repeated ``weight`` times (integer weights)."""
        if self.weights is None:
            return self
        counts = np.rint(self.weights).astype(int)
        if not np.allclose(counts, self.weights):
            raise DomainError("only integer weights can be expanded")
        return Dataset(
            self.var_names,
            self.response_name,
            np.repeat(self.x, counts, axis=0),
            np.repeat(self.y, counts),
        )

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented
        same_w = (self.weights is None and other.weights is None) or (
            self.weights is not None
            and other.weights is not None
            and np.array_equal(self.weights, other.weights)
        )
        return (
            self.var_names == other.var_names
            and self.response_name == other.response_name
            and self.weight_name == other.weight_name
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.y, other.y)
            and same_w
        )

    __hash__ = None
