"""CSV ingestion with (0,1) validation, and seeded synthetic datasets.

CSV dialect: comma separated, UTF-8, header row first. Column order gives
the variable order x1..xN. Explanatory and response cells must be the
literal text ``0`` or ``1``; weight cells must be positive numbers.

Synthetic data uses numpy's PCG64 generator (``numpy.random.default_rng``)
seeded with the caller's integer seed.
"""
from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import Literal

import numpy as np

from .errors import DegenerateResponseError, DomainError, SchemaError, ValidationError
from .model import Coefficients, Dataset, Event
from .odds import probability_of_event

Design = Literal["uniform-events", "iid-bernoulli"]
DESIGNS = ("uniform-events", "iid-bernoulli")

_BINARY = {"0": 0, "1": 1}


def load_csv(path, response_column: str, weight_column: str | None = None) -> Dataset:
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header:
            raise SchemaError(f"{path}: empty file (no header row)")
        header = [h.strip() for h in header]
        if len(set(header)) != len(header):
            raise SchemaError(f"{path}: duplicate column names in header {header}")
        if response_column not in header:
            raise SchemaError(f"{path}: response column {response_column!r} not found in {header}")
        if weight_column is not None and weight_column not in header:
            raise SchemaError(f"{path}: weight column {weight_column!r} not found in {header}")
        if weight_column == response_column:
            raise SchemaError("response and weight columns must differ")

        y_col = header.index(response_column)
        w_col = header.index(weight_column) if weight_column is not None else None
        x_cols = [j for j in range(len(header)) if j not in (y_col, w_col)]
        if not x_cols:
            raise SchemaError(f"{path}: no explanatory columns")

        xs, ys, ws = [], [], []
        # line 1 is the header
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise SchemaError(
                    f"{path}: row {line_no} has {len(row)} cells, header has {len(header)}"
                )
            x = []
            for j in x_cols:
                x.append(_binary_cell(row[j], line_no, header[j]))
            xs.append(x)
            ys.append(_binary_cell(row[y_col], line_no, header[y_col]))
            if w_col is not None:
                ws.append(_weight_cell(row[w_col], line_no, header[w_col]))

    if not xs:
        raise SchemaError(f"{path}: no data rows")
    y = np.array(ys, dtype=np.uint8)
    w = np.array(ws) if w_col is not None else None
    ones = y.sum() if w is None else w[y == 1].sum()
    zeros = (len(y) - y.sum()) if w is None else w[y == 0].sum()
    if ones == 0 or zeros == 0:
        level = 1 if zeros == 0 else 0
        raise DegenerateResponseError(
            f"{path}: response {response_column!r} is {level} in every row"
        )
    return Dataset(
        var_names=tuple(header[j] for j in x_cols),
        response_name=response_column,
        x=np.array(xs, dtype=np.uint8),
        y=y,
        weights=w,
        weight_name=weight_column,
    )


def _binary_cell(text, row, column):
    try:
        return _BINARY[text]
    except KeyError:
        raise ValidationError(
            f"row {row}, column {column!r}: value {text!r} is not 0 or 1", row, column
        ) from None


def _weight_cell(text, row, column):
    try:
        value = float(text)
    except ValueError:
        value = math.nan
    if not (math.isfinite(value) and value > 0):
        raise ValidationError(
            f"row {row}, column {column!r}: weight {text!r} is not a positive number",
            row,
            column,
        )
    return value


def write_csv(data: Dataset, path) -> None:
    header = [*data.var_names, data.response_name]
    if data.weights is not None:
        header.append(data.weight_name or "count")
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for i in range(data.n_rows):
            row = [int(v) for v in data.x[i]] + [int(data.y[i])]
            if data.weights is not None:
                row.append(repr(float(data.weights[i])))
            writer.writerow(row)


def generate_synthetic(
    coeffs: Coefficients,
    n_rows: int,
    seed: int,
    design: Design = "uniform-events",
    p_x: float = 0.5,
    var_names=None,
    response_name: str = "y",
) -> Dataset:
    """Draw rows x from ``design`` and y ~ Bernoulli(P(y=1 | x)).

    ``uniform-events`` picks each row's event uniformly from all 2^N;
    ``iid-bernoulli`` sets every variable to 1 independently with
    probability ``p_x``. Output is a pure function of the arguments.
    """
    if n_rows < 1:
        raise DomainError(f"n_rows must be >= 1, got {n_rows}")
    if design not in DESIGNS:
        raise DomainError(f"unknown design {design!r}; choose from {DESIGNS}")
    if not 0.0 <= p_x <= 1.0:
        raise DomainError(f"p_x must lie in [0, 1], got {p_x}")
    n = coeffs.n_vars
    rng = np.random.default_rng(seed)

    if design == "uniform-events":
        if n > 62:
            raise DomainError("uniform-events design supports N <= 62")
        numbers = rng.integers(0, 1 << n, size=n_rows, dtype=np.int64)
        shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
        x = ((numbers[:, None] >> shifts) & 1).astype(np.uint8)
    else:
        x = (rng.random((n_rows, n)) < p_x).astype(np.uint8)

    # one probability per distinct event actually drawn
    patterns, inverse = np.unique(x, axis=0, return_inverse=True)
    probs = np.array([probability_of_event(coeffs, Event.from_bits(tuple(int(b) for b in p)))
                      for p in patterns])
    y = (rng.random(n_rows) < probs[inverse.reshape(-1)]).astype(np.uint8)

    names = tuple(var_names) if var_names is not None else tuple(f"x{i}" for i in range(1, n + 1))
    return Dataset(names, response_name, x, y)
