import math

import numpy as np
import pytest

from groupodds import (
    Coefficients,
    DegenerateResponseError,
    DomainError,
    SchemaError,
    ValidationError,
    fit_logit,
    generate_synthetic,
    load_csv,
    write_csv,
)


@pytest.fixture
def write(tmp_path):
    def _write(text, name="d.csv"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path
    return _write


def test_load_basic(write):
    rows = "\n".join(f"{a},{b},{c},{(a + b + c) % 2}" for a in (0, 1) for b in (0, 1) for c in (0, 1))
    d = load_csv(write("x1,x2,x3,y\n" + rows + "\n"), "y")
    assert d.n_vars == 3 and d.n_rows == 8
    assert d.var_names == ("x1", "x2", "x3")
    assert d.x[5].tolist() == [1, 0, 1]


def test_response_column_anywhere(write):
    d = load_csv(write("y,b,a\n1,0,1\n0,1,1\n"), "y")
    assert d.var_names == ("b", "a")
    assert d.y.tolist() == [1, 0]


@pytest.mark.parametrize("cell", ["2", "1.0", " 1", "", "yes", "-0"])
def test_non_binary_cell(write, cell):
    with pytest.raises(ValidationError) as exc:
        load_csv(write(f"a,b,y\n0,1,1\n1,{cell},0\n"), "y")
    assert exc.value.row == 3 and exc.value.column == "b"
    assert "row 3" in str(exc.value) and "'b'" in str(exc.value)


def test_non_binary_response(write):
    with pytest.raises(ValidationError) as exc:
        load_csv(write("a,y\n0,1\n1,2\n"), "y")
    assert (exc.value.row, exc.value.column) == (3, "y")


@pytest.mark.parametrize("text, match", [
    ("", "empty"),
    ("a,y\n", "no data"),
    ("a,b\n0,1\n", "response column"),
    ("y\n0\n1\n", "no explanatory"),
    ("a,y\n0,1,1\n", "cells"),
])
def test_schema_errors(write, text, match):
    with pytest.raises(SchemaError, match=match):
        load_csv(write(text), "y")


def test_degenerate_response(write):
    with pytest.raises(DegenerateResponseError):
        load_csv(write("a,y\n0,1\n1,1\n"), "y")


def test_weights(write):
    d = load_csv(write("x1,y,count\n1,1,30\n1,0,20\n0,1,10\n0,0,40\n"), "y", "count")
    assert d.weights.tolist() == [30, 20, 10, 40]
    assert d.expanded().n_rows == 100
    r = fit_logit(d)
    assert r.coefficients.betas[0] == pytest.approx(math.log(6), abs=1e-8)
    with pytest.raises(ValidationError, match="weight"):
        load_csv(write("x1,y,count\n1,1,0\n0,0,1\n"), "y", "count")
    with pytest.raises(SchemaError):
        load_csv(write("x1,y\n1,1\n0,0\n"), "y", "count")


def test_generate_deterministic_and_roundtrip(tmp_path):
    c = Coefficients(-0.3, (0.5, -0.8, 1.2))
    a = generate_synthetic(c, 500, seed=7)
    b = generate_synthetic(c, 500, seed=7)
    assert a == b
    assert a != generate_synthetic(c, 500, seed=8)
    write_csv(a, tmp_path / "a.csv")
    write_csv(b, tmp_path / "b.csv")
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    assert load_csv(tmp_path / "a.csv", "y") == a


def test_generate_bernoulli_design():
    d = generate_synthetic(Coefficients(0.0, (0.0, 0.0)), 20000, seed=1, design="iid-bernoulli", p_x=0.2)
    assert d.x.mean() == pytest.approx(0.2, abs=0.01)


def test_generate_zero_model():
    d = generate_synthetic(Coefficients(0.0, (0.0, 0.0, 0.0)), 40000, seed=2)
    assert d.y.mean() == pytest.approx(0.5, abs=0.01)
    # uniform events: every event equally likely
    nums = d.x @ np.array([4, 2, 1])
    assert np.bincount(nums, minlength=8) / len(nums) == pytest.approx(np.full(8, 1 / 8), abs=0.01)


def test_generate_cross_product_ratio():
    d = generate_synthetic(Coefficients(math.log(0.25), (math.log(6),)), 100000, seed=3)
    x, y = d.x[:, 0], d.y
    n11 = np.sum((x == 1) & (y == 1))
    n10 = np.sum((x == 1) & (y == 0))
    n01 = np.sum((x == 0) & (y == 1))
    n00 = np.sum((x == 0) & (y == 0))
    assert (n11 * n00) / (n10 * n01) == pytest.approx(6.0, rel=0.1)


def test_generate_single_row_and_bad_args():
    d = generate_synthetic(Coefficients(0.0, (0.1,)), 1, seed=0)
    assert d.n_rows == 1
    with pytest.raises(DomainError):
        generate_synthetic(Coefficients(0.0, (0.1,)), 0, seed=0)
    with pytest.raises(DomainError):
        generate_synthetic(Coefficients(0.0, (0.1,)), 5, seed=0, design="gaussian")
