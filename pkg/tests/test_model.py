import math

import numpy as np
import pytest

from groupodds import Coefficients, Dataset, DomainError, Event, OddsRatioRecord, SubsetSpec
from groupodds.model import max_materialized_n


def test_event_invariants():
    ev = Event(4, 9)
    assert ev.bits == (1, 0, 0, 1)
    assert ev.binary == "1001"
    assert ev.name == "E_9"
    assert str(ev) == "E_9={1,0,0,1}"
    with pytest.raises(Exception):
        ev.number = 3


@pytest.mark.parametrize("bad", [(0, 2), (), (1, -1)])
def test_event_from_bad_bits(bad):
    with pytest.raises(DomainError):
        Event.from_bits(bad)


def test_coefficients_validation():
    c = Coefficients(1, [2, 3])
    assert c.betas == (2.0, 3.0) and c.n_vars == 2
    assert c.beta(2) == 3.0
    with pytest.raises(DomainError):
        Coefficients(math.nan, (1.0,))
    with pytest.raises(DomainError):
        Coefficients(0.0, (math.inf,))
    with pytest.raises(DomainError):
        Coefficients(0.0, ())
    with pytest.raises(DomainError):
        c.beta(3)


def test_coefficients_parse():
    c = Coefficients.parse("0.5, 1, -2")
    assert c == Coefficients(0.5, (1.0, -2.0))
    for bad in ("1", "a,b", ""):
        with pytest.raises(DomainError):
            Coefficients.parse(bad)


def test_subset_spec():
    s = SubsetSpec(3, (3, 1))
    assert s.members == (1, 3)
    assert s.number == 5
    assert s.symbolic() == "b1+b3"
    assert str(s) == "S_5={x1,x3}"
    assert SubsetSpec(3, ()).number == 0
    with pytest.raises(DomainError):
        SubsetSpec(3, (1, 1))
    with pytest.raises(DomainError):
        SubsetSpec(3, (4,))


def test_record_invariants():
    s = SubsetSpec(2, (1, 2))
    ok = OddsRatioRecord(s, Event(2, 0), Event(2, 3), 0.0, 1.0, "group")
    assert ok.symbolic == "b1+b2"
    with pytest.raises(DomainError):
        OddsRatioRecord(s, Event(2, 0), Event(2, 3), 0.0, 1.0, "basic")
    with pytest.raises(DomainError):
        OddsRatioRecord(s, Event(2, 0), Event(2, 3), 0.0, 0.0, "group")


def test_dataset_validation():
    d = Dataset(("a", "b"), "y", [[0, 1], [1, 1]], [0, 1])
    assert d.n_vars == 2 and d.n_rows == 2
    assert not d.x.flags.writeable
    with pytest.raises(DomainError):
        Dataset(("a",), "y", [[2]], [0])
    with pytest.raises(DomainError):
        Dataset(("a",), "y", [[0]], [0.5])
    with pytest.raises(DomainError):
        Dataset(("a",), "y", [[0], [1]], [0, 1], weights=[1, 0])


def test_dataset_expansion_and_equality():
    d = Dataset(("a",), "y", [[0], [1]], [1, 0], weights=[2, 3])
    e = d.expanded()
    assert e.n_rows == 5 and e.weights is None
    assert np.array_equal(e.y, [1, 1, 0, 0, 0])
    assert d == Dataset(("a",), "y", [[0], [1]], [1, 0], weights=[2, 3])
    assert d != e


def test_cap_env(monkeypatch):
    monkeypatch.delenv("GOR_MAX_N", raising=False)
    assert max_materialized_n() == 20
    monkeypatch.setenv("GOR_MAX_N", "24")
    assert max_materialized_n() == 24
    monkeypatch.setenv("GOR_MAX_N", "many")
    with pytest.raises(DomainError):
        max_materialized_n()
