"""Event enumeration and the subset <-> target-event correspondence."""
from __future__ import annotations

from typing import Iterator

from .errors import DomainError
from .model import Event, SubsetSpec, check_capacity


def event_from_number(n_vars: int, nu: int) -> Event:
    return Event(n_vars, nu)


def iter_events(n_vars: int, start: int = 0, stop: int | None = None) -> Iterator[Event]:
    """Yield events lazily in increasing number order; no size cap."""
    top = 1 << n_vars
    stop = top if stop is None else min(stop, top)
    for nu in range(start, stop):
        yield Event(n_vars, nu)


def enumerate_events(n_vars: int) -> list[Event]:
    """All 2^N events, E_0 first.

    Raises CapacityError above the materialization cap; use
    :func:`iter_events` for larger N.
    """
    check_capacity(n_vars, "events")
    return list(iter_events(n_vars))


def all_zeros(n_vars: int) -> Event:
    return Event(n_vars, 0)


def all_ones(n_vars: int) -> Event:
    return Event(n_vars, (1 << n_vars) - 1)


def subset_from_event(target: Event) -> SubsetSpec:
    """Variables in state 1 in ``target`` (componentwise product with X, zeros dropped)."""
    return SubsetSpec(
        target.n_vars, tuple(i + 1 for i, b in enumerate(target.bits) if b == 1)
    )


def indicator_event(subset: SubsetSpec) -> Event:
    return subset.indicator


def event_for_single_variable(n_vars: int, var_index: int) -> Event:
    """The event with only ``x<var_index>`` in state 1, i.e. E_{2^(N-n)}."""
    if not 1 <= var_index <= n_vars:
        raise DomainError(f"variable index {var_index} out of range 1..{n_vars}")
    return Event(n_vars, 1 << (n_vars - var_index))


def _deposit(value: int, positions: list[int]) -> int:
    # Scatter the low bits of `value` into `positions` (LSB-first list).
    out = 0
    for i, pos in enumerate(positions):
        if (value >> i) & 1:
            out |= 1 << pos
    return out


def iter_reference_target_pairs(subset: SubsetSpec) -> Iterator[tuple[Event, Event]]:
    if not subset.members:
        raise DomainError("the empty subset has no reference/target pairs")
    n = subset.n_vars
    mask = subset.number
    free = [pos for pos in range(n) if not (mask >> pos) & 1]
    # _deposit is monotone in its argument, so references come out in increasing order.
    for m in range(1 << len(free)):
        ref = _deposit(m, free)
        yield Event(n, ref), Event(n, ref | mask)


def reference_target_pairs(subset: SubsetSpec) -> list[tuple[Event, Event]]:
    """Every (E_r, E_t) pair whose only difference is ``subset`` going 0 -> 1.

    There are 2^(N - |S|) of them, ordered by reference number so the pair
    anchored at the all-zeros event always comes first.
    """
    check_capacity(subset.n_vars - len(subset.members), "reference/target pairs")
    return list(iter_reference_target_pairs(subset))
