"""Text table, CSV and JSON rendering of events, ratios and summaries.

Tables show 6 significant digits; CSV and JSON carry full float precision
(``repr``), so machine output round-trips exactly.
"""
from __future__ import annotations

import csv
import json
from typing import Iterable, Iterator, TextIO

from .model import Event, OddsRatioRecord, SubsetSpec
from .ratios import EnsembleSummary, SummaryBuilder, ensemble_summary

FORMATS = ("table", "csv", "json")


def sig6(value: float) -> str:
    return f"{value:#.6g}"


def _table(header: list[str], rows: Iterable[list[str]], widths: list[int]) -> Iterator[str]:
    widths = [max(w, len(h)) for w, h in zip(widths, header)]
    yield "  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()
    for row in rows:
        yield "  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip()


# -- events ---------------------------------------------------------------------


def event_row(ev: Event) -> dict:
    return {"name": ev.name, "number": ev.number, "binary": ev.binary, "bits": list(ev.bits)}


def render_events(events: Iterable[Event], n_vars: int, fmt: str, out: TextIO) -> None:
    if fmt == "json":
        json.dump([event_row(ev) for ev in events], out)
        out.write("\n")
        return
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["event", "number", "binary", "bits"])
        for ev in events:
            w.writerow([ev.name, ev.number, ev.binary, ev.braces()])
        return
    top = (1 << n_vars) - 1
    vars_label = "{" + ",".join(f"x{i}" for i in range(1, n_vars + 1)) + "}"
    widths = [len(f"E_{top}"), len(str(top)), n_vars, 2 * n_vars + 1]
    rows = ([ev.name, str(ev.number), ev.binary, ev.braces()] for ev in events)
    for line in _table(["Event", "Number", "Binary", vars_label], rows, widths):
        out.write(line + "\n")


# -- ratios ---------------------------------------------------------------------

RATIO_COLUMNS = ["kind", "reference", "target", "subset", "exponent", "value"]
CSV_COLUMNS = [
    "kind", "reference", "target", "reference_bits", "target_bits",
    "subset", "members", "exponent_symbolic", "exponent", "value",
]


def _ratio_cells(rec: OddsRatioRecord) -> list[str]:
    return [rec.kind, str(rec.reference), str(rec.target), str(rec.subset), rec.symbolic, sig6(rec.value)]


def _ratio_widths(n_vars: int) -> list[int]:
    top = Event(n_vars, (1 << n_vars) - 1)
    full = SubsetSpec(n_vars, tuple(range(1, n_vars + 1)))
    return [7, len(str(top)), len(str(top)), len(str(full)), len(full.symbolic()) + 3, 11]


def _summary_lines(s: EnsembleSummary) -> list[str]:
    return [
        f"ratios: {s.count}",
        f"min: {sig6(s.min_value)} at {s.argmin}",
        f"max: {sig6(s.max_value)} at {s.argmax}",
        f"geometric mean: {sig6(s.geometric_mean)}",
        f">1: {s.n_above}  =1: {s.n_equal}  <1: {s.n_below}",
    ]


def _tapped(records, acc):
    for rec in records:
        if acc is not None:
            acc.add(rec)
        yield rec


def render_ratios(
    records: Iterable[OddsRatioRecord],
    n_vars: int,
    fmt: str,
    out: TextIO,
    var_names=None,
    summary: bool = True,
    stream: bool = False,
) -> EnsembleSummary | None:
    """Write ``records`` in ``fmt``; return the summary if one was requested.

    With ``stream=True`` records are written as they are produced (JSON
    becomes one object per line) and never held in memory together.
    """
    summ = None
    if fmt == "json" and not stream:
        records = list(records)
        doc = {
            "n_vars": n_vars,
            "var_names": list(var_names) if var_names else None,
            "records": [r.as_dict() for r in records],
        }
        if summary:
            summ = ensemble_summary(records)
            doc["summary"] = summ.as_dict()
        json.dump(doc, out)
        out.write("\n")
        return summ

    acc = SummaryBuilder() if summary else None
    stream_of = _tapped(records, acc)
    if fmt == "json":
        for rec in stream_of:
            out.write(json.dumps(rec.as_dict()) + "\n")
        if acc:
            summ = acc.result()
            out.write(json.dumps({"summary": summ.as_dict()}) + "\n")
        return summ
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for rec in stream_of:
            w.writerow([
                rec.kind, rec.reference.number, rec.target.number,
                rec.reference.binary, rec.target.binary, rec.subset.name,
                " ".join(str(m) for m in rec.subset.members), rec.symbolic,
                repr(rec.exponent), repr(rec.value),
            ])
        return acc.result() if acc else None

    rows = (_ratio_cells(rec) for rec in stream_of)
    for line in _table(RATIO_COLUMNS, rows, _ratio_widths(n_vars)):
        out.write(line + "\n")
    if acc:
        summ = acc.result()
        out.write("\n")
        for line in _summary_lines(summ):
            out.write(line + "\n")
    return summ


def render_summary_text(s: EnsembleSummary) -> str:
    return "\n".join(_summary_lines(s)) + "\n"
