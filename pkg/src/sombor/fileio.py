"""Edge-list files and CSV / JSON report emission.

Edge-list grammar (one record per line, surrounding whitespace ignored)::

    # comment            lines starting with '#' and blank lines are skipped
    n <vertex_count>     optional; must be the first non-comment line
    <u> <v>              one edge, 0-based integer ids

Without an ``n`` line the vertex count is ``max id + 1``.

Floats in every report are written with 17 significant digits, which
round-trips a double exactly; keys and columns are emitted in a fixed order
so identical inputs give byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Iterable, Sequence, TextIO

from .bounds import BoundReport
from .closed_forms import CellSummary, GridReading, TableRow, VerifyCell
from .graph import Graph, GraphError, make_graph


class ParseError(GraphError):
    code = "parse"


def fmt(x: Any) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite value {x!r} in report")
        return format(x, ".17g")
    if x is None:
        return ""
    return str(x)


def parse_edge_list(text: str) -> Graph:
    vertex_count = None
    edges = []
    seen_record = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "n":
            if seen_record or len(parts) != 2:
                raise ParseError(f"line {lineno}: 'n <count>' must be the first record")
            vertex_count = _int(parts[1], lineno)
            seen_record = True
            continue
        seen_record = True
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {line!r}")
        edges.append((_int(parts[0], lineno), _int(parts[1], lineno)))
    if vertex_count is None:
        vertex_count = max((max(e) for e in edges), default=-1) + 1
    return make_graph(vertex_count, edges)


def _int(tok: str, lineno: int) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(f"line {lineno}: {tok!r} is not an integer") from None
    if v < 0:
        raise ParseError(f"line {lineno}: negative id {v}")
    return v


def serialize_edge_list(g: Graph, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"n {g.vertex_count}")
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def read_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def graph_json(g: Graph) -> str:
    return to_json({"n": g.vertex_count, "edges": [list(e) for e in g.edges]}) + "\n"


def to_json(obj: Any, indent: int | None = None, _level: int = 0) -> str:
    """JSON with fixed float formatting (``json`` itself uses shortest repr)."""
    pad = "" if indent is None else "\n" + " " * (indent * (_level + 1))
    end = "" if indent is None else "\n" + " " * (indent * _level)
    sep = ", " if indent is None else ","
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {to_json(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{" + sep.join(items) + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + to_json(v, indent, _level + 1) for v in obj]
        return "[" + sep.join(items) + end + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return fmt(obj)
    if isinstance(obj, int):
        return str(obj)
    return json.dumps(str(obj))


def write_csv(rows: Iterable[Sequence[Any]], header: Sequence[str], out: TextIO) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(x) for x in row])


def csv_text(rows: Iterable[Sequence[Any]], header: Sequence[str]) -> str:
    buf = io.StringIO()
    write_csv(rows, header, buf)
    return buf.getvalue()


# --- verification reports ----------------------------------------------------

VERIFY_COLUMNS = ("family", "index", "m", "n", "engine", "formula", "rel_diff", "verdict")


def verify_row(v: VerifyCell) -> list[Any]:
    return [v.family, v.index, v.params.get("m"), v.params.get("n"),
            v.engine_value, v.formula_value, v.rel_diff, v.verdict]


def verify_dict(v: VerifyCell) -> dict[str, Any]:
    return {
        "family": v.family,
        "index": v.index,
        "group": v.cell.group,
        "source": v.cell.source,
        "params": dict(v.params),
        "engine": v.engine_value,
        "formula": v.formula_value,
        "rel_diff": v.rel_diff,
        "verdict": v.verdict,
    }


def verify_report(results: Sequence[VerifyCell], fmt_: str) -> str:
    if fmt_ == "csv":
        return csv_text((verify_row(v) for v in results), VERIFY_COLUMNS)
    return to_json([verify_dict(v) for v in results], indent=1) + "\n"


SUMMARY_COLUMNS = ("group", "family", "index", "checked", "matched", "outcome")


def summary_report(summaries: Sequence[CellSummary]) -> str:
    return csv_text(
        ([s.cell.group, s.cell.family, s.cell.index.value, s.checked, s.matched, s.outcome] for s in summaries),
        SUMMARY_COLUMNS,
    )


# --- bound reports -----------------------------------------------------------

BOUND_COLUMNS = ("bound", "instance", "lhs", "rhs", "slack", "verdict", "preconditions_met")


def bound_row(r: BoundReport) -> list[Any]:
    return [r.bound.value, r.instance.get("label", ""), r.lhs, r.rhs, r.slack, r.verdict, r.preconditions_met]


def bound_jsonl(reports: Iterable[BoundReport]) -> str:
    return "".join(to_json(r.to_dict()) + "\n" for r in reports)


def bound_csv(reports: Iterable[BoundReport]) -> str:
    return csv_text((bound_row(r) for r in reports), BOUND_COLUMNS)


FUZZ_SUMMARY_COLUMNS = ("bound", "evaluated", "holds", "tight", "violated", "skipped")


def fuzz_summary_csv(summary: dict[str, Any]) -> str:
    return csv_text(
        ([b] + [c[k] for k in FUZZ_SUMMARY_COLUMNS[1:]] for b, c in summary.items()),
        FUZZ_SUMMARY_COLUMNS,
    )


# --- table analogues ---------------------------------------------------------


def table_header(rows: Sequence[TableRow], readings: dict | None = None) -> list[str]:
    header = ["family", "symbol", "m", "n"]
    if rows:
        for v in rows[0].cells:
            header += [f"{v.index}_engine", f"{v.index}_formula", f"{v.index}_verdict"]
            if readings is not None:
                header += [f"{v.index}_proof_counts", f"{v.index}_proof_verdict"]
    return header


def table_records(rows: Sequence[TableRow], readings: dict | None = None) -> list[list[Any]]:
    """Flatten table rows; ``readings`` maps ``(m, n)`` to grid readings to append."""
    out = []
    for r in rows:
        rec: list[Any] = [r.family, r.symbol, r.params.get("m"), r.params.get("n")]
        alt = {} if readings is None else {g.index: g for g in readings[(r.params["m"], r.params["n"])]}
        for v in r.cells:
            rec += [v.engine_value, v.formula_value, v.verdict]
            if readings is not None:
                g: GridReading = alt[v.index]
                rec += [g.proof_reading, g.proof_verdict]
        out.append(rec)
    return out


def table_report(rows: Sequence[TableRow], fmt_: str, readings: dict | None = None) -> str:
    header = table_header(rows, readings)
    records = table_records(rows, readings)
    if fmt_ == "csv":
        return csv_text(records, header)
    objs = [{k: v for k, v in zip(header, rec) if v is not None} for rec in records]
    return to_json(objs, indent=1) + "\n"
