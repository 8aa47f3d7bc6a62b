# src/qslink/report.py
"""
CSV / JSON-lines writers and console tables.

Every table is a ``Table(header, rows)`` whose first column is the versioned
schema id. Floats are written with 12 significant digits so reruns are
byte-identical.
"""
import csv
import io
import json
import logging
import math
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, List, Optional, Sequence

from tabulate import tabulate

log = logging.getLogger("qslink.report")

FLOAT_DIGITS = 12


@dataclass
class Table:
    schema: str
    columns: List[str]
    rows: List[List[Any]] = field(default_factory=list)

    def add(self, *values):
        if len(values) != len(self.columns):
            raise ValueError(f"{self.schema}: expected {len(self.columns)} values, got {len(values)}")
        self.rows.append(list(values))

    def sort(self, *keys: str):
        idx = [self.columns.index(k) for k in keys]
        self.rows.sort(key=lambda row: tuple(row[i] for i in idx))
        return self

    @property
    def header(self) -> List[str]:
        return ["schema"] + self.columns

    def column(self, name: str) -> List[Any]:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]


def format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.{FLOAT_DIGITS}g}"
    if isinstance(value, (list, tuple)):
        return ";".join(format_value(v) for v in value)
    if hasattr(value, "item"):
        return format_value(value.item())
    return str(value)


def _json_value(value: Any) -> Any:
    if hasattr(value, "item"):
        value = value.item()
    if isinstance(value, float):
        return float(format_value(value)) if math.isfinite(value) else format_value(value)
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    return value


def render_csv(table: Table, timestamp: bool = True, now: Optional[datetime] = None) -> str:
    buf = io.StringIO()
    if timestamp:
        now = now or datetime.now(timezone.utc)
        buf.write(f"# generated {now.replace(microsecond=0).isoformat()}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.header)
    for row in table.rows:
        writer.writerow([table.schema] + [format_value(v) for v in row])
    return buf.getvalue()


def render_jsonl(table: Table) -> str:
    lines = []
    for row in table.rows:
        record = {"schema": table.schema}
        record.update({c: _json_value(v) for c, v in zip(table.columns, row)})
        lines.append(json.dumps(record, sort_keys=False))
    return "".join(line + "\n" for line in lines)


def write_table(table: Table, out: Optional[str], timestamp: bool = True, jsonl: bool = False) -> Optional[Path]:
    """Write ``table`` as CSV to ``out`` (stdout for None or "-"), plus a .jsonl mirror when asked."""
    text = render_csv(table, timestamp=timestamp)
    if out in (None, "-"):
        sys.stdout.write(text)
        if jsonl:
            sys.stdout.write(render_jsonl(table))
        return None
    path = Path(out)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    if jsonl:
        path.with_suffix(".jsonl").write_text(render_jsonl(table), encoding="utf-8")
    log.info("[REPORT] wrote %d %s rows to %s", len(table.rows), table.schema, path)
    return path


def console_table(table: Table, columns: Optional[Sequence[str]] = None) -> str:
    """GitHub-style table of (a subset of) the columns, for terminal summaries."""
    columns = list(columns or table.columns)
    idx = [table.columns.index(c) for c in columns]
    body = [[format_value(row[i]) for i in idx] for row in table.rows]
    return tabulate(body, headers=columns, tablefmt="github")
