"""Deterministic CSV/JSON serialisation of experiment rows."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np


@dataclass
class ExperimentReport:
    name: str
    fields: list[str]
    rows: list[dict[str, Any]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def add(self, **row):
        unknown = set(row) - set(self.fields)
        if unknown:
            raise KeyError(f"unknown report fields {sorted(unknown)}")
        self.rows.append({k: row.get(k) for k in self.fields})

    def column(self, name: str) -> list:
        return [r[name] for r in self.rows]

    def check(self, ok: bool, message: str):
        if not ok:
            self.failures.append(message)


def _plain(value):
    """Python scalar with floats kept at full round-trip precision."""
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        v = float(value)
        return None if math.isnan(v) else v
    return value


def _csv_cell(value) -> str:
    value = _plain(value)
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)  # shortest round-trip decimal
    return str(value)


def to_csv(report: ExperimentReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(report.fields)
    for row in report.rows:
        writer.writerow([_csv_cell(row[k]) for k in report.fields])
    return buf.getvalue()


def to_json(report: ExperimentReport) -> str:
    rows = [{k: _plain(row[k]) for k in report.fields} for row in report.rows]
    return json.dumps(rows, indent=1, allow_nan=False) + "\n"


def render(report: ExperimentReport, fmt: str) -> str:
    if fmt == "csv":
        return to_csv(report)
    if fmt == "json":
        return to_json(report)
    raise ValueError(f"unknown format {fmt!r}")


def parse_csv(text: str) -> list[dict[str, Any]]:
    """Read back a CSV report, restoring numbers, booleans and blanks."""

    def conv(s: str):
        if s == "":
            return None
        if s in ("true", "false"):
            return s == "true"
        try:
            return int(s)
        except ValueError:
            pass
        try:
            return float(s)
        except ValueError:
            return s

    reader = csv.DictReader(io.StringIO(text))
    return [{k: conv(v) for k, v in row.items()} for row in reader]
