"""Byte-stable emission of labelled exact tables in json, csv, md and plain text."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

FORMATS = ("json", "csv", "md", "plain")


def q(x: Any) -> str:
    """Exact rational as ``"p/q"`` (or an integer string); anything else via ``str``."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if x is None:
        return ""
    return str(x)


@dataclass
class GoldenTable:
    name: str
    columns: Sequence[str]
    rows: list[list[Any]] = field(default_factory=list)

    def add(self, *cells: Any) -> None:
        if len(cells) != len(self.columns):
            raise ValueError(f"row has {len(cells)} cells, table {self.name!r} has {len(self.columns)} columns")
        self.rows.append(list(cells))

    def cells(self) -> list[list[str]]:
        return [[q(c) for c in row] for row in self.rows]

    def to_json_obj(self) -> dict:
        return {"table": self.name,
                "rows": [dict(zip(self.columns, row)) for row in self.cells()]}

    def emit(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.to_json_obj(), ensure_ascii=False, sort_keys=False) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.columns)
            w.writerows(self.cells())
            return buf.getvalue()
        if fmt == "md":
            head = "| " + " | ".join(self.columns) + " |"
            rule = "|" + "|".join("---" for _ in self.columns) + "|"
            body = ["| " + " | ".join(row) + " |" for row in self.cells()]
            return "\n".join([head, rule, *body]) + "\n"
        if fmt == "plain":
            cells = [list(self.columns), *self.cells()]
            widths = [max(len(r[i]) for r in cells) for i in range(len(self.columns))]
            lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
            return "\n".join(lines) + "\n"
        raise ValueError(f"unknown format {fmt!r}")
