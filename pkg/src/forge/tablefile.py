"""Reading and writing table files.

Two formats, auto-detected by the first non-blank byte:

* JSON: ``{"order": n, "table": [n*n ints], "names": [n strings]}`` (names optional)
* text: first line ``n``, then ``n`` rows of ``n`` space-separated ints
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import MalformedTable
from .kernel import FiniteSemigroup, OpTable, validate_semigroup

__all__ = ["parse_table", "read_table", "format_table", "write_table"]


def parse_table(text: str) -> OpTable:
    stripped = text.lstrip()
    if not stripped:
        raise MalformedTable("empty table file")
    if stripped[0] == "{":
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise MalformedTable(f"bad JSON: {exc}") from None
        if "order" not in obj or "table" not in obj:
            raise MalformedTable("JSON table needs 'order' and 'table'")
        return OpTable.from_flat(int(obj["order"]), obj["table"], obj.get("names"))
    lines = [ln.split() for ln in stripped.splitlines() if ln.strip()]
    try:
        n = int(lines[0][0])
        rows = [[int(v) for v in ln] for ln in lines[1:]]
    except ValueError as exc:
        raise MalformedTable(f"bad text table: {exc}") from None
    if len(lines[0]) != 1 or len(rows) != n or any(len(r) != n for r in rows):
        raise MalformedTable(f"text table must be a line '{n}' followed by {n} rows of {n}")
    return OpTable.from_flat(n, [v for r in rows for v in r])


def read_table(path: str | Path) -> FiniteSemigroup:
    s = validate_semigroup(parse_table(Path(path).read_text()))
    s.label = Path(path).name
    return s


def format_table(s: FiniteSemigroup, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(s.to_dict())
    if fmt == "text":
        rows = [" ".join(map(str, r)) for r in s.table.tolist()]
        return "\n".join([str(s.order), *rows]) + "\n"
    raise ValueError(f"unknown table format {fmt!r}")


def write_table(s: FiniteSemigroup, path: str | Path, fmt: str = "json") -> None:
    Path(path).write_text(format_table(s, fmt))
