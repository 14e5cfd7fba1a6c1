"""Loader for the case tables shipped as condition-DSL data.

The default file is data/tables.json inside the package; the environment
variable ELUSIVE_DATA names a replacement file.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .conditions import ConditionError, CongruenceExpr, free_symbols, parse_arith, parse_condition
from .groups import FAMILIES

__all__ = ["DATA_ENV", "SYMBOLS", "TableDataError", "CaseEntry", "RowEntry", "Tables",
           "load_tables", "data_path"]

DATA_ENV = "ELUSIVE_DATA"
SYMBOLS = frozenset({"p", "f", "q", "e", "n", "d", "q0"})
SOURCES = frozenset({1, 2, 3, 4, 6})


class TableDataError(ValueError):
    def __init__(self, row_id: str, message: str):
        super().__init__(f"{row_id}: {message}")
        self.row_id = row_id


@dataclass(frozen=True)
class CaseEntry:
    case: str
    source: int
    T: tuple  # of (family, n or None, when-condition or None)
    field: str  # "p" (prime field only) or "q"
    S: str
    exists: CongruenceExpr

    def to_dict(self) -> dict:
        alts = []
        for fam, n, when in self.T:
            alt = {"family": fam}
            if n is not None:
                alt["n"] = n
            if when is not None:
                alt["when"] = when.source
            alts.append(alt)
        return {"case": self.case, "source": self.source, "T": alts, "field": self.field,
                "S": self.S, "exists": self.exists.source}


@dataclass(frozen=True)
class RowEntry:
    case: str
    r: int
    condition: CongruenceExpr
    source: int
    family: str | None = None  # restricts the generic A rows of the r in {2,3} table

    @property
    def row_id(self) -> str:
        fam = f"[{self.family}]" if self.family else ""
        return f"T{self.source}:{self.case}{fam}/r={self.r}"

    def to_dict(self) -> dict:
        out = {"case": self.case, "r": self.r, "condition": self.condition.source,
               "source": self.source}
        if self.family:
            out["family"] = self.family
        return out


@dataclass(frozen=True)
class Tables:
    socles: dict
    cases: dict
    rows: tuple
    path: str

    def rows_for(self, case: str, source: int) -> list[RowEntry]:
        return [row for row in self.rows if row.case == case and row.source == source]

    def to_dict(self) -> dict:
        return {"socles": dict(self.socles),
                "cases": [c.to_dict() for c in self.cases.values()],
                "rows": [r.to_dict() for r in self.rows]}


def data_path() -> Path:
    override = os.environ.get(DATA_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("elusive") / "data" / "tables.json"))


def _cond(text, row_id) -> CongruenceExpr:
    try:
        expr = parse_condition(text)
    except ConditionError as exc:
        raise TableDataError(row_id, str(exc)) from None
    extra = free_symbols(expr) - SYMBOLS
    if extra:
        raise TableDataError(row_id, f"unknown symbols {sorted(extra)}")
    return expr


def _parse(raw: dict, path: str) -> Tables:
    socles = {}
    for name, formula in raw.get("socles", {}).items():
        try:
            parse_arith(str(formula))
        except ConditionError as exc:
            raise TableDataError(f"socle {name}", str(exc)) from None
        socles[name] = str(formula)
    cases = {}
    for item in raw.get("cases", []):
        cid = item.get("case", "?")
        try:
            alts = []
            for alt in item["T"]:
                if alt["family"] not in FAMILIES:
                    raise TableDataError(cid, f"unknown family {alt['family']!r}")
                when = _cond(alt["when"], cid) if "when" in alt else None
                alts.append((alt["family"], alt.get("n"), when))
            entry = CaseEntry(cid, int(item["source"]), tuple(alts), item["field"], item["S"],
                              _cond(item.get("exists", "true"), cid))
        except KeyError as exc:
            raise TableDataError(cid, f"missing field {exc}") from None
        if entry.field not in ("p", "q"):
            raise TableDataError(cid, "field must be 'p' or 'q'")
        if entry.S != "A_d" and entry.S not in socles:
            raise TableDataError(cid, f"socle {entry.S!r} has no order formula")
        if cid in cases:
            raise TableDataError(cid, "duplicate case id")
        cases[cid] = entry
    rows = []
    for k, item in enumerate(raw.get("rows", [])):
        rid = f"row {k} ({item.get('case', '?')})"
        try:
            row = RowEntry(item["case"], int(item["r"]), _cond(item["condition"], rid),
                           int(item["source"]), item.get("family"))
        except KeyError as exc:
            raise TableDataError(rid, f"missing field {exc}") from None
        if row.source not in SOURCES:
            raise TableDataError(rid, f"unknown source table {row.source}")
        if row.case != "A" and row.case not in cases:
            raise TableDataError(rid, f"unknown case {row.case!r}")
        rows.append(row)
    return Tables(socles, cases, tuple(rows), path)


@lru_cache(maxsize=8)
def _load(path: str) -> Tables:
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise TableDataError(path, f"cannot read table data: {exc}") from None
    return _parse(raw, path)


def load_tables(path: str | os.PathLike | None = None) -> Tables:
    """Load and validate the tables (cached per path)."""
    return _load(str(path or data_path()))
