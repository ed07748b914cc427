"""Input parsing and the barcode JSON document.

Two input formats, chosen explicitly by the caller: coordinates (one point
per CSV row) and distance matrices (n rows of n entries). Infinite deaths
are written as ``null``.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .hochster import Bigrade
from .metric import PseudoMetricSpace, from_matrix, from_points
from .persistence import Barcode

FORMAT_VERSION = "bgph-barcode/1"


class InputError(ValueError):
    """An input file could not be parsed."""


def _rows(text: str) -> list:
    rows = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        cells = [c.strip() for c in row]
        if not cells or all(c == "" for c in cells) or cells[0].startswith("#"):
            continue
        try:
            rows.append([float(c) for c in cells])
        except ValueError:
            raise InputError(f"line {lineno}: non-numeric entry in {row!r}") from None
    if not rows:
        raise InputError("no data rows found")
    return rows


def parse_points(text: str) -> PseudoMetricSpace:
    rows = _rows(text)
    if len({len(r) for r in rows}) != 1:
        raise InputError("coordinate rows have differing lengths")
    return from_points(np.array(rows))


def parse_matrix(text: str) -> PseudoMetricSpace:
    rows = _rows(text)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InputError(f"distance matrix must be {n} x {n}")
    return from_matrix(np.array(rows))


def read_space(path: str, matrix: bool = False):
    """Load a space from ``path``; returns ``(space, sha256 of the raw bytes)``."""
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise InputError(f"{path} is not UTF-8 text") from None
    space = parse_matrix(text) if matrix else parse_points(text)
    return space, hashlib.sha256(raw).hexdigest()


@dataclass
class BarcodeDocument:
    grading: str
    grid: list
    bars: list
    provenance: dict = field(default_factory=dict)
    version: str = FORMAT_VERSION

    @classmethod
    def from_barcode(cls, B: Barcode, provenance: Optional[dict] = None) -> "BarcodeDocument":
        grid = [] if B.grid is None else [float(t) for t in B.grid]
        bars = []
        for bar in B:
            rec = {"i": bar.grade.i, "j": bar.grade.j} if B.kind == "bigraded" else {"degree": bar.grade}
            rec["birth"] = bar.birth
            rec["death"] = None if math.isinf(bar.death) else bar.death
            bars.append(rec)
        return cls(B.kind, grid, bars, dict(provenance or {}))

    def to_barcode(self) -> Barcode:
        out = []
        for rec in self.bars:
            g = Bigrade(rec["i"], rec["j"]) if self.grading == "bigraded" else rec["degree"]
            death = math.inf if rec["death"] is None else rec["death"]
            out.append((g, rec["birth"], death))
        return Barcode(out, self.grading, np.array(self.grid) if self.grid else None)

    def to_dict(self) -> dict:
        return {"version": self.version, "grading": self.grading, "grid": self.grid,
                "bars": self.bars, "provenance": self.provenance}

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def loads(cls, text: str) -> "BarcodeDocument":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from None
        if not isinstance(d, dict) or d.get("version") != FORMAT_VERSION:
            raise InputError(f"not a barcode document (expected version {FORMAT_VERSION!r})")
        if d.get("grading") not in ("degree", "bigraded"):
            raise InputError(f"unknown grading {d.get('grading')!r}")
        keys = ("i", "j") if d["grading"] == "bigraded" else ("degree",)
        for rec in d.get("bars", []):
            if any(k not in rec for k in keys + ("birth", "death")):
                raise InputError(f"malformed bar record {rec!r}")
        return cls(d["grading"], d.get("grid", []), d.get("bars", []), d.get("provenance", {}), d["version"])

    @classmethod
    def load(cls, path: str) -> "BarcodeDocument":
        with open(path, encoding="utf-8") as fh:
            return cls.loads(fh.read())

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.dumps())
