"""Check records, run reports and their CSV / JSON emission."""
from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

CSV_COLUMNS = ("check_id", "anchor", "lhs", "rhs", "abs_err", "rel_err", "pass")


def _num(v):
    """JSON-safe number: complex as {re, im}, non-finite as None."""
    if v is None:
        return None
    if isinstance(v, complex) or (hasattr(v, "imag") and getattr(v, "imag", 0) != 0):
        c = complex(v)
        return {"re": _num(c.real), "im": _num(c.imag)}
    x = float(v)
    return x if math.isfinite(x) else None


def _unnum(v):
    if isinstance(v, dict):
        return complex(v["re"], v["im"])
    return v


def fmt(v) -> str:
    """Round-trip exact scientific notation; complex as re+imj."""
    if v is None:
        return ""
    if isinstance(v, complex):
        return f"{v.real:.16e}{v.imag:+.16e}j"
    return f"{float(v):.16e}"


@dataclass
class CheckRecord:
    check_id: str
    anchor: str
    lhs: object
    rhs: object
    tolerance: float
    relative: bool = False
    note: str = ""
    passed: Optional[bool] = None
    scale: float = 0.0

    def __post_init__(self):
        self.lhs = _clean(self.lhs)
        self.rhs = _clean(self.rhs)
        if self.passed is None:
            err = self.abs_err
            if err is None:
                self.passed = False
            elif self.relative:
                # relative to the larger side, floored by ``scale`` so that two
                # sides at rounding level near zero do not fail spuriously
                self.passed = err <= self.tolerance * max(abs(self.lhs), abs(self.rhs), self.scale)
            else:
                self.passed = err <= self.tolerance

    @property
    def abs_err(self):
        if self.lhs is None or self.rhs is None:
            return None
        return abs(self.lhs - self.rhs)

    @property
    def rel_err(self):
        a = self.abs_err
        if a is None:
            return None
        scale = max(abs(self.lhs), abs(self.rhs))
        return a / scale if scale > 0 else 0.0

    def as_dict(self) -> dict:
        return {
            "check_id": self.check_id, "anchor": self.anchor, "lhs": _num(self.lhs), "rhs": _num(self.rhs),
            "abs_err": _num(self.abs_err), "rel_err": _num(self.rel_err), "tolerance": _num(self.tolerance),
            "relative": self.relative, "note": self.note, "pass": bool(self.passed), "scale": _num(self.scale),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CheckRecord":
        tol = d["tolerance"]
        return cls(d["check_id"], d["anchor"], _unnum(d["lhs"]), _unnum(d["rhs"]),
                   math.inf if tol is None else tol, d["relative"], d["note"], d["pass"], d["scale"])


def _clean(v):
    if v is None:
        return None
    if isinstance(v, complex) or getattr(v, "imag", 0) != 0:
        c = complex(v)
        return c if c.imag != 0 else c.real
    x = float(v)
    return x if math.isfinite(x) else None


def failed(scenario: str, check_id: str, anchor: str, exc: Exception) -> CheckRecord:
    return CheckRecord(f"{scenario}/{check_id}", anchor, None, None, 0.0, note=f"{type(exc).__name__}: {exc}",
                       passed=False)


@dataclass
class RunReport:
    records: list
    metadata: dict = field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.records)

    def as_dict(self) -> dict:
        return {"metadata": self.metadata, "checks": [r.as_dict() for r in self.records]}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2, allow_nan=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        d = json.loads(text)
        return cls([CheckRecord.from_dict(c) for c in d["checks"]], d["metadata"])

    def rows(self):
        for r in self.records:
            yield [r.check_id, r.anchor, fmt(r.lhs), fmt(r.rhs), fmt(r.abs_err), fmt(r.rel_err),
                   "true" if r.passed else "false"]


def write_csv(path, header, rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    return path


def emit(report: RunReport, fmt_name: str, path) -> Path:
    """Write ``report`` as JSON or CSV to ``path``."""
    path = Path(path)
    if fmt_name == "json":
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(report.to_json(), encoding="utf-8", newline="\n")
        return path
    if fmt_name == "csv":
        return write_csv(path, CSV_COLUMNS, report.rows())
    raise ValueError(f"unknown format {fmt_name!r}")


def spec_dict(spec) -> dict:
    return asdict(spec)
