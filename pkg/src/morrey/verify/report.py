"""Check reports and their JSON / CSV serialization."""
from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass

import numpy as np

__all__ = ["CheckReport", "safe_ratio", "fmt_float", "digest", "reports_to_json", "reports_to_csv",
           "to_jsonable"]


def safe_ratio(lhs: float, rhs: float) -> float:
    if lhs == 0:
        return 0.0
    if rhs == 0:
        return math.inf
    return lhs / rhs


def fmt_float(x: float) -> str:
    """17 significant digits; non-finite values as ``inf``, ``-inf``, ``nan``."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


class _Float17(float):
    """Marker so the JSON encoder prints a fixed number of digits."""


def to_jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return _Float17(x) if math.isfinite(x) else fmt_float(x)
    return obj


def dumps(obj) -> str:
    """Deterministic JSON with 17-significant-digit floats."""
    def enc(o, indent=0):
        pad = "  " * indent
        if isinstance(o, _Float17):
            s = fmt_float(o)
            return s if any(c in s for c in ".e") else s + ".0"
        if isinstance(o, dict):
            if not o:
                return "{}"
            items = [f'{pad}  {json.dumps(k)}: {enc(v, indent + 1)}' for k, v in o.items()]
            return "{\n" + ",\n".join(items) + "\n" + pad + "}"
        if isinstance(o, list):
            if not o:
                return "[]"
            items = [f"{pad}  {enc(v, indent + 1)}" for v in o]
            return "[\n" + ",\n".join(items) + "\n" + pad + "]"
        return json.dumps(o)

    return enc(to_jsonable(obj)) + "\n"


def digest(*parts) -> str:
    """SHA-256 prefix over strings and byte blobs."""
    hsh = hashlib.sha256()
    for part in parts:
        hsh.update(part if isinstance(part, bytes) else str(part).encode())
        hsh.update(b"\x00")
    return hsh.hexdigest()[:16]


@dataclass(frozen=True)
class CheckReport:
    check_id: str
    lhs: float
    rhs: float
    ratio: float
    passed: bool
    tol: float
    inputs_digest: str
    notes: str = ""

    @classmethod
    def build(cls, check_id, lhs, rhs, tol, inputs_digest, notes="") -> "CheckReport":
        lhs, rhs = float(lhs), float(rhs)
        ok = (not math.isnan(lhs)) and lhs <= rhs * (1 + tol)
        return cls(check_id, lhs, rhs, safe_ratio(lhs, rhs), bool(ok), float(tol), inputs_digest, notes)

    @property
    def pass_(self) -> bool:
        return self.passed

    def as_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ratio": self.ratio,
            "pass": self.passed,
            "tol": self.tol,
            "inputs_digest": self.inputs_digest,
            "notes": self.notes,
        }


CSV_COLUMNS = ("check_id", "lhs", "rhs", "ratio", "pass", "tol", "inputs_digest")


def reports_to_json(reports, config: dict | None = None) -> str:
    passed = sum(r.passed for r in reports)
    doc = {
        "config": config or {},
        "summary": {"total": len(reports), "passed": passed, "failed": len(reports) - passed},
        "reports": [r.as_dict() for r in reports],
    }
    return dumps(doc)


def reports_to_csv(reports) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        w.writerow([r.check_id, fmt_float(r.lhs), fmt_float(r.rhs), fmt_float(r.ratio),
                    "true" if r.passed else "false", fmt_float(r.tol), r.inputs_digest])
    return out.getvalue()
