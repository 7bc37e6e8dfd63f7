"""Residual records and their deterministic CSV/JSON serialization."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import DomainError, SummaError

STATUSES = ("ok", "fail", "finding", "warning", "provisional")


@dataclass(frozen=True)
class TruncationSpec:
    K_zeros: int = 0
    K_trivial: int = 0
    N_terms: int = 1
    pair_conjugates: bool = True

    def __post_init__(self):
        if self.K_zeros < 0 or self.K_trivial < 0:
            raise DomainError("truncation counts must be nonnegative")
        if self.N_terms < 1:
            raise DomainError("N_terms must be positive")


@dataclass(frozen=True)
class ResidualReport:
    identifier: str
    params: dict[str, float]
    lhs: float
    rhs: float
    residual: float
    truncation: TruncationSpec = field(default_factory=TruncationSpec)
    status: str = "ok"

    def __post_init__(self):
        if self.status not in STATUSES:
            raise DomainError(f"unknown status {self.status!r}")

    @classmethod
    def build(cls, identifier, params, lhs, rhs, truncation=None, status="ok"):
        lhs, rhs = float(lhs), float(rhs)
        return cls(
            identifier,
            {k: float(v) for k, v in params.items()},
            lhs,
            rhs,
            lhs - rhs,
            truncation or TruncationSpec(),
            status,
        )

    def with_status(self, status: str) -> ResidualReport:
        return ResidualReport(self.identifier, self.params, self.lhs, self.rhs, self.residual, self.truncation, status)


def fmt(x: float) -> str:
    """17 significant digits; enough for an exact float round-trip."""
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def _param_keys(rows: Sequence[ResidualReport]) -> list[str]:
    keys: list[str] = []
    for r in rows:
        for k in r.params:
            if k not in keys:
                keys.append(k)
    return keys


def to_csv(rows: Sequence[ResidualReport]) -> str:
    keys = _param_keys(rows)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["identifier", *keys, "lhs", "rhs", "residual", "K_zeros", "K_trivial", "N_terms", "status"])
    for r in rows:
        t = r.truncation
        writer.writerow(
            [
                r.identifier,
                *(fmt(r.params[k]) if k in r.params else "" for k in keys),
                fmt(r.lhs),
                fmt(r.rhs),
                fmt(r.residual),
                t.K_zeros,
                t.K_trivial,
                t.N_terms,
                r.status,
            ]
        )
    return buf.getvalue()


def to_json(rows: Sequence[ResidualReport]) -> str:
    out = []
    for r in rows:
        t = r.truncation
        out.append(
            {
                "identifier": r.identifier,
                "params": dict(r.params),
                "lhs": r.lhs,
                "rhs": r.rhs,
                "residual": r.residual,
                "K_zeros": t.K_zeros,
                "K_trivial": t.K_trivial,
                "N_terms": t.N_terms,
                "status": r.status,
            }
        )
    return json.dumps(out, indent=1) + "\n"


def report_write(rows: Iterable[ResidualReport], fmt_name: str, path) -> Path:
    rows = list(rows)
    if not rows:
        raise SummaError("refusing to write an empty report")
    if fmt_name == "csv":
        text = to_csv(rows)
    elif fmt_name == "json":
        text = to_json(rows)
    else:
        raise DomainError(f"unknown report format {fmt_name!r}")
    path = Path(path)
    try:
        path.write_text(text)
    except OSError as exc:
        raise SummaError(f"cannot write report to {path}: {exc}") from exc
    return path


def read_csv(path) -> list[dict]:
    """Parse a report CSV back into dicts with float values where numeric."""
    rows = []
    with open(path, newline="") as fh:
        for rec in csv.DictReader(fh):
            parsed = {}
            for k, v in rec.items():
                if k in ("identifier", "status"):
                    parsed[k] = v
                elif k in ("K_zeros", "K_trivial", "N_terms"):
                    parsed[k] = int(v)
                else:
                    parsed[k] = float(v) if v != "" else None
            rows.append(parsed)
    return rows
