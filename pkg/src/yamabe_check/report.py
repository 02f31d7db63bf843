"""Report document and its JSON, CSV and text serializations."""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from . import __version__
from .suite import DISCREPANCY, FAIL, PASS, STATUSES, VerificationReport

SCHEMA_VERSION = 1
CSV_COLUMNS = ("lemma_id", "expected", "computed_exact", "computed_numeric", "rel_err", "status")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_DISCREPANCY = 3


def exit_code(statuses: Iterable[str]) -> int:
    """0 all pass, 1 any fail, 3 a discrepancy and no fail."""
    seen = set(statuses)
    if FAIL in seen:
        return EXIT_FAIL
    if DISCREPANCY in seen:
        return EXIT_DISCREPANCY
    return EXIT_OK


@dataclass
class ReportDocument:
    config: dict = field(default_factory=dict)
    reports: list = field(default_factory=list)
    tool_version: str = __version__

    def summary(self) -> dict:
        counts = Counter(r.status for r in self.reports)
        out = {s: counts.get(s, 0) for s in STATUSES}
        out["total"] = len(self.reports)
        return out

    @property
    def exit_code(self) -> int:
        return exit_code(r.status for r in self.reports)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "tool_version": self.tool_version,
            "config": self.config,
            "reports": [r.to_dict() for r in self.reports],
            "summary": self.summary(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ReportDocument":
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {d.get('schema_version')!r}")
        doc = cls(dict(d.get("config", {})), [VerificationReport.from_dict(r) for r in d.get("reports", [])],
                  d.get("tool_version", __version__))
        if d.get("summary") != doc.summary():
            raise ValueError("summary counts do not match the report list")
        return doc


def to_json(doc: ReportDocument) -> str:
    # dict insertion order is fixed by the dataclasses, so no sort_keys
    return json.dumps(doc.to_dict(), indent=2, ensure_ascii=False) + "\n"


def from_json(text: str) -> ReportDocument:
    return ReportDocument.from_dict(json.loads(text))


def _num(x: Optional[float]) -> str:
    return "" if x is None else repr(float(x))


def to_csv(doc: ReportDocument) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in doc.reports:
        w.writerow([r.lemma_id, r.expected, r.computed_exact, _num(r.computed_numeric), _num(r.rel_err), r.status])
    return buf.getvalue()


def _short(text: str, width: int) -> str:
    return text if len(text) <= width else text[: width - 3] + "..."


def to_text(doc: ReportDocument, notes: bool = True) -> str:
    lines = []
    header = f"{'lemma':<20} {'status':<23} {'computed':<60} {'rel_err':>9}"
    lines.append(header)
    lines.append("-" * len(header))
    for r in doc.reports:
        err = "" if r.rel_err is None else f"{r.rel_err:.1e}"
        lines.append(f"{r.lemma_id:<20} {r.status:<23} {_short(r.computed_exact, 60):<60} {err:>9}")
        if r.status != PASS or notes:
            if r.status != PASS:
                lines.append(f"{'':<20} expected: {r.expected}")
            for note in r.notes if notes else ():
                lines.append(f"{'':<20} - {note}")
    s = doc.summary()
    lines.append("")
    lines.append(f"{s['total']} reports: {s[PASS]} pass, {s[FAIL]} fail, {s[DISCREPANCY]} discrepancy_with_paper")
    return "\n".join(lines) + "\n"


FORMATS = {"json": to_json, "csv": to_csv, "text": to_text}


def emit(doc: ReportDocument, fmt: str) -> bytes:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    return FORMATS[fmt](doc).encode("utf-8")


def rows_to_csv(columns: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow(row)
    return buf.getvalue()
