"""Rendering verification reports as JSON or a text table."""

from __future__ import annotations

import json

from .suites import FAIL, PASS, SKIPPED, VerificationReport

SCHEMA_VERSION = "chigroup.verification/1"
FORMATS = ("json", "text")


def report_dict(r: VerificationReport) -> dict:
    records = []
    for rec in r.records:
        d = {
            "suite": rec.suite,
            "key": rec.key,
            "claim_id": rec.claim_id,
            "claim": rec.claim,
            "anchor": rec.anchor,
            "status": rec.status,
            "measured": rec.measured,
            "expected": rec.expected,
            "note": rec.note,
        }
        if rec.seconds is not None:
            d["seconds"] = rec.seconds
        records.append(d)
    return {
        "schema": SCHEMA_VERSION,
        "suite": r.suite,
        "selection": list(r.selection),
        "budget_cosets": r.budget_cosets,
        "summary": {
            "claims": len(r.records),
            "pass": r.count(PASS),
            "fail": r.count(FAIL),
            "skipped": r.count(SKIPPED),
            "exit_status": r.exit_status,
        },
        "records": records,
    }


def _cell(v) -> str:
    return "" if v is None else str(v)


def report_emit(r: VerificationReport, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report_dict(r), indent=2, ensure_ascii=False) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}; choose from {', '.join(FORMATS)}")
    rows = [("status", "key", "claim", "measured", "expected")]
    for rec in r.records:
        rows.append((rec.status.upper(), rec.key, rec.claim, _cell(rec.measured), _cell(rec.expected)))
    widths = [max(len(row[i]) for row in rows) for i in range(4)]
    lines = [f"suite {r.suite}: {r.count(PASS)} pass, {r.count(FAIL)} fail, {r.count(SKIPPED)} skipped"]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row[:4], widths)) + "  " + row[4])
    notes = [rec for rec in r.records if rec.note and rec.status != PASS]
    for rec in notes:
        lines.append(f"note [{rec.key} {rec.claim_id}]: {rec.note}")
    return "\n".join(line.rstrip() for line in lines) + "\n"
