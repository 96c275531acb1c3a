"""
Report serialization (json-lines, csv, human table) and exit codes.

Residues are written as decimal strings so consumers never hit integer
width limits for large moduli.
"""
import csv
import json
from typing import Dict, IO, List, Literal, Optional, Sequence

from app.models import CheckRecord
import logging

logger = logging.getLogger(__name__)

ReportFormat = Literal["json-lines", "csv", "human"]
FORMATS = ("json-lines", "csv", "human")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_CAP = 4

FIELDS = (
    "check", "p", "r", "m", "n", "parts", "x", "k",
    "lhs", "rhs", "modulus", "method", "pass", "elapsed_ms", "visits", "error", "factors",
)


def record_fields(
    record: CheckRecord,
    timings: bool = False,
    visits: bool = False,
) -> Dict[str, object]:
    """
    Flatten a record into the report schema; absent values are dropped.

    elapsed_ms and visits vary with the machine and the evaluator, so they
    are only included on request.
    """
    data: Dict[str, object] = {"check": record.check}
    for key in ("p", "r", "m", "n", "parts", "x", "k"):
        value = getattr(record, key)
        if value is not None:
            data[key] = value
    for key in ("lhs", "rhs", "modulus"):
        value = getattr(record, key)
        if value is not None:
            data[key] = str(value)
    if record.method:
        data["method"] = list(record.method)
    if record.passed is not None:
        data["pass"] = record.passed
    if timings and record.elapsed_ms is not None:
        data["elapsed_ms"] = record.elapsed_ms
    if visits and record.visits is not None:
        data["visits"] = record.visits
    if record.error is not None:
        data["error"] = record.error
    if record.factors is not None:
        data["factors"] = {str(power): str(value) for power, value in sorted(record.factors.items())}
    return data


def _cell(key: str, value: object) -> str:
    if value is None:
        return ""
    if key == "method":
        return "+".join(value)
    if key == "pass":
        return "true" if value else "false"
    if key == "factors":
        return ";".join(f"{power}:{residue}" for power, residue in value.items())
    return str(value)


def emit_report(
    records: Sequence[CheckRecord],
    fmt: ReportFormat,
    stream: IO[str],
    timings: bool = False,
    visits: bool = False,
) -> None:
    """
    Write records to stream in the requested format.

    Args:
        records: records already sorted by the suite
        fmt: "json-lines", "csv" or "human"
        stream: text stream (standard output for the CLI)
        timings: include elapsed_ms
        visits: include visit counts

    Raises:
        OSError: the stream could not be written
    """
    rows = [record_fields(record, timings, visits) for record in records]

    if fmt == "json-lines":
        for row in rows:
            stream.write(json.dumps(row, separators=(",", ":")) + "\n")
    elif fmt == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(FIELDS)
        for row in rows:
            writer.writerow([_cell(key, row.get(key)) for key in FIELDS])
    elif fmt == "human":
        _emit_table(rows, stream)
    else:
        raise ValueError(f"Unknown report format: {fmt}")
    stream.flush()


def _emit_table(rows: List[Dict[str, object]], stream: IO[str]) -> None:
    columns = [key for key in FIELDS if any(key in row for row in rows)]
    if not columns:
        stream.write("no records\n")
        return
    cells = [[_cell(key, row.get(key)) for key in columns] for row in rows]
    widths = [max([len(key)] + [len(line[i]) for line in cells]) for i, key in enumerate(columns)]
    stream.write("  ".join(key.ljust(width) for key, width in zip(columns, widths)).rstrip() + "\n")
    stream.write("  ".join("-" * width for width in widths) + "\n")
    for line in cells:
        stream.write("  ".join(cell.ljust(width) for cell, width in zip(line, widths)).rstrip() + "\n")
    passed = sum(1 for row in rows if row.get("pass") is True)
    failed = sum(1 for row in rows if row.get("pass") is False)
    stream.write(f"\n{len(rows)} records, {passed} passed, {failed} failed\n")


def exit_code(records: Sequence[CheckRecord], strict: bool = False) -> int:
    """
    0 when every verdict passes, 1 on any failed or errored check,
    4 under strict mode when some check hit a cap. Exploration records and
    (outside strict mode) cap-exceeded records do not affect the code.
    """
    failed = any(
        record.passed is False or (record.error is not None and not record.is_cap_exceeded)
        for record in records
    )
    if failed:
        return EXIT_FAILED
    if strict and any(record.is_cap_exceeded for record in records):
        return EXIT_CAP
    return EXIT_OK


def summarize(records: Sequence[CheckRecord]) -> Optional[str]:
    if not records:
        return None
    failed = sum(1 for record in records if record.passed is False)
    capped = sum(1 for record in records if record.is_cap_exceeded)
    explored = sum(1 for record in records if record.is_exploration)
    return f"{len(records)} records: {failed} failed, {capped} over cap, {explored} exploration"
