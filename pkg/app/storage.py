"""CSV/JSON rendering of reports and locked, atomic emission to disk."""

from __future__ import annotations

import csv
import io
import json
import logging
from pathlib import Path
from typing import Any

from filelock import FileLock
from pydantic import BaseModel

from app.config import OUTPUT_DIR, SCHEMA_VERSION
from app.models import RegionScanReport

logger = logging.getLogger(__name__)

CSV_COLUMNS = (
    "family",
    "theorem",
    "param1",
    "param2",
    "condition_slack",
    "verdict_margin",
    "consistent",
)


def _format_float(value: float) -> str:
    # repr is the shortest round-trip form, so output is stable across runs
    return repr(float(value))


def scan_rows(report: RegionScanReport) -> list[list[str]]:
    return [
        [
            report.family.value,
            cell.theorem.value,
            _format_float(cell.param1),
            _format_float(cell.param2),
            _format_float(cell.condition_slack),
            _format_float(cell.verdict_margin),
            "true" if cell.consistent else "false",
        ]
        for cell in report.cells
    ]


def render_csv(report: RegionScanReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    writer.writerows(scan_rows(report))
    return buffer.getvalue()


def render_json(payload: BaseModel | dict[str, Any]) -> str:
    """Pretty JSON with a schema_version field, newline-terminated."""
    if isinstance(payload, BaseModel):
        data = payload.model_dump(mode="json")
    else:
        data = dict(payload)
    data.setdefault("schema_version", SCHEMA_VERSION)
    return json.dumps(data, indent=2) + "\n"


def resolve_output(path: Path | str) -> Path:
    """Relative paths land under OUTPUT_DIR."""
    path = Path(path)
    return path if path.is_absolute() else OUTPUT_DIR / path


def write_output(path: Path | str, text: str) -> Path:
    """Write ``text`` as UTF-8 with LF endings.

    Uses a file lock so concurrent runs targeting the same path do not interleave,
    and replaces the target atomically via a temp file.
    """
    target = resolve_output(path)
    target.parent.mkdir(parents=True, exist_ok=True)

    lock = FileLock(str(target) + ".lock", timeout=10)
    with lock:
        tmp = target.with_name(target.name + ".tmp")
        with open(tmp, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        tmp.replace(target)

    logger.info("wrote %d bytes to %s", len(text.encode("utf-8")), target)
    return target
