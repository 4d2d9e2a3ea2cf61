"""Rendering of check results and dimension tables."""

from __future__ import annotations

import csv
import io
import json
import logging
from collections.abc import Iterable, Sequence
from typing import Any

from .const import (
    CHECK_MAIN_THEOREM,
    FORMAT_CSV,
    FORMAT_JSON,
    FORMAT_TABLE,
    RECORD_FIELDS,
    STATUS_FAIL,
    STATUS_PASS,
    STATUS_REPORT_ONLY,
    STATUS_SKIPPED,
)
from .exceptions import ConfigError
from .models import CheckResult, DimensionTable

_LOGGER = logging.getLogger(__name__)

SUMMARY_FIELDS = ("n", "r", "status", "checks", "failed", "strictness")


def _fields(include_timing: bool) -> list[str]:
    return [f for f in RECORD_FIELDS if include_timing or f != "elapsed_ms"]


def _cell(value: Any) -> str:
    return "" if value is None else str(value)


def _json(payload: Any) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def _csv(fields: Sequence[str], rows: Iterable[dict[str, Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(fields), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        cells = {k: _cell(row.get(k)) for k in fields}
        if "witness" in cells and row.get("witness") is not None:
            # The witness keeps its JSON form inside the cell.
            cells["witness"] = json.dumps(row["witness"], ensure_ascii=False)
        writer.writerow(cells)
    return buffer.getvalue()


def _table(fields: Sequence[str], rows: Sequence[dict[str, Any]]) -> str:
    cells = [[_cell(row.get(k)) for k in fields] for row in rows]
    widths = [
        max([len(name), *(len(line[i]) for line in cells)])
        for i, name in enumerate(fields)
    ]
    lines = [
        "  ".join(name.ljust(w) for name, w in zip(fields, widths, strict=True)),
        "  ".join("-" * w for w in widths),
    ]
    lines.extend(
        "  ".join(c.ljust(w) for c, w in zip(line, widths, strict=True)).rstrip()
        for line in cells
    )
    return "\n".join(line.rstrip() for line in lines) + "\n"


def render_results(
    results: Sequence[CheckResult], output_format: str, include_timing: bool = False
) -> str:
    """Render check records as JSON, CSV or an aligned table.

    The table always shows elapsed_ms; JSON and CSV only with include_timing.

    Raises:
        ConfigError: If the format is unknown.
    """
    if output_format == FORMAT_JSON:
        return _json([res.to_dict(include_timing) for res in results])
    if output_format == FORMAT_CSV:
        return _csv(
            _fields(include_timing), (res.to_dict(include_timing) for res in results)
        )
    if output_format == FORMAT_TABLE:
        return _table(
            [f for f in RECORD_FIELDS if f != "witness"],
            [res.to_dict(include_timing=True) for res in results],
        )
    raise ConfigError(f"Unknown format {output_format!r}")


def render_dimensions(tables: Sequence[DimensionTable], output_format: str) -> str:
    """Render dimension tables; columns follow the largest r present."""
    rows = [table.to_dict() for table in tables]
    fields: list[str] = []
    for row in rows:
        fields.extend(k for k in row if k not in fields)
    if output_format == FORMAT_JSON:
        return _json(rows)
    if output_format == FORMAT_CSV:
        return _csv(fields, rows)
    if output_format == FORMAT_TABLE:
        return _table(fields, rows)
    raise ConfigError(f"Unknown format {output_format!r}")


def summarize(results: Iterable[CheckResult]) -> list[dict[str, Any]]:
    """Aggregate records into one row per (n, r) cell.

    A cell fails if any asserted check failed, passes if every asserted check
    passed, and is report-only or skipped otherwise. ``strictness`` is the
    relation between ℂΨ(S_r) and D(n,r)^V for n < r cells.
    """
    cells: dict[tuple[int, int], list[CheckResult]] = {}
    for res in results:
        cells.setdefault((res.n, res.r), []).append(res)
    summary = []
    for (n, r), group in sorted(cells.items()):
        statuses = {res.status for res in group}
        if STATUS_FAIL in statuses:
            status = STATUS_FAIL
        elif STATUS_PASS in statuses:
            status = STATUS_PASS
        elif STATUS_REPORT_ONLY in statuses:
            status = STATUS_REPORT_ONLY
        else:
            status = STATUS_SKIPPED
        strictness = next(
            (
                res.relation
                for res in group
                if res.check == CHECK_MAIN_THEOREM and n < r and res.relation
            ),
            None,
        )
        summary.append(
            {
                "n": n,
                "r": r,
                "status": status,
                "checks": len(group),
                "failed": sum(res.failed for res in group),
                "strictness": strictness,
            }
        )
    _LOGGER.debug("Summarized %d cells", len(summary))
    return summary


def render_sweep(
    results: Sequence[CheckResult], output_format: str, include_timing: bool = False
) -> str:
    """Render the records of a sweep followed by the per-cell summary."""
    summary = summarize(results)
    if output_format == FORMAT_JSON:
        return _json(
            {
                "results": [res.to_dict(include_timing) for res in results],
                "summary": summary,
            }
        )
    records = render_results(results, output_format, include_timing)
    if output_format == FORMAT_CSV:
        return records + "\n" + _csv(SUMMARY_FIELDS, summary)
    return records + "\n" + _table(SUMMARY_FIELDS, summary)
