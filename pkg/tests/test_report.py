"""Tests for report rendering."""

import csv
import io
import json

import pytest

from enhancedsw.const import (
    CHECK_LEVI,
    CHECK_MAIN_THEOREM,
    FORMAT_CSV,
    FORMAT_JSON,
    FORMAT_TABLE,
    STATUS_FAIL,
    STATUS_PASS,
    STATUS_REPORT_ONLY,
    STRICT_INCLUSION,
)
from enhancedsw.exceptions import ConfigError
from enhancedsw.models import CheckResult, DimensionTable
from enhancedsw.report import (
    SUMMARY_FIELDS,
    render_dimensions,
    render_results,
    render_sweep,
    summarize,
)

PASSED = CheckResult(
    check=CHECK_LEVI,
    n=2,
    r=2,
    status=STATUS_PASS,
    lhs_dim=7,
    rhs_dim=7,
    detail="End_Levi=7=7",
    elapsed_ms=12,
)
FAILED = CheckResult(
    check=CHECK_LEVI,
    n=1,
    r=1,
    status=STATUS_FAIL,
    lhs_dim=2,
    rhs_dim=1,
    detail="End_Levi=2<>1",
    witness="{3: 1}",
)
STRICT = CheckResult(
    check=CHECK_MAIN_THEOREM,
    n=1,
    r=2,
    status=STATUS_REPORT_ONLY,
    lhs_dim=3,
    rhs_dim=2,
    detail="psi ⊊ D^V (2 vs 3)",
    relation=STRICT_INCLUSION,
)

TABLE = DimensionTable(
    n=1,
    r=1,
    psi=1,
    dnr=2,
    dnr_by_degree=(1, 1),
    dv=1,
    end_full=1,
    end_levi=2,
    end_parabolic=1,
    end_unipotent=2,
    invariants=1,
)


# ---------------------------------------------------------------------------
# Records
# ---------------------------------------------------------------------------


class TestRenderResults:
    def test_json(self):
        records = json.loads(render_results([PASSED, FAILED], FORMAT_JSON))
        assert records[0]["check"] == CHECK_LEVI
        assert records[0]["witness"] is None
        assert records[1]["witness"] == "{3: 1}"
        assert "elapsed_ms" not in records[0]

    def test_json_with_timings(self):
        (record,) = json.loads(render_results([PASSED], FORMAT_JSON, True))
        assert record["elapsed_ms"] == 12

    def test_json_keeps_unicode(self):
        assert "⊊" in render_results([STRICT], FORMAT_JSON)

    def test_csv(self):
        text = render_results([PASSED, FAILED], FORMAT_CSV)
        rows = list(csv.DictReader(io.StringIO(text)))
        assert rows[0]["lhs_dim"] == "7"
        assert rows[0]["witness"] == ""
        assert json.loads(rows[1]["witness"]) == "{3: 1}"
        assert "elapsed_ms" not in rows[0]

    def test_table(self):
        lines = render_results([PASSED], FORMAT_TABLE).splitlines()
        assert lines[0].split() == [
            "check",
            "n",
            "r",
            "status",
            "lhs_dim",
            "rhs_dim",
            "detail",
            "elapsed_ms",
        ]
        assert set(lines[1]) <= {"-", " "}
        assert lines[2].split()[0] == CHECK_LEVI

    def test_unknown_format(self):
        with pytest.raises(ConfigError):
            render_results([PASSED], "yaml")


class TestRenderDimensions:
    def test_json(self):
        (row,) = json.loads(render_dimensions([TABLE], FORMAT_JSON))
        assert row["dnr_1"] == 1

    def test_table_header(self):
        header = render_dimensions([TABLE], FORMAT_TABLE).splitlines()[0].split()
        assert header[:6] == ["n", "r", "psi", "dnr", "dnr_0", "dnr_1"]

    def test_unknown_format(self):
        with pytest.raises(ConfigError):
            render_dimensions([TABLE], "yaml")


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------


class TestSummary:
    def test_cells(self):
        summary = summarize([PASSED, FAILED, STRICT])
        assert [(row["n"], row["r"]) for row in summary] == [(1, 1), (1, 2), (2, 2)]
        by_cell = {(row["n"], row["r"]): row for row in summary}
        assert by_cell[(1, 1)]["status"] == STATUS_FAIL
        assert by_cell[(1, 1)]["failed"] == 1
        assert by_cell[(1, 2)]["status"] == STATUS_REPORT_ONLY
        assert by_cell[(1, 2)]["strictness"] == STRICT_INCLUSION
        assert by_cell[(2, 2)]["strictness"] is None

    def test_sweep_json(self):
        payload = json.loads(render_sweep([PASSED, STRICT], FORMAT_JSON))
        assert len(payload["results"]) == 2
        assert list(payload["summary"][0]) == list(SUMMARY_FIELDS)

    def test_sweep_csv_appends_summary(self):
        text = render_sweep([PASSED], FORMAT_CSV)
        records, summary = text.split("\n\n")
        assert records.startswith("check,n,r,status")
        assert summary.startswith(",".join(SUMMARY_FIELDS))
