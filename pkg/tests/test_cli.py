"""Tests for the enhancedsw command-line interface."""

import json
import logging

import pytest
from click.testing import CliRunner

from enhancedsw import cli
from enhancedsw.const import (
    CHECK_NAMES,
    EXIT_ASSERTION_FAILED,
    EXIT_OK,
    EXIT_USAGE,
    STATUS_FAIL,
    STATUS_PASS,
    STATUS_REPORT_ONLY,
    STATUS_SKIPPED,
)
from enhancedsw.models import CheckResult


@pytest.fixture
def runner():
    """Provide a click CliRunner."""
    return CliRunner()


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


class TestVerifyCommand:
    def test_help(self, runner):
        result = runner.invoke(cli.main, ["verify", "--help"])
        assert result.exit_code == EXIT_OK
        assert "--checks" in result.output

    def test_all_checks_pass(self, runner):
        result = runner.invoke(cli.main, ["verify", "--n", "1", "--r", "1"])
        assert result.exit_code == EXIT_OK
        records = json.loads(result.output)
        assert [rec["check"] for rec in records] == list(CHECK_NAMES)
        assert all(rec["status"] == STATUS_PASS for rec in records)
        assert all("elapsed_ms" not in rec for rec in records)

    def test_stable_cell(self, runner):
        result = runner.invoke(
            cli.main,
            ["verify", "--n", "2", "--r", "2", "--checks", "levi,main-theorem"],
        )
        assert result.exit_code == EXIT_OK
        records = json.loads(result.output)
        assert [rec["lhs_dim"] for rec in records] == [7, 2]

    def test_below_stable_range_is_report_only(self, runner):
        result = runner.invoke(
            cli.main, ["verify", "--n", "1", "--r", "2", "--checks", "main-theorem"]
        )
        assert result.exit_code == EXIT_OK
        (record,) = json.loads(result.output)
        assert record["status"] == STATUS_REPORT_ONLY

    def test_timings(self, runner):
        result = runner.invoke(
            cli.main,
            ["verify", "--n", "1", "--r", "1", "--checks", "classical", "--timings"],
        )
        (record,) = json.loads(result.output)
        assert isinstance(record["elapsed_ms"], int)

    def test_deterministic(self, runner):
        args = ["verify", "--n", "2", "--r", "2", "--checks", "all", "--seed", "5"]
        first = runner.invoke(cli.main, args)
        second = runner.invoke(cli.main, args)
        assert first.output == second.output

    def test_oversized_cell_refused(self, runner):
        result = runner.invoke(cli.main, ["verify", "--n", "2", "--r", "9"])
        assert result.exit_code == EXIT_USAGE
        assert "max_ambient" in result.output

    def test_unknown_check(self, runner):
        result = runner.invoke(
            cli.main, ["verify", "--n", "1", "--r", "1", "--checks", "bogus"]
        )
        assert result.exit_code == EXIT_USAGE
        assert "bogus" in result.output

    def test_missing_r(self, runner):
        result = runner.invoke(cli.main, ["verify", "--n", "1"])
        assert result.exit_code == EXIT_USAGE

    def test_failed_assertion(self, runner, monkeypatch):
        def failing(space, checks, seed):
            return [CheckResult(check="levi", n=space.n, r=space.r, status=STATUS_FAIL)]

        monkeypatch.setattr(cli, "run_checks", failing)
        result = runner.invoke(cli.main, ["verify", "--n", "1", "--r", "1"])
        assert result.exit_code == EXIT_ASSERTION_FAILED

    def test_out_file(self, runner, tmp_path):
        out = tmp_path / "report.csv"
        result = runner.invoke(
            cli.main,
            [
                "verify",
                "--n",
                "1",
                "--r",
                "1",
                "--checks",
                "classical",
                "--format",
                "csv",
                "--out",
                str(out),
            ],
        )
        assert result.exit_code == EXIT_OK
        assert result.output == ""
        assert out.read_text(encoding="utf-8").startswith("check,n,r,status")


# ---------------------------------------------------------------------------
# sweep and dims
# ---------------------------------------------------------------------------


class TestSweepCommand:
    def test_grid(self, runner):
        result = runner.invoke(
            cli.main,
            ["sweep", "--n-range", "1..2", "--r", "1", "--checks", "classical"],
        )
        assert result.exit_code == EXIT_OK
        payload = json.loads(result.output)
        assert [(rec["n"], rec["r"]) for rec in payload["results"]] == [(1, 1), (2, 1)]
        assert len(payload["summary"]) == 2

    def test_oversized_cells_skipped(self, runner):
        result = runner.invoke(
            cli.main,
            [
                "sweep",
                "--n",
                "1",
                "--r-range",
                "1..2",
                "--checks",
                "classical",
                "--max-ambient",
                "2",
            ],
        )
        assert result.exit_code == EXIT_OK
        payload = json.loads(result.output)
        statuses = [rec["status"] for rec in payload["results"]]
        assert statuses == [STATUS_PASS, STATUS_SKIPPED]

    def test_bad_range(self, runner):
        result = runner.invoke(cli.main, ["sweep", "--n-range", "3..1", "--r", "1"])
        assert result.exit_code == EXIT_USAGE


class TestDimsCommand:
    def test_table(self, runner):
        result = runner.invoke(cli.main, ["dims", "--n", "1", "--r", "1"])
        assert result.exit_code == EXIT_OK
        header = result.output.splitlines()[0].split()
        assert header[:4] == ["n", "r", "psi", "dnr"]

    def test_json(self, runner):
        result = runner.invoke(
            cli.main, ["dims", "--n", "2", "--r", "2", "--format", "json"]
        )
        (row,) = json.loads(result.output)
        assert (row["psi"], row["dnr"], row["dv"]) == (2, 7, 2)

    def test_oversized_cell_refused(self, runner):
        result = runner.invoke(cli.main, ["dims", "--n", "3", "--r", "5"])
        assert result.exit_code == EXIT_USAGE


class TestMainGroup:
    def test_debug_flag(self, runner):
        logger = logging.getLogger("enhancedsw")
        original = logger.level
        root_handlers = list(logging.getLogger().handlers)
        try:
            result = runner.invoke(
                cli.main,
                ["--debug", "dims", "--n", "1", "--r", "1", "--format", "json"],
            )
            assert result.exit_code == EXIT_OK
            assert logger.level == logging.DEBUG
        finally:
            logger.setLevel(original)
            for handler in list(logging.getLogger().handlers):
                if handler not in root_handlers:
                    logging.getLogger().removeHandler(handler)
