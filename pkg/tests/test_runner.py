"""Tests for the run configuration, report records and the shared run loop."""

import io
import json
import logging
from dataclasses import FrozenInstanceError, replace
from fractions import Fraction

import pytest

from qlimit.errors import DomainError, PoleError
from qlimit.log import ColoredFormatter, get_logger, setup_logging
from qlimit.report import CheckSummary, IdentityReport, JobError, to_jsonable
from qlimit.runner import CheckRunner
from qlimit.schema import (
    THREADS_ENV,
    RunConfig,
    format_rational,
    parse_complex,
    parse_rational,
    parse_rational_list,
    threads_from_env,
)


class TestParsing:
    """Test normalization of command line values."""

    @pytest.mark.parametrize(
        "text,expected",
        [
            ("1/6", Fraction(1, 6)),
            ("-3/2", Fraction(-3, 2)),
            ("2", Fraction(2)),
            ("0.25", Fraction(1, 4)),
        ],
    )
    def test_rational(self, text, expected):
        """Test accepted rational forms."""
        assert parse_rational(text) == expected

    @pytest.mark.parametrize("text", ["abc", "1/", "1/2/3", ""])
    def test_bad_rational(self, text):
        """Test rejected rational forms."""
        with pytest.raises(ValueError):
            parse_rational(text)

    def test_rational_list(self):
        """Test comma separated exponents."""
        expected = (Fraction(1, 6), Fraction(1, 6), Fraction(-1, 3))
        assert parse_rational_list("1/6, 1/6,-1/3") == expected
        with pytest.raises(ValueError):
            parse_rational_list(",")

    @pytest.mark.parametrize(
        "text,expected",
        [
            ("0.35,0", 0.35 + 0j),
            ("0.3,-0.1", 0.3 - 0.1j),
            ("0.2+0.1i", 0.2 + 0.1j),
            ("0.5", 0.5 + 0j),
        ],
    )
    def test_complex(self, text, expected):
        """Test accepted complex forms."""
        assert parse_complex(text) == expected

    def test_format_rational(self):
        """Test rationals print the way they are read."""
        assert format_rational(Fraction(3)) == "3"
        assert format_rational(Fraction(-1, 4)) == "-1/4"


class TestThreads:
    """Test the worker cap from the environment."""

    def test_default(self, monkeypatch):
        """Test the default applies when unset."""
        monkeypatch.delenv(THREADS_ENV, raising=False)
        assert threads_from_env(3) == 3

    def test_from_env(self, monkeypatch):
        """Test an explicit value."""
        monkeypatch.setenv(THREADS_ENV, "5")
        assert threads_from_env(3) == 5

    @pytest.mark.parametrize("raw", ["0", "-2", "many"])
    def test_invalid(self, monkeypatch, raw):
        """Test invalid values raise."""
        monkeypatch.setenv(THREADS_ENV, raw)
        with pytest.raises(ValueError):
            threads_from_env()

    def test_config_frozen(self):
        """Test options cannot change once a run is configured."""
        config = RunConfig(command="verify", ids=("AW",))
        with pytest.raises(FrozenInstanceError):
            config.seed = 3
        assert replace(config, seed=3).seed == 3
        assert config.seed == 0


class TestRecords:
    """Test JSON rendering of records."""

    def test_jsonable(self):
        """Test complex numbers and rationals."""
        assert to_jsonable({"z": 1 + 2j, "a": Fraction(1, 3), "n": (1, 2)}) == {
            "z": [1.0, 2.0],
            "a": "1/3",
            "n": [1, 2],
        }

    def test_identity_report_errors(self):
        """Test errors and pass flag are derived from both sides."""
        report = IdentityReport(id="AW", draw_seed=0, lhs=1.0 + 1e-12j, rhs=1.0, tol=1e-10)
        assert report.abs_err == pytest.approx(1e-12)
        assert report.passed
        assert not IdentityReport(id="AW", draw_seed=0, lhs=1.1, rhs=1.0, tol=1e-10).passed

    def test_elapsed_only_with_timings(self):
        """Test wall times stay out of the default rendering."""
        report = IdentityReport(id="AW", draw_seed=0, lhs=1.0, rhs=1.0, tol=1e-10, elapsed=0.5)
        assert "elapsed" not in json.loads(report.to_json())
        assert json.loads(report.to_json(timings=True))["elapsed"] == 0.5

    def test_summary_ok(self):
        """Test a summary with errors is not ok."""
        assert CheckSummary(command="verify", total=2, passed=2).ok
        assert not CheckSummary(command="verify", total=2, passed=1, errors=1).ok


class SquareRunner(CheckRunner):
    """Compares job² with 1 or 0; job 3 raises."""

    def jobs(self):
        return list(range(6))

    def run_job(self, job):
        if job == 3:
            raise PoleError(0, 0)
        return IdentityReport(
            id="square",
            draw_seed=job,
            lhs=complex(job * job),
            rhs=1.0 if job % 2 else 0.0,
            tol=1e-10,
        )


class DivideRunner(CheckRunner):
    """Compares job / job with 1; job 0 divides by zero."""

    def jobs(self):
        return list(range(4))

    def run_job(self, job):
        return IdentityReport(
            id="divide", draw_seed=job, lhs=complex(job / job), rhs=1.0, tol=1e-10
        )


class TestCheckRunner:
    """Test the shared run loop."""

    def test_ordered_output(self, tmp_path):
        """Test records are written in job order with errors recorded."""
        out = tmp_path / "run.jsonl"
        summary = SquareRunner(RunConfig(command="square", out=str(out), threads=4)).run()
        lines = [json.loads(line) for line in out.read_text().splitlines()]
        assert [line.get("draw_seed") for line in lines] == [0, 1, 2, None, 4, 5]
        assert lines[3]["error"] == "PoleError"
        assert summary.total == 6
        assert summary.errors == 1
        assert summary.passed == 2
        assert summary.failed == 3
        assert not summary.ok

    def test_summary_printed(self, tmp_path, capsys):
        """Test the summary block goes to standard error."""
        out = tmp_path / "run.jsonl"
        SquareRunner(RunConfig(command="square", out=str(out))).run()
        captured = capsys.readouterr()
        assert "SQUARE SUMMARY" in captured.err
        assert "Errors: 1" in captured.err
        assert captured.out == ""

    def test_balanced_alpha(self):
        """Test exponents are checked before jobs run."""
        runner = SquareRunner(RunConfig(command="square", alpha=(Fraction(1, 2),) * 6))
        with pytest.raises(DomainError):
            runner.balanced_alpha()
        with pytest.raises(DomainError):
            SquareRunner(RunConfig(command="square")).balanced_alpha()

    def test_job_error_record(self):
        """Test a raised job becomes a failed record."""
        record = JobError(command="square", job="3", error="PoleError", message="pole")
        assert not record.passed
        assert json.loads(record.to_json())["job"] == "3"

    def test_unexpected_job_error(self, tmp_path):
        """Test an arithmetic error in one job is recorded and the rest still run."""
        out = tmp_path / "run.jsonl"
        summary = DivideRunner(RunConfig(command="divide", out=str(out), threads=2)).run()
        lines = [json.loads(line) for line in out.read_text().splitlines()]
        assert lines[0]["error"] == "ZeroDivisionError"
        assert not lines[0]["passed"]
        assert [line.get("draw_seed") for line in lines[1:]] == [1, 2, 3]
        assert summary.errors == 1
        assert summary.passed == 3

    def test_explicit_jobs(self, tmp_path):
        """Test jobs built ahead of the run are used as given."""
        out = tmp_path / "run.jsonl"
        summary = SquareRunner(RunConfig(command="square", out=str(out))).run([0, 1])
        assert summary.total == 2
        assert summary.passed == 2


class TestLogging:
    """Test logger setup."""

    def test_levels(self):
        """Test quiet and verbose levels."""
        assert setup_logging(quiet=True).level == logging.ERROR
        assert setup_logging(verbose=1).level == logging.DEBUG
        assert setup_logging().level == logging.INFO

    def test_child_logger(self):
        """Test child loggers hang off the package logger."""
        assert get_logger("quad").name == "qlimit.quad"
        assert get_logger().name == "qlimit"

    def test_module_tag(self):
        """Test debug records name the module that logged them."""
        stream = io.StringIO()
        setup_logging(verbose=1, stream=stream)
        get_logger("quad").debug("crossed 3 poles")
        get_logger().info("run started")
        assert stream.getvalue().splitlines() == [
            "DEBUG [quad] crossed 3 poles",
            "INFO [qlimit] run started",
        ]

    def test_color_only_on_terminals(self):
        """Test escape codes are added only when asked for."""
        record = logging.LogRecord("qlimit.tiling", logging.WARNING, "", 0, "gap", None, None)
        plain = ColoredFormatter("%(levelname)s %(message)s").format(record)
        colored = ColoredFormatter("%(levelname)s %(message)s", use_color=True).format(record)
        assert plain == "WARNING gap"
        assert colored == "\033[33mWARNING\033[0m gap"
        assert record.levelname == "WARNING"
