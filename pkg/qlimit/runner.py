"""Shared run loop for the check commands."""

import time
from abc import ABC, abstractmethod
from collections.abc import Iterator
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from typing import IO, Any, Protocol

import click

from .asym import BalancedVector
from .errors import DomainError
from .log import get_logger, timed
from .report import CheckSummary, JobError
from .schema import RunConfig


class CheckRecord(Protocol):
    """Protocol for report records (identity checks, traces, classifications, etc.)."""

    @property
    def passed(self) -> bool: ...

    def to_json(self, timings: bool = False) -> str: ...


@contextmanager
def open_output(out: str | None) -> Iterator[IO[str]]:
    """The JSONL destination: ``out`` if given, otherwise standard output."""
    with click.open_file(out or "-", mode="w", encoding="utf-8") as stream:
        yield stream


class CheckRunner(ABC):
    """Base class for check commands.

    Subclasses list their jobs and turn one job into one record. Jobs run on
    a thread pool capped by ``config.threads``; records are written in job
    order whatever order they complete in.
    """

    def __init__(self, config: RunConfig):
        self.config = config
        self.command = config.command
        self.logger = get_logger()

    @abstractmethod
    def jobs(self) -> list[Any]:
        """Inputs of the run, in output order."""
        pass

    @abstractmethod
    def run_job(self, job: Any) -> CheckRecord:
        """Produce the record for one job."""
        pass

    def balanced_alpha(self) -> tuple:
        """The configured exponents, checked before any job runs.

        Raises:
            DomainError: If no exponents were given or they are not balanced
        """
        if self.config.alpha is None:
            raise DomainError(f"{self.command} needs exponents")
        return BalancedVector(self.config.alpha).alpha

    def describe(self, record: CheckRecord) -> str:
        """One line for the log."""
        return "pass" if record.passed else "FAIL"

    def _guarded(self, job: Any) -> CheckRecord:
        try:
            return self.run_job(job)
        except Exception as e:
            self.logger.error(f"{self.command} {job}: {type(e).__name__}: {e}")
            return JobError(
                command=self.command, job=str(job), error=type(e).__name__, message=str(e)
            )

    def run(self, jobs: list[Any] | None = None) -> CheckSummary:
        """Run every job, write the JSONL records and print the summary.

        Any exception a job raises becomes a ``JobError`` record; the other
        jobs still run. ``jobs`` defaults to ``self.jobs()``.
        """
        start = time.perf_counter()
        if jobs is None:
            jobs = self.jobs()
        threads = max(1, min(self.config.threads, len(jobs)))
        self.logger.info(f"{self.command}: {len(jobs)} job(s) on {threads} thread(s)")

        with timed(self.logger, f"{self.command} jobs"), ThreadPoolExecutor(threads) as pool:
            records = list(pool.map(self._guarded, jobs))

        summary = CheckSummary(command=self.command, total=len(records))
        with open_output(self.config.out) as stream:
            for job, record in zip(jobs, records, strict=True):
                stream.write(record.to_json(timings=self.config.timings) + "\n")
                if isinstance(record, JobError):
                    summary.errors += 1
                elif record.passed:
                    summary.passed += 1
                else:
                    summary.failed += 1
                self.logger.debug(f"{job}: {self.describe(record)}")
        summary.elapsed = time.perf_counter() - start

        self.print_summary(summary)
        return summary

    def print_summary(self, summary: CheckSummary) -> None:
        """Print run summary to standard error."""
        click.echo("=" * 60, err=True)
        click.echo(f"{summary.command.upper()} SUMMARY", err=True)
        click.echo("=" * 60, err=True)
        click.echo(f"Total: {summary.total}", err=True)
        click.echo(f"Passed: {summary.passed}", err=True)
        click.echo(f"Failed: {summary.failed}", err=True)
        click.echo(f"Errors: {summary.errors}", err=True)
        if self.config.timings:
            click.echo(f"Elapsed: {summary.elapsed:.2f}s", err=True)
        if self.config.out:
            click.echo(f"Reports written to {self.config.out}", err=True)
        click.echo("=" * 60, err=True)
