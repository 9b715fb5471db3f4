"""Runners for the catalog commands: verify, trace and the catalog audit."""

from dataclasses import dataclass
from fractions import Fraction

from ..report import IdentityReport, Record, TraceReport
from ..runner import CheckRunner
from . import registry
from .trace import trace


@dataclass
class EntryRecord(Record):
    """A catalog entry with the classification of its face."""

    id: str
    face: tuple
    zeta: Fraction
    kind: str
    tol: float
    corrected: bool
    factors: int
    consistent: bool
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.consistent


class VerifyRunner(CheckRunner):
    """Verify identities on ``samples`` consecutive seeds each."""

    def jobs(self) -> list[tuple[str, int]]:
        ids = self.config.ids or tuple(entry.id for entry in registry.entries())
        for identity_id in ids:
            registry.get(identity_id)
        return [
            (identity_id, self.config.seed + index)
            for identity_id in ids
            for index in range(self.config.samples)
        ]

    def run_job(self, job: tuple[str, int]) -> IdentityReport:
        identity_id, draw_seed = job
        return registry.verify(identity_id, draw_seed, tol=self.config.tol, q=self.config.q)

    def describe(self, record) -> str:
        if isinstance(record, IdentityReport):
            return f"rel_err {record.rel_err:.2e} (tol {record.tol:.0e})"
        return super().describe(record)


class TraceRunner(CheckRunner):
    def jobs(self) -> list[int]:
        self.balanced_alpha()
        return [self.config.seed + index for index in range(self.config.samples)]

    def run_job(self, job: int) -> TraceReport:
        kwargs = {"tol": self.config.tol} if self.config.tol is not None else {}
        return trace(
            self.config.alpha,
            x=self.config.x,
            q=self.config.q,
            steps=self.config.steps,
            seed=job,
            broken=self.config.broken,
            **kwargs,
        )

    def describe(self, record) -> str:
        if isinstance(record, TraceReport) and record.errors:
            return f"final error {record.errors[-1]:.2e} after {len(record.errors)} steps"
        return super().describe(record)


class CatalogRunner(CheckRunner):
    """List the catalog, checking each face against the tiling."""

    def jobs(self) -> list[str]:
        ids = list(self.config.ids) or [entry.id for entry in registry.entries()]
        for identity_id in ids:
            registry.get(identity_id)
        return ids

    def run_job(self, job: str) -> EntryRecord:
        entry = registry.get(job)
        return EntryRecord(
            id=entry.id,
            face=entry.face_vector.alpha,
            zeta=entry.zeta,
            kind=str(entry.kind),
            tol=entry.tol,
            corrected=entry.corrected,
            factors=entry.factor_count,
            consistent=registry.tiling_consistent(entry),
            note=entry.note,
        )
