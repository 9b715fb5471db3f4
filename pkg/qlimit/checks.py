"""Runners for the checks on the exponent space: classify, cover, weyl-reduce, beta-check."""

import time

from .asym import fob
from .quad import beta_check
from .report import ClassifyReport, IdentityReport, ReductionReport
from .runner import CheckRunner
from .tiling import CoverReport, classify, second_order_consistent, verify_cover
from .weyl import PointAZ, reduce_affine, reduce_extended


class ClassifyRunner(CheckRunner):
    """Classify one exponent vector."""

    def jobs(self) -> list[tuple]:
        return [self.balanced_alpha()]

    def run_job(self, job: tuple) -> ClassifyReport:
        start = time.perf_counter()
        assignment = classify(job)
        extrema = assignment.extrema
        return ClassifyReport(
            alpha=assignment.alpha,
            tiles=[tile.label() for tile, _ in assignment.tiles],
            dimensions=[dim for _, dim in assignment.tiles],
            zeta=assignment.correct_zeta,
            kind=str(assignment.limit_kind),
            zeta_candidates=assignment.zeta_candidates,
            interior=assignment.interior,
            fob_zero=fob(assignment.alpha, assignment.correct_zeta) == 0,
            sob_consistent=second_order_consistent(assignment),
            minima=[(iv.lo, iv.hi) for iv in extrema.global_minima()],
            maxima=[(iv.lo, iv.hi) for iv in extrema.global_maxima()],
            elapsed=time.perf_counter() - start,
        )

    def describe(self, record) -> str:
        if isinstance(record, ClassifyReport):
            return f"{', '.join(record.tiles)} ζ = {record.zeta} ({record.kind})"
        return super().describe(record)


class CoverRunner(CheckRunner):
    """Classify random generic vectors and check the cover is a tiling."""

    def jobs(self) -> list[int]:
        return [self.config.seed]

    def run_job(self, job: int) -> CoverReport:
        return verify_cover(self.config.samples, job)


class WeylReduceRunner(CheckRunner):
    def jobs(self) -> list[PointAZ]:
        return [PointAZ(self.balanced_alpha(), self.config.zeta)]

    def run_job(self, job: PointAZ) -> ReductionReport:
        start = time.perf_counter()
        if self.config.extended:
            reduced, word, sign = reduce_extended(job)
        else:
            (reduced, word), sign = reduce_affine(job), 1
        return ReductionReport(
            alpha=job.alpha,
            zeta=job.zeta,
            reduced_alpha=reduced.alpha,
            reduced_zeta=reduced.zeta,
            word=word,
            sign=sign,
            fob_before=fob(job.alpha, job.zeta),
            fob_after=fob(reduced.alpha, reduced.zeta),
            elapsed=time.perf_counter() - start,
        )

    def describe(self, record) -> str:
        if isinstance(record, ReductionReport):
            return f"{len(record.word)} generator(s), sign {record.sign:+d}"
        return super().describe(record)


class BetaCheckRunner(CheckRunner):
    """Evaluate the elliptic beta integral on ``samples`` draws."""

    def jobs(self) -> list[int]:
        return [self.config.seed + index for index in range(self.config.samples)]

    def run_job(self, job: int) -> IdentityReport:
        kwargs = {"tol": self.config.tol} if self.config.tol is not None else {}
        return beta_check(1, job, **kwargs)[0]
