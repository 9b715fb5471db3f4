"""Report records and their JSON lines rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from fractions import Fraction
from typing import Any

import numpy as np


def to_jsonable(value: Any) -> Any:
    """Complex numbers become [re, im], rationals "a/b" strings."""
    if isinstance(value, bool) or value is None or isinstance(value, str | int):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, complex | np.complexfloating):
        return [float(value.real), float(value.imag)]
    if isinstance(value, float | np.floating):
        return float(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, list | tuple | np.ndarray):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "to_dict"):
        return value.to_dict()
    return str(value)


def relative_error(lhs: complex, rhs: complex) -> float:
    return abs(lhs - rhs) / max(abs(rhs), 1e-300)


class Record:
    """Mixin giving dataclasses a stable JSON form.

    ``elapsed`` is wall time and is only written when timings are requested.
    """

    def to_dict(self, timings: bool = False) -> dict[str, Any]:
        out = {}
        for f in fields(self):
            if f.name == "elapsed" and not timings:
                continue
            out[f.name] = to_jsonable(getattr(self, f.name))
        return out

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), ensure_ascii=False)


@dataclass
class IdentityReport(Record):
    """One evaluation of both sides of an identity."""

    id: str
    draw_seed: int
    lhs: complex
    rhs: complex
    abs_err: float = 0.0
    rel_err: float = 0.0
    tol: float = 0.0
    passed: bool = False
    terms_used: int = 0
    quadrature_n: int = 0
    corrected: bool = False
    params: dict[str, Any] = field(default_factory=dict)
    note: str = ""
    redraws: dict[str, int] = field(default_factory=dict)
    evaluation_error: str = ""
    elapsed: float = 0.0

    def __post_init__(self):
        self.abs_err = abs(self.lhs - self.rhs)
        self.rel_err = relative_error(self.lhs, self.rhs)
        self.passed = bool(self.rel_err < self.tol) if self.tol else self.passed


@dataclass
class TraceReport(Record):
    """Rescaled integrals along p = x q^v against their limit."""

    alpha: tuple[Fraction, ...]
    x: complex
    q: complex
    zeta: Fraction = Fraction(0)
    step: int = 1
    method: str = ""
    step_exponents: list[int] = field(default_factory=list)
    values: list[complex] = field(default_factory=list)
    target: complex = 0j
    errors: list[float] = field(default_factory=list)
    residues_used: list[int] = field(default_factory=list)
    skipped: list[int] = field(default_factory=list)
    fob_zero: bool = False
    sob_consistent: bool = False
    converged: bool = False
    tol: float = 1e-6
    note: str = ""
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.converged


@dataclass
class ClassifyReport(Record):
    """Tiles containing α, the correct ζ and the kind of limit there."""

    alpha: tuple[Fraction, ...]
    tiles: list[str] = field(default_factory=list)
    dimensions: list[int] = field(default_factory=list)
    zeta: Fraction = Fraction(0)
    kind: str = ""
    zeta_candidates: list[Fraction] = field(default_factory=list)
    interior: bool = False
    fob_zero: bool = False
    sob_consistent: bool = False
    minima: list[tuple[Fraction, Fraction]] = field(default_factory=list)
    maxima: list[tuple[Fraction, Fraction]] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.fob_zero


@dataclass
class ReductionReport(Record):
    """A point (α; ζ) moved into the fundamental domain."""

    alpha: tuple[Fraction, ...]
    zeta: Fraction
    reduced_alpha: tuple[Fraction, ...]
    reduced_zeta: Fraction
    word: list[str] = field(default_factory=list)
    sign: int = 1
    fob_before: Fraction = Fraction(0)
    fob_after: Fraction = Fraction(0)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.fob_after == self.sign * self.fob_before


@dataclass
class JobError(Record):
    """A job that raised instead of producing a report."""

    command: str
    job: str
    error: str
    message: str

    @property
    def passed(self) -> bool:
        return False

    def to_dict(self, timings: bool = False) -> dict[str, Any]:
        return {**super().to_dict(timings), "passed": False}


@dataclass
class CheckSummary(Record):
    """Totals of a run, written to standard error."""

    command: str
    total: int = 0
    passed: int = 0
    failed: int = 0
    errors: int = 0
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.errors == 0
