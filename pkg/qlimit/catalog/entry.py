"""Catalog entries: a face vector, both sides of its identity and how to draw parameters."""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction

import numpy as np

from ..asym import BalancedVector
from ..quad import random_phase
from ..tiling import LimitKind
from .expr import Env, Evaluation, Monomial, Term, evaluate_side, monomial

DEFAULT_RANGE = (0.1, 0.75)
SPECTATOR_RANGE = (0.5, 1.5)
BALANCED_RANGE = (0.5, 0.95)
"""Moduli of the free parameters of a balanced draw; keeps the solved one moderate."""

SPECTATORS = frozenset({"x", "w", "v"})


class EntryKind(StrEnum):
    INTEGRAL = "integral"
    UNILATERAL = "unilateral"
    BILATERAL = "bilateral"
    MIXED = "mixed"

    @property
    def limit_kinds(self) -> frozenset[LimitKind]:
        """Limit kinds of a face at ζ that can produce this kind of identity.

        Bilateral series only arise around a maximum. An integral needs a
        contour away from a strict maximum.
        """
        match self:
            case EntryKind.INTEGRAL:
                return frozenset({LimitKind.INTEGRAL_AT_MIN, LimitKind.ONE_SIDED})
            case EntryKind.UNILATERAL:
                return frozenset(LimitKind)
            case EntryKind.BILATERAL | EntryKind.MIXED:
                return frozenset({LimitKind.SERIES_AT_MAX})


@dataclass(frozen=True)
class Bound:
    """lo < |expr| < hi on a draw."""

    expr: Monomial
    lo: float = 0.0
    hi: float = math.inf

    def holds(self, env: Env) -> bool:
        value = abs(self.expr(env))
        return self.lo < value < self.hi


def bound(text: str, lo: float = 0.0, hi: float = math.inf) -> Bound:
    return Bound(monomial(text), lo, hi)


@dataclass(frozen=True)
class DrawSpec:
    """Random parameters for an entry.

    Free parameters get a random phase and a modulus from their range;
    ``derived`` parameters are computed in order, typically from the
    balancing condition.
    """

    free: tuple[str, ...] = ()
    derived: tuple[tuple[str, Monomial], ...] = ()
    ranges: Mapping[str, tuple[float, float]] = field(default_factory=dict)
    bounds: tuple[Bound, ...] = ()

    def range_for(self, name: str) -> tuple[float, float]:
        if name in self.ranges:
            return self.ranges[name]
        return SPECTATOR_RANGE if name in SPECTATORS else DEFAULT_RANGE

    def draw(self, rng: np.random.Generator, q: complex) -> dict[str, complex]:
        env: dict[str, complex] = {"q": complex(q)}
        for name in self.free:
            env[name] = random_phase(rng, *self.range_for(name))
        for name, expr in self.derived:
            env[name] = complex(expr(env))
        return env

    def admissible(self, env: Env) -> bool:
        return all(b.holds(env) for b in self.bounds)

    @property
    def names(self) -> tuple[str, ...]:
        return (*self.free, *(name for name, _ in self.derived))


def draw_spec(
    free: str,
    derived: Mapping[str, str] | None = None,
    ranges: Mapping[str, tuple[float, float]] | None = None,
    bounds: Sequence[Bound] = (),
) -> DrawSpec:
    """``free`` is a space separated list of names."""
    return DrawSpec(
        free=tuple(free.split()),
        derived=tuple((name, monomial(text)) for name, text in (derived or {}).items()),
        ranges=dict(ranges or {}),
        bounds=tuple(bounds),
    )


def balanced_draw(
    free: str = "t1 t2 t3 t4 t5",
    last: str = "t6",
    extra: str = "",
    ranges: Mapping[str, tuple[float, float]] | None = None,
    bounds: Sequence[Bound] = (),
) -> DrawSpec:
    """Parameters with product q, the last one solved for."""
    names = free.split()
    all_ranges = {name: BALANCED_RANGE for name in names}
    all_ranges.update(ranges or {})
    solved = "q/" + "/".join(names)
    return draw_spec(f"{free} {extra}", {last: solved}, all_ranges, bounds)


def face(*values: int | str | Fraction) -> BalancedVector:
    return BalancedVector(tuple(Fraction(v) for v in values))


@dataclass(frozen=True)
class IdentityEntry:
    """One limit identity keyed by the face vector it is obtained from.

    ``lhs`` and ``rhs`` are sums of terms; identities of the form
    ``1 = Σ terms`` keep the terms on the left. ``zeta`` is the contour
    shift in [0, 1/2] the identity is derived at. ``corrected`` marks
    displays that differ from the commonly cited form.
    """

    id: str
    face_vector: BalancedVector
    zeta: Fraction
    kind: EntryKind
    lhs: tuple[Term, ...]
    rhs: tuple[Term, ...]
    draw: DrawSpec
    tol: float = 1e-10
    corrected: bool = False
    note: str = ""

    def __post_init__(self):
        object.__setattr__(self, "zeta", Fraction(self.zeta))

    def evaluate(self, env: Env) -> tuple[Evaluation, Evaluation]:
        return evaluate_side(self.lhs, env), evaluate_side(self.rhs, env)

    @property
    def factor_count(self) -> int:
        """Number of transcribed factors over both sides."""
        return sum(term.prefactor.factor_count for term in (*self.lhs, *self.rhs))

    def face_label(self) -> str:
        return "(" + ", ".join(str(a) for a in self.face_vector) + ")"
