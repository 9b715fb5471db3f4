"""The root systems E8 > E7 > E6 and the affine E6 action on (α; ζ).

A point (α; ζ) with Σα = 1 is embedded in eight coordinates as
(α_1, ..., α_6, 1/2 - ζ, ζ - 1/2). Reflections in E6 roots preserve this
subspace, and fob is invariant under them, under root translations and
under ζ -> -ζ.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from functools import cache

from .asym import as_fractions
from .errors import ContractError, DomainError, ReductionError
from .log import get_logger

logger = get_logger("weyl")

HALF = Fraction(1, 2)
RHO = (HALF,) * 8
MAX_REDUCTION_STEPS = 10000


class RootSystem(StrEnum):
    E6 = "E6"
    E7 = "E7"
    E8 = "E8"


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b, strict=True)), Fraction(0))


@dataclass(frozen=True, order=True)
class Root:
    """A vector of norm 2 in Z^8 or Z^8 + ρ with integral product against ρ."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        coords = as_fractions(self.coords)
        object.__setattr__(self, "coords", coords)
        if len(coords) != 8:
            raise ContractError(f"roots have 8 coordinates, got {len(coords)}")
        doubled = {(2 * c).denominator for c in coords}
        parities = {(2 * c).numerator % 2 for c in coords}
        if doubled != {1} or len(parities) != 1:
            raise ContractError(f"not in Z^8 or Z^8 + ρ: {coords}")
        if _dot(coords, coords) != 2 or _dot(coords, RHO).denominator != 1:
            raise ContractError(f"not an E8 root: {coords}")

    def __neg__(self) -> Root:
        return Root(tuple(-c for c in self.coords))

    def dot(self, other: Sequence[Fraction]) -> Fraction:
        return _dot(self.coords, other)


def _in_system(coords: Sequence[Fraction], system: RootSystem) -> bool:
    if system is RootSystem.E8:
        return True
    if _dot(coords, RHO) != 0:
        return False
    if system is RootSystem.E7:
        return True
    return coords[6] + coords[7] == 0


@cache
def roots(system: RootSystem | str = RootSystem.E6) -> frozenset[Root]:
    """All roots of E8, or of the subsystems orthogonal to ρ (E7) and also to e_7 + e_8 (E6)."""
    system = RootSystem(system)
    found = set()
    integral = itertools.product((-1, 0, 1), repeat=8)
    half = itertools.product((-HALF, HALF), repeat=8)
    for candidate in itertools.chain(integral, half):
        coords = tuple(Fraction(c) for c in candidate)
        if _dot(coords, coords) != 2 or _dot(coords, RHO).denominator != 1:
            continue
        if _in_system(coords, system):
            found.add(Root(coords))
    return frozenset(found)


def _unit(i: int, j: int) -> Root:
    coords = [Fraction(0)] * 8
    coords[i], coords[j] = Fraction(1), Fraction(-1)
    return Root(tuple(coords))


U_ROOT = Root((-HALF, -HALF, -HALF, HALF, HALF, HALF, HALF, -HALF))
"""The simple root outside the permutation roots; its reflection mixes α and ζ."""

SIMPLE_ROOTS: tuple[Root, ...] = (*(_unit(r, r + 1) for r in range(5)), U_ROOT)
LONGEST_ROOT = _unit(6, 7)


def simple_root_coefficients(root: Root) -> tuple[Fraction, ...]:
    """Coefficients of an E6 root in the basis e_r - e_{r+1} (r = 1..5), u."""
    c_u = 2 * root.coords[6]
    rest = [root.coords[i] - c_u * U_ROOT.coords[i] for i in range(6)]
    if sum(rest) != 0 or root.coords[6] + root.coords[7] != 0:
        raise ContractError(f"not an E6 root: {root.coords}")
    return (*itertools.accumulate(rest[:5]), c_u)


@dataclass(frozen=True)
class PointAZ:
    """Exponents α (Σα = 1) together with the contour shift ζ."""

    alpha: tuple[Fraction, ...]
    zeta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_fractions(self.alpha))
        object.__setattr__(self, "zeta", Fraction(self.zeta))
        if len(self.alpha) != 6:
            raise DomainError(f"need 6 exponents, got {len(self.alpha)}")
        if sum(self.alpha) != 1:
            raise DomainError(f"exponents sum to {sum(self.alpha)}, expected 1")

    def embed(self) -> tuple[Fraction, ...]:
        return (*self.alpha, HALF - self.zeta, self.zeta - HALF)

    @classmethod
    def from_coords(cls, coords: Sequence[Fraction]) -> PointAZ:
        if coords[6] + coords[7] != 0:
            raise ContractError("point left the subspace v_7 + v_8 = 0")
        return cls(tuple(coords[:6]), HALF - coords[6])


def reflect(root: Root, point: PointAZ) -> PointAZ:
    """The reflection v -> v - (v.r) r for an E6 root r."""
    if root not in roots(RootSystem.E6):
        raise ContractError(f"reflections are only defined for E6 roots: {root.coords}")
    v = point.embed()
    c = root.dot(v)
    return PointAZ.from_coords(tuple(x - c * r for x, r in zip(v, root.coords, strict=True)))


def translate(root: Root, point: PointAZ, times: int = 1) -> PointAZ:
    """Translation by an integer multiple of an E6 root."""
    if root not in roots(RootSystem.E6):
        raise ContractError(f"translations are only defined for E6 roots: {root.coords}")
    v = point.embed()
    return PointAZ.from_coords(tuple(x + times * r for x, r in zip(v, root.coords, strict=True)))


def negate_zeta(point: PointAZ) -> PointAZ:
    """The affine reflection in the wall v . (e_7 - e_8) = 1, i.e. ζ -> -ζ."""
    return PointAZ(point.alpha, -point.zeta)


def negating_reflection(point: PointAZ, w: Sequence[int]) -> PointAZ:
    """α -> w - α for integral w with Σw = 2; this negates fob."""
    if len(w) != 6 or sum(w) != 2 or any(Fraction(x).denominator != 1 for x in w):
        raise ContractError(f"need six integers summing to 2, got {tuple(w)}")
    return PointAZ(tuple(Fraction(x) - a for x, a in zip(w, point.alpha, strict=True)), point.zeta)


def swap_map(point: PointAZ) -> PointAZ:
    """The composite fob-negating map that sends α_6 + ζ to -(α_6 + ζ).

    It combines α -> w - α with translations, ζ -> -ζ, permutations and two
    reflections in u, and maps the affine fundamental domain to itself.
    """
    a = point.alpha
    s = (a[4] + a[5]) / 2
    alpha = (a[0] + s, a[1] + s, a[2] + s, a[3] + s, point.zeta - s, -point.zeta - s)
    return PointAZ(alpha, (a[4] - a[5]) / 2)


def in_affine_domain(point: PointAZ) -> bool:
    """α_1 >= ... >= α_6 and α_4 + α_5 + α_6 >= ζ >= 0."""
    a = point.alpha
    sorted_ok = all(a[r] >= a[r + 1] for r in range(5))
    return sorted_ok and a[3] + a[4] + a[5] >= point.zeta >= 0


def in_extended_domain(point: PointAZ) -> bool:
    return in_affine_domain(point) and point.alpha[5] >= -point.zeta


def _sort_step(point: PointAZ) -> tuple[PointAZ, str] | None:
    a = point.alpha
    for r in range(5):
        if a[r] < a[r + 1]:
            return reflect(SIMPLE_ROOTS[r], point), f"s{r + 1}"
    return None


def reduce_affine(point: PointAZ) -> tuple[PointAZ, list[str]]:
    """Move a point into the fundamental domain of the affine E6 Weyl group.

    Each step reflects in one violated wall of the domain: an adjacent
    transposition ``s1``..``s5``, the reflection ``su`` or ``s0`` (ζ -> -ζ).
    Every such step reduces the number of walls separating the point from
    the domain, so the loop terminates.

    Returns:
        The reduced point and the word of generators applied, in order

    Raises:
        ReductionError: If the step cap is hit, which indicates a bug
    """
    word: list[str] = []
    current = point
    for _ in range(MAX_REDUCTION_STEPS):
        step = _sort_step(current)
        if step is not None:
            current, name = step
            word.append(name)
            continue
        if current.zeta < 0:
            current = negate_zeta(current)
            word.append("s0")
            continue
        a = current.alpha
        if a[3] + a[4] + a[5] < current.zeta:
            current = reflect(U_ROOT, current)
            word.append("su")
            continue
        logger.debug(f"reduced in {len(word)} steps")
        return current, word
    raise ReductionError(f"affine reduction did not terminate from {point}")


def reduce_extended(point: PointAZ) -> tuple[PointAZ, list[str], int]:
    """Reduce modulo the affine Weyl group together with the negating reflection.

    Returns:
        (point, word, sign) with fob(point) = sign * fob(original); the word
        marks each use of the negating map with ``neg``
    """
    current, word = reduce_affine(point)
    sign = 1
    for _ in range(MAX_REDUCTION_STEPS):
        if current.alpha[5] + current.zeta >= 0:
            return current, word, sign
        current = swap_map(current)
        word.append("neg")
        sign = -sign
        current, more = reduce_affine(current)
        word.extend(more)
    raise ReductionError(f"extended reduction did not terminate from {point}")
