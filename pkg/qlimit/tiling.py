"""The tiling of balanced exponent space by simplices and cross polytopes.

Each tile dictates the correct contour shift ζ and whether the limit is an
integral (correct ζ minimizes the integrand) or a residue series (it
maximizes it). Tile indices are 1-based as in the usual notation
P_{II,β,a} and P_{III,β,{a,b,c}}.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction

import numpy as np

from .asym import (
    ExtremaReport,
    as_fractions,
    fob,
    fob_extrema,
    frac,
    is_generic,
    sob_exponents,
)
from .errors import ContractError, DomainError
from .log import get_logger
from .report import Record

logger = get_logger("tiling")

HALF = Fraction(1, 2)
RHO6 = (HALF,) * 6


class TileFamily(StrEnum):
    P_I = "P_I"
    P_I_HAT = "P_I_hat"
    P_II = "P_II"
    P_III = "P_III"
    P_III_HAT = "P_III_hat"

    @property
    def hatted(self) -> bool:
        return self in (TileFamily.P_I_HAT, TileFamily.P_III_HAT)


class LimitKind(StrEnum):
    INTEGRAL_AT_MIN = "integral_at_min"
    SERIES_AT_MAX = "series_at_max"
    ONE_SIDED = "one_sided"


def _is_integral(values: Sequence[Fraction]) -> bool:
    return all(v.denominator == 1 for v in values)


def _is_half_integral(values: Sequence[Fraction]) -> bool:
    return all((v - HALF).denominator == 1 for v in values)


def normalize_zeta(zeta: Fraction) -> Fraction:
    """Representative of ζ in [0, 1/2] modulo ζ -> ζ + 1 and ζ -> -ζ."""
    z = frac(Fraction(zeta))
    return min(z, 1 - z)


@dataclass(frozen=True)
class AffineForm:
    """The inequality coeffs . α + const >= 0."""

    coeffs: tuple[Fraction, ...]
    const: Fraction

    def __call__(self, alpha: Sequence[Fraction]) -> Fraction:
        return sum((c * a for c, a in zip(self.coeffs, alpha, strict=True)), self.const)


def _form(const, **terms) -> AffineForm:
    coeffs = [Fraction(0)] * 6
    for key, value in terms.items():
        coeffs[int(key[1:]) - 1] += value
    return AffineForm(tuple(coeffs), Fraction(const))


def _pair_form(r: int, s: int, sign: int, const: Fraction) -> AffineForm:
    coeffs = [Fraction(0)] * 6
    coeffs[r] += sign
    coeffs[s] += sign
    return AffineForm(tuple(coeffs), Fraction(const))


@dataclass(frozen=True)
class Tile:
    """One polytope of the tiling.

    ``base`` is β (sum 0) or γ (sum 2) for the hatted families. ``axis``
    is set for P_II and ``subset`` for the P_III families.
    """

    family: TileFamily
    base: tuple[Fraction, ...]
    axis: int | None = None
    subset: frozenset[int] | None = None

    def __post_init__(self):
        object.__setattr__(self, "family", TileFamily(self.family))
        object.__setattr__(self, "base", as_fractions(self.base))
        if self.subset is not None:
            object.__setattr__(self, "subset", frozenset(self.subset))

        if len(self.base) != 6:
            raise ContractError(f"tile base needs 6 entries, got {len(self.base)}")
        expected = 2 if self.family.hatted else 0
        if sum(self.base) != expected:
            raise ContractError(f"{self.family} base must sum to {expected}, got {sum(self.base)}")
        if not (_is_integral(self.base) or _is_half_integral(self.base)):
            raise ContractError(f"tile base must lie in Z^6 or Z^6 + ρ: {self.base}")

        if self.family in (TileFamily.P_III, TileFamily.P_III_HAT):
            if not _is_integral(self.base):
                raise ContractError(f"{self.family} base must be integral")
            if self.subset is None or len(self.subset) != 3 or not self.subset <= set(range(1, 7)):
                raise ContractError(f"{self.family} needs a 3-subset of 1..6")
        elif self.subset is not None:
            raise ContractError(f"{self.family} takes no subset")

        if self.family is TileFamily.P_II:
            if self.axis not in range(1, 7):
                raise ContractError("P_II needs an axis in 1..6")
        elif self.axis is not None:
            raise ContractError(f"{self.family} takes no axis")

    @property
    def integral_base(self) -> bool:
        return _is_integral(self.base)

    def complement(self) -> tuple[int, ...]:
        return tuple(sorted(set(range(1, 7)) - set(self.subset or ())))

    def label(self) -> str:
        base = ",".join(
            str(b.numerator) if b.denominator == 1 else f"{b.numerator}/{b.denominator}"
            for b in self.base
        )
        extra = ""
        if self.axis is not None:
            extra = f";{self.axis}"
        elif self.subset is not None:
            extra = ";{" + ",".join(map(str, sorted(self.subset))) + "}"
        return f"{self.family}[{base}{extra}]"

    def correct_zeta(self, alpha: Sequence[Fraction]) -> Fraction:
        """Correct ζ in this tile, normalized into [0, 1/2]."""
        if self.family in (TileFamily.P_I, TileFamily.P_I_HAT):
            return Fraction(0) if self.integral_base else HALF
        if self.family is TileFamily.P_II:
            return normalize_zeta(alpha[self.axis - 1])
        return normalize_zeta(sum(alpha[i - 1] for i in self.subset))


def _unit(r: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(i == r)) for i in range(6))


def _add(*vectors, signs=None) -> tuple[Fraction, ...]:
    signs = signs or (1,) * len(vectors)
    return tuple(
        sum((s * v[i] for s, v in zip(signs, vectors, strict=True)), Fraction(0)) for i in range(6)
    )


def p3_vertices(
    base: Sequence[Fraction], subset: Iterable[int], hatted: bool = False
) -> list[tuple[Fraction, ...]]:
    """Vertices of P_III(β, S) or its hat for any base in Z^6 or Z^6 + ρ.

    A half-integral base names the same simplex as an integral one with the
    complementary subset, which is why ``Tile`` only takes integral bases.
    """
    b = as_fractions(base)
    subset = sorted(subset)
    rest = [i for i in range(1, 7) if i not in subset]
    sign = -1 if hatted else 1
    vertices = [_add(b, _unit(r - 1), signs=(1, sign)) for r in subset]
    for x, y in ((rest[0], rest[1]), (rest[1], rest[2]), (rest[2], rest[0])):
        vertices.append(_add(b, RHO6, _unit(x - 1), _unit(y - 1), signs=(1, sign, -sign, -sign)))
    return vertices


def tile_geometry(tile: Tile) -> tuple[list[tuple[Fraction, ...]], list[AffineForm]]:
    """Vertices and bounding inequalities of a tile, both exact.

    Simplices have 6 vertices and 6 facets; the cross polytope P_II has 10
    vertices and 32 facets.
    """
    b = tile.base
    vertices: list[tuple[Fraction, ...]] = []
    forms: list[AffineForm] = []

    if tile.family is TileFamily.P_I:
        vertices = [_add(b, _unit(r)) for r in range(6)]
        forms = [_form(-b[r], **{f"a{r + 1}": 1}) for r in range(6)]

    elif tile.family is TileFamily.P_I_HAT:
        vertices = [_add(b, _unit(r), signs=(1, -1)) for r in range(6)]
        forms = [_form(b[r], **{f"a{r + 1}": -1}) for r in range(6)]

    elif tile.family is TileFamily.P_III:
        abc = [i - 1 for i in sorted(tile.subset)]
        d, e, f = (i - 1 for i in tile.complement())
        vertices = p3_vertices(b, tile.subset)
        for r, s in itertools.combinations(abc, 2):
            forms.append(_pair_form(r, s, -1, b[r] + b[s] + 1))
        for r, s in itertools.combinations((d, e, f), 2):
            forms.append(_pair_form(r, s, -1, b[r] + b[s]))

    elif tile.family is TileFamily.P_III_HAT:
        abc = [i - 1 for i in sorted(tile.subset)]
        d, e, f = (i - 1 for i in tile.complement())
        vertices = p3_vertices(b, tile.subset, hatted=True)
        for r, s in itertools.combinations(abc, 2):
            forms.append(_pair_form(r, s, 1, 1 - b[r] - b[s]))
        for r, s in itertools.combinations((d, e, f), 2):
            forms.append(_pair_form(r, s, 1, -b[r] - b[s]))

    else:
        a = tile.axis - 1
        others = [r for r in range(6) if r != a]
        vertices = [_add(b, _unit(r)) for r in others]
        vertices += [_add(b, RHO6, _unit(a), _unit(r), signs=(1, 1, -1, -1)) for r in others]
        # δ = α - β
        forms.append(_form(HALF - b[a], **{f"a{a + 1}": 1}))
        forms.append(_form(b[a], **{f"a{a + 1}": -1}))
        for r in others:
            lower = [Fraction(0)] * 6
            lower[r], lower[a] = Fraction(1), Fraction(-1)
            forms.append(AffineForm(tuple(lower), b[a] - b[r]))
            forms.append(AffineForm(tuple(-c for c in lower), 1 - b[a] + b[r]))
        for r, s in itertools.combinations(others, 2):
            forms.append(_pair_form(r, s, 1, -b[r] - b[s]))
            forms.append(_pair_form(r, s, -1, 1 + b[r] + b[s]))

    return vertices, forms


def _rank(rows: list[Sequence[Fraction]]) -> int:
    matrix = [list(row) for row in rows]
    rank = 0
    ncols = len(matrix[0]) if matrix else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(matrix)) if matrix[i][col] != 0), None)
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        for i in range(len(matrix)):
            if i != rank and matrix[i][col] != 0:
                factor = matrix[i][col] / matrix[rank][col]
                matrix[i] = [x - factor * y for x, y in zip(matrix[i], matrix[rank], strict=True)]
        rank += 1
    return rank


def face_dimension(tile: Tile, alpha: Sequence[Fraction]) -> int | None:
    """Dimension of the smallest face of ``tile`` containing α, or None if α is outside."""
    _, forms = tile_geometry(tile)
    values = [form(alpha) for form in forms]
    if any(v < 0 for v in values):
        return None
    active = [form.coeffs for form, v in zip(forms, values, strict=True) if v == 0]
    if not active:
        return 5
    return 6 - _rank([*active, (Fraction(1),) * 6])


def _lattice_points(lo: Fraction, hi: Fraction, half: bool) -> list[Fraction]:
    offset = HALF if half else Fraction(0)
    start = math.ceil(lo - offset)
    stop = math.floor(hi - offset)
    return [Fraction(k) + offset for k in range(start, stop + 1)]


def _bases(
    alpha: Sequence[Fraction],
    ranges: Sequence[tuple[Fraction, Fraction]],
    total: int,
    half: bool,
) -> Iterator[tuple[Fraction, ...]]:
    choices = [
        _lattice_points(alpha[r] + lo, alpha[r] + hi, half) for r, (lo, hi) in enumerate(ranges)
    ]
    for base in itertools.product(*choices):
        if sum(base) == total:
            yield base


def candidate_tiles(alpha: Sequence[Fraction]) -> Iterator[Tile]:
    """Tiles that could contain α, from the coordinate ranges of each family's vertices."""
    one, half = Fraction(1), HALF
    for lattice_half in (False, True):
        for base in _bases(alpha, [(-one, Fraction(0))] * 6, 0, lattice_half):
            yield Tile(TileFamily.P_I, base)
        for base in _bases(alpha, [(Fraction(0), one)] * 6, 2, lattice_half):
            yield Tile(TileFamily.P_I_HAT, base)
        for axis in range(1, 7):
            ranges = [(-one, half)] * 6
            ranges[axis - 1] = (Fraction(0), half)
            for base in _bases(alpha, ranges, 0, lattice_half):
                yield Tile(TileFamily.P_II, base, axis=axis)

    for subset in itertools.combinations(range(1, 7), 3):
        low = [(-one, half)] * 6
        high = [(-half, one)] * 6
        for i in subset:
            low[i - 1] = (-one, Fraction(0))
            high[i - 1] = (Fraction(0), one)
        for base in _bases(alpha, low, 0, False):
            yield Tile(TileFamily.P_III, base, subset=frozenset(subset))
        for base in _bases(alpha, high, 2, False):
            yield Tile(TileFamily.P_III_HAT, base, subset=frozenset(subset))


def translate_to_strip(alpha: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Sort α decreasingly and shift by balanced integer vectors until α_6 >= α_1 - 1."""
    a = sorted(as_fractions(alpha), reverse=True)
    while a[0] - a[-1] > 1:
        a[0] -= 1
        a[-1] += 1
        a.sort(reverse=True)
    return tuple(a)


@dataclass
class TileAssignment:
    """Result of :func:`classify`."""

    alpha: tuple[Fraction, ...]
    tiles: list[tuple[Tile, int]]
    correct_zeta: Fraction
    limit_kind: LimitKind
    extrema: ExtremaReport
    zeta_candidates: list[Fraction] = field(default_factory=list)

    @property
    def interior(self) -> bool:
        return len(self.tiles) == 1 and self.tiles[0][1] == 5


def classify(alpha: Sequence[Fraction]) -> TileAssignment:
    """Find every tile containing α with its correct ζ and limit kind.

    Face points return all incident tiles; their correct ζ values are
    deduplicated and the smallest one with vanishing fob is reported.
    """
    a = as_fractions(alpha)
    if len(a) != 6 or sum(a) != 1:
        raise DomainError(f"need 6 exponents summing to 1, got {a}")

    tiles = []
    for tile in candidate_tiles(a):
        dim = face_dimension(tile, a)
        if dim is not None:
            tiles.append((tile, dim))
    if not tiles:
        raise ContractError(f"no tile contains {a}; the tile search is incomplete")

    candidates = sorted({tile.correct_zeta(a) for tile, _ in tiles})
    vanishing = [z for z in candidates if fob(a, z) == 0]
    if not vanishing:
        raise ContractError(f"fob does not vanish at any correct ζ candidate for {a}")
    zeta = vanishing[0]

    extrema = fob_extrema(translate_to_strip(a))
    if any(iv.contains(zeta) for iv in extrema.global_minima()):
        kind = LimitKind.INTEGRAL_AT_MIN
    elif any(iv.contains(zeta) for iv in extrema.global_maxima()):
        kind = LimitKind.SERIES_AT_MAX
    else:
        kind = LimitKind.ONE_SIDED

    logger.debug(f"{[t.label() for t, _ in tiles]} -> ζ = {zeta}, {kind}")
    return TileAssignment(
        alpha=a,
        tiles=tiles,
        correct_zeta=zeta,
        limit_kind=kind,
        extrema=extrema,
        zeta_candidates=candidates,
    )


def limit_kinds_at(assignment: TileAssignment, zeta: Fraction) -> frozenset[LimitKind]:
    """Every limit kind the face admits at ζ.

    Faces where fob is flat are global minima and maxima at once, so a
    single face can give both integral and series limits.
    """
    zeta = normalize_zeta(Fraction(zeta))
    extrema = assignment.extrema
    kinds = set()
    if any(iv.contains(zeta) for iv in extrema.global_minima()):
        kinds.add(LimitKind.INTEGRAL_AT_MIN)
    if any(iv.contains(zeta) for iv in extrema.global_maxima()):
        kinds.add(LimitKind.SERIES_AT_MAX)
    return frozenset(kinds or {LimitKind.ONE_SIDED})


def second_order_consistent(assignment: TileAssignment) -> bool:
    """Check the second order behavior at the correct ζ.

    It is the trivial monomial except inside P_II tiles, where it has the
    form (u_a z^{∓1})^e: only u_a and z carry exponents, of equal size.
    """
    a, zeta = assignment.alpha, assignment.correct_zeta
    family_axes = [tile.axis for tile, _ in assignment.tiles if tile.family is TileFamily.P_II]
    if sob_exponents(a, zeta).is_trivial():
        return True
    if not assignment.interior or not family_axes:
        return False

    axis = family_axes[0] - 1
    ref = (axis + 1) % 6
    raw = sob_exponents(a, zeta, reduce_balancing=False).balanced(ref=ref)
    others_zero = all(e == 0 for r, e in enumerate(raw.u_exp) if r != axis)
    return (
        raw.x_exp == 0
        and raw.q_exp == 0
        and others_zero
        and abs(raw.u_exp[axis]) == abs(raw.z_exp)
    )


def random_generic_alpha(
    rng: np.random.Generator, denominators: Sequence[int] = (13, 17, 19, 23, 29)
) -> tuple[Fraction, ...]:
    """A balanced α = n/D off every facet hyperplane of the tiling.

    Facets lie on α_r, α_r ± α_s in (1/2)Z, which an odd prime D avoids when
    it divides none of n_r and n_r ± n_s.
    """
    for _ in range(1000):
        d = int(rng.choice(denominators))
        n = [int(k) for k in rng.integers(-2 * d, 2 * d + 1, size=5)]
        n.append(d - sum(n))
        bad = any(k % d == 0 for k in n) or any(
            (x + y) % d == 0 or (x - y) % d == 0 for x, y in itertools.combinations(n, 2)
        )
        if not bad:
            alpha = tuple(Fraction(k, d) for k in n)
            if is_generic(alpha):
                return alpha
    raise DomainError("could not draw a generic exponent vector")


@dataclass
class CoverReport(Record):
    """Outcome of :func:`verify_cover`."""

    samples: int = 0
    unique_interior: int = 0
    zero_fob: int = 0
    consistent_sob: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def check_sample(alpha: Sequence[Fraction]) -> dict | None:
    """Classify one generic α; return a violation record or None."""
    assignment = classify(alpha)
    problems = []
    if not assignment.interior:
        problems.append(f"{len(assignment.tiles)} tiles contain the point")
    if fob(assignment.alpha, assignment.correct_zeta) != 0:
        problems.append("fob does not vanish at the correct ζ")
    if not second_order_consistent(assignment):
        problems.append("second order behavior is not of the expected form")
    if not problems:
        return None
    return {
        "alpha": [str(a) for a in assignment.alpha],
        "tiles": [tile.label() for tile, _ in assignment.tiles],
        "zeta": str(assignment.correct_zeta),
        "problems": problems,
    }


def verify_cover(sample_count: int, seed: int) -> CoverReport:
    """Check on random generic α that exactly one tile contains each point in its interior."""
    rng = np.random.default_rng(seed)
    report = CoverReport()
    for index in range(sample_count):
        alpha = random_generic_alpha(rng)
        violation = check_sample(alpha)
        report.samples += 1
        if violation is None:
            report.unique_interior += 1
            report.zero_fob += 1
            report.consistent_sob += 1
        else:
            violation["index"] = index
            report.violations.append(violation)
            logger.warning(f"sample {index}: {', '.join(violation['problems'])}")
    return report
