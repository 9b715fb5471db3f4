"""First and second order behavior of the rescaled elliptic beta integrand.

All arithmetic is exact over ``fractions.Fraction``. ``{x}`` denotes the
fractional part in [0, 1), so {integer} = 0.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import reduce

from .errors import ContractError, DomainError

HALF = Fraction(1, 2)
GLOBAL = "certain"
LOCAL_ONLY = "local-only"


def frac(x: Fraction) -> Fraction:
    """Fractional part {x} in [0, 1)."""
    return x - math.floor(x)


def g_cubic(x: Fraction) -> Fraction:
    """g(x) = x(x-1)(2x-1)/6."""
    return x * (x - 1) * (2 * x - 1) / 6


def g_prime(x: Fraction) -> Fraction:
    """Derivative of :func:`g_cubic`."""
    return x * x - x + Fraction(1, 6)


def binom2(x: Fraction) -> Fraction:
    """The binomial coefficient C(x, 2) = x(x-1)/2 for rational x."""
    return x * (x - 1) / 2


def as_fractions(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class BalancedVector:
    """Exponent direction α with Σα_r = m + 1."""

    alpha: tuple[Fraction, ...]
    m: int = 0

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_fractions(self.alpha))
        if len(self.alpha) != 2 * self.m + 6:
            raise DomainError(f"need {2 * self.m + 6} exponents, got {len(self.alpha)}")
        if sum(self.alpha) != self.m + 1:
            raise DomainError(f"exponents sum to {sum(self.alpha)}, expected {self.m + 1}")

    def __iter__(self):
        return iter(self.alpha)

    def __len__(self):
        return len(self.alpha)

    def __getitem__(self, index):
        return self.alpha[index]


def _alpha(alpha: BalancedVector | Sequence) -> tuple[Fraction, ...]:
    if isinstance(alpha, BalancedVector):
        if alpha.m != 0:
            raise ContractError("behavior functions are only defined for m = 0")
        return alpha.alpha
    values = as_fractions(alpha)
    if len(values) != 6:
        raise ContractError(f"need 6 exponents, got {len(values)}")
    return values


def _pairs(n: int):
    for r in range(n):
        for s in range(r + 1, n):
            yield r, s


def fob(alpha: BalancedVector | Sequence, zeta: Fraction) -> Fraction:
    """First order behavior of the rescaled integrand at (α; ζ)."""
    a = _alpha(alpha)
    zeta = Fraction(zeta)
    pairs = sum((g_cubic(frac(a[r] + a[s])) for r, s in _pairs(6)), Fraction(0))
    singles = sum((g_cubic(frac(ar - zeta)) + g_cubic(frac(ar + zeta)) for ar in a), Fraction(0))
    return pairs - singles


def fob_dzeta(alpha: BalancedVector | Sequence, zeta: Fraction) -> Fraction:
    """Derivative of fob in ζ; fob is continuously differentiable."""
    a = _alpha(alpha)
    zeta = Fraction(zeta)
    return sum((g_prime(frac(ar - zeta)) - g_prime(frac(ar + zeta)) for ar in a), Fraction(0))


def fob_dzeta2(alpha: BalancedVector | Sequence, zeta: Fraction) -> Fraction:
    """Second derivative of fob in ζ, an even integer away from the breakpoints ±α_r."""
    a = _alpha(alpha)
    zeta = Fraction(zeta)
    return -2 * sum((frac(ar + zeta) + frac(ar - zeta) - 1 for ar in a), Fraction(0))


def fob_dalpha(alpha: BalancedVector | Sequence, zeta: Fraction, index: int) -> Fraction:
    """Partial derivative of fob in α_index, all other α_s held fixed."""
    a = _alpha(alpha)
    zeta = Fraction(zeta)
    ar = a[index]
    pairs = sum((g_prime(frac(ar + a[s])) for s in range(6) if s != index), Fraction(0))
    return pairs - g_prime(frac(ar - zeta)) - g_prime(frac(ar + zeta))


def is_breakpoint(alpha: BalancedVector | Sequence, zeta: Fraction) -> bool:
    """Whether ζ is one of the points ±α_r mod 1 where fob changes quadratic piece."""
    a = _alpha(alpha)
    zeta = Fraction(zeta)
    return any(frac(ar - zeta) == 0 or frac(ar + zeta) == 0 for ar in a)


@dataclass(frozen=True)
class MonomialExponents:
    """Exponents of x^a z^b q^c prod u_r^{d_r}, times a sign."""

    x_exp: Fraction
    z_exp: Fraction
    q_exp: Fraction
    u_exp: tuple[Fraction, ...]
    sign: int = 1
    breakpoint: bool = False

    def is_trivial(self) -> bool:
        return (
            self.sign == 1
            and self.x_exp == 0
            and self.z_exp == 0
            and self.q_exp == 0
            and all(e == 0 for e in self.u_exp)
        )

    def balanced(self, ref: int | None = None) -> MonomialExponents:
        """Rewrite using prod u_r = q.

        A common exponent c of every u_r becomes q^c. With ``ref`` the
        common part is the exponent of u_ref, otherwise the mean.
        """
        if ref is None:
            c = sum(self.u_exp, Fraction(0)) / len(self.u_exp)
        else:
            c = self.u_exp[ref]
        return replace(
            self,
            u_exp=tuple(e - c for e in self.u_exp),
            q_exp=self.q_exp + c,
        )


def sob_exponents(
    alpha: BalancedVector | Sequence, zeta: Fraction, reduce_balancing: bool = True
) -> MonomialExponents:
    """Second order behavior of the rescaled integrand as a monomial.

    Args:
        alpha: Exponent direction with Σα = 1
        zeta: Contour shift
        reduce_balancing: Rewrite the result with prod u_r = q

    Returns:
        The exponent record; ``breakpoint`` marks ζ on a piece boundary,
        where the left and right derivatives agree since fob is C^1
    """
    a = _alpha(alpha)
    zeta = Fraction(zeta)

    q_exp = (
        Fraction(-1, 4)
        - binom2(frac(2 * zeta))
        + sum((binom2(frac(ar - zeta)) + binom2(frac(ar + zeta)) for ar in a), Fraction(0)) / 2
        - sum((binom2(frac(a[r] + a[s])) for r, s in _pairs(6)), Fraction(0)) / 2
    )
    result = MonomialExponents(
        x_exp=fob(a, zeta),
        z_exp=-fob_dzeta(a, zeta) / 2,
        q_exp=q_exp,
        u_exp=tuple(fob_dalpha(a, zeta, r) / 2 for r in range(6)),
        breakpoint=is_breakpoint(a, zeta),
    )
    return result.balanced() if reduce_balancing else result


@dataclass(frozen=True, order=True)
class Interval:
    """Closed rational interval; a point when lo == hi."""

    lo: Fraction
    hi: Fraction

    @classmethod
    def point(cls, value: Fraction) -> Interval:
        return cls(Fraction(value), Fraction(value))

    def contains(self, value: Fraction, slack: Fraction = Fraction(0)) -> bool:
        return self.lo - slack <= value <= self.hi + slack


@dataclass
class ExtremaReport:
    """Locations of the extrema of ζ -> fob(α, ζ) on [0, 1/2]."""

    minima: list[Interval] = field(default_factory=list)
    maxima: list[Interval] = field(default_factory=list)
    min_flags: list[str] = field(default_factory=list)
    max_flags: list[str] = field(default_factory=list)
    min_value: Fraction = Fraction(0)
    max_value: Fraction = Fraction(0)
    table_row: int | None = None

    def global_minima(self) -> list[Interval]:
        return [iv for iv, flag in zip(self.minima, self.min_flags, strict=True) if flag == GLOBAL]

    def global_maxima(self) -> list[Interval]:
        return [iv for iv, flag in zip(self.maxima, self.max_flags, strict=True) if flag == GLOBAL]


def is_generic(alpha: Sequence[Fraction]) -> bool:
    """No pair of exponents sums to an integer."""
    a = as_fractions(alpha)
    return all((a[r] + a[s]).denominator != 1 for r, s in _pairs(len(a)))


def check_extrema_domain(alpha: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Require α_1 >= ... >= α_6 >= α_1 - 1."""
    a = _alpha(alpha)
    if any(a[r] < a[r + 1] for r in range(5)):
        raise ContractError(f"exponents must be sorted decreasingly: {a}")
    if a[5] < a[0] - 1:
        raise ContractError("need α_6 >= α_1 - 1; reduce with the weyl module first")
    return a


def extrema_table(alpha: Sequence[Fraction]) -> tuple[int, list[Interval], list[Interval]]:
    """Tabulated extrema for generic sorted α.

    Returns:
        (row, minima candidates, maxima candidates); rows 3 and 4 give two
        candidates on one side, only one of which need be global
    """
    a = check_extrema_domain(alpha)
    a1, a2, a3, a4, a5, a6 = a
    s12, s45 = a1 + a2, a4 + a5
    zero = Fraction(0)

    low_min = Interval(zero, max(zero, -a5))
    high_min = Interval(min(HALF, a2), HALF)
    low_max = Interval(zero, max(zero, a4))
    high_max = Interval(min(HALF, 1 - a1), HALF)

    if s12 <= 1 and s45 >= 0:
        return 1, [low_min], [high_max]
    if s12 >= 1 and s45 <= 0:
        return 2, [high_min], [low_max]
    if s12 <= 1 and s45 <= 0:
        return 3, [Interval.point(-a4 - a5 - a6)], [low_max, high_max]
    return 4, [low_min, high_min], [Interval.point(a3 + a4 + a5)]


def _piece_critical_point(a: Sequence[Fraction], lo: Fraction, hi: Fraction) -> Fraction | None:
    # fob is quadratic on [lo, hi]; fit it through three exact values
    mid = (lo + hi) / 2
    f_lo, f_mid, f_hi = fob(a, lo), fob(a, mid), fob(a, hi)
    h = (hi - lo) / 2
    curvature = (f_hi - 2 * f_mid + f_lo) / (h * h)
    if curvature == 0:
        return None
    slope_mid = (f_hi - f_lo) / (2 * h)
    vertex = mid - slope_mid / curvature
    if lo < vertex < hi:
        return vertex
    return None


def fob_extrema(alpha: BalancedVector | Sequence) -> ExtremaReport:
    """Extrema of fob(α, ·) on [0, 1/2] by exact piecewise analysis.

    α must satisfy α_1 >= ... >= α_6 >= α_1 - 1. Every local minimum and
    maximum is reported; the ones attaining the global value are flagged
    ``global``, ties included. For generic α the tabulated row is recorded.
    """
    a = check_extrema_domain(alpha)

    breaks = {Fraction(0), HALF}
    for ar in a:
        for b in (frac(ar), frac(-ar)):
            if 0 < b < HALF:
                breaks.add(b)
    breaks_sorted = sorted(breaks)

    candidates = set(breaks_sorted)
    for lo, hi in zip(breaks_sorted, breaks_sorted[1:], strict=False):
        vertex = _piece_critical_point(a, lo, hi)
        if vertex is not None:
            candidates.add(vertex)
    points = sorted(candidates)
    values = [fob(a, z) for z in points]

    # fob is monotone between consecutive candidates, so equal neighbours bound a plateau
    groups: list[tuple[Interval, Fraction]] = []
    start = 0
    for i in range(1, len(points) + 1):
        if i == len(points) or values[i] != values[start]:
            groups.append((Interval(points[start], points[i - 1]), values[start]))
            start = i

    report = ExtremaReport(min_value=min(values), max_value=max(values))
    n = len(groups)
    for i, (interval, value) in enumerate(groups):
        # fob is even and 1-periodic, so the ends mirror their inner neighbour
        left = groups[i - 1][1] if i > 0 else (groups[1][1] if n > 1 else value)
        right = groups[i + 1][1] if i < n - 1 else (groups[n - 2][1] if n > 1 else value)
        if value <= left and value <= right:
            report.minima.append(interval)
            report.min_flags.append(GLOBAL if value == report.min_value else LOCAL_ONLY)
        if value >= left and value >= right:
            report.maxima.append(interval)
            report.max_flags.append(GLOBAL if value == report.max_value else LOCAL_ONLY)

    if is_generic(a):
        report.table_row = extrema_table(a)[0]
    return report


@dataclass(frozen=True)
class GammaExponents:
    """Per-v exponents that make |Γ(p^a z)| bounded along p = x q^v.

    The rescaled quantity is Γ(p^a z) z^{v z_per_v} x^{v x_per_v} q^{v^2 q_v2 + v q_v}.
    """

    z_per_v: Fraction
    x_per_v: Fraction
    q_v2: Fraction
    q_v: Fraction


def gamma_exponents(a: Fraction) -> GammaExponents:
    """Rescaling exponents of Γ(p^a z), from g and C(., 2) against their fractional parts."""
    a = Fraction(a)
    fa = frac(a)
    dg = g_cubic(a) - g_cubic(fa)
    db = binom2(a) - binom2(fa)
    return GammaExponents(z_per_v=db, x_per_v=dg, q_v2=dg / 2, q_v=-db / 2)


def admissible_step(values: Iterable[Fraction]) -> int:
    """Smallest s > 0 with s * value an even integer for every value."""

    def step(value: Fraction) -> int:
        value = Fraction(value)
        n, d = value.numerator, value.denominator
        return 2 * d // math.gcd(n, 2 * d)

    return reduce(math.lcm, (step(v) for v in values), 1)
