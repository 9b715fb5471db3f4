"""Contour integrals of the elliptic beta integrand, its residues and contour shifts.

Integrals are normalized as (1/2πi)∮ f(z) dz/z over circles |z| = ρ. The
integrand is evaluated in the log domain, since along p = x q^v its values
over- and underflow long before the integral does.
"""

from __future__ import annotations

import cmath
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .asym import gamma_exponents
from .errors import (
    AccuracyError,
    ContourError,
    DegenerateError,
    DomainError,
    DrawError,
    GenericityError,
    PoleError,
)
from .log import get_logger
from .qkernel import (
    ComplexParams,
    ell_gamma_log,
    ell_gamma_prod,
    gamma_residue_log,
    principal_power,
    qpoch_log,
    theta,
    theta_log,
)
from .report import IdentityReport

logger = get_logger("quad")

N_START = 64
N_MAX = 2**16
CONTOUR_GUARD = 1e-3
"""Relative distance |log|P| - log ρ| below which a pole counts as on the contour."""

DEGENERATE_TOL = 1e-14
MAX_POLES = 100000


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    n: int


@dataclass(frozen=True)
class LogQuadratureResult:
    log_value: complex
    n: int

    @property
    def value(self) -> complex:
        return cmath.exp(self.log_value)


def _angles(n: int, offset: bool) -> NDArray[np.float64]:
    k = np.arange(n, dtype=np.float64)
    if offset:
        k += 0.5
    return 2 * np.pi * k / n


def trapezoid(f: Callable, n: int, radius: float = 1.0) -> complex:
    """The n-point rule for (1/2πi)∮ f(z) dz/z on |z| = radius."""
    if n < 4:
        raise DomainError(f"need at least 4 nodes, got {n}")
    z = radius * np.exp(1j * _angles(n, offset=False))
    return complex(np.sum(np.asarray(f(z), dtype=np.complex128)) / n)


def integrate_circle(
    f: Callable,
    radius: float = 1.0,
    rtol: float = 1e-13,
    n_start: int = N_START,
    n_max: int = N_MAX,
) -> QuadratureResult:
    """Trapezoidal rule on a circle, doubling the node count until it settles.

    Each doubling evaluates only the new midpoint nodes. Convergence is
    declared when two successive estimates agree to ``rtol`` relative to
    the larger of the estimate and the mean of |f|.

    Raises:
        AccuracyError: If ``n_max`` nodes do not suffice
    """
    if n_start < 4:
        raise DomainError(f"need at least 4 nodes, got {n_start}")
    n = n_start
    values = np.asarray(f(radius * np.exp(1j * _angles(n, False))), dtype=np.complex128)
    total = np.sum(values)
    abs_total = float(np.sum(np.abs(values)))
    estimate = total / n

    while 2 * n <= n_max:
        new = np.asarray(f(radius * np.exp(1j * _angles(n, True))), dtype=np.complex128)
        total += np.sum(new)
        abs_total += float(np.sum(np.abs(new)))
        n *= 2
        refined = total / n
        scale = max(abs(refined), abs_total / n)
        if abs(refined - estimate) <= rtol * scale:
            return QuadratureResult(complex(refined), n)
        estimate = refined
    raise AccuracyError(f"circle integral did not converge with {n_max} nodes")


def circle_integral(
    f: Callable, n: int = N_START, radius: float = 1.0, rtol: float = 1e-13
) -> complex:
    """(1/2πi)∮ f(z) dz/z on |z| = radius, starting from ``n`` nodes."""
    return integrate_circle(f, radius=radius, rtol=rtol, n_start=n).value


def integrate_circle_log(
    log_f: Callable,
    radius: float = 1.0,
    rtol: float = 1e-12,
    n_start: int = N_START,
    n_max: int = N_MAX,
) -> LogQuadratureResult:
    """Like :func:`integrate_circle` for an integrand given by its logarithm."""
    n = n_start
    logs = np.asarray(log_f(radius * np.exp(1j * _angles(n, False))), dtype=np.complex128)
    shift = float(np.max(logs.real))
    values = np.exp(logs - shift)
    total = np.sum(values)
    abs_total = float(np.sum(np.abs(values)))
    estimate = total / n

    while 2 * n <= n_max:
        new_logs = np.asarray(log_f(radius * np.exp(1j * _angles(n, True))), dtype=np.complex128)
        new_shift = float(np.max(new_logs.real))
        if new_shift > shift:
            factor = math.exp(shift - new_shift)
            total *= factor
            abs_total *= factor
            estimate *= factor
            shift = new_shift
        new = np.exp(new_logs - shift)
        total += np.sum(new)
        abs_total += float(np.sum(np.abs(new)))
        n *= 2
        refined = total / n
        scale = max(abs(refined), abs_total / n)
        if abs(refined - estimate) <= rtol * scale:
            if refined == 0:
                return LogQuadratureResult(complex(-math.inf, 0.0), n)
            return LogQuadratureResult(cmath.log(complex(refined)) + shift, n)
        estimate = refined
    raise AccuracyError(f"circle integral did not converge with {n_max} nodes")


def log_sum(terms: Sequence[complex]) -> complex:
    """log Σ exp(L_i) for complex logarithms L_i, stable for widely spread magnitudes."""
    finite = [t for t in terms if math.isfinite(t.real)]
    if not finite:
        return complex(-math.inf, 0.0)
    top = max(t.real for t in finite)
    total = sum(cmath.exp(t - top) for t in finite)
    if total == 0:
        return complex(-math.inf, 0.0)
    return cmath.log(total) + top


def _theta_log(x: ArrayLike, q: complex):
    # zeros of theta give -inf, which exp turns into exact zeros
    with np.errstate(divide="ignore", invalid="ignore"):
        return theta_log(x, q)


def sb_factor(s1: complex, s2: complex, s3: complex, z: ArrayLike, q: complex):
    """The symmetry breaking factor

    θ(s_1z, s_2z, s_3z, s_1s_2s_3/z; q) / θ(z², s_1s_2, s_1s_3, s_2s_3; q).

    It satisfies sb(z) + sb(1/z) = 1 and sb(qz) = sb(z).

    Raises:
        DegenerateError: If some θ(s_i s_j; q) vanishes
    """
    pair_thetas = [theta(a * b, q) for a, b in ((s1, s2), (s1, s3), (s2, s3))]
    if min(abs(t) for t in pair_thetas) < DEGENERATE_TOL:
        raise DegenerateError("θ(s_i s_j; q) vanishes; the symmetry breaking factor is undefined")
    z = np.asarray(z, dtype=np.complex128)
    num = theta(s1 * z, q) * theta(s2 * z, q) * theta(s3 * z, q) * theta(s1 * s2 * s3 / z, q)
    den = theta(z**2, q) * pair_thetas[0] * pair_thetas[1] * pair_thetas[2]
    result = num / den
    return complex(result) if np.ndim(result) == 0 else result


@dataclass(frozen=True)
class IntegrandSpec:
    """The elliptic beta integrand with 2m+6 parameters.

    Symmetric form: (p;p)(q;q)/2 · ∏Γ(t_r z^{±1}) θ(z²;p) θ(z^{-2};q).
    With ``broken = (w_1, w_2, w_3)`` the integrand is multiplied by
    2 sb(w; z): (p;p)(q;q) ∏Γ(t_r z^{±1}) θ(z^{-2};p) θ(w_i z, w_1w_2w_3/z; q)/θ(w_iw_j; q).
    ``shift`` is a contour shift ζ, giving the default radius |p|^{-ζ}.
    """

    params: ComplexParams
    broken: tuple[complex, complex, complex] | None = None
    shift: Fraction | None = None

    def __post_init__(self):
        if not self.params.is_balanced(1e-12):
            raise DomainError(
                f"balancing violated: relative defect {self.params.balancing_defect():.3g}"
            )
        if self.broken is not None:
            w1, w2, w3 = self.broken
            pairs = ((w1, w2), (w1, w3), (w2, w3))
            if min(abs(theta(a * b, self.q)) for a, b in pairs) < DEGENERATE_TOL:
                raise DegenerateError("θ(w_i w_j; q) vanishes for the symmetry breaking triple")

    @property
    def p(self) -> complex:
        return self.params.p

    @property
    def q(self) -> complex:
        return self.params.q

    @property
    def m(self) -> int:
        return self.params.m

    @property
    def default_radius(self) -> float:
        if self.shift is None:
            return 1.0
        return abs(self.p) ** (-float(self.shift))

    def log_prefactor(self) -> complex:
        base = qpoch_log(self.p, self.p) + qpoch_log(self.q, self.q)
        if self.broken is None:
            base -= math.log(2)
        else:
            w1, w2, w3 = self.broken
            base -= sum(theta_log(a * b, self.q) for a, b in ((w1, w2), (w1, w3), (w2, w3)))
        return base

    def log_value(self, z: ArrayLike, skip: tuple[int, bool] | None = None):
        """Logarithm of the integrand.

        ``skip = (r, inner)`` leaves out Γ(t_r/z) (inner) or Γ(t_r z), the
        factor that is singular at the poles of family r.
        """
        arr = np.atleast_1d(np.asarray(z, dtype=np.complex128))
        p, q = self.p, self.q
        total = np.full(arr.shape, self.log_prefactor(), dtype=np.complex128)
        for r, t in enumerate(self.params.t):
            if skip != (r, False):
                total += ell_gamma_log(t * arr, p, q)
            if skip != (r, True):
                total += ell_gamma_log(t / arr, p, q)
        if self.broken is None:
            total += _theta_log(arr**2, p) + _theta_log(arr**-2, q)
        else:
            w1, w2, w3 = self.broken
            total += _theta_log(arr**-2, p)
            for w in (w1, w2, w3):
                total += _theta_log(w * arr, q)
            total += _theta_log(w1 * w2 * w3 / arr, q)
        if np.ndim(z) == 0:
            return complex(total[0])
        return total

    def __call__(self, z: ArrayLike):
        with np.errstate(under="ignore"):
            values = np.exp(np.atleast_1d(self.log_value(z)))
        if np.ndim(z) == 0:
            return complex(values[0])
        return values

    def p_shift_ratio(self, z: complex) -> complex:
        """I(pz)/I(z) for the symmetric integrand as a theta quotient, finite at the poles a q^k."""
        if self.broken is not None:
            raise DomainError("the p-shift ratio is only provided for the symmetric integrand")
        p, q = self.p, self.q
        z = complex(z)
        value = 1.0 + 0j
        for t in self.params.t:
            value *= theta(t * z, q) / theta(t / (p * z), q)
        value *= theta(p**-2 * z**-2, q) / (p * z**4 * theta(z**-2, q))
        return value


@dataclass(frozen=True)
class Pole:
    """A pole t_r q^k p^j (inner family) or its reciprocal (outer family)."""

    r: int
    k: int
    j: int
    inner: bool
    location: complex


def pole_location(spec: IntegrandSpec, r: int, k: int, j: int, inner: bool = True) -> complex:
    point = spec.params.t[r] * spec.q**k * spec.p**j
    return point if inner else 1 / point


def residue_log(spec: IntegrandSpec, r: int, k: int, j: int, inner: bool = True) -> complex:
    """Logarithm of Res(I(z)/z) at the pole t_r q^k p^j (or its reciprocal when not inner).

    Raises:
        GenericityError: If another factor is singular at the same point
    """
    if k < 0 or j < 0:
        raise DomainError(f"pole indices must be non-negative, got ({k}, {j})")
    t = spec.params.t[r]
    z0 = pole_location(spec, r, k, j, inner)
    try:
        log_rest = spec.log_value(z0, skip=(r, inner))
    except PoleError as e:
        raise GenericityError(
            f"pole {z0:.6g} of family {r + 1} coincides with another pole ({e})"
        ) from e
    log_rw = gamma_residue_log(j, k, spec.p, spec.q)
    if inner:
        return cmath.log(-1) + log_rw + log_rest + cmath.log(z0) - cmath.log(t)
    return log_rw + log_rest - cmath.log(t) - cmath.log(z0)


def residue_at(spec: IntegrandSpec, r: int, k: int, j: int, inner: bool = True) -> complex:
    """Closed form residue of I(z)/z, via the residue of the singular Γ factor."""
    log_value = residue_log(spec, r, k, j, inner)
    if not math.isfinite(log_value.real):
        return 0j
    return cmath.exp(log_value)


def numeric_residue(f: Callable, z0: complex, radius: float | None = None, n: int = 256) -> complex:
    """Residue of f at z0 from a small circle around it."""
    radius = radius if radius is not None else 1e-3 * abs(z0)
    offsets = radius * np.exp(1j * _angles(n, offset=False))
    values = np.asarray(f(z0 + offsets), dtype=np.complex128)
    return complex(np.sum(values * offsets) / n)


def poles_between(
    spec: IntegrandSpec, lo: float, hi: float, inner: bool | None = None
) -> list[Pole]:
    """All poles with lo < |P| < hi, ordered by family, then k, then j.

    ``inner`` restricts the search to one family. Inner moduli shrink with k
    and j and outer ones grow, so inner poles need lo > 0 and outer poles
    need a finite hi. Moduli are compared as logarithms.

    Raises:
        DomainError: If a requested family has infinitely many poles in range
        AccuracyError: If more than MAX_POLES poles are found
    """
    families = (True, False) if inner is None else (inner,)
    log_lo = math.log(lo) if lo > 0 else -math.inf
    log_hi = math.log(hi)
    for family in families:
        if (family and log_lo == -math.inf) or (not family and log_hi == math.inf):
            side = "inner poles accumulate at 0" if family else "outer poles accumulate at ∞"
            raise DomainError(f"{side}: bound the range ({lo}, {hi})")
    log_p, log_q = math.log(abs(spec.p)), math.log(abs(spec.q))

    def outside(log_mod: float, family: bool) -> bool:
        return log_mod <= log_lo if family else log_mod >= log_hi

    found: list[Pole] = []
    for r, t in enumerate(spec.params.t):
        if t == 0:
            continue
        log_t = math.log(abs(t))
        for family in families:
            sign = 1 if family else -1
            k = 0
            while not outside(sign * (log_t + k * log_q), family):
                j = 0
                while not outside(log_mod := sign * (log_t + k * log_q + j * log_p), family):
                    if log_lo < log_mod < log_hi:
                        found.append(Pole(r, k, j, family, pole_location(spec, r, k, j, family)))
                        if len(found) > MAX_POLES:
                            raise AccuracyError(
                                f"more than {MAX_POLES} poles between {lo} and {hi}"
                            )
                    j += 1
                k += 1
    return found


def choose_radius(spec: IntegrandSpec, target: float, window: float = 4.0) -> float:
    """A radius near ``target`` that keeps clear of every pole.

    Returns ``target`` if it sits well inside its gap between pole moduli,
    otherwise the geometric midpoint of the widest gap in the window.
    """
    nearby = poles_between(spec, target / window, target * window)
    moduli = sorted(abs(pole.location) for pole in nearby)
    edges = [target / window, *moduli, target * window]
    gaps = list(zip(edges, edges[1:], strict=False))
    for a, b in gaps:
        if a <= target <= b:
            width = math.log(b / a)
            margin = min(math.log(target / a), math.log(b / target))
            if margin >= max(0.25 * width, 2 * CONTOUR_GUARD):
                return target
            break
    a, b = max(gaps, key=lambda gap: gap[1] / gap[0])
    return math.sqrt(a * b)


def check_contour(spec: IntegrandSpec, radius: float) -> None:
    """Raise ContourError if a pole lies within the guard band of |z| = radius."""
    lo, hi = radius * math.exp(-CONTOUR_GUARD), radius * math.exp(CONTOUR_GUARD)
    if poles_between(spec, lo, hi):
        raise ContourError(
            f"a pole lies on the contour |z| = {radius:.6g}",
            suggested_radius=choose_radius(spec, radius),
        )


def circle_log_integral(
    spec: IntegrandSpec, radius: float, rtol: float = 1e-12
) -> LogQuadratureResult:
    """Log of (1/2πi)∮ I(z) dz/z on |z| = radius."""
    check_contour(spec, radius)
    try:
        return integrate_circle_log(spec.log_value, radius=radius, rtol=rtol)
    except PoleError as e:
        raise ContourError(str(e), suggested_radius=choose_radius(spec, radius)) from e


@dataclass
class IntegralValue:
    """An integral over the standard contour, assembled from a circle and residues."""

    log_value: complex
    radius: float
    quadrature_n: int
    corrections: list[Pole] = field(default_factory=list)

    @property
    def value(self) -> complex:
        return cmath.exp(self.log_value)


def contour_integral(
    spec: IntegrandSpec, radius: float | None = None, rtol: float = 1e-12
) -> IntegralValue:
    """The integral over the contour separating poles t_r q^k p^j from their reciprocals.

    The circle |z| = radius is corrected by the residues of inner poles
    outside it and of outer poles inside it.
    """
    radius = choose_radius(spec, radius if radius is not None else spec.default_radius)
    circle = circle_log_integral(spec, radius, rtol)
    misplaced_inner = poles_between(spec, radius, math.inf, inner=True)
    misplaced_outer = poles_between(spec, 0.0, radius, inner=False)

    terms = [circle.log_value]
    terms += [residue_log(spec, pole.r, pole.k, pole.j, True) for pole in misplaced_inner]
    terms += [
        residue_log(spec, pole.r, pole.k, pole.j, False) + cmath.log(-1) for pole in misplaced_outer
    ]
    logger.debug(
        f"contour at ρ = {radius:.4g}: {len(misplaced_inner)} inner and "
        f"{len(misplaced_outer)} outer residue corrections"
    )
    return IntegralValue(
        log_value=log_sum(terms),
        radius=radius,
        quadrature_n=circle.n,
        corrections=misplaced_inner + misplaced_outer,
    )


@dataclass
class ContourShiftReport:
    """Both sides of ∮_C = ∮_Ĉ + Σ residues crossed, with the pole ledger."""

    start_radius: float
    target_radius: float
    lhs: complex
    rhs: complex
    circle_value: complex
    residue_sum: complex
    poles: list[Pole] = field(default_factory=list)
    residues: list[complex] = field(default_factory=list)

    @property
    def rel_err(self) -> float:
        return abs(self.lhs - self.rhs) / max(abs(self.lhs), 1e-300)


def contour_shift_check(
    spec: IntegrandSpec,
    target_radius: float,
    start_radius: float = 1.0,
    rtol: float = 1e-12,
) -> ContourShiftReport:
    """Move the contour from |z| = start_radius to |z| = target_radius.

    The residues of the poles crossed are added back.

    Raises:
        ContourError: If a pole lies on either circle; the error carries a suggested radius
    """
    lhs = circle_log_integral(spec, start_radius, rtol).value
    target = circle_log_integral(spec, target_radius, rtol).value

    lo, hi = sorted((start_radius, target_radius))
    poles = poles_between(spec, lo, hi)
    residues = [residue_at(spec, pole.r, pole.k, pole.j, pole.inner) for pole in poles]
    crossed = complex(math.fsum(r.real for r in residues), math.fsum(r.imag for r in residues))
    if target_radius > start_radius:
        crossed = -crossed
    logger.debug(
        f"contour shift {start_radius:.4g} -> {target_radius:.4g} crosses {len(poles)} poles"
    )
    return ContourShiftReport(
        start_radius=start_radius,
        target_radius=target_radius,
        lhs=lhs,
        rhs=target + crossed,
        circle_value=target,
        residue_sum=crossed,
        poles=poles,
        residues=residues,
    )


def beta_rhs(params: ComplexParams) -> complex:
    """∏_{r<s} Γ(t_r t_s; p, q)."""
    t = params.t
    products = [t[r] * t[s] for r in range(len(t)) for s in range(r + 1, len(t))]
    return ell_gamma_prod(products, params.p, params.q)


@dataclass(frozen=True)
class BetaEvaluation:
    lhs: complex
    rhs: complex
    quadrature_n: int


def beta_eval(params: ComplexParams, rtol: float = 1e-13) -> BetaEvaluation:
    """Both sides of the elliptic beta integral evaluation on the unit circle.

    Raises:
        DomainError: If some |t_r| >= 1 or the parameters are not balanced
    """
    if params.m != 0:
        raise DomainError("the evaluation holds for six parameters")
    offending = [r + 1 for r, t in enumerate(params.t) if not abs(t) < 1]
    if offending:
        raise DomainError(f"unit circle is not a valid contour: |t_r| >= 1 for r = {offending}")
    spec = IntegrandSpec(params)
    result = integrate_circle(spec, radius=1.0, rtol=rtol)
    return BetaEvaluation(lhs=result.value, rhs=beta_rhs(params), quadrature_n=result.n)


def random_phase(rng: np.random.Generator, low: float, high: float) -> complex:
    return float(rng.uniform(low, high)) * cmath.exp(2j * math.pi * float(rng.uniform()))


def random_beta_params(
    rng: np.random.Generator,
    nome_max: float = 0.35,
    t_max: float = 0.8,
    attempts: int = 100,
) -> ComplexParams:
    """Balanced parameters with |p|, |q| <= nome_max and every |t_r| <= t_max.

    Raises:
        DrawError: If no admissible draw is found within ``attempts``
    """
    for _ in range(attempts):
        q = random_phase(rng, 0.05, nome_max)
        p = random_phase(rng, 0.05, nome_max)
        partial = tuple(random_phase(rng, 0.3, t_max) for _ in range(5))
        params = ComplexParams.balanced(q, p, partial)
        if abs(params.t[-1]) <= t_max:
            return params
    raise DrawError(f"no balanced draw with |t_r| <= {t_max} in {attempts} attempts")


def beta_check(draws: int, seed: int, tol: float = 1e-9) -> list[IdentityReport]:
    """Evaluate the elliptic beta integral on random admissible draws."""
    reports = []
    for index in range(draws):
        draw_seed = seed + index
        params = random_beta_params(np.random.default_rng(draw_seed))
        evaluation = beta_eval(params)
        reports.append(
            IdentityReport(
                id="beta",
                draw_seed=draw_seed,
                lhs=evaluation.lhs,
                rhs=evaluation.rhs,
                tol=tol,
                quadrature_n=evaluation.quadrature_n,
                params={"p": params.p, "q": params.q, "t": list(params.t)},
            )
        )
    return reports


def rescaled_gamma_logabs(a: Fraction, z: complex, x: complex, q: complex, v: int) -> float:
    """log |Γ(p^a z; p, q)| plus the rescaling that keeps it bounded along p = x q^v."""
    exps = gamma_exponents(a)
    p = x * q**v
    argument = principal_power(x, a) * principal_power(q, Fraction(a) * v) * z
    value = ell_gamma_log(argument, p, q).real
    value += float(v * exps.z_per_v) * math.log(abs(z))
    value += float(v * exps.x_per_v) * math.log(abs(x))
    value += float(v * v * exps.q_v2 + v * exps.q_v) * math.log(abs(q))
    return value


def gamma_band(a: Fraction, z: complex, x: complex, q: complex, vs: Sequence[int]) -> float:
    """max/min of the rescaled |Γ(p^a z)| over the given v."""
    logs = [rescaled_gamma_logabs(a, z, x, q, v) for v in vs]
    return math.exp(max(logs) - min(logs))
