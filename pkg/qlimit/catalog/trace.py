"""Follow the elliptic beta integral along p = x q^v towards its classified limit.

At every step the integral is evaluated exactly, as a circle of radius
|p|^{-ζ} plus the residues of the poles on the wrong side of it. It is
then rescaled by the monomials that keep each pair factor Γ(t_rt_s) of its
evaluation bounded. The limit of the rescaled value is a product of theta
functions and q-Pochhammer symbols in u and x, which is the target.
"""

from __future__ import annotations

import cmath
import math
import time
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..asym import BalancedVector, admissible_step, fob
from ..errors import (
    ContourError,
    DomainError,
    DrawError,
    GenericityError,
    PoleError,
    TraceError,
)
from ..log import get_logger
from ..qkernel import ComplexParams, principal_power, qpoch_log, theta_log
from ..quad import IntegrandSpec, contour_integral, random_phase
from ..report import TraceReport
from ..tiling import classify, second_order_consistent

logger = get_logger("trace")

TRACE_TOL = 1e-6
U_RANGE = (0.5, 0.95)
LAST_U_RANGE = (0.2, 2.0)
NOISE_FLOOR = 1e-11
STEP_ERRORS = (ContourError, PoleError, GenericityError)
"""Contour placement failures at one step; anything else aborts the trace."""


@dataclass(frozen=True)
class PairFactor:
    """Γ(y p^a) written as Γ(base q^{vf}) times theta factors, a = n + f.

    ``thetas`` lists (W, c, sign): the factor θ(W q^{vc}; q) enters with
    power ``sign``. W and ``base`` do not depend on v.
    """

    a: Fraction
    y: complex
    thetas: tuple[tuple[complex, Fraction, int], ...]
    base: complex

    @property
    def integral_part(self) -> bool:
        return Fraction(self.a).denominator == 1


def pair_factor(a: Fraction, y: complex, x: complex) -> PairFactor:
    """Split Γ(y p^a) with p = x q^v; ``y`` already carries the x^a branch."""
    a = Fraction(a)
    n = math.floor(a)
    f = a - n
    if n >= 0:
        shifts = [(j, 1) for j in range(n)]
    else:
        shifts = [(j, -1) for j in range(n, 0)]
    thetas = tuple((y * x ** (j - n), j + f, sign) for j, sign in shifts)
    return PairFactor(a=a, y=y, thetas=thetas, base=y * x ** (-n))


def _rescaling_log(factor: PairFactor, v: int, q: complex) -> complex:
    """log of the monomial M with M · Γ(t_rt_s) bounded along the trace."""
    log_q = cmath.log(q)
    total = 0j
    for w, c, sign in factor.thetas:
        n = int(v * c)
        total -= sign * (n * cmath.log(-1 / w) - (n * (n - 1) // 2) * log_q)
    return total


def _limit_log(factor: PairFactor, q: complex) -> complex:
    total = 0j
    for w, _, sign in factor.thetas:
        total += sign * complex(theta_log(w, q))
    if factor.integral_part:
        total -= complex(qpoch_log(factor.base, q))
    return total


def pair_factors(alpha: Sequence[Fraction], u: Sequence[complex], x: complex) -> list[PairFactor]:
    xa = [complex(ur) * principal_power(x, a) for ur, a in zip(u, alpha, strict=True)]
    return [
        pair_factor(alpha[r] + alpha[s], xa[r] * xa[s], x)
        for r in range(len(alpha))
        for s in range(r + 1, len(alpha))
    ]


def trace_target(
    alpha: Sequence[Fraction], u: Sequence[complex], x: complex, q: complex
) -> complex:
    """The limit of the rescaled integral."""
    return cmath.exp(sum((_limit_log(f, q) for f in pair_factors(alpha, u, x)), 0j))


def draw_u(
    alpha: Sequence[Fraction], x: complex, q: complex, seed: int, attempts: int = 100
) -> tuple[complex, ...]:
    """Random u_1..u_6 with ∏ u_r x^{α_r} = q x, so that ∏ t_r = pq at every step.

    Raises:
        DrawError: If the solved u_6 stays outside LAST_U_RANGE
    """
    rng = np.random.default_rng(seed)
    branch = complex(x) / complex(np.prod([principal_power(x, a) for a in alpha]))
    for _ in range(attempts):
        partial = [random_phase(rng, *U_RANGE) for _ in range(len(alpha) - 1)]
        last = complex(q) * branch / complex(np.prod(partial))
        if LAST_U_RANGE[0] < abs(last) < LAST_U_RANGE[1]:
            return (*partial, last)
    raise DrawError(f"no u draw with |u_6| in {LAST_U_RANGE} in {attempts} attempts")


def _eventually_decreasing(errors: Sequence[float], window: int = 3) -> bool:
    tail = list(errors[-window:])
    return all(b <= a or b < NOISE_FLOOR for a, b in zip(tail, tail[1:], strict=False))


def trace(
    alpha: BalancedVector | Sequence,
    x: complex,
    q: complex,
    steps: int,
    seed: int = 0,
    u: Sequence[complex] | None = None,
    broken: bool = False,
    tol: float = TRACE_TOL,
) -> TraceReport:
    """Rescaled integrals at p = x q^{s k} for k = 1..steps against their limit.

    ``s`` is the smallest step making every v α_r and v ζ even integers.
    With ``broken`` the integrand carries the symmetry breaking factor
    built from the parameters with the three smallest exponents.
    Steps whose contour cannot be placed are skipped and noted; accuracy
    failures propagate.

    Raises:
        DomainError: If α is not a balanced six-vector or |q| >= 1
        AccuracyError: If a step does not reach the quadrature accuracy
        TraceError: If every step is skipped
    """
    start = time.perf_counter()
    a = tuple(Fraction(v) for v in alpha)
    if len(a) != 6:
        raise DomainError(f"the trace takes six exponents, got {len(a)}")
    assignment = classify(a)
    zeta = assignment.correct_zeta
    step = admissible_step((*a, zeta))
    x, q = complex(x), complex(q)
    if not abs(q) < 1:
        raise DomainError(f"|q| must be below 1, got {abs(q):.6g}")
    u = tuple(complex(v) for v in u) if u is not None else draw_u(a, x, q, seed)

    factors = pair_factors(a, u, x)
    target = trace_target(a, u, x, q)
    order = sorted(range(6), key=lambda r: a[r])[:3]

    report = TraceReport(
        alpha=a,
        x=x,
        q=q,
        zeta=zeta,
        step=step,
        method="broken" if broken else "symmetric",
        target=target,
        fob_zero=fob(a, zeta) == 0,
        sob_consistent=second_order_consistent(assignment),
        tol=tol,
    )
    notes = []
    for k in range(1, steps + 1):
        v = step * k
        try:
            params = ComplexParams.geometric(x, v, q, u, a)
            spec = IntegrandSpec(
                params,
                broken=tuple(params.t[r] for r in order) if broken else None,
                shift=zeta,
            )
            integral = contour_integral(spec)
        except STEP_ERRORS as e:
            report.skipped.append(v)
            notes.append(f"v = {v}: {e}")
            logger.warning(f"trace step v = {v} skipped: {e}")
            continue

        log_value = integral.log_value + sum((_rescaling_log(f, v, q) for f in factors), 0j)
        value = cmath.exp(log_value)
        error = abs(value - target) / max(abs(target), 1e-300)
        report.step_exponents.append(v)
        report.values.append(value)
        report.errors.append(error)
        report.residues_used.append(len(integral.corrections))
        logger.debug(f"v = {v}: error {error:.3e}, {len(integral.corrections)} residues")

    if not report.values:
        raise TraceError(f"every step of the trace for {a} was skipped")

    report.converged = report.errors[-1] < tol and _eventually_decreasing(report.errors)
    if not report.converged:
        notes.append(f"final error {report.errors[-1]:.3e} with tolerance {tol:.1e}")
    report.note = "; ".join(notes)
    report.elapsed = time.perf_counter() - start
    return report
