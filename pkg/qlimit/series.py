"""Unilateral, bilateral and very-well-poised basic hypergeometric series.

Conventions follow Gasper and Rahman:

    rφs(a; b; q, z) = Σ_{n>=0} (a)_n / ((q)_n (b)_n) [(-1)^n q^{C(n,2)}]^{1+s-r} z^n
    rψs(a; b; q, z) = Σ_{n in Z} (a)_n / (b)_n [(-1)^n q^{C(n,2)}]^{s-r} z^n
    rWs(a; b; q, z) = rφs(a, q√a, -q√a, b; √a, -√a, qa/b; q, z)

Terms are generated by their ratio recursion. Zero parameters are allowed
on either side. Summation stops once a geometric bound on the remaining
terms falls below ``abs_tail`` relative to the sum of absolute values.
"""

from __future__ import annotations

import cmath
import math
import sys
from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum

import numpy as np

from .errors import AccuracyError, DivergenceError, DomainError
from .log import get_logger
from .qkernel import DEFAULT_TOLERANCE, SeriesTolerance, qpoch

logger = get_logger("series")

RATIO_MARGIN = 0.99
LOG_FLOAT_MAX = math.log(sys.float_info.max)
TERMINATE_TOL = 1e-13
"""|1 - a q^n| below this counts as an exact zero factor."""


class SeriesKind(StrEnum):
    PHI = "phi"
    PSI = "psi"
    VWP_W = "vwp_w"


@dataclass(frozen=True)
class SeriesSpec:
    """A series with its parameters.

    For ``vwp_w`` the first upper parameter is the base a and the rest are
    the b's; ``lower`` must be empty.
    """

    kind: SeriesKind
    upper: tuple[complex, ...]
    lower: tuple[complex, ...]
    q: complex
    argument: complex

    def __post_init__(self):
        object.__setattr__(self, "kind", SeriesKind(self.kind))
        object.__setattr__(self, "upper", tuple(complex(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(complex(b) for b in self.lower))
        object.__setattr__(self, "q", complex(self.q))
        object.__setattr__(self, "argument", complex(self.argument))
        if not abs(self.q) < 1:
            raise DomainError(f"|q| must be below 1, got {abs(self.q):.6g}")
        if self.kind is SeriesKind.VWP_W:
            if not self.upper or self.lower:
                raise DomainError("a very-well-poised series takes only upper parameters")
            if any(b == 0 for b in self.upper[1:]):
                raise DomainError("very-well-poised parameters must be nonzero")

    @property
    def exponent(self) -> int:
        """Power of (-1)^n q^{C(n,2)} in the general term."""
        spec = self.expanded()
        r, s = len(spec.upper), len(spec.lower)
        return 1 + s - r if spec.kind is SeriesKind.PHI else s - r

    def expanded(self) -> SeriesSpec:
        """The equivalent φ series for ``vwp_w``, otherwise this series unchanged."""
        if self.kind is not SeriesKind.VWP_W:
            return self
        a, *bs = self.upper
        root = cmath.sqrt(a)
        q = self.q
        return SeriesSpec(
            kind=SeriesKind.PHI,
            upper=(a, q * root, -q * root, *bs),
            lower=(root, -root, *(a * q / b for b in bs)),
            q=q,
            argument=self.argument,
        )


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    terms: int
    abs_sum: float
    terminating: bool = False

    @property
    def condition(self) -> float:
        """Σ|term| / |Σ term|, the cancellation in the sum."""
        return self.abs_sum / max(abs(self.value), 1e-300)


def _terminating_index(params: Sequence[complex], q: complex, limit: int) -> int | None:
    """Smallest n >= 0 with 1 - c q^n = 0 for some c, or None."""
    best = None
    for c in params:
        if c == 0:
            continue
        for n in range(limit):
            value = c * q**n
            if abs(1 - value) < TERMINATE_TOL:
                best = n if best is None else min(best, n)
                break
            if abs(value) < 0.5:
                break
    return best


def _positive_terminates(spec: SeriesSpec, tol: SeriesTolerance) -> bool:
    return _terminating_index(spec.upper, spec.q, tol.max_terms) is not None


def _negative_terminates(spec: SeriesSpec, tol: SeriesTolerance) -> bool:
    # (1 - b q^{-n-1}) vanishes for b = q^{n+1}
    for b in spec.lower:
        if b == 0:
            continue
        for n in range(tol.max_terms):
            value = b * spec.q ** (-n - 1)
            if abs(1 - value) < TERMINATE_TOL:
                return True
            if abs(value) > 2:
                break
    return False


def _negative_ratio_limit(spec: SeriesSpec) -> tuple[int, float]:
    """(d, c) with |t_{-n-1}/t_{-n}| ~ c |q|^{-(n+1) d} for large n."""
    nonzero_upper = [a for a in spec.upper if a != 0]
    nonzero_lower = [b for b in spec.lower if b != 0]
    d = len(nonzero_lower) - len(nonzero_upper) - spec.exponent
    c = float(np.prod(np.abs(nonzero_lower))) / float(np.prod(np.abs(nonzero_upper)))
    return d, c / abs(spec.argument)


def convergence_issue(spec: SeriesSpec, tol: SeriesTolerance = DEFAULT_TOLERANCE) -> str | None:
    """Why the series fails the ratio test with margin, or None if it converges."""
    spec = spec.expanded()
    e = spec.exponent
    z = spec.argument
    if not _positive_terminates(spec, tol):
        if e < 0:
            return f"terms grow like q^(-n^2): exponent {e} with a non-terminating series"
        if e == 0 and not abs(z) < RATIO_MARGIN:
            return f"ratio test fails for n -> +inf: |z| = {abs(z):.6g}"
    if spec.kind is SeriesKind.PSI and not _negative_terminates(spec, tol):
        if z == 0:
            return "bilateral series with zero argument"
        d, c = _negative_ratio_limit(spec)
        if d > 0 or (d == 0 and not c < RATIO_MARGIN):
            return f"ratio test fails for n -> -inf: order {d}, limit ratio {c:.6g}"
    return None


def converges(spec: SeriesSpec, tol: SeriesTolerance = DEFAULT_TOLERANCE) -> bool:
    return convergence_issue(spec, tol) is None


def _power_bound(absq: float, power: float, factor: float) -> float:
    """factor · |q|^power without overflow; inf when it leaves the float range."""
    if factor == 0:
        return 0.0
    if absq == 0:
        return factor if power == 0 else (0.0 if power > 0 else math.inf)
    log_bound = power * math.log(absq) + math.log(factor)
    return math.inf if log_bound > LOG_FLOAT_MAX else math.exp(log_bound)


def _positive_bound(spec: SeriesSpec, m: int) -> float:
    """Upper bound for |t_{k+1}/t_k| over all k >= m, or inf if none is available yet."""
    absq = abs(spec.q)
    qm = _power_bound(absq, m, 1.0)
    den = 1.0
    for b in spec.lower:
        factor = 1 - abs(b) * qm
        if factor <= 0:
            return math.inf
        den *= factor
    if spec.kind is SeriesKind.PHI:
        den *= 1 - absq * qm
    num = math.prod(1 + abs(a) * qm for a in spec.upper)
    return _power_bound(absq, m * spec.exponent, num / den * abs(spec.argument))


def _negative_bound(spec: SeriesSpec, m: int) -> float:
    """Upper bound for |t_{-k-1}/t_{-k}| over all k >= m - 1.

    With d the order from :func:`_negative_ratio_limit` the ratio is
    |q|^{-(k+1)d} ∏|q^{k+1} - b| / ∏|q^{k+1} - a| / |z|, so only the
    bounded factor |q|^{k+1} appears.
    """
    absq = abs(spec.q)
    d, _ = _negative_ratio_limit(spec)
    if d > 0:
        return math.inf
    qm = _power_bound(absq, m, 1.0)
    den = 1.0
    for a in spec.upper:
        if a == 0:
            continue
        factor = abs(a) - qm
        if factor <= 0:
            return math.inf
        den *= factor
    num = math.prod(abs(b) + qm for b in spec.lower if b != 0)
    return _power_bound(absq, -m * d, num / den / abs(spec.argument))


def _shifted_product(params: Sequence[complex], power: complex) -> tuple[complex, bool]:
    """∏(1 - c power) and whether one of the factors vanishes."""
    product = 1 + 0j
    vanishes = False
    for c in params:
        factor = 1 - c * power
        vanishes = vanishes or abs(factor) < TERMINATE_TOL
        product *= factor
    return product, vanishes


def _sum_positive(spec: SeriesSpec, tol: SeriesTolerance) -> tuple[complex, int, float, bool]:
    """Σ_{n>=0} t_n with t_0 = 1."""
    q, z, e = spec.q, spec.argument, spec.exponent
    is_phi = spec.kind is SeriesKind.PHI
    term = 1 + 0j
    total = term
    abs_sum = 1.0
    for n in range(tol.max_terms):
        qn = q**n
        num, stops = _shifted_product(spec.upper, qn)
        if stops:
            return total, n + 1, abs_sum, True
        den, pole = _shifted_product(spec.lower, qn)
        if is_phi:
            den *= 1 - q ** (n + 1)
        if pole:
            raise DomainError(f"lower parameter hits q^-{n}: the series has a pole")
        term *= num / den * (-qn) ** e * z
        total += term
        abs_sum += abs(term)
        bound = _positive_bound(spec, n + 1)
        if bound < 1:
            tail = abs(term) * bound / (1 - bound)
            if tail <= tol.abs_tail * abs_sum:
                return total, n + 2, abs_sum, False
    raise AccuracyError(f"series did not settle within {tol.max_terms} terms")


def _sum_negative(spec: SeriesSpec, tol: SeriesTolerance) -> tuple[complex, int, float]:
    """Σ_{n<0} t_n, generated backwards from t_0 = 1.

    The ratio t_{-n-1}/t_{-n} is taken as
    (-1)^e (q^{n+1})^{-d} ∏(q^{n+1} - b) / ∏(q^{n+1} - a) / z
    over nonzero parameters, so q^{n+1} may underflow but never overflows.
    """
    q, z, e = spec.q, spec.argument, spec.exponent
    upper = [a for a in spec.upper if a != 0]
    lower = [b for b in spec.lower if b != 0]
    d = len(lower) - len(upper) - e
    sign = -1 if e % 2 else 1
    qpow = 1 + 0j
    term = 1 + 0j
    total = 0j
    abs_sum = 0.0
    for n in range(tol.max_terms):
        qpow *= q
        num = complex(math.prod(qpow - b for b in lower))
        if any(abs(qpow - b) < TERMINATE_TOL * abs(qpow) for b in lower):
            return total, n, abs_sum
        if any(abs(qpow - a) < TERMINATE_TOL * abs(qpow) for a in upper):
            raise DomainError(f"upper parameter hits q^{n + 1}: the series has a pole")
        den = complex(math.prod(qpow - a for a in upper))
        term *= sign * num / den / z
        if d:
            term *= qpow ** (-d)
        total += term
        abs_sum += abs(term)
        bound = _negative_bound(spec, n + 2)
        if bound < 1:
            tail = abs(term) * bound / (1 - bound)
            if tail <= tol.abs_tail * max(abs_sum, 1.0):
                return total, n + 1, abs_sum
    raise AccuracyError(f"negative tail did not settle within {tol.max_terms} terms")


def series_result(spec: SeriesSpec, tol: SeriesTolerance = DEFAULT_TOLERANCE) -> SeriesResult:
    """Sum a series, reporting the number of terms used and the absolute sum.

    Raises:
        DivergenceError: If the ratio test fails in either direction
        AccuracyError: If ``tol.max_terms`` terms do not reach the tail bound
        DomainError: If a lower parameter produces a pole
    """
    issue = convergence_issue(spec, tol)
    if issue is not None:
        raise DivergenceError(issue)
    flat = spec.expanded()
    total, count, abs_sum, terminating = _sum_positive(flat, tol)
    if flat.kind is SeriesKind.PSI:
        neg_total, neg_count, neg_abs = _sum_negative(flat, tol)
        total += neg_total
        count += neg_count
        abs_sum += neg_abs
        terminating = False
    logger.debug(f"{spec.kind} series summed with {count} terms")
    return SeriesResult(value=total, terms=count, abs_sum=abs_sum, terminating=terminating)


def sum_series(spec: SeriesSpec, tol: SeriesTolerance = DEFAULT_TOLERANCE) -> complex:
    """Value of a convergent series; see :func:`series_result`."""
    return series_result(spec, tol).value


def terminating_terms(spec: SeriesSpec, tol: SeriesTolerance = DEFAULT_TOLERANCE) -> list[complex]:
    """All nonzero terms of a terminating unilateral series, in order.

    Raises:
        DomainError: If the series is bilateral or does not terminate
    """
    flat = spec.expanded()
    if flat.kind is not SeriesKind.PHI:
        raise DomainError("only unilateral series terminate")
    last = _terminating_index(flat.upper, flat.q, tol.max_terms)
    if last is None:
        raise DomainError("no upper parameter of the form q^-N")
    q, z, e = flat.q, flat.argument, flat.exponent
    terms = [1 + 0j]
    for n in range(last):
        qn = q**n
        num = math.prod((1 - a * qn for a in flat.upper), start=1 + 0j)
        den = math.prod((1 - b * qn for b in flat.lower), start=1 - q ** (n + 1))
        terms.append(terms[-1] * num / den * (-qn) ** e * z)
    return terms


def phi(upper: Sequence[complex], lower: Sequence[complex], q: complex, z: complex) -> complex:
    return sum_series(SeriesSpec(SeriesKind.PHI, tuple(upper), tuple(lower), q, z))


def psi(upper: Sequence[complex], lower: Sequence[complex], q: complex, z: complex) -> complex:
    return sum_series(SeriesSpec(SeriesKind.PSI, tuple(upper), tuple(lower), q, z))


def vwp_w(base: complex, params: Sequence[complex], q: complex, z: complex) -> complex:
    """The very-well-poised series W(base; params; q, z)."""
    return sum_series(SeriesSpec(SeriesKind.VWP_W, (base, *params), (), q, z))


def _poch_prod(args: Sequence[complex], q: complex) -> complex:
    return complex(np.prod(np.atleast_1d(qpoch(np.asarray(args, dtype=np.complex128), q))))


def vwp_psi66(
    root: complex, b: complex, c: complex, d: complex, e: complex, q: complex
) -> tuple[complex, complex]:
    """Both sides of the very-well-poised 6ψ6 summation with √a = root.

    6ψ6(q√a, -q√a, b, c, d, e; √a, -√a, aq/b, aq/c, aq/d, aq/e; q, qa²/(bcde))
    equals (aq, q, q/a, aq/(bc), ... six pairs) / (aq/b, ..., q/b, ..., qa²/(bcde)).
    """
    a = root * root
    params = (b, c, d, e)
    z = q * a * a / (b * c * d * e)
    lhs = psi((q * root, -q * root, *params), (root, -root, *(a * q / y for y in params)), q, z)
    pairs = [a * q / (params[i] * params[j]) for i in range(4) for j in range(i + 1, 4)]
    num = _poch_prod([a * q, q, q / a, *pairs], q)
    den = _poch_prod([*(a * q / y for y in params), *(q / y for y in params), z], q)
    return lhs, num / den


def psi66(params: Sequence[complex], x: complex, q: complex) -> tuple[complex, complex]:
    """Both sides of the 6ψ6 evaluation in the shifted form with √a = t_1/x, b = t_1t_3/x, ...

    The argument becomes t_1t_2 under the balancing t_1 ... t_6 = q, and the
    right hand side is

        (q, qt_1²/x², qx²/t_1²) ∏(q/(t_rt_s)) / ((t_1t_2) ∏(qt_1/(t_rx), qx/(t_1t_r))).

    Raises:
        DomainError: If the six parameters are not balanced
    """
    t = tuple(complex(v) for v in params)
    if len(t) != 6:
        raise DomainError(f"need six parameters, got {len(t)}")
    product = complex(np.prod(t))
    if abs(product - q) > 1e-12 * abs(q):
        raise DomainError(f"parameters must multiply to q, got {product}")
    t1 = t[0]
    return vwp_psi66(t1 / x, *(t1 * tr / x for tr in t[2:]), q=q)
