"""q-Pochhammer symbols, theta functions and the elliptic gamma function.

Every function accepts a scalar or a numpy array for its main argument and
returns the same shape, so quadrature nodes can be evaluated in one call.
Infinite products are truncated once the remaining factors are provably
within ``abs_tail`` of one. Fractional powers use the principal branch.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import AccuracyError, DomainError, PoleError

POLE_GUARD = 1e-8
"""Relative distance to a pole of the elliptic gamma function that counts as on it."""

INF = math.inf


@dataclass(frozen=True)
class SeriesTolerance:
    """Truncation controls for infinite products and series."""

    abs_tail: float = 1e-15
    max_terms: int = 10000

    def __post_init__(self):
        if not self.abs_tail > 0:
            raise DomainError(f"abs_tail must be positive, got {self.abs_tail}")
        if self.max_terms < 1:
            raise DomainError(f"max_terms must be at least 1, got {self.max_terms}")


DEFAULT_TOLERANCE = SeriesTolerance()


def _as_array(x: ArrayLike) -> tuple[NDArray[np.complex128], bool]:
    arr = np.asarray(x, dtype=np.complex128)
    return np.atleast_1d(arr).copy(), arr.ndim == 0


def _result(arr: NDArray[np.complex128], scalar: bool):
    if scalar:
        return complex(arr[0])
    return arr


def _check_nome(q: complex, name: str = "q") -> complex:
    q = complex(q)
    if not abs(q) < 1:
        raise DomainError(f"|{name}| must be below 1, got |{name}| = {abs(q):.6g}")
    return q


def qpoch(x: ArrayLike, q: complex, n: int | float = INF, tol: SeriesTolerance = DEFAULT_TOLERANCE):
    """The q-Pochhammer symbol (x;q)_n.

    Args:
        x: Base point, scalar or array
        q: Nome
        n: Number of factors; ``math.inf`` for the infinite product, negative
            values use (x;q)_{-n} = 1/(x q^{-n};q)_n
        tol: Truncation controls for the infinite product

    Returns:
        The product, with the shape of ``x``

    Raises:
        DomainError: If |q| >= 1 with n infinite
        AccuracyError: If the product has not converged after ``tol.max_terms`` factors
    """
    arr, scalar = _as_array(x)
    q = complex(q)

    if n == INF:
        q = _check_nome(q)
        absq = abs(q)
        result = np.ones_like(arr)
        term = arr.copy()
        for _ in range(tol.max_terms):
            result *= 1 - term
            term *= q
            if np.max(np.abs(term), initial=0.0) / (1 - absq) < tol.abs_tail:
                return _result(result, scalar)
        raise AccuracyError(f"(x;q)_inf did not converge in {tol.max_terms} factors")

    n = int(n)
    if n < 0:
        shifted = arr * q**n
        return _result(1 / np.atleast_1d(qpoch(shifted, q, -n, tol)), scalar)

    result = np.ones_like(arr)
    for k in range(n):
        result *= 1 - arr * q**k
    return _result(result, scalar)


def qpoch_log(x: ArrayLike, q: complex, tol: SeriesTolerance = DEFAULT_TOLERANCE):
    """Sum of principal logarithms of the factors of (x;q)_inf.

    ``exp`` of the result is (x;q)_inf; the imaginary part is only meaningful mod 2 pi.
    """
    arr, scalar = _as_array(x)
    q = _check_nome(q)
    absq = abs(q)
    result = np.zeros_like(arr)
    term = arr.copy()
    for _ in range(tol.max_terms):
        result += np.log1p(-term)
        term *= q
        if np.max(np.abs(term), initial=0.0) / (1 - absq) < tol.abs_tail:
            return _result(result, scalar)
    raise AccuracyError(f"log (x;q)_inf did not converge in {tol.max_terms} factors")


def _ordered_nomes(p: complex, q: complex) -> tuple[complex, complex]:
    p = _check_nome(p, "p")
    q = _check_nome(q)
    return (p, q) if abs(p) <= abs(q) else (q, p)


def pq_symbol(x: ArrayLike, p: complex, q: complex, tol: SeriesTolerance = DEFAULT_TOLERANCE):
    """The double product (x;p,q)_inf over all p^j q^k.

    The outer loop runs over the nome of smaller modulus, one inner
    q-Pochhammer symbol per row.
    """
    arr, scalar = _as_array(x)
    small, big = _ordered_nomes(p, q)
    damping = (1 - abs(small)) * (1 - abs(big))

    result = np.ones_like(arr)
    row = arr.copy()
    for _ in range(tol.max_terms):
        if np.max(np.abs(row), initial=0.0) / damping < tol.abs_tail:
            return _result(result, scalar)
        result *= qpoch(row, big, INF, tol)
        row = row * small
    raise AccuracyError(f"(x;p,q)_inf did not converge in {tol.max_terms} rows")


def pq_symbol_log(x: ArrayLike, p: complex, q: complex, tol: SeriesTolerance = DEFAULT_TOLERANCE):
    """Sum of principal logarithms of the factors of (x;p,q)_inf."""
    arr, scalar = _as_array(x)
    small, big = _ordered_nomes(p, q)
    damping = (1 - abs(small)) * (1 - abs(big))

    result = np.zeros_like(arr)
    row = arr.copy()
    for _ in range(tol.max_terms):
        if np.max(np.abs(row), initial=0.0) / damping < tol.abs_tail:
            return _result(result, scalar)
        result += qpoch_log(row, big, tol)
        row = row * small
    raise AccuracyError(f"log (x;p,q)_inf did not converge in {tol.max_terms} rows")


def theta(x: ArrayLike, q: complex, tol: SeriesTolerance = DEFAULT_TOLERANCE):
    """The theta function θ(x;q) = (x;q)_inf (q/x;q)_inf.

    Raises:
        DomainError: If x = 0
    """
    arr, scalar = _as_array(x)
    if np.any(arr == 0):
        raise DomainError("theta(x;q) is undefined at x = 0")
    q = complex(q)
    value = np.atleast_1d(qpoch(arr, q, INF, tol)) * np.atleast_1d(qpoch(q / arr, q, INF, tol))
    return _result(value, scalar)


def theta_log(x: ArrayLike, q: complex, tol: SeriesTolerance = DEFAULT_TOLERANCE):
    """Logarithm of θ(x;q) as a sum of factor logarithms."""
    arr, scalar = _as_array(x)
    if np.any(arr == 0):
        raise DomainError("theta(x;q) is undefined at x = 0")
    q = complex(q)
    value = np.atleast_1d(qpoch_log(arr, q, tol)) + np.atleast_1d(qpoch_log(q / arr, q, tol))
    return _result(value, scalar)


def theta_prod(args: ArrayLike, q: complex, tol: SeriesTolerance = DEFAULT_TOLERANCE) -> complex:
    """Product θ(a_1,...,a_n;q) over a flat list of scalars."""
    values = np.asarray(args, dtype=np.complex128).ravel()
    if values.size == 0:
        return 1.0 + 0j
    return complex(np.prod(theta(values, q, tol)))


def _check_gamma_poles(arr: NDArray[np.complex128], p: complex, q: complex) -> None:
    """Raise PoleError if some z is within POLE_GUARD of p^-k q^-j."""
    if np.any(arr == 0):
        raise DomainError("the elliptic gamma function is undefined at z = 0")

    zmax = float(np.max(np.abs(arr)))
    absp, absq = abs(p), abs(q)
    k = 0
    pk = 1.0 + 0j
    while zmax * abs(pk) > 0.5:
        j = 0
        pkql = pk
        while zmax * abs(pkql) > 0.5:
            if np.any(np.abs(1 - arr * pkql) < POLE_GUARD):
                raise PoleError(k, j)
            j += 1
            pkql *= q
            if absq == 0:
                break
        k += 1
        pk *= p
        if absp == 0:
            break


def ell_gamma(z: ArrayLike, p: complex, q: complex, tol: SeriesTolerance = DEFAULT_TOLERANCE):
    """The elliptic gamma function Γ(z;p,q) = (pq/z;p,q)_inf / (z;p,q)_inf.

    Raises:
        DomainError: If z = 0 or a nome is out of range
        PoleError: If z lies within the pole guard of p^-k q^-j
    """
    arr, scalar = _as_array(z)
    p = _check_nome(p, "p")
    q = _check_nome(q)
    _check_gamma_poles(arr, p, q)
    num = np.atleast_1d(pq_symbol(p * q / arr, p, q, tol))
    den = np.atleast_1d(pq_symbol(arr, p, q, tol))
    return _result(num / den, scalar)


def ell_gamma_log(z: ArrayLike, p: complex, q: complex, tol: SeriesTolerance = DEFAULT_TOLERANCE):
    """Logarithm of Γ(z;p,q), for arguments whose value over- or underflows."""
    arr, scalar = _as_array(z)
    p = _check_nome(p, "p")
    q = _check_nome(q)
    _check_gamma_poles(arr, p, q)
    num = np.atleast_1d(pq_symbol_log(p * q / arr, p, q, tol))
    den = np.atleast_1d(pq_symbol_log(arr, p, q, tol))
    return _result(num - den, scalar)


def ell_gamma_prod(args: ArrayLike, p: complex, q: complex) -> complex:
    """Product Γ(a_1,...,a_n;p,q) over a flat list of scalars."""
    values = np.asarray(args, dtype=np.complex128).ravel()
    if values.size == 0:
        return 1.0 + 0j
    return complex(np.prod(ell_gamma(values, p, q)))


def _residue_denominator_log(k: int, j: int, p: complex, q: complex) -> complex:
    # Γ(p^k q^j z) = Γ(z) prod_{s<j} θ(q^s z;p) prod_{r<k} θ(p^r q^j z;q), at z = p^-k q^-j
    z0 = p ** (-k) * q ** (-j)
    total = 0j
    for s in range(j):
        total += theta_log(q**s * z0, p)
    for r in range(k):
        total += theta_log(p**r * q**j * z0, q)
    return total


def gamma_residue(k: int, j: int, p: complex, q: complex) -> complex:
    """Residue of Γ(z;p,q) in z at the simple pole z = p^-k q^-j.

    At z = 1 the residue is -1/((p;p)(q;q)); the other poles follow from the
    difference equations, which move p^-k q^-j to 1 through theta factors.
    """
    return cmath.exp(gamma_residue_log(k, j, p, q))


def gamma_residue_log(k: int, j: int, p: complex, q: complex) -> complex:
    """Logarithm of :func:`gamma_residue`."""
    if k < 0 or j < 0:
        raise DomainError(f"pole indices must be non-negative, got ({k}, {j})")
    p = _check_nome(p, "p")
    q = _check_nome(q)
    z0_log = -k * cmath.log(p) - j * cmath.log(q)
    base = cmath.log(-1) - qpoch_log(p, p) - qpoch_log(q, q)
    return base + z0_log - _residue_denominator_log(k, j, p, q)


def gamma_shift_ratio(y: ArrayLike, n: int, p: complex, q: complex):
    """Γ(p^n y)/Γ(y) as a finite theta product.

    Swap ``p`` and ``q`` to shift in q instead.
    """
    arr, scalar = _as_array(y)
    result = np.ones_like(arr)
    if n >= 0:
        for j in range(n):
            result *= np.atleast_1d(theta(arr * p**j, q))
    else:
        for j in range(n, 0):
            result /= np.atleast_1d(theta(arr * p**j, q))
    return _result(result, scalar)


def principal_power(base: complex, exponent: Fraction | float) -> complex:
    """base**exponent on the principal branch of the logarithm."""
    if base == 0:
        if exponent > 0:
            return 0j
        raise DomainError("zero raised to a non-positive power")
    if isinstance(exponent, Fraction) and exponent.denominator == 1:
        return complex(base) ** int(exponent)
    return cmath.exp(float(exponent) * cmath.log(base))


@dataclass(frozen=True)
class ComplexParams:
    """Numeric parameters of the elliptic beta integrand.

    ``t`` holds the 2m+6 parameters t_r. Parameters built with
    :meth:`geometric` also remember x, v, u and alpha, with p = x q^v and
    t_r = u_r x^{α_r} q^{v α_r}.
    """

    q: complex
    p: complex
    t: tuple[complex, ...]
    x: complex | None = None
    v: int | None = None
    u: tuple[complex, ...] | None = None
    alpha: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        _check_nome(self.q)
        _check_nome(self.p, "p")
        if len(self.t) < 6 or len(self.t) % 2:
            raise DomainError(f"need 2m+6 parameters, got {len(self.t)}")

    @property
    def m(self) -> int:
        return (len(self.t) - 6) // 2

    @classmethod
    def balanced(cls, q: complex, p: complex, partial: tuple[complex, ...]) -> ComplexParams:
        """Complete ``partial`` by the last parameter fixed by balancing."""
        q, p = complex(q), complex(p)
        m = (len(partial) + 1 - 6) // 2
        last = (p * q) ** (m + 1) / complex(np.prod(np.asarray(partial, dtype=np.complex128)))
        return cls(q=q, p=p, t=(*map(complex, partial), last))

    @classmethod
    def geometric(
        cls,
        x: complex,
        v: int,
        q: complex,
        u: tuple[complex, ...],
        alpha: tuple[Fraction, ...],
    ) -> ComplexParams:
        """Parameters along p = x q^v with t_r = u_r p^{α_r} taken branch-consistently."""
        if len(u) != len(alpha):
            raise DomainError("u and alpha must have the same length")
        x, q = complex(x), complex(q)
        p = x * q**v
        t = tuple(
            complex(ur) * principal_power(x, a) * principal_power(q, Fraction(a) * v)
            for ur, a in zip(u, alpha, strict=True)
        )
        return cls(q=q, p=p, t=t, x=x, v=v, u=tuple(map(complex, u)), alpha=tuple(alpha))

    def balancing_defect(self) -> float:
        """Relative distance of prod t_r from (pq)^{m+1}."""
        target = (self.p * self.q) ** (self.m + 1)
        product = complex(np.prod(np.asarray(self.t, dtype=np.complex128)))
        return abs(product - target) / abs(target)

    def is_balanced(self, tol: float = 1e-12) -> bool:
        return self.balancing_defect() < tol
