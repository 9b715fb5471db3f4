"""Tests for q-Pochhammer symbols, theta functions and the elliptic gamma function."""

import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlimit.errors import DomainError, PoleError
from qlimit.qkernel import (
    ComplexParams,
    SeriesTolerance,
    ell_gamma,
    ell_gamma_log,
    gamma_residue,
    gamma_shift_ratio,
    pq_symbol,
    principal_power,
    qpoch,
    qpoch_log,
    theta,
    theta_prod,
)
from qlimit.quad import numeric_residue

P = 0.3 * cmath.exp(0.4j)
Q = 0.5 * cmath.exp(-1.1j)


def polar(radius_lo, radius_hi):
    return st.builds(
        lambda r, phi: r * cmath.exp(1j * phi),
        st.floats(radius_lo, radius_hi),
        st.floats(0, 2 * math.pi),
    )


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol * max(abs(a), abs(b), 1.0)


class TestQPoch:
    """Test (x;q)_n."""

    def test_finite_product(self):
        """Test (x;q)_3 against the explicit product."""
        x, q = 0.3 + 0.1j, 0.5
        assert close(qpoch(x, q, 3), (1 - x) * (1 - x * q) * (1 - x * q**2))

    def test_empty_product(self):
        """Test (x;q)_0 = 1."""
        assert qpoch(0.7, 0.2, 0) == 1

    def test_negative_order(self):
        """Test (x;q)_{-n} = 1/(x q^{-n};q)_n."""
        x, q = 0.3 + 0.2j, 0.6j
        assert close(qpoch(x, q, -2), 1 / ((1 - x / q**2) * (1 - x / q)))

    def test_zero_base_negative_order(self):
        """Test (0;q)_{-n} = 1."""
        assert qpoch(0, 0.4, -3) == 1

    def test_infinite_matches_long_finite(self):
        """Test (x;q)_inf against a long finite product."""
        x, q = 0.4 - 0.3j, 0.45
        assert close(qpoch(x, q), qpoch(x, q, 200))

    def test_array_input(self):
        """Test that arrays keep their shape."""
        values = qpoch(np.array([0.1, 0.2, 0.3]), 0.5)
        assert values.shape == (3,)
        assert close(values[1], qpoch(0.2, 0.5))

    def test_log_matches_value(self):
        """Test exp(qpoch_log) = qpoch."""
        x, q = 0.8 * cmath.exp(2j), 0.35j
        assert close(cmath.exp(qpoch_log(x, q)), qpoch(x, q))

    def test_nome_out_of_range(self):
        """Test |q| >= 1 is rejected for the infinite product."""
        with pytest.raises(DomainError):
            qpoch(0.5, 1.0)

    def test_tolerance_validation(self):
        """Test SeriesTolerance rejects non-positive tails."""
        with pytest.raises(DomainError):
            SeriesTolerance(abs_tail=0)


class TestTheta:
    """Test θ(x;q)."""

    @settings(max_examples=50, deadline=None)
    @given(x=polar(0.2, 3.0))
    def test_quasi_periodicity(self, x):
        """Test θ(qx;q) = -θ(x;q)/x."""
        assert close(theta(Q * x, Q), -theta(x, Q) / x, 1e-11)

    @settings(max_examples=50, deadline=None)
    @given(x=polar(0.2, 3.0))
    def test_inversion(self, x):
        """Test θ(q/x;q) = θ(x;q)."""
        assert close(theta(Q / x, Q), theta(x, Q), 1e-12)

    def test_zero_at_one(self):
        """Test θ(1;q) = 0."""
        assert theta(1.0, 0.3) == 0

    def test_undefined_at_zero(self):
        """Test θ(0;q) raises."""
        with pytest.raises(DomainError):
            theta(0, 0.3)

    def test_product(self):
        """Test theta_prod multiplies the factors."""
        assert close(theta_prod([0.3, 0.6j], Q), theta(0.3, Q) * theta(0.6j, Q))
        assert theta_prod([], Q) == 1

    @pytest.mark.parametrize("k", [-3, -2, -1, 0, 1, 2, 3])
    def test_shift_by_powers(self, k):
        """Test θ(q^k z;q) = (-1/z)^k q^{-k(k-1)/2} θ(z;q)."""
        z = 0.8 * cmath.exp(0.9j)
        expected = (-1 / z) ** k * Q ** (-k * (k - 1) // 2) * theta(z, Q)
        assert close(theta(Q**k * z, Q), expected, 1e-12)


class TestPqSymbol:
    """Test the double product (x;p,q)."""

    def test_zero(self):
        """Test (0;p,q) = 1."""
        assert pq_symbol(0, P, Q) == 1

    def test_single_row(self):
        """Test a negligible p leaves (x;q)."""
        x = 0.4 + 0.3j
        assert close(pq_symbol(x, 1e-300, Q), qpoch(x, Q))

    def test_symmetric_in_nomes(self):
        """Test (x;p,q) = (x;q,p)."""
        x = -0.6 + 0.5j
        assert close(pq_symbol(x, P, Q), pq_symbol(x, Q, P))


class TestEllipticGamma:
    """Test Γ(z;p,q)."""

    @settings(max_examples=40, deadline=None)
    @given(z=polar(0.35, 0.9))
    def test_q_difference_equation(self, z):
        """Test Γ(qz) = θ(z;p) Γ(z)."""
        assert close(ell_gamma(Q * z, P, Q), theta(z, P) * ell_gamma(z, P, Q), 1e-11)

    @settings(max_examples=40, deadline=None)
    @given(z=polar(0.35, 0.9))
    def test_p_difference_equation(self, z):
        """Test Γ(pz) = θ(z;q) Γ(z)."""
        assert close(ell_gamma(P * z, P, Q), theta(z, Q) * ell_gamma(z, P, Q), 1e-11)

    @settings(max_examples=40, deadline=None)
    @given(z=polar(0.35, 0.9))
    def test_reflection(self, z):
        """Test Γ(z) Γ(pq/z) = 1."""
        assert close(ell_gamma(z, P, Q) * ell_gamma(P * Q / z, P, Q), 1.0, 1e-12)

    def test_fixed_point(self):
        """Test Γ(√(pq)) = 1."""
        assert close(ell_gamma(cmath.sqrt(P * Q), P, Q), 1.0)

    def test_symmetric_in_nomes(self):
        """Test Γ(z;p,q) = Γ(z;q,p)."""
        z = 0.7 + 0.2j
        assert close(ell_gamma(z, P, Q), ell_gamma(z, Q, P))

    def test_log_matches_value(self):
        """Test exp(ell_gamma_log) = ell_gamma."""
        z = 0.45 - 0.6j
        assert close(cmath.exp(ell_gamma_log(z, P, Q)), ell_gamma(z, P, Q))

    def test_pole_guard(self):
        """Test arguments at a pole raise PoleError with its indices."""
        with pytest.raises(PoleError) as exc_info:
            ell_gamma(1 / (P * Q**2), P, Q)
        assert (exc_info.value.k, exc_info.value.j) == (1, 2)

    def test_shift_ratio(self):
        """Test gamma_shift_ratio against the direct quotient."""
        y = 0.6 + 0.3j
        assert close(gamma_shift_ratio(y, 2, P, Q), ell_gamma(P**2 * y, P, Q) / ell_gamma(y, P, Q))
        assert close(
            gamma_shift_ratio(y, -1, P, Q), ell_gamma(y / P, P, Q) / ell_gamma(y, P, Q), 1e-11
        )


class TestGammaResidue:
    """Test residues of Γ(z;p,q)."""

    def test_residue_at_one(self):
        """Test Res_{z=1} Γ = -1/((p;p)(q;q))."""
        expected = -1 / (qpoch(P, P) * qpoch(Q, Q))
        assert close(gamma_residue(0, 0, P, Q), expected)

    @pytest.mark.parametrize("k,j", [(0, 0), (0, 2), (1, 0), (1, 1), (2, 1)])
    def test_matches_numeric_residue(self, k, j):
        """Test the closed form against a small circle around the pole."""
        z0 = P ** (-k) * Q ** (-j)
        numeric = numeric_residue(lambda z: ell_gamma(z, P, Q), z0)
        assert close(gamma_residue(k, j, P, Q), numeric, 1e-10)

    def test_negative_indices(self):
        """Test negative pole indices are rejected."""
        with pytest.raises(DomainError):
            gamma_residue(-1, 0, P, Q)


class TestComplexParams:
    """Test the parameter container."""

    def test_balanced_completion(self):
        """Test the completed parameters multiply to pq."""
        params = ComplexParams.balanced(Q, P, (0.5, 0.4j, 0.6, -0.3, 0.7))
        assert params.m == 0
        assert params.is_balanced()

    def test_geometric_is_balanced(self):
        """Test t_r = u_r p^{α_r} with ∏ u_r = q is balanced along p = x q^v."""
        alpha = tuple(Fraction(1, 6) for _ in range(6))
        x = 0.3
        u = (0.8, 0.7j, 0.9, 0.6, -0.75)
        branch = x / np.prod([principal_power(x, a) for a in alpha])
        u = (*u, Q * branch / np.prod(u))
        params = ComplexParams.geometric(x, 6, Q, u, alpha)
        assert params.is_balanced(1e-11)

    def test_odd_parameter_count(self):
        """Test an odd number of parameters is rejected."""
        with pytest.raises(DomainError):
            ComplexParams(q=Q, p=P, t=(0.1,) * 7)

    def test_principal_power(self):
        """Test integer exponents stay exact and fractional ones use the principal branch."""
        assert principal_power(-2.0, Fraction(3)) == -8
        assert close(principal_power(-1.0, Fraction(1, 2)), 1j)
        with pytest.raises(DomainError):
            principal_power(0, Fraction(-1))
