"""Tests for unilateral, bilateral and very-well-poised series."""

import cmath

import numpy as np
import pytest

from qlimit.errors import DivergenceError, DomainError
from qlimit.qkernel import SeriesTolerance, qpoch, theta
from qlimit.quad import random_phase
from qlimit.series import (
    SeriesKind,
    SeriesSpec,
    converges,
    phi,
    psi,
    psi66,
    series_result,
    sum_series,
    terminating_terms,
    vwp_psi66,
    vwp_w,
)


def rel(a, b):
    return abs(a - b) / abs(b)


def poch(*args, q):
    return complex(np.prod([qpoch(a, q) for a in args]))


class TestUnilateral:
    """Test rφs summations."""

    def test_q_binomial(self):
        """Test 1φ0(a;;q,z) = (az;q)/(z;q) at a = 0.3, z = 0.4, q = 0.5."""
        a, z, q = 0.3, 0.4, 0.5
        assert rel(phi([a], [], q, z), qpoch(a * z, q) / qpoch(z, q)) < 1e-12

    def test_q_gauss(self):
        """Test 2φ1(a,b;c;q,c/(ab)) on 20 random draws."""
        rng = np.random.default_rng(8)
        for _ in range(20):
            q = random_phase(rng, 0.2, 0.6)
            a = random_phase(rng, 1.5, 2.5)
            b = random_phase(rng, 1.5, 2.5)
            c = random_phase(rng, 0.3, 0.8)
            expected = poch(c / a, c / b, q=q) / poch(c, c / (a * b), q=q)
            assert rel(phi([a, b], [c], q, c / (a * b)), expected) < 1e-11

    def test_6w5(self):
        """Test 6W5(a;b,c,d;q,aq/(bcd)) against its product."""
        q, a = 0.35 + 0.1j, 0.3 - 0.2j
        b, c, d = 0.8j, -0.7, 0.6 + 0.5j
        lhs = vwp_w(a, (b, c, d), q, a * q / (b * c * d))
        rhs = poch(a * q, a * q / (b * c), a * q / (b * d), a * q / (c * d), q=q) / poch(
            a * q / b, a * q / c, a * q / d, a * q / (b * c * d), q=q
        )
        assert rel(lhs, rhs) < 1e-11

    def test_terminating_8w7(self):
        """Test the terminating 8W7 summation with n = 3."""
        q, n = 0.4 - 0.2j, 3
        a, b, c, d = 0.5 + 0.1j, 0.9j, 1.3, -0.8 + 0.4j
        e = a * a * q ** (n + 1) / (b * c * d)
        lhs = vwp_w(a, (b, c, d, e, q**-n), q, q)
        num = [a * q, a * q / (b * c), a * q / (b * d), a * q / (c * d)]
        den = [a * q / b, a * q / c, a * q / d, a * q / (b * c * d)]
        rhs = np.prod([qpoch(x, q, n) for x in num]) / np.prod([qpoch(x, q, n) for x in den])
        assert rel(lhs, rhs) < 1e-10

    def test_terminating_terms(self):
        """Test a series with q^-3 upstairs has four terms."""
        q = 0.5
        spec = SeriesSpec(SeriesKind.PHI, (q**-3, 0.2), (0.7,), q, 0.9)
        terms = terminating_terms(spec)
        assert len(terms) == 4
        assert rel(sum(terms), sum_series(spec)) < 1e-12
        assert rel(sum(reversed(terms)), sum(terms)) < 1e-14
        assert series_result(spec).terminating

    def test_terminating_terms_needs_termination(self):
        """Test non-terminating series are rejected."""
        with pytest.raises(DomainError):
            terminating_terms(SeriesSpec(SeriesKind.PHI, (0.2,), (), 0.5, 0.3))

    def test_zero_parameters_count(self):
        """Test zero parameters shift the q^C(n,2) exponent."""
        spec = SeriesSpec(SeriesKind.PHI, (0.0, 0.0), (), 0.5, 0.3)
        assert spec.exponent == -1
        assert SeriesSpec(SeriesKind.PHI, (), (0.0,), 0.5, 0.3).exponent == 2

    def test_q_exponential(self):
        """Test 0φ0(;;q,z) = (z;q) with its q^C(n,2) factor."""
        q, z = 0.45 + 0.2j, 1.7 - 0.4j
        assert rel(phi([], [], q, z), qpoch(z, q)) < 1e-12

    def test_tolerance_refinement(self):
        """Test tightening the tail tolerance moves the sum by less than the tolerance."""
        spec = SeriesSpec(SeriesKind.PHI, (0.6, 0.7j), (0.2,), 0.8, 0.9)
        tol = 1e-8
        coarse = series_result(spec, SeriesTolerance(abs_tail=tol))
        fine = series_result(spec, SeriesTolerance(abs_tail=tol / 10))
        assert abs(coarse.value - fine.value) < 10 * tol * fine.abs_sum


class TestBilateral:
    """Test rψs summations."""

    def test_jacobi_triple_product(self):
        """Test 0ψ1(;0;q,z) = (q, z, q/z; q)."""
        q, z = 0.3 + 0.4j, 1.2 - 0.7j
        assert rel(psi([], [0.0], q, z), qpoch(q, q) * theta(z, q)) < 1e-11

    def test_ramanujan_1psi1(self):
        """Test Ramanujan's 1ψ1 summation with |b/a| < |z| < 1."""
        q, a, b, z = 0.4j, 2.0 + 0.5j, 0.3, 0.5 - 0.2j
        expected = poch(q, b / a, a * z, q / (a * z), q=q) / poch(b, q / a, z, b / (a * z), q=q)
        assert rel(psi([a], [b], q, z), expected) < 1e-11

    def test_long_negative_tail(self):
        """Test a 1ψ1 whose negative side needs more than a thousand terms."""
        q, a, b, z = 0.35, 2.0, 0.97, 0.5
        expected = poch(q, b / a, a * z, q / (a * z), q=q) / poch(b, q / a, z, b / (a * z), q=q)
        result = series_result(SeriesSpec(SeriesKind.PSI, (a,), (b,), q, z))
        assert result.terms > 1000
        assert rel(result.value, expected) < 1e-10

    def test_index_shift(self):
        """Test shifting the summation index by one."""
        q, a, b, z = 0.5, 1.5j, 0.4, 0.6 + 0.1j
        shifted = (1 - a) / (1 - b) * z * psi([a * q], [b * q], q, z)
        assert rel(psi([a], [b], q, z), shifted) < 1e-12

    def test_divergent_negative_side(self):
        """Test the ratio test for n -> -inf."""
        spec = SeriesSpec(SeriesKind.PSI, (2.0,), (0.3,), 0.5, 0.1)
        assert not converges(spec)
        with pytest.raises(DivergenceError):
            sum_series(spec)


class TestVeryWellPoised:
    """Test the 6ψ6 summation and its variants."""

    @staticmethod
    def draw(rng):
        q = random_phase(rng, 0.2, 0.5)
        root = random_phase(rng, 0.55, 0.75)
        b, c, d, e = (random_phase(rng, 0.7, 0.95) for _ in range(4))
        return root, b, c, d, e, q

    def test_bailey_6psi6(self):
        """Test 20 random draws."""
        rng = np.random.default_rng(66)
        for _ in range(20):
            lhs, rhs = vwp_psi66(*self.draw(rng))
            assert rel(lhs, rhs) < 1e-10

    def test_collapse_to_6w5(self):
        """Test b = a cuts the series to 6W5(a;c,d,e;q,qa/(cde))."""
        root, _, c, d, e, q = self.draw(np.random.default_rng(3))
        a = root * root
        lhs, rhs = vwp_psi66(root, a, c, d, e, q)
        assert rel(lhs, vwp_w(a, (c, d, e), q, q * a / (c * d * e))) < 1e-10
        assert rel(lhs, rhs) < 1e-10

    def test_shifted_form_swap(self):
        """Test the shifted form is symmetric in t_3 and t_4."""
        q, x = 0.4, 0.9 * cmath.exp(0.3j)
        t = [0.7, 0.6j, 0.8 * cmath.exp(1j), 0.75 * cmath.exp(-2j), 0.9]
        t.append(q / np.prod(t))
        swapped = [t[0], t[1], t[3], t[2], t[4], t[5]]
        lhs, rhs = psi66(t, x, q)
        assert rel(lhs, rhs) < 1e-10
        assert rel(psi66(swapped, x, q)[0], lhs) < 1e-12

    def test_shifted_form_balancing(self):
        """Test unbalanced parameters are rejected."""
        with pytest.raises(DomainError):
            psi66([0.5] * 6, 0.9, 0.4)

    def test_vwp_takes_no_lower(self):
        """Test very-well-poised specs carry only upper parameters."""
        with pytest.raises(DomainError):
            SeriesSpec(SeriesKind.VWP_W, (0.3, 0.5), (0.2,), 0.5, 0.1)
