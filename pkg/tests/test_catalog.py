"""Tests for the catalog of limit identities."""

import json
from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest

from qlimit.asym import BalancedVector
from qlimit.catalog import registry
from qlimit.catalog.entry import EntryKind, IdentityEntry, draw_spec
from qlimit.catalog.expr import monomial
from qlimit.catalog.first import AW
from qlimit.catalog.top import NR, SB_TOP
from qlimit.errors import DomainError, UnknownIdentityError
from qlimit.qkernel import qpoch
from qlimit.quad import random_phase

IDS = [entry.id for entry in registry.entries()]


def rel(a, b):
    return abs(a - b) / abs(b)


def accepted_env(identity_id: str, seed: int = 0) -> dict:
    """Parameters of the draw ``verify`` accepted."""
    return dict(registry.verify(identity_id, seed).params)


class TestRegistry:
    """Test lookup of entries."""

    def test_ids_unique(self):
        """Test no id is used twice."""
        assert len(IDS) == len(set(IDS))

    def test_known_ids(self):
        """Test the named identities are present."""
        for identity_id in ("NR", "SBtop", "II.25", "AW", "II.20", "II.33", "II.8", "D5.AW"):
            assert registry.get(identity_id).id == identity_id

    def test_unknown_id(self):
        """Test unknown ids raise."""
        with pytest.raises(UnknownIdentityError):
            registry.get("II.99")

    def test_faces_are_balanced(self):
        """Test every face vector has six exponents summing to one."""
        for entry in registry.entries():
            assert isinstance(entry.face_vector, BalancedVector)
            assert len(entry.face_vector) == 6

    def test_every_kind_present(self):
        """Test integrals, unilateral, bilateral and mixed identities all occur."""
        assert {entry.kind for entry in registry.entries()} == set(EntryKind)

    def test_corrected_entries(self):
        """Test entries differing from the commonly cited form are marked."""
        assert registry.get("II.33").corrected
        assert registry.get("Ex5.10").corrected
        assert not registry.get("AW").corrected

    @pytest.mark.parametrize("identity_id", IDS)
    def test_tiling_consistent(self, identity_id):
        """Test each face admits the entry's ζ and kind."""
        assert registry.tiling_consistent(registry.get(identity_id))

    def test_wrong_kind_rejected(self):
        """Test a bilateral series cannot come from the strict minimum of D2.AW."""
        entry = replace(registry.get("D2.AW"), kind=EntryKind.BILATERAL)
        assert not registry.tiling_consistent(entry)

    def test_wrong_zeta_rejected(self):
        """Test AW is only consistent at ζ = 0."""
        entry = replace(registry.get("AW"), zeta=Fraction(1, 3))
        assert not registry.tiling_consistent(entry)

    def test_flat_face_admits_both(self):
        """Test the II.33 face is consistent as a bilateral series and as an integral."""
        entry = registry.get("II.33")
        assert registry.tiling_consistent(replace(entry, kind=EntryKind.INTEGRAL))
        assert registry.tiling_consistent(replace(entry, kind=EntryKind.BILATERAL))


class TestDraws:
    """Test parameter draws."""

    def test_derived_parameters(self):
        """Test derived names are computed from the free ones."""
        spec = draw_spec("a b", {"c": "q/a/b"})
        env = spec.draw(np.random.default_rng(0), 0.35)
        assert spec.names == ("a", "b", "c")
        assert abs(env["a"] * env["b"] * env["c"] - 0.35) < 1e-14

    def test_empty_draw(self):
        """Test entries without parameters draw only q."""
        assert draw_spec("").draw(np.random.default_rng(0), 0.35) == {"q": 0.35 + 0j}

    def test_monomial(self):
        """Test monomials evaluate on an environment."""
        env = {"q": 0.5 + 0j, "t": 2.0 + 0j}
        assert abs(monomial("q*t^2")(env) - 2.0) < 1e-15


class TestVerify:
    """Test numerical verification of entries."""

    @pytest.mark.parametrize("identity_id", IDS)
    def test_one_draw(self, identity_id):
        """Test one draw per entry within its tolerance."""
        report = registry.verify(identity_id, draw_seed=0)
        assert report.passed, (report.rel_err, report.params)

    @pytest.mark.slow
    @pytest.mark.parametrize("identity_id", IDS)
    def test_twenty_draws(self, identity_id):
        """Test twenty draws per entry."""
        for seed in range(100, 120):
            report = registry.verify(identity_id, draw_seed=seed)
            assert report.passed, (seed, report.rel_err)

    def test_ii33_sample(self):
        """Test 20 draws of the bilateral II.33 at q = 0.35."""
        for seed in range(7, 27):
            assert registry.verify("II.33", seed, q=0.35).rel_err < 1e-10

    def test_deterministic(self):
        """Test identical seeds give identical reports."""
        first = registry.verify("II.20", 5)
        second = registry.verify("II.20", 5)
        assert first.to_json() == second.to_json()

    def test_tolerance_override(self):
        """Test an explicit tolerance replaces the entry's."""
        assert registry.verify("AW", 1, tol=1e-3).tol == 1e-3

    def test_params_recorded(self):
        """Test the report carries q and the drawn names."""
        report = registry.verify("AW", 2)
        assert set(report.params) == {"q", "t1", "t2", "t3", "t4"}
        assert report.draw_seed == 2

    @pytest.mark.parametrize("identity_id", ["AW", "NR", "D2.AW", "D3.AW"])
    def test_no_evaluation_redraws(self, identity_id):
        """Test integrals with parameters inside the unit circle evaluate on every draw."""
        for seed in range(5):
            report = registry.verify(identity_id, draw_seed=seed)
            assert report.redraws.get("evaluation", 0) == 0, report.evaluation_error
            assert report.evaluation_error == ""

    def test_evaluation_redraw_recorded(self, monkeypatch):
        """Test a failing evaluation is counted and its error kept in the report."""
        original = IdentityEntry.evaluate
        calls = []

        def flaky(entry, env):
            calls.append(env)
            if len(calls) == 1:
                raise DomainError("|q| must be below 1")
            return original(entry, env)

        monkeypatch.setattr(IdentityEntry, "evaluate", flaky)
        report = registry.verify("AW", draw_seed=3)
        assert report.passed
        assert report.redraws["evaluation"] == 1
        assert report.evaluation_error == "DomainError: |q| must be below 1"
        assert json.loads(report.to_json())["redraws"]["evaluation"] == 1


class TestLimits:
    """Test relations between entries."""

    def test_five_parameter_integral_degenerates(self):
        """Test sending t5 to zero in NR gives AW."""
        rng = np.random.default_rng(4)
        env = {"q": 0.35 + 0j, **{f"t{r}": random_phase(rng, 0.1, 0.75) for r in range(1, 5)}}
        small = {**env, "t5": 1e-9 + 0j}
        small["u"] = small["t1"] * small["t2"] * small["t3"] * small["t4"] * small["t5"]
        nr_lhs, nr_rhs = NR.evaluate(small)
        aw_lhs, aw_rhs = AW.evaluate(env)
        assert rel(nr_lhs.value, aw_lhs.value) < 1e-8
        assert rel(nr_rhs.value, aw_rhs.value) < 1e-8

    def test_ii33_quasi_periodic_in_x(self):
        """Test x -> qx multiplies both sides of II.33 by the index shift factor.

        With a = t1²/x² and b_r = t1t_r/x the shift sends a to a/q² and b_r
        to b_r/q, which moves the bilateral sum by one index.
        """
        env = accepted_env("II.33", 3)
        q, x, t1, t2 = env["q"], env["x"], env["t1"], env["t2"]
        a = t1 * t1 / (x * x)
        factor = t1 * t2 * (1 - a) / (1 - a / (q * q))
        for name in ("t3", "t4", "t5", "t6"):
            b = t1 * env[name] / x
            factor *= (1 - b / q) / (1 - a / b)
        shifted = {**env, "x": x * q}
        lhs, rhs = registry.get("II.33").evaluate(env)
        lhs_shifted, rhs_shifted = registry.get("II.33").evaluate(shifted)
        assert rel(lhs_shifted.value, factor * lhs.value) < 1e-10
        assert rel(rhs_shifted.value, factor * rhs.value) < 1e-10

    def test_ii33_normalized_invariant_in_x(self):
        """Test the bilateral sum over its x dependent products does not change under x -> qx."""
        env = accepted_env("II.33", 5)
        q, x, t1 = env["q"], env["x"], env["t1"]

        def normalized(x):
            lhs, _ = registry.get("II.33").evaluate({**env, "x": x})
            products = qpoch(q * t1 * t1 / (x * x), q) * qpoch(q * x * x / (t1 * t1), q)
            for name in ("t3", "t4", "t5", "t6"):
                t = env[name]
                products /= qpoch(q * t1 / (t * x), q) * qpoch(q * x / (t1 * t), q)
            return lhs.value / products

        assert rel(normalized(q * x), normalized(x)) < 1e-10

    def test_sbtop_independent_of_w(self):
        """Test the symmetry broken integral does not depend on w."""
        env = accepted_env("SBtop", 1)
        lhs, rhs = SB_TOP.evaluate(env)
        other_lhs, _ = SB_TOP.evaluate({**env, "w": env["w"] * 1.3 * np.exp(0.8j)})
        assert rel(other_lhs.value, lhs.value) < 1e-10
        assert rel(lhs.value, rhs.value) < 1e-10
