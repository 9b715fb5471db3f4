"""Tests for the tiling of exponent space and the correct contour shift."""

from fractions import Fraction

import numpy as np
import pytest

from qlimit.asym import fob, is_generic
from qlimit.errors import ContractError, DomainError
from qlimit.tiling import (
    LimitKind,
    Tile,
    TileFamily,
    check_sample,
    classify,
    face_dimension,
    limit_kinds_at,
    normalize_zeta,
    p3_vertices,
    random_generic_alpha,
    second_order_consistent,
    tile_geometry,
    verify_cover,
)

F = Fraction
ZERO = (F(0),) * 6
SIXTH = (F(1, 6),) * 6
P3_CENTROID = (F(5, 12),) * 3 + (F(-1, 12),) * 3
CORNER = (F(0), F(0), F(0), F(0), F(1, 2), F(1, 2))
HALF_F = F(1, 2)


class TestTile:
    """Test tile construction and labels."""

    def test_label(self):
        """Test the label lists family and base."""
        assert Tile(TileFamily.P_I, ZERO).label() == "P_I[0,0,0,0,0,0]"
        tile = Tile(TileFamily.P_III, ZERO, subset={1, 2, 3})
        assert tile.label() == "P_III[0,0,0,0,0,0;{1,2,3}]"

    def test_half_integral_label(self):
        """Test half-integral bases print as fractions."""
        base = (F(1, 2), F(-1, 2), F(1, 2), F(-1, 2), F(1, 2), F(-1, 2))
        assert Tile(TileFamily.P_I, base).label().startswith("P_I[1/2,-1/2")

    def test_base_sum(self):
        """Test P_I bases sum to 0 and hatted bases to 2."""
        with pytest.raises(ContractError):
            Tile(TileFamily.P_I, (F(1),) + (F(0),) * 5)
        Tile(TileFamily.P_I_HAT, (F(1), F(1)) + (F(0),) * 4)

    def test_subset_required(self):
        """Test P_III needs a 3-subset."""
        with pytest.raises(ContractError):
            Tile(TileFamily.P_III, ZERO, subset={1, 2})

    def test_axis_required(self):
        """Test P_II needs an axis."""
        with pytest.raises(ContractError):
            Tile(TileFamily.P_II, ZERO)

    def test_correct_zeta(self):
        """Test the correct ζ of each family."""
        assert Tile(TileFamily.P_I, ZERO).correct_zeta(SIXTH) == 0
        tile = Tile(TileFamily.P_III, ZERO, subset={1, 2, 3})
        assert tile.correct_zeta(P3_CENTROID) == F(1, 4)

    @pytest.mark.parametrize(
        "zeta,expected",
        [(F(5, 4), F(1, 4)), (F(-1, 3), F(1, 3)), (F(3, 4), F(1, 4)), (F(1, 2), F(1, 2))],
    )
    def test_normalize_zeta(self, zeta, expected):
        """Test ζ is reduced into [0, 1/2]."""
        assert normalize_zeta(zeta) == expected


class TestClassify:
    """Test classification of exponent vectors."""

    def test_uniform(self):
        """Test (1/6)^6 is interior to P_I with base 0."""
        assignment = classify(SIXTH)
        assert assignment.interior
        assert [tile.label() for tile, _ in assignment.tiles] == ["P_I[0,0,0,0,0,0]"]
        assert assignment.correct_zeta == 0
        assert assignment.limit_kind is LimitKind.INTEGRAL_AT_MIN
        assert second_order_consistent(assignment)

    def test_p3_centroid(self):
        """Test the centroid of P_III with subset {1,2,3}."""
        assignment = classify(P3_CENTROID)
        assert assignment.interior
        tile, dim = assignment.tiles[0]
        assert tile.family is TileFamily.P_III
        assert tile.subset == frozenset({1, 2, 3})
        assert dim == 5
        assert assignment.correct_zeta == F(1, 4)
        assert fob(P3_CENTROID, F(1, 4)) == 0

    def test_face_point(self):
        """Test a point on a face lists every incident tile."""
        assignment = classify(CORNER)
        assert not assignment.interior
        assert len(assignment.tiles) > 1
        assert all(dim < 5 for _, dim in assignment.tiles)
        assert fob(CORNER, assignment.correct_zeta) == 0
        assert assignment.correct_zeta in assignment.zeta_candidates

    def test_unbalanced(self):
        """Test Σα != 1 is rejected."""
        with pytest.raises(DomainError):
            classify((F(1, 6),) * 5 + (F(0),))

    def test_random_generic_alpha(self):
        """Test drawn vectors are balanced and generic."""
        rng = np.random.default_rng(0)
        for _ in range(20):
            alpha = random_generic_alpha(rng)
            assert sum(alpha) == 1
            assert is_generic(alpha)

    def test_check_sample(self):
        """Test generic samples have no violations."""
        rng = np.random.default_rng(11)
        for _ in range(25):
            assert check_sample(random_generic_alpha(rng)) is None


class TestCover:
    """Test the cover audit."""

    def test_small_cover(self):
        """Test a short run passes."""
        report = verify_cover(40, seed=1)
        assert report.samples == 40
        assert report.unique_interior == 40
        assert report.passed

    def test_report_serializes(self):
        """Test the report renders as JSON."""
        assert '"samples": 5' in verify_cover(5, seed=2).to_json()

    @pytest.mark.slow
    def test_full_cover(self):
        """Test 1000 generic samples are each interior to exactly one tile."""
        report = verify_cover(1000, seed=2024)
        assert report.passed, report.violations[:3]
        assert report.zero_fob == report.consistent_sob == 1000


def sample_tiles():
    return [
        Tile(TileFamily.P_I, ZERO),
        Tile(TileFamily.P_I, (F(1, 2), F(-1, 2)) * 3),
        Tile(TileFamily.P_I_HAT, (F(1), F(1)) + (F(0),) * 4),
        Tile(TileFamily.P_II, ZERO, axis=1),
        Tile(TileFamily.P_II, (F(1), F(-1), F(0), F(0), F(2), F(-2)), axis=4),
        Tile(TileFamily.P_III, ZERO, subset={1, 2, 3}),
        Tile(TileFamily.P_III, (F(1), F(0), F(-1), F(0), F(0), F(0)), subset={2, 4, 6}),
        Tile(TileFamily.P_III_HAT, (F(1), F(1), F(0), F(0), F(0), F(0)), subset={1, 5, 6}),
    ]


class TestGeometry:
    """Test vertices and bounding inequalities."""

    def test_simplex(self):
        """Test P_I with base 0 is the standard simplex."""
        vertices, forms = tile_geometry(Tile(TileFamily.P_I, ZERO))
        assert sorted(vertices) == sorted(tuple(F(int(i == r)) for i in range(6)) for r in range(6))
        assert all(form.const == 0 and sorted(form.coeffs) == [0] * 5 + [1] for form in forms)

    def test_cross_polytope(self):
        """Test P_II has 10 vertices and 32 facets."""
        vertices, forms = tile_geometry(Tile(TileFamily.P_II, ZERO, axis=1))
        assert len(vertices) == 10
        assert len(forms) == 32

    @pytest.mark.parametrize("tile", sample_tiles(), ids=lambda tile: tile.label())
    def test_vertices_on_facets(self, tile):
        """Test each vertex satisfies every inequality, with equality on at least five."""
        vertices, forms = tile_geometry(tile)
        assert len(vertices) in (6, 10)
        for vertex in vertices:
            values = [form(vertex) for form in forms]
            assert all(v >= 0 for v in values)
            assert sum(v == 0 for v in values) >= 5

    @pytest.mark.parametrize("tile", sample_tiles(), ids=lambda tile: tile.label())
    def test_vertices_are_faces(self, tile):
        """Test vertices are zero dimensional faces and the centroid is interior."""
        vertices, _ = tile_geometry(tile)
        assert all(face_dimension(tile, vertex) == 0 for vertex in vertices)
        centroid = tuple(sum(v[i] for v in vertices) / len(vertices) for i in range(6))
        assert face_dimension(tile, centroid) == 5

    @pytest.mark.parametrize("hatted", [False, True])
    def test_half_integral_p3_base(self, hatted):
        """Test a half-integral P_III base names the integral tile on the complementary subset."""
        rng = np.random.default_rng(24)
        family = TileFamily.P_III_HAT if hatted else TileFamily.P_III
        sign = -1 if hatted else 1
        for _ in range(20):
            head = [int(v) for v in rng.integers(-3, 4, size=5)]
            beta = (*head, (2 if hatted else 0) - sum(head))
            subset = frozenset(int(v) for v in rng.choice(np.arange(1, 7), 3, replace=False))
            shifted = tuple(
                F(b) + sign * (HALF_F - int(i + 1 in subset)) for i, b in enumerate(beta)
            )
            assert sum(shifted) == sum(beta)
            complement = frozenset(range(1, 7)) - subset
            vertices, _ = tile_geometry(Tile(family, beta, subset=complement))
            assert set(p3_vertices(shifted, subset, hatted=hatted)) == set(vertices)


class TestFaces:
    """Test classification on lower dimensional faces."""

    def test_shared_facet(self):
        """Test a point on α_1 = 0 lies in P_I and its P_II neighbor only."""
        alpha = (F(0), F(3, 31), F(5, 31), F(6, 31), F(8, 31), F(9, 31))
        assignment = classify(alpha)
        labels = {tile.label() for tile, _ in assignment.tiles}
        assert labels == {"P_I[0,0,0,0,0,0]", "P_II[0,0,0,0,0,0;1]"}
        assert all(dim == 4 for _, dim in assignment.tiles)

    def test_vertex(self):
        """Test the vertex e_6 of the standard simplex is a zero dimensional face of each tile."""
        assignment = classify((F(0),) * 5 + (F(1),))
        assert len(assignment.tiles) > 1
        assert all(dim == 0 for _, dim in assignment.tiles)

    def test_permutation_equivariance(self):
        """Test permuting α permutes the tiles and keeps the correct ζ."""
        rng = np.random.default_rng(5)
        for _ in range(10):
            alpha = random_generic_alpha(rng)
            order = [int(i) for i in rng.permutation(6)]
            permuted = tuple(alpha[i] for i in order)
            first, second = classify(alpha), classify(permuted)
            assert first.correct_zeta == second.correct_zeta
            assert first.tiles[0][0].family == second.tiles[0][0].family
            assert second.interior

    def test_limit_kinds_flat(self):
        """Test a face with fob identically zero admits integrals and series at ζ = 1/2."""
        alpha = (F(-1), F(0), F(1, 2), F(1, 2), F(1, 2), F(1, 2))
        assert all(fob(alpha, F(k, 12)) == 0 for k in range(7))
        kinds = limit_kinds_at(classify(alpha), F(1, 2))
        assert kinds == {LimitKind.INTEGRAL_AT_MIN, LimitKind.SERIES_AT_MAX}

    def test_limit_kinds_strict_minimum(self):
        """Test (0^3, (1/3)^3) at ζ = 0 only admits an integral."""
        alpha = (F(0),) * 3 + (F(1, 3),) * 3
        assert limit_kinds_at(classify(alpha), F(0)) == {LimitKind.INTEGRAL_AT_MIN}

    def test_limit_kinds_maximum_plateau(self):
        """Test fob is zero on [0, 1/10] and lower elsewhere for ((-3/10)^2, (1/10)^2, (7/10)^2)."""
        alpha = (F(-3, 10), F(-3, 10), F(1, 10), F(1, 10), F(7, 10), F(7, 10))
        assert fob(alpha, F(0)) == fob(alpha, F(1, 10)) == 0
        assert fob(alpha, F(3, 10)) == F(-2, 25)
        assert fob(alpha, F(1, 2)) == F(-4, 25)
        assert limit_kinds_at(classify(alpha), F(1, 10)) == {LimitKind.SERIES_AT_MAX}
