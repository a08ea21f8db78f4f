"""Hyperbolic module: Möbius actions, extension, distance, geodesics,
model conversion, the subgroup catalog, and boundary transforms."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geofib.errors import DegenerateParameterError
from geofib.euclid import Vec3
from geofib.hyper import (
    H3_GROUP_NAMES,
    INFINITY,
    BoundaryPoint,
    BoundaryTransform,
    GeodesicRelation,
    H3PointBall,
    H3PointHalf,
    MobiusMap,
    ball_to_half,
    catalog_h3,
    endpoint_mismatch,
    geodesic_from_endpoints,
    geodesic_intersection,
    geodesic_point_distance,
    geodesic_relation,
    half_to_ball,
    hyperbolic_distance,
    hyperbolic_distance_ball,
    image_of_geodesic,
    mobius_apply,
    point_on_geodesic,
    poincare_extend,
    subgroup_h3,
)
from oracles import grid_min_distance, quaternion_extend, vertical_path_length

finite_complex = st.complex_numbers(
    min_magnitude=0, max_magnitude=50, allow_nan=False, allow_infinity=False
)


class TestMobiusBoundary:
    def test_identity(self):
        assert mobius_apply(MobiusMap.identity(), 3 + 4j).value == 3 + 4j

    def test_dilation(self):
        m = MobiusMap(2, 0, 0, 1)
        assert mobius_apply(m, 1 + 1j).value == 2 + 2j

    def test_pole_goes_to_infinity(self):
        m = MobiusMap(0, -1, 1, 0)  # z -> -1/z
        assert mobius_apply(m, 0).is_infinity
        assert mobius_apply(m, INFINITY).value == 0

    def test_infinity_under_affine_map(self):
        assert mobius_apply(MobiusMap(2, 3, 0, 1), INFINITY).is_infinity

    @settings(max_examples=60, deadline=None)
    @given(finite_complex, finite_complex)
    def test_projective_scaling_leaves_action_unchanged(self, w, lam):
        if abs(lam) < 1e-3:
            lam = 1.0 + 1j
        m = MobiusMap(1 + 2j, -0.5, 0.25j, 3.0)
        scaled = MobiusMap(lam * m.a, lam * m.b, lam * m.c, lam * m.d)
        expect = mobius_apply(m, w)
        got = mobius_apply(scaled, w)
        assert not expect.is_infinity
        assert abs(expect.value - got.value) <= 1e-12 * max(1.0, abs(expect.value))
        assert m.projectively_close(scaled)

    def test_compose_and_inverse(self):
        m1 = MobiusMap(1, 2j, 0.5, 1)
        m2 = MobiusMap(3, -1, 1j, 2)
        w = 0.7 - 0.3j
        lhs = mobius_apply(m1.compose(m2), w)
        rhs = mobius_apply(m1, mobius_apply(m2, w))
        assert abs(lhs.value - rhs.value) <= 1e-12
        assert m1.compose(m1.inverse()).projectively_close(MobiusMap.identity())

    def test_degenerate_map_rejected(self):
        with pytest.raises(ValueError):
            MobiusMap(1, 2, 2, 4)


class TestPoincareExtension:
    def test_identity(self):
        p = H3PointHalf(1j, 1.0)
        q = poincare_extend(MobiusMap.identity(), p)
        assert q.z == 1j and q.x == 1.0

    def test_similitude_rule(self):
        q = poincare_extend(MobiusMap(2, 0, 0, 1), H3PointHalf(1.0, 1.0))
        assert abs(q.z - 2.0) <= 1e-15 and abs(q.x - 2.0) <= 1e-15

    def test_inversion_fixes_unit_semicircle_apex(self):
        # frozen: apex (0, 1) of the unit semicircle is fixed by z -> -1/z;
        # cross-checked against quaternion evaluation
        m = MobiusMap(0, -1, 1, 0)
        z_o, x_o = quaternion_extend(m, H3PointHalf(0.0, 1.0))
        assert abs(z_o) <= 1e-15 and abs(x_o - 1.0) <= 1e-15
        q = poincare_extend(m, H3PointHalf(0.0, 1.0))
        assert abs(q.z) <= 1e-15 and abs(q.x - 1.0) <= 1e-15

    def test_matches_quaternion_evaluation_on_random_maps(self):
        rng = np.random.default_rng(3)
        for _ in range(120):
            entries = rng.normal(size=8)
            try:
                m = MobiusMap(
                    complex(entries[0], entries[1]),
                    complex(entries[2], entries[3]),
                    complex(entries[4], entries[5]),
                    complex(entries[6], entries[7]),
                )
            except ValueError:
                continue
            p = H3PointHalf(complex(*rng.uniform(-2, 2, 2)), rng.uniform(0.1, 3))
            z_o, x_o = quaternion_extend(m, p)
            q = poincare_extend(m, p)
            assert abs(q.z - z_o) <= 1e-10 * max(1.0, abs(z_o))
            assert abs(q.x - x_o) <= 1e-10 * max(1.0, x_o)

    def test_boundary_limit_matches_boundary_action(self):
        m = MobiusMap(1 + 1j, 0.3, -0.2j, 1)
        w = 0.4 - 0.7j
        boundary = mobius_apply(m, w).value
        for x in (1e-4, 1e-6):
            q = poincare_extend(m, H3PointHalf(w, x))
            assert abs(q.z - boundary) <= 5 * x

    def test_catalog_generators_preserve_distance(self):
        rng = np.random.default_rng(7)
        fams = [f for spec in catalog_h3(ratio=0.8) for f in spec.generators]
        for _ in range(150):
            fam = fams[rng.integers(len(fams))]
            m = fam(rng.uniform(-2, 2))
            p = H3PointHalf(complex(*rng.uniform(-2, 2, 2)), rng.uniform(0.1, 4))
            q = H3PointHalf(complex(*rng.uniform(-2, 2, 2)), rng.uniform(0.1, 4))
            d0 = hyperbolic_distance(p, q)
            d1 = hyperbolic_distance(poincare_extend(m, p), poincare_extend(m, q))
            assert abs(d0 - d1) <= 1e-9 * max(1.0, d0)


class TestDistance:
    def test_zero_iff_same_point(self):
        p = H3PointHalf(0.0, 1.0)
        assert hyperbolic_distance(p, p) == 0.0

    def test_vertical_unit_step_is_one(self):
        # frozen: d((0,1),(0,e)) = 1; oracle: numeric path integral of 1/x
        oracle = vertical_path_length(1.0, math.e)
        assert abs(oracle - 1.0) <= 1e-9
        assert abs(hyperbolic_distance(H3PointHalf(0, 1.0), H3PointHalf(0, math.e)) - 1.0) <= 1e-12

    def test_symmetry_and_positivity(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            p = H3PointHalf(complex(*rng.uniform(-2, 2, 2)), rng.uniform(0.1, 4))
            q = H3PointHalf(complex(*rng.uniform(-2, 2, 2)), rng.uniform(0.1, 4))
            assert hyperbolic_distance(p, q) == hyperbolic_distance(q, p)
            assert hyperbolic_distance(p, q) > 0


class TestGeodesics:
    def test_unit_semicircle_from_endpoints(self):
        g = geodesic_from_endpoints(-1j, 1j)
        apex = point_on_geodesic(g, 0.5)
        assert abs(apex.z) <= 1e-15 and abs(apex.x - 1.0) <= 1e-15

    def test_vertical_line_from_endpoints(self):
        g = geodesic_from_endpoints(0.0, INFINITY)
        assert g.is_vertical
        mid = point_on_geodesic(g, 0.5)
        assert mid.z == 0.0 and abs(mid.x - 1.0) <= 1e-15

    def test_off_center_semicircle(self):
        g = geodesic_from_endpoints(-1j, 2j)
        apex = point_on_geodesic(g, 0.5)
        assert abs(apex.z - 0.5j) <= 1e-15 and abs(apex.x - 1.5) <= 1e-15

    def test_equal_endpoints_rejected(self):
        with pytest.raises(ValueError):
            geodesic_from_endpoints(1 + 1j, 1 + 1j)
        with pytest.raises(ValueError):
            geodesic_from_endpoints(INFINITY, INFINITY)

    def test_parameter_range_enforced(self):
        g = geodesic_from_endpoints(-1j, 1j)
        for s in (0.0, 1.0, -0.2, 1.3):
            with pytest.raises(ValueError):
                point_on_geodesic(g, s)

    def test_sampled_points_sit_on_the_geodesic(self):
        g = geodesic_from_endpoints(0.3 - 0.8j, -1.5 + 2j)
        for s in np.linspace(0.05, 0.95, 9):
            assert geodesic_point_distance(g, point_on_geodesic(g, float(s))) <= 1e-12

    def test_point_distance_vertical(self):
        g = geodesic_from_endpoints(0.0, INFINITY)
        assert abs(geodesic_point_distance(g, H3PointHalf(1.0, 1.0)) - math.asinh(1.0)) <= 1e-14


class TestGeodesicRelation:
    def test_equal(self):
        g1 = geodesic_from_endpoints(-1j, 1j)
        g2 = geodesic_from_endpoints(1j, -1j)
        assert geodesic_relation(g1, g2, 1e-9) is GeodesicRelation.EQUAL

    def test_intersecting_through_common_apex(self):
        g1 = geodesic_from_endpoints(-1j, 1j)
        g2 = geodesic_from_endpoints(-1.0, 1.0)
        assert geodesic_relation(g1, g2, 1e-9) is GeodesicRelation.INTERSECTING
        hit = geodesic_intersection(g1, g2, 1e-9)
        assert hit is not None
        point, angle = hit
        assert abs(point.z) <= 1e-6 and abs(point.x - 1.0) <= 1e-6
        assert angle > 0.5  # perpendicular planes cross at a right angle

    def test_disjoint_vertical_vs_far_semicircle(self):
        g1 = geodesic_from_endpoints(0.0, INFINITY)
        g2 = geodesic_from_endpoints(3.0, 4.0)
        # oracle: dense grid search stays far from zero
        assert grid_min_distance(g1, g2, n=150) > 2.0
        assert geodesic_relation(g1, g2, 1e-9) is GeodesicRelation.DISJOINT

    def test_asymptotic_geodesics_are_disjoint(self):
        g1 = geodesic_from_endpoints(0.0, INFINITY)
        g2 = geodesic_from_endpoints(1.0, INFINITY)
        assert geodesic_relation(g1, g2, 1e-9) is GeodesicRelation.DISJOINT
        g3 = geodesic_from_endpoints(0.0, 2.0)
        g4 = geodesic_from_endpoints(0.0, -3.0)
        assert geodesic_relation(g3, g4, 1e-9) is GeodesicRelation.DISJOINT

    def test_relation_invariant_under_mobius(self):
        rng = np.random.default_rng(9)
        m = MobiusMap(1.2, 0.3 - 1j, 0.2j, 0.8)
        for _ in range(60):
            ends = rng.normal(size=(4, 2))
            g1 = geodesic_from_endpoints(complex(*ends[0]), complex(*ends[1]))
            g2 = geodesic_from_endpoints(complex(*ends[2]), complex(*ends[3]))
            rel = geodesic_relation(g1, g2, 1e-8)
            rel_img = geodesic_relation(
                image_of_geodesic(m, g1), image_of_geodesic(m, g2), 1e-8
            )
            assert rel_img is rel

    def test_images_of_geodesics_are_geodesics(self):
        rng = np.random.default_rng(13)
        m = MobiusMap(0.6 + 0.1j, -0.4, 0.35j, 1.1)
        for _ in range(40):
            ends = rng.normal(size=(2, 2))
            g = geodesic_from_endpoints(complex(*ends[0]), complex(*ends[1]))
            img = image_of_geodesic(m, g)
            for s in (0.2, 0.5, 0.8):
                moved = poincare_extend(m, point_on_geodesic(g, s))
                assert geodesic_point_distance(img, moved) <= 1e-9


class TestModelConversion:
    def test_base_point_to_ball_center(self):
        v = half_to_ball(H3PointHalf(0.0, 1.0)).v
        assert v.norm() <= 1e-15

    def test_round_trip(self):
        rng = np.random.default_rng(21)
        for _ in range(200):
            p = H3PointHalf(complex(*rng.uniform(-3, 3, 2)), rng.uniform(0.05, 6))
            q = ball_to_half(half_to_ball(p))
            assert abs(q.z - p.z) <= 1e-10 and abs(q.x - p.x) <= 1e-10

    def test_boundary_limit(self):
        for x in (1e-2, 1e-4, 1e-6):
            b = half_to_ball(H3PointHalf(0.7 - 0.2j, x))
            assert 1.0 - b.v.norm() <= 2 * x

    def test_distance_preserved(self):
        rng = np.random.default_rng(22)
        for _ in range(100):
            p = H3PointHalf(complex(*rng.uniform(-2, 2, 2)), rng.uniform(0.1, 4))
            q = H3PointHalf(complex(*rng.uniform(-2, 2, 2)), rng.uniform(0.1, 4))
            d_half = hyperbolic_distance(p, q)
            d_ball = hyperbolic_distance_ball(half_to_ball(p), half_to_ball(q))
            assert abs(d_half - d_ball) <= 1e-9 * max(1.0, d_half)

    def test_real_axis_lands_on_z_plane_equator(self):
        for t in (-3.0, -0.5, 0.0, 2.0):
            b = half_to_ball(H3PointHalf(complex(t, 0.0), 1e-9))
            assert abs(b.v.z) <= 1e-8
            assert abs(b.v.norm() - 1.0) <= 1e-8


class TestCatalogH3:
    def test_names_and_dimensions(self):
        specs = catalog_h3()
        assert [s.name for s in specs] == list(H3_GROUP_NAMES)
        assert [s.dimension for s in specs] == [0, 1, 1, 1, 1, 2, 2, 2, 3, 3, 3, 3, 3, 4, 6]
        for s in specs:
            assert len(s.generators) == s.dimension

    def test_hyp_par_generators_act_as_translation_and_dilation(self):
        spec = subgroup_h3("⟨Hyp,Par⟩")
        trans, dil = spec.generators
        w = 0.3 + 0.9j
        assert abs(mobius_apply(trans(1.7), w).value - (w + 1.7)) <= 1e-12
        assert abs(mobius_apply(dil(0.6), w).value - math.exp(0.6) * w) <= 1e-12

    def test_sim_dimension_four(self):
        assert subgroup_h3("Sim").dimension == 4

    def test_so3_fixes_ball_center(self):
        spec = subgroup_h3("SO(3)")
        base = H3PointHalf(0.0, 1.0)
        for fam in spec.generators:
            for s in np.linspace(-2.5, 2.5, 7):
                q = poincare_extend(fam(float(s)), base)
                assert abs(q.z) <= 1e-12 and abs(q.x - 1.0) <= 1e-12

    def test_h2_is_real_and_preserves_the_vertical_plane(self):
        spec = subgroup_h3("H(2)")
        for fam in spec.generators:
            m = fam(0.9)
            assert max(abs(m.a.imag), abs(m.b.imag), abs(m.c.imag), abs(m.d.imag)) <= 1e-15
            p = H3PointHalf(0.4, 1.3)  # in the plane over the real axis
            q = poincare_extend(m, p)
            assert abs(q.z.imag) <= 1e-12

    @settings(max_examples=40, deadline=None)
    @given(st.floats(-2, 2, allow_nan=False), st.floats(-2, 2, allow_nan=False))
    def test_families_are_homomorphisms(self, s1, s2):
        for spec in (subgroup_h3("Sim"), subgroup_h3("H(3)"), subgroup_h3("Lox", ratio=0.7)):
            for fam in spec.generators:
                assert fam(s1).compose(fam(s2)).projectively_close(fam(s1 + s2), tol=1e-9)

    def test_degenerate_loxodromic_ratios_rejected(self):
        with pytest.raises(DegenerateParameterError):
            subgroup_h3("Lox", ratio=0.0)
        with pytest.raises(DegenerateParameterError):
            subgroup_h3("ScrewHom", ratio=math.inf)

    def test_unknown_name_rejected(self):
        with pytest.raises(KeyError):
            subgroup_h3("PSL(7)")


class TestBoundaryTransform:
    def test_conjugation_branch(self):
        t = BoundaryTransform(MobiusMap.identity(), conjugate=True)
        assert t.apply(1 + 2j).value == 1 - 2j
        p = t.extend(H3PointHalf(1 + 2j, 0.7))
        assert p.z == 1 - 2j and p.x == 0.7

    def test_compose_inverse_round_trip(self):
        rng = np.random.default_rng(31)
        for _ in range(40):
            e = rng.normal(size=8)
            try:
                m = MobiusMap(complex(e[0], e[1]), complex(e[2], e[3]), complex(e[4], e[5]), complex(e[6], e[7]))
            except ValueError:
                continue
            t = BoundaryTransform(m, conjugate=bool(rng.integers(2)))
            both = t.compose(t.inverse())
            w = complex(*rng.uniform(-2, 2, 2))
            assert not both.conjugate
            assert abs(both.apply(w).value - w) <= 1e-9

    def test_rotation_after_reflection_is_real_reflection(self):
        rot = BoundaryTransform(MobiusMap(-1, 0, 0, 1), conjugate=False)
        refl = BoundaryTransform(MobiusMap(-1, 0, 0, 1), conjugate=True)
        both = rot.compose(refl)
        w = 0.8 - 0.3j
        assert abs(both.apply(w).value - w.conjugate()) <= 1e-15


class TestPointTypes:
    def test_half_space_requires_positive_height(self):
        with pytest.raises(ValueError):
            H3PointHalf(0.0, 0.0)
        with pytest.raises(ValueError):
            H3PointHalf(0.0, -1.0)

    def test_ball_point_requires_norm_below_one(self):
        with pytest.raises(ValueError):
            H3PointBall(Vec3(1.0, 0.0, 0.0))

    def test_boundary_point_mismatch(self):
        g1 = geodesic_from_endpoints(0.0, INFINITY)
        g2 = geodesic_from_endpoints(0.0, 1.0)
        assert endpoint_mismatch(g1, g2) == math.inf
        assert BoundaryPoint.of(2 + 1j).value == 2 + 1j
