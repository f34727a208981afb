"""Family elements, axes, crossings, arc lifts, and their limits."""

from __future__ import annotations

import math

import pytest

from geoknots.cusp import BASE_POINT, canonical_g
from geoknots.family import (
    AxisGeometry,
    AxisTooLowError,
    EllipticDegenerateError,
    FamilyIndex,
    ParabolicDegenerateError,
    arc_decomposition,
    axis_of,
    build_record,
    composed_element,
    family_element,
    family_index_offset,
    horosphere_crossings,
    limit_axis,
)
from geoknots.moebius import (
    INFINITY,
    IsometryClass,
    MoebiusMap,
    hyperbolic_distance,
    is_infinity,
)

SAMPLE_INDICES = [(0, 0), (1, 0), (0, 1), (-3, 2), (7, -5), (25, 25), (-50, 13)]


class TestFamilyElement:
    def test_zero_index_is_canonical_swap(self, datasets):
        for cusp in datasets.values():
            m = family_element(cusp, FamilyIndex(0, 0))
            g = canonical_g(cusp)
            assert abs(m.a - g.a) + abs(m.b - g.b) + abs(m.c - g.c) + abs(m.d - g.d) < 1e-15

    def test_trace_reads_off_the_offset(self, datasets):
        for cusp in datasets.values():
            for p, q in SAMPLE_INDICES:
                idx = FamilyIndex(p, q)
                m = family_element(cusp, idx)
                assert abs(m.trace - cusp.c * family_index_offset(cusp, idx)) < 1e-10

    def test_closed_form_matches_repeated_composition(self, datasets):
        for cusp in datasets.values():
            for p, q in [(0, 0), (1, 0), (0, -1), (5, 3), (-8, 8), (-2, -7)]:
                idx = FamilyIndex(p, q)
                closed = family_element(cusp, idx)
                composed = composed_element(cusp, idx)
                for x, y in zip(
                    (closed.a, closed.b, closed.c, closed.d),
                    (composed.a, composed.b, composed.c, composed.d),
                ):
                    assert abs(x - y) < 1e-9

    def test_boundary_horosphere_mapping(self, datasets):
        for cusp in datasets.values():
            for p, q in SAMPLE_INDICES:
                idx = FamilyIndex(p, q)
                m = family_element(cusp, idx)
                assert is_infinity(m.apply_boundary(0j))
                assert abs(m.apply_boundary(INFINITY) - family_index_offset(cusp, idx)) < 1e-9


class TestAxis:
    def test_parabolic_trace_has_no_axis(self):
        # c = 1 and offset b = 2 gives trace exactly 2.
        with pytest.raises(ParabolicDegenerateError):
            axis_of(MoebiusMap(2, -1, 1, 0))

    def test_elliptic_trace_has_no_axis(self):
        with pytest.raises(EllipticDegenerateError):
            axis_of(MoebiusMap(1, -1, 1, 0))

    def test_vieta_relations(self, datasets):
        for cusp in datasets.values():
            for p, q in SAMPLE_INDICES:
                idx = FamilyIndex(p, q)
                m = family_element(cusp, idx)
                if m.classify() is not IsometryClass.LOXODROMIC:
                    continue
                axis = axis_of(m)
                b_pq = family_index_offset(cusp, idx)
                assert abs(axis.z_minus + axis.z_plus - b_pq) < 1e-10
                assert abs(axis.z_minus * axis.z_plus - 1.0 / cusp.c**2) < 1e-10

    def test_labels_sorted_by_magnitude(self, datasets):
        for cusp in datasets.values():
            for p, q in SAMPLE_INDICES:
                m = family_element(cusp, FamilyIndex(p, q))
                if m.classify() is not IsometryClass.LOXODROMIC:
                    continue
                axis = axis_of(m)
                assert abs(axis.z_minus) <= abs(axis.z_plus)

    def test_near_endpoint_collapses_to_zero(self, square):
        previous = math.inf
        for p in (10, 100, 1000):
            axis = axis_of(family_element(square, FamilyIndex(p, 0)))
            assert abs(axis.z_minus) < previous
            previous = abs(axis.z_minus)
        assert previous < 1e-3

    def test_family_fixed_point_residuals(self, datasets):
        for cusp in datasets.values():
            for p, q in [(5, 0), (-9, 3), (14, -7)]:
                m = family_element(cusp, FamilyIndex(p, q))
                if m.classify() is not IsometryClass.LOXODROMIC:
                    continue
                line = m.fixed_points()
                for endpoint in (line.e1, line.e2):
                    assert abs(m.apply_boundary(endpoint) - endpoint) < 1e-9

    def test_axis_geometry_consistency(self, square):
        axis = axis_of(family_element(square, FamilyIndex(9, 4)))
        assert axis.center == pytest.approx((axis.z_minus + axis.z_plus) / 2)
        assert axis.radius == pytest.approx(abs(axis.z_plus - axis.z_minus) / 2)
        assert abs(axis.direction) == pytest.approx(1.0)


class TestCrossings:
    def test_symmetric_chord(self):
        axis = AxisGeometry(-2 + 0j, 2 + 0j)
        near, far = horosphere_crossings(axis)
        assert near == pytest.approx(-math.sqrt(3))
        assert far == pytest.approx(math.sqrt(3))

    def test_low_axis_rejected(self):
        axis = AxisGeometry(-0.5 + 0j, 0.5 + 0j)
        with pytest.raises(AxisTooLowError):
            horosphere_crossings(axis)

    def test_crossings_sit_on_the_circle_at_height_one(self, datasets):
        for cusp in datasets.values():
            record = build_record(cusp, FamilyIndex(12, -4))
            assert record.has_crossings
            axis = record.axis
            for crossing in (record.c_pq, record.d_pq):
                assert abs(crossing - axis.center) ** 2 == pytest.approx(
                    axis.radius**2 - 1.0, abs=1e-10
                )

    def test_far_crossing_approaches_target_lift(self, square):
        previous = math.inf
        for p in (10, 100, 1000):
            record = build_record(square, FamilyIndex(p, 0))
            gap = abs(record.d_pq - family_index_offset(square, record.index))
            assert gap < previous
            previous = gap
        assert previous < 5e-3  # decay is about 2/p


class TestArcDecomposition:
    def test_long_lift_sits_on_height_one(self, square):
        record = build_record(square, FamilyIndex(8, 3))
        near, far = record.long_lift
        assert near.t == 1.0 and far.t == 1.0
        assert near.z == record.c_pq and far.z == record.d_pq

    def test_short_lift_starts_on_the_tangent_horosphere(self, datasets):
        # First endpoint is the pulled-back far crossing; with |c| = 1 it lies
        # on the diameter-1 horosphere at 0, never above height 1.
        for cusp in datasets.values():
            record = build_record(cusp, FamilyIndex(10, 2))
            pulled_back, near = record.short_lift
            assert pulled_back.t <= 1.0 + 1e-12
            on_sphere = abs(pulled_back.z) ** 2 + (pulled_back.t - 0.5) ** 2
            assert on_sphere == pytest.approx(0.25, abs=1e-9)
            assert near.z == record.c_pq and near.t == 1.0

    def test_short_lift_contracts_to_base_point(self, square):
        previous = math.inf
        for p in (10, 100, 1000):
            record = build_record(square, FamilyIndex(p, 0))
            worst = max(
                hyperbolic_distance(BASE_POINT, record.short_lift[0]),
                hyperbolic_distance(BASE_POINT, record.short_lift[1]),
            )
            assert worst < previous
            previous = worst
        assert previous < 1e-2

    def test_matches_direct_construction(self, square):
        record = build_record(square, FamilyIndex(6, 1))
        short, long = arc_decomposition(record.map, (record.c_pq, record.d_pq))
        assert short[0].z == record.short_lift[0].z
        assert long[1].z == record.long_lift[1].z


class TestLimitAxis:
    def test_vertical_line_through_zero(self):
        line = limit_axis()
        assert line.e1 == 0
        assert is_infinity(line.e2)

    def test_axes_converge_to_limit(self, square):
        previous = math.inf
        for p in (10, 100, 1000):
            axis = axis_of(family_element(square, FamilyIndex(p, 0)))
            proxy = abs(axis.z_minus) + 1.0 / abs(axis.z_plus)
            assert proxy < previous
            previous = proxy
        assert previous < 1e-2


class TestBuildRecord:
    def test_zero_index_record(self, square):
        # Complex trace off the real axis is loxodromic however small.
        record = build_record(square, FamilyIndex(0, 0))
        assert record.trace == pytest.approx(square.b00)
        assert record.iso_class is IsometryClass.LOXODROMIC

    def test_eventually_loxodromic_along_the_row(self, square):
        classes = [
            build_record(square, FamilyIndex(p, 0)).iso_class for p in range(1, 101)
        ]
        first_loxo = classes.index(IsometryClass.LOXODROMIC)
        assert all(c is IsometryClass.LOXODROMIC for c in classes[first_loxo:])

    def test_radius_eventually_increases(self, square):
        radii = [
            build_record(square, FamilyIndex(p, 0)).axis.radius for p in range(3, 60)
        ]
        assert all(b > a for a, b in zip(radii, radii[1:]))

    def test_large_trace_is_loxodromic(self, datasets):
        for cusp in datasets.values():
            for p, q in SAMPLE_INDICES:
                record = build_record(cusp, FamilyIndex(p, q))
                if abs(record.trace) > 2.0 + 1e-10:
                    assert record.iso_class is IsometryClass.LOXODROMIC

    def test_length_grows_along_the_row(self, square):
        lengths = [
            build_record(square, FamilyIndex(p, 0)).length.real
            for p in (10, 20, 40, 80)
        ]
        assert all(b > a for a, b in zip(lengths, lengths[1:]))

    def test_exactly_parabolic_member_marked_degenerate(self):
        # Tune c so the (3, 0) member has trace exactly 2.
        from geoknots.cusp import CuspData

        b30 = 3.5 + 0.5j
        cusp = CuspData("tuned", 1 + 0j, 1j, 0.5, 0.5, 2.0 / b30)
        record = build_record(cusp, FamilyIndex(3, 0))
        assert record.iso_class is IsometryClass.PARABOLIC
        assert record.length is None and record.axis is None
        assert not record.has_crossings

    def test_exactly_elliptic_member_marked_degenerate(self):
        from geoknots.cusp import CuspData

        b30 = 3.5 + 0.5j
        cusp = CuspData("tuned", 1 + 0j, 1j, 0.5, 0.5, 1.0 / b30)
        record = build_record(cusp, FamilyIndex(3, 0))
        assert record.iso_class is IsometryClass.ELLIPTIC
        assert record.axis is None and not record.has_crossings

    def test_record_invariants(self, datasets):
        for cusp in datasets.values():
            for p, q in SAMPLE_INDICES:
                idx = FamilyIndex(p, q)
                record = build_record(cusp, idx)
                assert abs(record.trace - cusp.c * family_index_offset(cusp, idx)) < 1e-10
                if record.length is not None:
                    assert record.length.real > 0
                if record.has_crossings:
                    assert record.axis.radius > 1.0
