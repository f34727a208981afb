"""The two-parameter family of closed geodesics and their lifted geometry.

Each integer index (p, q) names the isometry obtained by following the
canonical horosphere swap with p + q cusp translations.  Its matrix has the
closed form [[c*b_{p,q}, -1/c], [c, 0]], so the trace is c*b_{p,q} and the
axis is the semicircle over the two roots of the fixed-point equation.  When
the semicircle pokes above height 1 it crosses the height-1 horosphere
twice, splitting the closed geodesic into a short arc near the tangency
point and a long arc inside the cusp neighbourhood.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .cusp import CuspData, LiftKind, LiftLabel, canonical_g, lift_position
from .moebius import (
    INFINITY,
    GeodesicLine,
    IsometryClass,
    MoebiusMap,
    UpperHalfSpacePoint,
)


class FamilyIndex(NamedTuple):
    p: int
    q: int


class ParabolicDegenerateError(ValueError):
    """Trace at +-2: the family element has no axis."""


class EllipticDegenerateError(ValueError):
    """Real trace in (-2, 2): the family element has no translation axis."""


class AxisTooLowError(ValueError):
    """Axis semicircle of radius <= 1 does not reach the height-1 horosphere."""


@dataclass(frozen=True)
class AxisGeometry:
    """Euclidean semicircle carrying the axis: endpoints, center, radius.

    Endpoints are labelled by magnitude, |z_minus| <= |z_plus|, matching the
    limit in which z_minus collapses to the tangency point at 0.
    """

    z_minus: complex
    z_plus: complex

    @property
    def center(self) -> complex:
        return (self.z_minus + self.z_plus) / 2.0

    @property
    def radius(self) -> float:
        return abs(self.z_plus - self.z_minus) / 2.0

    @property
    def direction(self) -> complex:
        """Unit vector from z_minus toward z_plus."""
        chord = self.z_plus - self.z_minus
        return chord / abs(chord)


@dataclass(frozen=True)
class GeodesicRecord:
    """Everything computed for one family index.

    ``length``, ``axis`` are None for non-loxodromic elements; crossing data
    and arc lifts are None whenever the axis stays at or below height 1.
    """

    index: FamilyIndex
    map: MoebiusMap
    trace: complex
    iso_class: IsometryClass
    length: complex | None
    axis: AxisGeometry | None
    c_pq: complex | None
    d_pq: complex | None
    short_lift: tuple[UpperHalfSpacePoint, UpperHalfSpacePoint] | None
    long_lift: tuple[UpperHalfSpacePoint, UpperHalfSpacePoint] | None

    @property
    def has_crossings(self) -> bool:
        return self.c_pq is not None


def family_index_offset(cusp: CuspData, idx: FamilyIndex) -> complex:
    """b_{p,q} = (p + x0) t_alpha + (q + y0) t_beta, the target tangency lift."""
    return lift_position(LiftLabel(idx.p, idx.q, LiftKind.B), cusp)


def family_element(cusp: CuspData, idx: FamilyIndex) -> MoebiusMap:
    """Closed form [[c*b_{p,q}, -1/c], [c, 0]] of the (p, q) family member."""
    b_pq = family_index_offset(cusp, idx)
    return MoebiusMap(cusp.c * b_pq, -1.0 / cusp.c, cusp.c, 0j)


def axis_of(m: MoebiusMap) -> AxisGeometry:
    """Axis endpoints of a family-shaped map, labelled by magnitude.

    Solves the fixed-point quadratic with the small root recovered from the
    product of roots, so accuracy survives large traces.
    """
    tr = m.trace
    if abs(tr - 2.0) < 1e-10 or abs(tr + 2.0) < 1e-10:
        raise ParabolicDegenerateError(f"trace {tr} within 1e-10 of +-2")
    if abs(tr.imag) < 1e-10 and -2.0 < tr.real < 2.0:
        raise EllipticDegenerateError(f"trace {tr} is elliptic")
    line = m.fixed_points()
    e1, e2 = line.e1, line.e2
    if not (isinstance(e1, complex) and isinstance(e2, complex)):
        raise ValueError("axis through infinity is not a semicircle; c entry vanished")
    if abs(e1) <= abs(e2):
        return AxisGeometry(e1, e2)
    return AxisGeometry(e2, e1)


def horosphere_crossings(axis: AxisGeometry) -> tuple[complex, complex]:
    """Boundary-plane coordinates where the semicircle meets height 1.

    Returns (c_pq, d_pq) with c_pq the crossing nearer z_minus.
    """
    if axis.radius <= 1.0:
        raise AxisTooLowError(f"radius {axis.radius} <= 1")
    half_chord = math.sqrt(axis.radius**2 - 1.0) * axis.direction
    return axis.center - half_chord, axis.center + half_chord


def arc_decomposition(
    m: MoebiusMap, crossings: tuple[complex, complex]
) -> tuple[
    tuple[UpperHalfSpacePoint, UpperHalfSpacePoint],
    tuple[UpperHalfSpacePoint, UpperHalfSpacePoint],
]:
    """Lifts of the short and long arcs cut out by the height-1 horosphere.

    The long lift runs between the two crossing points at height 1; the
    short lift is the image of the far crossing under the inverse map
    followed by the near crossing, landing on the horosphere tangent at 0.
    """
    c_pq, d_pq = crossings
    near = UpperHalfSpacePoint(c_pq, 1.0)
    far = UpperHalfSpacePoint(d_pq, 1.0)
    pulled_back = m.inverse().apply_h3(far)
    return (pulled_back, near), (near, far)


def limit_axis() -> GeodesicLine:
    """The vertical line through 0: the lift of the limiting infinite geodesic."""
    return GeodesicLine(0j, INFINITY)


def build_record(cusp: CuspData, idx: FamilyIndex) -> GeodesicRecord:
    """Assemble the full geometric record for one index.

    Degenerate members (non-loxodromic, or axis radius <= 1) come back with
    the corresponding fields None rather than raising, so window scans can
    report every requested index.
    """
    m = family_element(cusp, idx)
    iso_class = m.classify()
    if iso_class is not IsometryClass.LOXODROMIC:
        return GeodesicRecord(
            index=idx, map=m, trace=m.trace, iso_class=iso_class,
            length=None, axis=None, c_pq=None, d_pq=None,
            short_lift=None, long_lift=None,
        )
    length = m.complex_length()
    axis = axis_of(m)
    if axis.radius <= 1.0:
        return GeodesicRecord(
            index=idx, map=m, trace=m.trace, iso_class=iso_class,
            length=length, axis=axis, c_pq=None, d_pq=None,
            short_lift=None, long_lift=None,
        )
    crossings = horosphere_crossings(axis)
    short_lift, long_lift = arc_decomposition(m, crossings)
    return GeodesicRecord(
        index=idx, map=m, trace=m.trace, iso_class=iso_class,
        length=length, axis=axis, c_pq=crossings[0], d_pq=crossings[1],
        short_lift=short_lift, long_lift=long_lift,
    )


def composed_element(cusp: CuspData, idx: FamilyIndex) -> MoebiusMap:
    """The same element by |p| + |q| + 1 pairwise compositions.

    Independent of the closed form; used to cross-check it.
    """
    from .cusp import parabolic_a, parabolic_b  # local to keep module deps one-way

    a = parabolic_a(cusp)
    b = parabolic_b(cusp)
    a_step = a if idx.p >= 0 else a.inverse()
    b_step = b if idx.q >= 0 else b.inverse()
    result = canonical_g(cusp)
    for _ in range(abs(idx.q)):
        result = b_step.compose(result)
    for _ in range(abs(idx.p)):
        result = a_step.compose(result)
    return result
