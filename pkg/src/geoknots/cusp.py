"""Cusp lattice data and the normalized horosphere configuration.

The input to everything else: the cusp translations t_alpha, t_beta, the
offset (x0, y0) of the second tangency point inside the fundamental
parallelogram, and the normalization constant c of the canonical horosphere
swap.  With those fixed, the tangency lifts live at a_{p,q} = p*t_alpha +
q*t_beta and b_{p,q} = (p+x0)*t_alpha + (q+y0)*t_beta on the height-1
horosphere, and the base point sits at (0, 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .moebius import MoebiusMap, UpperHalfSpacePoint, hyperbolic_distance, translation

# Below this |Im(t_beta/t_alpha)| the lattice is too close to a line for
# double-precision coordinate solves.
LATTICE_TOL = 1e-12

BASE_POINT = UpperHalfSpacePoint(0j, 1.0)


class CuspRejection(Enum):
    BOTH_OFFSETS_ZERO = "both_offsets_zero"
    DEGENERATE_LATTICE = "degenerate_lattice"
    ZERO_C = "zero_c"


class InvalidCuspError(ValueError):
    """Cusp data violating a structural invariant; carries a reason code."""

    def __init__(self, reason: CuspRejection, message: str):
        super().__init__(message)
        self.reason = reason


class DegenerateLatticeError(InvalidCuspError):
    def __init__(self, message: str):
        super().__init__(CuspRejection.DEGENERATE_LATTICE, message)


class LatticeCoords(NamedTuple):
    """Real coordinates of a boundary-plane point in the (t_alpha, t_beta) basis."""

    x: float
    y: float


class LiftKind(Enum):
    A = "A"
    B = "B"


class LiftLabel(NamedTuple):
    p: int
    q: int
    kind: LiftKind


@dataclass(frozen=True)
class CuspData:
    """Validated cusp input: lattice translations, offset, and normalization."""

    name: str
    t_alpha: complex
    t_beta: complex
    x0: float
    y0: float
    c: complex

    def __post_init__(self) -> None:
        if not (0.0 <= self.x0 < 1.0 and 0.0 <= self.y0 < 1.0):
            # Out-of-range offsets are reduced mod 1 by the parser; reaching
            # this constructor with them is a caller bug, not an input class.
            raise ValueError(f"offsets must lie in [0,1), got ({self.x0}, {self.y0})")
        if self.x0 == 0.0 and self.y0 == 0.0:
            raise InvalidCuspError(
                CuspRejection.BOTH_OFFSETS_ZERO,
                "x0 and y0 cannot both be zero (the two tangency points differ)",
            )
        if self.c == 0:
            raise InvalidCuspError(CuspRejection.ZERO_C, "normalization constant c is zero")
        if self.t_alpha == 0 or abs(_lattice_det(self.t_alpha, self.t_beta)) < LATTICE_TOL * abs(
            self.t_alpha
        ) ** 2:
            raise DegenerateLatticeError(
                f"translations {self.t_alpha}, {self.t_beta} span no lattice"
            )

    @property
    def b00(self) -> complex:
        """Position of the in-parallelogram tangency lift: x0*t_alpha + y0*t_beta."""
        return self.x0 * self.t_alpha + self.y0 * self.t_beta


def _lattice_det(t_alpha: complex, t_beta: complex) -> float:
    # Equals |t_alpha|^2 * Im(t_beta / t_alpha); the signed area of the cell.
    return (t_alpha.conjugate() * t_beta).imag


def parabolic_a(cusp: CuspData) -> MoebiusMap:
    """Generator translating by t_alpha on the height-1 horosphere."""
    return translation(cusp.t_alpha)


def parabolic_b(cusp: CuspData) -> MoebiusMap:
    """Generator translating by t_beta on the height-1 horosphere."""
    return translation(cusp.t_beta)


def canonical_g(cusp: CuspData) -> MoebiusMap:
    """The canonical horosphere swap [[c*b00, -1/c], [c, 0]].

    Sends 0 to infinity and infinity to b00, hence carries the horosphere
    tangent at 0 onto the height-1 horosphere.  Determinant is 1 by
    construction.
    """
    return MoebiusMap(cusp.c * cusp.b00, -1.0 / cusp.c, cusp.c, 0j)


def to_lattice_coords(z: complex, cusp: CuspData) -> LatticeCoords:
    """Unique real (x, y) with z = x*t_alpha + y*t_beta."""
    det = _lattice_det(cusp.t_alpha, cusp.t_beta)
    if abs(det) < LATTICE_TOL * abs(cusp.t_alpha) ** 2:
        raise DegenerateLatticeError("translations are real-collinear")
    # Cramer on the real 2x2 system (Re z, Im z) = x*t_alpha + y*t_beta.
    x = (z.real * cusp.t_beta.imag - z.imag * cusp.t_beta.real) / det
    y = (cusp.t_alpha.real * z.imag - cusp.t_alpha.imag * z.real) / det
    return LatticeCoords(x, y)


def from_lattice_coords(coords: LatticeCoords, cusp: CuspData) -> complex:
    return coords.x * cusp.t_alpha + coords.y * cusp.t_beta


def lift_position(label: LiftLabel, cusp: CuspData) -> complex:
    """Complex coordinate of a tangency lift on the height-1 horosphere."""
    if label.kind is LiftKind.A:
        return label.p * cusp.t_alpha + label.q * cusp.t_beta
    return (label.p + cusp.x0) * cusp.t_alpha + (label.q + cusp.y0) * cusp.t_beta


def coordinate_norm_bound(cusp: CuspData) -> tuple[float, float]:
    """Operator bounds (K_x, K_y) with |x(z)| <= K_x |z| and |y(z)| <= K_y |z|."""
    det = abs(_lattice_det(cusp.t_alpha, cusp.t_beta))
    return abs(cusp.t_beta) / det, abs(cusp.t_alpha) / det


def nearest_lift_gap(cusp: CuspData, search_range: int) -> float:
    """Half the distance from the base point (0,1) to the nearest other lift.

    Enumerates lifts on the height-1 horosphere (points (a_{p,q}, 1) and
    (b_{p,q}, 1) for |p|, |q| <= search_range) together with their images
    under the inverse canonical swap, which are the lifts on the horosphere
    tangent at 0.  The base point itself appears twice in that enumeration
    (as the (0,0) A-lift and as the swap image of the (0,0) B-lift) and is
    skipped by label.  Lifts on horospheres other than these two sit across
    disjoint horoballs and are farther away; the factor 1/2 is the safety
    margin for that restriction.
    """
    if search_range < 1:
        raise ValueError("search_range must be >= 1")
    g_inv = canonical_g(cusp).inverse()
    best = math.inf
    for p in range(-search_range, search_range + 1):
        for q in range(-search_range, search_range + 1):
            for kind in (LiftKind.A, LiftKind.B):
                pos = lift_position(LiftLabel(p, q, kind), cusp)
                on_h_inf = UpperHalfSpacePoint(pos, 1.0)
                if not (p == 0 and q == 0 and kind is LiftKind.A):
                    best = min(best, hyperbolic_distance(BASE_POINT, on_h_inf))
                if not (p == 0 and q == 0 and kind is LiftKind.B):
                    on_h0 = g_inv.apply_h3(on_h_inf)
                    best = min(best, hyperbolic_distance(BASE_POINT, on_h0))
    return 0.5 * best
