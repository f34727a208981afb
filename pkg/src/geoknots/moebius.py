"""2x2 Moebius maps acting on the upper half-space model of hyperbolic 3-space.

Matrices are kept normalized to determinant 1.  Only quantities invariant
under the overall sign ambiguity of the determinant-1 representative
(classification, translation length, fixed points, point actions) are exposed.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

# Below this the matrix is treated as non-invertible.
DET_TOL = 1e-14
# Tolerance on the trace boundaries |tr| = 2 and Im(tr) = 0.
CLASSIFY_TOL = 1e-10


class NearSingularError(ValueError):
    """Matrix determinant too close to zero to normalize."""


class NotLoxodromicError(ValueError):
    """Operation requires a loxodromic map (axis / translation length)."""


class _Infinity:
    """The distinguished point at infinity of the boundary sphere."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = _Infinity()

# A boundary point is a finite complex number or INFINITY.
BoundaryPoint = complex | _Infinity


def is_infinity(p: BoundaryPoint) -> bool:
    return isinstance(p, _Infinity)


class IsometryClass(Enum):
    IDENTITY = "identity"
    PARABOLIC = "parabolic"
    ELLIPTIC = "elliptic"
    LOXODROMIC = "loxodromic"


@dataclass(frozen=True)
class UpperHalfSpacePoint:
    """Point of upper half-space: horizontal complex coordinate and height > 0."""

    z: complex
    t: float

    def __post_init__(self) -> None:
        if not self.t > 0:
            raise ValueError(f"height must be positive, got {self.t}")


@dataclass(frozen=True)
class GeodesicLine:
    """Unoriented geodesic given by its two distinct boundary endpoints."""

    e1: BoundaryPoint
    e2: BoundaryPoint


def hyperbolic_distance(p: UpperHalfSpacePoint, q: UpperHalfSpacePoint) -> float:
    """Distance in the upper half-space metric.

    cosh d = 1 + (|z1 - z2|^2 + (t1 - t2)^2) / (2 t1 t2).
    """
    num = abs(p.z - q.z) ** 2 + (p.t - q.t) ** 2
    return math.acosh(max(1.0, 1.0 + num / (2.0 * p.t * q.t)))


@dataclass(frozen=True)
class MoebiusMap:
    """Matrix [[a, b], [c, d]] acting by z -> (az + b)/(cz + d).

    Constructors do not renormalize; use ``normalized()`` or rely on
    ``compose`` which renormalizes eagerly so the trace stays usable for
    classification.
    """

    a: complex
    b: complex
    c: complex
    d: complex

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> complex:
        return self.a + self.d

    def normalized(self) -> MoebiusMap:
        """Scale entries so the determinant is 1.

        The principal branch of the square root fixes the representative;
        everything downstream is invariant under the residual sign.
        """
        det = self.det
        if abs(det) < DET_TOL:
            raise NearSingularError(f"determinant {det} below {DET_TOL}")
        s = cmath.sqrt(det)
        return MoebiusMap(self.a / s, self.b / s, self.c / s, self.d / s)

    def compose(self, other: MoebiusMap) -> MoebiusMap:
        """Matrix product self * other, renormalized to determinant 1."""
        return MoebiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        ).normalized()

    def __matmul__(self, other: MoebiusMap) -> MoebiusMap:
        return self.compose(other)

    def inverse(self) -> MoebiusMap:
        # Adjugate equals the inverse once the determinant is 1.
        return MoebiusMap(self.d, -self.b, -self.c, self.a).normalized()

    def apply_boundary(self, p: BoundaryPoint) -> BoundaryPoint:
        """Fractional-linear action on the boundary sphere.

        Infinity conventions: m(inf) = a/c, m(-d/c) = inf, and if c = 0
        then m(inf) = inf.  The pole test is exact; the canonical maps of
        this package carry exact zero entries where it matters.
        """
        if is_infinity(p):
            if self.c == 0:
                return INFINITY
            return self.a / self.c
        den = self.c * p + self.d
        if den == 0:
            return INFINITY
        return (self.a * p + self.b) / den

    def apply_h3(self, p: UpperHalfSpacePoint) -> UpperHalfSpacePoint:
        """Poincare extension of the boundary action to upper half-space."""
        w = self.c * p.z + self.d
        den = abs(w) ** 2 + abs(self.c) ** 2 * p.t * p.t
        z = ((self.a * p.z + self.b) * w.conjugate()
             + self.a * self.c.conjugate() * p.t * p.t) / den
        return UpperHalfSpacePoint(z, p.t / den)

    def __call__(self, p: BoundaryPoint) -> BoundaryPoint:
        return self.apply_boundary(p)

    def classify(self) -> IsometryClass:
        """Trace classification, tolerance CLASSIFY_TOL on the boundaries."""
        tr = self.trace
        for sign in (1.0, -1.0):
            if abs(tr - 2.0 * sign) < CLASSIFY_TOL:
                off = max(abs(self.b), abs(self.c), abs(self.a - self.d))
                if off < CLASSIFY_TOL:
                    return IsometryClass.IDENTITY
                return IsometryClass.PARABOLIC
        if abs(tr.imag) < CLASSIFY_TOL and -2.0 < tr.real < 2.0:
            return IsometryClass.ELLIPTIC
        return IsometryClass.LOXODROMIC

    def _large_eigenvalue(self) -> complex:
        # Root of lambda^2 - tr*lambda + 1 with |lambda| > 1, computed with
        # the sign of the square root aligned to tr to avoid cancellation.
        tr = self.trace
        s = cmath.sqrt(tr * tr - 4.0)
        if (tr.conjugate() * s).real < 0.0:
            s = -s
        return (tr + s) / 2.0

    def complex_length(self) -> complex:
        """Complex translation length L with Re L > 0 and Im L in (-pi, pi].

        Defined by 2 cosh(L/2) = +-tr; the sign ambiguity shifts L by
        2*pi*i and is absorbed by the branch reduction.
        """
        if self.classify() is not IsometryClass.LOXODROMIC:
            raise NotLoxodromicError(f"trace {self.trace} is not loxodromic")
        length = 2.0 * cmath.log(self._large_eigenvalue())
        im = math.remainder(length.imag, 2.0 * math.pi)
        if im <= -math.pi:
            im += 2.0 * math.pi
        return complex(length.real, im)

    def fixed_points(self) -> GeodesicLine:
        """Both boundary fixed points of a loxodromic map.

        Solves c z^2 + (d - a) z - b = 0; the smaller root comes from the
        product of roots -b/c so it stays accurate when the trace is large.
        """
        if self.classify() is not IsometryClass.LOXODROMIC:
            raise NotLoxodromicError(f"trace {self.trace} is not loxodromic")
        if self.c == 0:
            return GeodesicLine(INFINITY, self.b / (self.d - self.a))
        ad = self.a - self.d
        s = cmath.sqrt(ad * ad + 4.0 * self.b * self.c)
        if (ad.conjugate() * s).real < 0.0:
            s = -s
        big = (ad + s) / (2.0 * self.c)
        small = (-self.b / self.c) / big if big != 0 else (ad - s) / (2.0 * self.c)
        return GeodesicLine(big, small)


IDENTITY_MAP = MoebiusMap(1.0, 0.0, 0.0, 1.0)


def translation(tau: complex) -> MoebiusMap:
    """Parabolic horizontal translation z -> z + tau."""
    return MoebiusMap(1.0, tau, 0.0, 1.0)
