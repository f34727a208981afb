"""Closed-geodesic families in cusped hyperbolic 3-manifolds.

From five cusp quantities (two lattice translations, an offset pair, and a
normalization constant) the package builds the two-parameter family of
closed geodesics spiralling into the cusp, decides which members are simple
via a lattice criterion for the long arc and a ball criterion for the short
arc, and emits a recheckable certificate that the one-parameter subfamily is
eventually simple.
"""

__version__ = "0.1.0"

from .cusp import (
    CuspData,
    CuspRejection,
    InvalidCuspError,
    LatticeCoords,
    LiftKind,
    LiftLabel,
    canonical_g,
    from_lattice_coords,
    lift_position,
    nearest_lift_gap,
    parabolic_a,
    parabolic_b,
    to_lattice_coords,
)
from .family import (
    AxisGeometry,
    AxisTooLowError,
    EllipticDegenerateError,
    FamilyIndex,
    GeodesicRecord,
    ParabolicDegenerateError,
    build_record,
    composed_element,
    family_element,
    limit_axis,
)
from .moebius import (
    INFINITY,
    GeodesicLine,
    IsometryClass,
    MoebiusMap,
    NearSingularError,
    NotLoxodromicError,
    UpperHalfSpacePoint,
    hyperbolic_distance,
    is_infinity,
)
from .simplicity import (
    CertificateQ0,
    IndexResult,
    LatticeWitness,
    ScanInsufficientError,
    SimplicityVerdict,
    VerdictKind,
    assess,
    certify_q0,
    lattice_test,
    long_arc_nonsimple,
    long_arc_vector,
    oracle_lattice_box,
    oracle_sampled_torus,
    short_arc_within_ball,
    verdict,
)

# Imported last: manifold_io reads __version__ from this module.
from .manifold_io import (  # noqa: E402
    CuspDataWarning,
    MalformedInputError,
    parse_certificate,
    parse_cusp_file,
    parse_cusp_text,
    read_results,
    verify_certificate,
    write_certificate,
    write_results,
)
