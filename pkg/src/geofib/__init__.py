"""Fiberwise homogeneous fibrations of E^3 and H^3 by geodesics."""

from .errors import (
    DegenerateParameterError,
    FiberSolveError,
    GeofibError,
    NotAFiberError,
)
from .euclid import (
    EucLine,
    EuclideanIsometry,
    LinesRelation,
    ScrewGenerator,
    SubgroupSpecE3,
    Vec3,
    apply_isometry,
    catalog_e3,
    compose,
    exp_screw,
    image_of_line,
    inverse,
    lines_relation,
    subgroup_e3,
)
from .fibration import (
    CanonicalZ,
    EuclideanFt,
    Fibration,
    HyperbolicFInf,
    HyperbolicFz,
    HypFiberCoords,
    canonicalize_z,
    conjugate_fibration,
    equivalence_invariant,
    fiber_e3,
    fiber_h3_inf,
    fiber_h3_z,
    fiber_through,
    membership_residual,
    transitivity_witness,
)
from .hyper import (
    INFINITY,
    BoundaryPoint,
    BoundaryTransform,
    GeodesicRelation,
    H3Geodesic,
    H3PointBall,
    H3PointHalf,
    MobiusMap,
    SubgroupSpecH3,
    ball_to_half,
    catalog_h3,
    geodesic_from_endpoints,
    geodesic_relation,
    half_to_ball,
    hyperbolic_distance,
    mobius_apply,
    point_on_geodesic,
    poincare_extend,
    subgroup_h3,
)
from .verify import (
    CaseOutcome,
    CaseVerdict,
    CheckReport,
    check_partition,
    check_preservation,
    check_transitivity,
    classification_demo,
    curl_fd,
    ft_unit_field,
    orbit_dimension,
)

__version__ = "0.1.0"
