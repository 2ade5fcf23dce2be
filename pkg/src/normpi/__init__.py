"""Circle constants of normed planes: exact and certified pi-values, Golab
certificates and extremal classification."""

from .arclength import (
    LengthInterval,
    PolylinePath,
    arc_length_bounds,
    boundary_length_bounds,
    polyline_length,
)
from .classify import (
    Generic,
    LinearlyRegularHexagon,
    Parallelogram,
    QuarterTurnBasis,
    angle_length_margin,
    classify_extremal,
    euclidean_test,
    quarter_turn_basis,
    quarter_turn_pi_check,
    tangent_defect,
)
from .errors import (
    DegenerateBody,
    DomainError,
    EmptyArc,
    NoConvergence,
    NoRoot,
    NormPiError,
    PreconditionError,
    SingularMap,
    ZeroDirection,
)
from .geom import LinearMap2, Point2, SymmetricPolygon, extreme_points, ray_exit, symmetric_hull
from .norms import (
    LinearImage,
    Lp,
    NormSpec,
    Polygonal,
    boundary_point,
    distance,
    gauge,
    pushforward,
    support_point,
)
from .pivalue import (
    HexagonCertificate,
    Normalization,
    PiReport,
    circumscribe_normalize,
    inscribed_hexagon,
    lp_pi_table,
    make_xt,
    pi_certificates,
    pi_value,
)
from .verify import SuiteReport, random_linear_map, random_symmetric_polygon, run_suite

__version__ = "0.1.0"
