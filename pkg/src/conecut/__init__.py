"""conecut: chart-level kernels for blow-ups of pairs, deformation to
the normal cone, groupoid structure checks, Euler-like flows, and an
exact filtered Laurent model of deformation functions."""

from .errors import (
    ArityMismatch,
    CenterPoint,
    ConecutError,
    DegenerateCurve,
    DomainViolation,
    InvariantBreach,
    NonConvergence,
    NotAdapted,
    NotImmersive,
    NotVanishing,
    OutsideBlupF,
    OutsideChart,
    ParseError,
    SamplingFailure,
    SliceCrossing,
)
from .expr import (
    Guard,
    Jet,
    SmoothMapExpr,
    Var,
    compose,
    eval_map,
    finite_diff_jacobian,
    from_components,
    identity_map,
    jet_eval,
    linear_map,
)
from .pairs import (
    MapOfPairs,
    PairDims,
    check_adapted,
    check_rank_conditions,
    normal_derivative,
    numeric_rank,
    tangential_derivative,
)
from .parse import parse_expr, parse_map

__version__ = "1.0.0"

__all__ = [
    "ArityMismatch",
    "CenterPoint",
    "ConecutError",
    "DegenerateCurve",
    "DomainViolation",
    "Guard",
    "InvariantBreach",
    "Jet",
    "MapOfPairs",
    "NonConvergence",
    "NotAdapted",
    "NotImmersive",
    "NotVanishing",
    "OutsideBlupF",
    "OutsideChart",
    "PairDims",
    "ParseError",
    "SamplingFailure",
    "SliceCrossing",
    "SmoothMapExpr",
    "Var",
    "check_adapted",
    "check_rank_conditions",
    "compose",
    "eval_map",
    "finite_diff_jacobian",
    "from_components",
    "identity_map",
    "jet_eval",
    "linear_map",
    "normal_derivative",
    "numeric_rank",
    "parse_expr",
    "parse_map",
    "tangential_derivative",
    "__version__",
]
