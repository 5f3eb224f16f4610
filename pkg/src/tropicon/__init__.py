"""Exact max-plus convex geometry: projections, separating hyperplanes and
supporting functions, with a small JSON command-line front end."""

from .convexfn import (
    ConvexityReport,
    EpiSet,
    Hull,
    convexity_check,
    epi_project,
    hull_eval,
    hull_from_supports,
    probes_below,
    supporting_function,
)
from .diffaffine import DiffAffine, Shape1D, ShapeCase, classify_1d, evaluate, level_hyperplane
from .errors import (
    DimensionMismatch,
    DomainError,
    InversionOfZeroOrTop,
    KindMismatch,
    MuMismatch,
    PointInModule,
    PointIsMember,
    PointOnEpigraph,
    ProjectionUndefined,
    SchemaError,
    SeparationFailed,
    TropiconError,
)
from .projection import (
    ConvexSet,
    ModuleBasis,
    ProjectionResult,
    in_down,
    in_up,
    member,
    proj_point,
    project_convex,
    project_module,
)
from .semifield import (
    BOTTOM,
    MAX_PLUS,
    MIN_PLUS,
    ONE,
    TOP,
    Scalar,
    SemifieldKind,
    bottom,
    dual,
    finite,
    inv,
    lres,
    meet,
    ominus,
    one,
    oplus,
    otimes,
    scalar,
    top,
)
from .separation import (
    AffineHyperplane,
    KbarHyperplane,
    Mode,
    SeparationCertificate,
    check_certificate,
    contains,
    separate_convex,
    separate_module,
    universal_separate,
    verify_certificate,
)
from .vectors import (
    Vector,
    support,
    unit_vector,
    vcomb,
    vdot,
    vdual,
    vector,
    vlres,
    voplus,
    vscale,
    zero_vector,
)

__version__ = "0.1.0"
