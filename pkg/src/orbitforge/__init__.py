"""Constant negative curvature minimal surfaces in truncated Hilbert spheres.

The package constructs the orbit immersions of the hyperbolic plane that
realize every constant negative Gaussian curvature K < 0 inside the unit
sphere of a (truncated) Hilbert space, and verifies at desk scale the
operator identities, pairing laws, and geometric constants the construction
rests on: the curvature dictionary K = -8/(1 - 4 s^2), the conformal factor
c = (1/4 - s^2)/2, the sl(2,R) bracket relations of the truncated ladder
operators, the Casimir scalar -2, the Carleman divergence that certifies
essential self-adjointness, the radial eigenfunction agreement, and the
sharp area constant (pi/4)|chi|.
"""

__version__ = "0.1.0"

from .group import (
    SIGMA1,
    SIGMA2,
    SIGMA3,
    GroupWord,
    HalfPlanePoint,
    Sl2Element,
    hyperbolic_distance,
    iwasawa_word,
    mobius_apply,
    psl_canonicalize,
    sl2_exp,
)
from .operators import (
    BandedOperator,
    CarlemanScan,
    IndexWindow,
    ResidualReport,
    build_generators,
    build_skew_basis,
    carleman_scan,
    commutator_residuals,
    graded_laplacian_check,
    sl2_rep,
)
from .orbit import (
    CrossValidation,
    FrameState,
    OrbitEmbedding,
    OsculatingVector,
    TailMassError,
    bilinear_inner,
    conjugation_flip,
    cross_validate,
    frame_flow,
    hermitian_inner,
    orbit_grid,
    orbit_point,
)
from .params import (
    CurvatureCoefficients,
    SeriesParam,
    a_sequence,
    c_coeff,
    curvature_from_series,
    series_from_curvature,
)
from .spherical import RadialProfile, SphericalComparison, compare_spherical, phi_radial
from .verify import (
    Check,
    GramReport,
    MetricSample,
    Report,
    area_rigidity,
    gauss_curvature_fd,
    gram_pairings,
    minimality_residual,
    octagon_area_quadrature,
    pullback_metric,
)

__all__ = [
    "__version__",
    "SIGMA1", "SIGMA2", "SIGMA3", "GroupWord", "HalfPlanePoint", "Sl2Element",
    "hyperbolic_distance", "iwasawa_word", "mobius_apply", "psl_canonicalize", "sl2_exp",
    "BandedOperator", "CarlemanScan", "IndexWindow", "ResidualReport",
    "build_generators", "build_skew_basis", "carleman_scan",
    "commutator_residuals", "graded_laplacian_check", "sl2_rep",
    "CrossValidation", "FrameState", "OrbitEmbedding", "OsculatingVector",
    "TailMassError", "bilinear_inner", "conjugation_flip", "cross_validate",
    "frame_flow", "hermitian_inner", "orbit_grid", "orbit_point",
    "CurvatureCoefficients", "SeriesParam", "a_sequence", "c_coeff",
    "curvature_from_series", "series_from_curvature",
    "RadialProfile", "SphericalComparison", "compare_spherical", "phi_radial",
    "Check", "GramReport", "MetricSample", "Report", "area_rigidity",
    "gauss_curvature_fd", "gram_pairings", "minimality_residual",
    "octagon_area_quadrature", "pullback_metric",
]
