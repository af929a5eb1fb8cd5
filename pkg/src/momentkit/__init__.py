"""momentkit: moment sets of complex subspaces, joint numerical ranges, and
minimal hermitian matrix certificates."""
import os as _os

# MOMENTKIT_THREADS caps internal parallelism.  All heavy lifting happens in
# BLAS/LAPACK thread pools, so the cap must land in the environment before
# numpy is first imported; explicit user settings are left untouched.
_cap = _os.environ.get("MOMENTKIT_THREADS")
if _cap:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        _os.environ.setdefault(_var, _cap)
del _os, _cap

from .feasibility import (  # noqa: E402
    IntersectionCertificate,
    IntersectionStatus,
    ProjectionResult,
    moments_intersect,
    project_onto_moment,
)
from .directions import fibonacci_directions  # noqa: E402
from .jnr import (  # noqa: E402
    JNRPoint,
    cone_membership,
    delta_map,
    hyperplane_slice_check,
    jnr_boundary,
    jnr_support,
    sample_classical_range,
    scaling_relation_check,
)
from .linalg import (  # noqa: E402
    EigenDecomposition,
    NonHermitianError,
    hermitian_eig,
    orthonormalize,
    projector,
    spectral_norm,
)
from .minimality import (  # noqa: E402
    MinimalityReport,
    MinimalMatrixParts,
    Verdict,
    brute_force_diag_distance,
    check_minimal,
    construct_minimal,
    hausdorff_moments,
    support_coordinate_bound_check,
)
from .moment import (  # noqa: E402
    CurveSample,
    DegenerateCurve,
    EllipseParams,
    curve_overlap_residual,
    curve_point,
    dominating_t,
    ellipse_projection,
    moment_of_vector,
    sample_moment,
    support_moment,
)
from .subspace import (  # noqa: E402
    NotGenericAtCoordinate,
    NotGenericSubspace,
    PrincipalVector,
    Subspace,
    centroid,
    centroid_algebra_check,
    is_generic,
    principal_vector,
    subspace_from_spanning,
    whole_space,
)

__version__ = "0.1.0"

__all__ = [
    "EigenDecomposition",
    "NonHermitianError",
    "hermitian_eig",
    "orthonormalize",
    "projector",
    "spectral_norm",
    "Subspace",
    "PrincipalVector",
    "NotGenericAtCoordinate",
    "NotGenericSubspace",
    "subspace_from_spanning",
    "whole_space",
    "is_generic",
    "principal_vector",
    "centroid",
    "centroid_algebra_check",
    "moment_of_vector",
    "sample_moment",
    "support_moment",
    "CurveSample",
    "EllipseParams",
    "DegenerateCurve",
    "curve_point",
    "curve_overlap_residual",
    "dominating_t",
    "ellipse_projection",
    "JNRPoint",
    "delta_map",
    "jnr_support",
    "jnr_boundary",
    "hyperplane_slice_check",
    "cone_membership",
    "sample_classical_range",
    "scaling_relation_check",
    "fibonacci_directions",
    "IntersectionCertificate",
    "IntersectionStatus",
    "ProjectionResult",
    "moments_intersect",
    "project_onto_moment",
    "MinimalityReport",
    "MinimalMatrixParts",
    "Verdict",
    "check_minimal",
    "construct_minimal",
    "brute_force_diag_distance",
    "support_coordinate_bound_check",
    "hausdorff_moments",
    "__version__",
]
