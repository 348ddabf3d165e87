"""Sub-Riemannian geodesics on SE(2): exponential map, reflections, Maxwell strata."""
from .geodesic_engine import (
    CUSP_TOL,
    EndpointFunctions,
    ExtendedCovector,
    GeodesicSample,
    Pose,
    closed_form_endpoint_functions,
    curvature,
    exp_map,
    exp_map_arrays,
    pose_distance,
    trace,
)
from .maxwell import (
    MAXWELL_TOL,
    FirstMaxwellTime,
    MaxwellVerdict,
    RootSearchError,
    RootTable,
    cut_time_bound,
    f1,
    f2,
    first_maxwell_time,
    is_conjugate_limit_point,
    maxwell_membership,
    p1_root,
    tt_of_energy,
)
from .ode_oracle import FullState, ResolutionError, integrate, integrate_many, integrate_pendulum
from .phase_cylinder import (
    SEPARATRIX_BAND,
    STRATUM_TOL,
    Covector,
    EllipticCoords,
    Stratum,
    StratumError,
    StratumId,
    classify,
    energy,
    from_elliptic,
    pendulum_flow,
    to_elliptic,
)
from .special_functions import (
    EllipticDomainError,
    JacobiTriple,
    NearSeparatrixError,
    complete_E,
    complete_K,
    epsilon_incomplete,
    incomplete_F,
    jacobi,
    p_minus_E,
)
from .symmetry_group import (
    REFLECTIONS,
    TIME_REVERSING,
    fixed_point_test,
    reflect_covector,
    reflect_phase,
    reflect_pose,
    reflect_trajectory,
)

__version__ = "0.1.0"
