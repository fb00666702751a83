"""Twisted two-ring central configurations ("crowns") of the Newtonian n-body problem."""

from .analysis import (
    BifurcationData,
    ConvexityReport,
    CountResult,
    Solution,
    SolutionSet,
    ZeroPair,
    admissible_set,
    bifurcation_n3,
    central_interval,
    classify_convex,
    convex_threshold_mass,
    convexity_window,
    count_configurations,
    critical_points,
    delta_n,
    equal_mass_radius,
    is_convex,
    solve_for_mass,
    zeros_of_F,
)
from .core import (
    BodyPositions,
    CrownConfiguration,
    PhaseKind,
    RingSpec,
    TwistReport,
    build_positions,
    crown_from_dict,
    crown_to_dict,
    dump_crown,
    load_crown,
    twist_offsets,
)
from .errors import (
    ConjectureViolation,
    ConvergenceError,
    CrownError,
    DomainError,
    EvaluationError,
    InconsistencyError,
    NotFoundError,
    PoleError,
    SingularityError,
)
from .intervals import Interval, IntervalUnion
from .kernels import BACKEND
from .oracle import (
    ResidualReport,
    full_gradient_residual,
    general_kappa_residual,
    imag_residual,
    leader_lambda,
)
from .potential import (
    c12,
    c21,
    coeff_cjl,
    f_of_a,
    f_prime,
    g1_g2,
    g_of_a,
    g_prime,
    h_of_a,
    h_prime,
    s_n,
)
from .rootkit import Bracket, Root, find_root, refine, scan_brackets

__version__ = "0.1.0"
