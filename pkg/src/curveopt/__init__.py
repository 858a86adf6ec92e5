"""Curve-search globalization of heavy-ball methods.

Quadratic search curves with monotone/nonmonotone Armijo backtracking,
comparison solvers, theory-constant calculators, and a benchmarking
harness with performance profiles.
"""

from .bench import (
    BenchmarkRecord,
    ProfileCurve,
    config_hash,
    performance_profile,
    read_records,
    run_grid,
    write_profile_svg,
    write_profiles,
    write_records,
)
from .curves import BezierControls, QuadraticCurve
from .directions import (
    DirectionParams,
    MomentumState,
    gradient_direction,
    heavy_ball_direction,
    is_descent,
    safeguard_beta,
)
from .errors import (
    ConfigError,
    CurveOptError,
    DimensionError,
    DomainError,
    EvaluationFailure,
    IoError,
    NotDescent,
    ParseError,
    SearchStalled,
    UsageError,
)
from .problems import (
    DEFAULT_SUITE_KEYS,
    CountingProblem,
    Problem,
    broyden_tridiagonal,
    default_suite,
    extended_powell,
    fd_check,
    from_key,
    logistic_ridge,
    quadratic_diag,
    rosenbrock,
    trigonometric,
)
from .search import (
    Boundary,
    FHistory,
    SearchConfig,
    SearchOutcome,
    armijo_curve_search,
    nonmonotone_reference,
)
from .solvers import (
    RunConfig,
    SolverKind,
    SolverReport,
    Status,
    Trace,
    solve,
    trajectory_distance,
)
from .theory import (
    ComplexityInputs,
    OptimalHBParams,
    StrongConvexSpec,
    curve_smoothness_bound,
    delta_low,
    iteration_bound,
    optimal_hb_params,
)

__version__ = "0.1.0"
