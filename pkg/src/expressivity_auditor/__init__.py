"""Break-point accounting and size bounds for piecewise-linear feedforward
networks: exact 1-D piecewise-linear algebra, segment restriction of DAG
networks, transition counting, and the matching upper/lower size bounds."""

from .activations import (
    ActivationGap,
    LipschitzActivation,
    PwlActivation,
    builtin_activation,
    gap,
    lipschitz_constant,
    piece_count,
    quantization_gap,
)
from .approx import (
    Sampler,
    SwapAudit,
    curvature_breakpoint_audit,
    laplacian_breakpoint_audit,
    sup_error,
    sup_error_on_segment,
    swap_audit,
    uniform_interpolant_1d,
)
from .bounds import (
    BoundConfig,
    CurvatureBound,
    LaplacianBound,
    SegmentCurvature,
    activation_swap_bound,
    breakpoint_upper_bound,
    breakpoint_upper_bound_exact,
    curvature_lower_bound,
    depth_bound_vs_state_bound,
    depth_scaled_lower_bound,
    hidden_units_floor,
    laplacian_lower_bound,
    max_abs_laplacian,
    min_curvature,
    strong_convexity_lower_bound,
)
from .campaign import (
    CSV_COLUMNS,
    CSV_HEADER,
    CampaignSpec,
    TrialResult,
    run_campaign,
    run_trial,
    violations,
    write_csv,
)
from .errors import (
    ExpressivityError,
    PreconditionError,
    UnsupportedActivationError,
    ValidationError,
)
from .netgraph import (
    Edge,
    Network,
    Segment,
    Unit,
    depth_profile,
    forward,
    hidden_ancestors,
    load_network,
    network_from_json,
    network_to_json,
    random_network,
    require_valid,
    save_network,
    validate,
)
from .pwl import (
    PwlFunction1D,
    affine_combine,
    apply_activation,
    normalize,
    state_change_points,
    state_trace,
)
from .report import ESTIMATE, FAIL, PASS, AuditReport, estimate_report, lower_audit, upper_audit
from .restriction import (
    LineRestriction,
    TransitionCount,
    audit_transition_inequalities,
    break_points,
    restrict,
    transition_counts,
    transitions,
)
from .targets import (
    Box,
    TargetFunction,
    catalog,
    check_target,
    fd_gradient,
    fd_hessian,
    laplacian,
    unit_box,
)

__version__ = "0.1.0"

__all__ = [
    "ActivationGap",
    "AuditReport",
    "BoundConfig",
    "Box",
    "CSV_COLUMNS",
    "CSV_HEADER",
    "CampaignSpec",
    "CurvatureBound",
    "ESTIMATE",
    "Edge",
    "ExpressivityError",
    "FAIL",
    "LaplacianBound",
    "LineRestriction",
    "LipschitzActivation",
    "Network",
    "PASS",
    "PreconditionError",
    "PwlActivation",
    "PwlFunction1D",
    "Sampler",
    "SegmentCurvature",
    "Segment",
    "SwapAudit",
    "TargetFunction",
    "TransitionCount",
    "TrialResult",
    "Unit",
    "UnsupportedActivationError",
    "ValidationError",
    "activation_swap_bound",
    "affine_combine",
    "apply_activation",
    "audit_transition_inequalities",
    "break_points",
    "breakpoint_upper_bound",
    "breakpoint_upper_bound_exact",
    "builtin_activation",
    "catalog",
    "check_target",
    "curvature_breakpoint_audit",
    "curvature_lower_bound",
    "depth_bound_vs_state_bound",
    "depth_profile",
    "depth_scaled_lower_bound",
    "estimate_report",
    "fd_gradient",
    "fd_hessian",
    "forward",
    "gap",
    "hidden_ancestors",
    "hidden_units_floor",
    "laplacian",
    "laplacian_breakpoint_audit",
    "laplacian_lower_bound",
    "lipschitz_constant",
    "load_network",
    "lower_audit",
    "max_abs_laplacian",
    "min_curvature",
    "network_from_json",
    "network_to_json",
    "normalize",
    "piece_count",
    "quantization_gap",
    "random_network",
    "require_valid",
    "restrict",
    "run_campaign",
    "run_trial",
    "save_network",
    "state_change_points",
    "state_trace",
    "strong_convexity_lower_bound",
    "sup_error",
    "sup_error_on_segment",
    "swap_audit",
    "transition_counts",
    "transitions",
    "uniform_interpolant_1d",
    "unit_box",
    "upper_audit",
    "validate",
    "violations",
    "write_csv",
]
