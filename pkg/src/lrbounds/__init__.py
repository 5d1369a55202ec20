"""Zero-rate thresholds and rate bounds for list recovery of q-ary codes.

The library computes the expected-plurality moment functions of i.i.d.
symbol draws, the zero-rate threshold p*(q, ell, L) and its sliced family,
random-coding lower and entropy-inversion upper bounds on rates, numeric
certificates (Schur convexity, convexity and monotonicity of the sliced
moment), explicit list-size constants, and exhaustive small-case oracles.
"""

from .analysis import (
    ConvexityCertificate,
    Distribution,
    G_ell,
    MonotonicityCertificate,
    SchurCertificate,
    SlicedDistribution,
    certify_convexity,
    certify_monotonicity_g,
    certify_schur,
    f,
    f_gradient,
    f_hessian,
    g,
    g_prime,
    g_second,
    lipschitz_g,
    schur_ostrowski_value,
)
from .bounds import (
    BoundCurve,
    FixedPointResult,
    PlotkinConstants,
    ball_volume,
    ball_volume_bounds,
    comparison_gmrsw,
    comparison_ry_binary4,
    comparison_ry_qary3,
    covering_size_bound,
    covering_size_bound_lr,
    eb_upper_bound_rate,
    entropy_q,
    entropy_q_ell,
    eta_q,
    lower_bound_rate,
    lr_ball_volume,
    lr_ball_volume_bounds,
    mgf,
    p_star_w,
    plotkin_constants,
    solve_lambda_star,
    tilted_mean,
    unconstrained_multiplier,
    zero_rate_threshold,
)
from .compositions import (
    Composition,
    composition_table,
    enumerate_compositions,
    majorizes,
    max_ell_partial_sum,
    multinomial,
)
from .metrics import (
    Code,
    average_radius_ell,
    hamming_distance,
    hamming_weight,
    lr_distance,
    lr_weight,
    plurality,
    plurality_ell,
)
from .oracle import (
    BudgetExceededError,
    ExpurgationReport,
    check_list_recoverable,
    estimate_threshold_mc,
    exact_avg_radius_min,
    exact_radius_ell,
    random_expurgated_code,
    verify_covering,
)
from .params import Params

__version__ = "0.1.0"

__all__ = [
    "BoundCurve",
    "BudgetExceededError",
    "Code",
    "Composition",
    "ConvexityCertificate",
    "Distribution",
    "ExpurgationReport",
    "FixedPointResult",
    "G_ell",
    "MonotonicityCertificate",
    "Params",
    "PlotkinConstants",
    "SchurCertificate",
    "SlicedDistribution",
    "average_radius_ell",
    "ball_volume",
    "ball_volume_bounds",
    "certify_convexity",
    "certify_monotonicity_g",
    "certify_schur",
    "check_list_recoverable",
    "comparison_gmrsw",
    "comparison_ry_binary4",
    "comparison_ry_qary3",
    "composition_table",
    "covering_size_bound",
    "covering_size_bound_lr",
    "eb_upper_bound_rate",
    "entropy_q",
    "entropy_q_ell",
    "enumerate_compositions",
    "estimate_threshold_mc",
    "eta_q",
    "exact_avg_radius_min",
    "exact_radius_ell",
    "f",
    "f_gradient",
    "f_hessian",
    "g",
    "g_prime",
    "g_second",
    "hamming_distance",
    "hamming_weight",
    "lipschitz_g",
    "lower_bound_rate",
    "lr_ball_volume",
    "lr_ball_volume_bounds",
    "lr_distance",
    "lr_weight",
    "majorizes",
    "max_ell_partial_sum",
    "mgf",
    "multinomial",
    "p_star_w",
    "plotkin_constants",
    "plurality",
    "plurality_ell",
    "random_expurgated_code",
    "schur_ostrowski_value",
    "solve_lambda_star",
    "tilted_mean",
    "unconstrained_multiplier",
    "verify_covering",
    "zero_rate_threshold",
]
