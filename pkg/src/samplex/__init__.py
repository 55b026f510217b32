"""Distortion tradeoffs for noisy nonuniform sampling of bandlimited
periodic Gaussian signals: closed-form MMSE statistics, lower/upper
bounds, optimal sampling-point constructions, rate bounds for the
sampling + quantization pipeline, and Monte Carlo validation.
"""

from .bounds import (
    BoundsReport,
    f_combinatorial,
    lemma1_bounds,
    lemma2_bounds,
    regime_report,
    sparse_lower,
    thm5_formulas,
    thm6_upper,
)
from .compression import (
    CompressionReport,
    DecompositionResult,
    decomposition_check,
    reverse_waterfill,
    sampling_distortion,
    waterfill_rate_bound,
)
from .estimator import (
    ABOVE_LANDAU,
    HALF_LANDAU,
    EstimatorBundle,
    FilterSpec,
    avg_distortion_gamma_route,
    avg_distortion_pi_route,
    build_L,
    build_Q,
    gamma_route_moments,
    interpolate_closed_form,
    mmse_bundle,
    pi_route_moments,
    reconstruct_signal,
    var_distortion,
)
from .montecarlo import DemoResult, SimResult, run_reconstruction_demo, run_sim
from .schemes import (
    OptimalityVerdict,
    SamplingScheme,
    binary_expansion_points,
    check_lemma1_conditions,
    check_prop4_condition,
    check_thm7_condition,
    half_landau_points,
    theorem6_points,
    theorem6_upper_points,
    uniform_is_thm7_optimal,
    uniform_points,
)
from .search import SearchResult, discrete_exhaustive, sweep_M, sweep_t2
from .signal import (
    DiscreteSignalSpec,
    SignalSpec,
    evaluate,
    parseval_distortion,
    sample_coefficients,
)

__version__ = "0.1.0"

__all__ = [
    "ABOVE_LANDAU",
    "HALF_LANDAU",
    "BoundsReport",
    "CompressionReport",
    "DecompositionResult",
    "DemoResult",
    "DiscreteSignalSpec",
    "EstimatorBundle",
    "FilterSpec",
    "OptimalityVerdict",
    "SamplingScheme",
    "SearchResult",
    "SignalSpec",
    "SimResult",
    "avg_distortion_gamma_route",
    "avg_distortion_pi_route",
    "binary_expansion_points",
    "build_L",
    "build_Q",
    "check_lemma1_conditions",
    "check_prop4_condition",
    "check_thm7_condition",
    "decomposition_check",
    "discrete_exhaustive",
    "evaluate",
    "f_combinatorial",
    "gamma_route_moments",
    "half_landau_points",
    "interpolate_closed_form",
    "lemma1_bounds",
    "lemma2_bounds",
    "mmse_bundle",
    "parseval_distortion",
    "pi_route_moments",
    "reconstruct_signal",
    "regime_report",
    "reverse_waterfill",
    "run_reconstruction_demo",
    "run_sim",
    "sample_coefficients",
    "sampling_distortion",
    "sparse_lower",
    "sweep_M",
    "sweep_t2",
    "theorem6_points",
    "theorem6_upper_points",
    "thm5_formulas",
    "thm6_upper",
    "uniform_is_thm7_optimal",
    "uniform_points",
    "var_distortion",
]
