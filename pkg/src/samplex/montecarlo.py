"""Monte Carlo validation of the analytic distortion statistics.

Simulates the full pipeline (draw coefficients, filter, sample, add noise,
MMSE-reconstruct) and compares the empirical mean and variance of the
time-average distortion d = 0.5*||X - X_hat||^2 with the analytic values
D = Tr(C_e)/2 and V = Tr(C_e^2).

Note the factor-two convention: the adopted statistic V equals Tr(C_e^2)
while the empirical variance of d converges to Tr(C_e^2)/2, so validation
compares 2*Var_emp against V.

Trials run in fixed-size chunks, each drawing from its own counter-based
stream keyed by (seed, chunk index).  Results are therefore bit-identical
regardless of how many workers execute the chunks; SAMPLEX_THREADS caps the
worker count (unset or <= 1 means serial).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import RegimeMismatchError, ValidationError
from .estimator import (
    ABOVE_LANDAU,
    HALF_LANDAU,
    EstimatorBundle,
    FilterSpec,
    interpolate_closed_form,
    mmse_bundle,
    reconstruct_signal,
)
from .schemes import (
    SamplingScheme,
    check_lemma1_conditions,
    check_thm7_condition,
)
from .signal import SignalSpec, coefficient_rng, evaluate, parseval_distortion

_CHUNK = 8192


@dataclass(frozen=True)
class SimResult:
    """Empirical vs analytic distortion statistics for one configuration."""

    trials: int
    d_emp: float
    d_se: float
    var_emp: float
    var_se: float
    d_analytic: float
    v_analytic: float

    def to_row(self, config_id: str) -> dict:
        return {
            "config_id": config_id,
            "trials": self.trials,
            "D_emp": self.d_emp,
            "D_se": self.d_se,
            "Var_emp": self.var_emp,
            "D_analytic": self.d_analytic,
            "V_analytic": self.v_analytic,
        }


@dataclass(frozen=True)
class MomentSummary:
    """Chunk-merged first/second moments (and variance error bars)."""

    trials: int
    mean: np.ndarray
    se: np.ndarray
    var: np.ndarray
    var_se: np.ndarray


def _worker_count() -> int:
    raw = os.environ.get("SAMPLEX_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError as exc:
        raise ValidationError(f"SAMPLEX_THREADS must be an integer: {raw!r}") from exc


def simulation_moments(
    spec: SignalSpec,
    bundle: EstimatorBundle,
    trials: int,
    seed: int,
    statistic,
    width: int,
    weights: np.ndarray | None = None,
) -> MomentSummary:
    """Accumulate per-trial statistics over deterministic chunked streams.

    ``statistic(x, estimate)`` maps the drawn coefficients (n, 2N) and the
    linear estimates W*Y (n, width-source) to an (n, width) array.  Merging
    uses power sums up to fourth order, so chunk order (not scheduling)
    fixes the floating-point result.
    """
    if trials < 2:
        raise ValidationError(f"need at least 2 trials, got {trials}")
    a = bundle.q @ bundle.l
    w = bundle.w if weights is None else np.asarray(weights, dtype=float)
    if w.shape != bundle.w.shape:
        raise ValidationError(
            f"estimator matrix must have shape {bundle.w.shape}, got {w.shape}"
        )
    scale = np.sqrt(spec.variance_vector)
    sigma = math.sqrt(spec.noise_variance)
    m = a.shape[0]

    n_chunks = (trials + _CHUNK - 1) // _CHUNK

    def run_chunk(index: int):
        count = min(_CHUNK, trials - index * _CHUNK)
        rng = coefficient_rng(seed, index + 1)
        x = rng.standard_normal((count, scale.size)) * scale
        z = rng.standard_normal((count, m)) * sigma
        estimate = (x @ a.T + z) @ w.T
        stat = np.asarray(statistic(x, estimate), dtype=float)
        if stat.shape != (count, width):
            raise ValidationError(
                f"statistic returned shape {stat.shape}, expected {(count, width)}"
            )
        return (
            stat.sum(axis=0),
            (stat**2).sum(axis=0),
            (stat**3).sum(axis=0),
            (stat**4).sum(axis=0),
        )

    workers = _worker_count()
    if workers > 1 and n_chunks > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_chunk, range(n_chunks)))
    else:
        results = [run_chunk(i) for i in range(n_chunks)]

    s1 = np.zeros(width)
    s2 = np.zeros(width)
    s3 = np.zeros(width)
    s4 = np.zeros(width)
    for c1, c2, c3, c4 in results:
        s1 += c1
        s2 += c2
        s3 += c3
        s4 += c4

    n = float(trials)
    mean = s1 / n
    m2 = s2 / n - mean**2
    m4 = (s4 - 4 * mean * s3 + 6 * mean**2 * s2) / n - 3 * mean**4
    var = m2 * n / (n - 1)
    se = np.sqrt(np.maximum(m2, 0.0) / n)
    var_of_var = np.maximum(m4 - m2**2 * (n - 3) / (n - 1), 0.0) / n
    return MomentSummary(
        trials=trials,
        mean=mean,
        se=se,
        var=var,
        var_se=np.sqrt(var_of_var),
    )


def run_sim(
    spec: SignalSpec,
    filt: FilterSpec,
    scheme: SamplingScheme,
    trials: int,
    seed: int,
    weights: np.ndarray | None = None,
) -> SimResult:
    """Simulate the sample-and-reconstruct pipeline.

    Per trial: draw X and Z, observe Y = Q L X + Z, reconstruct X_hat = W Y
    and record d = 0.5*||X - X_hat||^2.  ``weights`` overrides the MMSE
    matrix W (useful for demonstrating its optimality).
    """
    if trials < 100:
        raise ValidationError(f"need at least 100 trials, got {trials}")
    bundle = mmse_bundle(spec, filt, scheme)

    def statistic(x, estimate):
        return 0.5 * np.sum((x - estimate) ** 2, axis=1, keepdims=True)

    moments = simulation_moments(
        spec, bundle, trials, seed, statistic, width=1, weights=weights
    )
    return SimResult(
        trials=trials,
        d_emp=float(moments.mean[0]),
        d_se=float(moments.se[0]),
        var_emp=float(moments.var[0]),
        var_se=float(moments.var_se[0]),
        d_analytic=bundle.d,
        v_analytic=bundle.v,
    )


@dataclass(frozen=True)
class DemoResult:
    """One reconstruction demo draw evaluated on a uniform time grid."""

    times: np.ndarray
    signal: np.ndarray
    reconstruction: np.ndarray
    distortion: float

    def rows(self):
        return zip(self.times, self.signal, self.reconstruction)


def run_reconstruction_demo(
    spec: SignalSpec,
    scheme: SamplingScheme,
    seed: int,
    grid_size: int,
) -> DemoResult:
    """Draw one signal, sample it noisily, reconstruct in closed form.

    The scheme must verify as optimal for its regime: the lemma1 pairwise
    condition selects the half-Landau closed form, otherwise the thm7
    exponential-sum condition selects the above-Landau one.  Uses no filter
    on the band.
    """
    if grid_size < 2:
        raise ValidationError(f"grid size must be at least 2, got {grid_size}")
    if check_lemma1_conditions(scheme, spec).satisfied:
        regime = HALF_LANDAU
    elif check_thm7_condition(scheme, spec).satisfied:
        regime = ABOVE_LANDAU
    else:
        raise RegimeMismatchError(
            "scheme verifies as optimal in neither the half-Landau nor the "
            "above-Landau regime; no closed-form interpolator applies"
        )
    rng = coefficient_rng(seed)
    coeffs = rng.standard_normal(2 * spec.n_harmonics) * np.sqrt(
        spec.variance_vector
    )
    noise = rng.standard_normal(scheme.m) * math.sqrt(spec.noise_variance)
    samples = evaluate(spec, coeffs, scheme.array()) + noise
    coeffs_hat = interpolate_closed_form(spec, scheme, samples, regime)
    grid = np.linspace(0.0, spec.period, grid_size)
    return DemoResult(
        times=grid,
        signal=evaluate(spec, coeffs, grid),
        reconstruction=reconstruct_signal(spec, coeffs_hat, grid),
        distortion=parseval_distortion(spec, coeffs, coeffs_hat),
    )
