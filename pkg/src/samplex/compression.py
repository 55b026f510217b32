"""Sampling + quantization decomposition and the rate lower bound.

The end-to-end distortion of any coder built on the MMSE estimate W*Y
splits as D_total = D_s + D_c (orthogonality of the estimation error), and
Shannon's rate-distortion function bounds the bits needed for the
compression stage via reverse water-filling on the eigenvalues of
Cov(W*Y) = C_X - C_e.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .estimator import EstimatorBundle, FilterSpec, mmse_bundle
from .montecarlo import simulation_moments
from .schemes import SamplingScheme
from .signal import SignalSpec

_MU_ABS_TOL = 1e-12


@dataclass(frozen=True)
class CompressionReport:
    """Water-filling solution for one compression-distortion target.

    ``nc_lower_bits`` is the least number of bits any encoder acting on the
    MMSE estimate can use while keeping the compression distortion at
    ``dc_target`` (0 when the target exceeds the total estimate energy).
    """

    ds: float
    dc_target: float
    mu: float
    nc_lower_bits: float
    eigenvalues: tuple[float, ...]

    def to_json(self) -> dict:
        return {
            "Ds": self.ds,
            "Dc_target": self.dc_target,
            "mu": self.mu,
            "nc_lower_bits": self.nc_lower_bits,
            "eigenvalues": list(self.eigenvalues),
        }


@dataclass(frozen=True)
class DecompositionResult:
    """Monte Carlo check of total = sampling + compression distortion."""

    trials: int
    total_emp: float
    ds_analytic: float
    dc_emp: float
    residual: float
    residual_se: float


def sampling_distortion(
    spec: SignalSpec, filt: FilterSpec, scheme: SamplingScheme
) -> float:
    """Analytic sampling-stage distortion D_s = Tr(C_e)/2."""
    return mmse_bundle(spec, filt, scheme).d


def reverse_waterfill(eigenvalues, dc_target: float) -> tuple[float, float]:
    """Water level mu and bit lower bound for given source eigenvalues.

    Solves sum_i min(lambda_i, mu) = min(dc_target, sum_i lambda_i) by
    bisection (the left side is piecewise-linear and nondecreasing in mu)
    and returns (mu, sum_i 0.5*log2(lambda_i / min(lambda_i, mu))).
    """
    lam = np.sort(np.asarray(eigenvalues, dtype=float))[::-1]
    if lam.size and lam[-1] < 0:
        if lam[-1] < -1e-9 * max(lam[0], 1.0):
            raise ValidationError("eigenvalues must be nonnegative")
        lam = np.clip(lam, 0.0, None)
    if dc_target <= 0:
        raise ValidationError(f"distortion target must be positive, got {dc_target}")
    total = float(lam.sum())
    if lam.size == 0 or total == 0.0:
        return 0.0, 0.0
    if dc_target >= total:
        return float(lam[0]), 0.0
    lo, hi = 0.0, float(lam[0])
    while hi - lo > _MU_ABS_TOL:
        mid = 0.5 * (lo + hi)
        if np.minimum(lam, mid).sum() < dc_target:
            lo = mid
        else:
            hi = mid
    mu = 0.5 * (lo + hi)
    active = lam > mu
    bits = float(0.5 * np.sum(np.log2(lam[active] / mu)))
    return mu, bits


def waterfill_rate_bound(
    spec: SignalSpec,
    filt: FilterSpec,
    scheme: SamplingScheme,
    dc_target: float,
) -> CompressionReport:
    """Rate lower bound for compressing the MMSE estimate of one signal.

    Eigenvalues are those of C_X - C_e (the covariance of W*Y); tiny
    negative values from roundoff are clipped to zero.
    """
    bundle = mmse_bundle(spec, filt, scheme)
    cov = np.diag(spec.variance_vector) - bundle.ce
    lam = np.clip(np.linalg.eigvalsh(cov)[::-1], 0.0, None)
    mu, bits = reverse_waterfill(lam, dc_target)
    return CompressionReport(
        ds=bundle.d,
        dc_target=float(dc_target),
        mu=mu,
        nc_lower_bits=bits,
        eigenvalues=tuple(float(v) for v in lam),
    )


def decomposition_check(
    spec: SignalSpec,
    filt: FilterSpec,
    scheme: SamplingScheme,
    quantizer_step: float,
    trials: int,
    seed: int,
) -> DecompositionResult:
    """Empirically verify D_total = D_s + D_c with a scalar quantizer.

    Each trial quantizes every coordinate of the MMSE estimate W*Y with a
    uniform mid-tread quantizer of the given step and measures the total
    and compression distortions.  The quantizer is a test harness, not a
    claimed-optimal coder: the decomposition holds for any encoder acting
    on W*Y.  The residual total - (D_s + D_c) should vanish within a few
    standard errors.
    """
    if quantizer_step <= 0:
        raise ValidationError(
            f"quantizer step must be positive, got {quantizer_step}"
        )
    bundle = mmse_bundle(spec, filt, scheme)

    def statistic(x, estimate):
        quantized = quantizer_step * np.round(estimate / quantizer_step)
        d_total = 0.5 * np.sum((x - quantized) ** 2, axis=1)
        d_c = 0.5 * np.sum((estimate - quantized) ** 2, axis=1)
        return np.stack([d_total, d_c, d_total - d_c], axis=1)

    moments = simulation_moments(spec, bundle, trials, seed, statistic, width=3)
    total_emp = moments.mean[0]
    dc_emp = moments.mean[1]
    residual_mean = moments.mean[2]
    residual_se = moments.se[2]
    return DecompositionResult(
        trials=trials,
        total_emp=float(total_emp),
        ds_analytic=bundle.d,
        dc_emp=float(dc_emp),
        residual=float(residual_mean - bundle.d),
        residual_se=float(residual_se),
    )
