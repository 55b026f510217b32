"""Closed-form distortion bounds and regime-specific optimal values.

All bound formulas depend on the signal spec and the sample count M only;
they are scheme-independent by construction.  SNR is always derived as
N*p/sigma^2, never accepted as an input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import RateRegimeError, ValidationError
from .schemes import uniform_is_thm7_optimal
from .signal import SignalSpec


@dataclass(frozen=True)
class BoundsReport:
    """All applicable bounds for a (spec, M) pair, with tightness flags.

    ``tight_flags[tag]`` is True when the matching generator scheme plus an
    all-pass filter provably achieves the bound: ``lemma1`` for M <= N, or
    for M <= 2N when N | 2*N1 - 1; ``lemma2`` when uniform sampling nulls
    every condition harmonic.
    """

    lemma1_d: float
    lemma1_v: float
    lemma2_d: float
    lemma2_v: float
    thm6_upper_d: float | None
    sparse_lower_d: float | None
    tight_flags: dict[str, bool] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "lemma1_D": self.lemma1_d,
            "lemma1_V": self.lemma1_v,
            "lemma2_D": self.lemma2_d,
            "lemma2_V": self.lemma2_v,
            "thm6_upper_D": self.thm6_upper_d,
            "sparse_lower_D": self.sparse_lower_d,
            "tight_flags": dict(self.tight_flags),
        }


def _check_m(m: int) -> int:
    if m < 0 or int(m) != m:
        raise ValidationError(f"sample count must be a nonnegative integer, got {m}")
    return int(m)


def lemma1_bounds(spec: SignalSpec, m: int) -> tuple[float, float]:
    """First pair of universal lower bounds (any filter, any instants):

    D >= (p/2) (2N - M + M/(1+SNR)),  V >= p^2 (2N - M + M/(1+SNR)^2).
    """
    m = _check_m(m)
    p = spec.power
    n = spec.n_harmonics
    snr = spec.snr
    d = 0.5 * p * (2 * n - m + m / (1.0 + snr))
    v = p**2 * (2 * n - m + m / (1.0 + snr) ** 2)
    return d, v


def lemma2_bounds(spec: SignalSpec, m: int) -> tuple[float, float]:
    """Second pair of universal lower bounds, tighter for M > 2N:

    D >= N p / (1 + (M/2N) SNR),  V >= 2 N p^2 / (1 + (M/2N) SNR)^2.
    """
    m = _check_m(m)
    p = spec.power
    n = spec.n_harmonics
    denom = 1.0 if m == 0 else 1.0 + (m / (2.0 * n)) * spec.snr
    return n * p / denom, 2 * n * p**2 / denom**2


def f_combinatorial(a: int, b: int) -> int:
    """Count of full-magnitude circulant eigenvalues, by remainder cases.

    With r = a mod b: returns b-1 if r = 0; 2b-2r+1 if 2r > b; 2r-1 if
    0 < 2r <= b.
    """
    if a < 1 or b < 1:
        raise ValidationError(f"need a, b >= 1, got a={a}, b={b}")
    r = a % b
    if r == 0:
        return b - 1
    if 2 * r > b:
        return 2 * b - 2 * r + 1
    return 2 * r - 1


def num_strong_modes(spec: SignalSpec, m: int) -> int:
    """min(f(N1, N), M - N): modes that can reach the worst coupling."""
    return min(f_combinatorial(spec.n1, spec.n_harmonics), m - spec.n_harmonics)


def thm6_upper(spec: SignalSpec, m: int) -> float:
    """Upper bound on the optimal distortion for N < M <= 2N.

    D/p <= (2N-M)/2 + (2N-M)/(2(1+SNR)) + Num (1+SNR)/(1+2 SNR)
           + (M-N-Num)/(1+SNR),   Num = min(f(N1, N), M-N).
    """
    m = _check_m(m)
    p = spec.power
    n = spec.n_harmonics
    if not n < m <= 2 * n:
        raise RateRegimeError(f"upper bound needs N < M <= 2N with N={n}, got M={m}")
    snr = spec.snr
    num = num_strong_modes(spec, m)
    if math.isinf(snr):
        return p * (0.5 * (2 * n - m) + num)
    return p * (
        0.5 * (2 * n - m)
        + (2 * n - m) / (2.0 * (1.0 + snr))
        + num * (1.0 + snr) / (1.0 + 2.0 * snr)
        + (m - n - num) / (1.0 + snr)
    )


def thm5_formulas(spec: SignalSpec, m: int) -> tuple[float, float]:
    """Uniform-sampling filter comparison for even M <= N.

    Returns (D with the width-M band filter, the lower bound that the
    width-M/2 filter strictly exceeds):

        D_H2   = (p/2) (2N - M + M/(1 + (M/N) SNR))
        D_H1 > (p/2) (2N - M + M/(1 + (M/2N) SNR))
    """
    m = _check_m(m)
    p = spec.power
    n = spec.n_harmonics
    if m % 2 != 0 or not 1 <= m <= n:
        raise RateRegimeError(f"filter comparison needs even M <= N, got M={m}")
    snr = spec.snr
    d_h2 = 0.5 * p * (2 * n - m + m / (1.0 + (m / n) * snr))
    d_h1_lb = 0.5 * p * (2 * n - m + m / (1.0 + (m / (2.0 * n)) * snr))
    return d_h2, d_h1_lb


def sparse_lower(spec: SignalSpec, m: int) -> float:
    """Per-harmonic lower bound sum_l 1/(1/p_l + M/(2 sigma^2)).

    Valid for arbitrary per-harmonic variances; reduces to the lemma2 bound
    when the variances are equal.
    """
    m = _check_m(m)
    p = np.asarray(spec.coeff_variances)
    if spec.noise_variance == 0:
        return float(np.sum(p)) if m == 0 else 0.0
    return float(np.sum(1.0 / (1.0 / p + m / (2.0 * spec.noise_variance))))


def regime_report(spec: SignalSpec, m: int) -> BoundsReport:
    """Aggregate every applicable bound and set the tightness flags."""
    m = _check_m(m)
    n = spec.n_harmonics
    d1, v1 = lemma1_bounds(spec, m)
    d2, v2 = lemma2_bounds(spec, m)
    upper = thm6_upper(spec, m) if n < m <= 2 * n else None
    lemma1_tight = m <= n or (m <= 2 * n and (2 * spec.n1 - 1) % n == 0)
    lemma2_tight = m >= 1 and uniform_is_thm7_optimal(m, spec)
    return BoundsReport(
        lemma1_d=d1,
        lemma1_v=v1,
        lemma2_d=d2,
        lemma2_v=v2,
        thm6_upper_d=upper,
        sparse_lower_d=sparse_lower(spec, m),
        tight_flags={"lemma1": lemma1_tight, "lemma2": lemma2_tight},
    )
