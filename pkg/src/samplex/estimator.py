"""Linear MMSE reconstruction from noisy nonuniform samples.

With coefficient vector X (covariance C_X, diagonal), pre-sampling filter
matrix L, sampling matrix Q and observations Y = Q L X + Z (noise variance
sigma^2), the optimal estimator and its error covariance are

    W   = C_X A^T (A C_X A^T + sigma^2 I)^-1,          A = Q L
    C_e = C_X - C_X A^T (A C_X A^T + sigma^2 I)^-1 A C_X                (Pi route)
        = (A^T A / sigma^2 + C_X^-1)^-1                                 (Gamma route)

The average time-domain distortion is D = Tr(C_e)/2 and the adopted
variance-of-distortion statistic is V = Tr(C_e^2).  For uniform power p the
two routes reduce to the scalar expansions

    2D = (2N - M) p + p sigma^2 Tr(Pi)      V = p^2 [2N - M + sigma^4 Tr(Pi^2)]
    2D = p sigma^2 Tr(Gamma)                V = p^2 sigma^4 Tr(Gamma^2)

with Pi = (p Q L L^T Q^T + sigma^2 I)^-1 and
Gamma = (p L^T Q^T Q L + sigma^2 I)^-1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    FilterViolationError,
    NoiseRequiredError,
    NumericalError,
    RegimeMismatchError,
    ValidationError,
)
from .linalg import spd_solve
from .schemes import SamplingScheme, check_lemma1_conditions, check_thm7_condition
from .signal import CoefficientVector, SignalSpec, evaluate

_PASSIVITY_TOL = 1e-12
_ROUTE_RTOL = 1e-9

HALF_LANDAU = "half-landau"
ABOVE_LANDAU = "above-landau"


@dataclass(frozen=True)
class FilterSpec:
    """Complex frequency gains H(l*w0) on the active band, one per harmonic.

    Passivity requires |H(l*w0)|^2 <= 1 for every harmonic.
    """

    gains: tuple[complex, ...]

    def __post_init__(self):
        gains = tuple(complex(g) for g in self.gains)
        object.__setattr__(self, "gains", gains)
        a = np.abs(np.asarray(gains)) ** 2
        if a.size and a.max() > 1.0 + _PASSIVITY_TOL:
            raise FilterViolationError(
                f"filter gain |H|^2 = {a.max():.12g} exceeds the passivity "
                "limit 1"
            )

    @classmethod
    def allpass(cls, spec: SignalSpec) -> "FilterSpec":
        """No filtering on the signal band: H = 1 on every harmonic."""
        return cls((1.0 + 0.0j,) * spec.n_harmonics)

    @classmethod
    def lowpass(cls, spec: SignalSpec, start: int, width: int) -> "FilterSpec":
        """Ideal band filter: H = 1 for start <= l < start + width, else 0."""
        if width < 0:
            raise ValidationError(f"band width must be nonnegative, got {width}")
        gains = tuple(
            1.0 + 0.0j if start <= ell < start + width else 0.0j
            for ell in spec.harmonics
        )
        return cls(gains)

    @property
    def power_gains(self) -> np.ndarray:
        """a_l = |H(l*w0)|^2 per harmonic."""
        return np.abs(np.asarray(self.gains)) ** 2

    def is_allpass(self) -> bool:
        return bool(
            np.all(np.abs(self.power_gains - 1.0) <= 10 * _PASSIVITY_TOL)
        )

    def to_json(self) -> dict:
        return {"gains": [[g.real, g.imag] for g in self.gains]}

    @classmethod
    def from_json(cls, obj: dict, spec: SignalSpec) -> "FilterSpec":
        """Parse {"allpass": true} | {"lowpass": {"start","width"}} |
        {"gains": [[re, im], ...]}."""
        if not isinstance(obj, dict):
            raise ValidationError("filter spec must be a JSON object")
        unknown = set(obj) - {"allpass", "lowpass", "gains"}
        if unknown:
            raise ValidationError(f"unknown filter keys: {sorted(unknown)}")
        if len(obj) != 1:
            raise ValidationError(
                "filter spec must contain exactly one of allpass/lowpass/gains"
            )
        if obj.get("allpass"):
            return cls.allpass(spec)
        if "lowpass" in obj:
            band = obj["lowpass"]
            extra = set(band) - {"start", "width"}
            if extra:
                raise ValidationError(f"unknown lowpass keys: {sorted(extra)}")
            return cls.lowpass(spec, int(band["start"]), int(band["width"]))
        gains = tuple(complex(re, im) for re, im in obj["gains"])
        if len(gains) != spec.n_harmonics:
            raise ValidationError(
                f"filter must list {spec.n_harmonics} gains, got {len(gains)}"
            )
        return cls(gains)


@dataclass(frozen=True)
class EstimatorBundle:
    """MMSE estimator matrices plus the analytic distortion statistics.

    Attributes
    ----------
    q : (M, 2N) sampling matrix.
    l : (2N, 2N) filter matrix.
    w : (2N, M) estimator, X_hat = W Y.
    ce : (2N, 2N) error covariance (symmetric PSD).
    d : average distortion, Tr(C_e)/2.
    v : variance-of-distortion statistic, Tr(C_e^2).
    """

    q: np.ndarray
    l: np.ndarray
    w: np.ndarray
    ce: np.ndarray
    d: float
    v: float


def build_Q(scheme: SamplingScheme, spec: SignalSpec) -> np.ndarray:
    """Sampling matrix: row i is [cos(l*w0*t_i) ..., sin(l*w0*t_i) ...]."""
    ang = np.multiply.outer(scheme.array(), spec.harmonics) * spec.omega0
    return np.hstack([np.cos(ang), np.sin(ang)])


def build_L(filt: FilterSpec) -> np.ndarray:
    """Filter matrix [[L1, L2], [-L2, L1]] with L1 = diag(Re H),
    L2 = diag(Im H)."""
    h = np.asarray(filt.gains)
    l1 = np.diag(h.real)
    l2 = np.diag(h.imag)
    return np.block([[l1, l2], [-l2, l1]])


def _validated(spec: SignalSpec, filt: FilterSpec, scheme: SamplingScheme):
    if spec.noise_variance <= 0:
        raise NoiseRequiredError(
            "estimator requires sigma^2 > 0 (noiseless observation matrices "
            "may be singular)"
        )
    if len(filt.gains) != spec.n_harmonics:
        raise ValidationError(
            f"filter has {len(filt.gains)} gains but the band has "
            f"{spec.n_harmonics} harmonics"
        )
    if filt.power_gains.size and filt.power_gains.max() > 1.0 + _PASSIVITY_TOL:
        raise FilterViolationError("filter violates passivity")
    if abs(scheme.period - spec.period) > 1e-12 * spec.period:
        raise ValidationError(
            f"scheme period {scheme.period} does not match signal period "
            f"{spec.period}"
        )


def mmse_bundle(
    spec: SignalSpec, filt: FilterSpec, scheme: SamplingScheme
) -> EstimatorBundle:
    """Assemble Q, L, W and C_e, computing C_e by both algebraic routes.

    The Pi-route and Gamma-route covariances are cross-checked to 1e-9
    relative (Frobenius); the better-conditioned Gamma-route result is
    stored.  M = 0 degenerates to the prior: C_e = C_X, no solves built.
    """
    _validated(spec, filt, scheme)
    q = build_Q(scheme, spec)
    lmat = build_L(filt)
    cx = spec.variance_vector
    sigma2 = spec.noise_variance
    two_n = 2 * spec.n_harmonics
    m = scheme.m

    if m == 0:
        ce = np.diag(cx)
        return EstimatorBundle(
            q=q,
            l=lmat,
            w=np.zeros((two_n, 0)),
            ce=ce,
            d=float(cx.sum()) / 2.0,
            v=float((cx**2).sum()),
        )

    a = q @ lmat
    acx = a * cx[None, :]
    pi_inv = acx @ a.T + sigma2 * np.eye(m)
    w = spd_solve(pi_inv, acx).T
    ce_pi = np.diag(cx) - w @ acx

    gamma_inv = a.T @ a / sigma2 + np.diag(1.0 / cx)
    ce_gamma = spd_solve(gamma_inv, np.eye(two_n))
    ce_gamma = 0.5 * (ce_gamma + ce_gamma.T)

    gap = np.linalg.norm(ce_pi - ce_gamma)
    if gap > _ROUTE_RTOL * max(np.linalg.norm(ce_gamma), 1e-300):
        raise NumericalError(
            f"Pi- and Gamma-route error covariances disagree "
            f"(relative gap {gap / np.linalg.norm(ce_gamma):.3e}); "
            "inputs are too ill-conditioned"
        )

    d = 0.5 * float(np.trace(ce_gamma))
    v = float(np.sum(ce_gamma * ce_gamma))
    return EstimatorBundle(q=q, l=lmat, w=w, ce=ce_gamma, d=d, v=v)


def _pi_matrix_inverse(
    spec: SignalSpec, filt: FilterSpec, scheme: SamplingScheme
) -> np.ndarray:
    """Pi^-1 = p Q L L^T Q^T + sigma^2 I (uniform power only)."""
    p = spec.power
    q = build_Q(scheme, spec)
    lmat = build_L(filt)
    a = q @ lmat
    return p * (a @ a.T) + spec.noise_variance * np.eye(scheme.m)


def _gamma_matrix_inverse(
    spec: SignalSpec, filt: FilterSpec, scheme: SamplingScheme
) -> np.ndarray:
    """Gamma^-1 = p L^T Q^T Q L + sigma^2 I (uniform power only)."""
    p = spec.power
    q = build_Q(scheme, spec)
    lmat = build_L(filt)
    a = q @ lmat
    return p * (a.T @ a) + spec.noise_variance * np.eye(2 * spec.n_harmonics)


def pi_route_moments(
    spec: SignalSpec, filt: FilterSpec, scheme: SamplingScheme
) -> tuple[float, float]:
    """(D, V) via the M x M observation-space expansion (uniform power)."""
    _validated(spec, filt, scheme)
    p = spec.power
    n = spec.n_harmonics
    m = scheme.m
    sigma2 = spec.noise_variance
    if m == 0:
        return n * p, 2 * n * p**2
    pi_inv = _pi_matrix_inverse(spec, filt, scheme)
    pi = spd_solve(pi_inv, np.eye(m))
    d = 0.5 * (p * (2 * n - m) + p * sigma2 * float(np.trace(pi)))
    v = p**2 * (2 * n - m + sigma2**2 * float(np.sum(pi * pi)))
    return d, v


def gamma_route_moments(
    spec: SignalSpec, filt: FilterSpec, scheme: SamplingScheme
) -> tuple[float, float]:
    """(D, V) via the 2N x 2N coefficient-space expansion (uniform power)."""
    _validated(spec, filt, scheme)
    p = spec.power
    sigma2 = spec.noise_variance
    if scheme.m == 0:
        n = spec.n_harmonics
        return n * p, 2 * n * p**2
    gamma_inv = _gamma_matrix_inverse(spec, filt, scheme)
    gamma = spd_solve(gamma_inv, np.eye(gamma_inv.shape[0]))
    d = 0.5 * p * sigma2 * float(np.trace(gamma))
    v = p**2 * sigma2**2 * float(np.sum(gamma * gamma))
    return d, v


def avg_distortion_pi_route(
    spec: SignalSpec, filt: FilterSpec, scheme: SamplingScheme
) -> float:
    """D = [(2N - M) p + p sigma^2 Tr(Pi)] / 2 (uniform power)."""
    return pi_route_moments(spec, filt, scheme)[0]


def avg_distortion_gamma_route(
    spec: SignalSpec, filt: FilterSpec, scheme: SamplingScheme
) -> float:
    """D = p sigma^2 Tr(Gamma) / 2 (uniform power)."""
    return gamma_route_moments(spec, filt, scheme)[0]


def var_distortion(
    spec: SignalSpec, filt: FilterSpec, scheme: SamplingScheme
) -> float:
    """V = Tr(C_e^2), valid for arbitrary per-harmonic variances."""
    if spec.has_uniform_power:
        return pi_route_moments(spec, filt, scheme)[1]
    return mmse_bundle(spec, filt, scheme).v


def interpolate_closed_form(
    spec: SignalSpec,
    scheme: SamplingScheme,
    samples,
    regime: str,
) -> CoefficientVector:
    """Closed-form MMSE coefficients c * Q^T Y for a verified optimal scheme.

    The scale is c = p/(N p + sigma^2) in the half-Landau regime (scheme
    must pass the lemma1 pairwise condition, making Pi a scaled identity)
    and c = p/(M p / 2 + sigma^2) above the Landau rate (scheme must pass
    the thm7 exponential-sum condition, making Gamma a scaled identity).
    Assumes no filtering on the band and uniform power.
    """
    if spec.noise_variance <= 0:
        raise NoiseRequiredError("closed-form interpolation requires sigma^2 > 0")
    p = spec.power
    y = np.asarray(samples, dtype=float)
    if y.shape != (scheme.m,):
        raise ValidationError(
            f"expected {scheme.m} samples, got shape {y.shape}"
        )
    if regime == HALF_LANDAU:
        verdict = check_lemma1_conditions(scheme, spec)
        scale = p / (spec.n_harmonics * p + spec.noise_variance)
    elif regime == ABOVE_LANDAU:
        verdict = check_thm7_condition(scheme, spec)
        scale = p / (scheme.m * p / 2.0 + spec.noise_variance)
    else:
        raise ValidationError(
            f"regime must be {HALF_LANDAU!r} or {ABOVE_LANDAU!r}, got {regime!r}"
        )
    if not verdict.satisfied:
        raise RegimeMismatchError(
            f"scheme fails the {verdict.condition_tag} condition "
            f"(worst violation {verdict.worst_violation:.3e} > "
            f"{verdict.tolerance:.3e}); closed form does not apply"
        )
    q = build_Q(scheme, spec)
    return scale * (q.T @ y)


def reconstruct_signal(spec: SignalSpec, coeffs: CoefficientVector, grid):
    """Evaluate the reconstruction on a time grid (pointwise evaluate)."""
    return evaluate(spec, coeffs, np.asarray(grid, dtype=float))
