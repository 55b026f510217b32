"""Random band-pass periodic signal model.

The signal is a zero-mean stationary Gaussian process

    S(t) = sum_{l=N1..N2} [A_l cos(l*w0*t) + B_l sin(l*w0*t)],   w0 = 2*pi/T,

with independent coefficients A_l, B_l ~ N(0, p_l).  Coefficient vectors are
plain float arrays of length 2N ordered A-block first, then B-block:

    [A_N1, ..., A_N2, B_N1, ..., B_N2]

Every matrix in the estimator module depends on that ordering.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UniformVarianceRequiredError, ValidationError

# Coefficient vectors are bare numpy arrays; the alias markers intent only.
CoefficientVector = np.ndarray


@dataclass(frozen=True)
class SignalSpec:
    """Parameters of the random band-pass periodic signal.

    Attributes
    ----------
    period : float
        Signal period T in seconds, strictly positive.
    n1, n2 : int
        First and last active harmonic index, 1 <= n1 <= n2.
    coeff_variances : tuple of float
        Per-quadrature coefficient variance p_l for each harmonic
        l = n1..n2 (length N = n2 - n1 + 1), all strictly positive.
    noise_variance : float
        Sampling-noise variance sigma^2 >= 0.  Estimator operations
        additionally require sigma^2 > 0.
    """

    period: float
    n1: int
    n2: int
    coeff_variances: tuple[float, ...]
    noise_variance: float

    def __post_init__(self):
        if not self.period > 0:
            raise ValidationError(f"period must be positive, got {self.period}")
        if not (isinstance(self.n1, int) and isinstance(self.n2, int)):
            raise ValidationError("harmonic indices n1, n2 must be integers")
        if not (1 <= self.n1 <= self.n2):
            raise ValidationError(
                f"need 1 <= n1 <= n2, got n1={self.n1}, n2={self.n2}"
            )
        variances = tuple(float(p) for p in self.coeff_variances)
        object.__setattr__(self, "coeff_variances", variances)
        if len(variances) != self.n_harmonics:
            raise ValidationError(
                f"expected {self.n_harmonics} coefficient variances, "
                f"got {len(variances)}"
            )
        if any(p <= 0 for p in variances):
            raise ValidationError("all coefficient variances must be positive")
        if self.noise_variance < 0:
            raise ValidationError("noise variance must be nonnegative")

    @classmethod
    def uniform(cls, period, n1, n2, power, noise_variance):
        """Spec with the same per-quadrature power on every harmonic."""
        n = n2 - n1 + 1
        return cls(period, n1, n2, (float(power),) * n, noise_variance)

    @property
    def n_harmonics(self) -> int:
        """Number of active harmonics N = n2 - n1 + 1."""
        return self.n2 - self.n1 + 1

    @property
    def omega0(self) -> float:
        """Fundamental frequency 2*pi/T (always derived, never stored)."""
        return 2.0 * math.pi / self.period

    @property
    def harmonics(self) -> np.ndarray:
        """Integer harmonic indices n1..n2."""
        return np.arange(self.n1, self.n2 + 1)

    @property
    def has_uniform_power(self) -> bool:
        return len(set(self.coeff_variances)) == 1

    @property
    def power(self) -> float:
        """Common per-quadrature power p; defined only for uniform variances."""
        if not self.has_uniform_power:
            raise UniformVarianceRequiredError(
                "per-harmonic variances differ; no single power p is defined"
            )
        return self.coeff_variances[0]

    @property
    def snr(self) -> float:
        """N*p / sigma^2 (infinite for noiseless sampling)."""
        p = self.power
        if self.noise_variance == 0:
            return math.inf
        return self.n_harmonics * p / self.noise_variance

    @property
    def variance_vector(self) -> np.ndarray:
        """Diagonal of the 2N x 2N coefficient covariance, [p; p] blocks."""
        p = np.asarray(self.coeff_variances)
        return np.concatenate([p, p])

    def to_json(self) -> dict:
        p = (
            self.coeff_variances[0]
            if self.has_uniform_power
            else list(self.coeff_variances)
        )
        return {
            "T": self.period,
            "N1": self.n1,
            "N2": self.n2,
            "p": p,
            "sigma2": self.noise_variance,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SignalSpec":
        """Parse ``{"T":..., "N1":..., "N2":..., "p":..., "sigma2":...}``.

        A scalar ``p`` expands to a constant per-harmonic array.
        """
        if not isinstance(obj, dict):
            raise ValidationError("signal spec must be a JSON object")
        unknown = set(obj) - {"T", "N1", "N2", "p", "sigma2"}
        if unknown:
            raise ValidationError(f"unknown signal keys: {sorted(unknown)}")
        try:
            period = float(obj["T"])
            n1 = int(obj["N1"])
            n2 = int(obj["N2"])
            p = obj["p"]
            sigma2 = float(obj["sigma2"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed signal spec: {exc}") from exc
        n = n2 - n1 + 1
        if np.isscalar(p):
            variances = (float(p),) * max(n, 0)
        else:
            variances = tuple(float(v) for v in p)
        return cls(period, n1, n2, variances, sigma2)


@dataclass(frozen=True)
class DiscreteSignalSpec(SignalSpec):
    """Signal spec for integer-period discrete signals S[n].

    The period must be an integer and the band must satisfy n2 < T/2 so the
    2N coefficients remain free parameters of the length-T signal.
    """

    def __post_init__(self):
        super().__post_init__()
        if int(self.period) != self.period:
            raise ValidationError(
                f"discrete signal period must be an integer, got {self.period}"
            )
        object.__setattr__(self, "period", float(int(self.period)))
        if not self.n2 < self.period / 2:
            raise ValidationError(
                f"need N2 < T/2 for a discrete signal, got N2={self.n2}, "
                f"T={int(self.period)}"
            )

    @classmethod
    def uniform(cls, period, n1, n2, power, noise_variance):
        n = n2 - n1 + 1
        return cls(period, n1, n2, (float(power),) * n, noise_variance)


def coefficient_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Counter-based generator keyed by (seed, stream).

    Philox streams with distinct keys are independent, which keeps parallel
    Monte Carlo reproducible regardless of worker scheduling.
    """
    return np.random.Generator(np.random.Philox(key=[seed & (2**64 - 1), stream]))


def sample_coefficients(spec: SignalSpec, rng_seed: int) -> CoefficientVector:
    """Draw one coefficient vector [A; B] with A_l, B_l ~ N(0, p_l).

    Deterministic given the seed: the same seed always yields the same
    vector, and each coefficient occupies a fixed stream position.
    """
    rng = coefficient_rng(rng_seed)
    scale = np.sqrt(spec.variance_vector)
    return rng.standard_normal(2 * spec.n_harmonics) * scale


def _check_coeffs(spec: SignalSpec, coeffs) -> np.ndarray:
    x = np.asarray(coeffs, dtype=float)
    if x.shape != (2 * spec.n_harmonics,):
        raise ValidationError(
            f"coefficient vector must have length {2 * spec.n_harmonics}, "
            f"got shape {x.shape}"
        )
    return x


def evaluate(spec: SignalSpec, coeffs: CoefficientVector, t):
    """Evaluate S(t) = sum_l [A_l cos(l*w0*t) + B_l sin(l*w0*t)].

    ``t`` may be a scalar or an array; the result matches its shape.  Angles
    are computed as l*w0*(t mod T) to keep trig arguments small for large
    harmonic indices.
    """
    x = _check_coeffs(spec, coeffs)
    n = spec.n_harmonics
    t_mod = np.mod(np.asarray(t, dtype=float), spec.period)
    ang = np.multiply.outer(t_mod, spec.harmonics) * spec.omega0
    return np.cos(ang) @ x[:n] + np.sin(ang) @ x[n:]


def parseval_distortion(
    spec: SignalSpec, x: CoefficientVector, xhat: CoefficientVector
) -> float:
    """Time-average squared error between the signals with coefficients
    ``x`` and ``xhat``: (1/T) * integral of |S_hat - S|^2 = 0.5*||x - xhat||^2.
    """
    a = _check_coeffs(spec, x)
    b = _check_coeffs(spec, xhat)
    d = a - b
    return 0.5 * float(d @ d)
