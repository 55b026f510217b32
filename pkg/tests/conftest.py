"""Shared random-instance factories for the test suite."""

import numpy as np
import pytest

from samplex import FilterSpec, SamplingScheme, SignalSpec


def random_spec(rng, n_max=16, sigma_range=(0.3, 3.0), uniform=True) -> SignalSpec:
    n = int(rng.integers(1, n_max + 1))
    n1 = int(rng.integers(1, 12))
    sigma = float(rng.uniform(*sigma_range))
    if uniform:
        power = float(rng.uniform(0.5, 2.0))
        return SignalSpec.uniform(1.0, n1, n1 + n - 1, power, sigma**2)
    variances = tuple(float(v) for v in rng.uniform(0.2, 2.5, size=n))
    return SignalSpec(1.0, n1, n1 + n - 1, variances, sigma**2)


def random_scheme(rng, spec: SignalSpec, m: int, min_gap=1e-3) -> SamplingScheme:
    """Distinct instants in [0, T) with a conditioning-friendly minimum gap."""
    period = spec.period
    while True:
        t = np.sort(rng.uniform(0.0, period, size=m))
        if m < 2:
            return SamplingScheme(tuple(t), period)
        gaps = np.diff(np.concatenate([t, [t[0] + period]]))
        if gaps.min() > min_gap * period:
            return SamplingScheme(tuple(t), period)


def random_filter(rng, spec: SignalSpec) -> FilterSpec:
    """Random passive filter; one third all-pass, one third band, rest general."""
    pick = rng.integers(0, 3)
    if pick == 0:
        return FilterSpec.allpass(spec)
    if pick == 1:
        width = int(rng.integers(1, spec.n_harmonics + 1))
        return FilterSpec.lowpass(spec, spec.n1, width)
    mag = rng.uniform(0.2, 1.0, size=spec.n_harmonics)
    phase = rng.uniform(0.0, 2 * np.pi, size=spec.n_harmonics)
    return FilterSpec(tuple(mag * np.exp(1j * phase)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
