import numpy as np
import pytest

from samplex import (
    DiscreteSignalSpec,
    SignalSpec,
    evaluate,
    parseval_distortion,
    sample_coefficients,
)
from samplex.errors import ValidationError


def make_spec(n1=1, n2=4, p=1.0, sigma2=1.0, period=1.0):
    return SignalSpec.uniform(period, n1, n2, p, sigma2)


class TestSignalSpec:
    def test_derived_quantities(self):
        spec = make_spec(n1=3, n2=7, period=2.0)
        assert spec.n_harmonics == 5
        assert spec.omega0 == pytest.approx(np.pi)
        assert list(spec.harmonics) == [3, 4, 5, 6, 7]
        assert spec.snr == pytest.approx(5.0)

    def test_invalid_band_rejected(self):
        with pytest.raises(ValidationError):
            SignalSpec.uniform(1.0, 5, 3, 1.0, 1.0)
        with pytest.raises(ValidationError):
            SignalSpec.uniform(1.0, 0, 3, 1.0, 1.0)
        with pytest.raises(ValidationError):
            SignalSpec(1.0, 1, 2, (1.0, -0.5), 1.0)
        with pytest.raises(ValidationError):
            SignalSpec.uniform(1.0, 1, 2, 1.0, -0.1)

    def test_json_round_trip_uniform(self):
        spec = make_spec(n1=2, n2=5, p=0.7, sigma2=0.04)
        obj = spec.to_json()
        assert obj == {"T": 1.0, "N1": 2, "N2": 5, "p": 0.7, "sigma2": 0.04}
        assert SignalSpec.from_json(obj) == spec

    def test_json_round_trip_per_harmonic(self):
        spec = SignalSpec(1.0, 1, 3, (0.5, 1.0, 2.0), 1.0)
        assert SignalSpec.from_json(spec.to_json()) == spec

    def test_json_scalar_p_expands(self):
        spec = SignalSpec.from_json(
            {"T": 1, "N1": 1, "N2": 3, "p": 2, "sigma2": 1}
        )
        assert spec.coeff_variances == (2.0, 2.0, 2.0)

    def test_json_unknown_key_rejected(self):
        with pytest.raises(ValidationError):
            SignalSpec.from_json(
                {"T": 1, "N1": 1, "N2": 3, "p": 1, "sigma2": 1, "snr": 3}
            )

    def test_discrete_requires_integer_period_and_band(self):
        DiscreteSignalSpec.uniform(15, 1, 4, 1.0, 1.0)
        with pytest.raises(ValidationError):
            DiscreteSignalSpec.uniform(15.5, 1, 4, 1.0, 1.0)
        with pytest.raises(ValidationError):
            DiscreteSignalSpec.uniform(15, 1, 8, 1.0, 1.0)


class TestSampleCoefficients:
    def test_single_harmonic_standard_normals(self):
        spec = make_spec(n1=1, n2=1)
        x = sample_coefficients(spec, 7)
        assert x.shape == (2,)

    def test_same_seed_identical(self):
        spec = make_spec(n1=2, n2=6)
        a = sample_coefficients(spec, 123)
        b = sample_coefficients(spec, 123)
        np.testing.assert_array_equal(a, b)
        c = sample_coefficients(spec, 124)
        assert not np.array_equal(a, c)

    def test_law_of_large_numbers_variance(self):
        # N=4, p=1, 10^5 draws: per-coordinate sample variance within 3%.
        spec = make_spec(n1=1, n2=4, p=1.0)
        draws = np.array(
            [sample_coefficients(spec, seed) for seed in range(100_000)]
        )
        var = draws.var(axis=0, ddof=1)
        assert var.shape == (8,)
        assert np.all(np.abs(var - 1.0) < 0.03)

    def test_scaled_variances(self):
        spec = SignalSpec(1.0, 1, 2, (4.0, 0.25), 1.0)
        draws = np.array(
            [sample_coefficients(spec, seed) for seed in range(4000)]
        )
        var = draws.var(axis=0, ddof=1)
        np.testing.assert_allclose(var, [4.0, 0.25, 4.0, 0.25], rtol=0.15)


class TestEvaluate:
    def test_zero_coefficients(self):
        spec = make_spec()
        x = np.zeros(8)
        for t in [0.0, 0.3, 11.7]:
            assert evaluate(spec, x, t) == 0.0

    def test_single_cosine(self):
        spec = make_spec(n1=1, n2=1)
        assert evaluate(spec, np.array([1.0, 0.0]), 0.0) == pytest.approx(1.0)
        assert evaluate(spec, np.array([0.0, 1.0]), 0.25) == pytest.approx(1.0)

    def test_periodicity(self, rng):
        spec = make_spec(n1=3, n2=9, period=2.5)
        for _ in range(25):
            x = rng.normal(size=2 * spec.n_harmonics)
            t = rng.uniform(0, 10)
            assert evaluate(spec, x, t) == pytest.approx(
                evaluate(spec, x, t + spec.period), abs=1e-12
            )

    def test_array_input(self, rng):
        spec = make_spec()
        x = rng.normal(size=8)
        grid = np.linspace(0, 1, 17)
        vals = evaluate(spec, x, grid)
        assert vals.shape == grid.shape
        assert vals[0] == pytest.approx(vals[-1], abs=1e-12)

    def test_wrong_length_rejected(self):
        spec = make_spec()
        with pytest.raises(ValidationError):
            evaluate(spec, np.zeros(7), 0.0)


class TestParseval:
    def test_equal_vectors(self):
        spec = make_spec()
        x = np.arange(8.0)
        assert parseval_distortion(spec, x, x) == 0.0

    def test_unit_difference(self):
        spec = make_spec()
        x = np.zeros(8)
        xhat = np.zeros(8)
        xhat[3] = 1.0
        assert parseval_distortion(spec, x, xhat) == pytest.approx(0.5)

    def test_quadrature_oracle(self, rng):
        # (1/T) integral of |S_hat - S|^2 on a 10^4 grid vs 0.5*||x-xhat||^2.
        for _ in range(100):
            n1 = int(rng.integers(1, 6))
            n2 = n1 + int(rng.integers(0, 5))
            period = float(rng.uniform(0.5, 3.0))
            spec = SignalSpec.uniform(period, n1, n2, 1.0, 1.0)
            x = rng.normal(size=2 * spec.n_harmonics)
            xhat = rng.normal(size=2 * spec.n_harmonics)
            grid = np.linspace(0.0, period, 10_001)
            diff = evaluate(spec, xhat, grid) - evaluate(spec, x, grid)
            quad = np.trapezoid(diff**2, grid) / period
            assert parseval_distortion(spec, x, xhat) == pytest.approx(
                quad, rel=1e-6
            )

    def test_stationarity_uniform_variances(self):
        # Sample variance of S(t) is t-independent when variances are equal.
        spec = make_spec(n1=2, n2=5, p=1.0)
        draws = np.array(
            [sample_coefficients(spec, seed) for seed in range(4000)]
        )
        s_t1 = np.array([evaluate(spec, d, 0.13) for d in draws])
        s_t2 = np.array([evaluate(spec, d, 0.77) for d in draws])
        expected = spec.n_harmonics * 1.0
        assert s_t1.var(ddof=1) == pytest.approx(expected, rel=0.1)
        assert s_t2.var(ddof=1) == pytest.approx(expected, rel=0.1)
