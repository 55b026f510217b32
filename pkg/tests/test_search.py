from itertools import combinations

import numpy as np
import pytest

from samplex import (
    DiscreteSignalSpec,
    SignalSpec,
    discrete_exhaustive,
    lemma1_bounds,
    sweep_M,
    sweep_t2,
)
from samplex.errors import (
    NoiseRequiredError,
    SearchSpaceTooLargeError,
    ValidationError,
)
from samplex.search import discrete_distortion


class TestDiscreteExhaustive:
    def test_t15_m3_optimal_family(self):
        # T=15, (M, N1, N) = (3, 1, 4), p = sigma = 1.
        spec = DiscreteSignalSpec.uniform(15, 1, 4, 1.0, 1.0)
        result = discrete_exhaustive(spec, 3)
        ties = set(result.ties)
        # The optimal family includes 3-subsets of {1, 5, 8, 12} ...
        assert (1, 5, 12) in ties
        assert (1, 8, 12) in ties
        # ... and every tie is a cyclic shift of one of them: the circular
        # gap multiset is always {4, 4, 7}.
        for tie in ties:
            s = sorted(tie)
            gaps = sorted(
                (s[(i + 1) % 3] - s[i]) % 15 for i in range(3)
            )
            assert gaps == [4, 4, 7]
        assert len(ties) == 15

    def test_t15_m3_beats_continuous_bound_gap(self):
        # Integer instants cannot reach the continuous lower bound exactly.
        spec = DiscreteSignalSpec.uniform(15, 1, 4, 1.0, 1.0)
        result = discrete_exhaustive(spec, 3)
        cont = lemma1_bounds(spec, 3)[0]
        assert result.best_d > cont
        assert result.best_d == pytest.approx(cont, rel=5e-3)

    def test_t15_m4_n6_optimal_scheme(self):
        spec = DiscreteSignalSpec.uniform(15, 1, 6, 1.0, 1.0)
        result = discrete_exhaustive(spec, 4)
        assert (1, 2, 8, 9) in set(result.ties)

    def test_t15_m4_rounded_grid_strictly_worse(self):
        # Rounding any 4 points of the continuous grid {tau + 2.5 k} is
        # strictly worse than the discrete optimum.
        spec = DiscreteSignalSpec.uniform(15, 1, 6, 1.0, 1.0)
        best = discrete_exhaustive(spec, 4).best_d
        rounded_best = np.inf
        for tau_tenths in range(25):
            tau = tau_tenths / 10.0
            grid = [(tau + 2.5 * k) % 15 for k in range(6)]
            for combo in combinations(grid, 4):
                instants = sorted({int(round(t)) % 15 for t in combo})
                if len(instants) < 4:
                    continue
                rounded_best = min(
                    rounded_best, discrete_distortion(spec, instants)
                )
        assert rounded_best > best * (1 + 1e-9)

    def test_full_sampling_matches_formula(self):
        # M = T: every instant sampled; D from the analytic route.
        spec = DiscreteSignalSpec.uniform(9, 1, 3, 1.0, 1.0)
        result = discrete_exhaustive(spec, 9)
        assert result.ties == (tuple(range(9)),)
        assert result.best_d == pytest.approx(
            discrete_distortion(spec, range(9)), rel=1e-12
        )

    def test_audit_never_beats_best(self, rng):
        spec = DiscreteSignalSpec.uniform(12, 1, 3, 1.0, 1.0)
        result = discrete_exhaustive(spec, 3)
        assert (
            discrete_distortion(spec, result.best_scheme.instants)
            <= result.best_d + 1e-12
        )
        for _ in range(100):
            candidate = tuple(
                sorted(rng.choice(12, size=3, replace=False).tolist())
            )
            assert discrete_distortion(spec, candidate) >= result.best_d - 1e-12

    def test_integer_grid_hits_continuous_bound(self):
        # T=12, N=4: the half-Landau grid step T/N = 3 is an integer, so
        # the discrete optimum equals the continuous bound.
        spec = DiscreteSignalSpec.uniform(12, 1, 4, 1.0, 1.0)
        result = discrete_exhaustive(spec, 3)
        assert result.best_d == pytest.approx(
            lemma1_bounds(spec, 3)[0], rel=1e-9
        )
        assert (0, 3, 6) in set(result.ties)

    def test_guards(self):
        spec = DiscreteSignalSpec.uniform(15, 1, 4, 1.0, 0.0)
        with pytest.raises(NoiseRequiredError):
            discrete_exhaustive(spec, 3)
        big = DiscreteSignalSpec.uniform(60, 1, 4, 1.0, 1.0)
        with pytest.raises(SearchSpaceTooLargeError):
            discrete_exhaustive(big, 9)
        ok = DiscreteSignalSpec.uniform(15, 1, 4, 1.0, 1.0)
        with pytest.raises(ValidationError):
            discrete_exhaustive(ok, 0)


class TestSweepT2:
    def test_minima_coincide(self):
        # (M, N1, N) = (2, 2, 1): D and V dip at the same grid argument.
        spec = SignalSpec.uniform(1.0, 2, 2, 1.0, 1.0)
        rows = sweep_t2(spec, 0.0, 800)
        d_arg = rows[np.argmin(rows[:, 1]), 0]
        v_arg = rows[np.argmin(rows[:, 2]), 0]
        assert abs(d_arg - v_arg) <= 1.0 / 800 + 1e-12

    def test_time_reversal_symmetry(self):
        spec = SignalSpec.uniform(1.0, 2, 5, 1.0, 1.0)
        rows = sweep_t2(spec, 0.0, 500)
        t2, d = rows[:, 0], rows[:, 1]
        # D(t2) = D(T - t2): compare each grid point with its mirror.
        mirror = {round(t, 9): v for t, v in zip(t2, d)}
        for t, v in zip(t2, d):
            m = mirror.get(round(1.0 - t, 9))
            if m is not None:
                assert v == pytest.approx(m, rel=1e-9)

    def test_collision_limit_is_averaged_single_sample(self):
        # As t2 -> t1 the two observations collapse onto one instant, but
        # their independent noises still average: the limit is the M=1
        # distortion with noise variance sigma^2 / 2, strictly below the
        # plain M=1 value.
        spec = SignalSpec.uniform(1.0, 1, 3, 1.0, 1.0)
        half_noise = SignalSpec.uniform(1.0, 1, 3, 1.0, 0.5)
        rows = sweep_t2(spec, 0.0, 5000)
        from samplex import FilterSpec, SamplingScheme, pi_route_moments

        single = SamplingScheme((0.0,), 1.0)
        d_m1_half = pi_route_moments(
            half_noise, FilterSpec.allpass(half_noise), single
        )[0]
        d_m1 = pi_route_moments(spec, FilterSpec.allpass(spec), single)[0]
        assert rows[0, 1] == pytest.approx(d_m1_half, rel=5e-3)
        assert rows[0, 1] < d_m1

    def test_fixed_instant_excluded(self):
        spec = SignalSpec.uniform(1.0, 1, 2, 1.0, 1.0)
        rows = sweep_t2(spec, 0.25, 100)
        assert not np.any(np.isclose(rows[:, 0], 0.25, atol=1e-9))


class TestSweepM:
    def test_fig7_shape(self):
        spec = SignalSpec.uniform(1.0, 7, 14, 1.0, 1.0)
        columns, rows = sweep_M(spec, 32)
        assert columns == ["M", "D_uniform", "D_lemma1", "D_lemma2", "D_thm6_upper"]
        d_uniform = rows[:, 1]
        # Interior local maximum of the uniform curve sits at M = 21.
        interior = [
            m
            for m in range(2, 32)
            if d_uniform[m - 1] > d_uniform[m - 2]
            and d_uniform[m - 1] > d_uniform[m]
        ]
        assert interior == [21]

    def test_upper_bound_column_nan_outside_regime(self):
        spec = SignalSpec.uniform(1.0, 1, 4, 1.0, 1.0)
        columns, rows = sweep_M(spec, 12)
        ub = rows[:, columns.index("D_thm6_upper")]
        assert np.all(np.isnan(ub[:4]))       # M <= N
        assert np.all(np.isfinite(ub[4:8]))   # N < M <= 2N
        assert np.all(np.isnan(ub[8:]))       # M > 2N

    def test_strategy_subset(self):
        spec = SignalSpec.uniform(1.0, 1, 4, 1.0, 1.0)
        columns, rows = sweep_M(spec, 6, strategies={"bounds"})
        assert columns == ["M", "D_lemma1", "D_lemma2"]
        assert rows.shape == (6, 3)

    def test_unknown_strategy(self):
        spec = SignalSpec.uniform(1.0, 1, 4, 1.0, 1.0)
        with pytest.raises(ValidationError):
            sweep_M(spec, 6, strategies={"gradient"})
