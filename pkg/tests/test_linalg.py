import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from samplex.errors import NotPositiveDefiniteError, ValidationError
from samplex.linalg import (
    block_identity_eigs,
    circulant_eigenvalues,
    peierl_gap,
    singular_values,
    spd_solve,
    sym_eigen,
    trace_of_inverse,
)


def random_spd(rng, n):
    g = rng.normal(size=(n, n))
    return g @ g.T + n * np.eye(n)


class TestSpdSolve:
    def test_identity(self, rng):
        b = rng.normal(size=(4, 3))
        np.testing.assert_allclose(spd_solve(np.eye(4), b), b)

    def test_diagonal(self):
        x = spd_solve(np.diag([2.0, 4.0]), np.eye(2))
        np.testing.assert_allclose(x, np.diag([0.5, 0.25]))

    def test_residual_bound_random(self, rng):
        a = random_spd(rng, 8)
        x = spd_solve(a, np.eye(8))
        assert np.linalg.norm(a @ x - np.eye(8)) <= 1e-9 * np.linalg.norm(
            np.eye(8)
        ) + 1e-12

    def test_residual_sweep(self, rng):
        # 1000 random SPD instances of orders 2..32.
        for i in range(1000):
            n = int(rng.integers(2, 33))
            a = random_spd(rng, n)
            b = rng.normal(size=(n, 2))
            x = spd_solve(a, b)
            assert np.linalg.norm(a @ x - b) <= 1e-9 * np.linalg.norm(b)

    def test_not_positive_definite(self):
        with pytest.raises(NotPositiveDefiniteError):
            spd_solve(np.diag([1.0, -1.0]), np.eye(2))
        with pytest.raises(NotPositiveDefiniteError):
            spd_solve(np.zeros((3, 3)), np.eye(3))

    def test_asymmetric_rejected(self):
        with pytest.raises(ValidationError):
            spd_solve(np.array([[1.0, 0.5], [0.0, 1.0]]), np.eye(2))

    @settings(max_examples=60, deadline=None)
    @given(
        n=st.integers(min_value=1, max_value=10),
        seed=st.integers(min_value=0, max_value=2**31),
    )
    def test_solve_inverts(self, n, seed):
        rng = np.random.default_rng(seed)
        a = random_spd(rng, n)
        x = spd_solve(a, np.eye(n))
        np.testing.assert_allclose(a @ x, np.eye(n), atol=1e-9)


class TestTraceOfInverse:
    def test_diagonal(self):
        assert trace_of_inverse(np.diag([1.0, 2.0, 4.0])) == pytest.approx(1.75)

    def test_scaled_identity(self):
        assert trace_of_inverse(3.0 * np.eye(6)) == pytest.approx(2.0)

    def test_eigen_oracle(self, rng):
        for _ in range(25):
            a = random_spd(rng, int(rng.integers(2, 12)))
            expected = np.sum(1.0 / np.linalg.eigvalsh(a))
            assert trace_of_inverse(a) == pytest.approx(expected, rel=1e-9)


class TestSymEigen:
    def test_diagonal(self):
        np.testing.assert_allclose(
            sym_eigen(np.diag([3.0, 1.0])).eigenvalues, [3.0, 1.0]
        )

    def test_two_by_two_closed_form(self):
        a = np.array([[1.0, 0.5], [0.5, 1.0]])
        np.testing.assert_allclose(sym_eigen(a).eigenvalues, [1.5, 0.5])

    def test_trace_identity(self, rng):
        for _ in range(50):
            g = rng.normal(size=(10, 10))
            a = g + g.T
            w = sym_eigen(a).eigenvalues
            assert np.all(np.diff(w) <= 1e-12)
            assert w.sum() == pytest.approx(np.trace(a), rel=1e-9, abs=1e-9)

    def test_eigenvector_reconstruction(self, rng):
        a = random_spd(rng, 7)
        spec = sym_eigen(a, vectors=True)
        recon = spec.eigenvectors @ np.diag(spec.eigenvalues) @ spec.eigenvectors.T
        assert np.linalg.norm(a - recon) <= 1e-9 * np.linalg.norm(a)


class TestSingularValues:
    def test_zero_matrix(self):
        np.testing.assert_array_equal(singular_values(np.zeros((3, 2))), 0.0)

    def test_diagonal_signs(self):
        np.testing.assert_allclose(
            singular_values(np.diag([3.0, -2.0])), [3.0, 2.0]
        )

    def test_squares_match_gram_eigs(self, rng):
        a = rng.normal(size=(6, 4))
        s = singular_values(a)
        gram = np.linalg.eigvalsh(a.T @ a)[::-1]
        np.testing.assert_allclose(s**2, gram, rtol=1e-9, atol=1e-9)

    def test_submatrix_interlacing(self, rng):
        # alpha_i >= beta_i, and beta_i >= alpha_{i + (m-p) + (n-q)}.
        from itertools import combinations

        for _ in range(30):
            a = rng.normal(size=(5, 3))
            alpha = singular_values(a)
            for row_idx in combinations(range(5), 4):
                for col_idx in combinations(range(3), 2):
                    b = a[np.ix_(row_idx, col_idx)]
                    beta = singular_values(b)
                    assert np.all(alpha[: beta.size] >= beta - 1e-12)
                    # p+q-m = 1, p+q-n = 3 -> i = 1 only; shift = 2.
                    assert beta[0] >= alpha[2] - 1e-12


class TestCirculant:
    def test_constant_diagonal(self):
        np.testing.assert_allclose(
            circulant_eigenvalues([5.0, 0.0, 0.0, 0.0]), 5.0 * np.ones(4)
        )

    def test_hand_computed(self):
        w = circulant_eigenvalues([2.0, 1.0, 1.0])
        np.testing.assert_allclose(sorted(w.real, reverse=True), [4.0, 1.0, 1.0])
        np.testing.assert_allclose(w.imag, 0.0, atol=1e-12)

    def test_dense_oracle_symmetric(self, rng):
        for _ in range(50):
            n = int(rng.integers(2, 24))
            c = rng.normal(size=n)
            c[1:] = (c[1:] + c[1:][::-1]) / 2  # symmetric circulant
            ours = np.sort(circulant_eigenvalues(c).real)[::-1]
            dense = sym_eigen(scipy.linalg.circulant(c)).eigenvalues
            np.testing.assert_allclose(ours, dense, rtol=1e-9, atol=1e-9)

    def test_dense_oracle_general(self, rng):
        c = rng.normal(size=8)
        ours = np.sort_complex(circulant_eigenvalues(c))
        dense = np.sort_complex(np.linalg.eigvals(scipy.linalg.circulant(c)))
        np.testing.assert_allclose(ours, dense, atol=1e-9)


class TestBlockIdentityEigs:
    def test_scalar_block(self):
        np.testing.assert_allclose(
            block_identity_eigs(np.array([[0.5]])), [1.5, 0.5]
        )

    def test_zero_block(self):
        np.testing.assert_allclose(
            block_identity_eigs(np.zeros((3, 2))), np.ones(5)
        )

    def test_dense_oracle(self, rng):
        for _ in range(50):
            n, k = int(rng.integers(1, 6)), int(rng.integers(1, 6))
            g = rng.normal(size=(n, k))
            block = np.block(
                [[np.eye(n), g], [g.T, np.eye(k)]]
            )
            ours = block_identity_eigs(g)
            dense = sym_eigen(block).eigenvalues
            np.testing.assert_allclose(ours, dense, rtol=1e-9, atol=1e-9)


class TestPeierlGap:
    def test_diagonal_is_zero(self, rng):
        a = np.diag(rng.uniform(0.5, 3.0, size=5))
        assert peierl_gap(a, "inverse") == pytest.approx(0.0, abs=1e-12)
        assert peierl_gap(a, "inverse-square") == pytest.approx(0.0, abs=1e-12)

    def test_two_by_two_closed_form(self):
        a = np.array([[2.0, 1.0], [1.0, 2.0]])
        assert peierl_gap(a, "inverse") == pytest.approx(1.0 / 3.0)

    def test_nonnegative_sweep(self, rng):
        for _ in range(200):
            n = int(rng.integers(2, 12))
            a = random_spd(rng, n)
            for tag in ("inverse", "inverse-square"):
                gap = peierl_gap(a, tag)
                assert gap >= -1e-9 * abs(gap + 1e-300)
                assert gap > 0

    def test_unknown_tag(self):
        with pytest.raises(ValidationError):
            peierl_gap(np.eye(2), "logdet")
