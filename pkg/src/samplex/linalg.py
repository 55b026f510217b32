"""Dense linear-algebra kernels.

Small SPD solves, symmetric eigendecompositions, singular values, circulant
spectra and a couple of spectral identities used both by the estimator and
by the proof-derived property tests.  Everything here is a thin, contract-
checked layer over LAPACK (scipy/numpy); matrices stay small (order <~ 200).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    ConvergenceFailureError,
    NotPositiveDefiniteError,
    ValidationError,
)

_SYM_RTOL = 1e-12


def _as_square(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {a.shape}")
    return a


def _require_symmetric(a) -> np.ndarray:
    a = _as_square(a)
    scale = max(np.abs(a).max(), 1.0) if a.size else 1.0
    if a.size and np.abs(a - a.T).max() > _SYM_RTOL * scale:
        raise ValidationError("matrix is not symmetric within 1e-12 relative")
    return a


@dataclass(frozen=True)
class Spectrum:
    """Real spectrum in descending order, optionally with eigenvectors.

    When present, column ``eigenvectors[:, i]`` pairs with ``eigenvalues[i]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None


def _cholesky(a: np.ndarray):
    """Lower Cholesky factor with the pivot-breakdown contract.

    Raises NotPositiveDefiniteError when LAPACK fails or when any pivot
    (squared factor diagonal) falls at or below n * eps * max(diag(A)).
    """
    n = a.shape[0]
    try:
        c, low = scipy.linalg.cho_factor(a, lower=True, check_finite=False)
    except scipy.linalg.LinAlgError as exc:
        raise NotPositiveDefiniteError(str(exc)) from exc
    pivots = np.diagonal(c) ** 2
    threshold = n * np.finfo(float).eps * max(np.diagonal(a).max(), 0.0)
    if np.any(pivots <= threshold):
        raise NotPositiveDefiniteError(
            f"pivot {pivots.min():.3e} at or below breakdown threshold "
            f"{threshold:.3e}"
        )
    return c, low


def spd_solve(a, b) -> np.ndarray:
    """Solve A X = B for symmetric positive definite A via Cholesky."""
    a = _require_symmetric(a)
    b = np.asarray(b, dtype=float)
    if b.shape[0] != a.shape[0]:
        raise ValidationError(
            f"incompatible shapes: A is {a.shape}, B has leading dim {b.shape[0]}"
        )
    if a.shape[0] == 0:
        return np.zeros_like(b)
    factor = _cholesky(a)
    return scipy.linalg.cho_solve(factor, b, check_finite=False)


def trace_of_inverse(a) -> float:
    """Tr(A^-1) for SPD A, via factorization-based solves."""
    a = _require_symmetric(a)
    if a.shape[0] == 0:
        return 0.0
    return float(np.trace(spd_solve(a, np.eye(a.shape[0]))))


def sym_eigen(a, vectors: bool = False) -> Spectrum:
    """Full spectrum of a symmetric matrix, eigenvalues descending."""
    a = _require_symmetric(a)
    try:
        if vectors:
            w, v = np.linalg.eigh(a)
            order = np.argsort(w)[::-1]
            return Spectrum(w[order], v[:, order])
        w = np.linalg.eigvalsh(a)
        return Spectrum(w[::-1])
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailureError(
            f"eigendecomposition failed for order-{a.shape[0]} matrix "
            f"(fro norm {np.linalg.norm(a):.3e}): {exc}"
        ) from exc


def singular_values(a) -> np.ndarray:
    """Singular values of any real matrix, descending."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2:
        raise ValidationError(f"expected a matrix, got shape {a.shape}")
    try:
        return np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailureError(f"SVD failed: {exc}") from exc


def circulant_eigenvalues(first_row) -> np.ndarray:
    """Eigenvalues psi_m = sum_k c_k exp(-2j*pi*m*k/n) of the circulant
    matrix with first row ``c``; this is exactly the DFT of the row.
    """
    c = np.asarray(first_row, dtype=complex)
    if c.ndim != 1 or c.size < 1:
        raise ValidationError("first row must be a nonempty 1-D sequence")
    return np.fft.fft(c)


def block_identity_eigs(g) -> np.ndarray:
    """Spectrum of [[I, G], [G^T, I]] without assembling it.

    For each singular value s of the N x K block G, both 1+s and 1-s are
    eigenvalues; the remaining |N-K| eigenvalues equal 1.  Returned in
    descending order.
    """
    g = np.asarray(g, dtype=float)
    if g.ndim != 2:
        raise ValidationError(f"expected a matrix, got shape {g.shape}")
    s = singular_values(g)
    ones = np.ones(g.shape[0] + g.shape[1] - 2 * s.size)
    return np.sort(np.concatenate([1.0 + s, 1.0 - s, ones]))[::-1]


def peierl_gap(a, f: str = "inverse") -> float:
    """Tr(f(A)) minus the same sum over the diagonal entries alone.

    For the strictly convex maps f(x) = 1/x ("inverse") and f(x) = 1/x^2
    ("inverse-square") on SPD matrices the gap is nonnegative and vanishes
    exactly when A is diagonal.
    """
    a = _require_symmetric(a)
    diag = np.diagonal(a)
    inv = spd_solve(a, np.eye(a.shape[0]))
    if f == "inverse":
        return float(np.trace(inv) - np.sum(1.0 / diag))
    if f == "inverse-square":
        return float(np.sum(inv * inv) - np.sum(1.0 / diag**2))
    raise ValidationError(f"unknown convex function tag: {f!r}")
