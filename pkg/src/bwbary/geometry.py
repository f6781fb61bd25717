"""Bures-Wasserstein distance and optimal transport maps between centred Gaussians.

Mean vectors are taken to be zero throughout, so a Gaussian is identified
with its covariance matrix and the squared 2-Wasserstein distance has the
closed form of Olkin & Pukelsheim (1982):

    d^2(A, B) = tr A + tr B - 2 tr((A^{1/2} B A^{1/2})^{1/2}).
"""

import numpy as np

from . import linalg
from .errors import KernelNotIncluded
from .linalg import RANK_TOL, check_covariance, check_same_dim


def cross_trace(factor_a: np.ndarray, factor_b: np.ndarray) -> float:
    """``tr((A^{1/2} B A^{1/2})^{1/2})`` from factors with ``C.T @ C`` = matrix."""
    return float(np.sum(np.linalg.svd(factor_b @ factor_a.T, compute_uv=False)))


def bw_distance_sq(A, B) -> float:
    """Squared Bures-Wasserstein distance between covariances ``A`` and ``B``.

    Parameters
    ----------
    A, B : array_like, shape (n, n)
        Symmetric PSD matrices of equal dimension.

    Returns
    -------
    float
        Nonnegative; rounding-level negatives are clamped to zero.  Symmetric
        in its arguments at rounding level.

    Notes
    -----
    The cross term ``tr((A^{1/2} B A^{1/2})^{1/2})`` equals the nuclear norm
    of ``C_B @ C_A.T`` for any factorizations ``A = C_A.T @ C_A``,
    ``B = C_B.T @ C_B``; evaluating it from the pivoted-Cholesky factors of
    both arguments keeps rank-deficient inputs exact (no square root of
    rounding noise is ever taken) and makes the formula symmetric by
    construction.
    """
    A = check_covariance(A)
    B = check_covariance(B)
    check_same_dim(A, B)
    cross = cross_trace(linalg.psd_factor(A), linalg.psd_factor(B))
    val = float(np.trace(A) + np.trace(B)) - 2.0 * cross
    return max(val, 0.0)


def bw_distance(A, B) -> float:
    """Bures-Wasserstein distance, the square root of :func:`bw_distance_sq`."""
    return float(np.sqrt(bw_distance_sq(A, B)))


def optimal_map(A, B, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Optimal transport map from ``N(0, A)`` to ``N(0, B)``.

    The map exists as a linear operator only when ``ker(A)`` is contained in
    ``ker(B)``; this is checked numerically and a violation raises
    :class:`KernelNotIncluded`.  On the range of ``A`` the returned matrix is

        M = A^{-1/2} (A^{1/2} B A^{1/2})^{1/2} A^{-1/2}

    with pseudo-inverses restricted to the range, and it pushes ``A`` forward
    to ``B``: ``M @ A @ M = B`` up to ~1e-7 relative on that range.

    Parameters
    ----------
    A, B : array_like, shape (n, n)
        Source and target covariances.
    rank_tol : float
        Relative eigenvalue cutoff used both to split ker(A) from range(A)
        and in the kernel-inclusion test ``||B v|| <= rank_tol * lam_max(B) * n``.

    Returns
    -------
    ndarray, shape (n, n)
        Symmetric, PSD on range(A).
    """
    A = check_covariance(A)
    B = check_covariance(B)
    check_same_dim(A, B)
    n = A.shape[0]

    ker = linalg.kernel_basis(A, rank_tol)
    if ker.shape[1]:
        lam_max_b = float(np.linalg.eigvalsh(B)[-1])
        worst = float(np.max(np.linalg.norm(B @ ker, axis=0)))
        if worst > rank_tol * lam_max_b * n:
            raise KernelNotIncluded(
                f"ker(A) not contained in ker(B): ||B v|| = {worst:.3e} "
                f"exceeds {rank_tol * lam_max_b * n:.3e}"
            )

    root = linalg.sqrt_psd(A)
    pinv = linalg.pinv_sqrt(A, rank_tol)
    mid = linalg.congruence_sqrt(root, B)
    M = pinv @ mid @ pinv
    return (M + M.T) / 2.0
