"""Dense symmetric linear algebra with explicit tolerances.

Everything here operates on plain ``numpy`` arrays of 64-bit floats.  A
"covariance" is a symmetric PSD matrix (up to :data:`PSD_TOL`); a "map" is any
symmetric matrix.  All matrix functions go through a full spectral
decomposition (LAPACK ``eigh`` / ``gesdd`` / pivoted Cholesky), never through
iterative square-root schemes, so results are deterministic for identical
input bits.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import get_lapack_funcs, subspace_angles

from .errors import DimensionMismatch, InvalidInput, NotPSD

# Eigenvalues in [-PSD_TOL * max(1, lambda_max), 0) are treated as rounding
# noise and clamped to zero; anything below that raises NotPSD.
PSD_TOL = 1e-8

# Default relative cutoff separating "kernel" from "range" eigenvalues.  It
# separates a geometric-decay spectrum with ratio 1/2 from rounding noise
# only up to dimension ~64; pass an explicit rank_tol beyond that.
RANK_TOL = 1e-10

SYM_TOL = 1e-12

_pstrf = get_lapack_funcs(("pstrf",), (np.empty((1, 1), dtype=np.float64),))[0]


def _as_square_array(M) -> np.ndarray:
    A = np.asarray(M, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InvalidInput(f"expected a square matrix, got shape {A.shape}")
    if A.shape[0] < 1:
        raise InvalidInput("matrix must have dimension >= 1")
    if not np.all(np.isfinite(A)):
        raise InvalidInput("matrix has non-finite entries")
    return A


def check_symmetric(M, tol: float = SYM_TOL) -> np.ndarray:
    """Validate and return a symmetrized copy of ``M``.

    The asymmetry must be at most ``tol * max(1, maxAbsEntry)``; the returned
    matrix is ``(M + M.T) / 2``, which is the documented normalization applied
    before any spectral computation.
    """
    A = _as_square_array(M)
    scale = max(1.0, float(np.max(np.abs(A))) if A.size else 1.0)
    if float(np.max(np.abs(A - A.T))) > tol * scale:
        raise InvalidInput("matrix is not symmetric within tolerance")
    return (A + A.T) / 2.0


def check_covariance(M, tol: float = SYM_TOL) -> np.ndarray:
    """Validate ``M`` as a covariance: symmetric and PSD up to :data:`PSD_TOL`."""
    A = check_symmetric(M, tol)
    w = np.linalg.eigvalsh(A)
    lam_max = float(w[-1]) if w.size else 0.0
    if float(w[0]) < -PSD_TOL * max(1.0, lam_max):
        raise NotPSD(f"smallest eigenvalue {w[0]:.3e} below PSD tolerance")
    return A


def check_same_dim(A: np.ndarray, B: np.ndarray) -> None:
    if A.shape != B.shape:
        raise DimensionMismatch(f"dimension mismatch: {A.shape} vs {B.shape}")


@dataclass(frozen=True)
class SpectralDecomp:
    """Eigendecomposition of a symmetric matrix.

    Attributes
    ----------
    eigenvalues : ndarray, shape (n,)
        In descending order.
    eigenvectors : ndarray, shape (n, n)
        Orthonormal columns, ``eigenvectors[:, i]`` belonging to
        ``eigenvalues[i]``.  Signs are fixed so that the largest-magnitude
        component of each eigenvector is positive (ties broken by lowest
        index), which makes golden-file tests possible.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.T


def eig_sym(M) -> SpectralDecomp:
    """Spectral decomposition of a symmetric matrix.

    The input is symmetrized first (documented normalization, not an error).
    Output is deterministic: eigenvalues descending, eigenvector signs fixed
    by the largest-magnitude-component convention.

    Parameters
    ----------
    M : array_like, shape (n, n)
        Symmetric matrix (covariance or map).

    Returns
    -------
    SpectralDecomp
    """
    A = check_symmetric(M, tol=np.inf)  # symmetrize; finiteness still enforced
    w, V = np.linalg.eigh(A)
    w = w[::-1].copy()
    V = V[:, ::-1].copy()
    # sign convention: largest-|component| positive, first occurrence wins
    idx = np.argmax(np.abs(V), axis=0)
    signs = np.sign(V[idx, np.arange(V.shape[1])])
    signs[signs == 0] = 1.0
    V *= signs
    return SpectralDecomp(eigenvalues=w, eigenvectors=V)


def _psd_eigs(M) -> SpectralDecomp:
    """Decompose and verify PSD-ness; clamp rounding-level negatives to zero."""
    dec = eig_sym(M)
    w = dec.eigenvalues
    lam_max = float(w[0]) if w.size else 0.0
    if float(w[-1]) < -PSD_TOL * max(1.0, lam_max):
        raise NotPSD(f"smallest eigenvalue {w[-1]:.3e} below PSD tolerance")
    return SpectralDecomp(np.clip(w, 0.0, None), dec.eigenvectors)


def sqrt_psd(M) -> np.ndarray:
    """Symmetric PSD square root of a covariance matrix.

    Eigenvalues in ``[-PSD_TOL * max(1, lam_max), 0)`` are clamped to zero;
    anything below raises :class:`NotPSD`.
    """
    dec = _psd_eigs(M)
    V = dec.eigenvectors
    R = (V * np.sqrt(dec.eigenvalues)) @ V.T
    return (R + R.T) / 2.0


def pinv_sqrt(M, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Pseudo-inverse square root ``M^{-1/2}`` restricted to the range of ``M``.

    Eigenvalues at or below ``rank_tol * max(1, lam_max)`` are treated as
    kernel and mapped to zero, so ``pinv_sqrt(M) @ M @ pinv_sqrt(M)`` equals
    the orthogonal projector onto the kept eigenspace.
    """
    dec = _psd_eigs(M)
    w, V = dec.eigenvalues, dec.eigenvectors
    lam_max = float(w[0]) if w.size else 0.0
    thr = rank_tol * max(1.0, lam_max)
    inv = np.where(w > thr, 1.0 / np.sqrt(np.where(w > thr, w, 1.0)), 0.0)
    P = (V * inv) @ V.T
    return (P + P.T) / 2.0


def range_projector(M, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Orthogonal projector onto the span of eigenvectors above the rank cutoff."""
    dec = _psd_eigs(M)
    w, V = dec.eigenvalues, dec.eigenvectors
    thr = rank_tol * max(1.0, float(w[0]) if w.size else 0.0)
    keep = V[:, w > thr]
    P = keep @ keep.T
    return (P + P.T) / 2.0


def operator_norm(M) -> float:
    """Operator (spectral) norm of a symmetric matrix: max |eigenvalue|."""
    A = check_symmetric(M, tol=np.inf)
    w = np.linalg.eigvalsh(A)
    return float(max(abs(w[0]), abs(w[-1]))) if w.size else 0.0


def kernel_dim(M, rank_tol: float = RANK_TOL) -> int:
    """Number of eigenvalues of a PSD matrix below ``rank_tol * max(lam_max, 1)``."""
    dec = _psd_eigs(M)
    w = dec.eigenvalues
    thr = rank_tol * max(float(w[0]) if w.size else 0.0, 1.0)
    return int(np.sum(w < thr))


def kernel_basis(M, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the numerical kernel of a PSD matrix."""
    dec = _psd_eigs(M)
    w, V = dec.eigenvalues, dec.eigenvectors
    thr = rank_tol * max(float(w[0]) if w.size else 0.0, 1.0)
    return V[:, w < thr]


def principal_angles(U: np.ndarray, W: np.ndarray) -> np.ndarray:
    """Canonical angles (radians, descending) between the column spans of U and W."""
    return subspace_angles(U, W)


def psd_factor(M) -> np.ndarray:
    """Factor ``C`` with ``C.T @ C = M`` via diagonally pivoted Cholesky.

    For graded PSD matrices (D A D with D diagonal and A well-conditioned)
    the pivoted factor retains small eigenvalues with high relative accuracy,
    which a plain eigendecomposition loses once the spectrum spans more than
    ~16 decades.  Rows beyond the numerically detected rank are zero.
    """
    A = _as_square_array(M)
    c, piv, rank, info = _pstrf(A, lower=0)
    if info < 0:
        raise InvalidInput(f"pivoted Cholesky failed with info={info}")
    n = A.shape[0]
    C = np.triu(c)
    C[rank:, :] = 0.0
    # undo the pivoting: M = P L L^T P^T  =>  factor rows get permuted columns
    inv = np.empty(n, dtype=np.intp)
    inv[piv - 1] = np.arange(n)
    return C[:, inv]


def congruence_sqrt(root: np.ndarray, M: np.ndarray) -> np.ndarray:
    """PSD square root of ``root @ M @ root`` for PSD ``M`` and symmetric ``root``.

    Computed as the symmetric polar factor ``|C @ root|`` from an SVD of the
    pivoted-Cholesky factor ``C`` of ``M``, which keeps absolute accuracy at
    rounding level even when the product's spectrum spans hundreds of decades
    (the regime where ``sqrt_psd`` of the explicit product degrades).  Used by
    the transport map, the barycentre iteration and the barycentre
    certificate; algebraically identical to ``sqrt_psd(root @ M @ root)``.
    """
    X = psd_factor(M) @ root
    _, sv, Vt = np.linalg.svd(X)
    R = (Vt.T * sv) @ Vt
    return (R + R.T) / 2.0
