"""Constructors for the shift-conjugation family with a singular barycentre.

The building block is the doubling shift ``F`` on basis vectors,
``F e_k = e_{2k}`` (1-based), truncated to a given dimension.  Conjugating a
diagonal covariance that vanishes on every odd-indexed direction with PSD
maps of the form ``I + a (F + F^T)`` produces families whose exact
Bures-Wasserstein barycentre is that singular covariance: whenever the maps
are PSD and average to the identity, the barycentre certificate holds with
equality.

At finite truncation each conjugated covariance has the same kernel
dimension as the original (its kernel is the inverse image of the original
kernel under the map); the kernels are tilted away from each other, which is
quantified by principal angles.  Vanishing of the conjugated kernels is
strictly a limit phenomenon, so this module reports kernel dimensions and
angles rather than asserting injectivity.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .errors import DimensionMismatch, InvalidInput, NotPSD
from .linalg import RANK_TOL

# Negatives above this rounding floor are left untouched by conjugate();
# beyond it the product is reconstructed with clamped eigenvalues.
_CLAMP_TOL = 1e-14


@dataclass(frozen=True)
class TruncationConfig:
    """Finite truncation of the singular-covariance construction.

    Attributes
    ----------
    dim : int
        Truncation dimension (a power of two keeps the shift orbits tidy).
    decay : float or sequence of float
        A float ``r`` in (0, 1) puts eigenvalue ``r**k`` on the k-th kept
        direction (geometric decay); a sequence lists the kept eigenvalues
        explicitly, in increasing index order.
    kernel_pattern : tuple of int, optional
        1-based indices of the zero directions.  Defaults to all odd indices
        1, 3, 5, ...
    """

    dim: int
    decay: float | Sequence[float] = 0.5
    kernel_pattern: tuple = None

    def __post_init__(self):
        if self.dim < 2:
            raise InvalidInput("dim must be >= 2")
        if self.kernel_pattern is None:
            object.__setattr__(self, "kernel_pattern", tuple(range(1, self.dim + 1, 2)))
        else:
            pattern = tuple(sorted(set(int(k) for k in self.kernel_pattern)))
            if pattern and (pattern[0] < 1 or pattern[-1] > self.dim):
                raise InvalidInput("kernel_pattern indices must lie in 1..dim")
            object.__setattr__(self, "kernel_pattern", pattern)
        if np.isscalar(self.decay):
            r = float(self.decay)
            if not (0.0 < r < 1.0):
                raise InvalidInput("geometric decay ratio must be in (0, 1)")
        else:
            values = tuple(float(v) for v in self.decay)
            if len(values) != self.dim - len(self.kernel_pattern):
                raise InvalidInput(
                    f"decay list has {len(values)} entries but "
                    f"{self.dim - len(self.kernel_pattern)} kept directions"
                )
            if any(v <= 0 for v in values):
                raise InvalidInput("decay values must be strictly positive")
            object.__setattr__(self, "decay", values)


def doubling_shift(dim: int) -> np.ndarray:
    """Matrix of the doubling shift ``e_k -> e_{2k}`` (1-based) at truncation.

    Columns whose image index exceeds ``dim`` are zero, so ``F.T @ F`` is a
    0/1 diagonal projector and the operator norm is exactly 1.  The result is
    not symmetric.
    """
    if dim < 2:
        raise InvalidInput("dim must be >= 2")
    F = np.zeros((dim, dim))
    ks = np.arange(1, dim // 2 + 1)
    F[2 * ks - 1, ks - 1] = 1.0
    return F


def symmetrized_shift(dim: int) -> np.ndarray:
    """``F + F^T`` for the doubling shift; symmetric, indefinite, norm < 2."""
    F = doubling_shift(dim)
    return F + F.T


def build_shift_map(dim: int, c: float = 2.0, allow_indefinite: bool = False) -> np.ndarray:
    """The self-adjoint map ``F + F^T + c I``.

    PSD for every ``c >= 2`` (the symmetrized shift has norm below 2), with
    operator norm at most ``c + 2``.  Values ``c < 2`` are for experimentation
    only and require ``allow_indefinite=True``.
    """
    if c < 2.0 and not allow_indefinite:
        raise InvalidInput("c < 2 may produce an indefinite map; pass allow_indefinite=True")
    T = symmetrized_shift(dim) + c * np.eye(dim)
    if c >= 2.0:
        lam_min = float(np.linalg.eigvalsh(T)[0])
        if lam_min < -1e-12:
            raise NotPSD(f"expected PSD map, found eigenvalue {lam_min:.3e}")
    return T


def build_pair_maps(dim: int) -> tuple:
    """The PSD pair ``I + (F + F^T)/2`` and ``I - (F + F^T)/2``.

    All entries are dyadic rationals, so the two maps sum to twice the
    identity bit-exactly.  Their spectra coincide as multisets because the
    symmetrized shift's spectrum is symmetric about zero.
    """
    half = symmetrized_shift(dim) / 2.0
    eye = np.eye(dim)
    return eye + half, eye - half


def build_map_family(dim: int, n: int = None, coeffs=None, weights=None) -> list:
    """Maps ``I + a_i (F + F^T)`` whose weighted average is the identity.

    Either give ``n`` (coefficients default to ``linspace(-1/2, 1/2, n)``,
    equally spaced and symmetric about 0) or explicit ``coeffs``.  Each
    ``|a_i|`` must be at most 1/2 so every map is PSD, and the weighted
    coefficient sum must vanish (tolerance 1e-15) so the family averages to
    the identity.
    """
    if coeffs is None:
        if n is None or n < 2:
            raise InvalidInput("need n >= 2 or explicit coeffs")
        coeffs = np.linspace(-0.5, 0.5, n)
    coeffs = np.asarray(coeffs, dtype=np.float64)
    if coeffs.ndim != 1 or coeffs.size < 2:
        raise InvalidInput("need at least two coefficients")
    if np.max(np.abs(coeffs)) > 0.5:
        raise InvalidInput("coefficients must lie in [-1/2, 1/2] to keep maps PSD")
    if weights is None:
        weights = np.full(coeffs.size, 1.0 / coeffs.size)
    weights = np.asarray(weights, dtype=np.float64)
    if abs(float(weights @ coeffs)) > 1e-15:
        raise InvalidInput("weighted coefficient sum must vanish")
    S = symmetrized_shift(dim)
    eye = np.eye(dim)
    return [eye + a * S for a in coeffs]


def build_covariance(config: TruncationConfig) -> np.ndarray:
    """Diagonal covariance that vanishes on the configured kernel pattern.

    Kept directions carry the decay law: ``r**k`` on the k-th kept index for
    geometric decay, or the explicit list.  With the default pattern and
    ``dim=8``, ``r=1/2`` this is ``diag(0, 1/2, 0, 1/4, 0, 1/8, 0, 1/16)``.
    """
    d = np.zeros(config.dim)
    kernel = set(config.kernel_pattern)
    kept = [i for i in range(1, config.dim + 1) if i not in kernel]
    if np.isscalar(config.decay):
        r = float(config.decay)
        values = [r ** k for k in range(1, len(kept) + 1)]
    else:
        values = list(config.decay)
    for idx, val in zip(kept, values):
        d[idx - 1] = val
    return np.diag(d)


def conjugate(T, cov) -> np.ndarray:
    """Conjugation ``T @ cov @ T`` of a covariance by a self-adjoint map.

    The product is symmetrized; eigenvalues below the rounding floor are
    clamped to zero only when present, so exactly-representable products pass
    through untouched.
    """
    T = np.asarray(T, dtype=np.float64)
    C = np.asarray(cov, dtype=np.float64)
    if T.shape != C.shape:
        raise DimensionMismatch(f"dimension mismatch: {T.shape} vs {C.shape}")
    P = T @ C @ T
    P = (P + P.T) / 2.0
    w = np.linalg.eigvalsh(P)
    lam_max = max(float(w[-1]), 0.0)
    if float(w[0]) < -linalg.PSD_TOL * max(1.0, lam_max):
        raise NotPSD(f"conjugation produced eigenvalue {w[0]:.3e}")
    if float(w[0]) < -_CLAMP_TOL * max(1.0, lam_max):
        dec = linalg.eig_sym(P)
        P = (dec.eigenvectors * np.clip(dec.eigenvalues, 0.0, None)) @ dec.eigenvectors.T
        P = (P + P.T) / 2.0
    return P


def kernel_report(cov, conjugated, rank_tol: float = RANK_TOL) -> dict:
    """Kernel bookkeeping for a conjugated family at truncation.

    Returns kernel dimensions and, per input, the principal angles between
    its kernel and the kernel of ``cov``.  The minimum angle being strictly
    positive is the finite shadow of the conjugated covariances becoming
    injective only in the infinite-dimensional limit.
    """
    base = linalg.kernel_basis(cov, rank_tol)
    report = {
        "kernel_dim": int(base.shape[1]),
        "kernel_dims": [],
        "min_angles": [],
    }
    for S in conjugated:
        ker = linalg.kernel_basis(S, rank_tol)
        report["kernel_dims"].append(int(ker.shape[1]))
        if base.shape[1] and ker.shape[1]:
            angles = linalg.principal_angles(ker, base)
            report["min_angles"].append(float(angles.min()))
        else:
            report["min_angles"].append(float("nan"))
    return report
