"""Distance and transport map against independent 1-D and structural oracles."""

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.stats import norm

from bwbary import (
    DimensionMismatch,
    KernelNotIncluded,
    TruncationConfig,
    build_covariance,
    build_pair_maps,
    bw_distance,
    bw_distance_sq,
    conjugate,
    optimal_map,
)
from bwbary.linalg import range_projector


def random_psd(rng, n, rank=None):
    G = rng.standard_normal((n, rank or n))
    return G @ G.T


def quantile_coupling_w2sq(sigma1, sigma2):
    """1-D squared W2 between N(0, s1^2), N(0, s2^2) by quantile quadrature."""
    val, _ = quad(lambda u: (sigma1 * norm.ppf(u) - sigma2 * norm.ppf(u)) ** 2,
                  1e-12, 1 - 1e-12)
    return val


class TestDistance:
    def test_zero_on_identical(self):
        cov = build_covariance(TruncationConfig(dim=8))
        assert bw_distance_sq(cov, cov) <= 1e-12

    def test_one_dimensional_vs_quantile_oracle(self):
        # oracle: quadrature over the quantile coupling gives (s1 - s2)^2
        oracle = quantile_coupling_w2sq(2.0, 1.0)
        assert oracle == pytest.approx(1.0, abs=1e-9)
        assert bw_distance_sq(np.array([[4.0]]), np.array([[1.0]])) == pytest.approx(
            oracle, abs=1e-10
        )

    def test_orthogonal_supports(self):
        # no mass can be shared, the cross term vanishes: d^2 = trA + trB
        A = np.diag([1.0, 0.0])
        B = np.diag([0.0, 1.0])
        assert bw_distance_sq(A, B) == pytest.approx(2.0, abs=1e-12)

    def test_symmetry(self):
        rng = np.random.default_rng(10)
        for _ in range(25):
            n = int(rng.integers(1, 7))
            A = random_psd(rng, n)
            B = random_psd(rng, n, rank=max(1, n - 1))
            tol = 1e-9 * max(1.0, np.trace(A) + np.trace(B))
            assert abs(bw_distance_sq(A, B) - bw_distance_sq(B, A)) <= tol

    def test_commuting_reduction(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            n = int(rng.integers(2, 8))
            a = rng.uniform(0.0, 4.0, n)
            b = rng.uniform(0.0, 4.0, n)
            expected = float(np.sum((np.sqrt(a) - np.sqrt(b)) ** 2))
            assert bw_distance_sq(np.diag(a), np.diag(b)) == pytest.approx(
                expected, abs=1e-10
            )

    def test_triangle_inequality(self):
        rng = np.random.default_rng(12)
        for _ in range(50):
            n = int(rng.integers(2, 6))
            A, B, C = (random_psd(rng, n) for _ in range(3))
            assert bw_distance(A, C) <= bw_distance(A, B) + bw_distance(B, C) + 1e-7

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            bw_distance_sq(np.eye(2), np.eye(3))


class TestOptimalMap:
    def test_identity_case_pd(self):
        A = np.array([[2.0, 0.5], [0.5, 1.0]])
        np.testing.assert_allclose(optimal_map(A, A), np.eye(2), atol=1e-10)

    def test_identity_case_singular_gives_projector(self):
        A = np.diag([1.0, 0.0])
        np.testing.assert_allclose(optimal_map(A, A), range_projector(A), atol=1e-10)

    def test_one_dimensional_is_sigma_ratio(self):
        # quantile coupling maps x -> (s2/s1) x, so the matrix is s2/s1
        M = optimal_map(np.array([[1.0]]), np.array([[4.0]]))
        assert M[0, 0] == pytest.approx(2.0, abs=1e-12)

    def test_pushforward_on_conjugated_target(self):
        # positive-definite source: target built by conjugation must be reached
        dim = 16
        t1, _ = build_pair_maps(dim)
        rng = np.random.default_rng(13)
        base = random_psd(rng, dim) + 0.1 * np.eye(dim)
        target = conjugate(t1, base)
        M = optimal_map(base, target)
        err = np.linalg.norm(M @ base @ M - target) / max(1.0, np.linalg.norm(target))
        assert err <= 1e-7
        # a PSD pushforward of a PD source is unique, so the map recovers the
        # PSD conjugator even though the two do not commute
        np.testing.assert_allclose(M, t1, atol=1e-10)

    def test_pushforward_random(self):
        rng = np.random.default_rng(14)
        for _ in range(20):
            n = int(rng.integers(2, 7))
            A = random_psd(rng, n)
            B = random_psd(rng, n)
            M = optimal_map(A, B)
            err = np.linalg.norm(M @ A @ M - B) / max(1.0, np.linalg.norm(B))
            assert err <= 1e-7

    def test_pushforward_singular_with_kernel_inclusion(self):
        rng = np.random.default_rng(15)
        for _ in range(10):
            A = random_psd(rng, 6, rank=3)
            R = range_projector(A)
            B = R @ random_psd(rng, 6) @ R  # range(B) inside range(A)
            M = optimal_map(A, B)
            err = np.linalg.norm(M @ A @ M - B) / max(1.0, np.linalg.norm(B))
            assert err <= 1e-7

    def test_distance_map_consistency(self):
        # the coupling realized by the map attains the distance:
        # d^2(A, B) = tr((I - M) A (I - M)) for the optimal M
        rng = np.random.default_rng(16)
        for _ in range(10):
            n = int(rng.integers(2, 6))
            A = random_psd(rng, n) + 0.05 * np.eye(n)
            B = random_psd(rng, n) + 0.05 * np.eye(n)
            M = optimal_map(A, B)
            diff = np.eye(n) - M
            coupled = float(np.trace(diff @ A @ diff))
            assert bw_distance_sq(A, B) == pytest.approx(coupled, abs=1e-9)

    def test_kernel_not_included_raises(self):
        with pytest.raises(KernelNotIncluded):
            optimal_map(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))

    def test_kernel_tilt_of_conjugation_detected(self):
        # conjugating tilts the kernel away, so no map exists from the
        # singular base to its conjugation at truncation
        dim = 16
        cov = build_covariance(TruncationConfig(dim=dim))
        t1, _ = build_pair_maps(dim)
        with pytest.raises(KernelNotIncluded):
            optimal_map(cov, conjugate(t1, cov))
