"""Bures-Wasserstein distances and optimal transport maps on covariances.

Small worked cases: the 1-D distance against the quantile coupling, the
commuting (simultaneously diagonal) reduction, orthogonal supports, and
transport maps including a case where no map exists because the source
kernel is not contained in the target kernel.
"""

import numpy as np

from bwbary import (
    KernelNotIncluded,
    TruncationConfig,
    build_covariance,
    build_pair_maps,
    bw_distance,
    bw_distance_sq,
    conjugate,
    optimal_map,
)


def main():
    # 1-D: N(0, 4) to N(0, 1) has squared distance (2 - 1)^2 = 1
    print("d^2(N(0,4), N(0,1)) =", bw_distance_sq(np.array([[4.0]]), np.array([[1.0]])))

    # commuting case: sum of squared root-eigenvalue gaps
    a = np.diag([1.0, 4.0, 9.0])
    b = np.diag([4.0, 1.0, 0.0])
    print("commuting d^2      =", bw_distance_sq(a, b),
          " (expected", float(np.sum((np.sqrt(np.diag(a)) - np.sqrt(np.diag(b))) ** 2)),
          ")")

    # orthogonal one-dimensional supports: the cross term vanishes
    print("orthogonal lines   =", bw_distance_sq(np.diag([1.0, 0.0]), np.diag([0.0, 1.0])))

    # a transport map between positive-definite covariances
    rng = np.random.default_rng(1)
    G = rng.standard_normal((4, 4))
    src = G @ G.T + 0.5 * np.eye(4)
    H = rng.standard_normal((4, 4))
    dst = H @ H.T + 0.5 * np.eye(4)
    M = optimal_map(src, dst)
    print("\npushforward error ||M src M - dst||_F =",
          np.linalg.norm(M @ src @ M - dst))
    print("distance", bw_distance(src, dst))

    # conjugations move kernels: no map exists from the singular base to its
    # conjugation at truncation
    dim = 16
    cov = build_covariance(TruncationConfig(dim=dim))
    t1, _ = build_pair_maps(dim)
    s1 = conjugate(t1, cov)
    try:
        optimal_map(cov, s1)
    except KernelNotIncluded as exc:
        print(f"\nmap from base to conjugation at truncation: {exc}")
    # while a positive-definite source reaches its conjugation exactly,
    # and the optimal map IS the conjugator (PSD pushforwards are unique)
    pd = cov + 0.1 * np.eye(dim)
    M = optimal_map(pd, conjugate(t1, pd))
    print("PD source: ||optimal map - conjugator||_F =", np.linalg.norm(M - t1))


if __name__ == "__main__":
    main()
