"""Random map draws and the Monte-Carlo population experiment."""

import numpy as np
import pytest

from bwbary import (
    InvalidInput,
    RandomMapLaw,
    TruncationConfig,
    build_covariance,
    build_pair_maps,
    conjugate,
    draw_coefficients,
    population_mc_experiment,
    problem,
    random_map_sample,
    symmetrized_shift,
    verify_barycentre_certificate,
)


class TestLawsAndDraws:
    def test_bad_law_name(self):
        with pytest.raises(InvalidInput):
            RandomMapLaw("gaussian")

    def test_draws_are_deterministic(self):
        law = RandomMapLaw("uniform")
        a = draw_coefficients(law, seed=123, n=50)
        b = draw_coefficients(law, seed=123, n=50)
        np.testing.assert_array_equal(a, b)
        c = draw_coefficients(law, seed=124, n=50)
        assert not np.array_equal(a, c)

    def test_supports(self):
        for name in ("uniform", "triangular"):
            a = draw_coefficients(RandomMapLaw(name), seed=7, n=500)
            assert np.all(np.abs(a) <= 0.5)
        a = draw_coefficients(RandomMapLaw("two-point"), seed=7, n=500)
        assert set(np.unique(a)) == {-0.5, 0.5}

    def test_antithetic_mean_is_exactly_zero(self):
        a = draw_coefficients(RandomMapLaw("uniform"), seed=9, n=100, antithetic=True)
        assert np.sum(a) == 0.0
        np.testing.assert_array_equal(a[0::2], -a[1::2])

    def test_antithetic_needs_even_n(self):
        with pytest.raises(InvalidInput):
            draw_coefficients(RandomMapLaw("uniform"), seed=9, n=5, antithetic=True)

    def test_sampled_map_is_psd_average_identity_family(self):
        T = random_map_sample(RandomMapLaw("uniform"), seed=11, dim=16)
        assert np.linalg.eigvalsh(T)[0] >= -1e-12
        # the matching mirrored draw restores the identity on average
        a = (T - np.eye(16))[1, 0]
        mirrored = np.eye(16) - a * symmetrized_shift(16)
        np.testing.assert_allclose((T + mirrored) / 2, np.eye(16), atol=1e-15)

    def test_two_point_draw_hits_pair_map(self):
        # find one positive draw; it must equal the first of the PSD pair
        law = RandomMapLaw("two-point")
        for seed in range(20):
            T = random_map_sample(law, seed=seed, dim=8)
            if T[1, 0] > 0:
                np.testing.assert_array_equal(T, build_pair_maps(8)[0])
                break
        else:
            pytest.fail("no positive two-point draw in 20 seeds")

    def test_sample_mean_clt_bound(self):
        # var(a) = 1/12 for the uniform law; 3-sigma entrywise bound on the
        # nonzero diagonals of mean(T) - I at n = 10^4
        n = 10_000
        a = draw_coefficients(RandomMapLaw("uniform"), seed=2024, n=n)
        abar = float(np.mean(a))
        assert abs(abar) <= 3.0 * (1.0 / np.sqrt(12.0)) / np.sqrt(n)


class TestPopulationExperiment:
    def test_needs_two_draws(self):
        config = TruncationConfig(dim=8)
        with pytest.raises(InvalidInput):
            population_mc_experiment(config, RandomMapLaw("uniform"), n=1, seed=0)

    def test_antithetic_two_point_reduces_to_deterministic_pair(self):
        dim = 16
        config = TruncationConfig(dim=dim)
        report = population_mc_experiment(
            config, RandomMapLaw("two-point"), n=2, seed=3, antithetic=True
        )
        assert report.mean_deviation == 0.0
        assert report.certificate_residual <= 1e-9
        cov = build_covariance(config)
        t1, t2 = build_pair_maps(dim)
        expected = verify_barycentre_certificate(
            cov, problem([conjugate(t1, cov), conjugate(t2, cov)])
        )
        assert report.certificate_residual == pytest.approx(expected, abs=1e-12)

    def test_uniform_experiment_report(self):
        config = TruncationConfig(dim=16)
        report = population_mc_experiment(config, RandomMapLaw("uniform"), n=64, seed=5)
        assert report.n == 64 and report.dim == 16
        assert report.coefficients.shape == (64,)
        # residual tracks the empirical mean deviation scale
        assert report.certificate_residual <= report.mean_deviation
        assert report.solver.converged
        assert np.all(np.isfinite(report.solver.barycentre))

    def test_experiment_is_reproducible(self):
        config = TruncationConfig(dim=8)
        r1 = population_mc_experiment(config, RandomMapLaw("triangular"), n=16, seed=42)
        r2 = population_mc_experiment(config, RandomMapLaw("triangular"), n=16, seed=42)
        np.testing.assert_array_equal(r1.coefficients, r2.coefficients)
        assert r1.certificate_residual == r2.certificate_residual
        assert r1.mean_deviation == r2.mean_deviation
