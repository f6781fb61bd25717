"""Random average-identity maps and the Monte-Carlo population experiment.

A coefficient ``a`` with a symmetric law on [-1/2, 1/2] defines the random
PSD map ``T = I + a (F + F^T)`` with mean identity, so the singular
covariance is the barycentre of the *population* of conjugations ``T C T``.
An empirical family of n draws satisfies the barycentre certificate only up
to the deviation of the empirical coefficient mean from zero, which shrinks
like ``1/sqrt(12 n)``.

Randomness comes from the counter-based Philox engine.  Draw i uses its own
generator ``Philox(SeedSequence(seed).spawn(n)[i])``, so results are
bit-reproducible given the 64-bit seed and independent of evaluation order.
The coefficient draw per law: uniform -> ``g.uniform(-0.5, 0.5)``; two-point
-> ``0.5 if g.integers(2) else -0.5``; triangular -> ``g.triangular(-0.5, 0.0,
0.5)``.
"""

from dataclasses import dataclass, field

import numpy as np

from .barycentre import (
    BarycentreResult,
    SolverSettings,
    barycentre_fixed_point,
    problem,
    verify_barycentre_certificate,
)
from .construct import TruncationConfig, build_covariance, conjugate, symmetrized_shift
from .errors import InvalidInput

LAWS = ("uniform", "two-point", "triangular")


@dataclass(frozen=True)
class RandomMapLaw:
    """Symmetric law on [-1/2, 1/2] for the map coefficient.

    ``excludes_zero`` redraws the (measure-zero for the continuous laws)
    event ``a == 0.0`` so that every sampled map differs from the identity.
    """

    name: str = "uniform"
    excludes_zero: bool = False

    def __post_init__(self):
        if self.name not in LAWS:
            raise InvalidInput(f"law must be one of {LAWS}")

    def draw(self, generator: np.random.Generator) -> float:
        while True:
            if self.name == "uniform":
                a = float(generator.uniform(-0.5, 0.5))
            elif self.name == "two-point":
                a = 0.5 if int(generator.integers(2)) else -0.5
            else:
                a = float(generator.triangular(-0.5, 0.0, 0.5))
            if not (self.excludes_zero and a == 0.0):
                return a


def _stream(seed_seq: np.random.SeedSequence) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed_seq))


def draw_coefficients(law: RandomMapLaw, seed: int, n: int, antithetic: bool = False) -> np.ndarray:
    """The n coefficients of the experiment, one independent stream per draw.

    With ``antithetic=True`` (n even) only n/2 draws are made and each is
    paired with its negation, forcing the empirical mean to vanish exactly.
    """
    if antithetic:
        if n % 2:
            raise InvalidInput("antithetic pairing requires an even n")
        children = np.random.SeedSequence(seed).spawn(n // 2)
        half = [law.draw(_stream(c)) for c in children]
        return np.array([x for a in half for x in (a, -a)])
    children = np.random.SeedSequence(seed).spawn(n)
    return np.array([law.draw(_stream(c)) for c in children])


def random_map_sample(law: RandomMapLaw, seed: int, dim: int) -> np.ndarray:
    """One draw of the random map ``I + a (F + F^T)``; deterministic given seed."""
    a = law.draw(_stream(np.random.SeedSequence(seed)))
    return np.eye(dim) + a * symmetrized_shift(dim)


@dataclass(frozen=True)
class McReport:
    """Outcome of :func:`population_mc_experiment`.

    ``mean_deviation`` is ``||mean_i T_i - I||_F``; ``certificate_residual``
    is the barycentre certificate of the base covariance against the
    empirical family; ``solver`` is the fixed-point run on the same family.
    """

    dim: int
    n: int
    seed: int
    law: RandomMapLaw
    antithetic: bool
    coefficients: np.ndarray = field(repr=False)
    mean_deviation: float
    certificate_residual: float
    solver: BarycentreResult = field(repr=False)


def population_mc_experiment(
    config: TruncationConfig,
    law: RandomMapLaw,
    n: int,
    seed: int,
    settings: SolverSettings | None = None,
    antithetic: bool = False,
) -> McReport:
    """Monte-Carlo check that the base covariance is the population barycentre.

    Draws n random maps, conjugates the configured covariance by each, and
    reports (i) how far the empirical map average is from the identity,
    (ii) the barycentre certificate residual of the base covariance against
    the empirical family, and (iii) the fixed-point solver's output on the
    ridge-regularized empirical problem.

    Parameters
    ----------
    config : TruncationConfig
    law : RandomMapLaw
    n : int
        Number of draws, at least 2.
    seed : int
        64-bit seed for the Philox streams.
    settings : SolverSettings, optional
        Defaults to ``SolverSettings(ridge=1e-6)`` (the empirical barycentre
        is near-singular, so a vanishing ridge schedule is appropriate).
    antithetic : bool
        Pair each draw with its negation (n must be even).
    """
    if n < 2:
        raise InvalidInput("need n >= 2 draws")
    base = build_covariance(config)
    shift = symmetrized_shift(config.dim)
    eye = np.eye(config.dim)

    coeffs = draw_coefficients(law, seed, n, antithetic)
    maps = [eye + a * shift for a in coeffs]
    inputs = [conjugate(T, base) for T in maps]

    mean_map = sum(maps) / n
    mean_deviation = float(np.linalg.norm(mean_map - eye))

    if settings is None:
        settings = SolverSettings(ridge=1e-6)
    prob = problem(inputs, settings=settings)
    residual = verify_barycentre_certificate(base, prob)
    solver = barycentre_fixed_point(prob)

    return McReport(
        dim=config.dim,
        n=n,
        seed=seed,
        law=law,
        antithetic=antithetic,
        coefficients=coeffs,
        mean_deviation=mean_deviation,
        certificate_residual=residual,
        solver=solver,
    )
