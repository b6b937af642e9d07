"""
simlab/generator.py
Synthetic functional sequences of the simulation study.
"""

import numpy as np

from src.basis.models import BasisSpec, FunctionalSample
from src.simlab.models import NoiseLaw, SimConfig

T_DEGREES_OF_FREEDOM = 4


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based Philox stream; replication r of a run uses seed base + r."""
    return np.random.Generator(np.random.Philox(seed))


def noise_scales(D: int) -> np.ndarray:
    """Standard deviations 2^{-l/2}, l = 1..D (diagonal Sigma = diag(2^{-l}))."""
    return 2.0 ** (-np.arange(1, D + 1) / 2.0)


def draw_noise(config: SimConfig, rng: np.random.Generator) -> np.ndarray:
    """Z_i with i.i.d. coordinates from G; t_4 draws are not variance-standardised."""
    shape = (config.n, config.D)
    if config.noise == NoiseLaw.STUDENT_T4:
        return rng.standard_t(T_DEGREES_OF_FREEDOM, size=shape)
    return rng.standard_normal(shape)


def segment_means(config: SimConfig) -> np.ndarray:
    """
    n x D mean matrix: segment j (0-based, z_0 = 0) carries mu_D when j is
    even and zero when j is odd.
    """
    means = np.zeros((config.n, config.D))
    mu = config.mean_vector()
    bounds = [0, *config.change_points, config.n]
    for j, (start, end) in enumerate(zip(bounds[:-1], bounds[1:])):
        if j % 2 == 0:
            means[start:end] = mu
    return means


def gen_sequence(config: SimConfig) -> FunctionalSample:
    """C_i = mean_i + Sigma^{1/2} Z_i, fully determined by config.seed."""
    rng = make_rng(config.seed)
    noise = draw_noise(config, rng) * noise_scales(config.D) * config.noise_scale
    coeffs = segment_means(config) + noise
    return FunctionalSample(coeffs=coeffs, basis=BasisSpec(D=config.D))
