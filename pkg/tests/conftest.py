import numpy as np
import pytest

from src.basis.models import BasisSpec, FunctionalSample
from src.simlab.generator import gen_sequence
from src.simlab.models import SimConfig


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def step_sequence():
    """Noiseless 0 -> 1 step: f_j = 0 for j <= z, 1 afterwards (1-based)."""

    def make(n: int = 200, z: int = 100) -> np.ndarray:
        values = np.zeros(n)
        values[z:] = 1.0
        return values

    return make


@pytest.fixture
def piecewise_sample():
    """Noiseless coefficient sequence with the given segment means."""

    def make(means, lengths) -> FunctionalSample:
        rows = [np.tile(np.asarray(mean, dtype=float), (length, 1)) for mean, length in zip(means, lengths)]
        coeffs = np.vstack(rows)
        return FunctionalSample(coeffs=coeffs, basis=BasisSpec(D=coeffs.shape[1]))

    return make


@pytest.fixture
def single_change_config():
    return SimConfig(n=200, change_points=[100], u=0.1, D_c=20, seed=7)


@pytest.fixture
def two_change_config():
    return SimConfig(n=300, change_points=[100, 200], u=0.1, D_c=20, seed=11)


@pytest.fixture
def null_sample():
    return gen_sequence(SimConfig(n=200, seed=3))
