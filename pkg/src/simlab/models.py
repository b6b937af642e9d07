from enum import Enum
from typing import List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

import src.core.constants as constants
from src.core.exceptions import DomainError


class NoiseLaw(str, Enum):
    GAUSSIAN = "gaussian"
    STUDENT_T4 = "student_t4"


class SimConfig(BaseModel):
    """
    Data-generating process of the simulation study: segments alternate
    between mean mu_D = (u, ..., u [D_c times], 0, ..., 0) and zero mean,
    noise coordinate l scaled by 2^{-l/2}.
    """

    model_config = ConfigDict(frozen=True)

    n: int
    D: int = constants.BASIS_SIZE
    change_points: List[int] = Field(default_factory=list)
    u: float = 0.0
    D_c: int = 1
    noise: NoiseLaw = NoiseLaw.GAUSSIAN
    seed: int = constants.BASE_SEED
    noise_scale: float = 1.0

    @field_validator("D")
    @classmethod
    def _check_basis(cls, value: int) -> int:
        if value < 1 or value % 2 == 0:
            raise DomainError(f"basis size D must be a positive odd integer, got {value}")
        return value

    @field_validator("seed")
    @classmethod
    def _check_seed(cls, value: int) -> int:
        if not 0 <= value < 2**64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {value}")
        return value

    @field_validator("noise_scale")
    @classmethod
    def _check_scale(cls, value: float) -> float:
        if value < 0:
            raise DomainError(f"noise_scale must be non-negative, got {value}")
        return value

    @model_validator(mode="after")
    def _check_design(self) -> "SimConfig":
        if self.n < 2:
            raise DomainError(f"n must be at least 2, got {self.n}")
        if not 1 <= self.D_c <= self.D:
            raise DomainError(f"D_c must lie in [1, {self.D}], got {self.D_c}")
        previous = 0
        for z in self.change_points:
            if not previous < z < self.n:
                raise DomainError(
                    f"change points must satisfy 0 < z_1 < ... < z_K < n, got {self.change_points}"
                )
            previous = z
        return self

    @property
    def K(self) -> int:
        return len(self.change_points)

    def mean_vector(self) -> np.ndarray:
        mu = np.zeros(self.D)
        mu[: self.D_c] = self.u
        return mu

    def with_seed(self, seed: int) -> "SimConfig":
        return self.model_copy(update={"seed": seed})


class GroundTruth(BaseModel):
    """True change points and the segmentation of 1..n they induce."""

    model_config = ConfigDict(frozen=True)

    n: int
    change_points: List[int] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_points(self) -> "GroundTruth":
        previous = 0
        for z in self.change_points:
            if not previous < z <= self.n:
                raise DomainError(
                    f"change points must be strictly increasing inside 1..{self.n}"
                )
            previous = z
        return self

    @classmethod
    def from_config(cls, config: SimConfig) -> "GroundTruth":
        return cls(n=config.n, change_points=list(config.change_points))

    @property
    def segmentation(self) -> List[Tuple[int, int]]:
        """Contiguous 1-based blocks (start, end) covering 1..n."""
        bounds = [0, *[z for z in self.change_points if z < self.n], self.n]
        return [(a + 1, b) for a, b in zip(bounds[:-1], bounds[1:])]

    def labels(self) -> np.ndarray:
        """Segment index of every observation 1..n."""
        t = np.arange(1, self.n + 1)
        return np.searchsorted(np.asarray(self.change_points, dtype=int), t, side="left")


class Scenario(BaseModel):
    """One row of a simulation table."""

    model_config = ConfigDict(frozen=True)

    table: int
    kind: Literal["test", "estimate"]
    config: SimConfig
    method: Literal["ads", "fpca"] = "ads"
    note: Optional[str] = None


class EstimationSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    khat_mean: float
    khat_rmse: float
    rand_index: float
