import math
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

import src.core.constants as constants
from src.core.exceptions import DomainError
from src.utils.linalg_utils import frozen_array


class TrrParams(BaseModel):
    """Thresholding ridge ratio tuning: threshold tau1 and ridge c_n."""

    model_config = ConfigDict(frozen=True)

    tau1: float = constants.TAU1
    c_n: float

    @field_validator("tau1")
    @classmethod
    def _check_tau1(cls, value: float) -> float:
        if not 0.0 < value < 1.0:
            raise DomainError(f"tau1 must lie in (0, 1), got {value}")
        return value

    @field_validator("c_n")
    @classmethod
    def _check_ridge(cls, value: float) -> float:
        if not value > 0.0:
            raise DomainError(f"ridge c_n must be positive, got {value}")
        return value

    @staticmethod
    def default_ridge(n: int) -> float:
        """c_n = 0.5 log(log n) / sqrt(n)."""
        if n < 3:
            raise DomainError(f"default ridge needs n >= 3, got {n}")
        return 0.5 * math.log(math.log(n)) / math.sqrt(n)

    @classmethod
    def for_sample_size(
        cls, n: int, tau1: float | None = None, c_n: float | None = None
    ) -> "TrrParams":
        return cls(
            tau1=constants.TAU1 if tau1 is None else tau1,
            c_n=cls.default_ridge(n) if c_n is None else c_n,
        )


class AdsModel(BaseModel):
    """
    Eigenvalues and orthonormal directions of the reduction, the selected
    dimension and the reduced sequence (row i holds f_hat(Y_i)). For ADS the
    eigenvalues are standardised by the pooled covariance; for FPCA they are
    the plain covariance eigenvalues.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    q_hat: int
    reduced: np.ndarray
    method: Literal["ads", "fpca"] = "ads"

    @field_validator("eigenvalues", mode="before")
    @classmethod
    def _check_eigenvalues(cls, value):
        values = frozen_array(value, ndim=1, name="eigenvalues")
        if np.any(np.diff(values) > 0):
            raise DomainError("eigenvalues must be sorted in descending order")
        return values

    @field_validator("eigenvectors", mode="before")
    @classmethod
    def _check_eigenvectors(cls, value):
        vectors = frozen_array(value, ndim=2, name="eigenvectors")
        gram = vectors.T @ vectors
        if not np.allclose(gram, np.eye(vectors.shape[1]), atol=1e-8, rtol=0.0):
            raise DomainError("eigenvectors are not orthonormal")
        return vectors

    @field_validator("reduced", mode="before")
    @classmethod
    def _check_reduced(cls, value):
        return frozen_array(value, ndim=2, name="reduced data")

    @model_validator(mode="after")
    def _check_shapes(self) -> "AdsModel":
        D = self.eigenvalues.size
        if self.eigenvectors.shape != (D, D):
            raise DomainError(
                f"eigenvectors have shape {self.eigenvectors.shape}, expected ({D}, {D})"
            )
        if not 0 <= self.q_hat <= D:
            raise DomainError(f"q_hat must lie in [0, {D}], got {self.q_hat}")
        if self.reduced.shape[1] != self.q_hat:
            raise DomainError(
                f"reduced data has {self.reduced.shape[1]} columns, q_hat is {self.q_hat}"
            )
        return self

    @property
    def has_signal(self) -> bool:
        return self.q_hat > 0

    @property
    def basis_vectors(self) -> np.ndarray:
        """The q_hat leading eigenvectors B_1..B_q as columns."""
        return self.eigenvectors[:, : self.q_hat]

    def to_json_dict(self) -> dict:
        return {
            "method": self.method,
            "eigenvalues": self.eigenvalues.tolist(),
            "q_hat": self.q_hat,
            "eigenvectors": self.eigenvectors.tolist(),
            "reduced": self.reduced.tolist(),
        }
