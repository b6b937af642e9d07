from typing import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from src.core.exceptions import DomainError, InsufficientDataError
from src.utils.linalg_utils import frozen_array


class TimeGrid(BaseModel):
    """Ordered evaluation points inside [0, 1], shared by all observations."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    points: np.ndarray

    @field_validator("points", mode="before")
    @classmethod
    def _check_points(cls, value):
        points = frozen_array(value, ndim=1, name="time grid")
        if points.size < 2:
            raise DomainError("time grid needs at least 2 points")
        if not np.all(np.isfinite(points)):
            raise DomainError("time grid has non-finite points")
        if np.any(np.diff(points) <= 0):
            raise DomainError("time grid must be strictly increasing")
        if points[0] < 0.0 or points[-1] > 1.0:
            raise DomainError("time grid must lie inside [0, 1]")
        return points

    @property
    def size(self) -> int:
        return int(self.points.size)

    @classmethod
    def uniform(cls, m: int) -> "TimeGrid":
        """m equally spaced points from 0 to 1 inclusive."""
        return cls(points=np.linspace(0.0, 1.0, m))

    @classmethod
    def from_raw(cls, values: Sequence[float]) -> "TimeGrid":
        """
        Builds a grid from file values. Grids already inside [0, 1] are kept;
        anything else (day numbers, minutes) is mapped affinely onto [0, 1].
        """
        raw = np.asarray(values, dtype=float)
        if raw.size >= 2 and raw.min() >= 0.0 and raw.max() <= 1.0:
            return cls(points=raw)
        if raw.size < 2 or not np.all(np.isfinite(raw)):
            raise DomainError("time grid needs at least 2 finite points")
        span = raw.max() - raw.min()
        if span <= 0:
            raise DomainError("time grid must be strictly increasing")
        return cls(points=(raw - raw.min()) / span)


class BasisSpec(BaseModel):
    """Fourier basis of D functions: constant plus (D-1)/2 cos/sin pairs."""

    model_config = ConfigDict(frozen=True)

    D: int

    @field_validator("D")
    @classmethod
    def _check_odd(cls, value: int) -> int:
        if value < 1 or value % 2 == 0:
            raise DomainError(f"basis size D must be a positive odd integer, got {value}")
        return value

    @property
    def n_frequencies(self) -> int:
        return (self.D - 1) // 2


class FunctionalSample(BaseModel):
    """
    n functional observations stored as basis coefficients (rows C_i).
    The carrier passed between every module.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    coeffs: np.ndarray
    basis: BasisSpec

    @field_validator("coeffs", mode="before")
    @classmethod
    def _check_coeffs(cls, value):
        coeffs = frozen_array(value, ndim=2, name="coefficients")
        if coeffs.shape[0] < 2:
            raise InsufficientDataError(
                f"a functional sample needs n >= 2 observations, got {coeffs.shape[0]}"
            )
        if not np.all(np.isfinite(coeffs)):
            raise DomainError("coefficients contain non-finite values")
        return coeffs

    @model_validator(mode="after")
    def _check_width(self) -> "FunctionalSample":
        if self.coeffs.shape[1] != self.basis.D:
            raise DomainError(
                f"coefficient matrix has {self.coeffs.shape[1]} columns, basis has D={self.basis.D}"
            )
        return self

    @property
    def n(self) -> int:
        return int(self.coeffs.shape[0])

    @property
    def D(self) -> int:
        return self.basis.D

    @classmethod
    def from_coeffs(cls, coeffs) -> "FunctionalSample":
        """Wraps a coefficient matrix, reading D from its width."""
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.ndim != 2:
            raise DomainError(f"coefficients must be 2-dimensional, got shape {coeffs.shape}")
        return cls(coeffs=coeffs, basis=BasisSpec(D=coeffs.shape[1]))

    def take(self, rows) -> "FunctionalSample":
        """Sub-sample keeping the given row indices, in the given order."""
        return FunctionalSample(coeffs=self.coeffs[rows], basis=self.basis)
