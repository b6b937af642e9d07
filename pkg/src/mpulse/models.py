import math
from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

import src.core.constants as constants
from src.core.exceptions import DomainError
from src.utils.linalg_utils import frozen_array


class MpulseParams(BaseModel):
    """Window alpha_n, ridge c_tilde and interval threshold tau2."""

    model_config = ConfigDict(frozen=True)

    alpha_n: int
    c_tilde: float
    tau2: float = constants.TAU2

    @field_validator("alpha_n")
    @classmethod
    def _check_alpha(cls, value: int) -> int:
        if value < 1:
            raise DomainError(f"alpha_n must be a positive integer, got {value}")
        return value

    @field_validator("c_tilde")
    @classmethod
    def _check_ridge(cls, value: float) -> float:
        if not value > 0.0:
            raise DomainError(f"c_tilde must be positive, got {value}")
        return value

    @field_validator("tau2")
    @classmethod
    def _check_tau2(cls, value: float) -> float:
        if not 0.0 < value < 1.0:
            raise DomainError(f"tau2 must lie in (0, 1), got {value}")
        return value

    @property
    def lag(self) -> int:
        """floor(1.5 * alpha_n), the look-ahead of the ridge ratio."""
        return int(math.floor(constants.LAG_FACTOR * self.alpha_n))

    @property
    def shift(self) -> int:
        return constants.LOCATION_SHIFT * self.alpha_n

    @staticmethod
    def default_alpha(n: int) -> int:
        # round before flooring so exact powers are not lost to 0.999...
        return int(math.floor(round(n**constants.ALPHA_EXPONENT, 9)))

    @staticmethod
    def default_c_tilde(n: int, alpha_n: int) -> float:
        """c_tilde = 0.25 sqrt(log n / alpha_n), natural log."""
        return constants.C_TILDE_SCALE * math.sqrt(math.log(n) / alpha_n)

    @classmethod
    def for_sample_size(
        cls,
        n: int,
        alpha_n: int | None = None,
        c_tilde: float | None = None,
        tau2: float | None = None,
    ) -> "MpulseParams":
        if n < 2:
            raise DomainError(f"MPULSE defaults need n >= 2, got {n}")
        alpha = cls.default_alpha(n) if alpha_n is None else alpha_n
        if alpha < 1:
            raise DomainError(f"alpha_n must be a positive integer, got {alpha}")
        return cls(
            alpha_n=alpha,
            c_tilde=cls.default_c_tilde(n, alpha) if c_tilde is None else c_tilde,
            tau2=constants.TAU2 if tau2 is None else tau2,
        )

    def scan_length(self, n: int) -> int:
        """Number of scan positions i = 1 .. n - 3 alpha + 2 - lag (may be <= 0)."""
        return n - 3 * self.alpha_n + 2 - self.lag


class MpulseResult(BaseModel):
    """
    S_n over the scan positions (s_series[i - 1] is S_n(i)), the runs below
    tau2 and the estimated change points, all 1-based.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    s_series: np.ndarray
    intervals: List[Tuple[int, int]]
    locations: List[int]
    k_hat: int
    q_hat: int = 0

    @field_validator("s_series", mode="before")
    @classmethod
    def _check_series(cls, value):
        return frozen_array(value, ndim=1, name="S_n series")

    @model_validator(mode="after")
    def _check_consistency(self) -> "MpulseResult":
        previous_end = 0
        for start, end in self.intervals:
            if start > end or start <= previous_end:
                raise DomainError(f"intervals must be ordered and disjoint: {self.intervals}")
            previous_end = end
        if any(b <= a for a, b in zip(self.locations, self.locations[1:])):
            raise DomainError("change-point locations must be strictly increasing")
        if self.k_hat != len(self.locations):
            raise DomainError(
                f"k_hat={self.k_hat} does not match {len(self.locations)} locations"
            )
        return self

    @classmethod
    def empty(cls, q_hat: int = 0) -> "MpulseResult":
        return cls(s_series=np.empty(0), intervals=[], locations=[], k_hat=0, q_hat=q_hat)

    def to_json_dict(self) -> dict:
        return {
            "q_hat": self.q_hat,
            "k_hat": self.k_hat,
            "locations": list(self.locations),
            "intervals": [list(pair) for pair in self.intervals],
        }
