import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator
from scipy import stats

from src.basis.models import FunctionalSample
from src.core.exceptions import DomainError
from src.utils.linalg_utils import frozen_array


class SplitPair(BaseModel):
    """Odd-indexed (Y_1, Y_3, ...) and even-indexed (Y_2, Y_4, ...) halves."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    first: FunctionalSample
    second: FunctionalSample

    @model_validator(mode="after")
    def _check_sizes(self) -> "SplitPair":
        if self.first.n - self.second.n not in (0, 1):
            raise DomainError(
                f"halves of sizes {self.first.n} and {self.second.n} do not come from an odd/even split"
            )
        if self.first.D != self.second.D:
            raise DomainError("halves use different bases")
        return self

    def interleave(self) -> FunctionalSample:
        """Restores the original order of the observations."""
        n = self.first.n + self.second.n
        coeffs = np.empty((n, self.first.D))
        coeffs[0::2] = self.first.coeffs
        coeffs[1::2] = self.second.coeffs
        return FunctionalSample(coeffs=coeffs, basis=self.first.basis)


class TestResult(BaseModel):
    """Outcome of the ADS existence test at a given level."""

    __test__ = False  # not a pytest class

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    statistic: float
    direction: np.ndarray
    p_value: float
    reject: bool
    level: float

    @field_validator("direction", mode="before")
    @classmethod
    def _check_direction(cls, value):
        return frozen_array(value, ndim=1, name="direction")

    @field_validator("level")
    @classmethod
    def _check_level(cls, value: float) -> float:
        if not 0.0 < value < 1.0:
            raise DomainError(f"level must lie in (0, 1), got {value}")
        return value

    @field_validator("p_value")
    @classmethod
    def _check_p_value(cls, value: float) -> float:
        if not 0.0 <= value <= 1.0:
            raise DomainError(f"p-value must lie in [0, 1], got {value}")
        return value

    @classmethod
    def from_statistic(
        cls, statistic: float, direction: np.ndarray, level: float
    ) -> "TestResult":
        """Two-sided normal reference: p = 2(1 - Phi(|T|)), reject iff |T| > z_{level/2}."""
        if not 0.0 < level < 1.0:
            raise DomainError(f"level must lie in (0, 1), got {level}")
        p_value = float(2.0 * stats.norm.sf(abs(statistic)))
        critical = float(stats.norm.isf(level / 2.0))
        return cls(
            statistic=float(statistic),
            direction=direction,
            p_value=min(p_value, 1.0),
            reject=bool(abs(statistic) > critical),
            level=level,
        )

    def to_json_dict(self) -> dict:
        return {
            "statistic": self.statistic,
            "p_value": self.p_value,
            "reject": self.reject,
            "level": self.level,
            "direction": self.direction.tolist(),
        }
