"""
cptest/splitting.py
Odd/even data splitting and the per-half A / Q matrices.
"""

from typing import Tuple

import numpy as np

import src.core.constants as constants
from src.ads.target_matrix import centered_covariance, difference_covariance
from src.basis.models import FunctionalSample
from src.cptest.models import SplitPair
from src.core.exceptions import InsufficientDataError


def split(sample: FunctionalSample, min_size: int = constants.MIN_TEST_SIZE) -> SplitPair:
    """
    first = Y_1, Y_3, ...; second = Y_2, Y_4, ...
    For odd n the first half holds the extra observation.
    """
    if sample.n < min_size:
        raise InsufficientDataError(
            f"data splitting needs n >= {min_size}, got {sample.n}"
        )
    return SplitPair(
        first=sample.take(np.arange(0, sample.n, 2)),
        second=sample.take(np.arange(1, sample.n, 2)),
    )


def half_matrices(half: FunctionalSample) -> Tuple[np.ndarray, np.ndarray]:
    """
    A and Q of one half, with T = |half|:
      Q = (1/2T) sum (C_{i+1} - C_i)(C_{i+1} - C_i)^T  (consecutive rows of the half)
      A = (1/T) sum (C_i - C_bar)(C_i - C_bar)^T - Q
    The common 1/T prefactor cancels in T_2n.
    """
    if half.n < constants.MIN_HALF_SIZE:
        raise InsufficientDataError(
            f"each half needs at least {constants.MIN_HALF_SIZE} observations, got {half.n}"
        )
    Q = difference_covariance(half.coeffs)
    A = centered_covariance(half.coeffs) - Q
    return (A + A.T) / 2.0, Q
