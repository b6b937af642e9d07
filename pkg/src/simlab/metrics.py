"""
simlab/metrics.py
Evaluation metrics of the simulation tables.
"""

from typing import Sequence, Tuple

import numpy as np
from sklearn.metrics import rand_score

from src.core.exceptions import DomainError
from src.simlab.models import GroundTruth


def rand_index(truth: GroundTruth, estimated: Sequence[int], n: int | None = None) -> float:
    """
    Pair-counting agreement between the true segmentation and the one
    induced by the estimated change points, over {1..n}.
    """
    n = truth.n if n is None else n
    if n != truth.n:
        raise DomainError(f"ground truth covers n={truth.n}, asked for n={n}")
    estimate = GroundTruth(n=n, change_points=sorted(int(z) for z in estimated))
    return float(rand_score(truth.labels(), estimate.labels()))


def khat_stats(estimates: Sequence[int], true_K: int) -> Tuple[float, float]:
    """Mean of K_hat and RMSE of K_hat around the true K."""
    values = np.asarray(estimates, dtype=float)
    if values.size == 0:
        raise DomainError("need at least one K_hat estimate")
    mean = float(values.mean())
    rmse = float(np.sqrt(np.mean((values - true_K) ** 2)))
    return mean, rmse
