"""
ads/target_matrix.py
Coefficient-space estimators of the covariance kernel and the ADS target.

  M_n = (1/n) sum (C_i - C_bar)(C_i - C_bar)^T
  Q_n = (1/2n) sum_{i<n} (C_{i+1} - C_i)(C_{i+1} - C_i)^T
  A_n = M_n - Q_n
"""

from typing import Tuple

import numpy as np

import src.core.constants as constants
from src.basis.models import FunctionalSample
from src.core.exceptions import InsufficientDataError
from src.utils.linalg_utils import fix_signs, psd_sqrt_pair, sym_eig, symmetrize


def _require_rows(coeffs: np.ndarray, minimum: int = 2):
    if coeffs.shape[0] < minimum:
        raise InsufficientDataError(
            f"need at least {minimum} observations, got {coeffs.shape[0]}"
        )


def centered_covariance(coeffs: np.ndarray) -> np.ndarray:
    """(1/n) sum (C_i - C_bar)(C_i - C_bar)^T of a coefficient matrix."""
    coeffs = np.asarray(coeffs, dtype=float)
    _require_rows(coeffs)
    centered = coeffs - coeffs.mean(axis=0)
    return symmetrize(centered.T @ centered / coeffs.shape[0])


def difference_covariance(coeffs: np.ndarray) -> np.ndarray:
    """(1/2n) sum (C_{i+1} - C_i)(C_{i+1} - C_i)^T over consecutive rows."""
    coeffs = np.asarray(coeffs, dtype=float)
    _require_rows(coeffs)
    steps = np.diff(coeffs, axis=0)
    return symmetrize(steps.T @ steps / (2.0 * coeffs.shape[0]))


def fpca_matrix(sample: FunctionalSample) -> np.ndarray:
    """Sample covariance M_n, the matrix FPCA decomposes."""
    return centered_covariance(sample.coeffs)


def pooled_covariance(sample: FunctionalSample) -> np.ndarray:
    """Q_n, the difference-based estimate of the within-segment covariance."""
    return difference_covariance(sample.coeffs)


def compute_An(sample: FunctionalSample) -> np.ndarray:
    """ADS target matrix A_n; its leading eigenspace estimates the ADS."""
    return symmetrize(
        centered_covariance(sample.coeffs) - difference_covariance(sample.coeffs)
    )


def standardized_eigen(
    sample: FunctionalSample, floor_rel: float = constants.FLOOR_REL
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigenstructure of A_n measured against the pooled covariance Q_n.

    Eigenvalues are those of Q^{+1/2} (A_n + Q_n) Q^{+1/2}, i.e. one plus the
    signal-to-noise ratio of each direction: they sit near 1 for pure noise
    whatever the noise spectrum. The returned orthonormal directions span
    Q^{1/2} beta_1, ..., Q^{1/2} beta_k for every k, which is the ADS itself
    rather than its whitened image. A constant sequence (Q_n = 0) falls back
    to the plain eigen-decomposition of A_n.
    """
    A = compute_An(sample)
    Q = pooled_covariance(sample)
    if not np.any(Q):
        return sym_eig(A)

    root, inv_root = psd_sqrt_pair(Q, floor_rel=floor_rel)
    values, betas = sym_eig(symmetrize(inv_root @ (A + Q) @ inv_root))
    directions, _ = np.linalg.qr(root @ betas)
    return values, fix_signs(directions)
