"""
basis/fourier.py
Fourier basis on [0, 1] and conversion between grid values and
basis coefficients.

Column ordering (1-based, as in the basis definition):
  phi_1 = 1, phi_{2k} = sqrt(2) cos(2 pi k t), phi_{2k+1} = sqrt(2) sin(2 pi k t)
"""

from typing import Tuple

import numpy as np
from scipy import linalg

import src.core.constants as constants
from src.basis.models import BasisSpec, FunctionalSample, TimeGrid
from src.core.exceptions import ConditioningError, DomainError, UnderdeterminedError


def evaluate_basis(spec: BasisSpec, grid: TimeGrid) -> np.ndarray:
    """Returns the m x D matrix Phi with Phi[j, d] = phi_d(t_j)."""
    t = grid.points
    phi = np.empty((grid.size, spec.D))
    phi[:, 0] = 1.0

    k = np.arange(1, spec.n_frequencies + 1)
    angles = 2.0 * np.pi * np.outer(t, k)
    phi[:, 1::2] = np.sqrt(2.0) * np.cos(angles)
    phi[:, 2::2] = np.sqrt(2.0) * np.sin(angles)
    return phi


def _as_values(values, grid: TimeGrid) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if values.ndim == 1:
        values = values[np.newaxis, :]
    if values.ndim != 2 or values.shape[1] != grid.size:
        raise DomainError(
            f"values have shape {values.shape}, expected (n, {grid.size}) for this grid"
        )
    if not np.all(np.isfinite(values)):
        raise DomainError("values contain non-finite entries")
    return values


def project(values, spec: BasisSpec, grid: TimeGrid) -> FunctionalSample:
    """
    Least-squares coefficients of each row of `values` on the basis.
    Least squares (rather than Riemann inner products) keeps non-uniform
    grids exact for curves inside the span.
    """
    values = _as_values(values, grid)
    if grid.size < spec.D:
        raise UnderdeterminedError(
            f"{grid.size} grid points cannot determine {spec.D} basis coefficients"
        )

    design = evaluate_basis(spec, grid)
    condition = np.linalg.cond(design)
    if not np.isfinite(condition) or condition > constants.MAX_CONDITION:
        raise ConditioningError(
            f"basis design is ill-conditioned (condition number {condition:.3g})"
        )

    coeffs, _, _, _ = linalg.lstsq(design, values.T)
    return FunctionalSample(coeffs=coeffs.T, basis=spec)


def reconstruct(sample: FunctionalSample, grid: TimeGrid) -> np.ndarray:
    """Evaluates every observation on the grid: row i is C_i^T phi(t)."""
    return sample.coeffs @ evaluate_basis(sample.basis, grid).T


def log_returns(values, grid: TimeGrid) -> Tuple[np.ndarray, TimeGrid]:
    """
    Turns positive price curves into log-return curves along the grid.
    The returned grid drops the first point.
    """
    values = _as_values(values, grid)
    if np.any(values <= 0):
        raise DomainError("log-returns need strictly positive values")
    returns = np.diff(np.log(values), axis=1)
    return returns, TimeGrid(points=grid.points[1:])
