"""
utils/linalg_utils.py
Dense linear-algebra helpers shared by the reduction, the test and the
validators of the domain models.
"""

from typing import Tuple

import numpy as np

import src.core.constants as constants
from src.core.exceptions import DegenerateVarianceError, DomainError


def frozen_array(value, ndim: int | None = None, name: str = "array") -> np.ndarray:
    """
    Copies `value` into a read-only float array, checking its rank.
    Used by the pydantic models so stored arrays cannot be mutated.
    """
    try:
        arr = np.array(value, dtype=float)
    except (TypeError, ValueError) as e:
        raise DomainError(f"{name} is not numeric: {e}") from e
    if ndim is not None and arr.ndim != ndim:
        raise DomainError(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


def symmetrize(matrix: np.ndarray) -> np.ndarray:
    """(A + A^T) / 2, removes floating-point asymmetry after accumulation."""
    return (matrix + matrix.T) / 2.0


def check_symmetric(matrix: np.ndarray, tol: float = constants.SYM_TOL) -> np.ndarray:
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise DomainError("matrix has non-finite entries")
    scale = max(1.0, float(np.max(np.abs(matrix), initial=0.0)))
    if np.max(np.abs(matrix - matrix.T), initial=0.0) > tol * scale:
        raise DomainError("matrix is not symmetric")
    return matrix


def sym_eig(matrix: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigen-decomposition of a symmetric matrix.

    Returns eigenvalues in descending order and the matching orthonormal
    eigenvectors as columns. Each eigenvector is signed so that its
    largest-magnitude entry is positive, which makes reduced data identical
    across LAPACK builds.
    """
    matrix = symmetrize(check_symmetric(matrix))
    values, vectors = np.linalg.eigh(matrix)

    order = np.argsort(values, kind="stable")[::-1]
    return values[order], fix_signs(vectors[:, order])


def fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Flips each column so that its largest-magnitude entry is positive."""
    pivots = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[pivots, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def psd_sqrt_pair(
    matrix: np.ndarray, floor_rel: float = constants.FLOOR_REL
) -> Tuple[np.ndarray, np.ndarray]:
    """
    (Q^{1/2}, Q^{+1/2}) of a symmetric PSD matrix on its numerical range.
    Eigenvalues at or below floor_rel * lambda_max count as an exact null
    space, so a rank-deficient Q yields the pseudo-inverse root.
    """
    matrix = symmetrize(check_symmetric(matrix))
    values, vectors = np.linalg.eigh(matrix)
    lam_max = float(values.max())
    if lam_max <= 0.0:
        raise DegenerateVarianceError(
            "variance matrix has no positive eigenvalue; cannot standardise"
        )
    kept = values > floor_rel * lam_max
    basis = vectors[:, kept]
    root = np.sqrt(values[kept])
    return symmetrize((basis * root) @ basis.T), symmetrize((basis / root) @ basis.T)


def inv_sqrt_psd(
    matrix: np.ndarray, floor_rel: float = constants.FLOOR_REL
) -> np.ndarray:
    """
    Q^{-1/2} of a symmetric PSD matrix.
    Eigenvalues are floored at floor_rel * lambda_max before inversion.
    """
    matrix = symmetrize(check_symmetric(matrix))
    values, vectors = np.linalg.eigh(matrix)
    lam_max = float(values.max())
    if lam_max <= 0.0:
        raise DegenerateVarianceError(
            "variance matrix has no positive eigenvalue; cannot whiten"
        )
    values = np.maximum(values, floor_rel * lam_max)
    return symmetrize((vectors / np.sqrt(values)) @ vectors.T)
