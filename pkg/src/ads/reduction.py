"""
ads/reduction.py
Dimension selection and projection onto the estimated adjacent deviation
subspace, plus the FPCA baseline reducer.
"""

import numpy as np

import src.core.constants as constants
from src.ads.models import AdsModel, TrrParams
from src.ads.target_matrix import fpca_matrix, standardized_eigen
from src.basis.models import FunctionalSample
from src.core.exceptions import DomainError, EmptyReductionError, InsufficientDataError
from src.utils.linalg_utils import sym_eig

MIN_FIT_SIZE = 4


def trr_dimension(eigenvalues, params: TrrParams) -> int:
    """
    q_hat = max{k : (lam_{k+1} + c_n) / (lam_k + c_n) <= tau1}, 0 if none.
    Negative eigenvalues are floored at zero first.
    """
    lam = np.asarray(eigenvalues, dtype=float)
    if lam.ndim != 1 or lam.size < 2:
        raise DomainError("TRR needs at least 2 eigenvalues")
    if np.any(np.diff(lam) > 0):
        raise DomainError("eigenvalues must be sorted in descending order")

    lam = np.maximum(lam, 0.0)
    ratios = (lam[1:] + params.c_n) / (lam[:-1] + params.c_n)
    qualifying = np.flatnonzero(ratios <= params.tau1)
    if qualifying.size == 0:
        return 0
    return int(qualifying[-1]) + 1


def reduce(sample: FunctionalSample, eigenvectors, q_hat: int) -> np.ndarray:
    """Reduced sequence: column j is coeffs @ B_j for j = 1..q_hat."""
    if q_hat < 1:
        raise EmptyReductionError("q_hat = 0: no direction to project on")
    eigenvectors = np.asarray(eigenvectors, dtype=float)
    if eigenvectors.shape[0] != sample.D or q_hat > eigenvectors.shape[1]:
        raise DomainError(
            f"eigenvectors of shape {eigenvectors.shape} do not fit D={sample.D}, q_hat={q_hat}"
        )
    return sample.coeffs @ eigenvectors[:, :q_hat]


def _model(
    sample: FunctionalSample,
    eigenvalues: np.ndarray,
    eigenvectors: np.ndarray,
    q_hat: int,
    method: str,
) -> AdsModel:
    if q_hat > 0:
        reduced = reduce(sample, eigenvectors, q_hat)
    else:
        reduced = np.empty((sample.n, 0))
    return AdsModel(
        eigenvalues=eigenvalues,
        eigenvectors=eigenvectors,
        q_hat=q_hat,
        reduced=reduced,
        method=method,
    )


def fit_ads(sample: FunctionalSample, params: TrrParams | None = None) -> AdsModel:
    """
    A_n against Q_n -> eigen-decomposition -> TRR dimension -> reduced sequence.
    TRR reads the standardised eigenvalues, so c_n and tau1 act on a
    noise level of 1 for any covariance spectrum. q_hat = 0 yields an empty
    reduction (model.has_signal is False).
    """
    if sample.n < MIN_FIT_SIZE:
        raise InsufficientDataError(
            f"ADS fitting needs n >= {MIN_FIT_SIZE}, got {sample.n}"
        )
    if params is None:
        params = TrrParams.for_sample_size(sample.n)

    eigenvalues, eigenvectors = standardized_eigen(sample)
    q_hat = trr_dimension(eigenvalues, params)
    return _model(sample, eigenvalues, eigenvectors, q_hat, "ads")


def cumulative_variance_dimension(eigenvalues, variance: float) -> int:
    """Smallest k whose leading eigenvalues explain `variance` of the total."""
    if not 0.0 < variance <= 1.0:
        raise DomainError(f"variance share must lie in (0, 1], got {variance}")
    lam = np.maximum(np.asarray(eigenvalues, dtype=float), 0.0)
    total = lam.sum()
    if total <= 0.0:
        return 0
    share = np.cumsum(lam) / total
    return int(np.searchsorted(share, variance - 1e-12) + 1)


def fit_fpca(
    sample: FunctionalSample, variance: float = constants.FPCA_VARIANCE
) -> AdsModel:
    """FPCA baseline: leading eigenvectors of M_n up to `variance` explained."""
    if sample.n < MIN_FIT_SIZE:
        raise InsufficientDataError(
            f"FPCA fitting needs n >= {MIN_FIT_SIZE}, got {sample.n}"
        )
    eigenvalues, eigenvectors = sym_eig(fpca_matrix(sample))
    q_hat = cumulative_variance_dimension(eigenvalues, variance)
    return _model(sample, eigenvalues, eigenvectors, q_hat, "fpca")
