"""
mpulse/scan.py
MOSUM differences, their smoothing, the multivariate ridge-ratio scan S_n
and the interval/location extraction.

Arrays are 0-based internally; row p of every returned matrix is scan
position i = p + 1 of the published formulas.
"""

from typing import List, Tuple

import numpy as np

import src.core.constants as constants
from src.core.exceptions import DomainError, WindowTooLargeError
from src.mpulse.models import MpulseParams


def _as_columns(values) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if values.ndim == 1:
        values = values[:, np.newaxis]
    if values.ndim != 2:
        raise DomainError(f"expected an (n, q) matrix, got shape {values.shape}")
    return values


def _window_sums(values: np.ndarray, width: int) -> np.ndarray:
    """Sums over every window [p, p + width) via one running sum, O(n q)."""
    running = np.zeros((values.shape[0] + 1, values.shape[1]))
    np.cumsum(values, axis=0, out=running[1:])
    return running[width:] - running[:-width]


def mosum_diff(reduced, alpha_n: int) -> np.ndarray:
    """
    D_{l,n}(i) = mean(f[i .. i+a-1]) - mean(f[i+a .. i+2a-1]) per coordinate l,
    for i = 1 .. n - 2a + 1.
    """
    values = _as_columns(reduced)
    n = values.shape[0]
    if alpha_n < 1:
        raise DomainError(f"alpha_n must be positive, got {alpha_n}")
    if n < 2 * alpha_n:
        raise WindowTooLargeError(
            f"n={n} is shorter than two windows of alpha_n={alpha_n}"
        )
    sums = _window_sums(values, alpha_n)
    count = n - 2 * alpha_n + 1
    return (sums[:count] - sums[alpha_n : alpha_n + count]) / alpha_n


def smooth_diff(D_matrix, alpha_n: int) -> np.ndarray:
    """tilde-D(i) = mean of D(i .. i+a-1); valid for i = 1 .. n - 3a + 2."""
    values = _as_columns(D_matrix)
    if values.shape[0] < alpha_n:
        raise WindowTooLargeError(
            f"{values.shape[0]} MOSUM positions cannot fill a window of {alpha_n}"
        )
    return _window_sums(values, alpha_n) / alpha_n


def pulse_statistic(tildeD, params: MpulseParams) -> np.ndarray:
    """
    S_n(i) = min_l (|tD_l(i)| + c) / (|tD_l(i + lag)| + c), lag = floor(1.5 a),
    over every i where both positions exist.
    """
    values = _as_columns(tildeD)
    if values.shape[1] < 1:
        raise DomainError("MPULSE needs at least one reduced dimension")
    length = values.shape[0] - params.lag
    if length < 1:
        raise WindowTooLargeError(
            f"no scan position left: {values.shape[0]} smoothed positions, lag {params.lag}"
        )
    magnitude = np.abs(values)
    ratios = (magnitude[:length] + params.c_tilde) / (
        magnitude[params.lag : params.lag + length] + params.c_tilde
    )
    return ratios.min(axis=1)


def extract_intervals(S, tau2: float) -> List[Tuple[int, int]]:
    """Maximal runs of consecutive positions with S < tau2, as 1-based (m_k, M_k)."""
    S = np.asarray(S, dtype=float)
    if not np.all(np.isfinite(S)):
        raise DomainError("S_n contains non-finite values")
    below = np.concatenate(([0], (S < tau2).astype(int), [0]))
    edges = np.diff(below)
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1) - 1
    return [(int(s) + 1, int(e) + 1) for s, e in zip(starts, ends)]


def locate(S, intervals: List[Tuple[int, int]], alpha_n: int) -> List[int]:
    """
    Per run, i_k = argmin of S over the closed run (first index on ties),
    and z_hat = i_k + 3 alpha_n.
    """
    S = np.asarray(S, dtype=float)
    locations = []
    for start, end in intervals:
        i_k = start + int(np.argmin(S[start - 1 : end]))
        locations.append(i_k + constants.LOCATION_SHIFT * alpha_n)
    return locations
