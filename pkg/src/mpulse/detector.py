"""
mpulse/detector.py
Adaptive change-point estimation: reduce the functional sample, then run
the MPULSE scan on the reduced sequence.
"""

from typing import Literal

import numpy as np

from src.ads.models import AdsModel, TrrParams
from src.ads.reduction import fit_ads, fit_fpca
from src.basis.models import FunctionalSample
from src.core.exceptions import WindowTooLargeError
from src.mpulse.models import MpulseParams, MpulseResult
from src.mpulse.scan import (
    extract_intervals,
    locate,
    mosum_diff,
    pulse_statistic,
    smooth_diff,
)

Reducer = Literal["ads", "fpca"]


def _check_scan_range(n: int, params: MpulseParams):
    if params.scan_length(n) < 1:
        raise WindowTooLargeError(
            f"n={n} leaves no scan position for alpha_n={params.alpha_n}"
        )


def scan_reduced(reduced, params: MpulseParams, q_hat: int | None = None) -> MpulseResult:
    """MPULSE on an already reduced (n, q) sequence."""
    values = np.asarray(reduced, dtype=float)
    if values.ndim == 1:
        values = values[:, np.newaxis]
    _check_scan_range(values.shape[0], params)

    D = mosum_diff(values, params.alpha_n)
    tilde_D = smooth_diff(D, params.alpha_n)
    S = pulse_statistic(tilde_D, params)
    intervals = extract_intervals(S, params.tau2)
    locations = locate(S, intervals, params.alpha_n)
    return MpulseResult(
        s_series=S,
        intervals=intervals,
        locations=locations,
        k_hat=len(locations),
        q_hat=values.shape[1] if q_hat is None else q_hat,
    )


def reduce_sample(
    sample: FunctionalSample, trr: TrrParams | None = None, reducer: Reducer = "ads"
) -> AdsModel:
    if reducer == "fpca":
        return fit_fpca(sample)
    return fit_ads(sample, trr)


def detect(
    sample: FunctionalSample,
    trr: TrrParams | None = None,
    mp: MpulseParams | None = None,
    reducer: Reducer = "ads",
) -> MpulseResult:
    """
    fit -> (q_hat = 0: no change points) -> MOSUM -> smoothing -> S_n
    -> intervals -> locations.
    """
    if mp is None:
        mp = MpulseParams.for_sample_size(sample.n)
    _check_scan_range(sample.n, mp)

    model = reduce_sample(sample, trr, reducer)
    if not model.has_signal:
        return MpulseResult.empty(q_hat=0)
    return scan_reduced(model.reduced, mp, q_hat=model.q_hat)
