"""
simlab/runner.py
Monte-Carlo replication of tests and detections.

Replication r draws its sequence from seed base_seed + r, so results do not
depend on n_jobs or on the order joblib schedules the work.
"""

from typing import Callable, Iterable, List, Tuple

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

import src.core.constants as constants
from src.core.exceptions import DomainError
from src.cptest.ads_test import ads_test
from src.mpulse.detector import Reducer, detect
from src.simlab.generator import gen_sequence
from src.simlab.metrics import khat_stats, rand_index
from src.simlab.models import EstimationSummary, GroundTruth, Scenario, SimConfig

REPORT_COLUMNS = [
    "table",
    "noise",
    "method",
    "n",
    "K",
    "D_c",
    "u",
    "reps",
    "rate",
    "khat_mean",
    "khat_rmse",
    "rand_index",
    "note",
]


def _check_reps(reps: int):
    if reps < 1:
        raise DomainError(f"reps must be at least 1, got {reps}")


def _seeds(config: SimConfig, reps: int, base_seed: int | None) -> List[int]:
    base = config.seed if base_seed is None else base_seed
    return [base + r for r in range(reps)]


def _replicate_test(config: SimConfig, seed: int, level: float) -> bool:
    sample = gen_sequence(config.with_seed(seed))
    return ads_test(sample, level=level).reject


def _replicate_detection(config: SimConfig, seed: int, reducer: Reducer) -> Tuple[int, float]:
    sample = gen_sequence(config.with_seed(seed))
    result = detect(sample, reducer=reducer)
    score = rand_index(GroundTruth.from_config(config), result.locations)
    return result.k_hat, score


def empirical_rate(
    config: SimConfig,
    reps: int,
    level: float = constants.LEVEL,
    base_seed: int | None = None,
    n_jobs: int = constants.N_JOBS,
) -> float:
    """Fraction of replications in which the data-splitting test rejects."""
    _check_reps(reps)
    outcomes = Parallel(n_jobs=n_jobs)(
        delayed(_replicate_test)(config, seed, level)
        for seed in _seeds(config, reps, base_seed)
    )
    return float(np.mean(outcomes))


def empirical_estimation(
    config: SimConfig,
    reps: int,
    reducer: Reducer = "ads",
    base_seed: int | None = None,
    n_jobs: int = constants.N_JOBS,
) -> EstimationSummary:
    """Mean and RMSE of K_hat plus the average Rand index over replications."""
    _check_reps(reps)
    outcomes = Parallel(n_jobs=n_jobs)(
        delayed(_replicate_detection)(config, seed, reducer)
        for seed in _seeds(config, reps, base_seed)
    )
    k_hats = [k for k, _ in outcomes]
    khat_mean, khat_rmse = khat_stats(k_hats, config.K)
    return EstimationSummary(
        khat_mean=khat_mean,
        khat_rmse=khat_rmse,
        rand_index=float(np.mean([score for _, score in outcomes])),
    )


def run_scenario(
    scenario: Scenario,
    reps: int,
    level: float = constants.LEVEL,
    base_seed: int | None = None,
    n_jobs: int = constants.N_JOBS,
) -> dict:
    config = scenario.config
    row = {
        "table": scenario.table,
        "noise": config.noise.value,
        "method": scenario.method,
        "n": config.n,
        "K": config.K,
        "D_c": config.D_c if config.u != 0 else None,
        "u": config.u,
        "reps": reps,
        "rate": None,
        "khat_mean": None,
        "khat_rmse": None,
        "rand_index": None,
        "note": scenario.note,
    }
    if scenario.kind == "test":
        row["rate"] = empirical_rate(config, reps, level, base_seed, n_jobs)
    else:
        summary = empirical_estimation(config, reps, scenario.method, base_seed, n_jobs)
        row.update(summary.model_dump())
    return row


def run_scenario_grid(
    scenarios: Iterable[Scenario],
    reps: int,
    level: float = constants.LEVEL,
    base_seed: int | None = None,
    n_jobs: int = constants.N_JOBS,
    progress: Callable[[int, Scenario], None] | None = None,
) -> pd.DataFrame:
    """One report row per scenario, in catalogue order."""
    rows = []
    for index, scenario in enumerate(scenarios, start=1):
        if progress is not None:
            progress(index, scenario)
        rows.append(run_scenario(scenario, reps, level, base_seed, n_jobs))
    return pd.DataFrame(rows, columns=REPORT_COLUMNS)
