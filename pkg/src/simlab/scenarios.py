"""
simlab/scenarios.py
Scenario catalogue of the four published simulation tables.

Tables 1 and 2: empirical size and power of the data-splitting test for one
(n = 200) and two (n = 300) change points. Tables 3 and 4: change-point
estimation quality of MPULSE for the same two designs.
"""

from typing import Dict, List, Tuple

import src.core.constants as constants
from src.core.exceptions import DomainError
from src.simlab.models import NoiseLaw, Scenario, SimConfig

SINGLE_CHANGE = {"n": 200, "change_points": [100]}
TWO_CHANGES = {"n": 300, "change_points": [100, 200]}

TEST_SIGNAL_DIMS = (10, 20)
TEST_MAGNITUDES = (0.06, 0.08, 0.1)
ESTIMATE_SETTINGS: Tuple[Tuple[int, float], ...] = ((10, 0.08), (10, 0.1), (20, 0.08), (20, 0.1))

TABLE_DESIGNS: Dict[int, Tuple[str, dict]] = {
    1: ("test", SINGLE_CHANGE),
    2: ("test", TWO_CHANGES),
    3: ("estimate", SINGLE_CHANGE),
    4: ("estimate", TWO_CHANGES),
}


def _test_rows(table: int, design: dict, noise: NoiseLaw, base_seed: int) -> List[Scenario]:
    rows = [
        Scenario(
            table=table,
            kind="test",
            config=SimConfig(**design, u=0.0, D_c=1, noise=noise, seed=base_seed),
            note="size",
        )
    ]
    for D_c in TEST_SIGNAL_DIMS:
        for u in TEST_MAGNITUDES:
            rows.append(
                Scenario(
                    table=table,
                    kind="test",
                    config=SimConfig(**design, u=u, D_c=D_c, noise=noise, seed=base_seed),
                    note="power",
                )
            )
    return rows


def _estimate_rows(
    table: int, design: dict, noise: NoiseLaw, base_seed: int, include_fpca: bool
) -> List[Scenario]:
    methods = ("ads", "fpca") if include_fpca else ("ads",)
    rows = []
    for D_c, u in ESTIMATE_SETTINGS:
        config = SimConfig(**design, u=u, D_c=D_c, noise=noise, seed=base_seed)
        for method in methods:
            rows.append(
                Scenario(
                    table=table,
                    kind="estimate",
                    config=config,
                    method=method,
                    note="approximate baseline" if method == "fpca" else None,
                )
            )
    return rows


def table_scenarios(k: int, base_seed: int = constants.BASE_SEED, include_fpca: bool = False) -> List[Scenario]:
    """
    Scenario list reproducing table k (1..4), Gaussian rows first, then
    t_4 rows. The FPCA comparison rows of tables 3 and 4 are only an
    approximate baseline and are added on request.
    """
    if k not in TABLE_DESIGNS:
        raise DomainError(f"table must be one of {sorted(TABLE_DESIGNS)}, got {k}")
    kind, design = TABLE_DESIGNS[k]
    scenarios: List[Scenario] = []
    for noise in (NoiseLaw.GAUSSIAN, NoiseLaw.STUDENT_T4):
        if kind == "test":
            scenarios.extend(_test_rows(k, design, noise, base_seed))
        else:
            scenarios.extend(_estimate_rows(k, design, noise, base_seed, include_fpca))
    return scenarios
