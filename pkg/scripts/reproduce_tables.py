"""
reproduce_tables.py

Regenerates the four simulation tables (test size/power and MPULSE
estimation quality) and writes one CSV report per table, each with a
run manifest next to it.

Usage:
  python -m scripts.reproduce_tables [--reps 1000] [--n-jobs 4] [--fpca]
"""

import argparse
import os
import time

import src.core.constants as constants
from src.cli.main import main as ads_main
from src.simlab.scenarios import TABLE_DESIGNS


def main(reps: int, n_jobs: int, seed: int, fpca: bool):
    start_time = time.perf_counter()

    print("=" * 60)
    print(f"REPRODUCING TABLES {sorted(TABLE_DESIGNS)} WITH {reps} REPLICATIONS")
    print("=" * 60)

    for table in sorted(TABLE_DESIGNS):
        out = os.path.join(constants.TABLES_DIR, f"table{table}.csv")
        argv = [
            "bench",
            "--table", str(table),
            "--reps", str(reps),
            "--seed", str(seed),
            "--n-jobs", str(n_jobs),
            "--out", out,
        ]
        if fpca and TABLE_DESIGNS[table][0] == "estimate":
            argv.append("--fpca")

        if ads_main(argv) != constants.EXIT_OK:
            print(f"Table {table} failed, stopping.")
            return

    total_time = time.perf_counter() - start_time
    print(f"\nAll tables written to {constants.TABLES_DIR} in {total_time:.1f}s")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Reproduce all simulation tables.")
    parser.add_argument("--reps", type=int, default=1000, help="replications per scenario")
    parser.add_argument("--n-jobs", type=int, default=constants.N_JOBS)
    parser.add_argument("--seed", type=int, default=constants.BASE_SEED)
    parser.add_argument(
        "--fpca", action="store_true", help="add FPCA baseline rows to the estimation tables"
    )
    args = parser.parse_args()
    main(reps=args.reps, n_jobs=args.n_jobs, seed=args.seed, fpca=args.fpca)
