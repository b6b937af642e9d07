"""
cli/main.py
Argument parsing and error-to-exit-code mapping for the `ads` command.

Usage:
  ads simulate --n 200 --change-points 100 --u 0.1 --signal-dims 20 --out data/sim.csv
  ads test data/sim.csv
  ads detect data/sim.csv --emit-s data/scan.csv --out data/detect.json
  ads reduce data/curves.csv --smooth 21 --out data/reduced.csv --scree data/scree.csv
  ads bench --table 1 --reps 100
  ads rerun data/detect.json
"""

import argparse
import sys
from functools import partial
from typing import List

import src.core.constants as constants
from src.cli.commands import (
    cmd_bench,
    cmd_detect,
    cmd_plotdata,
    cmd_reduce,
    cmd_rerun,
    cmd_simulate,
    cmd_test,
    status,
)
from src.core.exceptions import AdsError
from src.simlab.models import NoiseLaw
from src.simlab.scenarios import TABLE_DESIGNS


def _add_input_flags(parser: argparse.ArgumentParser):
    parser.add_argument(
        "input",
        help="coefficient CSV (header c1..cD), or a raw-grid CSV when --smooth is given",
    )
    parser.add_argument(
        "--smooth",
        type=int,
        metavar="D",
        help="read a raw-grid CSV (first row 't', grid...; each curve row may start "
        "with a label cell) and project every curve on D Fourier functions by least squares",
    )
    parser.add_argument(
        "--log-returns",
        action="store_true",
        help="turn positive raw curves into log-returns before projecting (needs --smooth)",
    )


def _add_trr_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--tau1", type=float, help=f"TRR threshold (default {constants.TAU1})")
    parser.add_argument(
        "--c-n", type=float, help="TRR ridge (default 0.5 log(log n) / sqrt(n))"
    )


def _add_reducer_flag(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--reducer",
        choices=["ads", "fpca"],
        default="ads",
        help="dimension reduction: ADS with TRR, or the FPCA baseline",
    )


def _add_mpulse_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--alpha-n", type=int, help="MOSUM window (default floor(n^0.6))")
    parser.add_argument("--tau2", type=float, help=f"MPULSE threshold (default {constants.TAU2})")
    parser.add_argument(
        "--c-tilde", type=float, help="MPULSE ridge (default 0.25 sqrt(log n / alpha_n))"
    )


def _add_level_flag(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--level", type=float, default=constants.LEVEL, help="significance level of the test"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ads",
        description="Adjacent deviation subspace change-point analysis for functional data.",
    )
    parser.add_argument("--version", action="version", version=constants.TOOL_VERSION)
    subparsers = parser.add_subparsers(dest="command", required=True)

    # --- simulate ---
    simulate = subparsers.add_parser("simulate", help="draw one simulated sequence")
    simulate.add_argument("--n", type=int, default=200)
    simulate.add_argument("--basis-size", type=int, default=constants.BASIS_SIZE)
    simulate.add_argument("--change-points", type=int, nargs="*", default=[])
    simulate.add_argument("--u", type=float, default=0.0, help="mean shift per coordinate")
    simulate.add_argument(
        "--signal-dims", type=int, default=1, help="number of shifted coordinates (D_c)"
    )
    simulate.add_argument(
        "--noise", choices=[law.value for law in NoiseLaw], default=NoiseLaw.GAUSSIAN.value
    )
    simulate.add_argument("--noise-scale", type=float, default=1.0)
    simulate.add_argument("--seed", type=int, default=constants.BASE_SEED)
    simulate.add_argument("--out", required=True, help="coefficient CSV to write")
    simulate.add_argument("--truth", help="ground-truth JSON (default <out>.truth.json)")
    simulate.set_defaults(handler=cmd_simulate)

    # --- test ---
    test = subparsers.add_parser("test", help="test for the existence of a mean change")
    _add_input_flags(test)
    _add_level_flag(test)
    test.add_argument("--out", help="JSON file (default: stdout)")
    test.set_defaults(handler=cmd_test)

    # --- detect ---
    detect = subparsers.add_parser("detect", help="estimate change-point locations")
    _add_input_flags(detect)
    _add_trr_flags(detect)
    _add_reducer_flag(detect)
    _add_mpulse_flags(detect)
    detect.add_argument("--emit-s", metavar="FILE", help="write the S_n series as CSV (i, S)")
    detect.add_argument("--out", help="JSON file (default: stdout)")
    detect.set_defaults(handler=cmd_detect)

    # --- reduce ---
    reduce = subparsers.add_parser("reduce", help="write the reduced sequence")
    _add_input_flags(reduce)
    _add_trr_flags(reduce)
    _add_reducer_flag(reduce)
    reduce.add_argument("--out", required=True, help="reduced-data CSV")
    reduce.add_argument("--model", help="model JSON (default <out>.model.json)")
    reduce.add_argument("--scree", metavar="FILE", help="eigenvalue scree CSV (k, eigenvalue)")
    reduce.set_defaults(handler=cmd_reduce)

    # --- bench ---
    bench = subparsers.add_parser("bench", help="reproduce a simulation table")
    bench.add_argument("--table", type=int, choices=sorted(TABLE_DESIGNS), required=True)
    bench.add_argument("--reps", type=int, default=100)
    bench.add_argument("--seed", type=int, default=constants.BASE_SEED)
    _add_level_flag(bench)
    bench.add_argument("--n-jobs", type=int, default=constants.N_JOBS)
    bench.add_argument(
        "--fpca", action="store_true", help="add FPCA rows (approximate baseline, tables 3-4)"
    )
    bench.add_argument("--out", help="report CSV (default data/tables/table<k>.csv)")
    bench.set_defaults(handler=cmd_bench)

    # --- plotdata ---
    plotdata = subparsers.add_parser(
        "plotdata", help="first ADS/FPCA coordinates and the MPULSE scan, as CSV"
    )
    _add_input_flags(plotdata)
    _add_trr_flags(plotdata)
    _add_mpulse_flags(plotdata)
    plotdata.add_argument("--out", required=True, help="coordinates CSV (i, ads_1, fpca_1)")
    plotdata.add_argument("--scan-out", help="scan CSV (default <out>.scan.csv)")
    plotdata.set_defaults(handler=cmd_plotdata)

    # --- rerun ---
    rerun = subparsers.add_parser("rerun", help="replay a recorded run manifest")
    rerun.add_argument("manifest", help="sidecar manifest or JSON output embedding one")
    rerun.set_defaults(handler=partial(cmd_rerun, replay=main))

    return parser


def main(argv: List[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args, argv)
    except AdsError as e:
        status(f"error: {e}")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
