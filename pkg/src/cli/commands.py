"""
cli/commands.py
One handler per subcommand. Each reads its inputs, runs the library,
writes its outputs together with a run manifest and returns an exit code.
Status lines go to stderr; stdout only ever carries JSON.
"""

import argparse
import json
import os
import sys
import time
from pathlib import Path
from typing import Callable, List

import numpy as np

import src.core.constants as constants
from src.ads.models import TrrParams
from src.ads.reduction import fit_ads, fit_fpca, reduce
from src.basis.fourier import log_returns, project
from src.basis.models import BasisSpec, FunctionalSample, TimeGrid
from src.cli.models import Command, RunManifest
from src.core.exceptions import DomainError, NoSignalError
from src.cptest.ads_test import ads_test
from src.mpulse.detector import detect, reduce_sample, scan_reduced
from src.mpulse.models import MpulseParams
from src.simlab.generator import gen_sequence
from src.simlab.models import GroundTruth, NoiseLaw, Scenario, SimConfig
from src.simlab.runner import run_scenario_grid
from src.simlab.scenarios import table_scenarios
from src.utils.io_utils import (
    read_coefficients,
    read_raw_grid,
    save_json,
    write_coefficients,
    write_frame_csv,
    write_matrix_csv,
)


def status(message: str):
    print(message, file=sys.stderr)


def load_sample(path: str, smooth: int | None = None, use_log_returns: bool = False) -> FunctionalSample:
    """
    Coefficient CSV when smooth is None, otherwise a raw-grid CSV projected
    by least squares on `smooth` Fourier functions.
    """
    if smooth is None:
        if use_log_returns:
            raise DomainError("--log-returns needs raw-grid input (pass --smooth D)")
        return FunctionalSample.from_coeffs(read_coefficients(path))

    raw_grid, values, _ = read_raw_grid(path)
    grid = TimeGrid.from_raw(raw_grid)
    if use_log_returns:
        values, grid = log_returns(values, grid)
    return project(values, BasisSpec(D=smooth), grid)


def _sample_from_args(args: argparse.Namespace) -> FunctionalSample:
    sample = load_sample(args.input, args.smooth, args.log_returns)
    status(f"  Loaded {sample.n} observations with D={sample.D} from {args.input}")
    return sample


def _input_parameters(args: argparse.Namespace) -> dict:
    return {"smooth": args.smooth, "log_returns": args.log_returns}


def _manifest(
    command: Command,
    argv: List[str],
    inputs: List[str],
    outputs: List[str | None],
    parameters: dict,
    seed: int | None = None,
) -> RunManifest:
    return RunManifest(
        command=command,
        argv=list(argv),
        inputs=inputs,
        outputs=[path for path in outputs if path is not None],
        parameters=parameters,
        seed=seed,
    )


def _emit_json(payload: dict, out: str | None, manifest: RunManifest):
    document = {**payload, "manifest": manifest.to_json_dict()}
    if out is None:
        print(json.dumps(document, indent=2))
    else:
        save_json(document, out)
        status(f"  ✅ Wrote {out}")


def _emit_csv(write: Callable[[str], None], out: str, manifest: RunManifest):
    write(out)
    manifest.write_sidecar(out)
    status(f"  ✅ Wrote {out}")


def _trr_params(args: argparse.Namespace, n: int) -> TrrParams:
    return TrrParams.for_sample_size(n, tau1=args.tau1, c_n=args.c_n)


def _mpulse_params(args: argparse.Namespace, n: int) -> MpulseParams:
    return MpulseParams.for_sample_size(
        n, alpha_n=args.alpha_n, c_tilde=args.c_tilde, tau2=args.tau2
    )


def cmd_test(args: argparse.Namespace, argv: List[str]) -> int:
    """ADS data-splitting test for the existence of a mean change."""
    sample = _sample_from_args(args)
    result = ads_test(sample, level=args.level)
    status(f"  T_2n = {result.statistic:.4f}, p = {result.p_value:.4f}")

    manifest = _manifest(
        "test", argv, [args.input], [args.out], {**_input_parameters(args), "level": args.level}
    )
    _emit_json(result.to_json_dict(), args.out, manifest)
    return constants.EXIT_OK


def cmd_detect(args: argparse.Namespace, argv: List[str]) -> int:
    """Adaptive change-point estimation (reduction followed by MPULSE)."""
    sample = _sample_from_args(args)
    trr = _trr_params(args, sample.n)
    mp = _mpulse_params(args, sample.n)
    result = detect(sample, trr, mp, reducer=args.reducer)
    status(f"  q_hat = {result.q_hat}, {result.k_hat} change point(s) at {result.locations}")

    parameters = {
        **_input_parameters(args),
        "reducer": args.reducer,
        "tau1": trr.tau1,
        "c_n": trr.c_n,
        "alpha_n": mp.alpha_n,
        "c_tilde": mp.c_tilde,
        "tau2": mp.tau2,
    }
    manifest = _manifest("detect", argv, [args.input], [args.out, args.emit_s], parameters)
    if args.emit_s:
        _emit_csv(
            lambda path: write_matrix_csv(result.s_series[:, np.newaxis], path, ["S"], index_name="i"),
            args.emit_s,
            manifest,
        )
    _emit_json(result.to_json_dict(), args.out, manifest)
    return constants.EXIT_OK


def cmd_reduce(args: argparse.Namespace, argv: List[str]) -> int:
    """Writes the reduced sequence, the fitted model and optionally the scree."""
    sample = _sample_from_args(args)
    trr = _trr_params(args, sample.n)
    model = reduce_sample(sample, trr, args.reducer)
    status(f"  {args.reducer.upper()} selected q_hat = {model.q_hat}")

    model_path = args.model or str(Path(args.out).with_suffix(".model.json"))
    parameters = {
        **_input_parameters(args),
        "reducer": args.reducer,
        "tau1": trr.tau1,
        "c_n": trr.c_n,
    }
    manifest = _manifest(
        "reduce", argv, [args.input], [args.out, model_path, args.scree], parameters
    )

    # the scree is written even when q_hat = 0
    if args.scree:
        _emit_csv(
            lambda path: write_matrix_csv(
                model.eigenvalues[:, np.newaxis], path, ["eigenvalue"], index_name="k"
            ),
            args.scree,
            manifest,
        )
    if not model.has_signal:
        raise NoSignalError("no change signal: the reduction selected q_hat = 0")

    columns = [f"f{j}" for j in range(1, model.q_hat + 1)]
    _emit_csv(lambda path: write_matrix_csv(model.reduced, path, columns), args.out, manifest)
    _emit_json(model.to_json_dict(), model_path, manifest)
    return constants.EXIT_OK


def cmd_simulate(args: argparse.Namespace, argv: List[str]) -> int:
    """Draws one sequence of the simulation design; writes coefficients and ground truth."""
    config = SimConfig(
        n=args.n,
        D=args.basis_size,
        change_points=args.change_points,
        u=args.u,
        D_c=args.signal_dims,
        noise=NoiseLaw(args.noise),
        seed=args.seed,
        noise_scale=args.noise_scale,
    )
    sample = gen_sequence(config)
    truth = GroundTruth.from_config(config)
    truth_path = args.truth or str(Path(args.out).with_suffix(".truth.json"))

    manifest = _manifest(
        "simulate",
        argv,
        [],
        [args.out, truth_path],
        config.model_dump(mode="json"),
        seed=config.seed,
    )
    _emit_csv(lambda path: write_coefficients(sample.coeffs, path), args.out, manifest)
    _emit_json(
        {
            "n": truth.n,
            "change_points": truth.change_points,
            "segmentation": [list(block) for block in truth.segmentation],
        },
        truth_path,
        manifest,
    )
    return constants.EXIT_OK


def _progress(total: int) -> Callable[[int, Scenario], None]:
    def report(index: int, scenario: Scenario):
        config = scenario.config
        status(
            f"  [{index}/{total}] {config.noise.value:<10} {scenario.method:<4} "
            f"K={config.K} D_c={config.D_c} u={config.u}"
        )

    return report


def cmd_bench(args: argparse.Namespace, argv: List[str]) -> int:
    """Reproduces one simulation table as a CSV report."""
    scenarios = table_scenarios(args.table, base_seed=args.seed, include_fpca=args.fpca)
    out = args.out or os.path.join(constants.TABLES_DIR, f"table{args.table}.csv")
    status(f"--- Table {args.table}: {len(scenarios)} scenarios x {args.reps} replications ---")

    start = time.perf_counter()
    report = run_scenario_grid(
        scenarios,
        args.reps,
        level=args.level,
        base_seed=args.seed,
        n_jobs=args.n_jobs,
        progress=_progress(len(scenarios)),
    )
    manifest = _manifest(
        "bench",
        argv,
        [],
        [out],
        {"table": args.table, "reps": args.reps, "level": args.level, "fpca": args.fpca},
        seed=args.seed,
    )
    _emit_csv(lambda path: write_frame_csv(report, path), out, manifest)
    status(f"--- Done in {time.perf_counter() - start:.1f}s ---")
    return constants.EXIT_OK


def cmd_plotdata(args: argparse.Namespace, argv: List[str]) -> int:
    """
    Data behind the before/after-reduction figure: the first ADS and FPCA
    coordinates of every observation, and the MPULSE-ADS scan.
    """
    sample = _sample_from_args(args)
    trr = _trr_params(args, sample.n)
    mp = _mpulse_params(args, sample.n)
    ads_model = fit_ads(sample, trr)
    fpca_model = fit_fpca(sample)

    coordinates = np.column_stack(
        [
            reduce(sample, ads_model.eigenvectors, 1)[:, 0],
            reduce(sample, fpca_model.eigenvectors, 1)[:, 0],
        ]
    )
    # with q_hat = 0 the scan still runs on the leading ADS direction
    scan = scan_reduced(
        reduce(sample, ads_model.eigenvectors, max(ads_model.q_hat, 1)),
        mp,
        q_hat=ads_model.q_hat,
    )

    scan_path = args.scan_out or str(Path(args.out).with_suffix(".scan.csv"))
    parameters = {
        **_input_parameters(args),
        "tau1": trr.tau1,
        "c_n": trr.c_n,
        "alpha_n": mp.alpha_n,
        "c_tilde": mp.c_tilde,
        "tau2": mp.tau2,
    }
    manifest = _manifest("plotdata", argv, [args.input], [args.out, scan_path], parameters)
    _emit_csv(
        lambda path: write_matrix_csv(coordinates, path, ["ads_1", "fpca_1"], index_name="i"),
        args.out,
        manifest,
    )
    _emit_csv(
        lambda path: write_matrix_csv(scan.s_series[:, np.newaxis], path, ["S"], index_name="i"),
        scan_path,
        manifest,
    )
    return constants.EXIT_OK


def cmd_rerun(
    args: argparse.Namespace, argv: List[str], replay: Callable[[List[str]], int]
) -> int:
    """Replays the argv recorded in a manifest."""
    manifest = RunManifest.load(args.manifest)
    status(f"--- Replaying: {' '.join(manifest.argv)} ---")
    if manifest.tool_version != constants.TOOL_VERSION:
        status(
            f"  ! recorded with version {manifest.tool_version}, "
            f"running {constants.TOOL_VERSION}: outputs may differ"
        )
    return replay(manifest.argv)
