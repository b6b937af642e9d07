import json

import numpy as np
import pandas as pd
import pytest

from src.basis.fourier import evaluate_basis
from src.basis.models import BasisSpec, TimeGrid
from src.cli.commands import load_sample
from src.cli.main import main
from src.cli.models import RunManifest
from src.core.exceptions import ParseError
from src.utils.io_utils import read_coefficients, read_raw_grid, write_coefficients


def _simulate(tmp_path, name="sim.csv", *extra):
    out = str(tmp_path / name)
    assert main(["simulate", "--out", out, *extra]) == 0
    return out


def _write_raw_grid(path, grid, values):
    lines = ["t," + ",".join(repr(float(t)) for t in grid)]
    for i, row in enumerate(values, start=1):
        lines.append(f"obs{i}," + ",".join(repr(float(v)) for v in row))
    path.write_text("\n".join(lines) + "\n")
    return str(path)


@pytest.fixture
def raw_curves(tmp_path, rng):
    """Raw-grid CSV whose curves lie in the span of 21 Fourier functions."""
    grid = TimeGrid.uniform(241)
    C = 0.5 * rng.normal(size=(40, 21)) * 2.0 ** (-np.arange(1, 22) / 2)
    C[20:, :5] += 1.0
    values = C @ evaluate_basis(BasisSpec(D=21), grid).T
    return _write_raw_grid(tmp_path / "curves.csv", grid.points, values)


class TestIo:
    def test_coefficient_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(ParseError, match="line 1"):
            read_coefficients(str(path))

    def test_bad_cell_reports_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("c1,c2,c3\n1,2,3\n4,x,6\n")
        with pytest.raises(ParseError, match="line 3") as info:
            read_coefficients(str(path))
        assert info.value.line == 3

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(ParseError):
            read_coefficients(str(path))

    def test_seventeen_digits_round_trip(self, tmp_path, rng):
        coeffs = rng.normal(size=(5, 3)) / 3.0
        path = str(tmp_path / "coeffs.csv")
        write_coefficients(coeffs, path)
        np.testing.assert_array_equal(read_coefficients(path), coeffs)

    def test_raw_grid(self, tmp_path):
        path = tmp_path / "raw.csv"
        path.write_text("t,1,2,3\n2020-01-01,0.5,0.6,0.7\n2020-01-02,0.1,0.2,0.3\n")
        grid, values, labels = read_raw_grid(str(path))
        np.testing.assert_array_equal(grid, [1, 2, 3])
        assert values.shape == (2, 3)
        assert labels == ["2020-01-01", "2020-01-02"]

    def test_raw_grid_without_labels(self, tmp_path):
        path = tmp_path / "raw.csv"
        path.write_text("t,1,2,3\n0.5,0.6,0.7\nday2,0.1,0.2,0.3\n0.4,0.4,0.4\n")
        _, values, labels = read_raw_grid(str(path))
        np.testing.assert_array_equal(values[0], [0.5, 0.6, 0.7])
        np.testing.assert_array_equal(values[2], [0.4, 0.4, 0.4])
        assert labels == ["1", "day2", "3"]

    def test_raw_grid_needs_t_header(self, tmp_path):
        path = tmp_path / "raw.csv"
        path.write_text("x,1,2,3\nobs,0.5,0.6,0.7\n")
        with pytest.raises(ParseError, match="line 1"):
            read_raw_grid(str(path))

    def test_raw_grid_short_row(self, tmp_path):
        path = tmp_path / "raw.csv"
        path.write_text("t,1,2,3\nobs,0.5,0.6,0.7\nobs,0.5,0.6\n")
        with pytest.raises(ParseError, match="line 3"):
            read_raw_grid(str(path))


class TestSimulate:
    def test_outputs_and_manifest(self, tmp_path):
        out = _simulate(tmp_path, "sim.csv", "--change-points", "100", "--u", "0.1", "--signal-dims", "20")
        assert read_coefficients(out).shape == (200, 21)

        truth = json.loads((tmp_path / "sim.truth.json").read_text())
        assert truth["change_points"] == [100]
        assert truth["segmentation"] == [[1, 100], [101, 200]]
        assert truth["manifest"]["command"] == "simulate"

        manifest = RunManifest.load(RunManifest.sidecar_path(out))
        assert manifest.seed is not None
        assert out in manifest.outputs

    def test_invalid_design_is_a_data_error(self, tmp_path, capsys):
        code = main(["simulate", "--out", str(tmp_path / "x.csv"), "--change-points", "250"])
        assert code == 2
        assert "error:" in capsys.readouterr().err


class TestReduce:
    def test_single_change(self, tmp_path):
        sim = _simulate(tmp_path, "sim.csv", "--change-points", "100", "--u", "0.1", "--signal-dims", "20")
        out = str(tmp_path / "reduced.csv")
        scree = str(tmp_path / "scree.csv")
        assert main(["reduce", sim, "--out", out, "--scree", scree]) == 0

        reduced = pd.read_csv(out)
        assert list(reduced.columns) == ["f1"]
        assert len(reduced) == 200
        model = json.loads((tmp_path / "reduced.model.json").read_text())
        assert model["q_hat"] == 1
        assert list(pd.read_csv(scree).columns) == ["k", "eigenvalue"]

    def test_no_signal(self, tmp_path, capsys):
        sim = _simulate(tmp_path, "null.csv", "--noise-scale", "0")
        code = main(["reduce", sim, "--out", str(tmp_path / "reduced.csv")])
        assert code == 4
        assert "no change signal" in capsys.readouterr().err
        assert not (tmp_path / "reduced.csv").exists()

    def test_empty_file(self, tmp_path, capsys):
        path = tmp_path / "empty.csv"
        path.write_text("")
        assert main(["reduce", str(path), "--out", str(tmp_path / "r.csv")]) == 2
        assert "line 1" in capsys.readouterr().err

    def test_raw_grid_matches_coefficients(self, tmp_path, raw_curves):
        coeff_path = str(tmp_path / "coeffs.csv")
        write_coefficients(load_sample(raw_curves, smooth=21).coeffs, coeff_path)

        assert main(["reduce", raw_curves, "--smooth", "21", "--out", str(tmp_path / "a.csv")]) == 0
        assert main(["reduce", coeff_path, "--out", str(tmp_path / "b.csv")]) == 0
        np.testing.assert_allclose(
            pd.read_csv(tmp_path / "a.csv").to_numpy(),
            pd.read_csv(tmp_path / "b.csv").to_numpy(),
            atol=1e-8,
        )


class TestTest:
    def test_stdout_json(self, tmp_path, capsys):
        sim = _simulate(tmp_path)
        capsys.readouterr()
        assert main(["test", sim]) == 0
        document = json.loads(capsys.readouterr().out)
        assert 0.0 <= document["p_value"] <= 1.0
        assert len(document["direction"]) == 21
        assert document["manifest"]["command"] == "test"

    def test_pipeline_equivalence(self, tmp_path, raw_curves):
        coeff_path = str(tmp_path / "coeffs.csv")
        write_coefficients(load_sample(raw_curves, smooth=21).coeffs, coeff_path)

        raw_out, coeff_out = str(tmp_path / "raw.json"), str(tmp_path / "coeff.json")
        assert main(["test", raw_curves, "--smooth", "21", "--out", raw_out]) == 0
        assert main(["test", coeff_path, "--out", coeff_out]) == 0
        raw = json.loads(open(raw_out).read())
        coeff = json.loads(open(coeff_out).read())
        assert raw["statistic"] == coeff["statistic"]

    def test_degenerate_exit_code(self, tmp_path):
        path = tmp_path / "flat.csv"
        write_coefficients(np.ones((20, 3)), str(path))
        assert main(["test", str(path)]) == 3

    def test_log_returns_need_raw_grid(self, tmp_path):
        sim = _simulate(tmp_path)
        assert main(["test", sim, "--log-returns"]) == 2


class TestDetect:
    def test_two_changes(self, tmp_path):
        sim = _simulate(
            tmp_path, "sim.csv",
            "--n", "300", "--change-points", "100", "200", "--u", "0.1", "--signal-dims", "20",
        )
        out, scan = str(tmp_path / "detect.json"), str(tmp_path / "scan.csv")
        assert main(["detect", sim, "--out", out, "--emit-s", scan]) == 0

        document = json.loads(open(out).read())
        assert document["k_hat"] == 2
        for found, true in zip(document["locations"], [100, 200]):
            assert abs(found - true) <= 10
        series = pd.read_csv(scan)
        assert list(series.columns) == ["i", "S"]
        assert series["i"].iloc[0] == 1
        assert RunManifest.load(RunManifest.sidecar_path(scan)).command == "detect"

    def test_overrides_are_recorded(self, tmp_path):
        sim = _simulate(tmp_path)
        out = str(tmp_path / "detect.json")
        assert main(["detect", sim, "--alpha-n", "20", "--tau2", "0.4", "--out", out]) == 0
        parameters = json.loads(open(out).read())["manifest"]["parameters"]
        assert parameters["alpha_n"] == 20
        assert parameters["tau2"] == 0.4

    def test_rerun_reproduces_output(self, tmp_path):
        sim = _simulate(tmp_path, "sim.csv", "--change-points", "100", "--u", "0.1", "--signal-dims", "20")
        out = str(tmp_path / "detect.json")
        assert main(["detect", sim, "--out", out]) == 0
        first = open(out).read()
        assert main(["rerun", out]) == 0
        assert open(out).read() == first


class TestPlotdata:
    def test_columns(self, tmp_path):
        sim = _simulate(tmp_path, "sim.csv", "--change-points", "100", "--u", "0.1", "--signal-dims", "20")
        out = str(tmp_path / "plot.csv")
        assert main(["plotdata", sim, "--out", out]) == 0
        assert list(pd.read_csv(out).columns) == ["i", "ads_1", "fpca_1"]
        assert list(pd.read_csv(tmp_path / "plot.scan.csv").columns) == ["i", "S"]


class TestBench:
    def test_table_one_rows(self, tmp_path):
        out = str(tmp_path / "table1.csv")
        assert main(["bench", "--table", "1", "--reps", "3", "--out", out]) == 0
        report = pd.read_csv(out)
        assert len(report) == 14
        assert report["rate"].between(0, 1).all()
        assert RunManifest.load(RunManifest.sidecar_path(out)).parameters["reps"] == 3

    def test_rerun_from_sidecar(self, tmp_path):
        out = str(tmp_path / "table3.csv")
        assert main(["bench", "--table", "3", "--reps", "2", "--out", out]) == 0
        first = open(out).read()
        assert main(["rerun", RunManifest.sidecar_path(out)]) == 0
        assert open(out).read() == first

    @pytest.mark.slow
    def test_table_one_hundred_reps(self, tmp_path):
        out = str(tmp_path / "table1.csv")
        assert main(["bench", "--table", "1", "--reps", "100", "--out", out]) == 0
        assert len(pd.read_csv(out)) == 14
