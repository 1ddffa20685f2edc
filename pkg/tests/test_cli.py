import csv
import io
import json

import numpy as np
import pytest

from sobolev_sphere.cli import main, parse_tau_grid
from sobolev_sphere.harness import read_results
from sobolev_sphere.kernels import harmonic_dimension, kernel_h
from sobolev_sphere.sphere import SeedSpec, sample_uniform_sphere


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def data_file(tmp_path):
    x = sample_uniform_sphere(300, 3, SeedSpec(2)).points
    path = tmp_path / "x.txt"
    np.savetxt(path, x, header="uniform sample")
    return path


def test_tau_grid():
    assert parse_tau_grid("0:6:0.5") == [0.5 * i for i in range(13)]
    assert parse_tau_grid("1, 2,4") == [1.0, 2.0, 4.0]
    with pytest.raises(ValueError):
        parse_tau_grid("0:1")


@pytest.mark.parametrize("method", ["rayleigh", "bingham", "score:3", "jupp", "adapted"])
def test_test_command(capsys, data_file, method):
    code, out, _ = run(capsys, "test", "--input", str(data_file), "--method", method)
    assert code == 0
    res = json.loads(out)
    assert res["method"] == method and res["alpha"] == 0.05
    assert isinstance(res["reject"], bool) and 0 <= res["p_value"] <= 1
    if method in ("jupp", "adapted"):
        assert 1 <= res["selected_k"] <= 10


def test_test_command_renormalize(capsys, tmp_path):
    path = tmp_path / "y.csv"
    path.write_text("2,0,0\n0,3,0\n0,0,0.5\n1,1,1\n")
    code, _, err = run(capsys, "test", "--input", str(path), "--method", "rayleigh")
    assert code == 1 and "norm" in err.lower()
    code, out, _ = run(capsys, "test", "--input", str(path), "--method", "rayleigh",
                       "--renormalize")
    assert code == 0 and json.loads(out)["dof"] == 3


def test_power_command(capsys):
    code, out, _ = run(capsys, "power", "--model", "watson", "--test", "adapted",
                       "--tau-grid", "0:6:0.5")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 13 and list(rows[0]) == ["tau", "xi_1", "xi_2", "power"]
    assert float(rows[0]["power"]) == pytest.approx(0.05)
    assert float(rows[8]["tau"]) == 4
    assert float(rows[8]["xi_2"]) == pytest.approx(4 * 4**4 / 45)


def test_kernel_command(capsys):
    code, out, _ = run(capsys, "kernel", "--k", "4", "--d", "3", "--t", "0.3")
    assert code == 0
    lines = out.splitlines()
    assert float(lines[0].split("=")[1]) == pytest.approx(kernel_h(4, 0.3, 3), rel=1e-11)
    assert lines[1] == f"d_4 = {harmonic_dimension(4, 3)}"


def test_calibrate_command(capsys):
    code, out, _ = run(capsys, "calibrate", "--method", "rayleigh", "--n", "50",
                       "--reps", "200", "--seed", "3")
    assert code == 0 and 2 < float(out) < 15
    code, _, err = run(capsys, "calibrate", "--method", "rayleigh", "--n", "50",
                       "--reps", "20")
    assert code == 1 and "reps" in err


def test_simulate_command(capsys, tmp_path):
    cfg = tmp_path / "grid.yaml"
    cfg.write_text("n_values: [30]\nell_values: [4]\ntau_values: [0, 2]\n"
                   "families: [watson]\nreps: 20\n")
    out = tmp_path / "res"
    code, stdout, _ = run(capsys, "simulate", "--config", str(cfg), "--out", str(out),
                          "--format", "json", "--threads", "2")
    assert code == 0 and "4 rows" in stdout
    assert len(read_results(out / "rejections.json")) == 4
    assert (out / "plot_rejections.py").exists()


@pytest.mark.parametrize("argv", [
    ["test", "--input", "nope.txt", "--method", "jupp"],
    ["power", "--model", "cauchy", "--test", "jupp"],
    ["kernel", "--k", "two", "--d", "3", "--t", "0"],
    ["kernel", "--k", "2", "--d", "1", "--t", "0"],
    ["frobnicate"],
])
def test_usage_errors_exit_1(capsys, argv):
    assert run(capsys, *argv)[0] == 1


def test_bad_method_exit_1(capsys, data_file):
    assert run(capsys, "test", "--input", str(data_file), "--method", "kuiper")[0] == 1


def test_bad_config_exit_1(capsys, tmp_path):
    cfg = tmp_path / "bad.yaml"
    cfg.write_text("speed: 3\n")
    assert run(capsys, "simulate", "--config", str(cfg), "--out", str(tmp_path))[0] == 1


def test_runtime_failure_exit_2(capsys, monkeypatch, tmp_path):
    import sobolev_sphere.cli as cli

    def boom(*a, **k):
        raise RuntimeError("disk on fire")
    monkeypatch.setattr(cli, "run_experiment", boom)
    cfg = tmp_path / "g.yaml"
    cfg.write_text("reps: 1\n")
    assert run(capsys, "simulate", "--config", str(cfg), "--out", str(tmp_path))[0] == 2
