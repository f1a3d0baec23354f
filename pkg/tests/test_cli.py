"""Command-line interface: run, sweep, validate."""

import pytest

from tokendcf.cli import main

GOOD_CONFIG = """
[experiment]
n_transmitters = 3
duration = 0.1
runs = 1
seed = 2
"""


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "scenario.ini"
    path.write_text(GOOD_CONFIG)
    return str(path)


def test_validate_good_config(config_file, capsys):
    assert main(["validate", "--config", config_file]) == 0
    assert "config ok" in capsys.readouterr().out


def test_validate_bad_config(tmp_path, capsys):
    path = tmp_path / "bad.ini"
    path.write_text("[mac]\ncw_min = 0\n")
    assert main(["validate", "--config", str(path)]) == 2
    assert "config error" in capsys.readouterr().err


def test_missing_config_file_reports_error(tmp_path, capsys):
    assert main(["validate", "--config", str(tmp_path / "nope.ini")]) == 2
    assert "config error" in capsys.readouterr().err


def test_run_writes_results_csv(config_file, tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["run", "--config", config_file, "--out", str(out)]) == 0
    assert (out / "results.csv").exists()
    assert "throughput" in capsys.readouterr().out


def test_sweep_writes_csv_and_plot_data(config_file, tmp_path):
    out = tmp_path / "sweep"
    assert main(["sweep", "--config", config_file, "--param", "n_transmitters",
                 "--values", "2,3", "--out", str(out)]) == 0
    assert (out / "results.csv").exists()
    assert (out / "throughput_bps_dcf.dat").exists()
    assert (out / "throughput_bps_token_dcf.dat").exists()


def test_sweep_unknown_param_errors(config_file, tmp_path, capsys):
    assert main(["sweep", "--config", config_file, "--param", "nonsense",
                 "--values", "1,2", "--out", str(tmp_path / "x")]) == 2
    assert "sweep error" in capsys.readouterr().err
