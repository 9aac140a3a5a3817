import json
import os

import pandas as pd
from click.testing import CliRunner

from kapitza import __version__
from kapitza.cli import cli


def _read_csv(path):
    with open(path) as handle:
        header = handle.readline()
        return header, pd.read_csv(handle)


def _metadata(prefix):
    with open("{}_metadata.json".format(prefix)) as handle:
        return json.load(handle)


def test_help_and_version():
    runner = CliRunner()
    result = runner.invoke(cli, ["--help"])
    assert result.exit_code == 0
    for command in ("potential", "diffract", "trajectories", "classify", "sagnac", "tables", "figure"):
        assert command in result.output
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_list_builtins():
    result = CliRunner().invoke(cli, ["list-builtins"])
    assert result.exit_code == 0
    assert "electron" in result.output
    assert "9.109" in result.output
    assert "7-left" in result.output


def test_tables_writes_report(tmp_path):
    prefix = str(tmp_path / "out" / "run")
    result = CliRunner().invoke(cli, ["tables", "--id", "3", "--prefix", prefix])
    assert result.exit_code == 0, result.output
    header, report = _read_csv(prefix + "_tables.csv")
    assert header.startswith("# ")
    assert "frequency_convention=angular" in header
    assert len(report) == 4
    metadata = _metadata(prefix)
    assert metadata["config"]["command"] == "tables"
    assert metadata["config"]["options"]["id"] == ["3"]
    assert metadata["results"]["rows"] == 4


def test_figure_7_left_writes_spectrum(tmp_path):
    prefix = str(tmp_path / "fig7")
    result = CliRunner().invoke(cli, ["figure", "--id", "7-left", "--prefix", prefix])
    assert result.exit_code == 0, result.output
    _, spectrum = _read_csv(prefix + "_spectrum.csv")
    assert {"n", "order", "probability"} <= set(spectrum.columns)
    assert abs(spectrum.probability.sum() - 1) < 1e-6
    assert os.path.exists(prefix + "_series.csv")
    assert "max_deviation" in _metadata(prefix)["results"]["metrics"]


def test_classify_published_point(tmp_path):
    prefix = str(tmp_path / "h")
    result = CliRunner().invoke(cli, ["classify", "--point", "H", "--prefix", prefix])
    assert result.exit_code == 0, result.output
    assert _metadata(prefix)["results"]["label"] == "lens"


def test_config_file_and_flag_precedence(tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"velocity": 500.0, "contrast": 0.5}))
    runner = CliRunner()
    prefix = str(tmp_path / "file")
    result = runner.invoke(cli, ["sagnac", "--config", str(config), "--prefix", prefix])
    assert result.exit_code == 0, result.output
    options = _metadata(prefix)["config"]["options"]
    assert options["velocity"] == 500.0
    assert options["contrast"] == 0.5
    prefix = str(tmp_path / "flag")
    result = runner.invoke(
        cli, ["sagnac", "--config", str(config), "--velocity", "800", "--prefix", prefix]
    )
    assert result.exit_code == 0, result.output
    options = _metadata(prefix)["config"]["options"]
    assert options["velocity"] == 800.0
    assert options["contrast"] == 0.5


def test_unknown_config_key_fails_without_outputs(tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"speed": 500.0}))
    out = tmp_path / "out"
    result = CliRunner().invoke(cli, ["sagnac", "--config", str(config), "--prefix", str(out / "s")])
    assert result.exit_code == 2
    assert '"exit_code": 2' in result.output
    assert "speed" in result.output
    assert not out.exists()


def test_malformed_config_fails_without_outputs(tmp_path):
    config = tmp_path / "config.json"
    config.write_text("{velocity: fast")
    out = tmp_path / "out"
    result = CliRunner().invoke(cli, ["sagnac", "--config", str(config), "--prefix", str(out / "s")])
    assert result.exit_code == 2
    assert not out.exists()
    config.write_text(json.dumps({"velocity": "fast"}))
    result = CliRunner().invoke(cli, ["sagnac", "--config", str(config), "--prefix", str(out / "s")])
    assert result.exit_code == 2
    assert not out.exists()


def test_unknown_particle_is_a_validation_error(tmp_path):
    result = CliRunner().invoke(
        cli, ["potential", "--particle", "Xx", "--prefix", str(tmp_path / "p")]
    )
    assert result.exit_code == 2
    assert "ValidationError" in result.output


def test_lattice_retry_limit_is_a_numerical_error(tmp_path):
    result = CliRunner().invoke(
        cli,
        [
            "diffract",
            "--intensity",
            "1e14",
            "--envelope",
            "rectangular",
            "--half_width",
            "2",
            "--prefix",
            str(tmp_path / "d"),
        ],
    )
    assert result.exit_code == 3
    assert "retry limit" in result.output
    assert not os.path.exists(str(tmp_path / "d_spectrum.csv"))


def test_output_directory_from_environment_is_reproducible(tmp_path):
    runner = CliRunner()
    outputs = []
    for name in ("first", "second"):
        directory = tmp_path / name
        result = runner.invoke(cli, ["sagnac"], env={"KAPITZA_OUTPUT_DIR": str(directory)})
        assert result.exit_code == 0, result.output
        with open(str(directory / "sagnac_sagnac.csv")) as handle:
            csv = handle.read()
        with open(str(directory / "sagnac_metadata.json")) as handle:
            outputs.append((csv, handle.read()))
    assert outputs[0] == outputs[1]


def test_table2_line_list_option(tmp_path, na_doublet):
    prefix = str(tmp_path / "t2")
    result = CliRunner().invoke(
        cli, ["tables", "--id", "2-Na", "--line_list", "Na={}".format(na_doublet), "--prefix", prefix]
    )
    assert result.exit_code == 0, result.output
    _, report = _read_csv(prefix + "_tables.csv")
    assert list(report.species) == ["Na"]
    result = CliRunner().invoke(cli, ["tables", "--id", "2", "--prefix", prefix + "x"])
    assert result.exit_code == 2


def test_figure_id_from_config_file(tmp_path):
    config = tmp_path / "figure.json"
    config.write_text(json.dumps({"id": "5"}))
    prefix = str(tmp_path / "fig5")
    result = CliRunner().invoke(cli, ["figure", "--config", str(config), "--prefix", prefix])
    assert result.exit_code == 0, result.output
    _, regime_map = _read_csv(prefix + "_regime_map.csv")
    assert len(regime_map) > 0
    assert _metadata(prefix)["config"]["options"]["id"] == "5"


def test_figure_without_id_is_a_validation_error(tmp_path):
    out = tmp_path / "out"
    result = CliRunner().invoke(cli, ["figure", "--prefix", str(out / "f")])
    assert result.exit_code == 2
    assert "ValidationError" in result.output
    assert not out.exists()


def test_list_builtins_single_preset():
    runner = CliRunner()
    result = runner.invoke(cli, ["list-builtins", "--id", "table2-Na"])
    assert result.exit_code == 0, result.output
    assert "Na at 488 nm" in result.output
    assert "requires --line_list" in result.output
    result = runner.invoke(cli, ["list-builtins", "--id", "9"])
    assert result.exit_code == 2
    assert "unknown preset" in result.output
