import json

import jsonschema
import pytest

SYNTH = {"coefficients": {"B": 0.1, "C": 1.0, "P": 1.0}}


def write_config(tmp_path, **extra):
    cfg = dict(SYNTH, output=str(tmp_path / "out"), **extra)
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    return path


@pytest.mark.parametrize(
    "command,extra",
    [
        ("derive-params", {"N": [4, 8]}),
        ("spectrum", {"N": [4, 6], "schemes": ["ORFD", "FD"], "xi": [0, 1]}),
        ("simulate", {"N": 5, "T": 1, "snapshot_stride": 64}),
        ("observability", {"N": [4], "T": 7, "initial": {"type": "random"}, "draws": 2}),
    ],
)
def test_summaries_match_schema(cli, schema, tmp_path, command, extra):
    cfg = write_config(tmp_path, **extra)
    res = cli(command, "-c", cfg, "-q")
    assert res.returncode == 0, res.stderr
    summary = json.loads((tmp_path / "out" / f"{command}-summary.json").read_text())
    jsonschema.validate(summary, schema(command))
    assert summary["ok"] is True


@pytest.mark.parametrize(
    "command,extra,needle",
    [
        ("spectrum", {"N": []}, "N"),
        ("simulate", {"dt": 0}, "dt"),
        ("simulate", {"dt": -0.1}, "dt"),
        ("observability", {"T": 5}, "T"),
        ("observability", {"xi": [0, 2]}, "xi"),
        ("simulate", {"schemes": ["spline"]}, "schemes"),
    ],
)
def test_validation_errors_exit_1(cli, tmp_path, command, extra, needle):
    res = cli(command, "-c", write_config(tmp_path, **extra), "-q")
    assert res.returncode == 1
    assert needle in res.stderr


def test_overrides_and_stdout(cli, tmp_path):
    res = cli("derive-params", "-c", write_config(tmp_path), "--set", "N=[7]", "--seed", "9")
    assert res.returncode == 0, res.stderr
    out = json.loads(res.stdout)
    assert out["seed"] == 9 and out["config"]["N"] == [7]


def test_missing_config_file(cli, tmp_path):
    res = cli("spectrum", "-c", tmp_path / "nope.json")
    assert res.returncode != 0


def test_shipped_configs_parse(cli, config_dir, tmp_path):
    res = cli("derive-params", "-c", config_dir / "table1.json", "-o", tmp_path, "-q")
    assert res.returncode == 0, res.stderr
    summary = json.loads((tmp_path / "derive-params-summary.json").read_text())
    assert summary["coefficients"]["B"] == pytest.approx(1011.3177548531687, rel=1e-12)
    assert all(not s["holds"] for s in summary["large_shear"])
