import csv
import json

import pytest

from mvcs import cli
from mvcs.presets import PRESETS, ConfigError, RunConfig

EXPECTED_RED = {"dependent-sum-printed", "tensored-jc-printed-norm", "two-mode-printed-density"}


def verify(tmp_path, *args):
    out = tmp_path / "out"
    code = cli.main(["verify", *args, "--out", str(out), "--no-timestamp"])
    return code, out


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_every_preset(tmp_path, name):
    code, out = verify(tmp_path, "--preset", name)
    report = json.loads((out / "report.json").read_text())
    assert report["n_checks"] > 0
    assert all(c["provenance"] in ("closed-form", "derived-oracle", "trivial") for c in report["checks"])
    assert all(c["passed"] == (c["residual"] <= c["tolerance"]) for c in report["checks"]
               if isinstance(c["residual"], float))
    if name in EXPECTED_RED:
        assert code == 1 and not report["passed"]
    else:
        assert code == 0 and report["passed"], [c["name"] for c in report["checks"] if not c["passed"]]


def test_printed_density_names_failing_moment(tmp_path):
    code, out = verify(tmp_path, "--preset", "two-mode-printed-density")
    report = json.loads((out / "report.json").read_text())
    failed = [c["name"] for c in report["checks"] if not c["passed"]]
    assert any("moment n=0" in n for n in failed)
    rows = list(csv.DictReader((out / "moments.csv").open()))
    assert rows and rows[0]["grid"] == "printed radial density"


def test_missing_config_writes_nothing(tmp_path, capsys):
    code, out = verify(tmp_path, "--config", str(tmp_path / "missing.json"))
    assert code == 2
    assert not out.exists()
    assert "cannot read config" in capsys.readouterr().err


@pytest.mark.parametrize("payload", ['{"preset": "nope"}', '{"preset": "octonion", "cutoff": 0}',
                                     '{"preset": "octonion", "tol": -1}', '{"preset": "octonion", "extra": 1}',
                                     '[1, 2]', '{not json', '{"preset": "octonion", "schema_version": 2}'])
def test_invalid_config(tmp_path, payload):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(payload)
    code, out = verify(tmp_path, "--config", str(cfg))
    assert code == 2
    assert not out.exists()


def test_deterministic_and_parallel(tmp_path):
    _, a = verify(tmp_path / "a", "--preset", "quaternion-complex")
    _, b = verify(tmp_path / "b", "--preset", "quaternion-complex", "--parallel")
    for f in ("report.json", "moments.csv", "spectrum.csv"):
        assert (a / f).read_bytes() == (b / f).read_bytes()


def test_timestamp_flag(tmp_path):
    out = tmp_path / "t"
    cli.main(["verify", "--preset", "octonion", "--out", str(out)])
    assert "timestamp" in json.loads((out / "report.json").read_text())


def test_tol_override_makes_checks_fail(tmp_path):
    code, out = verify(tmp_path, "--preset", "quaternion-complex", "--tol", "1e-300")
    report = json.loads((out / "report.json").read_text())
    assert code == 1
    assert report["config"]["tol"] == 1e-300


def test_config_file_with_suites(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"schema_version": 1, "preset": "two-mode", "suites": ["jc"], "cutoff": 30}))
    code, out = verify(tmp_path, "--config", str(cfg))
    report = json.loads((out / "report.json").read_text())
    assert code == 0
    assert {c["suite"] for c in report["checks"]} == {"jc"}
    rows = list(csv.reader((out / "spectrum.csv").open()))
    assert rows[0] == ["n", "m", "E_plus", "E_minus"]
    assert len(rows) == 1 + 121


def test_inline_families(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"families": [
        {"type": "quaternion-real", "params": {"a": [0.3, 0.1, 0.0, 0.2], "zeta": 0.5}},
        {"type": "quaternion-real", "params": {"a": [0.0, 0.4, 0.4, 0.0], "zeta": 1.5},
         "weight": {"kind": "factorial", "scale": 2.0}}]}))
    code, out = verify(tmp_path, "--config", str(cfg))
    assert code == 0
    report = json.loads((out / "report.json").read_text())
    assert {c["suite"] for c in report["checks"]} == {"conditions", "norms"}


def test_inline_family_errors():
    with pytest.raises(ConfigError):
        RunConfig.from_dict({"preset": "octonion", "families": []})
    with pytest.raises(ConfigError):
        RunConfig.from_dict({})
    with pytest.raises(ConfigError):
        RunConfig.from_dict({"preset": "octonion", "suites": ["bogus"]})


def test_list_presets(capsys):
    assert cli.main(["list-presets"]) == 0
    text = capsys.readouterr().out
    for name in PRESETS:
        assert name in text


def test_export_state(capsys):
    assert cli.main(["export-state", "--preset", "quaternion-complex", "--cutoff", "20",
                     "--params", '{"q1": {"r": 0.4}}']) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["states"]) == 2
    total = sum(a * a + b * b for s in data["states"] for a, b in s["coeffs"])
    assert total == pytest.approx(1.0, abs=1e-12)
    assert data["states"][0]["label"]["q1[0]"]["r"] == 0.4


@pytest.mark.parametrize("args", [["--preset", "octonion"], ["--preset", "dependent-sum", "--params", '{"s": 2}'],
                                  ["--preset", "two-mode", "--params", "[1]"]])
def test_export_state_errors(capsys, args):
    assert cli.main(["export-state", *args]) == 2
    assert "error" in capsys.readouterr().err


def test_suite_error_becomes_failed_check(tmp_path):
    code, out = verify(tmp_path, "--preset", "quaternion-complex", "--nodes", "3")
    report = json.loads((out / "report.json").read_text())
    assert code == 1
    bad = [c for c in report["checks"] if not c["passed"]]
    assert [c["name"] for c in bad] == ["moments: suite raised QuadratureError"]


@pytest.mark.parametrize("families", [[{"type": "nope"}],
                                      [{"type": "quaternion-real"}, {"type": "octonion-left"}],
                                      [{"type": "quaternion-real", "weight": {"kind": "matrix"}}], []])
def test_inline_family_validation(tmp_path, families):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"families": families}))
    code, out = verify(tmp_path, "--config", str(cfg))
    assert code == 2
    assert not out.exists()
