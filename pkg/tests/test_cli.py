import json

import pytest

from instanton4.cli import SUITE, run
from instanton4.field import Field
from instanton4.geometry import five_secant, five_secant_config, LineConfiguration
from instanton4.io import ConfigError, dumps, load_reports, read_config, write_json


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for k in ("SEED", "P", "RATIONALS", "CONFIG", "OUT", "SAMPLES", "N"):
        monkeypatch.delenv("INSTANTON4_" + k, raising=False)


def test_gen_config_has_no_five_secant(tmp_path, capsys):
    out = tmp_path / "cfg.json"
    assert run(["gen-config", "--n", "5", "--seed", "7", "--out", str(out)]) == 0
    cfg = read_config(out)
    assert len(cfg) == 5 and cfg.is_skew
    assert five_secant(cfg).status == "none"
    data = json.loads(out.read_text())
    assert set(data) >= {"field", "lines", "plucker", "ideals", "seed"}
    assert json.loads(capsys.readouterr().out) == data


def test_five_secant_config_fails_with_witness(tmp_path):
    cfg = tmp_path / "bad.json"
    write_json(cfg, five_secant_config(Field()).to_json())
    out = tmp_path / "rep.json"
    assert run(["check", "five-secant", "--config", str(cfg), "--out", str(out)]) == 1
    rep = json.loads(out.read_text())
    assert rep["status"] == "fail"
    assert rep["details"]["witness"]["ideal"] == ["x0 - x1", "x2 - x3"]
    assert set(rep) == {"check", "field", "seed", "a", "status", "details"}


@pytest.mark.parametrize("text", ["{not json", "[]", '{"lines": [[[1, 0, 0, 0]]]}', '{"lines": []}'])
def test_unparseable_config_exit_2(tmp_path, text):
    cfg = tmp_path / "c.json"
    cfg.write_text(text)
    assert run(["check", "five-secant", "--config", str(cfg)]) == 2


def test_missing_config_exit_2(tmp_path):
    assert run(["check", "sigma-epi", "--config", str(tmp_path / "nope.json")]) == 2


def test_precondition_exit_3(tmp_path):
    meeting = {"lines": [[[1, 0, 0, 0], [0, 1, 0, 0]], [[1, 0, 0, 0], [0, 0, 1, 0]], [[0, 0, 0, 1], [0, 0, 1, 1]],
                         [[1, 2, 3, 4], [4, 3, 2, 2]], [[1, 1, 1, 2], [3, 1, 4, 1]]]}
    cfg = tmp_path / "m.json"
    cfg.write_text(json.dumps(meeting))
    assert run(["check", "sigma-epi", "--config", str(cfg)]) == 3
    four = tmp_path / "four.json"
    run(["gen-config", "--n", "4", "--seed", "1", "--out", str(four)])
    assert run(["check", "cohomology-iy3", "--config", str(four)]) == 3


def test_bad_prime_exit_2():
    assert run(["check", "five-secant", "--p", "32001"]) == 2


def test_sigma_records_coefficients(tmp_path):
    out = tmp_path / "s.json"
    assert run(["check", "sigma-epi", "--seed", "5", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["a"] is not None and len(rep["a"]) == 3
    assert rep["details"]["attempts"][-1] == rep["a"]
    assert rep["details"]["chern_kernel"] == {"rank": 2, "c1": -4, "c2": 8, "c3": 0}


def test_degenerate_coefficients_exit_1(tmp_path):
    assert run(["check", "sigma-epi", "--seed", "5", "--a", "1", "0", "0"]) == 1


def test_details_are_byte_identical_across_runs(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert run(["check", "triple-quadric", "--seed", "3", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_environment_gives_defaults_and_flags_win(tmp_path, monkeypatch):
    monkeypatch.setenv("INSTANTON4_SEED", "11")
    out = tmp_path / "e.json"
    run(["check", "five-secant", "--out", str(out)])
    assert json.loads(out.read_text())["seed"] == 11
    run(["check", "five-secant", "--seed", "12", "--out", str(out)])
    assert json.loads(out.read_text())["seed"] == 12
    monkeypatch.setenv("INSTANTON4_P", "10007")
    run(["check", "five-secant", "--out", str(out)])
    assert json.loads(out.read_text())["field"] == {"p": 10007}


def test_rationals_mode(tmp_path):
    out = tmp_path / "q.json"
    assert run(["check", "five-secant", "--rationals", "--seed", "2", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["field"] == {"rationals": True}


def test_verify_all_and_report(tmp_path, capsys):
    out = tmp_path / "all.json"
    assert run(["verify", "all", "--seed", "42", "--p", "32003", "--out", str(out)]) == 0
    suite = json.loads(out.read_text())
    assert [r["check"] for r in suite["reports"]] == sorted(SUITE)
    assert all(r["status"] == "pass" for r in suite["reports"])
    capsys.readouterr()
    assert run(["report", str(out)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == len(SUITE) and all("PASS" in ln for ln in lines)


def test_report_of_failure(tmp_path):
    rep = tmp_path / "r.json"
    write_json(rep, {"check": "x", "field": {"p": 7}, "seed": 0, "a": None, "status": "fail", "details": {}})
    assert run(["report", str(rep)]) == 1
    assert load_reports(rep)[0]["check"] == "x"


def test_io_helpers(tmp_path):
    assert dumps({"b": 1, "a": 2}).index('"a"') < dumps({"b": 1, "a": 2}).index('"b"')
    with pytest.raises(ConfigError):
        read_config(tmp_path / "missing.json")
    cfg = LineConfiguration.from_json({"lines": [[[1, 0, 0, 0], [0, 1, 0, 0]]]})
    assert cfg.field == Field(32003)
