"""Job parsing, artifact emission, exit codes, determinism."""

import json

import pytest

from vlike.cli import (ConfigError, emit_dimension_table, main,
                       parse_element_json, parse_job, run_job_file)
from vlike.hw import DimensionReport
from vlike.lattice import d_gen, vec

EVEN_FUNCTIONAL = {
    "det": 1,
    "terms": [{"alpha": "1/1", "coeffs": ["1/1"]},
              {"alpha": "-1/1", "coeffs": ["1/1"]}],
}


def job_file(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


def test_parse_job_validation():
    with pytest.raises(ConfigError):
        parse_job({"command": "unknown", "output": {"path": "x", "format": "json"}})
    with pytest.raises(ConfigError):
        parse_job({"command": "bracket", "output": {"path": "x", "format": "xml"}})
    with pytest.raises(ConfigError):
        parse_job({"command": "verma-dims",
                   "output": {"path": "x", "format": "csv"}})
    with pytest.raises(ConfigError):
        parse_job({"command": "bracket"})


def test_parse_element():
    elem = parse_element_json({"d": [[1, 0, "2/1"], [1, 0, 1]], "c1": "1/2"})
    assert elem == 3 * d_gen(vec(1, 0)) + parse_element_json({"c1": "1/2"})
    with pytest.raises(ConfigError):
        parse_element_json({"d": [["a", 0, "1/1"]]})
    with pytest.raises(ValueError):
        parse_element_json({"d": [[1, 0, "0.5"]]})


def test_bracket_job(tmp_path):
    job = job_file(tmp_path, "job.json", {
        "command": "bracket",
        "params": {"x": {"d": [[1, 0, "1/1"]]}, "y": {"d": [[0, 1, "1/1"]]}},
        "output": {"path": "out.json", "format": "json"},
    })
    out = run_job_file(job, base_dir=tmp_path)
    assert json.loads(out.read_text()) == {"result": "-1*D(1,1)"}


def test_verma_dims_job(tmp_path):
    job = job_file(tmp_path, "job.json", {
        "command": "verma-dims",
        "functional": EVEN_FUNCTIONAL,
        "params": {"max_level": 2, "band": 2, "raising_band": 2},
        "output": {"path": "dims.csv", "format": "csv"},
    })
    out = run_job_file(job, base_dir=tmp_path)
    lines = out.read_text().splitlines()
    assert lines[0] == "level,dim,band,stabilized,lowerbound,upperbound"
    assert lines[1] == "0,1,2,true,1,1"
    assert lines[2].startswith("1,2,2,true,")
    assert len(lines) == 4


def test_heisenberg_job(tmp_path):
    job = job_file(tmp_path, "job.json", {
        "command": "heisenberg-period",
        "functional": EVEN_FUNCTIONAL,
        "params": {"bound": 10, "base_exp": 0},
        "output": {"path": "period.json", "format": "json"},
    })
    out = run_job_file(job, base_dir=tmp_path)
    payload = json.loads(out.read_text())
    assert payload["period"] == 2
    assert payload["stabilized"] is True
    assert payload["irreducible"] is True


def test_z2_dims_job(tmp_path):
    job = job_file(tmp_path, "job.json", {
        "command": "z2-dims",
        "functional": EVEN_FUNCTIONAL,
        "params": {"start_exp": 0, "window": 2, "band": 2},
        "output": {"path": "z2.csv", "format": "csv"},
    })
    out = run_job_file(job, base_dir=tmp_path)
    lines = out.read_text().splitlines()
    assert lines[0].startswith("# ") and "window=2" in lines[0]
    assert lines[1] == "m,k,dim"
    table = {tuple(map(int, line.split(",")[:2])): int(line.split(",")[2])
             for line in lines[2:]}
    assert table[(0, 0)] == 1
    assert table[(0, 1)] == 0


def test_sl2_job(tmp_path):
    job = job_file(tmp_path, "job.json", {
        "command": "sl2-check",
        "params": {"dim": 1, "alpha1": "0/1", "alpha2": "0/1", "window": 2},
        "output": {"path": "sl2.json", "format": "json"},
    })
    out = run_job_file(job, base_dir=tmp_path)
    payload = json.loads(out.read_text())
    assert payload["verdict"] == "REDUCIBLE"
    assert payload["witness"] == {"cell": [0, 0], "vector": ["1/1"]}
    assert payload["sign"] == 1


def test_falsify_job(tmp_path):
    job = job_file(tmp_path, "job.json", {
        "command": "falsify-intermediate",
        "params": {"a": "1/1", "k": 1, "lmax": 4},
        "output": {"path": "cert.json", "format": "json"},
    })
    out = run_job_file(job, base_dir=tmp_path)
    payload = json.loads(out.read_text())
    assert payload == {"C": "1/1", "a": "1/1", "failure_l": 2, "k": 1,
                       "residue": "1/1"}


def test_recurrence_job(tmp_path):
    job = job_file(tmp_path, "job.json", {
        "command": "recurrence-detect",
        "functional": EVEN_FUNCTIONAL,
        "params": {"max_order": 4, "window": [-10, 10]},
        "output": {"path": "rec.json", "format": "json"},
    })
    out = run_job_file(job, base_dir=tmp_path)
    payload = json.loads(out.read_text())
    assert payload["coeffs"] == ["-1/1", "0/1", "1/1"]
    assert payload["identically_zero"] is False


def test_emitted_json_reparses(tmp_path):
    job = job_file(tmp_path, "job.json", {
        "command": "verma-dims",
        "functional": EVEN_FUNCTIONAL,
        "params": {"max_level": 1, "band": 1, "raising_band": 1},
        "output": {"path": "dims.json", "format": "json"},
    })
    out = run_job_file(job, base_dir=tmp_path)
    payload = json.loads(out.read_text())
    assert payload[0]["level"] == 0 and payload[0]["dim"] == 1


def test_emit_dimension_table_sorting_and_inf():
    reports = [
        DimensionReport(level=1, dim=2, band=2, stabilized=True,
                        lower_bound=1, upper_bound=None),
        DimensionReport(level=0, dim=1, band=2, stabilized=True,
                        lower_bound=1, upper_bound=1),
    ]
    text = emit_dimension_table(reports, "csv")
    lines = text.splitlines()
    assert lines[1].startswith("0,") and lines[2].startswith("1,")
    assert lines[2].endswith(",inf")


def test_cli_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{\"command\": \"nope\"}", encoding="utf-8")
    assert main([str(bad)]) == 2

    precondition = job_file(tmp_path, "pre.json", {
        "command": "falsify-intermediate",
        "params": {"a": "0/1", "k": 1, "lmax": 4},
        "output": {"path": "never.json", "format": "json"},
    })
    assert main([str(precondition), "--out-dir", str(tmp_path)]) == 3
    err = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert err["error"] == "precondition"
    assert "a nonzero" in err["name"]
    assert not (tmp_path / "never.json").exists()

    good = job_file(tmp_path, "good.json", {
        "command": "falsify-intermediate",
        "params": {"a": "1/1", "k": 2, "lmax": 3},
        "output": {"path": "cert.json", "format": "json"},
    })
    assert main([str(good), "--out-dir", str(tmp_path)]) == 0


def test_determinism_bytes(tmp_path):
    job = job_file(tmp_path, "job.json", {
        "command": "verma-dims",
        "functional": EVEN_FUNCTIONAL,
        "params": {"max_level": 2, "band": 2, "raising_band": 2},
        "output": {"path": "dims.csv", "format": "csv"},
    })
    first = run_job_file(job, base_dir=tmp_path).read_bytes()
    second = run_job_file(job, base_dir=tmp_path).read_bytes()
    assert first == second
