import csv
import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from modp_lab import cli, report
from modp_lab.checks import REGISTRY, SUITES, lemma_ids
from modp_lab.report import ConfigError, RunConfig, dumps, load_json, run_suite

GOLDEN = Path(__file__).parent / "golden"


def _run(args, tmp_path, name="out.json"):
    out = tmp_path / name
    code = cli.main(args + ["--emit", str(out)])
    return code, out.read_bytes()


@pytest.mark.parametrize("name,args,code", [
    ("verify_p7_f1", ["verify", "all", "--p", "7", "--f", "1", "--r", "2"], 1),
    ("verify_p11_f2", ["verify", "all", "--p", "11", "--f", "2", "--r", "3,4", "--jrho", "0"], 0),
    ("d0_p11_f2", ["d0", "--p", "11", "--f", "2", "--r", "3,4", "--jrho", "0"], 0),
])
def test_golden_reports(name, args, code, tmp_path):
    got_code, got = _run(args, tmp_path)
    assert got_code == code
    assert got == (GOLDEN / f"{name}.json").read_bytes()


def test_lemma_ids_unique_and_suites_known():
    ids = lemma_ids()
    assert len(ids) == len(set(ids)) == 37
    assert {c.suite for c in REGISTRY} == set(SUITES)


def test_config_validation():
    for bad in (RunConfig(p=6), RunConfig(p=3), RunConfig(f=4), RunConfig(f=2, r=(3,)),
                RunConfig(p=7, f=1, r=(7,)), RunConfig(jrho=(5,)), RunConfig(cutoff=0),
                RunConfig(suite="nope")):
        with pytest.raises(ConfigError):
            bad.validated()
    assert RunConfig(p=11, f=2).validated().r == report.default_r(11, 2)


def test_exit_code_two_on_bad_config(capsys):
    assert cli.main(["verify", "--p", "6"]) == 2
    assert "config error" in capsys.readouterr().err
    assert cli.main(["koszul", "--kind", "type_0", "--p", "5", "--f", "1"]) == 2
    assert cli.main(["verify", "--r", "a,b"]) == 2


def test_json_roundtrip_and_csv_rows():
    rep = run_suite(RunConfig(p=11, f=1, r=(4,), jrho=(0,), suite="weights"))
    data = load_json(dumps(rep))
    assert data["records"] == rep.to_json()["records"]
    assert data["summary"]["n"] == len(rep.records)
    rows = list(csv.reader(io.StringIO(dumps(rep, "csv"))))
    assert rows[0] == ["id", "suite", "verdict", "params", "witness"]
    assert len(rows) - 1 == len(rep.records)
    with pytest.raises(ValueError):
        load_json(json.dumps({"schema": "other"}))


def test_timing_only_when_requested():
    rep = run_suite(RunConfig(p=11, f=1, r=(4,), suite="weights"))
    assert "timing_ms" not in dumps(rep)
    assert "timing_ms" in dumps(rep, timing=True)


def test_determinism_and_threads(tmp_path, monkeypatch):
    args = ["verify", "iwahori", "--p", "13", "--f", "2", "--r", "4,5", "--jrho", "0,1", "--seed", "3"]
    _, a = _run(args, tmp_path, "a.json")
    _, b = _run(args, tmp_path, "b.json")
    monkeypatch.setenv("MODP_LAB_THREADS", "4")
    _, c = _run(args, tmp_path, "c.json")
    assert a == b == c


def test_koszul_suite_passes_for_several_seeds():
    a = run_suite(RunConfig(p=13, f=2, r=(4, 5), seed=1, suite="koszul"))
    b = run_suite(RunConfig(p=13, f=2, r=(4, 5), seed=2, suite="koszul"))
    assert a.ok and b.ok


def test_skip_does_not_fail():
    rep = run_suite(RunConfig(p=11, f=1, r=(1,), suite="d0"))
    assert {r["verdict"] for r in rep.records} == {"skip"}
    assert rep.exit_code() == 0


def test_subcommands(tmp_path, capsys):
    code, out = _run(["iwahori", "--p", "11", "--f", "2", "--chi", "5,1", "--op", "wbar3"], tmp_path)
    assert code == 0 and json.loads(out)["payload"]["Wbar3"]["layers"]
    code, out = _run(["iwahori", "--p", "11", "--f", "2", "--chi", "5,1", "--op", "tauj", "--J", "1"], tmp_path)
    assert code == 0 and len(json.loads(out)["payload"]["jh"]) == 2 * 3 * 5
    code, out = _run(["iwahori", "--p", "11", "--f", "1", "--chi", "5,1", "--op", "theta"], tmp_path)
    assert code == 0
    code, out = _run(["koszul", "--kind", "type_e", "--p", "7", "--f", "1", "--cutoff", "8"], tmp_path)
    assert code == 0 and json.loads(out)["payload"]["exactness"]["exact"]
    code, out = _run(["defring", "--f", "2", "--srho", "0,1", "--J", "0", "--I", "+0", "--check", "tangent"],
                     tmp_path)
    assert code == 0 and json.loads(out)["payload"]["tangent_dims_reference"]["J"] == 8
    code, out = _run(["defring", "--f", "1", "--srho", "0", "--I", "+0", "--check", "cyclic"], tmp_path)
    assert code == 0
    code, out = _run(["defring", "--f", "1", "--srho", "0", "--check", "divis"], tmp_path)
    assert code == 0
    assert cli.main(["defring", "--f", "1", "--J", "0", "--check", "divis"]) == 2
    assert cli.main(["ids"]) == 0
    assert "P-tau-rho" in capsys.readouterr().out


def test_csv_stdout(capsys):
    assert cli.main(["verify", "weights", "--p", "11", "--f", "1", "--r", "4", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("id,suite,verdict") and len(lines) == 6


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "modp_lab.cli", "verify", "--p", "6"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
