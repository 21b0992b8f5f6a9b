import csv
import io
import json

import pytest
from click.testing import CliRunner

from refined_tr import cli
from refined_tr import curve as C
from refined_tr import maps as MP
from refined_tr.ratfun import Rat
from refined_tr.rtr import RTR

MONO = ["-p", "v=3/11,t=1/2"]


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(cli.main, list(args), catch_exceptions=False)


def test_correlator_json_round_trip(runner):
    res = invoke(runner, "rtr", "correlators", "--curve", "gbe", "--g2", "0", "--n", "3", "-p", "u=1,t=1")
    assert res.exit_code == 0
    doc = json.loads(res.stdout)
    assert doc["schema"] == cli.SCHEMA and doc["ok"] and doc["first_failure"] is None
    expr = Rat.from_json(doc["result"]["correlator"]["expr"])
    assert expr == RTR(C.catalog("gbe", dict(u=1, t=1)), K=4).omega(0, 3)
    assert all(doc["result"]["checks"].values())


def test_fgn_csv(runner, tmp_path):
    out = tmp_path / "f.csv"
    res = invoke(runner, "rtr", "fgn", "--curve", "gbe", "--g2max", "2", "--nmax", "1", "--K", "4",
                 "-p", "u=1,t=1", "--format", "csv", "--json", str(out))
    assert res.exit_code == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    table = {(r["g2"], r["mu"]): r["value"] for r in rows}
    # planar gluings of the bigon and the square: Catalan numbers 1, 2
    assert (table[("0", "2")], table[("0", "4")]) == ("1", "2")


def test_output_is_deterministic(runner, tmp_path):
    args = ["jack", "tau", "--weight", "monotone", "--dmax", "3", *MONO]
    a, b = invoke(runner, *args), invoke(runner, *args)
    assert a.exit_code == 0 and a.stdout == b.stdout


def test_maps_compare_passes(runner):
    res = invoke(runner, "maps", "fgn", "--weight", "monotone", "--g2", "0", "--mu", "1,2", *MONO, "--compare")
    assert res.exit_code == 0
    doc = json.loads(res.stdout)
    assert Rat.from_json(doc["result"]["F"]) == Rat.from_json(doc["result"]["tau_side"])


def test_check_failure_exits_one_with_witness(runner, monkeypatch):
    honest = MP.fgn_from_maps
    monkeypatch.setattr(MP, "fgn_from_maps", lambda *a, **k: honest(*a, **k) + 1)
    res = invoke(runner, "maps", "fgn", "--weight", "monotone", "--g2", "0", "--mu", "1,2", *MONO, "--compare")
    assert res.exit_code == 1
    doc = json.loads(res.stdout)
    assert not doc["ok"]
    fail = doc["first_failure"]
    assert fail["mu"] == [1, 2] and Rat.from_json(doc["result"]["F"]) != Rat.from_json(doc["result"]["tau_side"])
    assert json.loads(res.stderr.strip().splitlines()[-1])["first_failure"] == fail


@pytest.mark.parametrize("args", [
    ["rtr", "correlators", "--curve", "nope", "--g2", "0", "--n", "3"],
    ["rtr", "correlators", "--curve", "gbe", "--g2", "0", "--n", "3", "-p", "v=1"],
    ["rtr", "correlators", "--curve", "gbe", "--g2", "0", "--n", "-1"],
    ["rtr", "correlators", "--curve", "gbe", "--g2", "0", "--n", "3", "-p", "u=x"],
    ["jack", "check-lk", "--weight", "main"],
    ["jack", "fgn", "--weight", "monotone", "--g2", "0", "--mu", "0"],
    ["faces", "curve", "--weight", "gbe", "--D", "2", "--potential", "1"],
    ["ensembles", "compare", "--model", "gbe", "--beta", "-1", "--N", "2"],
    ["ensembles", "compare", "--model", "jbe", "--beta", "1", "--N", "1", "--monte-carlo", "10"],
    ["verify", "all", "--only", "12"],
])
def test_invalid_configs_exit_two(runner, args):
    assert invoke(runner, *args).exit_code == 2


def test_config_file(runner, tmp_path):
    cfg = {"command": "maps fgn", "weight": "monotone", "bounds": {"g2": 0}, "params": {"v": "3/11", "t": "1/2"},
           "options": {"mu": [1, 2], "compare": True}, "output": str(tmp_path / "out.json")}
    path = tmp_path / "job.json"
    path.write_text(json.dumps(cfg))
    res = invoke(runner, "run", str(path))
    assert res.exit_code == 0
    doc = json.loads((tmp_path / "out.json").read_text())
    assert doc["config"]["command"] == "maps fgn" and doc["ok"]


@pytest.mark.parametrize("cfg", [{"command": "nope"}, {"command": "maps fgn", "bogus": 1},
                                 {"command": "jack tau", "weight": "gbe", "bounds": {"d_max": 0, "h_max": 1}}])
def test_bad_config_file(runner, tmp_path, cfg):
    path = tmp_path / "job.json"
    path.write_text(json.dumps(cfg))
    assert invoke(runner, "run", str(path)).exit_code == 2


def test_ensembles_compare_report(runner, tmp_path):
    out = tmp_path / "out.json"
    res = invoke(runner, "ensembles", "compare", "--model", "gbe", "--beta", "1", "--N", "2", "--kmax", "4",
                 "--gmax", "1", "--json", str(out))
    assert res.exit_code == 0
    report = json.loads(out.read_text())["result"]
    assert set(report) == {"1", "2", "3", "4"}
    for row in report.values():
        assert {"prediction_terms", "oracle", "residual", "expected_scale"} <= set(row)


def test_monte_carlo_seed_recorded(runner, tmp_path):
    out = tmp_path / "out.json"
    res = invoke(runner, "ensembles", "compare", "--model", "gbe", "--beta", "2", "--N", "2", "--kmax", "2",
                 "--monte-carlo", "4000", "--seed", "3", "--json", str(out))
    assert res.exit_code == 0
    mc = json.loads(out.read_text())["result"]["monte_carlo"]
    assert mc["seed"] == 3 and mc["samples"] == 4000


def test_maps_enumerate_audit(runner, tmp_path):
    out = tmp_path / "out.json"
    res = invoke(runner, "maps", "enumerate", "--d", "3", "--r", "5", "--audit", "--json", str(out))
    assert res.exit_code == 0
    result = json.loads(out.read_text())["result"]
    assert result["audit"]["nu_values"] == [1]
    assert result["total"] == sum(result["classes"].values()) == len(list(MP.generate(3, 5)))
    for m in result["audit"]["matches"]:
        assert {"d", "r", "edges", "twists", "active", "nu", "genus", "faces"} <= set(m)


def test_faces_checks(runner):
    for name in ("curve", "check-y2", "check-variation"):
        res = invoke(runner, "faces", name, "--weight", "gbe", "--D", "1", "--potential", "2/3", "-p", "u=3/5,t=1/2")
        assert res.exit_code == 0, name


def test_verify_quick_subset(runner, tmp_path, monkeypatch):
    monkeypatch.setenv("REFINED_TR_WORKERS", "2")
    out = tmp_path / "out.json"
    res = invoke(runner, "verify", "all", "--level", "quick", "--only", "3,8", "--json", str(out))
    assert res.exit_code == 0
    doc = json.loads(out.read_text())
    assert [r["criterion"] for r in doc["result"]] == [3, 8]
    assert doc["config"]["options"]["seed"] == 20240601
    assert all(r["ok"] and r["checked"] > 0 for r in doc["result"])
    assert "[PASS] criterion  3" in res.stderr


def test_bad_worker_count(runner, monkeypatch):
    monkeypatch.setenv("REFINED_TR_WORKERS", "0")
    assert invoke(runner, "verify", "all", "--only", "3").exit_code == 2
