import json
import os

import pytest

from conftest import FIXTURES, run_cli, run_cli_json
from supertriple.cli import main
from supertriple.io import load_system
from supertriple.systems import load_bundled


def test_verify_valid():
    code, doc = run_cli_json("verify", "l2")
    assert code == 0 and doc["status"] == "ok"
    assert doc["inputs"]["system"]["digest"].startswith("sha256:")


def test_verify_broken_names_the_axiom():
    code, doc = run_cli_json("verify", "broken_skew_l2.json")
    assert code == 1 and doc["status"] == "violations"
    first = next(a for a in doc["results"]["axioms"]["axioms"] if not a["pass"])
    assert first["axiom"] == "2.2" and first["witness"] == [0, 1, 1]


def test_cohomology_of_trivial_system():
    code, doc = run_cli_json("cohomology", "abelian1", "--n", "3", "--adjoint")
    assert code == 0
    assert doc["results"]["cohomology"]["total"]["dim_H"] == 0


def test_spaces_single_kind():
    code, doc = run_cli_json("spaces", "s11", "--kind", "der", "--k", "1")
    assert code == 0
    (space,) = doc["results"]["spaces"]
    assert (space["dim_even"], space["dim_odd"]) == (1, 1)
    assert len(space["basis_odd"]) == 1


def test_semidirect_round_trip(tmp_path):
    out = tmp_path / "sd.json"
    proc = run_cli("semidirect", "l2", "--adjoint", "-o", out)
    assert proc.returncode == 0
    from supertriple.cohomology import adjoint_representation, semidirect_sum

    L2 = load_bundled("l2")
    assert load_system(out).same_as(semidirect_sum(L2, adjoint_representation(L2)))


def test_semidirect_refuses_bad_representation(tmp_path):
    out = tmp_path / "sd.json"
    assert run_cli("semidirect", "l2", "l2_bad_rep.json", "-o", out).returncode == 1
    assert not out.exists()


def test_json_is_byte_stable():
    for args in (("theorems", "anti3"), ("nijenhuis", "check", "l2_nijenhuis.json")):
        a = run_cli(*args, "--json").stdout
        b = run_cli(*args, "--json").stdout
        assert a == b and a


def test_nijenhuis_json_shape():
    code, doc = run_cli_json("nijenhuis", "check", "l2_nijenhuis.json", "--lambdas", "3,1/3")
    assert code == 0
    assert [t["lambda"] for t in doc["results"]["trivial_witness"]] == ["3", "1/3"]


@pytest.mark.parametrize("args", [("bogus",), ("deform",), ("verify", "missing.json"),
                                  ("nijenhuis", "check", "l2_nijenhuis.json", "--lambdas", "x")])
def test_input_errors(args):
    assert run_cli(*args).returncode == 2


def test_thread_variable_is_validated():
    env = dict(os.environ, SUPERTRIPLE_THREADS="zero")
    assert run_cli("verify", "l2", env=env).returncode == 2
    env["SUPERTRIPLE_THREADS"] = "4"
    assert run_cli("verify", "l2", env=env).returncode == 0


def test_human_output(capsys, monkeypatch):
    monkeypatch.chdir(FIXTURES)
    assert main(["complex-check", "s11"]) == 0
    out = capsys.readouterr().out
    assert "d3d1|deg0" in out and out.strip().endswith("status: ok")


def test_selftest_runs():
    code, doc = run_cli_json("selftest", "--seed", "5", "--count", "3")
    assert code == 0 and len(doc["results"]["selftest"]["systems"]) == 3
    assert json.dumps(doc) == json.dumps(run_cli_json("selftest", "--seed", "5", "--count", "3")[1])
