import json
import subprocess
import sys

import jsonschema
import pytest

from knotcert.cli import main
from knotcert.obstruction import shipped_ledger_path
from knotcert.primegen import generate_family

from oracles import KNOTS, has_float, schema

K1 = str(KNOTS / "k1_single.json")
TREFOIL = str(KNOTS / "trefoil.json")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def ok(capsys, name, *argv):
    code, out = run(capsys, *argv)
    assert code == 0, out
    doc = json.loads(out)
    jsonschema.validate(doc, schema(name))
    assert not has_float(doc)
    return doc


def test_alexander(capsys):
    doc = ok(capsys, "alexander", "alexander", TREFOIL)
    assert doc["coefficients"] == [1, -1, 1] and not doc["trivial"]


def test_cover(capsys):
    doc = ok(capsys, "cover", "cover", K1, "--difference", "--eigenspaces")
    assert doc["invariant_factors"] == [7, 7, 7, 7]


def test_metabolizers(capsys):
    doc = ok(capsys, "metabolizers", "metabolizers", K1, "--difference", "--list")
    assert doc["count"] == 16 and doc["equivariant"] == {"7": 10}


@pytest.mark.parametrize("args", [
    ["--r", "1/3"], ["--profile"], ["--profile", "--denominator", "12"],
    ["--sum", "--p", "7", "--c", "2", "--b", "1"], ["--negative-b", "--p", "7", "--c", "2"],
])
def test_signature(capsys, args):
    ok(capsys, "signature", "signature", TREFOIL, *args)


def test_dnorm(capsys):
    doc = ok(capsys, "dnorm", "dnorm", "2", "7")
    assert isinstance(doc["verdict"], bool)


def test_family(capsys, tmp_path):
    doc = ok(capsys, "family", "family", "--count", "3")
    assert [(e["n"], e["p"], e["q"]) for e in doc] == [(1, 7, 1), (6, 127, 1), (888, 2368297, 1)]
    for e in doc:
        jsonschema.validate(e, schema("family_element"))
    code, out = run(capsys, "family", "--count", "3", "--jsonl")
    assert code == 0 and len(out.splitlines()) == 3


def test_obstruct_single(capsys):
    doc = ok(capsys, "certificate", "obstruct", K1, "--difference")
    assert doc["verdict"] == "obstructed"
    doc = ok(capsys, "certificate", "obstruct", K1, "--difference", "--no-ledger")
    assert doc["verdict"] == "inconclusive"


def test_obstruct_family(capsys, tmp_path):
    f = tmp_path / "fam.jsonl"
    f.write_text(generate_family(2).to_jsonl())
    doc = ok(capsys, "certificate", "obstruct", "--family", str(f), "--coeffs", "1=1")
    assert doc["verdict"] == "obstructed"


def test_ledger_env(capsys, monkeypatch, tmp_path):
    empty = tmp_path / "ledger.json"
    empty.write_text("[]")
    monkeypatch.setenv("KNOTCERT_LEDGER", str(empty))
    assert ok(capsys, "certificate", "obstruct", K1, "--difference")["verdict"] == "inconclusive"
    code, out = run(capsys, "obstruct", K1, "--difference", "--ledger", shipped_ledger_path())
    assert json.loads(out)["verdict"] == "obstructed"


def test_shipped_ledger_matches_schema():
    with open(shipped_ledger_path(), encoding="utf-8") as fh:
        jsonschema.validate(json.load(fh), schema("ledger"))


def test_verify_reduction(capsys):
    doc = ok(capsys, "reduction", "verify-reduction", str(KNOTS / "k1_plus_double.json"))
    assert doc["identical"]


def test_out_flag(capsys, tmp_path):
    out = tmp_path / "a.json"
    code, text = run(capsys, "--out", str(out), "alexander", TREFOIL)
    assert code == 0 and text == ""
    jsonschema.validate(json.loads(out.read_text()), schema("alexander"))


def test_deterministic_output(capsys):
    a = run(capsys, "obstruct", K1, "--difference")[1]
    b = run(capsys, "obstruct", K1, "--difference", "--workers", "2")[1]
    assert a == b


def test_domain_error_exit_1(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("[[1, 2], [3]]")
    code, out = run(capsys, "alexander", str(bad))
    assert code == 1
    jsonschema.validate(json.loads(out), schema("error"))
    code, out = run(capsys, "alexander", str(tmp_path / "missing.json"))
    assert code == 1
    bad.write_text('{"entries": []}')
    code, out = run(capsys, "obstruct", K1, "--ledger", str(bad))
    assert code == 1
    code, out = run(capsys, "signature", TREFOIL, "--sum", "--p", "7", "--c", "3", "--b", "1")
    assert code == 1


@pytest.mark.parametrize("argv", [
    [], ["bogus"], ["alexander", TREFOIL, "--frobnicate"], ["obstruct", K1, "--diff"],
    ["signature", TREFOIL], ["family"],
])
def test_usage_error_exit_2(argv):
    with pytest.raises(SystemExit) as e:
        main(argv)
    assert e.value.code == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "knotcert", "alexander", TREFOIL],
                       capture_output=True, text=True, check=True)
    assert json.loads(r.stdout)["trivial"] is False
