import io
import json
import subprocess
import sys

import pytest
from hypothesis import given, settings

from knotcert.cli import run
from knotcert.coprimality import Relation, strongly_coprime
from knotcert.family import from_json, structural_hash

from .strategies import factor_products


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def test_coprime_strong_example():
    code, out, _ = call("coprime", "--p", "6*t^2-13*t+6", "--q", "12*t^2-25*t+12", "--strong")
    assert code == 0
    assert json.loads(out) == {"relation": "StronglyCoprime"}


def test_tstar_zero_is_usage_error():
    code, out, err = call("tstar", "--m", "0", "--kmax", "5")
    assert code == 3 and out == ""
    assert "ZeroTwist" in err


def test_budget_example():
    code, out, _ = call("budget", "--threshold", "10")
    assert code == 0 and json.loads(out) == {"N": 8}


def test_parse_error_names_position():
    code, _, err = call("coprime", "--p", "t^2 + * 3", "--q", "t")
    assert code == 3
    assert "position 6" in err and "^" in err


def test_fail_and_undecidable_codes():
    assert call("coprime", "--p", "t-2", "--q", "t-4", "--strong")[0] == 1
    assert call("coprime", "--p", "t^3-t-1", "--q", "t-2", "--strong")[0] == 2
    assert call("coprime", "--p", "t-2", "--q", "t-4")[0] == 0


def test_oracle_flag():
    code, out, _ = call("coprime", "--p", "t-2", "--q", "t-4", "--strong", "--oracle", "4")
    data = json.loads(out)
    assert code == 1 and data["oracle"] == {"B": 4, "result": False, "first_failing_B": 2}


def test_invariants(tmp_path):
    f = write(tmp_path, "v.json", {"size": 2, "entries": [[-1, 1], [0, -1]]})
    code, out, _ = call("invariants", "--seifert", f, "--dump-profile")
    data = json.loads(out)
    assert code == 0
    assert data["alexander"] == "t^2 - t + 1" and data["arf"] == 1
    assert data["signature_profile"]["arc_values"] == [0, -2]
    assert data["profile_steps"]["values"] == [0, -2]


def test_invariants_bad_matrix(tmp_path):
    f = write(tmp_path, "v.json", {"size": 2, "entries": [[1, 0], [0, 1]]})
    code, _, err = call("invariants", "--seifert", f)
    assert code == 3 and "InvalidSeifertMatrix" in err


def test_family_build_round_trip(tmp_path):
    code, out, _ = call("family", "build", "--n", "2", "--twists", "2,3", "--k0-trefoils", "2")
    data = json.loads(out)
    assert code == 0
    e = from_json(data["expr"])
    assert structural_hash(e) == data["hash"]
    assert data["operator_sequence"] == ["9*t^2 - 19*t + 9", "6*t^2 - 13*t + 6"]
    # the build output feeds straight back into certify
    f = write(tmp_path, "k.json", data)
    code, out, _ = call("certify", "order-two", "--expr", f)
    assert code == 0 and json.loads(out)["verdict"] == "pass"


def test_family_k0_file(tmp_path):
    k0 = write(tmp_path, "k0.json", {"size": 2, "entries": [[-1, 1], [0, -1]]})
    code, _, err = call("family", "build", "--n", "2", "--twists", "2,3", "--k0", k0)
    assert code == 3 and "ArfNonzero" in err


def test_certify_independence(tmp_path):
    tuples = write(tmp_path, "t.json", [[2, 3], [2, 4], [3, 3]])
    bounds = write(tmp_path, "b.json", {"FrakR(3)": "1.0", "FrakR(4)": "1.0",
                                        "RibbonR(2)": "1.0", "RibbonR(3)": "1.0"})
    code, out, _ = call("certify", "independence", "--tuples", tuples, "--bounds", bounds)
    assert code == 0 and json.loads(out)["verdict"] == "pass"
    dup = write(tmp_path, "d.json", [[2, 3], [2, 3]])
    code, out, _ = call("certify", "independence", "--tuples", dup, "--bounds", bounds)
    assert code == 1 and json.loads(out)["evidence"]["reason"] == "DuplicateTuple"
    missing = write(tmp_path, "m.json", {"FrakR(3)": "1.0"})
    code, _, err = call("certify", "independence", "--tuples", tuples, "--bounds", missing)
    assert code == 3 and "MissingBound" in err


def test_certify_main_and_membership(tmp_path):
    bounds = write(tmp_path, "b.json", {"FrakR(3)": "1", "RibbonR(2)": "1"})
    args = ["--n", "2", "--twists", "2,3"]
    assert call("certify", "main", *args, "--k0-trefoils", "4", "--bounds", bounds)[0] == 0
    assert call("certify", "main", *args, "--k0-trefoils", "2", "--bounds", bounds)[0] == 1
    code, _, _ = call("certify", "membership", *args, "--k0-trefoils", "2",
                      "--P", "25*t^2-51*t+25", "--P", "56*t^2-113*t+56")
    assert code == 0
    code, _, err = call("certify", "membership", *args, "--k0-trefoils", "2", "--P", "t-2", "--P", "t")
    assert code == 3 and "AsymmetricP1" in err


def test_scan_and_tstar():
    assert call("scan", "--mmax", "1000")[0] == 0
    code, out, _ = call("tstar", "--m", "-2", "--kmax", "5")
    assert code == 0 and json.loads(out)["verdict"] == "pass"


def test_out_file(tmp_path):
    dest = tmp_path / "o.json"
    code, out, _ = call("budget", "--threshold", "4/3", "--out", str(dest))
    assert code == 0 and out == "" and json.loads(dest.read_text()) == {"N": 2}


@pytest.mark.parametrize("argv", [
    [],
    ["nope"],
    ["budget"],
    ["budget", "--threshold", "-1"],
    ["budget", "--threshold", "x"],
    ["coprime", "--p", "0", "--q", "t"],
    ["coprime", "--p", "t", "--q", "t", "--oracle", "0"],
    ["tstar", "--m", "1", "--kmax", "0"],
    ["scan", "--mmax", "0"],
    ["family", "build", "--n", "2", "--twists", "2,0", "--k0-trefoils", "2"],
    ["family", "build", "--n", "3", "--twists", "2,3", "--k0-trefoils", "2"],
    ["invariants", "--seifert", "/nonexistent.json"],
    ["certify", "order-two"],
])
def test_usage_errors_exit_3(argv):
    assert call(*argv)[0] == 3


def test_help_lists_grammar():
    proc = subprocess.run([sys.executable, "-m", "knotcert", "coprime", "--help"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "expr" in proc.stdout and "4*t^2 - 9*t + 4" in proc.stdout


def test_deterministic_bytes(tmp_path):
    a = call("family", "build", "--n", "3", "--twists", "1,2,4", "--k0-trefoils", "4")[1]
    b = call("family", "build", "--n", "3", "--twists", "1,2,4", "--k0-trefoils", "4")[1]
    assert a == b
    assert a.endswith("\n") and json.loads(a)

CODES = {Relation.STRONGLY_COPRIME: 0, Relation.NOT_STRONGLY_COPRIME: 1, Relation.UNDECIDABLE: 2}


@settings(max_examples=40)
@given(factor_products(), factor_products())
def test_exit_code_contract(p, q):
    code, out, _ = call("coprime", "--p", str(p), "--q", str(q), "--strong")
    rel = strongly_coprime(p, q).relation
    assert code == CODES[rel]
    assert json.loads(out)["relation"] == rel.value
