import json
import os
import pathlib
import subprocess

import jsonschema
import pytest

import munu

SAMPLES = pathlib.Path(os.environ.get("MUNU_SAMPLES_DIR", pathlib.Path(__file__).parents[2] / "samples"))
SCHEMA = pathlib.Path(
    os.environ.get("MUNU_SCHEMA_PATH", pathlib.Path(__file__).parents[2] / "schema" / "report.schema.json"))


@pytest.fixture(scope="module")
def schema():
    return json.loads(SCHEMA.read_text())


def test_fixed_points():
    src = (SAMPLES / "succ.lat").read_text()
    assert munu.lfp(src, "F") == "{0,1,2,3}"
    assert munu.lfp(src, "Keep0") == "{}"
    assert munu.gfp(src, "Keep0") == "{0}"


def test_non_monotone_rejected():
    src = "lattice c\nelements: lo, hi\norder: lo<=hi\nfun Swap on c\nlo -> hi\nhi -> lo\n"
    with pytest.raises(ValueError):
        munu.lfp(src, "Swap")


def test_structural():
    v = munu.subtype("mu X . Unit + Nat * X", "mu X . Unit + Int * X")
    assert v["holds"] is True
    assert v["visited_goals"] <= v["goal_bound"]
    assert munu.subtype("Unit * Unit", "Unit + Unit")["holds"] is False
    assert munu.equivalent("lib:Nat", "Unit + lib:Nat")
    defs = (SAMPLES / "lists.ty").read_text()
    assert munu.subtype("NatList", "IntList", defs)["holds"] is True


def test_nominal():
    window = (SAMPLES / "window.tbl").read_text()
    assert munu.nominal_negation(window, "ColoredWindow") == "NonColoredWindow"
    with_string = (SAMPLES / "window_string.tbl").read_text()
    assert munu.nominal_negation(with_string, "ColoredWindow") == "Object"
    fb = (SAMPLES / "fbounded.tbl").read_text()
    assert munu.nominal_subtype(fb, "MyClass", "Comparable<MyClass>")["holds"] is True


def test_parse_error_is_value_error():
    with pytest.raises(munu.ParseError):
        munu.subtype("Unit + Q", "Top")
    with pytest.raises(ValueError):
        munu.nominal_subtype("class A\nclass B extends Nope\n", "A", "B")


def test_check_all_matches_schema(schema):
    reports = munu.check_all(str(SAMPLES), seed=3)
    assert reports and all(r["holds"] for r in reports)
    envelope = {"command": "check all", "answer": None, "reports": reports}
    jsonschema.validate(envelope, schema)


@pytest.mark.parametrize("args", [
    ["lat", "induction", "succ.lat", "F"],
    ["lat", "dual", "succ.lat", "Keep0"],
    ["st", "sub", "Nat", "Int"],
    ["st", "denote", "mu X . Unit + Int * X", "--depth", "2"],
    ["nom", "family", "collections.tbl", "List"],
    ["nom", "least-pre", "args.tbl", "F", "--depth", "2"],
    ["nom", "neg", "window.tbl", "ColoredWindow"],
    ["check", "all", "."],
])
def test_cli_json_validates(args, schema):
    args = [str(SAMPLES / a) if a.endswith((".lat", ".tbl")) else (str(SAMPLES) if a == "." else a) for a in args]
    code, out, err = munu.run(args + ["--json"])
    assert code == 0, err
    jsonschema.validate(json.loads(out), schema)


def test_installed_tool_agrees_with_module():
    exe = os.environ.get("MUNU_EXE")
    if not exe:
        pytest.skip("tool path not provided")
    args = ["check", "all", str(SAMPLES), "--seed", "11", "--json"]
    proc = subprocess.run([exe, *args], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == munu.run(args)[1]


def test_usage_error_exit_code():
    code, _, err = munu.run(["lat", "frobnicate"])
    assert code == 2
    assert err
