import io
import json
import subprocess
import sys

import jsonschema
import pytest
from hypothesis import given

from posetderived.cli import EXIT_DISTINGUISHED, EXIT_INTERNAL, EXIT_OK, EXIT_USAGE, INFO_SCHEMA, run
from posetderived.errors import PosetSyntaxError, UnknownLabel
from posetderived.io import load_poset, parse_poset, poset_from_dict, poset_to_dict, save_poset, serialize_poset
from posetderived.poset import FIXTURES, chain, diamond

from conftest import posets


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def no_floats(value):
    if isinstance(value, float):
        return False
    if isinstance(value, dict):
        return all(no_floats(v) for v in value.values())
    if isinstance(value, list):
        return all(no_floats(v) for v in value)
    return True


def test_parse_examples():
    assert parse_poset("elements: a b\na < b") == chain(2).relabel(["a", "b"])
    with pytest.raises(UnknownLabel):
        parse_poset("elements: a\nb < a")
    X = parse_poset("# comment\nelements: a b c  # trailing\n\na < b\nb < c\na < c\n")
    assert X.le(0, 2)


@pytest.mark.parametrize("text, line", [
    ("a < b", 1),
    ("elements: a b\na <", 2),
    ("elements: a b\na b", 2),
    ("elements: a\nelements: b", 2),
    ("", 0),
])
def test_parse_errors(text, line):
    with pytest.raises(PosetSyntaxError) as info:
        parse_poset(text)
    assert info.value.line == line


def test_serialize_examples():
    assert serialize_poset(chain(3)).count(" < ") == 2
    assert serialize_poset(diamond()).count(" < ") == 4


@given(posets(max_n=8))
def test_text_round_trip(X):
    Y = parse_poset(serialize_poset(X, "x"))
    assert Y == X and Y.labels == X.labels


@given(posets(max_n=8))
def test_json_round_trip(X):
    assert poset_from_dict(json.loads(json.dumps(poset_to_dict(X)))) == X


def test_shipped_fixture_files(fixture_dir):
    for name, make in FIXTURES.items():
        X = load_poset(fixture_dir / f"{name}.poset")
        assert X == make(), name
    assert load_poset(fixture_dir / "FIG1L.poset").n == 12
    assert load_poset(fixture_dir / "FIG1R.poset").n == 12


def test_save_load_both_formats(tmp_path):
    X = diamond()
    for suffix in (".poset", ".json"):
        path = tmp_path / f"d{suffix}"
        save_poset(path, X, "D")
        assert load_poset(path) == X


def test_cli_compare_fig1(fixture_dir):
    code, out, _ = cli("compare", fixture_dir / "FIG1L.poset", fixture_dir / "FIG1R.poset",
                       "--primes", "2,3,5,7,11")
    assert code == EXIT_DISTINGUISHED
    assert "invariant factors over F11" in out


def test_cli_compare_not_distinguished(fixture_dir):
    code, out, _ = cli("compare", fixture_dir / "DIAMOND.poset", fixture_dir / "APR_R.poset",
                       "--primes", "2,3", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["verdict"] == "not distinguished"


def test_cli_info_point(fixture_dir):
    code, out, _ = cli("info", fixture_dir / "point.poset")
    assert code == EXIT_OK
    assert "points: 1" in out and "euler characteristic: 1" in out and "betti over Q: (1,)" in out


def test_cli_info_json_schema(fixture_dir):
    for name in ("point", "FIG1L", "CROWN4"):
        code, out, _ = cli("info", fixture_dir / f"{name}.poset", "--json", "--primes", "2,11")
        assert code == EXIT_OK
        data = json.loads(out)
        jsonschema.validate(data, INFO_SCHEMA)
        assert no_floats(data)
    bad = dict(data, extra=1)
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(bad, INFO_SCHEMA)


def test_cli_construct_ay(fixture_dir):
    code, out, _ = cli("construct", "ay", fixture_dir / "V3.poset", "--closed", "1")
    assert code == EXIT_OK
    assert "gluing condition fails" in out
    assert "dimension 5" in out and "e_23 * e_31" not in out
    code, out, _ = cli("construct", "ay", fixture_dir / "V3.poset", "--closed", "1", "--json")
    data = json.loads(out)
    assert data["condition_holds"] is False and data["violation"] == ["1", "1", "2", "3"]


def test_cli_construct_ay_success(fixture_dir, tmp_path):
    dest = tmp_path / "out.poset"
    code, out, _ = cli("construct", "ay", fixture_dir / "CHAIN3.poset", "--closed", "0", "--out", dest)
    assert code == EXIT_OK and "condition holds" in out
    assert load_poset(dest).n == 3


def test_cli_construct_operations(fixture_dir, tmp_path):
    f = fixture_dir
    code, out, _ = cli("construct", "opposite", f / "V3.poset")
    assert code == EXIT_OK and parse_poset(out).le(2, 0)
    code, out, _ = cli("construct", "product", f / "CHAIN3.poset", f / "CHAIN3.poset", "--json")
    assert len(json.loads(out)["elements"]) == 9
    dest = tmp_path / "sum.json"
    code, out, _ = cli("construct", "ordinal-sum", f / "ANTICHAIN3.poset", f / "YP.poset", "--out", dest)
    assert code == EXIT_OK and load_poset(dest).n == 6
    code, out, _ = cli("construct", "lex-sum", f / "CHAIN3.poset", "--component", f"0={f / 'YP.poset'}",
                       "--component", f"1={f / 'point.poset'}", "--component", f"2={f / 'V3.poset'}")
    assert code == EXIT_OK and parse_poset(out).n == 7
    comps = [f"{k}={f / p}" for k, p in zip("12345", ["V3.poset", "CHAIN3.poset", "point.poset", "YP.poset", "CROWN4.poset"])]
    args = ["construct", "flip", f / "EXS.poset", "--primes", "2,3"]
    for c in comps:
        args += ["--component", c]
    code, out, _ = cli(*args)
    assert code == EXIT_OK and "not distinguished" in out


def test_cli_ext_cohomology_hochschild_iso(fixture_dir):
    f = fixture_dir
    code, out, _ = cli("ext", f / "CROWN4.poset", "--from", "a", "--to", "c", "--json")
    assert code == EXIT_OK and json.loads(out) == {"field": "Q", "ext": [0, 1], "euler_form": -1}
    code, out, _ = cli("ext", f / "CROWN4.poset", "--from", "a", "--to", "a", "--field", "2", "--kind", "projective")
    assert code == EXIT_OK and "F2" in out
    code, out, _ = cli("cohomology", f / "CROWN4.poset", "--primes", "2", "--json")
    assert json.loads(out)["F2"] == {"simplicial": [1, 1], "constant_sheaf": [1, 1]}
    code, out, _ = cli("hochschild", f / "CROWN4.poset", "--max-degree", "3", "--json")
    assert json.loads(out)["hochschild"] == [1, 1, 0, 0]
    code, out, _ = cli("iso", f / "DIAMOND.poset", f / "APR_R.poset")
    assert code == EXIT_DISTINGUISHED and "not isomorphic" in out
    code, out, _ = cli("iso", f / "DIAMOND.poset", f / "DIAMOND.poset", "--json")
    assert code == EXIT_OK and json.loads(out)["isomorphic"] is True


def test_cli_hochschild_cap(tmp_path):
    path = tmp_path / "big.poset"
    save_poset(path, chain(21))
    code, _, err = cli("hochschild", path)
    assert code == EXIT_USAGE and "400" in err


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["info"],
    ["info", "missing-file.poset"],
    ["compare", "a", "b", "--primes", "4"],
    ["compare", "a", "b", "--primes", "x"],
])
def test_cli_usage_errors(argv, fixture_dir):
    argv = [str(fixture_dir / "V3.poset") if a in ("a", "b") else a for a in argv]
    code, _, err = cli(*argv)
    assert code == EXIT_USAGE and err


def test_cli_parse_error_exit(tmp_path):
    path = tmp_path / "bad.poset"
    path.write_text("elements: a b\na < b\nb < a\n")
    assert cli("info", path)[0] == EXIT_USAGE
    path.write_text("a < b\n")
    code, _, err = cli("info", path)
    assert code == EXIT_USAGE and "line 1" in err


def test_cli_internal_error(monkeypatch, fixture_dir):
    import posetderived.cli as mod

    def boom(*a, **k):
        raise RuntimeError("kaput")

    monkeypatch.setattr(mod, "invariant_report", boom)
    code, _, err = cli("info", fixture_dir / "point.poset")
    assert code == EXIT_INTERNAL and "kaput" in err


def test_console_script(fixture_dir):
    proc = subprocess.run([sys.executable, "-m", "posetderived.cli", "info",
                           str(fixture_dir / "point.poset"), "--primes", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "points: 1" in proc.stdout
