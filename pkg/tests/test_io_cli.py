import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from natext import cli
from natext.io import (ParseError, dumps, emit_algebra, emit_ego, emit_structure, load_algebra,
                       load_ego, parse_algebra, parse_ego, parse_map, parse_structure,
                       resolve_builtin_algebra)
from natext.duality import dual_of
from natext.library import (boolean_lattice, chain, dl_ego, median2, median_ego,
                            median_power)

DATA = Path(__file__).resolve().parent.parent / "data"


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


# -- documents ---------------------------------------------------------------------

def test_median2_document():
    A = load_algebra(str(DATA / "median2.json"))
    assert A.size == 2 and A.signature.ops == (("median", 3),)
    assert np.array_equal(A.tables["median"], median2().tables["median"])


@pytest.mark.parametrize("A", [median2(), median_power(2), chain(3), boolean_lattice(2)])
def test_algebra_round_trip(A):
    doc = json.loads(dumps(emit_algebra(A)))
    B = parse_algebra(doc)
    assert B.size == A.size and B.signature == A.signature and list(B.labels) == list(A.labels)
    for name, _ in A.signature.ops:
        assert np.array_equal(np.asarray(B.tables[name]), np.asarray(A.tables[name]))
    assert emit_algebra(B) == emit_algebra(A)


@pytest.mark.parametrize("A,ego", [(median2(), median_ego()), (chain(3), dl_ego()),
                                   (median_power(2), median_ego(False))])
def test_structure_round_trip(A, ego):
    X = dual_of(A, ego).structure
    Y = parse_structure(json.loads(dumps(emit_structure(X))))
    assert emit_structure(Y) == emit_structure(X)


def test_partial_operations_round_trip():
    doc = {"kind": "structure", "size": 2,
           "partial_operations": [{"name": "h", "arity": 2, "domain": [[0, 1], [1, 1]],
                                   "values": [1, 1]}],
           "constants": {"0": 0}}
    X = parse_structure(doc)
    assert X.partial_operations["h"] == {(0, 1): 1, (1, 1): 1}
    assert parse_structure(emit_structure(X)).partial_operations == X.partial_operations


@pytest.mark.parametrize("ego", [median_ego(), median_ego(False), dl_ego()])
def test_ego_round_trip(ego):
    back = parse_ego(json.loads(dumps(emit_ego(ego))))
    assert emit_ego(back) == emit_ego(ego)


def test_shipped_ego_documents_match_the_builtins():
    assert emit_ego(load_ego(str(DATA / "median-ego.json")))["structure"] == \
        emit_ego(median_ego())["structure"]
    assert emit_ego(load_ego(str(DATA / "bounded-dl-ego.json")))["structure"] == \
        emit_ego(dl_ego())["structure"]


def test_map_document():
    doc = json.loads((DATA / "map-median2x2-to-2.json").read_text())
    A, B, ego, table, name = parse_map(doc)
    assert (A.size, B.size, table, name) == (4, 2, (0, 0, 1, 0), "u")


# -- diagnostics ------------------------------------------------------------------------

def median_doc():
    return json.loads(dumps(emit_algebra(median2())))


@pytest.mark.parametrize("mutate,path,fragment", [
    (lambda d: d["tables"]["median"][1][0].__setitem__(0, 2), "tables.median[1][0][0]",
     "entry 2 is out of range 0..1"),
    (lambda d: d.pop("size"), "size", "missing field"),
    (lambda d: d.__setitem__("size", "two"), "size", "expected int"),
    (lambda d: d["tables"].pop("median"), "tables.median", "missing table"),
    (lambda d: d["tables"].__setitem__("join", 0), "tables.join", "not in the signature"),
    (lambda d: d["tables"]["median"].pop(), "tables.median", "expected a list of 2 entries"),
    (lambda d: d.__setitem__("labels", ["x"]), "labels", "expected 2 labels"),
    (lambda d: d.__setitem__("size", 0), "size", "nonempty"),
])
def test_parse_errors_name_the_field(mutate, path, fragment):
    doc = median_doc()
    mutate(doc)
    with pytest.raises(ParseError) as info:
        parse_algebra(doc)
    assert info.value.path == path
    assert fragment in str(info.value)


def test_structure_errors():
    doc = {"size": 2, "relations": [{"name": "≤", "arity": 2, "tuples": [[0, 1], [0]]}]}
    with pytest.raises(ParseError, match=r"relations\[0\]\.tuples\[1\]: expected a tuple"):
        parse_structure(doc)
    doc = {"size": 2, "constants": {"0": 5}}
    with pytest.raises(ParseError, match=r"constants\.0: entry 5"):
        parse_structure(doc)
    doc = {"size": 2, "partial_operations": [{"name": "h", "arity": 1, "domain": [[0]],
                                              "values": []}]}
    with pytest.raises(ParseError, match="differ in length"):
        parse_structure(doc)


def test_ego_carrier_mismatch():
    doc = {"algebra": emit_algebra(median2()),
           "structure": {"size": 3}}
    with pytest.raises(ParseError, match="carriers differ"):
        parse_ego(doc)


def test_map_table_errors():
    doc = json.loads((DATA / "map-median2x2-to-2.json").read_text())
    doc["table"] = [0, 0, 1]
    with pytest.raises(ParseError, match="table: expected 4 entries"):
        parse_map(doc)
    doc["table"] = [0, 0, 1, 3]
    with pytest.raises(ParseError, match=r"table\[3\]: entry 3"):
        parse_map(doc)


def test_builtins():
    assert resolve_builtin_algebra("builtin:median-power-3").size == 8
    assert resolve_builtin_algebra("chain-4").size == 4
    with pytest.raises(ParseError, match="unknown builtin"):
        resolve_builtin_algebra("builtin:nothing")


def test_json_syntax_error_has_a_line(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text('{"size": 2,\n  "tables": }')
    with pytest.raises(ParseError, match=r"broken\.json:2:"):
        load_algebra(str(p))


# -- the command line ----------------------------------------------------------------------

def test_natext_verb(capsys):
    code, out, _ = run(["natext", str(DATA / "median2.json")], capsys)
    assert code == 0 and out.splitlines()[0] == "|A^δ| = 2, e_A bijective"


def test_case_median_infinity(capsys):
    code, out, _ = run(["case", "median-infinity", "--m", "2", "--n", "5"], capsys)
    assert code == 0 and out == "a_5\n"


def test_smooth_l_parity(capsys):
    code, out, _ = run(["smooth", "--case", "l-parity"], capsys)
    assert code == 2
    assert out == "NOT SMOOTH; witness: evens, window {φ₀}, values {0,1}\n"


def test_falsified_duality_exits_two(capsys):
    code, out, _ = run(["bidual", str(DATA / "median2.json"), "--ego",
                        str(DATA / "median-ego-without-bullet.json")], capsys)
    assert code == 2 and "(0, 0, 0, 1)" in out


@pytest.mark.parametrize("argv,message", [
    (["case", "no-such-case"], "unknown case"),
    (["smooth", "--case", "no-such-map"], "unknown map case"),
    (["basis", str(DATA / "median2x2.json"), "--guard", "1"], "guard"),
    (["natext", "/nonexistent/file.json"], "cannot read"),
    (["natext", str(DATA / "median2.json"), "--format", "dot"], "no DOT rendering"),
    (["extend", "--case", "l-parity", "--point", "1(2)"], "eventually periodic"),
    (["updown", "--case", "l-parity", "--order", "0,0"], "permutation"),
    (["smooth", "--case", "l-parity", "--window", "x"], "bad window"),
    (["case", "median-infinity", "--kinds", "xy"], "--kinds"),
    (["natext", "--depth", "-1", str(DATA / "median2.json")], "--depth"),
])
def test_errors_exit_one(argv, message, capsys):
    code, out, err = run(argv, capsys)
    assert code == 1 and out == ""
    assert err.startswith("error:") and message in err


def test_error_messages_are_distinct(capsys):
    errs = set()
    for argv in (["case", "no-such-case"], ["basis", str(DATA / "median2x2.json"), "--guard", "1"],
                 ["natext", "/nonexistent/file.json"]):
        errs.add(run(argv, capsys)[2])
    assert len(errs) == 3


def test_parse_error_exit(tmp_path, capsys):
    doc = median_doc()
    doc["tables"]["median"][1][1][1] = 2
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    code, _, err = run(["natext", str(p)], capsys)
    assert code == 1 and "tables.median[1][1][1]: entry 2 is out of range 0..1" in err


def test_json_and_dot_formats(capsys):
    code, out, _ = run(["case", "median-dual", "--format", "json"], capsys)
    report = json.loads(out)
    assert code == 0 and report["dual_size"] == 4 and report["extension_size"] == 2
    code, out, _ = run(["case", "median-dual", "--format", "dot"], capsys)
    assert out.startswith('digraph "dual of 2" {')


def test_cover_formula_case_is_falsified(capsys):
    code, out, _ = run(["case", "cover-formula"], capsys)
    assert code == 2 and out == "size 2: 0/25 disagreements; size 4: 8/196 disagreements\n"


def test_map_verbs_on_documents(capsys):
    m = str(DATA / "map-median2x2-to-2.json")
    code, out, _ = run(["extend", m, "--point", "e(10)", "--window", "1,2"], capsys)
    assert code == 0 and out == "ũ(e(10))↾{φ₁,φ₂} = {(1,0)}\n"
    assert run(["smooth", m], capsys)[0] == 0
    assert run(["strong", m], capsys)[0] == 0
    code, out, _ = run(["updown", m, "--point", "10"], capsys)
    assert code == 0 and out.startswith("u^∇(e(10)) = (0, 1, 0, 1)")


def test_updown_pair_parity(capsys):
    code, out, _ = run(["updown", "--case", "l-pair-parity"], capsys)
    assert code == 0
    assert out == "u^∇(evens) = (0, 0), u^Δ(evens) = (1, 1), window {(0,1),(1,0)}\n"


def test_strong_u_evens(capsys):
    code, out, _ = run(["strong", "--case", "l-u-evens"], capsys)
    assert code == 2 and out == "NOT STRONG; witness: evens, window {φ₀}, values {0}\n"


def test_product_and_boolean_power(capsys):
    code, out, _ = run(["product-check", str(DATA / "median2.json"),
                        str(DATA / "median2x2.json")], capsys)
    assert code == 0 and out.count("True") == 3
    code, out, _ = run(["boolean-power", "--n", "2"], capsys)
    assert code == 0 and "0 failures" in out


def test_list_cases(capsys):
    code, out, _ = run(["list-cases"], capsys)
    assert code == 0
    for name in ("median-dual", "median-infinity", "l-parity", "dl-delta"):
        assert name in out


def test_verbs_map_one_to_one():
    expected = {"dual", "bidual", "natext", "basis", "extend", "smooth", "strong", "updown",
                "product-check", "boolean-power", "case", "list-cases"}
    assert set(cli.VERBS) == expected
    targets = [id(engine) for _, engine in cli.VERBS.values()]
    handlers = [handler for handler, _ in cli.VERBS.values()]
    assert len(set(targets)) == len(targets)
    assert len(set(handlers)) == len(handlers)


@pytest.mark.parametrize("argv", [
    ["dual", "data/median2.json"], ["case", "median-u-prime"], ["smooth", "--case", "l-parity"],
    ["case", "median-tree-dual", "--n", "2", "--format", "dot"]])
def test_output_is_byte_identical_across_runs(argv):
    root = DATA.parent
    outs = [subprocess.run([sys.executable, "-m", "natext.cli", *argv], cwd=root,
                           capture_output=True) for _ in range(2)]
    assert outs[0].stdout == outs[1].stdout and outs[0].stdout
    assert outs[0].returncode == outs[1].returncode


def test_usage_errors_exit_one(capsys):
    code, _, err = run(["no-such-verb"], capsys)
    assert code == 1 and "invalid choice" in err
    code, _, _ = run(["case", "median-dual", "--format", "svg"], capsys)
    assert code == 1


def test_help_exits_zero(capsys):
    code, out, _ = run(["--help"], capsys)
    assert code == 0 and "usage: natext" in out
