import io
import json
import subprocess
import sys

import pytest

import oracles
from gammamon.cli import run
from gammamon.corpus import paper_t7, truncated_naturals
from gammamon.fileformat import format_instance, load_instance


def call(*argv, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def t7_file(tmp_path):
    path = tmp_path / "t7.gm"
    path.write_text(format_instance(paper_t7()))
    return str(path)


def test_validate(t7_file):
    code, out, _ = call("validate", t7_file)
    assert code == 0 and out == "valid Γ-monoid, n=7, Γ trivial\n"
    code, out, _ = call("validate", "builtin:B2-swap")
    assert out == "valid Γ-monoid, n=4, Γ of order 2\n"


def test_validate_rejects_bad_files(tmp_path):
    empty = tmp_path / "empty.gm"
    empty.write_text("")
    code, _, err = call("validate", str(empty))
    assert code == 2 and err.startswith("error: ParseError")
    bad = tmp_path / "bad.gm"
    # 1 + y = y breaks associativity
    text = format_instance(paper_t7()).replace("1 1 1 s s s b", "1 1 1 y s s b").replace("y s s y y s b", "y y s y y s b")
    bad.write_text(text)
    code, out, err = call("validate", str(bad), "--json")
    assert code == 2 and err == ""
    data = json.loads(out)
    assert data["error"] == "NotAssociative" and len(data["witness"]) == 3
    code, _, err = call("validate", str(tmp_path / "missing.gm"))
    assert code == 2 and "FileNotFoundError" in err


def test_props_t7(t7_file):
    code, out, _ = call("props", t7_file)
    assert code == 0
    assert out.splitlines() == [
        "conical: true",
        "cancellative: false (1,0,1)",
        "refinement: false (1,1,x,x)",
        "minimal (literal): {0}",
        "minimal (nonzero): {x,z}",
    ]


def test_props_trivial_all_true():
    code, out, _ = call("props", "builtin:truncated-naturals:0")
    assert out.splitlines()[:3] == ["conical: true", "cancellative: true", "refinement: true"]


def test_props_truncated_against_oracle():
    t = truncated_naturals(3).table
    code, out, _ = call("props", "builtin:truncated-naturals:3", "--json")
    data = json.loads(out)
    assert data["refinement"]["holds"] == oracles.is_refinement(t)
    assert data["cancellative"]["holds"] == oracles.is_cancellative(t)
    assert data["conical"]["holds"] == oracles.is_conical(t)
    a, b, c, d = (int(x) for x in data["refinement"]["witness"])
    assert t[a][b] == t[c][d]
    assert (a, b, c, d) in oracles.refinement_failures(t)


def test_ideals_t7(t7_file):
    code, out, _ = call("ideals", t7_file)
    assert out.splitlines() == [
        "ideals: 4",
        "  I0 {0}",
        "  I1 {0,1,x}",
        "  I2 {0,y,z}",
        "  I3 {0,1,x,y,z,s,b}",
        "covers: I0<I1 I0<I2 I1<I3 I2<I3",
        "atoms: I1 I2",
        "height: 2",
        "simple: false",
    ]


def test_ideals_small():
    code, out, _ = call("ideals", "builtin:truncated-naturals:0", "--json")
    assert json.loads(out)["ideals"] == [["0"]]
    code, out, _ = call("ideals", "builtin:B2-swap", "--json")
    data = json.loads(out)
    assert data["ideals"] == [["00"], ["00", "01", "10", "11"]] and data["simple"] is True


def test_quotient_t7(t7_file, tmp_path):
    dest = tmp_path / "q.gm"
    code, out, _ = call("quotient", t7_file, "--ideal", "0,1,x", "-o", str(dest))
    assert code == 0
    lines = out.splitlines()
    assert lines[:5] == ["ideal: {0,1,x}", "classes: 3", "  [0] = {0,1,x}", "  [y] = {y,z,s}", "  [b] = {b}"]
    q = load_instance(dest.read_text())
    # y + y = y and b + b = s, so [b] + [b] = [y]
    assert q.names == ("[0]", "[y]", "[b]")
    assert q.table == ((0, 1, 2), (1, 1, 2), (2, 2, 1))


def test_quotient_by_everything_and_zero(t7_file):
    code, out, _ = call("quotient", t7_file, "--ideal", "T", "--json")
    assert json.loads(out)["classes"] == [["0", "1", "x", "y", "z", "s", "b"]]
    code, out, _ = call("quotient", t7_file, "--ideal", "0", "--json")
    q = load_instance(json.loads(out)["quotient"])
    assert q.table == paper_t7().table


def test_quotient_rejects_non_ideal(t7_file):
    code, _, err = call("quotient", t7_file, "--ideal", "0,1")
    assert code == 2 and "NotAnIdeal" in err
    code, _, err = call("quotient", t7_file, "--ideal", "0,w")
    assert code == 2 and "unknown element" in err


def test_series_t7(t7_file):
    code, out, _ = call("series", t7_file, "--json")
    data = json.loads(out)
    assert [s["chain"] for s in data["series"]] == [
        [["0"], ["0", "1", "x"], ["0", "1", "x", "y", "z", "s", "b"]],
        [["0"], ["0", "y", "z"], ["0", "1", "x", "y", "z", "s", "b"]],
    ]
    assert data["equivalent"] is True
    assert data["chain_conditions"]["height"] == 2
    keys = [[f["key"] for f in s["factors"]] for s in data["series"]]
    assert keys[0] == keys[1]


def test_series_simple_and_b2():
    code, out, _ = call("series", "builtin:B2-swap", "--json")
    assert len(json.loads(out)["series"]) == 1
    code, out, _ = call("series", "builtin:B2", "--json")
    data = json.loads(out)
    assert len(data["series"]) == 2
    multisets = [sorted(f["key"] for f in s["factors"]) for s in data["series"]]
    assert multisets[0] == multisets[1]


def test_jh_b2():
    code, out, _ = call("jh", "builtin:B2", "--json")
    assert code == 0
    data = json.loads(out)
    assert len(data["pairing"]) == 2 and data["equivalent"] is True
    code, out, _ = call("jh", "builtin:B2", "--series1", "00;00,01;T", "--series2", "00;00,01;T", "--json")
    pairs = json.loads(out)["pairing"]
    assert [(p["first"], p["second"]) for p in pairs] == [(0, 0), (1, 1)]


def test_jh_refuses_non_refinement(t7_file):
    code, _, err = call("jh", t7_file)
    assert code == 2
    assert err == "error: NotRefinementMonoid: not a refinement monoid: 1 + 1 = x + x cannot be refined\n"


def test_jh_refuses_ungraded_lattice(monkeypatch):
    # the two composition series here have lengths 2 and 3, but the
    # monoid is not a refinement monoid, so the command refuses it
    text = "monoid 5\n0 1 2 3 4\n1 1 4 4 4\n2 4 2 3 4\n3 4 3 3 4\n4 4 4 4 4\n"
    code, _, err = call("jh", "-", stdin=text, monkeypatch=monkeypatch)
    assert code == 2 and "NotRefinementMonoid" in err


def test_demo_counterexample_golden():
    code, out, _ = call("demo", "paper-counterexample")
    assert code == 0
    tail = out.splitlines()[-6:]
    assert tail == [
        "A = {0,1,x}",
        "B = {0,y,z}",
        "A + B = {0,1,x,y,z,s}",
        "A + B is an order-ideal: false",
        "violation: (b,b) with b + b = s is in the set but b or b is not",
        "refinement: false (1,1,x,x)",
    ]
    code, out, _ = call("demo", "paper-counterexample", "--json")
    data = json.loads(out)
    assert data["sum"] == ["0", "1", "x", "y", "z", "s"]
    assert data["violation"] == ["b", "b"] and data["refinement_witness"] == ["1", "1", "x", "x"]


def test_demo_unknown():
    code, _, err = call("demo", "nothing")
    assert code == 2 and "unknown demo" in err


def test_demo_shift():
    code, out, _ = call("demo", "paper-shift", "--json")
    data = json.loads(out)
    assert code == 0 and data["ideals"]["simple"] is True


def test_generator_flag():
    code, out, _ = call("ideals", "builtin:B2", "--generator", "00,10,01,11", "--json")
    assert json.loads(out)["ideals"] == [["00"], ["00", "01", "10", "11"]]
    code, _, err = call("ideals", "builtin:B2", "--generator", "00,10,01,zz")
    assert code == 2 and "unknown elements" in err
    code, _, err = call("ideals", "builtin:B2", "--generator", "00,00,01,11")
    assert code == 2 and "NotPermutation" in err


def test_stdin_source(monkeypatch):
    code, out, _ = call("validate", "-", stdin="monoid 2\n0 1\n1 1\n", monkeypatch=monkeypatch)
    assert code == 0 and out == "valid Γ-monoid, n=2, Γ trivial\n"


def test_corpus_manifest_and_files(tmp_path):
    code, out, _ = call("corpus", "--max-size", "3")
    assert code == 0 and len(out.splitlines()) == 1 + 2 + 6
    dest = tmp_path / "c"
    code, out, _ = call("corpus", "--max-size", "3", "--out", str(dest))
    assert out == f"wrote 9 instances to {dest}\n"
    assert (dest / "manifest.tsv").read_text().count("\n") == 10
    assert load_instance((dest / "n3-m002-a1.gm").read_text()).group.size == 2
    code, _, err = call("corpus", "--max-size", "9")
    assert code == 2 and "SizeLimit" in err


def test_corpus_sweep_small():
    code, out, _ = call("corpus", "--max-size", "3", "--sweep", "--json")
    data = json.loads(out)
    assert code == 0
    assert all(not v["failures"] for v in data["sweep"].values())


def test_outputs_are_byte_deterministic(t7_file):
    for argv in (["series", t7_file], ["series", t7_file, "--json"], ["jh", "builtin:B2"], ["props", "builtin:B2-swap"]):
        assert call(*argv) == call(*argv)


def test_console_script_runs():
    res = subprocess.run(
        [sys.executable, "-m", "gammamon", "props", "builtin:paper-T7"],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0
    assert "refinement: false (1,1,x,x)" in res.stdout
