import io
import json
import subprocess
import sys

import pytest

from rivervote import margin_graph, parse_profile, read_margin_graph
from rivervote.cli import run

from support import FIXTURES


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def fx(name):
    return str(FIXTURES / name)


def test_river_winner_from_margins():
    assert call("winners", "--method", "river", "--tiebreaker", "lex", "--margins", fx("fig1.mg")) == (0, "a\n")


def test_ranked_pairs_from_profile():
    assert call("winners", "--method", "ranked-pairs", "--profile", fx("p2_repaired.prof")) == (0, "d\n")


def test_winners_sorted():
    code, out = call("winners", "--method", "split-cycle", "--margins", fx("fig1.mg"))
    assert code == 0 and out == "a\nb\nc\n"


def test_winners_json():
    code, out = call("winners", "--method", "river", "--margins", fx("fig1.mg"), "--json")
    d = json.loads(out)
    assert d["winners"] == ["a"] and d["method"] == "river" and d["tiebreaker"] == "lex"
    assert len(d["certificate"]["edges"]) == 5


def test_explicit_order_file(tmp_path):
    g = read_margin_graph(fx("fig1.mg"))
    from rivervote import Lexicographic

    pairs = Lexicographic().order(g).pairs()
    f = tmp_path / "order.txt"
    f.write_text("".join(f"{s} {t}\n" for s, t in pairs))
    assert call("winners", "--method", "river", "--margins", fx("fig1.mg"), "--tiebreaker-file", str(f)) == (0, "a\n")
    f.write_text("".join(f"{s} {t}\n" for s, t in pairs[::-1]))
    assert call("winners", "--method", "river", "--margins", fx("fig1.mg"), "--tiebreaker-file", str(f))[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["winners", "--method", "stable-voting", "--margins", "fig1.mg"],
        ["winners", "--method", "river", "--tiebreaker", "first-voter", "--margins", "fig1.mg"],
        ["winners", "--method", "river", "--tiebreaker", "quasi-pareto:first-voter", "--margins", "fig1.mg"],
        ["check", "--axiom", "ipda", "--method", "river", "--margins", "fig1.mg"],
        ["check", "--axiom", "isda", "--method", "river", "--tiebreaker", "random:3", "--profile", "p1.prof"],
        ["winners", "--method", "borda", "--margins", "fig1.mg"],
        ["winners", "--method", "river", "--tiebreaker", "bogus", "--margins", "fig1.mg"],
        ["winners", "--method", "river", "--margins", "missing.mg"],
        ["winners", "--method", "river"],
        ["check", "--axiom", "clones", "--method", "river", "--profile", "p1.prof"],
        ["diagram", "--method", "beat-path", "--margins", "fig1.mg"],
        ["realize", "--margins", "fig3.mg"],
        ["fuzz", "--axiom", "condorcet", "--method", "river", "--trials", "0"],
    ],
)
def test_configuration_errors(argv):
    argv = [fx(a) if a.endswith((".mg", ".prof")) else a for a in argv]
    assert call(*argv)[0] == 2


def test_diagram_dot():
    code, out = call("diagram", "--method", "river", "--margins", fx("fig1.mg"))
    assert code == 0 and out.count("->") == 5 and "winner=true" in out
    assert out == call("diagram", "--method", "river", "--margins", fx("fig1.mg"))[1]


def test_check_exit_codes():
    code, out = call("check", "--axiom", "ipda", "--method", "split-cycle", "--profile", fx("p1_repaired.prof"))
    assert code == 1 and "violated" in out
    code, out = call("check", "--axiom", "ipda", "--method", "river", "--tiebreaker", "first-voter",
                     "--profile", fx("p1_repaired.prof"))
    assert code == 0 and "holds" in out


def test_check_json():
    code, out = call("check", "--axiom", "ipda", "--method", "split-cycle", "--profile", fx("p1_repaired.prof"), "--json")
    assert code == 1 and json.loads(out)["witness"]["alternative"] == "a"


def test_fuzz_exit_codes(capsys):
    code, out = call("fuzz", "--axiom", "ipda", "--method", "river", "--alternatives", "3-5", "--voters", "1-21",
                     "--trials", "200", "--seed", "1", "--inject-clone", "--tiebreaker", "first-voter")
    assert code == 0 and out == ""
    code, out = call("fuzz", "--axiom", "monotonicity", "--method", "stable-voting", "--alternatives", "6",
                     "--voters", "7-15", "--trials", "145", "--seed", "0", "--json")
    assert code == 1
    rep = json.loads(out.splitlines()[0])
    assert rep["trial"] == 144 and rep["witness"]["kind"] == "lift"
    assert parse_profile(rep["profile"]).n_alternatives == 6


def test_fuzz_inconclusive_message(capsys):
    code, _ = call("fuzz", "--axiom", "monotonicity", "--method", "stable-voting", "--trials", "5")
    assert code == 0
    assert "inconclusive" in capsys.readouterr().err


def test_gen_roundtrip():
    code, out = call("gen", "--alternatives", "4", "--voters", "9", "--seed", "5")
    assert code == 0
    p = parse_profile(out)
    assert p.n_voters == 9 and p.n_alternatives == 4
    assert call("gen", "--alternatives", "4", "--voters", "9", "--seed", "5")[1] == out


def test_realize_roundtrip(tmp_path):
    code, out = call("realize", "--margins", fx("fig1.mg"))
    assert code == 0
    assert margin_graph(parse_profile(out)) == read_margin_graph(fx("fig1.mg"))


def test_realize_zero_then_winners(tmp_path):
    code, out = call("realize", "--margins", fx("zero.mg"))
    p = parse_profile(out)
    assert code == 0 and p.n_voters == 2
    f = tmp_path / "zero.prof"
    f.write_text(out)
    assert call("winners", "--method", "river", "--profile", str(f)) == (0, "a\n")
    assert call("winners", "--method", "river", "--tiebreaker", "lex:c,b,a", "--profile", str(f)) == (0, "c\n")
    assert call("winners", "--method", "split-cycle", "--profile", str(f)) == (0, "a\nb\nc\n")
    assert call("winners", "--method", "stable-voting", "--profile", str(f))[0] == 0


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "rivervote", "winners", "--method", "river", "--margins", fx("fig1.mg")],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "a\n"
    res = subprocess.run([sys.executable, "-m", "rivervote", "nonsense"], capture_output=True, text=True)
    assert res.returncode == 2
