import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rivervote import (
    NO_PATH,
    Edge,
    MarginError,
    MarginGraph,
    condorcet_loser,
    condorcet_winner,
    covers,
    immune_set,
    is_dominant,
    is_immune,
    margin_graph,
    pareto_dominates,
    parse_margin_graph,
    path_strength,
    quasi_pareto_dominates,
    random_profile,
    smith_set,
    strongest_paths,
    weak_defeat_edges,
)
from rivervote.ballots import default_labels
from rivervote.margins import format_margin_graph, quasi_pareto_pairs

import oracles
from support import fixture_graph, fixture_profile


def graph_from(m, vals):
    labels = default_labels(m)
    it = iter(vals)
    margins = {}
    for i in range(m):
        for j in range(i + 1, m):
            v = next(it)
            if v:
                margins[labels[i], labels[j]] = v
    return MarginGraph.from_margins(labels, margins)


def as_dict(g):
    return {(x, y): g.margin(x, y) for x in g.alternatives for y in g.alternatives if x != y}


def graphs(lo=1, hi=6, w=8):
    return st.integers(lo, hi).flatmap(
        lambda m: st.lists(st.integers(-w, w), min_size=m * (m - 1) // 2, max_size=m * (m - 1) // 2).map(
            lambda v, m=m: graph_from(m, v)
        )
    )


def test_p1_margins():
    g = margin_graph(fixture_profile("p1_repaired"))
    positive = {(e.source, e.target): e.margin for e in weak_defeat_edges(g) if e.margin > 0}
    assert positive == {("b", "a"): 22, ("b", "d"): 10, ("a", "d"): 8, ("c", "a"): 6, ("d", "c"): 4, ("c", "b"): 2}
    assert g.is_uniquely_weighted


def test_verbatim_p1_has_a_tie():
    g = margin_graph(fixture_profile("p1"))
    assert g.margin("b", "a") == 22
    assert g.margin("c", "d") == 0
    assert not g.is_uniquely_weighted


def test_diagonal_zero():
    g = margin_graph(random_profile(5, 7, seed=1))
    assert all(g.margin(a, a) == 0 for a in g.alternatives)


def test_tie_margins_eighteen():
    g = margin_graph(fixture_profile("c1_reconstructed"))
    assert g.margin("y", "z") == g.margin("x", "z") == g.margin("a", "z") == 18
    assert g.margin("y", "x") == 68


def test_graph_validation():
    with pytest.raises(MarginError):
        MarginGraph(["a", "b"], [[0, 1], [1, 0]])
    with pytest.raises(MarginError):
        MarginGraph(["a", "b"], [[1, 0], [0, -1]])


def test_graph_file_roundtrip():
    g = fixture_graph("fig1")
    assert parse_margin_graph(format_margin_graph(g)) == g


def test_graph_file_negative_and_defaults():
    g = parse_margin_graph("candidates: a b c\nmargin a b -4\n")
    assert g.margin("b", "a") == 4 and g.margin("a", "c") == 0


@pytest.mark.parametrize("text", ["margin a b 0", "margin a a 2", "margin a b 2\nmargin b a -2", "edge a b 2",
                                  "candidates: a\nmargin a b 2", ""])
def test_graph_file_errors(text):
    with pytest.raises(MarginError):
        parse_margin_graph(text)


def test_weak_defeats():
    g = MarginGraph.from_margins(["a", "b"], {("a", "b"): 4})
    assert weak_defeat_edges(g) == [Edge("a", "b", 4)]
    g0 = MarginGraph.from_margins(["a", "b"], {})
    assert sorted(weak_defeat_edges(g0)) == [Edge("a", "b", 0), Edge("b", "a", 0)]


@settings(max_examples=80, deadline=None)
@given(graphs())
def test_weak_defeats_match_pair_scan(g):
    d = as_dict(g)
    assert sorted((e.source, e.target) for e in weak_defeat_edges(g)) == sorted(k for k, v in d.items() if v >= 0)


def test_p1_edge_count():
    g = margin_graph(fixture_profile("p1"))
    d = as_dict(g)
    assert len(weak_defeat_edges(g)) == sum(1 for v in d.values() if v >= 0) == 7


def test_path_strength():
    g = MarginGraph.from_margins(["x", "y", "z"], {("x", "y"): 8, ("y", "z"): 6, ("z", "x"): 2})
    assert path_strength(g, ["x", "y"]) == 8
    assert path_strength(g, ["x", "y", "z"]) == 6
    with pytest.raises(MarginError):
        path_strength(g, ["y", "x"])
    with pytest.raises(MarginError):
        path_strength(g, ["x", "y", "x"])
    with pytest.raises(MarginError):
        path_strength(g, ["x"])


@settings(max_examples=60, deadline=None)
@given(st.permutations([2, 4, 6, 8, 10]))
def test_path_strength_is_min(weights):
    labels = default_labels(6)
    g = MarginGraph.from_margins(labels, {(labels[i], labels[i + 1]): w for i, w in enumerate(weights)})
    assert path_strength(g, labels) == min(weights)


def test_strengths_edgeless_and_single():
    g = MarginGraph.from_margins(["x", "y"], {})
    s = strongest_paths(g)
    assert s["x", "y"] is NO_PATH and s["y", "x"] is NO_PATH
    g = MarginGraph.from_margins(["x", "y"], {("x", "y"): 4})
    s = strongest_paths(g)
    assert s["x", "y"] == 4 and s["y", "x"] is NO_PATH
    assert s["x", "x"] is NO_PATH


def test_no_path_orders_below_numbers():
    assert NO_PATH < 0 < 1 and not (NO_PATH > -5) and NO_PATH == NO_PATH
    assert max(NO_PATH, 3) == 3


def test_strengths_p3_match_enumeration():
    g = margin_graph(fixture_profile("p3"))
    ref = oracles.strongest(g.alternatives, as_dict(g))
    s = strongest_paths(g)
    for k, v in ref.items():
        assert s[k] == (NO_PATH if v is None else v)


@settings(max_examples=150, deadline=None)
@given(graphs(2, 5))
def test_strengths_match_enumeration(g):
    ref = oracles.strongest(g.alternatives, as_dict(g))
    s = strongest_paths(g)
    for k, v in ref.items():
        assert s[k] == (NO_PATH if v is None else v)


def test_dominance():
    g = margin_graph(fixture_profile("p1_repaired"))
    assert is_dominant(g, g.alternatives)
    cw = MarginGraph.from_margins(["a", "b", "c"], {("a", "b"): 2, ("a", "c"): 2, ("b", "c"): 2})
    assert is_dominant(cw, ["a"]) and not is_dominant(cw, ["b"])
    with pytest.raises(MarginError):
        is_dominant(cw, [])


@settings(max_examples=80, deadline=None)
@given(graphs(), st.data())
def test_dominance_matches_definition(g, data):
    X = data.draw(st.sets(st.sampled_from(g.alternatives), min_size=1))
    assert is_dominant(g, X) == oracles.dominant(g.alternatives, as_dict(g), X)


def test_smith_cases():
    cw = MarginGraph.from_margins(["a", "b", "c"], {("b", "a"): 2, ("b", "c"): 2, ("a", "c"): 2})
    assert smith_set(cw) == {"b"}
    cyc = MarginGraph.from_margins(["a", "b", "c"], {("a", "b"): 2, ("b", "c"): 2, ("c", "a"): 2})
    assert smith_set(cyc) == {"a", "b", "c"}


@settings(max_examples=150, deadline=None)
@given(graphs(1, 6, 3))
def test_smith_is_minimal_dominant(g):
    assert set(smith_set(g)) == oracles.smith(g.alternatives, as_dict(g))


def test_condorcet_detection():
    g = MarginGraph.from_margins(["a", "b", "c"], {("b", "a"): 2, ("b", "c"): 4, ("a", "c"): 2})
    assert condorcet_winner(g) == "b" and condorcet_loser(g) == "c"
    cyc = MarginGraph.from_margins(["a", "b", "c"], {("a", "b"): 2, ("b", "c"): 2, ("c", "a"): 2})
    assert condorcet_winner(cyc) is None and condorcet_loser(cyc) is None


def test_immunity_examples():
    g = fixture_graph("fig1")
    assert immune_set(g) == {"a", "b", "c"}
    cw = MarginGraph.from_margins(["a", "b"], {("a", "b"): 1})
    assert is_immune(cw, "a") and not is_immune(cw, "b")


@settings(max_examples=150, deadline=None)
@given(graphs(1, 5))
def test_immunity_matches_path_search(g):
    assert set(immune_set(g)) == oracles.immune(g.alternatives, as_dict(g))


@settings(max_examples=100, deadline=None)
@given(graphs(1, 6, 4))
def test_smith_member_without_defeats_is_immune(g):
    d = as_dict(g)
    for x in smith_set(g):
        if all(d[y, x] <= 0 for y in g.alternatives if y != x):
            assert is_immune(g, x)


def test_covering_and_pareto_on_p1():
    p = fixture_profile("p1_repaired")
    g = margin_graph(p)
    assert pareto_dominates(p, "b", "a")
    assert covers(g, "b", "a")
    assert quasi_pareto_dominates(g, "b", "a")
    with pytest.raises(MarginError):
        covers(g, "a", "a")
    with pytest.raises(MarginError):
        pareto_dominates(p, "a", "a")
    with pytest.raises(MarginError):
        quasi_pareto_dominates(g, "a", "a")


@pytest.mark.parametrize("name", ["p1", "p2", "p3_repaired", "p4_reconstructed"])
def test_b_pareto_dominates_a(name):
    p = fixture_profile(name)
    assert pareto_dominates(p, "b", "a")
    assert all(r.index("b") < r.index("a") for r in p.ballots())


def test_y_pareto_dominates_x():
    p = fixture_profile("c1_reconstructed")
    assert pareto_dominates(p, "y", "x")


def test_quasi_domination_needs_strongest_margin():
    # y covers x, but z beats x by more than y does
    g = MarginGraph.from_margins(["y", "x", "z"], {("y", "x"): 2, ("z", "x"): 6, ("z", "y"): 6})
    assert covers(g, "y", "x")
    assert not quasi_pareto_dominates(g, "y", "x")


@settings(max_examples=120, deadline=None)
@given(st.integers(2, 6), st.integers(1, 15), st.integers(0, 2**32 - 1))
def test_domination_chain(m, n, seed):
    p = random_profile(m, n, seed=seed)
    g = margin_graph(p)
    for y in p.alternatives:
        for x in p.alternatives:
            if x == y:
                continue
            pd = pareto_dominates(p, y, x)
            assert pd == all(r.index(y) < r.index(x) for r in p.ballots())
            if pd:
                assert covers(g, y, x) and quasi_pareto_dominates(g, y, x)
            if covers(g, y, x):
                assert g.margin(y, x) > 0


def _acyclic(pairs):
    succ = {}
    for y, x in pairs:
        succ.setdefault(y, set()).add(x)
    state = {}

    def visit(v):
        state[v] = 1
        for w in succ.get(v, ()):
            if state.get(w) == 1 or (w not in state and not visit(w)):
                return False
        state[v] = 2
        return True

    return all(visit(v) for v in list(succ) if v not in state)


@settings(max_examples=150, deadline=None)
@given(graphs(2, 6, 4))
def test_quasi_pareto_irreflexive_acyclic(g):
    pairs = quasi_pareto_pairs(g)
    assert all(y != x for y, x in pairs)
    assert _acyclic(pairs)
