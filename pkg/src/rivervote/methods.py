"""Split Cycle, Ranked Pairs, Beat Path, Stable Voting and River."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from . import kernels
from .ballots import Profile
from .margins import (
    Edge,
    MarginGraph,
    StrengthMatrix,
    immune_set,
    margin_graph,
    strongest_paths,
)
from .tiebreak import EdgeOrder, Lexicographic, TiebreakerKind


class MethodError(ValueError):
    """Raised for invalid method inputs."""


@dataclass(frozen=True)
class Diagram:
    method: str
    alternatives: tuple[str, ...]
    edges: tuple[Edge, ...]
    root: str | None = None

    def sources(self) -> frozenset[str]:
        targets = {e.target for e in self.edges}
        return frozenset(a for a in self.alternatives if a not in targets)

    def parents(self) -> dict[str, str]:
        return {e.target: e.source for e in self.edges}


@dataclass(frozen=True)
class TraceStep:
    """One candidate pair tried by Stable Voting at the top level."""

    candidate: str
    removed: str
    margin: int
    sub_winner: str
    accepted: bool


@dataclass(frozen=True)
class WinnerResult:
    method: str
    winners: frozenset[str]
    certificate: Union[Diagram, StrengthMatrix, tuple] = field(compare=False)
    tiebreaker: str | None = None

    def sorted_winners(self) -> list[str]:
        return sorted(self.winners)

    @property
    def winner(self) -> str:
        if len(self.winners) != 1:
            raise MethodError(f"{self.method} returned {len(self.winners)} winners")
        return next(iter(self.winners))


def _order_indices(g: MarginGraph, o: EdgeOrder):
    rows = g.rows
    n_weak = sum(1 for i, r in enumerate(rows) for j, v in enumerate(r) if i != j and v >= 0)
    if len(o.edges) != n_weak:
        raise MethodError("edge order does not cover the weak-defeat edges of this graph")
    src = np.empty(len(o.edges), dtype=np.int64)
    dst = np.empty(len(o.edges), dtype=np.int64)
    for k, e in enumerate(o.edges):
        i, j = g.index(e.source), g.index(e.target)
        if rows[i][j] != e.margin:
            raise MethodError(f"edge ({e.source},{e.target}) carries margin {e.margin}, graph has {rows[i][j]}")
        src[k] = i
        dst[k] = j
    return src, dst


def _greedy(g: MarginGraph, o: EdgeOrder | None, branching: bool):
    if o is None:
        o = Lexicographic().order(g)
    src, dst = _order_indices(g, o)
    mask = kernels.greedy_diagram(len(g.alternatives), src, dst, branching)
    kept = tuple(e for e, k in zip(o.edges, mask.tolist()) if k)
    return o, kept


def split_cycle(g: MarginGraph) -> WinnerResult:
    """Drop every splitting edge; the winners are the vertices left without incoming edges.

    ``(x, y)`` is a splitting edge iff a majority path from ``y`` back to
    ``x`` has strength at least ``m(x, y)``. The winner set is cross-checked
    against the immune set.
    """
    rows = g.rows
    s = g.strength_array.tolist()
    alts = g.alternatives
    m = len(alts)
    kept = tuple(
        Edge(alts[i], alts[j], rows[i][j])
        for i in range(m)
        for j in range(m)
        if i != j and rows[i][j] > 0 and s[j][i] < rows[i][j]
    )
    diagram = Diagram("split-cycle", alts, kept)
    winners = diagram.sources()
    if winners != immune_set(g):
        raise AssertionError("split cycle diagram disagrees with the immune set")
    return WinnerResult("split-cycle", winners, diagram)


def ranked_pairs(g: MarginGraph, o: EdgeOrder | None = None) -> WinnerResult:
    o, kept = _greedy(g, o, branching=False)
    diagram = Diagram("ranked-pairs", g.alternatives, kept)
    winners = diagram.sources()
    if len(winners) != 1:
        raise AssertionError("ranked pairs diagram has no unique source")
    root = next(iter(winners))
    return WinnerResult("ranked-pairs", winners, Diagram("ranked-pairs", g.alternatives, kept, root), o.kind)


def river(g: MarginGraph, o: EdgeOrder | None = None) -> WinnerResult:
    """Greedy insertion rejecting cycles and second in-edges; the tree root wins."""
    o, kept = _greedy(g, o, branching=True)
    alts = g.alternatives
    roots = frozenset(alts) - {e.target for e in kept}
    if len(roots) != 1 or len(kept) != len(alts) - 1:
        raise AssertionError("river diagram is not a spanning in-tree")
    root = next(iter(roots))
    return WinnerResult("river", roots, Diagram("river", alts, kept, root), o.kind)


def beat_path(g: MarginGraph) -> WinnerResult:
    """Winners: every ``x`` whose strongest path to each ``y`` is at least as strong as ``y``'s to ``x``."""
    s = g.strength_array.tolist()
    m = len(s)
    winners = frozenset(
        g.alternatives[x] for x in range(m) if all(s[x][y] >= s[y][x] for y in range(m) if y != x)
    )
    return WinnerResult("beat-path", winners, strongest_paths(g))


def stable_voting(p: Profile, kind: TiebreakerKind | None = None, graph: MarginGraph | None = None) -> WinnerResult:
    """Recursive Stable Voting.

    Candidate pairs ``(x, y)`` with ``x`` immune are scanned in tiebreaker
    order over the weak-defeat edges, then over the remaining pairs by
    decreasing (negative) margin, equal margins taken in reverse order of
    their reversed edges. The first ``x`` that wins the election
    without ``y`` is the winner. Sub-elections are memoised by alternative
    subset and ordered with ``kind`` applied to the sub-graph and the full
    profile (tiebreaker kinds only consult the ballot of voter 0).
    """
    kind = Lexicographic() if kind is None else kind
    full = margin_graph(p) if graph is None else graph
    memo: dict[frozenset, str] = {}

    def candidates(g: MarginGraph):
        immune = immune_set(g)
        order = kind.order(g, p)
        forward = [(e.source, e.target, e.margin) for e in order if e.source in immune]
        back = [(e.target, e.source, -e.margin) for e in reversed(order.edges) if e.margin > 0 and e.target in immune]
        return forward + back

    def solve(alts: frozenset) -> str:
        if alts in memo:
            return memo[alts]
        if len(alts) == 1:
            (w,) = alts
            memo[alts] = w
            return w
        g = full.subgraph(alts)
        for x, y, _ in candidates(g):
            if solve(alts - {y}) == x:
                memo[alts] = x
                return x
        raise AssertionError(f"stable voting found no winner among {sorted(alts)}")

    top = frozenset(full.alternatives)
    trace = []
    if len(top) == 1:
        winner = full.alternatives[0]
    else:
        winner = None
        for x, y, margin in candidates(full):
            sub = solve(top - {y})
            trace.append(TraceStep(x, y, margin, sub, sub == x))
            if sub == x:
                winner = x
                break
        if winner is None:
            raise AssertionError("stable voting found no winner")
    return WinnerResult("stable-voting", frozenset([winner]), tuple(trace), kind.describe())


def rebutting_path(r: WinnerResult, g: MarginGraph, y: str) -> list[str]:
    """The river tree path from the root to ``y``; it rebuts the defeat of the root by ``y``."""
    d = r.certificate
    if not isinstance(d, Diagram) or d.method != "river":
        raise MethodError("rebutting paths need a river result")
    root = d.root
    if y == root:
        raise MethodError("the root needs no rebuttal against itself")
    if g.margin(y, root) <= 0:
        raise MethodError(f"{y} does not defeat {root}")
    parents = d.parents()
    path = [y]
    while path[-1] != root:
        if path[-1] not in parents:
            raise MethodError(f"{y} is not reachable from {root}")
        path.append(parents[path[-1]])
    return path[::-1]


METHODS = ("split-cycle", "ranked-pairs", "beat-path", "stable-voting", "river")
NEEDS_ORDER = {"ranked-pairs", "river"}
NEEDS_PROFILE = {"stable-voting"}


def run_method(
    method: str,
    graph: MarginGraph | None = None,
    profile: Profile | None = None,
    kind: TiebreakerKind | None = None,
) -> WinnerResult:
    """Dispatch by method name; ``graph`` defaults to the profile's margin graph."""
    if method not in METHODS:
        raise MethodError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    if graph is None:
        if profile is None:
            raise MethodError("need a profile or a margin graph")
        graph = margin_graph(profile)
    kind = Lexicographic() if kind is None else kind
    if method == "split-cycle":
        return split_cycle(graph)
    if method == "beat-path":
        return beat_path(graph)
    if method == "stable-voting":
        if profile is None:
            raise MethodError("stable voting needs ballots")
        return stable_voting(profile, kind, graph)
    if kind.needs_profile and profile is None:
        raise MethodError(f"the {kind.describe()} tiebreaker needs ballots")
    order = kind.order(graph, profile)
    if method == "ranked-pairs":
        return ranked_pairs(graph, order)
    return river(graph, order)


def result_to_dict(r: WinnerResult) -> dict:
    d: dict = {"method": r.method, "winners": r.sorted_winners(), "tiebreaker": r.tiebreaker}
    c = r.certificate
    if isinstance(c, Diagram):
        d["certificate"] = {
            "type": "diagram",
            "root": c.root,
            "edges": [[e.source, e.target, e.margin] for e in sorted(c.edges)],
        }
    elif isinstance(c, StrengthMatrix):
        d["certificate"] = {"type": "strengths", "strengths": c.to_dict()}
    else:
        d["certificate"] = {
            "type": "trace",
            "steps": [
                {"candidate": s.candidate, "removed": s.removed, "margin": s.margin,
                 "sub_winner": s.sub_winner, "accepted": s.accepted}
                for s in c
            ],
        }
    return d
