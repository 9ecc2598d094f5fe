"""Tiebreakers: total processing orders over weak-defeat edges.

Every order sorts edges by strictly decreasing margin; a tiebreaker kind only
decides the order inside each class of equal margins.
"""
from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from itertools import groupby
from typing import Callable, Sequence

from .ballots import Profile, restrict
from .margins import (
    Edge,
    MarginGraph,
    margin_graph,
    pareto_pairs,
    quasi_pareto_pairs,
    weak_defeat_edges,
)

#: Recorded with every seeded-random order so fuzz findings can be replayed.
RANDOM_ALGORITHM = "python-random-mt19937/v1"


class TiebreakError(ValueError):
    """Raised for invalid tiebreaker specifications or edge orders."""


@dataclass(frozen=True)
class EdgeOrder:
    edges: tuple[Edge, ...]
    kind: str = "explicit"

    def __iter__(self):
        return iter(self.edges)

    def __len__(self):
        return len(self.edges)

    def pairs(self) -> list[tuple[str, str]]:
        return [(e.source, e.target) for e in self.edges]

    def positions(self) -> dict[tuple[str, str], int]:
        return {(e.source, e.target): i for i, e in enumerate(self.edges)}


def validate_edge_order(g: MarginGraph, edges: Sequence[Edge]) -> None:
    expected = sorted(weak_defeat_edges(g))
    if sorted(edges) != expected:
        raise TiebreakError("edge order is not a permutation of the weak-defeat edges")
    for a, b in zip(edges, edges[1:]):
        if a.margin < b.margin:
            raise TiebreakError(f"margins increase from ({a.source},{a.target}) to ({b.source},{b.target})")


def _tie_classes(edges):
    """Group edges by margin, largest margin first."""
    ordered = sorted(edges, key=lambda e: -e.margin)
    return [list(grp) for _, grp in groupby(ordered, key=lambda e: e.margin)]


class TiebreakerKind:
    """Base class. Subclasses define ``tie_key`` or override ``order``."""

    name = "abstract"
    needs_profile = False
    anonymous = False
    neutral = False

    def tie_key(self, g: MarginGraph, p: Profile | None) -> Callable[[Edge], object]:
        raise NotImplementedError

    def order(self, g: MarginGraph, p: Profile | None = None) -> EdgeOrder:
        if self.needs_profile and p is None:
            raise TiebreakError(f"the {self.name} tiebreaker needs a profile")
        key = self.tie_key(g, p)
        edges = sorted(weak_defeat_edges(g), key=lambda e: (-e.margin, key(e)))
        return EdgeOrder(tuple(edges), self.describe())

    def __call__(self, g: MarginGraph, p: Profile | None = None) -> EdgeOrder:
        return self.order(g, p)

    def describe(self) -> str:
        return self.name

    def __repr__(self):
        return f"<tiebreaker {self.describe()}>"

    def __eq__(self, other):
        return type(self) is type(other) and self.describe() == other.describe()

    def __hash__(self):
        return hash(self.describe())


def _rank_key(ranking: Sequence[str], g: MarginGraph):
    rank = {a: i for i, a in enumerate(ranking)}
    missing = [a for a in g.alternatives if a not in rank]
    if missing:
        raise TiebreakError(f"alternative order lacks {missing}")
    return lambda e: (rank[e.source], rank[e.target])


class Lexicographic(TiebreakerKind):
    """Sort ties by ``(source, target)`` under a fixed order of all labels.

    Without an explicit order, labels compare as strings: a fixed order on
    the universe of labels, so the kind is consistent and anonymous but not
    neutral.
    """

    name = "lex"
    anonymous = True

    def __init__(self, order: Sequence[str] | None = None):
        if order is not None:
            order = tuple(order)
            if len(set(order)) != len(order):
                raise TiebreakError("alternative order repeats a label")
        self.alternative_order = order

    def tie_key(self, g, p):
        if self.alternative_order is None:
            return lambda e: (e.source, e.target)
        return _rank_key(self.alternative_order, g)

    def describe(self):
        if self.alternative_order is None:
            return "lex"
        return "lex:" + ",".join(self.alternative_order)


class FirstVoter(TiebreakerKind):
    """Lexicographic under the ranking of voter 0."""

    name = "first-voter"
    needs_profile = True
    neutral = True

    def tie_key(self, g, p):
        present = set(g.alternatives)
        ranking = [a for a in p.ballot(0) if a in present]
        return _rank_key(ranking, g)


class SeededRandom(TiebreakerKind):
    """Shuffle each tie class with a seeded Mersenne Twister.

    Classes are visited from the largest margin down, each starting from the
    label-sorted order, so the output is fully determined by the seed and the
    graph.
    """

    name = "random"

    def __init__(self, seed: int):
        self.seed = int(seed)

    def order(self, g, p=None):
        rng = random.Random(self.seed)
        edges = []
        for cls in _tie_classes(weak_defeat_edges(g)):
            cls.sort(key=lambda e: (e.source, e.target))
            rng.shuffle(cls)
            edges.extend(cls)
        return EdgeOrder(tuple(edges), self.describe())

    def describe(self):
        return f"random:{self.seed}"


class QuasiPareto(TiebreakerKind):
    """Prioritise quasi-Pareto domination edges inside each tie class.

    Within a class, edges ``(y, x)`` with ``y`` quasi-Pareto-dominating ``x``
    come before the other edges, each block following ``base``. Additionally
    ``(x, z)`` is placed after ``(y, z)`` and ``(y, x)`` whenever ``y``
    quasi-Pareto-dominates ``x``.
    """

    name = "quasi-pareto"

    def __init__(self, base: TiebreakerKind | None = None):
        base = Lexicographic() if base is None else base
        if isinstance(base, QuasiPareto):
            raise TiebreakError("quasi-pareto base must not itself be quasi-pareto")
        self.base = base
        self.needs_profile = base.needs_profile
        self.neutral = base.neutral

    def order(self, g, p=None):
        if self.needs_profile and p is None:
            raise TiebreakError(f"the {self.describe()} tiebreaker needs a profile")
        base_pos = {(e.source, e.target): i for i, e in enumerate(self.base.order(g, p))}
        dominated = quasi_pareto_pairs(g)
        q = set(dominated)
        edges = []
        for cls in _tie_classes(weak_defeat_edges(g)):
            edges.extend(self._order_class(cls, q, dominated, base_pos))
        return EdgeOrder(tuple(edges), self.describe())

    @staticmethod
    def _order_class(cls, q, dominated, base_pos):
        pairs = [(e.source, e.target) for e in cls]
        in_cls = set(pairs)
        succ = {e: set() for e in pairs}
        for e in pairs:
            if e in q:
                for f in pairs:
                    if f[1] == e[1] and f not in q:
                        succ[e].add(f)
        for y, x in dominated:
            for z_edge in pairs:
                if z_edge[0] != x:
                    continue
                z = z_edge[1]
                for before in ((y, z), (y, x)):
                    if before in in_cls and before != z_edge:
                        succ[before].add(z_edge)
        indeg = {e: 0 for e in pairs}
        for e in pairs:
            for f in succ[e]:
                indeg[f] += 1
        heap = [((e not in q), base_pos[e], e) for e in pairs if indeg[e] == 0]
        heapq.heapify(heap)
        by_pair = {(e.source, e.target): e for e in cls}
        out = []
        while heap:
            _, _, e = heapq.heappop(heap)
            out.append(by_pair[e])
            for f in succ[e]:
                indeg[f] -= 1
                if indeg[f] == 0:
                    heapq.heappush(heap, ((f not in q), base_pos[f], f))
        if len(out) != len(cls):
            raise TiebreakError("quasi-Pareto precedence constraints are cyclic")
        return out

    def describe(self):
        return f"quasi-pareto:{self.base.describe()}"


class ExplicitOrder(TiebreakerKind):
    """A fixed edge sequence; sub-elections use its restriction."""

    name = "explicit"

    def __init__(self, pairs: Sequence[tuple[str, str]]):
        self.sequence = tuple((str(s), str(t)) for s, t in pairs)
        if len(set(self.sequence)) != len(self.sequence):
            raise TiebreakError("explicit order repeats an edge")
        self._pos = {e: i for i, e in enumerate(self.sequence)}

    def order(self, g, p=None):
        edges = weak_defeat_edges(g)
        missing = [e for e in edges if (e.source, e.target) not in self._pos]
        if missing:
            raise TiebreakError(f"explicit order lacks edge ({missing[0].source},{missing[0].target})")
        edges.sort(key=lambda e: self._pos[(e.source, e.target)])
        validate_edge_order(g, edges)
        return EdgeOrder(tuple(edges), self.describe())

    def describe(self):
        return "explicit:" + ";".join(f"{s}>{t}" for s, t in self.sequence)


def make_edge_order(g: MarginGraph, p: Profile | None = None, kind: TiebreakerKind | None = None) -> EdgeOrder:
    kind = Lexicographic() if kind is None else kind
    return kind.order(g, p)


def parse_tiebreaker(spec: str) -> TiebreakerKind:
    """``lex[:ORDER] | first-voter | quasi-pareto[:BASE] | random:SEED``.

    ``ORDER`` is a comma-separated list of labels.
    """
    head, _, arg = spec.strip().partition(":")
    if head == "lex":
        return Lexicographic([a for a in arg.split(",") if a] if arg else None)
    if head == "first-voter":
        if arg:
            raise TiebreakError("first-voter takes no argument")
        return FirstVoter()
    if head == "quasi-pareto":
        return QuasiPareto(parse_tiebreaker(arg) if arg else None)
    if head == "random":
        try:
            return SeededRandom(int(arg))
        except ValueError:
            raise TiebreakError(f"random tiebreaker needs an integer seed, got {arg!r}") from None
    raise TiebreakError(f"unknown tiebreaker {spec!r}")


def parse_edge_order(text: str, g: MarginGraph) -> ExplicitOrder:
    """One ``SRC DST`` pair per line; checked against ``g``'s descending margins."""
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise TiebreakError(f"line {lineno}: expected 'SRC DST'")
        pairs.append((parts[0], parts[1]))
    kind = ExplicitOrder(pairs)
    kind.order(g)
    return kind


# -- consistency checks ------------------------------------------------------

def _as_function(f):
    if isinstance(f, TiebreakerKind):
        return f.order
    return f


def consistency_witness(f, p: Profile, x: str):
    """First pair of edges avoiding ``x`` whose relative order flips after removing ``x``.

    Returns ``None`` when the orders agree.
    """
    fn = _as_function(f)
    full = [e for e in fn(margin_graph(p), p).pairs() if x not in e]
    q = restrict(p, x)
    reduced = fn(margin_graph(q), q).pairs()
    if full == reduced:
        return None
    pos = {e: i for i, e in enumerate(reduced)}
    for i, a in enumerate(full):
        for b in full[i + 1:]:
            if pos[a] > pos[b]:
                return a, b
    return None


def check_consistent(f, p: Profile, x: str) -> bool:
    return consistency_witness(f, p, x) is None


def check_pareto_consistent(o: EdgeOrder, p: Profile) -> bool:
    pos = o.positions()
    for y, x in pareto_pairs(p):
        for z in p.alternatives:
            if z in (x, y) or (x, z) not in pos:
                continue
            if (y, z) not in pos or pos[(y, z)] > pos[(x, z)]:
                return False
    return True


def check_quasi_pareto_consistent(o: EdgeOrder, g: MarginGraph) -> bool:
    pos = o.positions()
    margin = {(e.source, e.target): e.margin for e in o.edges}
    dominated = quasi_pareto_pairs(g)
    q = set(dominated)
    for (y, x) in dominated:
        for y2 in g.alternatives:
            e2 = (y2, x)
            if y2 in (x, y) or e2 not in pos or e2 in q:
                continue
            if margin[e2] == margin[(y, x)] and pos[(y, x)] > pos[e2]:
                return False
        for z in g.alternatives:
            xz = (x, z)
            if z in (x, y) or xz not in pos:
                continue
            if (y, z) not in pos or pos[(y, z)] > pos[xz]:
                return False
            if pos[(y, x)] > pos[xz]:
                return False
    return True
