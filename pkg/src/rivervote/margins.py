"""Margin graphs and the path, dominance and covering relations built on them."""
from __future__ import annotations

import functools
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import kernels
from .ballots import Profile


class MarginError(ValueError):
    """Raised for malformed margin graphs or invalid queries on them."""


@functools.total_ordering
class _NoPath:
    """Strength of an unreachable pair; orders below every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("NoPath")

    def __repr__(self):
        return "NO_PATH"

    def __reduce__(self):
        return (_NoPath, ())


NO_PATH = _NoPath()


class Edge(NamedTuple):
    source: str
    target: str
    margin: int


class MarginGraph:
    """Antisymmetric integer margin matrix over an ordered list of alternatives."""

    __slots__ = ("alternatives", "array", "_index", "__dict__")

    def __init__(self, alternatives: Sequence[str], matrix):
        alts = tuple(alternatives)
        if len(set(alts)) != len(alts):
            raise MarginError("duplicate alternative label")
        arr = np.array(matrix, dtype=np.int64)
        if arr.shape != (len(alts), len(alts)):
            raise MarginError(f"matrix shape {arr.shape} does not match {len(alts)} alternatives")
        if (np.diag(arr) != 0).any():
            raise MarginError("diagonal margins must be zero")
        if not (arr == -arr.T).all():
            raise MarginError("margin matrix is not antisymmetric")
        arr.setflags(write=False)
        self.alternatives = alts
        self.array = arr
        self._index = {a: i for i, a in enumerate(alts)}

    @classmethod
    def from_margins(cls, alternatives: Sequence[str], margins: dict) -> "MarginGraph":
        """Build from ``{(x, y): m(x, y)}``; the reverse direction is inferred."""
        alts = list(alternatives)
        idx = {a: i for i, a in enumerate(alts)}
        arr = np.zeros((len(alts), len(alts)), dtype=np.int64)
        for (x, y), v in margins.items():
            if x == y:
                raise MarginError(f"self-margin for {x!r}")
            i, j = idx[x], idx[y]
            if arr[i, j] != 0 and arr[i, j] != v:
                raise MarginError(f"conflicting margins for ({x}, {y})")
            arr[i, j] = v
            arr[j, i] = -v
        return cls(alts, arr)

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise MarginError(f"{x!r} is not an alternative") from None

    def margin(self, x: str, y: str) -> int:
        return int(self.array[self.index(x), self.index(y)])

    def __len__(self):
        return len(self.alternatives)

    def __eq__(self, other):
        if not isinstance(other, MarginGraph):
            return NotImplemented
        return self.alternatives == other.alternatives and np.array_equal(self.array, other.array)

    def __hash__(self):
        return hash((self.alternatives, self.array.tobytes()))

    def __repr__(self):
        return f"MarginGraph({list(self.alternatives)!r}, {self.array.tolist()!r})"

    @cached_property
    def rows(self) -> list[list[int]]:
        return self.array.tolist()

    def restrict(self, x: str) -> "MarginGraph":
        i = self.index(x)
        keep = [k for k in range(len(self.alternatives)) if k != i]
        return MarginGraph([self.alternatives[k] for k in keep], self.array[np.ix_(keep, keep)])

    def subgraph(self, alternatives: Iterable[str]) -> "MarginGraph":
        keep = sorted(self.index(a) for a in alternatives)
        return MarginGraph([self.alternatives[k] for k in keep], self.array[np.ix_(keep, keep)])

    def relabel(self, mapping: dict) -> "MarginGraph":
        return MarginGraph([mapping[a] for a in self.alternatives], self.array)

    @cached_property
    def is_uniquely_weighted(self) -> bool:
        """No zero margins off the diagonal and all positive margins distinct."""
        m = len(self.alternatives)
        if m < 2:
            return True
        iu = np.triu_indices(m, 1)
        vals = np.abs(self.array[iu])
        return bool((vals != 0).all() and len(np.unique(vals)) == len(vals))

    @cached_property
    def strength_array(self) -> np.ndarray:
        arr = kernels.widest_paths(self.array)
        arr.setflags(write=False)
        return arr


def margin_graph(p: Profile) -> MarginGraph:
    return MarginGraph(p.alternatives, p.margin_array)


# -- margin graph text format ------------------------------------------------

def parse_margin_graph(text: str) -> MarginGraph:
    """Parse ``margin SRC DST VALUE`` lines with an optional ``candidates:`` header.

    Unlisted pairs default to zero; a negative value stands for the reverse
    edge.
    """
    declared = None
    seen: list[str] = []
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.lower().startswith("candidates:"):
            declared = line.split(":", 1)[1].split()
            continue
        parts = line.split()
        if len(parts) != 4 or parts[0] != "margin":
            raise MarginError(f"line {lineno}: expected 'margin SRC DST VALUE', got {line!r}")
        _, x, y, v = parts
        try:
            value = int(v)
        except ValueError:
            raise MarginError(f"line {lineno}: margin must be an integer") from None
        if value == 0:
            raise MarginError(f"line {lineno}: listed margins must be nonzero")
        if x == y:
            raise MarginError(f"line {lineno}: self-margin")
        key = (x, y) if (y, x) not in entries else (y, x)
        if key in entries:
            raise MarginError(f"line {lineno}: pair {x} {y} listed twice")
        entries[key] = value if key == (x, y) else -value
        for a in (x, y):
            if a not in seen:
                seen.append(a)
    alts = declared if declared is not None else seen
    unknown = set(seen) - set(alts)
    if unknown:
        raise MarginError(f"undeclared alternative(s) {sorted(unknown)}")
    if not alts:
        raise MarginError("empty margin graph")
    return MarginGraph.from_margins(alts, entries)


def format_margin_graph(g: MarginGraph) -> str:
    lines = ["candidates: " + " ".join(g.alternatives)]
    rows = g.rows
    for i, x in enumerate(g.alternatives):
        for j, y in enumerate(g.alternatives):
            if rows[i][j] > 0:
                lines.append(f"margin {x} {y} {rows[i][j]}")
    return "\n".join(lines) + "\n"


def read_margin_graph(path) -> MarginGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_margin_graph(fh.read())


# -- edges and paths ---------------------------------------------------------

def weak_defeat_edges(g: MarginGraph) -> list[Edge]:
    """All ordered pairs with margin >= 0; a tied pair yields both directions."""
    alts = g.alternatives
    rows = g.rows
    return [
        Edge(alts[i], alts[j], rows[i][j])
        for i in range(len(alts))
        for j in range(len(alts))
        if i != j and rows[i][j] >= 0
    ]


def path_strength(g: MarginGraph, path: Sequence[str]) -> int:
    if len(path) < 2:
        raise MarginError("a path needs at least two alternatives")
    if len(set(path)) != len(path):
        raise MarginError("repeated vertex on path")
    steps = [g.margin(a, b) for a, b in zip(path, path[1:])]
    if min(steps) <= 0:
        raise MarginError("not a majority path: non-positive step margin")
    return min(steps)


class StrengthMatrix:
    """Strongest majority path strengths; unreachable pairs hold ``NO_PATH``."""

    def __init__(self, alternatives: Sequence[str], array):
        self.alternatives = tuple(alternatives)
        self.array = np.asarray(array, dtype=np.int64)
        self._index = {a: i for i, a in enumerate(self.alternatives)}

    def __getitem__(self, pair):
        x, y = pair
        v = int(self.array[self._index[x], self._index[y]])
        return NO_PATH if v < 0 else v

    def __eq__(self, other):
        if not isinstance(other, StrengthMatrix):
            return NotImplemented
        return self.alternatives == other.alternatives and np.array_equal(self.array, other.array)

    def to_dict(self) -> dict:
        return {
            f"{x}>{y}": (None if self[x, y] is NO_PATH else self[x, y])
            for x in self.alternatives
            for y in self.alternatives
            if x != y
        }


def strongest_paths(g: MarginGraph) -> StrengthMatrix:
    return StrengthMatrix(g.alternatives, g.strength_array)


def condorcet_winner(g: MarginGraph) -> str | None:
    rows = g.rows
    m = len(rows)
    for i in range(m):
        if all(rows[i][j] > 0 for j in range(m) if j != i):
            return g.alternatives[i]
    return None


def condorcet_loser(g: MarginGraph) -> str | None:
    rows = g.rows
    m = len(rows)
    if m < 2:
        return None
    for i in range(m):
        if all(rows[i][j] < 0 for j in range(m) if j != i):
            return g.alternatives[i]
    return None


# -- dominance ---------------------------------------------------------------

def is_dominant(g: MarginGraph, X: Iterable[str]) -> bool:
    members = {g.index(a) for a in X}
    if not members:
        raise MarginError("dominance is defined for nonempty sets")
    rows = g.rows
    outside = [j for j in range(len(rows)) if j not in members]
    return all(rows[i][j] > 0 for i in members for j in outside)


def copeland_scores(g: MarginGraph) -> list[int]:
    return [sum((v > 0) - (v < 0) for v in row) for row in g.rows]


def smith_set(g: MarginGraph) -> frozenset[str]:
    """Smallest dominant set, grown from a top Copeland alternative."""
    rows = g.rows
    m = len(rows)
    scores = copeland_scores(g)
    seed = max(range(m), key=lambda i: (scores[i], -i))
    members = {seed}
    frontier = [seed]
    while frontier:
        i = frontier.pop()
        for j in range(m):
            if j not in members and rows[i][j] <= 0:
                members.add(j)
                frontier.append(j)
    return frozenset(g.alternatives[i] for i in members)


def _immune_indices(g: MarginGraph) -> list[int]:
    rows = g.rows
    s = g.strength_array.tolist()
    m = len(rows)
    return [
        x
        for x in range(m)
        if all(rows[y][x] <= 0 or s[x][y] >= rows[y][x] for y in range(m) if y != x)
    ]


def is_immune(g: MarginGraph, x: str) -> bool:
    return g.index(x) in _immune_indices(g)


def immune_set(g: MarginGraph) -> frozenset[str]:
    return frozenset(g.alternatives[i] for i in _immune_indices(g))


def covers(g: MarginGraph, y: str, x: str) -> bool:
    """``y`` defeats ``x`` and does at least as well as ``x`` against everyone else."""
    if y == x:
        raise MarginError("covering compares two distinct alternatives")
    i, j = g.index(y), g.index(x)
    rows = g.rows
    if rows[i][j] <= 0:
        return False
    return all(rows[i][k] >= rows[j][k] for k in range(len(rows)) if k not in (i, j))


def pareto_dominates(p: Profile, y: str, x: str) -> bool:
    if y == x:
        raise MarginError("Pareto dominance compares two distinct alternatives")
    idx = {a: i for i, a in enumerate(p.alternatives)}
    if y not in idx or x not in idx:
        raise MarginError("unknown alternative")
    return int(p.margin_array[idx[y], idx[x]]) == p.n_voters


def quasi_pareto_dominates(g: MarginGraph, y: str, x: str) -> bool:
    """``y`` covers ``x`` and ``m(y, x)`` is at least every other margin into or out of ``x``."""
    if not covers(g, y, x):
        return False
    i, j = g.index(y), g.index(x)
    rows = g.rows
    myx = rows[i][j]
    return all(myx >= rows[k][j] and myx >= rows[j][k] for k in range(len(rows)) if k not in (i, j))


def quasi_pareto_pairs(g: MarginGraph) -> list[tuple[str, str]]:
    """All ``(y, x)`` with ``y`` quasi-Pareto-dominating ``x``."""
    alts = g.alternatives
    return [(y, x) for y in alts for x in alts if y != x and quasi_pareto_dominates(g, y, x)]


def pareto_pairs(p: Profile) -> list[tuple[str, str]]:
    arr = p.margin_array
    n = p.n_voters
    alts = p.alternatives
    return [
        (alts[i], alts[j])
        for i in range(len(alts))
        for j in range(len(alts))
        if i != j and int(arr[i, j]) == n
    ]
