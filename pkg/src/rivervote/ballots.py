"""Preference profiles: data model, text format, transformations, generators."""
from __future__ import annotations

import string
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels


class ProfileError(ValueError):
    """Raised for malformed profiles or invalid transformation parameters."""


@dataclass(frozen=True)
class Profile:
    """Strict rankings grouped as ``(count, ranking)`` pairs.

    Voters are numbered from 0 by expanding the groups in order. Instances are
    immutable; every transformation returns a new profile.
    """

    alternatives: tuple[str, ...]
    groups: tuple[tuple[int, tuple[str, ...]], ...]

    def __init__(self, alternatives: Iterable[str], groups: Iterable[tuple[int, Sequence[str]]]):
        alts = tuple(alternatives)
        grps = tuple((int(c), tuple(r)) for c, r in groups)
        object.__setattr__(self, "alternatives", alts)
        object.__setattr__(self, "groups", grps)
        self._validate()

    def _validate(self) -> None:
        alts = self.alternatives
        if not alts:
            raise ProfileError("profile needs at least one alternative")
        if any(not a for a in alts):
            raise ProfileError("alternative labels must be non-empty")
        if len(set(alts)) != len(alts):
            raise ProfileError(f"duplicate alternative label in {alts}")
        if not self.groups:
            raise ProfileError("profile needs at least one voter")
        aset = set(alts)
        for count, ranking in self.groups:
            if count < 1:
                raise ProfileError(f"ballot count must be positive, got {count}")
            if len(set(ranking)) != len(ranking):
                raise ProfileError(f"duplicate alternative in ranking {' '.join(ranking)}")
            if set(ranking) != aset:
                missing = aset - set(ranking)
                extra = set(ranking) - aset
                if extra:
                    raise ProfileError(f"unknown alternative(s) {sorted(extra)} in ranking")
                raise ProfileError(f"ranking {' '.join(ranking)} omits {sorted(missing)}")

    @property
    def n_voters(self) -> int:
        return sum(c for c, _ in self.groups)

    @property
    def n_alternatives(self) -> int:
        return len(self.alternatives)

    def ballots(self) -> Iterator[tuple[str, ...]]:
        """Iterate individual ballots in voter order."""
        for count, ranking in self.groups:
            for _ in range(count):
                yield ranking

    def ballot(self, voter: int) -> tuple[str, ...]:
        if voter < 0:
            raise ProfileError(f"voter index {voter} out of range")
        for count, ranking in self.groups:
            if voter < count:
                return ranking
            voter -= count
        raise ProfileError("voter index out of range")

    @cached_property
    def margin_array(self) -> np.ndarray:
        index = {a: i for i, a in enumerate(self.alternatives)}
        m = len(self.alternatives)
        positions = np.empty((len(self.groups), m), dtype=np.int64)
        for k, (_, ranking) in enumerate(self.groups):
            for rank, a in enumerate(ranking):
                positions[k, index[a]] = rank
        counts = np.fromiter((c for c, _ in self.groups), dtype=np.int64, count=len(self.groups))
        arr = kernels.margin_matrix(positions, counts)
        arr.setflags(write=False)
        return arr

    def __str__(self) -> str:
        return format_profile(self)


@dataclass(frozen=True)
class ProfileTransform:
    """A recorded change to a profile, kept as a replayable witness.

    ``kind`` is one of ``restrict``, ``lift``, ``permute-voters`` and
    ``permute-alternatives``. ``alternative`` is used by ``restrict`` and
    ``lift``, ``voter`` by ``lift``, and ``mapping`` by the permutations:
    a voter order (tuple of old indices) or an alternative relabelling
    (tuple of ``(old, new)`` pairs).
    """

    kind: str
    alternative: str | None = None
    voter: int | None = None
    mapping: tuple = field(default=())

    def apply(self, p: Profile) -> Profile:
        if self.kind == "restrict":
            return restrict(p, self.alternative)
        if self.kind == "lift":
            return lift_one_position(p, self.voter, self.alternative)
        if self.kind in ("permute-voters", "permute-alternatives"):
            return apply_permutation(p, self)
        raise ProfileError(f"unknown transform kind {self.kind!r}")

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind}
        if self.alternative is not None:
            d["alternative"] = self.alternative
        if self.voter is not None:
            d["voter"] = self.voter
        if self.mapping:
            d["mapping"] = [list(x) if isinstance(x, tuple) else x for x in self.mapping]
        return d


# -- text format -------------------------------------------------------------

def parse_profile(text: str) -> Profile:
    """Parse the line-oriented profile format.

    ``candidates: a b c`` declares the alternative order (optional, otherwise
    first appearance order); ``#`` starts a comment line; ballot lines read
    ``COUNT: alt alt ...``.
    """
    declared: list[str] | None = None
    groups = []
    first_seen: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise ProfileError(f"line {lineno}: expected 'COUNT: ranking', got {line!r}")
        head = head.strip()
        if head.lower() == "candidates":
            if declared is not None:
                raise ProfileError(f"line {lineno}: candidates declared twice")
            declared = rest.split()
            continue
        try:
            count = int(head)
        except ValueError:
            raise ProfileError(f"line {lineno}: count must be an integer, got {head!r}") from None
        if count < 1:
            raise ProfileError(f"line {lineno}: ballot count must be positive, got {count}")
        ranking = rest.split()
        for a in ranking:
            if a not in first_seen:
                first_seen.append(a)
        groups.append((count, ranking))
    if not groups:
        raise ProfileError("empty profile: no ballot lines")
    return Profile(declared if declared is not None else first_seen, groups)


def format_profile(p: Profile, header: bool = True) -> str:
    lines = []
    if header:
        lines.append("candidates: " + " ".join(p.alternatives))
    lines.extend(f"{c}: {' '.join(r)}" for c, r in p.groups)
    return "\n".join(lines) + "\n"


def read_profile(path) -> Profile:
    with open(path, encoding="utf-8") as fh:
        return parse_profile(fh.read())


# -- transformations ---------------------------------------------------------

def _merge_adjacent(groups):
    out: list[list] = []
    for c, r in groups:
        if out and out[-1][1] == r:
            out[-1][0] += c
        else:
            out.append([c, r])
    return [(c, r) for c, r in out]


def restrict(p: Profile, x: str) -> Profile:
    """Remove ``x`` from every ballot. Voter order and counts are kept."""
    if x not in p.alternatives:
        raise ProfileError(f"{x!r} is not an alternative")
    if len(p.alternatives) < 2:
        raise ProfileError("cannot remove the only alternative")
    alts = [a for a in p.alternatives if a != x]
    groups = [(c, tuple(a for a in r if a != x)) for c, r in p.groups]
    return Profile(alts, _merge_adjacent(groups))


def lift_one_position(p: Profile, voter: int, x: str) -> Profile:
    """Swap ``x`` with its predecessor on the ballot of a single voter."""
    if x not in p.alternatives:
        raise ProfileError(f"{x!r} is not an alternative")
    if voter < 0 or voter >= p.n_voters:
        raise ProfileError(f"voter index {voter} out of range 0..{p.n_voters - 1}")
    groups = []
    offset = 0
    for c, r in p.groups:
        if offset <= voter < offset + c:
            i = r.index(x)
            if i == 0:
                raise ProfileError(f"{x!r} is already top-ranked by voter {voter}")
            lifted = list(r)
            lifted[i - 1], lifted[i] = lifted[i], lifted[i - 1]
            before = voter - offset
            after = c - before - 1
            if before:
                groups.append((before, r))
            groups.append((1, tuple(lifted)))
            if after:
                groups.append((after, r))
        else:
            groups.append((c, r))
        offset += c
    return Profile(p.alternatives, groups)


def apply_permutation(p: Profile, t: ProfileTransform) -> Profile:
    """Reorder voters or relabel alternatives.

    ``permute-voters``: ``t.mapping[i]`` is the old index of the voter placed
    at position ``i``. ``permute-alternatives``: ``t.mapping`` holds
    ``(old, new)`` label pairs forming a bijection; the declared alternative
    order is relabelled position by position.
    """
    if t.kind == "permute-voters":
        perm = list(t.mapping)
        n = p.n_voters
        if sorted(perm) != list(range(n)):
            raise ProfileError("voter mapping is not a bijection on 0..n-1")
        ballots = list(p.ballots())
        return Profile(p.alternatives, _merge_adjacent([(1, ballots[i]) for i in perm]))
    if t.kind == "permute-alternatives":
        pi = dict(t.mapping)
        if set(pi) != set(p.alternatives) or len(set(pi.values())) != len(pi):
            raise ProfileError("alternative mapping is not a bijection")
        return Profile(
            [pi[a] for a in p.alternatives],
            [(c, tuple(pi[a] for a in r)) for c, r in p.groups],
        )
    raise ProfileError(f"not a permutation transform: {t.kind!r}")


def inject_clone(p: Profile, original: str, label: str | None = None, rng=None) -> Profile:
    """Add a Pareto-dominated copy of ``original``.

    Without ``rng`` the copy sits directly below the original on every ballot;
    with a numpy ``Generator`` it is placed uniformly at random among the
    positions below the original, ballot by ballot.
    """
    if original not in p.alternatives:
        raise ProfileError(f"{original!r} is not an alternative")
    if label is None:
        label = original + "'"
        while label in p.alternatives:
            label += "'"
    elif label in p.alternatives:
        raise ProfileError(f"label {label!r} already in use")
    groups = []
    if rng is None:
        for c, r in p.groups:
            i = r.index(original)
            groups.append((c, r[: i + 1] + (label,) + r[i + 1:]))
    else:
        for r in p.ballots():
            i = r.index(original)
            j = int(rng.integers(i + 1, len(r) + 1))
            groups.append((1, r[:j] + (label,) + r[j:]))
        groups = _merge_adjacent(groups)
    alts = list(p.alternatives)
    alts.insert(alts.index(original) + 1, label)
    return Profile(alts, groups)


# -- generators --------------------------------------------------------------

def default_labels(m: int) -> list[str]:
    if m <= 26:
        return list(string.ascii_lowercase[:m])
    return [f"a{i}" for i in range(m)]


def random_profile(m: int, n: int, seed: int | None = None, rng=None) -> Profile:
    """Impartial culture: ``n`` independent uniform linear orders over ``m`` labels.

    Uses numpy's PCG64 ``Generator`` seeded with ``seed`` unless an explicit
    ``rng`` is passed.
    """
    if m < 1 or n < 1:
        raise ProfileError("need m >= 1 and n >= 1")
    if rng is None:
        rng = np.random.default_rng(seed)
    labels = default_labels(m)
    groups = []
    for _ in range(n):
        perm = rng.permutation(m)
        groups.append((1, tuple(labels[i] for i in perm)))
    return Profile(labels, _merge_adjacent(groups))


def mcgarvey_profile(g) -> Profile:
    """Realize an even-margin graph as a profile with exactly those margins.

    For each ``m(x, y) = 2k > 0`` add ``k`` ballot pairs ``x y L`` and
    ``reverse(L) x y``, where ``L`` lists the remaining alternatives in
    declared order. Each pair adds 2 to ``m(x, y)`` and cancels everywhere
    else. An all-zero graph gets one cancelling pair.
    """
    from .margins import MarginError

    alts = list(g.alternatives)
    arr = g.array
    m = len(alts)
    if not (arr == -arr.T).all():
        raise MarginError("margin matrix is not antisymmetric")
    if (arr % 2 != 0).any():
        raise MarginError("all margins must be even")
    groups = []
    for i in range(m):
        for j in range(m):
            v = int(arr[i, j])
            if v <= 0:
                continue
            x, y = alts[i], alts[j]
            rest = tuple(a for a in alts if a not in (x, y))
            groups.append((v // 2, (x, y) + rest))
            groups.append((v // 2, tuple(reversed(rest)) + (x, y)))
    if not groups:
        groups = [(1, tuple(alts)), (1, tuple(reversed(alts)))]
    return Profile(alts, groups)
