"""Instance-level axiom checks and a seeded fuzzer over random profiles."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from .ballots import (
    Profile,
    ProfileTransform,
    format_profile,
    inject_clone,
    random_profile,
    restrict,
)
from .margins import (
    MarginGraph,
    condorcet_loser,
    condorcet_winner,
    margin_graph,
    pareto_pairs,
    quasi_pareto_pairs,
    smith_set,
)
from .methods import METHODS, run_method
from .tiebreak import Lexicographic, QuasiPareto, SeededRandom, TiebreakerKind, RANDOM_ALGORITHM

HOLDS = "holds"
VIOLATED = "violated"

#: Methods that never consult a tiebreaker, hence always anonymous and neutral.
TIE_FREE = {"split-cycle", "beat-path"}


class ConfigurationError(ValueError):
    """Raised when a check or campaign is asked to run under invalid settings."""


@dataclass(frozen=True)
class AxiomReport:
    axiom: str
    method: str
    profile: Profile
    verdict: str
    witness: ProfileTransform | None = None
    before: frozenset = frozenset()
    after: frozenset | None = None
    tiebreaker: TiebreakerKind | None = field(default=None, compare=False)
    detail: str = ""
    seed: int | None = None
    trial: int | None = None

    @property
    def violated(self) -> bool:
        return self.verdict == VIOLATED

    def replay(self) -> tuple[frozenset, frozenset | None]:
        """Recompute the before/after winner sets from the stored instance."""
        before = _winners(self.method, self.profile, self.tiebreaker)
        if self.witness is None:
            return before, None
        return before, _winners(self.method, self.witness.apply(self.profile), self.tiebreaker)

    def to_dict(self) -> dict:
        kind = self.tiebreaker
        d = {
            "axiom": self.axiom,
            "method": self.method,
            "verdict": self.verdict,
            "tiebreaker": kind.describe() if kind is not None else None,
            "seed": self.seed,
            "trial": self.trial,
            "profile": format_profile(self.profile),
            "witness": self.witness.to_dict() if self.witness is not None else None,
            "before": sorted(self.before),
            "after": sorted(self.after) if self.after is not None else None,
            "detail": self.detail,
        }
        if isinstance(kind, SeededRandom) or (isinstance(kind, QuasiPareto) and isinstance(kind.base, SeededRandom)):
            d["random_algorithm"] = RANDOM_ALGORITHM
        return d


def _winners(method: str, p: Profile, kind: TiebreakerKind | None, g: MarginGraph | None = None) -> frozenset:
    return run_method(method, graph=g, profile=p, kind=kind).winners


def _kind(kind):
    return Lexicographic() if kind is None else kind


def _is_random(kind) -> bool:
    if isinstance(kind, QuasiPareto):
        kind = kind.base
    return isinstance(kind, SeededRandom)


def _require_consistent(axiom: str, kind) -> None:
    if _is_random(kind):
        raise ConfigurationError(f"{axiom} needs a consistent tiebreaker; {kind.describe()} is not")


def _report(axiom, method, p, kind, ok, **kw) -> AxiomReport:
    return AxiomReport(axiom, method, p, HOLDS if ok else VIOLATED, tiebreaker=kind, **kw)


# -- single-profile axioms ---------------------------------------------------

def check_condorcet(method: str, p: Profile, kind: TiebreakerKind | None = None) -> AxiomReport:
    kind = _kind(kind)
    g = margin_graph(p)
    won = _winners(method, p, kind, g)
    cw, cl = condorcet_winner(g), condorcet_loser(g)
    if cw is not None and won != {cw}:
        return _report("condorcet", method, p, kind, False, before=won, detail=f"Condorcet winner {cw} not sole winner")
    if cl is not None and cl in won and len(p.alternatives) > 1:
        return _report("condorcet", method, p, kind, False, before=won, detail=f"Condorcet loser {cl} wins")
    return _report("condorcet", method, p, kind, True, before=won)


def check_smith(method: str, p: Profile, kind: TiebreakerKind | None = None) -> AxiomReport:
    kind = _kind(kind)
    g = margin_graph(p)
    won = _winners(method, p, kind, g)
    outside = won - smith_set(g)
    detail = f"winners outside the Smith set: {sorted(outside)}" if outside else ""
    return _report("smith", method, p, kind, not outside, before=won, detail=detail)


def check_pareto(method: str, p: Profile, kind: TiebreakerKind | None = None) -> AxiomReport:
    kind = _kind(kind)
    won = _winners(method, p, kind)
    bad = sorted({x for y, x in pareto_pairs(p) if x in won})
    detail = f"Pareto-dominated winners: {bad}" if bad else ""
    return _report("pareto", method, p, kind, not bad, before=won, detail=detail)


def check_smith_and_pareto(method: str, p: Profile, kind: TiebreakerKind | None = None) -> AxiomReport:
    s = check_smith(method, p, kind)
    if s.violated:
        return replace(s, axiom="smith-pareto")
    return replace(check_pareto(method, p, kind), axiom="smith-pareto")


# -- variable-profile axioms -------------------------------------------------

def _lift_targets(p: Profile):
    """One voter per ballot group, plus voter 0 on its own (first-voter tiebreaking reads it)."""
    start = 0
    for c, r in p.groups:
        yield start, r
        if start == 0 and c > 1:
            yield 1, r
        start += c


def check_monotonicity(method: str, p: Profile, kind: TiebreakerKind | None = None) -> AxiomReport:
    """Lift each winner by one position on single ballots; it must stay a winner.

    Voters sharing a ranking produce the same margin change, so one voter per
    group is tried (voter 0 separately, as first-voter tiebreaking depends on
    the ballot order).
    """
    kind = _kind(kind)
    g = margin_graph(p)
    won = _winners(method, p, kind, g)
    needs_ballots = method == "stable-voting" or kind.needs_profile
    base = g.array
    for x in sorted(won):
        i = g.index(x)
        for voter, r in _lift_targets(p):
            pos = r.index(x)
            if pos == 0:
                continue
            t = ProfileTransform("lift", alternative=x, voter=voter)
            if needs_ballots:
                q = t.apply(p)
                after = _winners(method, q, kind)
            else:
                j = g.index(r[pos - 1])
                arr = base.copy()
                arr[i, j] += 2
                arr[j, i] -= 2
                after = _winners(method, None, kind, MarginGraph(g.alternatives, arr))
            if x not in after:
                return _report("monotonicity", method, p, kind, False, witness=t, before=won, after=after,
                               detail=f"lifting {x} for voter {voter} removes it")
    return _report("monotonicity", method, p, kind, True, before=won)


def _removal_check(axiom: str, method: str, p: Profile, kind, removable: Sequence[str]) -> AxiomReport:
    won = _winners(method, p, kind)
    for x in removable:
        t = ProfileTransform("restrict", alternative=x)
        after = _winners(method, restrict(p, x), kind)
        if after != won:
            return _report(axiom, method, p, kind, False, witness=t, before=won, after=after,
                           detail=f"removing {x} changes the winners")
    return _report(axiom, method, p, kind, True, before=won)


def check_isda(method: str, p: Profile, kind: TiebreakerKind | None = None) -> AxiomReport:
    kind = _kind(kind)
    _require_consistent("isda", kind)
    s = smith_set(margin_graph(p))
    return _removal_check("isda", method, p, kind, [x for x in p.alternatives if x not in s])


def check_ipda(method: str, p: Profile, kind: TiebreakerKind | None = None) -> AxiomReport:
    kind = _kind(kind)
    _require_consistent("ipda", kind)
    dominated = sorted({x for _, x in pareto_pairs(p)})
    return _removal_check("ipda", method, p, kind, dominated)


def check_iqda(method: str, p: Profile, kind: TiebreakerKind | None = None) -> AxiomReport:
    kind = _kind(kind)
    _require_consistent("iqda", kind)
    dominated = sorted({x for _, x in quasi_pareto_pairs(margin_graph(p))})
    return _removal_check("iqda", method, p, kind, dominated)


def _anonymity_applies(method, kind, g) -> bool:
    return method in TIE_FREE or kind.anonymous or g.is_uniquely_weighted


def _neutrality_applies(method, kind, g) -> bool:
    return method in TIE_FREE or kind.neutral or g.is_uniquely_weighted


def check_anonymity(method, p, kind=None, samples=8, seed=0, force=False) -> AxiomReport:
    """Random voter permutations must leave the winners unchanged.

    Skipped (reported as holding, with a note) when ties exist and the
    tiebreaker is not anonymous, unless ``force`` is set.
    """
    kind = _kind(kind)
    g = margin_graph(p)
    won = _winners(method, p, kind, g)
    if not force and not _anonymity_applies(method, kind, g):
        return _report("anonymity", method, p, kind, True, before=won, detail="skipped: tiebreaker not anonymous")
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        perm = tuple(int(i) for i in rng.permutation(p.n_voters))
        t = ProfileTransform("permute-voters", mapping=perm)
        after = _winners(method, t.apply(p), kind)
        if after != won:
            return _report("anonymity", method, p, kind, False, witness=t, before=won, after=after,
                           detail="voter permutation changes the winners")
    return _report("anonymity", method, p, kind, True, before=won)


def check_neutrality(method, p, kind=None, samples=8, seed=0, force=False) -> AxiomReport:
    """Random relabellings must map the winners through the relabelling."""
    kind = _kind(kind)
    g = margin_graph(p)
    won = _winners(method, p, kind, g)
    if not force and not _neutrality_applies(method, kind, g):
        return _report("neutrality", method, p, kind, True, before=won, detail="skipped: tiebreaker not neutral")
    rng = np.random.default_rng(seed)
    alts = list(p.alternatives)
    for _ in range(samples):
        image = [alts[i] for i in rng.permutation(len(alts))]
        pi = dict(zip(alts, image))
        t = ProfileTransform("permute-alternatives", mapping=tuple(pi.items()))
        after = _winners(method, t.apply(p), kind)
        if after != {pi[x] for x in won}:
            return _report("neutrality", method, p, kind, False, witness=t, before=won, after=after,
                           detail="relabelling does not commute with the winners")
    return _report("neutrality", method, p, kind, True, before=won)


def check_anonymity_neutrality(method, p, samples=8, seed=0, kind=None, force=False) -> AxiomReport:
    a = check_anonymity(method, p, kind, samples, seed, force)
    if a.violated:
        return replace(a, axiom="anonymity-neutrality")
    return replace(check_neutrality(method, p, kind, samples, seed + 1, force), axiom="anonymity-neutrality")


AXIOMS: dict[str, Callable] = {
    "condorcet": check_condorcet,
    "smith": check_smith,
    "pareto": check_pareto,
    "monotonicity": check_monotonicity,
    "anonymity": check_anonymity,
    "neutrality": check_neutrality,
    "isda": check_isda,
    "ipda": check_ipda,
    "iqda": check_iqda,
}

#: Methods whose failure of an axiom is known but for which no witness is shipped:
#: a campaign that finds nothing is inconclusive rather than evidence of the axiom.
EXPECTED_UNWITNESSED = {("stable-voting", "monotonicity")}


def check(axiom: str, method: str, p: Profile, kind: TiebreakerKind | None = None) -> AxiomReport:
    if axiom not in AXIOMS:
        raise ConfigurationError(f"unknown axiom {axiom!r}; choose from {', '.join(AXIOMS)}")
    if method not in METHODS:
        raise ConfigurationError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    return AXIOMS[axiom](method, p, kind)


# -- fuzzing -----------------------------------------------------------------

def _as_range(v, name) -> tuple[int, int]:
    lo, hi = (v, v) if isinstance(v, int) else (int(v[0]), int(v[1]))
    if lo < 1 or hi < lo:
        raise ConfigurationError(f"{name} must be a positive count or range, got {v!r}")
    return lo, hi


@dataclass(frozen=True)
class FuzzConfig:
    """Campaign settings.

    ``alternatives`` and ``voters`` are counts or inclusive ``(lo, hi)``
    ranges; with ``odd_voters`` only odd voter counts are drawn. Clone
    injection adds a Pareto-dominated copy of a random alternative; the
    ``adjacent`` placement puts it right below the original, ``random``
    anywhere below it, and ``auto`` picks ``random`` only when uniquely
    weighted profiles are required (an adjacent clone always ties margins).
    """

    alternatives: int | tuple[int, int] = 4
    voters: int | tuple[int, int] = 11
    trials: int = 100
    seed: int = 0
    unique_weights_only: bool = False
    tiebreaker: TiebreakerKind | None = None
    inject_clone: bool = False
    clone_placement: str = "auto"
    odd_voters: bool = True
    max_draws: int = 10000

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigurationError("trials must be at least 1")
        _as_range(self.alternatives, "alternatives")
        lo, hi = _as_range(self.voters, "voters")
        if self.odd_voters and lo == hi and lo % 2 == 0:
            raise ConfigurationError(f"odd_voters is set but voters is fixed at {lo}")
        if self.clone_placement not in ("auto", "adjacent", "random"):
            raise ConfigurationError(f"unknown clone placement {self.clone_placement!r}")
        if self.unique_weights_only and self.inject_clone and self.clone_placement == "adjacent":
            raise ConfigurationError("an adjacent clone never yields a uniquely weighted profile")

    @property
    def placement(self) -> str:
        if self.clone_placement != "auto":
            return self.clone_placement
        return "random" if (self.unique_weights_only and self.inject_clone) else "adjacent"


def draw_profile(cfg: FuzzConfig, trial: int) -> Profile | None:
    """The profile for one trial, or None if the uniquely-weighted filter rejected every draw."""
    rng = np.random.default_rng([cfg.seed, trial])
    mlo, mhi = _as_range(cfg.alternatives, "alternatives")
    nlo, nhi = _as_range(cfg.voters, "voters")
    choices = [n for n in range(nlo, nhi + 1) if n % 2 == 1 or not cfg.odd_voters]
    for _ in range(cfg.max_draws):
        m = int(rng.integers(mlo, mhi + 1))
        n = int(choices[rng.integers(len(choices))])
        p = random_profile(m, n, rng=rng)
        if cfg.inject_clone:
            original = p.alternatives[int(rng.integers(m))]
            p = inject_clone(p, original, rng=rng if cfg.placement == "random" else None)
        if not cfg.unique_weights_only or margin_graph(p).is_uniquely_weighted:
            return p
    return None


def fuzz(method: str, axiom: str, cfg: FuzzConfig, progress: Callable[[int], None] | None = None) -> list[AxiomReport]:
    """Run ``cfg.trials`` seeded trials and return the violated reports in trial order."""
    if axiom not in AXIOMS:
        raise ConfigurationError(f"unknown axiom {axiom!r}")
    if method not in METHODS:
        raise ConfigurationError(f"unknown method {method!r}")
    kind = _kind(cfg.tiebreaker)
    if axiom in ("isda", "ipda", "iqda"):
        _require_consistent(axiom, kind)
    checker = AXIOMS[axiom]
    found = []
    for trial in range(cfg.trials):
        p = draw_profile(cfg, trial)
        if p is None:
            continue
        if axiom in ("anonymity", "neutrality"):
            r = checker(method, p, kind, seed=cfg.seed * 1000003 + trial)
        else:
            r = checker(method, p, kind)
        if r.violated:
            found.append(replace(r, seed=cfg.seed, trial=trial))
        if progress is not None:
            progress(trial)
    return found


def campaign_status(method: str, axiom: str, violations: Sequence[AxiomReport]) -> str:
    """``violations``, ``none`` or ``inconclusive`` (no witness found for a known failure)."""
    if violations:
        return "violations"
    if (method, axiom) in EXPECTED_UNWITNESSED:
        return "inconclusive"
    return "none"
