"""Brute-force reference computations, independent of the package internals."""
from __future__ import annotations

from itertools import combinations, permutations


def ballot_margins(alternatives, groups):
    """Count pairwise preferences directly from the ballots."""
    m = {}
    for x in alternatives:
        for y in alternatives:
            if x == y:
                continue
            m[x, y] = sum(c if r.index(x) < r.index(y) else -c for c, r in groups)
    return m


def simple_paths(alternatives, m, x, y):
    """Every simple path from x to y whose steps all have positive margin."""
    out = []

    def walk(path):
        last = path[-1]
        if last == y:
            out.append(tuple(path))
            return
        for z in alternatives:
            if z not in path and m[last, z] > 0:
                walk(path + [z])

    walk([x])
    return out


def strongest(alternatives, m):
    """Strongest-path strengths by enumerating simple paths; None when unreachable."""
    s = {}
    for x in alternatives:
        for y in alternatives:
            if x == y:
                continue
            paths = simple_paths(alternatives, m, x, y)
            s[x, y] = max((min(m[p[i], p[i + 1]] for i in range(len(p) - 1)) for p in paths), default=None)
    return s


def immune(alternatives, m):
    s = strongest(alternatives, m)
    return {
        x for x in alternatives
        if all(s[x, y] is not None and s[x, y] >= m[y, x] for y in alternatives if y != x and m[y, x] > 0)
    }


def dominant(alternatives, m, X):
    return all(m[x, y] > 0 for x in X for y in alternatives if y not in X)


def smith(alternatives, m):
    """Smallest dominant subset by exhaustive enumeration."""
    for k in range(1, len(alternatives) + 1):
        found = [set(X) for X in combinations(alternatives, k) if dominant(alternatives, m, X)]
        if found:
            assert len(found) == 1
            return found[0]
    raise AssertionError("no dominant set")


def river_by_definition(alternatives, order, m):
    """River from scratch: reject cycles (by full search) and second in-edges."""
    kept = []
    for x, y in order:
        if any(t == y for _, t in kept):
            continue
        reach = {y}
        grew = True
        while grew:
            grew = False
            for s, t in kept:
                if s in reach and t not in reach:
                    reach.add(t)
                    grew = True
        if x in reach:
            continue
        kept.append((x, y))
    roots = set(alternatives) - {t for _, t in kept}
    return roots, kept


def ranked_pairs_by_definition(alternatives, order, m):
    kept = []
    for x, y in order:
        reach = {y}
        grew = True
        while grew:
            grew = False
            for s, t in kept:
                if s in reach and t not in reach:
                    reach.add(t)
                    grew = True
        if x not in reach:
            kept.append((x, y))
    return set(alternatives) - {t for _, t in kept}, kept


def all_linear_orders(alternatives):
    return list(permutations(alternatives))
