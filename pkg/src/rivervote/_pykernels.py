"""Pure-Python kernels. Reference implementation and fallback for ``_ckernels``.

All kernels take and return int64/uint8 numpy arrays; alternatives are
identified by their row index. ``-1`` marks "no majority path" in strength
matrices.
"""
import numpy as np


def margin_matrix(positions, counts):
    """Pairwise majority margins from ballot groups.

    ``positions[k, a]`` is the rank (0 = top) of alternative ``a`` on the
    ballots of group ``k``, which carries ``counts[k]`` voters.
    """
    pos = positions.tolist()
    cnt = counts.tolist()
    m = positions.shape[1]
    out = [[0] * m for _ in range(m)]
    for row, c in zip(pos, cnt):
        for i in range(m):
            pi = row[i]
            oi = out[i]
            for j in range(i + 1, m):
                if pi < row[j]:
                    oi[j] += c
                else:
                    oi[j] -= c
    for i in range(m):
        for j in range(i + 1, m):
            out[j][i] = -out[i][j]
    return np.array(out, dtype=np.int64).reshape(m, m)


def widest_paths(margins):
    """Max-min closure over positive-margin edges (strongest majority paths)."""
    m = margins.shape[0]
    s = [[v if v > 0 else -1 for v in row] for row in margins.tolist()]
    for i in range(m):
        s[i][i] = -1
    for k in range(m):
        sk = s[k]
        for i in range(m):
            if i == k:
                continue
            sik = s[i][k]
            if sik < 0:
                continue
            si = s[i]
            for j in range(m):
                if j == i or j == k:
                    continue
                v = sk[j]
                if v > sik:
                    v = sik
                if v > si[j]:
                    si[j] = v
    return np.array(s, dtype=np.int64).reshape(m, m)


def greedy_diagram(n, src, dst, branching):
    """Greedy acyclic insertion of edges ``(src[e], dst[e])`` in the given order.

    With ``branching`` set, an edge is also rejected when its target already
    has an incoming kept edge, so the kept edges form an in-tree and the cycle
    test is a walk toward the root. Returns a 0/1 mask over the input edges.
    """
    srcs = src.tolist()
    dsts = dst.tolist()
    kept = [0] * len(srcs)
    if branching:
        parent = [-1] * n
        for e, (x, y) in enumerate(zip(srcs, dsts)):
            if parent[y] != -1:
                continue
            v = x
            while v != -1 and v != y:
                v = parent[v]
            if v == y:
                continue
            parent[y] = x
            kept[e] = 1
    else:
        # reach[v]: bitmask of vertices reachable from v over kept edges
        reach = [1 << v for v in range(n)]
        for e, (x, y) in enumerate(zip(srcs, dsts)):
            if (reach[y] >> x) & 1:
                continue
            kept[e] = 1
            ry = reach[y]
            bit = 1 << x
            for u in range(n):
                if reach[u] & bit:
                    reach[u] |= ry
    return np.array(kept, dtype=np.uint8)
