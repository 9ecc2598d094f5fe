# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contracts as ``rivervote._pykernels``."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def margin_matrix(const cnp.int64_t[:, :] positions, const cnp.int64_t[:] counts):
    cdef Py_ssize_t g = positions.shape[0], m = positions.shape[1]
    cdef Py_ssize_t k, i, j
    cdef cnp.int64_t c
    out = np.zeros((m, m), dtype=np.int64)
    cdef cnp.int64_t[:, :] o = out
    for k in range(g):
        c = counts[k]
        for i in range(m):
            for j in range(i + 1, m):
                if positions[k, i] < positions[k, j]:
                    o[i, j] += c
                else:
                    o[i, j] -= c
    for i in range(m):
        for j in range(i + 1, m):
            o[j, i] = -o[i, j]
    return out


def widest_paths(const cnp.int64_t[:, :] margins):
    cdef Py_ssize_t m = margins.shape[0]
    cdef Py_ssize_t i, j, k
    cdef cnp.int64_t sik, v
    out = np.empty((m, m), dtype=np.int64)
    cdef cnp.int64_t[:, :] s = out
    for i in range(m):
        for j in range(m):
            s[i, j] = margins[i, j] if margins[i, j] > 0 else -1
        s[i, i] = -1
    for k in range(m):
        for i in range(m):
            if i == k:
                continue
            sik = s[i, k]
            if sik < 0:
                continue
            for j in range(m):
                if j == i or j == k:
                    continue
                v = s[k, j]
                if v > sik:
                    v = sik
                if v > s[i, j]:
                    s[i, j] = v
    return out


def greedy_diagram(Py_ssize_t n, const cnp.int64_t[:] src, const cnp.int64_t[:] dst, bint branching):
    cdef Py_ssize_t n_edges = src.shape[0]
    cdef Py_ssize_t e, x, y, v, u, top
    kept_arr = np.zeros(n_edges, dtype=np.uint8)
    cdef cnp.uint8_t[:] kept = kept_arr
    parent_arr = np.full(n, -1, dtype=np.int64)
    cdef cnp.int64_t[:] parent = parent_arr
    # adjacency for the general case, rows of kept successors
    adj_arr = np.zeros((n, n), dtype=np.uint8)
    cdef cnp.uint8_t[:, :] adj = adj_arr
    seen_arr = np.zeros(n, dtype=np.uint8)
    cdef cnp.uint8_t[:] seen = seen_arr
    stack_arr = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[:] stack = stack_arr
    cdef bint cycle
    for e in range(n_edges):
        x = src[e]
        y = dst[e]
        if branching:
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
            # DFS from y looking for x
            for u in range(n):
                seen[u] = 0
            top = 0
            stack[0] = y
            seen[y] = 1
            top = 1
            cycle = False
            while top > 0:
                top -= 1
                v = stack[top]
                if v == x:
                    cycle = True
                    break
                for u in range(n):
                    if adj[v, u] and not seen[u]:
                        seen[u] = 1
                        stack[top] = u
                        top += 1
            if cycle:
                continue
            adj[x, y] = 1
            kept[e] = 1
    return kept_arr
