"""Slow, obviously-correct reference implementations used only by tests."""

from __future__ import annotations

import itertools

import numpy as np


def edges_in(adj, quad) -> int:
    return sum(int(adj[a, b, c]) for a, b, c in itertools.combinations(quad, 3))


def naive_d2_count(H) -> int:
    adj = H.adj
    return sum(edges_in(adj, q) == 2 for q in itertools.combinations(range(H.n), 4))


def naive_d2_at(H, v) -> int:
    adj = H.adj
    return sum(v in q and edges_in(adj, q) == 2 for q in itertools.combinations(range(H.n), 4))


def is_induced_p4(A, quad) -> bool:
    degs = sorted(sum(int(A[a, b]) for b in quad if b != a) for a in quad)
    m = sum(int(A[a, b]) for a, b in itertools.combinations(quad, 2))
    return m == 3 and degs == [1, 1, 2, 2]


def naive_p4_count(G) -> int:
    A = G.adj
    return sum(is_induced_p4(A, q) for q in itertools.combinations(range(G.n), 4))


def naive_is_cograph(G) -> bool:
    return naive_p4_count(G) == 0


def naive_min_cograph_edits(G) -> int:
    """Minimum edits to a cograph by trying every graph on the same vertices."""
    n = G.n
    pairs = list(itertools.combinations(range(n), 2))
    current = np.array([bool(G.adj[a, b]) for a, b in pairs])
    best = len(pairs)
    for bits in itertools.product((False, True), repeat=len(pairs)):
        A = np.zeros((n, n), dtype=bool)
        for (a, b), on in zip(pairs, bits):
            A[a, b] = A[b, a] = on
        if all(not is_induced_p4(A, q) for q in itertools.combinations(range(n), 4)):
            best = min(best, int(np.sum(np.array(bits) != current)))
    return best


def naive_max_homogeneous(H) -> int:
    adj = H.adj
    for size in range(H.n, 0, -1):
        for S in itertools.combinations(range(H.n), size):
            vals = {bool(adj[a, b, c]) for a, b, c in itertools.combinations(S, 3)}
            if len(vals) <= 1:
                return size
    return 0


def naive_graph_homogeneous(G) -> int:
    A = G.adj
    for size in range(G.n, 0, -1):
        for S in itertools.combinations(range(G.n), size):
            vals = {bool(A[a, b]) for a, b in itertools.combinations(S, 2)}
            if len(vals) <= 1:
                return size
    return 0


def naive_is_independent(H, S) -> bool:
    return all(not H.adj[a, b, c] for a, b, c in itertools.combinations(sorted(S), 3))


def naive_is_clique(H, S) -> bool:
    return all(H.adj[a, b, c] for a, b, c in itertools.combinations(sorted(S), 3))


def quad_edge_histogram(H) -> set[int]:
    adj = H.adj
    return {edges_in(adj, q) for q in itertools.combinations(range(H.n), 4)}


def graph_max_homogeneous_bitmask(G) -> int:
    """Largest clique or independent set by a subset DP over all 2^n masks (n <= 20)."""
    n = G.n
    if n == 0:
        return 0
    A = G.adj
    best = 0
    for M in (A, ~A):
        nbr = [sum(1 << j for j in range(n) if j != i and M[i, j]) for i in range(n)]
        ok = np.zeros(1 << n, dtype=bool)
        ok[0] = True
        for i in range(n):
            lo = 1 << i
            rest = np.arange(lo, dtype=np.int64)
            ok[lo : 2 * lo] = ok[rest] & ((rest & ~nbr[i]) == 0)
        sizes = np.array([bin(m).count("1") for m in np.flatnonzero(ok)])
        best = max(best, int(sizes.max()))
    return best


def triangle_quad_counts(G) -> set[int]:
    """Edge counts over all 4-sets of the triangle 3-graph of G, computed from G directly."""
    A = G.adj
    seen = set()
    for q in itertools.combinations(range(G.n), 4):
        tri = 0
        for a, b, c in itertools.combinations(q, 3):
            tri += bool(A[a, b] and A[b, c] and A[a, c])
        seen.add(tri)
    return seen
