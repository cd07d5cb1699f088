"""Induced D2 and induced P4 counting.

Any two triples inside a 4-set share exactly two vertices, so a 4-set is an
induced D2 iff it spans exactly two edges, and those two edges determine a
unique shared pair.  The exact kernel walks pairs ``u < v``, and for every
``w`` in the co-neighbourhood ``N(u,v)`` counts the ``x`` in ``N(u,v)`` with
``uwx`` and ``vwx`` both absent, using word-parallel AND/popcount on the
packed bit-rows.  Every copy is seen twice (``w``/``x`` swapped).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Graph, Hypergraph3, PreconditionError
from .rng import make_rng

__all__ = [
    "D2Witness",
    "SampleEstimate",
    "count_induced_d2",
    "count_induced_d2_at",
    "d2_counts_per_vertex",
    "count_induced_p4",
    "find_induced_p4",
    "estimate_induced_d2",
    "find_d2_witnesses",
    "is_d2",
]


@dataclass(frozen=True, order=True)
class D2Witness:
    """Ascending 4-tuple spanning exactly two edges of the ambient hypergraph."""

    four: tuple[int, int, int, int]

    def verify(self, H: Hypergraph3) -> bool:
        return is_d2(H, self.four)


def is_d2(H: Hypergraph3, four) -> bool:
    a, b, c, d = four
    if len({a, b, c, d}) != 4:
        return False
    A = H.adj
    return int(A[a, b, c]) + int(A[a, b, d]) + int(A[a, c, d]) + int(A[b, c, d]) == 2


def _pair_rows(H: Hypergraph3, u: int):
    """Per-``u`` kernel input: pairs ``(v, w)``, ``v > u``, ``uvw`` an edge."""
    vs, ws = np.nonzero(H.adj[u, u + 1 :, :])
    vs += u + 1
    if not len(vs):
        return vs, ws, None
    R = H.rows
    M = R[u, vs] & ~(R[u, ws] | R[vs, ws])
    return vs, ws, M


def _kernel(H: Hypergraph3) -> tuple[int, np.ndarray]:
    n = H.n
    total = 0
    per = np.zeros(n, dtype=np.int64)
    for u in range(n - 1):
        vs, ws, M = _pair_rows(H, u)
        if M is None:
            continue
        # the w bit itself survives the mask (w is in N(u,v) but never in its own rows)
        c = np.bitwise_count(M).sum(axis=1, dtype=np.int64) - 1
        s = int(c.sum())
        if not s:
            continue
        total += s // 2
        per[u] += s // 2
        per += np.bincount(vs, weights=c, minlength=n).astype(np.int64) // 2
        per += np.bincount(ws, weights=c, minlength=n).astype(np.int64)
    return total, per


def count_induced_d2(H: Hypergraph3) -> int:
    """Number of 4-subsets spanning exactly two edges (0 when ``n < 4``)."""
    if H.n < 4:
        return 0
    return _kernel(H)[0]


def d2_counts_per_vertex(H: Hypergraph3) -> np.ndarray:
    """Vector of induced-D2 counts containing each vertex."""
    if H.n < 4:
        return np.zeros(H.n, dtype=np.int64)
    return _kernel(H)[1]


def count_induced_d2_at(H: Hypergraph3, v: int) -> int:
    if not 0 <= v < H.n:
        raise PreconditionError(f"vertex {v} out of range for n={H.n}")
    return int(d2_counts_per_vertex(H)[v])


def find_d2_witnesses(H: Hypergraph3, limit: int, seed: int = 0) -> list[D2Witness]:
    """Up to ``limit`` distinct witnesses, scanning leading vertices in a seeded order.

    The scan is exhaustive unless ``limit`` is reached, so an empty result
    certifies that ``H`` is induced-D2-free.
    """
    if limit < 1:
        raise PreconditionError("limit must be >= 1")
    if H.n < 4:
        return []
    order = make_rng(seed).permutation(H.n - 1)
    found: set[tuple[int, ...]] = set()
    for u in order:
        u = int(u)
        vs, ws, M = _pair_rows(H, u)
        if M is None:
            continue
        c = np.bitwise_count(M).sum(axis=1) - 1
        for i in np.flatnonzero(c > 0):
            bits = np.unpackbits(M[i].view(np.uint8), bitorder="little")[: H.n]
            w = int(ws[i])
            for x in np.flatnonzero(bits):
                x = int(x)
                if x > w:
                    found.add(tuple(sorted((u, int(vs[i]), w, x))))
                    if len(found) >= limit:
                        return [D2Witness(f) for f in sorted(found)]
    return [D2Witness(f) for f in sorted(found)]


def _p4_scan(adj: np.ndarray, stop_at_first: bool):
    """Induced P4 count by middle edge ``{b, c}`` with ``b < c``.

    For a middle edge the end sets are ``A = N(b) \\ N[c]`` and
    ``D = N(c) \\ N[b]``; the path count is ``|A||D| - e(A, D)``.
    """
    n = adj.shape[0]
    Af = adj.astype(np.float64)
    total = 0
    for b in range(n):
        cs = np.flatnonzero(adj[b, b + 1 :]) + b + 1
        if not len(cs):
            continue
        ends_a = adj[b][None, :] & ~adj[cs]
        ends_a[np.arange(len(cs)), cs] = False
        ends_d = adj[cs] & ~adj[b][None, :]
        ends_d[:, b] = False
        cross = ((ends_a.astype(np.float64) @ Af) * ends_d).sum(axis=1)
        cnt = ends_a.sum(axis=1) * ends_d.sum(axis=1) - np.rint(cross).astype(np.int64)
        if stop_at_first and cnt.any():
            i = int(np.flatnonzero(cnt)[0])
            c = int(cs[i])
            for a in np.flatnonzero(ends_a[i]):
                ds = np.flatnonzero(ends_d[i] & ~adj[a])
                if len(ds):
                    return (int(a), b, c, int(ds[0]))
        total += int(cnt.sum())
    return None if stop_at_first else total


def count_induced_p4(G: Graph) -> int:
    """Number of vertex 4-subsets inducing a path (0 when ``n < 4``)."""
    if G.n < 4:
        return 0
    return _p4_scan(G.adj, stop_at_first=False)


def find_induced_p4(G: Graph, vertices=None) -> tuple[int, int, int, int] | None:
    """Some induced path ``(a, b, c, d)`` inside ``vertices`` (default: all), or None."""
    if vertices is None:
        idx = np.arange(G.n)
    else:
        idx = np.asarray(vertices, dtype=np.int64)
    if len(idx) < 4:
        return None
    hit = _p4_scan(G.adj[np.ix_(idx, idx)], stop_at_first=True)
    if hit is None:
        return None
    return tuple(int(idx[x]) for x in hit)


@dataclass(frozen=True)
class SampleEstimate:
    point: float
    samples: int
    seed: int
    half_width: float
    hits: int


def _sample_four_sets(rng: np.random.Generator, n: int, samples: int) -> np.ndarray:
    out = rng.integers(0, n, size=(samples, 4))
    while True:
        s = np.sort(out, axis=1)
        bad = np.flatnonzero((np.diff(s, axis=1) == 0).any(axis=1))
        if not len(bad):
            return s
        out[bad] = rng.integers(0, n, size=(len(bad), 4))


def estimate_induced_d2(H: Hypergraph3, samples: int, seed: int = 0) -> SampleEstimate:
    """Uniform i.i.d. 4-subset sampling with a Hoeffding 95% half-width.

    ``half_width = sqrt(ln(40) / (2 * samples)) * C(n, 4)``.
    """
    if samples < 1:
        raise PreconditionError("samples must be >= 1")
    if H.n < 4:
        raise PreconditionError("estimate needs n >= 4")
    total = math.comb(H.n, 4)
    four = _sample_four_sets(make_rng(seed), H.n, samples)
    a, b, c, d = four.T
    A = H.adj
    k = A[a, b, c].astype(np.int8) + A[a, b, d] + A[a, c, d] + A[b, c, d]
    hits = int((k == 2).sum())
    return SampleEstimate(
        point=hits / samples * total,
        samples=samples,
        seed=seed,
        half_width=math.sqrt(math.log(40) / (2 * samples)) * total,
        hits=hits,
    )
