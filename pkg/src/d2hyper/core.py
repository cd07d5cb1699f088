"""Hypergraph and graph containers plus exact density functionals.

A :class:`Hypergraph3` stores a symmetric boolean tensor ``adj`` with
``adj[a, b, c]`` true iff ``{a, b, c}`` is an edge, together with lazily
packed per-pair bit-rows (``rows[u, v]`` is the bitset of ``w`` with
``{u, v, w}`` an edge).  Both arrays are read-only; every operation here is
pure.

Densities are returned as :class:`fractions.Fraction`, so threshold checks
downstream are exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateInputError, PreconditionError

__all__ = [
    "Hypergraph3",
    "Graph",
    "Verdict",
    "HomogeneityVerdict",
    "as_vertex_set",
    "as_fraction",
    "density_hypergraph",
    "density_triple",
    "density_pair_xxy",
    "graph_density",
    "graph_density_pair",
    "link_graph",
    "homogeneity_verdict",
    "split_verdict",
    "triples_upper",
]


def as_fraction(x) -> Fraction:
    """Exact rational from int/Fraction/str; floats go through ``repr``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def as_vertex_set(vertices: Iterable[int], n: int | None = None) -> tuple[int, ...]:
    """Validate a canonical vertex set: strictly increasing, within ``[0, n)``.

    Unsorted input is rejected rather than sorted, so downstream tie-breaks
    never depend on silent normalization.
    """
    vs = tuple(int(v) for v in vertices)
    for a, b in zip(vs, vs[1:]):
        if a >= b:
            raise PreconditionError(f"vertex set must be strictly increasing, got {vs[:8]}...")
    if vs and vs[0] < 0:
        raise PreconditionError(f"negative vertex {vs[0]}")
    if n is not None and vs and vs[-1] >= n:
        raise PreconditionError(f"vertex {vs[-1]} out of range for n={n}")
    return vs


def triples_upper(n: int) -> np.ndarray:
    """All ``a < b < c < n`` as an ``(C(n,3), 3)`` array in lexicographic order."""
    if n < 3:
        return np.zeros((0, 3), dtype=np.int64)
    a, b, c = np.nonzero(_upper_mask(n))
    return np.stack([a, b, c], axis=1).astype(np.int64)


def _upper_mask(n: int) -> np.ndarray:
    i = np.arange(n)
    return (i[:, None, None] < i[None, :, None]) & (i[None, :, None] < i[None, None, :])


def _symmetrize(n: int, tri: np.ndarray) -> np.ndarray:
    adj = np.zeros((n, n, n), dtype=bool)
    if len(tri):
        a, b, c = tri[:, 0], tri[:, 1], tri[:, 2]
        for x, y, z in ((a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)):
            adj[x, y, z] = True
    return adj


class Hypergraph3:
    """Immutable 3-uniform hypergraph on vertices ``0..n-1``."""

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        n = int(n)
        if n < 0:
            raise PreconditionError("vertex count must be non-negative")
        tri = np.asarray([tuple(e) for e in edges], dtype=np.int64).reshape(-1, 3)
        if len(tri):
            if np.any(tri < 0) or np.any(tri >= n):
                raise PreconditionError(f"edge vertex out of range for n={n}")
            srt = np.sort(tri, axis=1)
            if np.any(srt[:, 0] == srt[:, 1]) or np.any(srt[:, 1] == srt[:, 2]):
                raise PreconditionError("edges need 3 distinct vertices")
            if len(np.unique(srt, axis=0)) != len(srt):
                raise PreconditionError("duplicate edge")
            tri = srt
        self._init(n, _symmetrize(n, tri))

    def _init(self, n: int, adj: np.ndarray) -> None:
        adj.flags.writeable = False
        self.n = n
        self._adj = adj

    @classmethod
    def from_adjacency(cls, adj: np.ndarray, *, check: bool = True) -> "Hypergraph3":
        adj = np.array(adj, dtype=bool, copy=True)
        if adj.ndim != 3 or len(set(adj.shape)) != 1:
            raise PreconditionError("adjacency must be an (n, n, n) array")
        n = adj.shape[0]
        if check and n:
            if (adj != adj.transpose(1, 0, 2)).any() or (adj != adj.transpose(0, 2, 1)).any():
                raise PreconditionError("adjacency tensor is not symmetric")
            i = np.arange(n)
            if adj[i, i, :].any() or adj[i, :, i].any():
                raise PreconditionError("adjacency tensor has a repeated-vertex entry")
        h = cls.__new__(cls)
        h._init(n, adj)
        return h

    @classmethod
    def from_upper_mask(cls, n: int, mask: np.ndarray) -> "Hypergraph3":
        """Build from a boolean vector over :func:`triples_upper` ``(n)``."""
        tri = triples_upper(n)[np.asarray(mask, dtype=bool)]
        h = cls.__new__(cls)
        h._init(n, _symmetrize(n, tri))
        return h

    @classmethod
    def complete(cls, n: int) -> "Hypergraph3":
        return cls.from_upper_mask(n, np.ones(comb(n, 3), dtype=bool))

    @property
    def adj(self) -> np.ndarray:
        return self._adj

    @cached_property
    def rows(self) -> np.ndarray:
        """Packed bit-rows, shape ``(n, n, W)`` of ``uint64``."""
        n = self.n
        words = max(1, -(-n // 64))
        packed = np.packbits(self._adj, axis=2, bitorder="little")
        buf = np.zeros((n, n, words * 8), dtype=np.uint8)
        buf[:, :, : packed.shape[2]] = packed
        out = buf.view(np.uint64)
        out.flags.writeable = False
        return out

    @cached_property
    def upper_mask(self) -> np.ndarray:
        """Edge indicator over :func:`triples_upper` order."""
        t = triples_upper(self.n)
        return self._adj[t[:, 0], t[:, 1], t[:, 2]]

    def edge_array(self) -> np.ndarray:
        """Edges as a lexicographically sorted ``(m, 3)`` array."""
        return triples_upper(self.n)[self.upper_mask]

    @property
    def edges(self) -> list[tuple[int, int, int]]:
        return [tuple(int(x) for x in e) for e in self.edge_array()]

    @cached_property
    def num_edges(self) -> int:
        return int(self.upper_mask.sum())

    def has_edge(self, a: int, b: int, c: int) -> bool:
        return bool(self._adj[a, b, c])

    @cached_property
    def degrees(self) -> np.ndarray:
        """``deg(v)`` = number of edges containing ``v``."""
        return self._adj.sum(axis=(1, 2), dtype=np.int64) // 2

    @cached_property
    def codegrees(self) -> np.ndarray:
        """``codeg[u, v]`` = number of edges containing both ``u`` and ``v``."""
        return self._adj.sum(axis=2, dtype=np.int64)

    def induced(self, vertices: Sequence[int]) -> "Hypergraph3":
        """Sub-hypergraph on ``vertices``, relabelled ``0..k-1`` in the given order."""
        idx = np.asarray(vertices, dtype=np.int64)
        h = Hypergraph3.__new__(Hypergraph3)
        h._init(len(idx), self._adj.take(idx, 0).take(idx, 1).take(idx, 2))
        return h

    def complement(self) -> "Hypergraph3":
        return Hypergraph3.from_upper_mask(self.n, ~self.upper_mask)

    def with_edits(self, additions: np.ndarray, deletions: np.ndarray) -> "Hypergraph3":
        adj = np.array(self._adj, copy=True)
        for tri, val in ((additions, True), (deletions, False)):
            tri = np.asarray(tri, dtype=np.int64).reshape(-1, 3)
            if len(tri):
                a, b, c = tri.T
                for x, y, z in ((a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)):
                    adj[x, y, z] = val
        h = Hypergraph3.__new__(Hypergraph3)
        h._init(self.n, adj)
        return h

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hypergraph3):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self._adj, other._adj))

    __hash__ = None

    def __repr__(self) -> str:
        return f"Hypergraph3(n={self.n}, m={self.num_edges})"


class Graph:
    """Immutable simple graph on ``0..n-1`` backed by a boolean matrix."""

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        n = int(n)
        if n < 0:
            raise PreconditionError("vertex count must be non-negative")
        adj = np.zeros((n, n), dtype=bool)
        seen = set()
        for e in edges:
            a, b = sorted(int(x) for x in e)
            if a == b or a < 0 or b >= n:
                raise PreconditionError(f"bad edge {tuple(e)} for n={n}")
            if (a, b) in seen:
                raise PreconditionError(f"duplicate edge {(a, b)}")
            seen.add((a, b))
            adj[a, b] = adj[b, a] = True
        self._init(n, adj)

    def _init(self, n: int, adj: np.ndarray) -> None:
        adj.flags.writeable = False
        self.n = n
        self._adj = adj

    @classmethod
    def from_adjacency(cls, adj: np.ndarray, *, check: bool = True) -> "Graph":
        adj = np.array(adj, dtype=bool, copy=True)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise PreconditionError("adjacency must be square")
        if check and ((adj != adj.T).any() or np.diagonal(adj).any()):
            raise PreconditionError("adjacency must be symmetric with empty diagonal")
        g = cls.__new__(cls)
        g._init(adj.shape[0], adj)
        return g

    @property
    def adj(self) -> np.ndarray:
        return self._adj

    @property
    def edges(self) -> list[tuple[int, int]]:
        a, b = np.nonzero(np.triu(self._adj, 1))
        return [(int(x), int(y)) for x, y in zip(a, b)]

    @cached_property
    def num_edges(self) -> int:
        return int(np.triu(self._adj, 1).sum())

    @cached_property
    def degrees(self) -> np.ndarray:
        return self._adj.sum(axis=1, dtype=np.int64)

    def induced(self, vertices: Sequence[int]) -> "Graph":
        idx = np.asarray(vertices, dtype=np.int64)
        g = Graph.__new__(Graph)
        g._init(len(idx), self._adj[np.ix_(idx, idx)])
        return g

    def complement(self) -> "Graph":
        adj = ~self._adj
        np.fill_diagonal(adj, False)
        g = Graph.__new__(Graph)
        g._init(self.n, adj)
        return g

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self._adj, other._adj))

    __hash__ = None

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"


def _disjoint(*sets: tuple[int, ...]) -> None:
    seen: set[int] = set()
    for s in sets:
        if seen.intersection(s):
            raise PreconditionError("vertex sets must be pairwise disjoint")
        seen.update(s)


def density_hypergraph(H: Hypergraph3) -> Fraction:
    if H.n < 3:
        raise DegenerateInputError(f"density needs n >= 3, got n={H.n}")
    return Fraction(H.num_edges, comb(H.n, 3))


def _count_xyz(H: Hypergraph3, X, Y, Z) -> int:
    return int(H.adj[np.ix_(X, Y, Z)].sum())


def _count_xxy(H: Hypergraph3, X, Y) -> int:
    return int(H.adj[np.ix_(X, X, Y)].sum()) // 2


def density_triple(H: Hypergraph3, X, Y, Z) -> Fraction:
    """``e(X,Y,Z) / (|X||Y||Z|)`` over transversal triples."""
    X, Y, Z = (as_vertex_set(s, H.n) for s in (X, Y, Z))
    if not (X and Y and Z):
        raise PreconditionError("density_triple needs nonempty sets")
    _disjoint(X, Y, Z)
    return Fraction(_count_xyz(H, X, Y, Z), len(X) * len(Y) * len(Z))


def density_pair_xxy(H: Hypergraph3, X, Y) -> Fraction:
    """Edges with two vertices in ``X`` and one in ``Y`` over ``C(|X|,2)|Y|``."""
    X, Y = as_vertex_set(X, H.n), as_vertex_set(Y, H.n)
    if len(X) < 2 or not Y:
        raise PreconditionError("density_pair_xxy needs |X| >= 2 and |Y| >= 1")
    _disjoint(X, Y)
    return Fraction(_count_xxy(H, X, Y), comb(len(X), 2) * len(Y))


def graph_density(G: Graph) -> Fraction:
    if G.n < 2:
        raise DegenerateInputError("graph density needs n >= 2")
    return Fraction(G.num_edges, comb(G.n, 2))


def graph_density_pair(G: Graph, X, Y) -> Fraction:
    X, Y = as_vertex_set(X, G.n), as_vertex_set(Y, G.n)
    if not X or not Y:
        raise PreconditionError("graph_density_pair needs nonempty sets")
    _disjoint(X, Y)
    return Fraction(int(G.adj[np.ix_(X, Y)].sum()), len(X) * len(Y))


def link_graph(H: Hypergraph3, v: int) -> Graph:
    """Graph on all ``n`` vertices, ``v`` isolated, ``ab`` an edge iff ``vab`` is."""
    if not 0 <= v < H.n:
        raise PreconditionError(f"vertex {v} out of range for n={H.n}")
    g = Graph.__new__(Graph)
    g._init(H.n, np.array(H.adj[v], copy=True))
    return g


class Verdict(enum.Enum):
    DENSE = "dense"
    SPARSE = "sparse"
    NEITHER = "neither"


@dataclass(frozen=True)
class HomogeneityVerdict:
    """Outcome of an epsilon-homogeneity test on a pair ``(X, Y)``.

    ``dxxy`` / ``dyyx`` are ``None`` when the side has fewer than two
    vertices, in which case that density places no constraint.
    """

    kind: Verdict
    dxxy: Fraction | None
    dyyx: Fraction | None
    eps: Fraction

    @property
    def homogeneous(self) -> bool:
        return self.kind is not Verdict.NEITHER


def _classify(dxxy, dyyx, eps: Fraction) -> Verdict:
    ds = [d for d in (dxxy, dyyx) if d is not None]
    if all(d >= 1 - eps for d in ds):
        return Verdict.DENSE
    if all(d <= eps for d in ds):
        return Verdict.SPARSE
    return Verdict.NEITHER


def homogeneity_verdict(H: Hypergraph3, X, Y, eps) -> HomogeneityVerdict:
    """Dense iff both cross densities are ``>= 1-eps``; Sparse iff both ``<= eps``."""
    eps = as_fraction(eps)
    X, Y = as_vertex_set(X, H.n), as_vertex_set(Y, H.n)
    if len(X) < 2 or len(Y) < 2:
        raise PreconditionError("homogeneity_verdict needs |X|, |Y| >= 2")
    if not 0 <= eps <= Fraction(1, 2):
        raise PreconditionError("eps must lie in [0, 1/2]")
    return split_verdict(H, X, Y, eps)


def split_verdict(H: Hypergraph3, X, Y, eps) -> HomogeneityVerdict:
    """Like :func:`homogeneity_verdict` but allows a side of size one.

    A singleton side contributes no ``d(X,X,Y)`` term, matching the
    ``{v}, V \\ {v}`` splits used by the decomposition.  When both sides are
    singletons there are no cross triples and the pair counts as Sparse.
    """
    eps = as_fraction(eps)
    X, Y = as_vertex_set(X, H.n), as_vertex_set(Y, H.n)
    if not X or not Y:
        raise PreconditionError("split sides must be nonempty")
    _disjoint(X, Y)
    dxxy = Fraction(_count_xxy(H, X, Y), comb(len(X), 2) * len(Y)) if len(X) >= 2 else None
    dyyx = Fraction(_count_xxy(H, Y, X), comb(len(Y), 2) * len(X)) if len(Y) >= 2 else None
    kind = Verdict.SPARSE if dxxy is None and dyyx is None else _classify(dxxy, dyyx, eps)
    return HomogeneityVerdict(kind, dxxy, dyyx, eps)
