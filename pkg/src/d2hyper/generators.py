"""Seeded instance generators.

All randomness comes from :func:`d2hyper.rng.make_rng`, so every output is
a pure function of its arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .core import Graph, Hypergraph3, Verdict, as_fraction, triples_upper
from .errors import PreconditionError
from .rng import make_rng

__all__ = [
    "PlantedSplit",
    "SplitSpec",
    "spec_size",
    "gen_random_h3",
    "gen_random_graph",
    "gen_triangle_hypergraph",
    "gen_planted_cohypergraph",
    "random_split_spec",
    "gen_noisy",
    "gen_linear_h3",
]


@dataclass(frozen=True)
class PlantedSplit:
    """Internal node of a planted spec: ``left`` and ``right`` joined homogeneously."""

    kind: Verdict
    left: "SplitSpec"
    right: "SplitSpec"

    def __post_init__(self):
        if self.kind not in (Verdict.DENSE, Verdict.SPARSE):
            raise PreconditionError("planted split kind must be DENSE or SPARSE")


SplitSpec = Union[int, PlantedSplit]


def spec_size(spec: SplitSpec) -> int:
    total, stack = 0, [spec]
    while stack:
        node = stack.pop()
        if isinstance(node, PlantedSplit):
            stack.extend((node.left, node.right))
        elif isinstance(node, (int, np.integer)) and not isinstance(node, bool) and node >= 1:
            total += int(node)
        else:
            raise PreconditionError(f"malformed split spec node {node!r}")
    return total


def _probability(p) -> float:
    p = as_fraction(p)
    if not 0 <= p <= 1:
        raise PreconditionError(f"probability must lie in [0, 1], got {p}")
    return float(p)


def gen_random_h3(n: int, p, seed: int = 0) -> Hypergraph3:
    """Binomial random 3-graph: each triple independently with probability ``p``."""
    if n < 0:
        raise PreconditionError("n must be >= 0")
    prob = _probability(p)
    tri = triples_upper(n)
    keep = make_rng(seed).random(len(tri)) < prob
    return Hypergraph3(n, tri[keep])


def gen_random_graph(n: int, p, seed: int = 0) -> Graph:
    if n < 0:
        raise PreconditionError("n must be >= 0")
    prob = _probability(p)
    a, b = np.triu_indices(n, 1)
    keep = make_rng(seed).random(len(a)) < prob
    return Graph(n, np.stack([a[keep], b[keep]], axis=1))


def gen_triangle_hypergraph(G: Graph) -> Hypergraph3:
    """3-graph whose edges are the triangles of ``G``."""
    A = G.adj
    adj = A[:, :, None] & A[:, None, :] & A[None, :, :]
    return Hypergraph3.from_adjacency(adj, check=False)


def gen_planted_cohypergraph(spec: SplitSpec, leaf_fill: str = "empty", seed: int = 0) -> Hypergraph3:
    """Realize a split tree exactly, then relabel vertices by a seeded permutation.

    ``spec`` is a leaf size (int) or a :class:`PlantedSplit`.  Every triple
    meeting both sides of a split is an edge iff the split is Dense; triples
    inside a leaf are all edges iff ``leaf_fill == "complete"``.
    """
    if leaf_fill not in ("complete", "empty"):
        raise PreconditionError("leaf_fill must be 'complete' or 'empty'")
    n = spec_size(spec)
    adj = np.zeros((n, n, n), dtype=bool)
    # top-down: each node paints its whole block, children repaint their own
    stack = [(spec, 0)]
    while stack:
        node, off = stack.pop()
        if isinstance(node, PlantedSplit):
            size = spec_size(node)
            adj[off : off + size, off : off + size, off : off + size] = node.kind is Verdict.DENSE
            stack.append((node.left, off))
            stack.append((node.right, off + spec_size(node.left)))
        else:
            adj[off : off + node, off : off + node, off : off + node] = leaf_fill == "complete"
    i = np.arange(n)
    adj[i, i, :] = False
    adj[i, :, i] = False
    adj[:, i, i] = False
    perm = make_rng(seed).permutation(n)
    out = np.empty_like(adj)
    out[np.ix_(perm, perm, perm)] = adj
    return Hypergraph3.from_adjacency(out, check=False)


def random_split_spec(n: int, depth: int, seed: int = 0, min_leaf: int = 1) -> SplitSpec:
    """Random split tree on ``n`` vertices with at most ``depth`` levels of splits."""
    if n < 1 or depth < 0 or min_leaf < 1:
        raise PreconditionError("need n >= 1, depth >= 0, min_leaf >= 1")
    rng = make_rng(seed, stream=1)

    def build(size: int, d: int) -> SplitSpec:
        if d == 0 or size < 2 * min_leaf:
            return size
        left = int(rng.integers(min_leaf, size - min_leaf + 1))
        kind = Verdict.DENSE if rng.random() < 0.5 else Verdict.SPARSE
        return PlantedSplit(kind, build(left, d - 1), build(size - left, d - 1))

    return build(n, depth)


def gen_noisy(H: Hypergraph3, flip_rate, seed: int = 0) -> Hypergraph3:
    """Flip every triple independently with probability ``flip_rate``."""
    prob = _probability(flip_rate)
    flips = make_rng(seed, stream=2).random(len(H.upper_mask)) < prob
    return Hypergraph3.from_upper_mask(H.n, H.upper_mask ^ flips)


def gen_linear_h3(n: int, seed: int = 0, attempts: int | None = None) -> Hypergraph3:
    """Partial Steiner triple system: random triples kept while no pair is reused."""
    if n < 0:
        raise PreconditionError("n must be >= 0")
    rng = make_rng(seed, stream=3)
    used = np.zeros((n, n), dtype=bool)
    edges = []
    for _ in range(attempts if attempts is not None else 3 * n * n):
        if n < 3:
            break
        a, b, c = sorted(int(x) for x in rng.choice(n, size=3, replace=False))
        if used[a, b] or used[a, c] or used[b, c]:
            continue
        used[a, b] = used[a, c] = used[b, c] = True
        edges.append((a, b, c))
    return Hypergraph3(n, edges)
