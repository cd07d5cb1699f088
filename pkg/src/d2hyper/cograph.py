"""Cographs: cotrees, recognition, editing, and the two partition procedures.

All tree walks are iterative; random cotrees on a few thousand leaves can be
as deep as they are wide.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np
from scipy.sparse.csgraph import connected_components

from .core import Graph, as_fraction
from .count import find_induced_p4
from .errors import NotACographError, PreconditionError, VerificationError

__all__ = [
    "NodeKind",
    "Cotree",
    "P4Witness",
    "build_cotree",
    "cotree_of",
    "cotree_leaves",
    "cotree_adjacency",
    "cotree_to_nested",
    "validate_cotree",
    "random_cotree",
    "HomogeneousSet",
    "cotree_homogeneous_set",
    "GraphEdit",
    "cograph_edit",
    "min_cograph_edits_exact",
    "CographPartition",
    "PartitionReport",
    "cograph_partition",
    "verify_cograph_partition",
    "WeightedSplit",
    "weighted_split",
]


class NodeKind(enum.Enum):
    LEAF = "leaf"
    UNION = "union"
    JOIN = "join"


@dataclass(frozen=True, eq=False)
class Cotree:
    """A cotree node: a leaf holding ``vertex`` or a Union/Join over ``children``."""

    kind: NodeKind
    children: tuple["Cotree", ...] = ()
    vertex: int = -1

    @classmethod
    def leaf(cls, v: int) -> "Cotree":
        return cls(NodeKind.LEAF, (), int(v))

    @classmethod
    def union(cls, *children: "Cotree") -> "Cotree":
        return cls(NodeKind.UNION, tuple(children))

    @classmethod
    def join(cls, *children: "Cotree") -> "Cotree":
        return cls(NodeKind.JOIN, tuple(children))

    @property
    def is_leaf(self) -> bool:
        return self.kind is NodeKind.LEAF

    def __repr__(self) -> str:
        if self.is_leaf:
            return f"Leaf({self.vertex})"
        return f"{self.kind.value.capitalize()}[{len(self.children)} children]"


@dataclass(frozen=True)
class P4Witness:
    """Induced path ``a-b-c-d``: ``ab, bc, cd`` present; ``ac, bd, ad`` absent."""

    path: tuple[int, int, int, int]

    def verify(self, G: Graph) -> bool:
        a, b, c, d = self.path
        A = G.adj
        return bool(A[a, b] and A[b, c] and A[c, d] and not (A[a, c] or A[b, d] or A[a, d]))


def _postorder(root: Cotree) -> list[Cotree]:
    out, stack = [], [(root, False)]
    while stack:
        node, done = stack.pop()
        if done or node.is_leaf:
            out.append(node)
        else:
            stack.append((node, True))
            stack.extend((c, False) for c in reversed(node.children))
    return out


def cotree_leaves(root: Cotree) -> list[int]:
    """Leaf vertices in left-to-right order."""
    out, stack = [], [root]
    while stack:
        node = stack.pop()
        if node.is_leaf:
            out.append(node.vertex)
        else:
            stack.extend(reversed(node.children))
    return out


def cotree_to_nested(root: Cotree):
    """Canonical nested tuples, children sorted; handy for equality checks."""
    memo: dict[int, object] = {}
    for node in _postorder(root):
        if node.is_leaf:
            memo[id(node)] = node.vertex
        else:
            kids = sorted((memo[id(c)] for c in node.children), key=repr)
            memo[id(node)] = (node.kind.value, tuple(kids))
    return memo[id(root)]


def cotree_adjacency(root: Cotree, n: int | None = None) -> np.ndarray:
    """Adjacency matrix of the cograph realized by ``root``."""
    leaves_of: dict[int, np.ndarray] = {}
    verts = cotree_leaves(root)
    n = (max(verts) + 1) if n is None else n
    adj = np.zeros((n, n), dtype=bool)
    for node in _postorder(root):
        if node.is_leaf:
            leaves_of[id(node)] = np.array([node.vertex])
            continue
        parts = [leaves_of.pop(id(c)) for c in node.children]
        if node.kind is NodeKind.JOIN:
            allv = np.concatenate(parts)
            label = np.concatenate([np.full(len(p), i) for i, p in enumerate(parts)])
            adj[np.ix_(allv, allv)] |= label[:, None] != label[None, :]
        leaves_of[id(node)] = np.concatenate(parts)
    return adj


def validate_cotree(root: Cotree, G: Graph | None = None) -> None:
    """Raise :class:`VerificationError` unless ``root`` is a well-formed cotree (of ``G``)."""
    for node in _postorder(root):
        if node.is_leaf:
            continue
        if len(node.children) < 2:
            raise VerificationError(f"internal node with {len(node.children)} children")
        for c in node.children:
            if c.kind is node.kind:
                raise VerificationError("Union/Join nodes must alternate")
    verts = cotree_leaves(root)
    if len(set(verts)) != len(verts):
        raise VerificationError("repeated leaf vertex")
    if G is not None:
        if sorted(verts) != list(range(G.n)):
            raise VerificationError("leaves do not biject with V(G)")
        if not np.array_equal(cotree_adjacency(root, G.n), G.adj):
            raise VerificationError("cotree does not realize G")


def _components(sub: np.ndarray) -> list[np.ndarray]:
    k, labels = connected_components(sub, directed=False)
    comps = [np.flatnonzero(labels == i) for i in range(k)]
    comps.sort(key=lambda c: c[0])
    return comps


def cotree_of(G: Graph) -> Cotree:
    """Cotree of ``G``; raises :class:`NotACographError` carrying an induced P4.

    Splits on components of ``G`` (Union) or of its complement (Join).  When
    both are connected on a vertex set of size >= 2 an induced P4 exists
    there and is extracted.
    """
    if G.n < 1:
        raise PreconditionError("build_cotree needs n >= 1")
    adj = G.adj
    tasks: list[np.ndarray] = [np.arange(G.n)]
    info: list[tuple] = []
    i = 0
    while i < len(tasks):
        verts = tasks[i]
        if len(verts) == 1:
            info.append((NodeKind.LEAF, int(verts[0])))
        else:
            sub = adj[np.ix_(verts, verts)]
            comps = _components(sub)
            kind = NodeKind.UNION
            if len(comps) == 1:
                co = ~sub
                np.fill_diagonal(co, False)
                comps = _components(co)
                kind = NodeKind.JOIN
                if len(comps) == 1:
                    wit = find_induced_p4(G, verts)
                    assert wit is not None, "connected graph with connected complement must hold a P4"
                    raise NotACographError(wit)
            ids = list(range(len(tasks), len(tasks) + len(comps)))
            tasks.extend(verts[c] for c in comps)
            info.append((kind, ids))
        i += 1
    nodes: list[Cotree | None] = [None] * len(tasks)
    for i in reversed(range(len(tasks))):
        kind, payload = info[i]
        if kind is NodeKind.LEAF:
            nodes[i] = Cotree.leaf(payload)
        else:
            nodes[i] = Cotree(kind, tuple(nodes[j] for j in payload))
    return nodes[0]


def build_cotree(G: Graph) -> Cotree | P4Witness:
    """Either a cotree realizing ``G`` or a verified induced-P4 witness."""
    try:
        return cotree_of(G)
    except NotACographError as exc:
        wit = P4Witness(tuple(exc.witness))
        if not wit.verify(G):
            raise VerificationError(f"P4 witness {wit.path} failed verification") from exc
        return wit


def random_cotree(n: int, rng: np.random.Generator, max_children: int = 4) -> Cotree:
    """Random cotree on leaves ``0..n-1`` with a random root kind.

    Leaf labels are shuffled so vertex order carries no structure.
    """
    if n < 1:
        raise PreconditionError("random_cotree needs n >= 1")
    labels = rng.permutation(n)
    root_kind = NodeKind.UNION if rng.random() < 0.5 else NodeKind.JOIN
    # task: (offset, size, kind); children built bottom-up afterwards
    tasks = [(0, n, root_kind)]
    info: list[tuple] = []
    i = 0
    while i < len(tasks):
        off, size, kind = tasks[i]
        if size == 1:
            info.append((NodeKind.LEAF, int(labels[off])))
        else:
            k = int(rng.integers(2, min(max_children, size) + 1))
            cuts = np.sort(rng.choice(np.arange(1, size), size=k - 1, replace=False))
            bounds = np.concatenate([[0], cuts, [size]])
            child_kind = NodeKind.JOIN if kind is NodeKind.UNION else NodeKind.UNION
            ids = []
            for lo, hi in zip(bounds[:-1], bounds[1:]):
                ids.append(len(tasks))
                tasks.append((off + int(lo), int(hi - lo), child_kind))
            info.append((kind, ids))
        i += 1
    nodes: list[Cotree | None] = [None] * len(tasks)
    for i in reversed(range(len(tasks))):
        kind, payload = info[i]
        nodes[i] = Cotree.leaf(payload) if kind is NodeKind.LEAF else Cotree(kind, tuple(nodes[j] for j in payload))
    return nodes[0]


# --------------------------------------------------------------------------
# Homogeneous sets


@dataclass(frozen=True)
class HomogeneousSet:
    vertices: tuple[int, ...]
    kind: str  # "clique" | "independent"


def cotree_homogeneous_set(root: Cotree, graph: Graph | None = None) -> HomogeneousSet:
    """Larger of a maximum clique and a maximum independent set (clique on ties).

    Tree DP: at a Join clique sizes add and independent sizes take the max; a
    Union is the dual.  When ``graph`` is given the answer is re-checked.
    """
    best_clique: dict[int, list[int]] = {}
    best_indep: dict[int, list[int]] = {}
    for node in _postorder(root):
        key = id(node)
        if node.is_leaf:
            best_clique[key] = [node.vertex]
            best_indep[key] = [node.vertex]
            continue
        cl = [best_clique.pop(id(c)) for c in node.children]
        ind = [best_indep.pop(id(c)) for c in node.children]
        if node.kind is NodeKind.JOIN:
            best_clique[key] = [v for s in cl for v in s]
            best_indep[key] = max(ind, key=len)
        else:
            best_clique[key] = max(cl, key=len)
            best_indep[key] = [v for s in ind for v in s]
    clique, indep = best_clique[id(root)], best_indep[id(root)]
    out = HomogeneousSet(tuple(sorted(clique)), "clique") if len(clique) >= len(indep) else HomogeneousSet(tuple(sorted(indep)), "independent")
    n = len(cotree_leaves(root))
    if len(out.vertices) < math.isqrt(n - 1) + 1:
        raise VerificationError(f"homogeneous set of size {len(out.vertices)} < ceil(sqrt({n}))")
    if graph is not None:
        idx = np.asarray(out.vertices)
        sub = graph.adj[np.ix_(idx, idx)]
        off = ~np.eye(len(idx), dtype=bool)
        ok = sub[off].all() if out.kind == "clique" else not sub[off].any()
        if not ok:
            raise VerificationError(f"returned {out.kind} is not homogeneous in the graph")
    return out


# --------------------------------------------------------------------------
# Editing


@dataclass(frozen=True)
class GraphEdit:
    """Result of :func:`cograph_edit`.

    ``exact`` is true when the edit count is provably minimum.
    """

    additions: tuple[tuple[int, int], ...]
    deletions: tuple[tuple[int, int], ...]
    graph: Graph
    cotree: Cotree
    exact: bool

    @property
    def size(self) -> int:
        return len(self.additions) + len(self.deletions)


def _exact_edit_dp(sub: np.ndarray) -> tuple[int, np.ndarray]:
    """Minimum edits turning ``sub`` into a cograph, via DP over vertex subsets.

    A cograph on ``S`` (``|S| >= 2``) is a union or join of cographs on a
    bipartition ``A, B``, so ``f(S) = min f(A) + f(B) + min(cut, |A||B| - cut)``.
    Returns the optimum and one optimal edited adjacency.
    """
    k = sub.shape[0]
    if k <= 1:
        return 0, sub.copy()
    nbr = [int(sum(1 << j for j in np.flatnonzero(sub[i]))) for i in range(k)]
    full = (1 << k) - 1
    size = [0] * (full + 1)
    ecount = [0] * (full + 1)
    for mask in range(1, full + 1):
        low = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        size[mask] = size[rest] + 1
        ecount[mask] = ecount[rest] + (nbr[low] & rest).bit_count()
    best = [0] * (full + 1)
    choice: list[tuple[int, bool] | None] = [None] * (full + 1)
    for mask in range(1, full + 1):
        if size[mask] == 1:
            continue
        low = mask & -mask
        rest = mask ^ low
        em = ecount[mask]
        top = None
        sa = rest
        # sub-masks A containing the lowest bit, B = mask ^ A nonempty
        while True:
            a = sa | low
            if a != mask:
                b = mask ^ a
                cut = em - ecount[a] - ecount[b]
                pairs = size[a] * size[b]
                join = pairs - cut < cut
                cost = best[a] + best[b] + (pairs - cut if join else cut)
                if top is None or cost < top:
                    top, choice[mask] = cost, (a, join)
            if sa == 0:
                break
            sa = (sa - 1) & rest
        best[mask] = top
    out = sub.copy()
    stack = [full]
    while stack:
        mask = stack.pop()
        if size[mask] < 2:
            continue
        a, join = choice[mask]
        b = mask ^ a
        ia = [i for i in range(k) if a >> i & 1]
        ib = [i for i in range(k) if b >> i & 1]
        out[np.ix_(ia, ib)] = join
        out[np.ix_(ib, ia)] = join
        stack.extend((a, b))
    return best[full], out


def min_cograph_edits_exact(G: Graph) -> int:
    """Exact minimum number of pair flips making ``G`` a cograph (small ``n``)."""
    return _exact_edit_dp(np.array(G.adj))[0]


def _sweep_cut(sub: np.ndarray, order: np.ndarray) -> tuple[float, int, bool]:
    """Best prefix cut along ``order``; score is the cross-density deviation."""
    s = len(order)
    M = sub[np.ix_(order, order)].astype(np.int64)
    deg = M.sum(axis=1)
    back = np.tril(M, -1).sum(axis=1)
    cut = np.cumsum(deg - 2 * back)[:-1]
    k = np.arange(1, s)
    pairs = k * (s - k)
    dense = pairs - cut
    cost = np.minimum(cut, dense)
    score = cost / pairs - 1e-9 * np.minimum(k, s - k)
    j = int(np.argmin(score))
    return float(score[j]), j + 1, bool(dense[j] < cut[j])


def _fiedler_order(sub: np.ndarray) -> np.ndarray:
    A = sub.astype(np.float64)
    lap = np.diag(A.sum(axis=1)) - A
    _, vecs = np.linalg.eigh(lap)
    return np.argsort(vecs[:, 1], kind="stable")


def _heuristic_split(sub: np.ndarray) -> tuple[np.ndarray, np.ndarray, bool]:
    s = sub.shape[0]
    co = ~sub
    np.fill_diagonal(co, False)
    deg = sub.sum(axis=1)
    candidates = [_fiedler_order(sub), _fiedler_order(co), np.argsort(deg, kind="stable"), np.argsort(-deg, kind="stable")]
    best = None
    for order in candidates:
        score, k, join = _sweep_cut(sub, order)
        if best is None or score < best[0]:
            best = (score, order[:k], order[k:], join)
    _, a, b, join = best
    # single-vertex moves while they lower the homogenization cost of the fixed polarity
    side = np.zeros(s, dtype=bool)
    side[a] = True
    for _ in range(3):
        moved = False
        for v in range(s):
            na, nb = int(side.sum()), s - int(side.sum())
            if (side[v] and na == 1) or (not side[v] and nb == 1):
                continue
            other = ~side if side[v] else side.copy()
            same = side.copy() if side[v] else ~side
            same[v] = False
            # cost contribution of v: cross pairs with wrong value
            want = join
            now = int((sub[v, other] != want).sum())
            after = int((sub[v, same] != want).sum())
            if after < now:
                side[v] = not side[v]
                moved = True
        if not moved:
            break
    return np.flatnonzero(side), np.flatnonzero(~side), join


def cograph_edit(G: Graph, exact_threshold: int = 10) -> GraphEdit:
    """Flip pairs of ``G`` until it is a cograph.

    ``G.n <= exact_threshold`` runs the exact subset DP (minimum edits).
    Otherwise vertex sets are split top-down: by components of ``G`` or its
    complement when possible (free), else by a spectral/degree sweep cut
    made homogeneous on the cheaper side.  Pieces that get stuck at
    ``exact_threshold`` vertices or fewer are solved exactly.
    """
    adj = np.array(G.adj)
    if G.n <= exact_threshold:
        _, out = _exact_edit_dp(adj)
        exact = True
    else:
        out = adj.copy()
        exact = False
        stack = [np.arange(G.n)]
        while stack:
            verts = stack.pop()
            if len(verts) < 2:
                continue
            sub = out[np.ix_(verts, verts)]
            comps = _components(sub)
            if len(comps) == 1:
                co = ~sub
                np.fill_diagonal(co, False)
                comps = _components(co)
            if len(comps) > 1:
                stack.extend(verts[c] for c in comps)
                continue
            if len(verts) <= exact_threshold:
                _, fixed = _exact_edit_dp(sub)
                out[np.ix_(verts, verts)] = fixed
                continue
            a, b, join = _heuristic_split(sub)
            va, vb = verts[a], verts[b]
            out[np.ix_(va, vb)] = join
            out[np.ix_(vb, va)] = join
            stack.extend((va, vb))
    diff = np.triu(out != adj, 1)
    add = tuple((int(x), int(y)) for x, y in zip(*np.nonzero(diff & out)))
    dele = tuple((int(x), int(y)) for x, y in zip(*np.nonzero(diff & ~out)))
    graph = Graph.from_adjacency(out, check=False)
    return GraphEdit(add, dele, graph, cotree_of(graph), exact)


# --------------------------------------------------------------------------
# Partition into near-homogeneous parts


@dataclass(frozen=True)
class CographPartition:
    """Exceptional set ``S``, parts ``V_1..V_t``, matching over part indices.

    Part indices are 0-based.  ``primed[i]`` is ``V'_i`` for matched ``i``;
    ``matched_kind[(i, j)]`` is ``"complete"`` (Item 4(a)) or ``"empty"``
    (Item 4(b)) for each matched pair ``i < j``.
    """

    S: tuple[int, ...]
    parts: tuple[tuple[int, ...], ...]
    matching: tuple[tuple[int, int], ...]
    primed: Mapping[int, tuple[int, ...]]
    matched_kind: Mapping[tuple[int, int], str] = field(default_factory=dict)


@dataclass
class PartitionReport:
    ok: bool
    failures: list[str]

    def __bool__(self) -> bool:
        return self.ok


def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


class _SizeCache:
    # keyed by id(); nodes are pinned so ids of discarded remainders are never reused
    def __init__(self):
        self._size: dict[int, int] = {}
        self._min: dict[int, int] = {}
        self._pinned: list[Cotree] = []

    def fill(self, root: Cotree) -> None:
        for node in _postorder(root):
            if id(node) in self._size:
                continue
            self._pinned.append(node)
            if node.is_leaf:
                self._size[id(node)] = 1
                self._min[id(node)] = node.vertex
            else:
                self._size[id(node)] = sum(self._size[id(c)] for c in node.children)
                self._min[id(node)] = min(self._min[id(c)] for c in node.children)

    def key(self, node: Cotree) -> tuple[int, int]:
        if id(node) not in self._size:
            self.fill(node)
        return self._size[id(node)], self._min[id(node)]


def _peel_root(root: Cotree, cache: _SizeCache, weight=None):
    """Split off the lightest root child; returns (child, complete?, remainder)."""
    if weight is None:
        key = cache.key
    else:
        key = lambda c: (weight(c), cache.key(c)[1])
    kids = sorted(root.children, key=key)
    a, rest = kids[0], [c for c in root.children if c is not kids[0]]
    remainder = rest[0] if len(rest) == 1 else Cotree(root.kind, tuple(rest))
    return a, root.kind is NodeKind.JOIN, remainder


def cograph_partition(G: Graph, m: int, beta, cotree: Cotree | None = None, *, verify: bool = True) -> CographPartition:
    """Partition a cograph into an exceptional set and parts of size in ``[beta*m, m]``.

    Follows the inductive construction: peel smallest cotree children until
    ``m`` vertices are gathered, cut the peeled prefix into ``ceil(1/beta)``
    intervals, keep the three long runs ``X_1, Y_1, X_2`` (``X_1, Y_1``
    matched), recurse on the last peeled block and the remainder when they
    exceed ``m``.  The result is re-verified before return.
    """
    beta = as_fraction(beta)
    n = G.n
    if not (1 <= m < n):
        raise PreconditionError(f"need 1 <= m < n, got m={m}, n={n}")
    if not (0 < beta < 1):
        raise PreconditionError("need 0 < beta < 1")
    root = cotree if cotree is not None else cotree_of(G)
    cache = _SizeCache()
    cache.fill(root)
    bm = beta * m
    r = _ceil_frac(1 / beta)

    S: list[int] = []
    parts: list[tuple[int, ...]] = []
    matches: list[tuple[int, int, tuple[int, ...], tuple[int, ...], str]] = []

    def add_part(vs) -> int:
        parts.append(tuple(sorted(int(v) for v in vs)))
        return len(parts) - 1

    def place(vs) -> int | None:
        if len(vs) < bm:
            S.extend(vs)
            return None
        return add_part(vs)

    stack = [root]
    while stack:
        cur = stack.pop()
        total = cache.key(cur)[0]
        peeled: list[tuple[list[int], bool]] = []
        got = 0
        while got < m:
            a, complete, cur = _peel_root(cur, cache)
            block = sorted(cotree_leaves(a))
            peeled.append((block, complete))
            got += len(block)
            last = a
        z1, z2 = last, cur
        # ordered prefix A_1..A_{k-1}
        order = np.array([v for block, _ in peeled[:-1] for v in block], dtype=np.int64)
        in_x = np.array([c for block, c in peeled[:-1] for _ in block], dtype=bool)
        nxy = len(order)
        q, extra = divmod(nxy, r)
        lengths = np.array([q + 1] * extra + [q] * (r - extra), dtype=np.int64)
        # 1-based interval index of every prefix position; larger intervals first
        iv_of = np.repeat(np.arange(1, r + 1), lengths)
        first = iv_of == 1
        swapped = 2 * int(in_x[first].sum()) < int(first.sum())
        p_role = ~in_x if swapped else in_x

        def members(iv_from: int, iv_to: int, role: bool) -> list[int]:
            # positions in intervals iv_from..iv_to (1-based, inclusive) with p_role == role
            mask = (iv_of >= iv_from) & (iv_of <= iv_to) & (p_role == role)
            return [int(v) for v in order[mask]]

        q_count = np.bincount(iv_of[~p_role], minlength=r + 1)[1:]
        heavy = np.flatnonzero(q_count * beta.denominator > beta.numerator * lengths)
        s = int(heavy[-1]) + 1 if len(heavy) else 0
        x1 = members(1, s - 1, True)
        y1 = members(2, s, False)
        x2 = members(s + 1, r, True)
        S.extend(members(s + 1, r, False))
        if s >= 1:
            S.extend(members(1, 1, False))
            S.extend(members(s, s, True))
        i_x1, i_y1 = place(x1), place(y1)
        place(x2)
        if i_x1 is not None and i_y1 is not None:
            x1p = tuple(sorted(members(1, 1, True)))
            y1p = tuple(sorted(members(s, s, False)))
            matches.append((i_x1, i_y1, x1p, y1p, "empty" if swapped else "complete"))
        for z in (z1, z2):
            size = cache.key(z)[0]
            if size < bm:
                S.extend(cotree_leaves(z))
            elif size > m:
                stack.append(z)
            else:
                add_part(cotree_leaves(z))
        assert got + cache.key(z2)[0] == total

    # deterministic part order by minimum vertex
    perm = sorted(range(len(parts)), key=lambda i: parts[i][0])
    new_index = {old: new for new, old in enumerate(perm)}
    out_parts = tuple(parts[i] for i in perm)
    matching, primed, kinds = [], {}, {}
    for i, j, pi, pj, kind in matches:
        a, b = new_index[i], new_index[j]
        primed[a], primed[b] = pi, pj
        key = (min(a, b), max(a, b))
        matching.append(key)
        kinds[key] = kind
    result = CographPartition(tuple(sorted(S)), out_parts, tuple(sorted(matching)), primed, kinds)
    if verify:
        report = verify_cograph_partition(G, result, m, beta)
        if not report.ok:
            raise VerificationError("cograph partition failed its postconditions", report)
    return result


def _block_sums(adj: np.ndarray, parts: Sequence[Sequence[int]]) -> np.ndarray:
    order = np.concatenate([np.asarray(p, dtype=np.int64) for p in parts])
    starts = np.cumsum([0] + [len(p) for p in parts[:-1]])
    M = adj[np.ix_(order, order)].astype(np.int64)
    return np.add.reduceat(np.add.reduceat(M, starts, axis=0), starts, axis=1)


def verify_cograph_partition(G: Graph, P: CographPartition, m: int, beta) -> PartitionReport:
    """Re-derive Items 1-4 from scratch; returns a report listing every violation."""
    beta = as_fraction(beta)
    n = G.n
    fails: list[str] = []
    everything = list(P.S) + [v for p in P.parts for v in p]
    if sorted(everything) != list(range(n)):
        fails.append("S and parts do not partition V(G)")
    bound = (2 * _ceil_frac(Fraction(n, m)) - 3) * 10 * beta * m
    if len(P.S) > bound:
        fails.append(f"Item 1: |S|={len(P.S)} > {bound}")
    for i, p in enumerate(P.parts):
        if not (beta * m <= len(p) <= m):
            fails.append(f"Item 2: |V_{i}|={len(p)} outside [{beta * m}, {m}]")
    t = len(P.parts)
    used: set[int] = set()
    for i, j in P.matching:
        if not (0 <= i < j < t):
            fails.append(f"bad matching pair {(i, j)}")
            continue
        if i in used or j in used:
            fails.append(f"matching pairs share index in {(i, j)}")
        used.update((i, j))
    if set(P.primed) != used:
        fails.append("primed sets must exist exactly for matched indices")
    if t >= 2 and not fails:
        sums = _block_sums(G.adj, P.parts)
        sizes = np.array([len(p) for p in P.parts])
        full = sizes[:, None] * sizes[None, :]
        homog = (sums == 0) | (sums == full)
        matched = np.zeros((t, t), dtype=bool)
        for i, j in P.matching:
            matched[i, j] = matched[j, i] = True
        bad = ~homog & ~matched
        np.fill_diagonal(bad, False)
        for i, j in zip(*np.nonzero(np.triu(bad, 1))):
            fails.append(f"Item 3: pair ({i},{j}) not homogeneous")
            if len(fails) > 20:
                break
        need = beta**3 * m / 2
        for i, j in P.matching:
            pi, pj = P.primed.get(i, ()), P.primed.get(j, ())
            if not (set(pi) <= set(P.parts[i]) and set(pj) <= set(P.parts[j])):
                fails.append(f"Item 4: primed sets of ({i},{j}) not inside their parts")
                continue
            if len(pi) < need or len(pj) < need:
                fails.append(f"Item 4: |V'| sizes {len(pi)}, {len(pj)} < {need}")
                continue
            a = G.adj[np.ix_(pi, P.parts[j])]
            b = G.adj[np.ix_(pj, P.parts[i])]
            if not ((a.all() and b.all()) or not (a.any() or b.any())):
                fails.append(f"Item 4: pair ({i},{j}) primed sets neither complete nor empty")
    return PartitionReport(not fails, fails)


# --------------------------------------------------------------------------
# Weighted split


@dataclass(frozen=True)
class WeightedSplit:
    I: tuple[int, ...]
    J: tuple[int, ...]
    L: tuple[int, ...]
    bipartite_kind: str  # "complete" | "empty"


def weighted_split(G: Graph, w: Mapping[int, Fraction] | Sequence, beta, cotree: Cotree | None = None) -> WeightedSplit:
    """Split weighted vertices into ``I, J, L`` with ``I-J`` complete or empty.

    Guarantees ``w(I), w(J) >= beta/2`` and ``w(L) < beta``; checked before
    return.  Requires total weight 1, every ``w(v) <= 1 - beta`` and
    ``0 < beta <= 1/3``.
    """
    beta = as_fraction(beta)
    n = G.n
    weights = [as_fraction(w[v]) for v in range(n)]
    if not (0 < beta <= Fraction(1, 3)):
        raise PreconditionError("need 0 < beta <= 1/3")
    for v, x in enumerate(weights):
        if x <= 0:
            raise PreconditionError(f"weight of vertex {v} must be positive, got {x}")
        if x > 1 - beta:
            raise PreconditionError(f"weight of vertex {v} is {x} > 1 - beta = {1 - beta}")
    if sum(weights) != 1:
        raise PreconditionError(f"weights must sum to 1, got {sum(weights)}")
    root = cotree if cotree is not None else cotree_of(G)
    cache = _SizeCache()
    cache.fill(root)
    wsum: dict[int, Fraction] = {}
    for node in _postorder(root):
        wsum[id(node)] = weights[node.vertex] if node.is_leaf else sum(wsum[id(c)] for c in node.children)

    def weight(node: Cotree) -> Fraction:
        if id(node) not in wsum:
            cache.fill(node)
            wsum[id(node)] = sum(weight(c) for c in node.children)
        return wsum[id(node)]

    cur = root
    peeled: list[tuple[list[int], bool, Fraction]] = []
    got = Fraction(0)
    while got < beta:
        if cur.is_leaf:
            raise VerificationError("ran out of vertices while peeling; weight bound violated")
        a, complete, cur = _peel_root(cur, cache, weight)
        peeled.append((cotree_leaves(a), complete, weight(a)))
        got += weight(a)
    rest = cotree_leaves(cur)
    block_k, complete_k, w_k = peeled[-1]
    if w_k >= beta:
        out = WeightedSplit(
            tuple(sorted(block_k)),
            tuple(sorted(rest)),
            tuple(sorted(v for b, _, _ in peeled[:-1] for v in b)),
            "complete" if complete_k else "empty",
        )
    else:
        plus = [v for b, c, _ in peeled if c for v in b]
        minus = [v for b, c, _ in peeled if not c for v in b]
        wp = sum((weights[v] for v in plus), Fraction(0))
        wm = sum((weights[v] for v in minus), Fraction(0))
        if wp >= wm:
            out = WeightedSplit(tuple(sorted(plus)), tuple(sorted(rest)), tuple(sorted(minus)), "complete")
        else:
            out = WeightedSplit(tuple(sorted(minus)), tuple(sorted(rest)), tuple(sorted(plus)), "empty")
    _check_weighted_split(G, weights, beta, out)
    return out


def _check_weighted_split(G: Graph, weights, beta: Fraction, ws: WeightedSplit) -> None:
    W = lambda s: sum((weights[v] for v in s), Fraction(0))
    problems = []
    if sorted(ws.I + ws.J + ws.L) != list(range(G.n)):
        problems.append("I, J, L do not partition V")
    if W(ws.I) < beta / 2 or W(ws.J) < beta / 2:
        problems.append(f"w(I)={W(ws.I)}, w(J)={W(ws.J)} below beta/2")
    if W(ws.L) >= beta:
        problems.append(f"w(L)={W(ws.L)} >= beta")
    block = G.adj[np.ix_(ws.I, ws.J)]
    if ws.bipartite_kind == "complete" and not block.all():
        problems.append("I-J not complete")
    if ws.bipartite_kind == "empty" and block.any():
        problems.append("I-J not empty")
    if problems:
        raise VerificationError("; ".join(problems))
