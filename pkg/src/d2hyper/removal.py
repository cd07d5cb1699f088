"""Editing a 3-graph into an induced-D2-free one via a homogeneous decomposition tree.

Leaves of size at least ``eps * n`` are split by :func:`vertex_split`; every
split is then made exactly homogeneous (cross triples all added or all
deleted, following its verdict) and every edge inside a leaf is deleted.
The result is a cohypergraph, which is verified exactly before return.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .core import Hypergraph3, Verdict, as_fraction, triples_upper
from .count import D2Witness, count_induced_d2
from .decomp import default_floor, exact_homogeneous_split, vertex_split
from .errors import FormatError, PreconditionError, VerificationError, WitnessFound

__all__ = [
    "TreeNode",
    "DecompositionTree",
    "EditSet",
    "RemovalResult",
    "removal_edit",
    "homogenize",
    "is_cohypergraph",
    "is_cohypergraph_exhaustive",
    "verify_d2_free",
    "min_edit_to_d2_free",
]


@dataclass(frozen=True, eq=False)
class TreeNode:
    """Leaf (no children) or Split of ``vertices`` into ``left`` / ``right``."""

    vertices: tuple[int, ...]
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None
    verdict: Verdict | None = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None


@dataclass(frozen=True, eq=False)
class DecompositionTree:
    """Split tree over ``V(H)``; ``eps`` is the leaf threshold (None for exact certificates)."""

    root: TreeNode
    eps: Fraction | None = None

    def preorder(self) -> Iterator[TreeNode]:
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            if not node.is_leaf:
                stack.append(node.right)
                stack.append(node.left)

    def leaves(self) -> list[TreeNode]:
        return [node for node in self.preorder() if node.is_leaf]

    def splits(self) -> list[TreeNode]:
        return [node for node in self.preorder() if not node.is_leaf]

    def validate(self, n: int) -> None:
        """Raise :class:`VerificationError` unless children partition their parent and leaves are small."""
        if sorted(self.root.vertices) != list(range(n)):
            raise VerificationError("root set is not V(H)")
        for node in self.preorder():
            if node.is_leaf:
                if self.eps is not None and len(node.vertices) >= self.eps * n:
                    raise VerificationError(f"leaf of size {len(node.vertices)} >= eps*n")
                continue
            if node.verdict not in (Verdict.DENSE, Verdict.SPARSE):
                raise VerificationError("split without a Dense/Sparse verdict")
            if not node.left.vertices or not node.right.vertices:
                raise VerificationError("split with an empty side")
            if sorted(node.left.vertices + node.right.vertices) != sorted(node.vertices):
                raise VerificationError("children do not partition their parent")


@dataclass(frozen=True)
class EditSet:
    """Triple additions and deletions as ascending ``(k, 3)`` arrays in lexicographic order."""

    additions: np.ndarray
    deletions: np.ndarray

    @classmethod
    def between(cls, before: Hypergraph3, after: Hypergraph3) -> "EditSet":
        if before.n != after.n:
            raise PreconditionError("hypergraphs must share a vertex set")
        tri = triples_upper(before.n)
        old, new = before.upper_mask, after.upper_mask
        return cls(tri[new & ~old], tri[old & ~new])

    def __len__(self) -> int:
        return len(self.additions) + len(self.deletions)

    def apply(self, H: Hypergraph3) -> Hypergraph3:
        for a, b, c in self.additions:
            if H.adj[a, b, c]:
                raise PreconditionError(f"addition {a} {b} {c} is already an edge")
        for a, b, c in self.deletions:
            if not H.adj[a, b, c]:
                raise PreconditionError(f"deletion {a} {b} {c} is not an edge")
        return H.with_edits(self.additions, self.deletions)

    def to_lines(self) -> list[str]:
        rows = [("+", *map(int, t)) for t in self.additions] + [("-", *map(int, t)) for t in self.deletions]
        rows.sort()
        return [f"{s} {a} {b} {c}" for s, a, b, c in rows]

    def serialize(self) -> str:
        return "".join(line + "\n" for line in self.to_lines())

    @classmethod
    def parse(cls, text: str) -> "EditSet":
        add, dele, seen = [], [], set()
        for lineno, line in enumerate(text.splitlines(), 1):
            parts = line.split()
            if len(parts) != 4 or parts[0] not in "+-" or len(parts[0]) != 1:
                raise FormatError(f"line {lineno}: expected '+ a b c' or '- a b c'")
            try:
                a, b, c = (int(x) for x in parts[1:])
            except ValueError as exc:
                raise FormatError(f"line {lineno}: non-integer vertex") from exc
            if not 0 <= a < b < c:
                raise FormatError(f"line {lineno}: vertices must be ascending and non-negative")
            if (a, b, c) in seen:
                raise FormatError(f"line {lineno}: triple listed twice")
            seen.add((a, b, c))
            (add if parts[0] == "+" else dele).append((a, b, c))
        as_arr = lambda xs: np.array(sorted(xs), dtype=np.int64).reshape(-1, 3)
        return cls(as_arr(add), as_arr(dele))


@dataclass(frozen=True)
class RemovalResult:
    """``forced`` lists the split nodes (by vertex set) that had no eps-homogeneous split."""

    edited: Hypergraph3
    edits: EditSet
    tree: DecompositionTree
    forced: tuple[tuple[int, ...], ...] = ()


def _paint_cross(adj: np.ndarray, A: np.ndarray, B: np.ndarray, value: bool) -> None:
    """Set every triple meeting both ``A`` and ``B`` (inside ``A | B``) to ``value``."""
    for x, y, z in ((A, A, B), (A, B, A), (B, A, A), (A, B, B), (B, A, B), (B, B, A)):
        adj[np.ix_(x, y, z)] = value


def removal_edit(
    H: Hypergraph3,
    eps,
    *,
    floor: int | None = None,
    exact_threshold: int = 10,
    max_candidates: int = 3,
    seed: int = 0,
) -> RemovalResult:
    """Decompose, homogenize, clear leaves; returns the edited cohypergraph.

    Raises :class:`WitnessFound` (from :func:`vertex_split`) when some part
    can neither be split nor certified D2-free.  ``floor`` applies to ``n``;
    it defaults to the size needed by the vertex split at ``eps``.
    """
    eps = as_fraction(eps)
    if not 0 < eps < 1:
        raise PreconditionError("eps must lie in (0, 1)")
    n = H.n
    floor = default_floor(eps / 16, eps / 2) if floor is None else floor
    if n < floor:
        raise PreconditionError(f"n={n} below floor {floor}")
    if n >= 1 and eps * n <= 1:
        raise PreconditionError(f"eps*n={eps * n} must exceed 1 so that single vertices are leaves")
    threshold = eps * n

    # build the tree breadth-first, then assemble nodes bottom-up
    sets: list[tuple[int, ...]] = [tuple(range(n))]
    info: list[tuple | None] = []
    forced: list[tuple[int, ...]] = []
    i = 0
    while i < len(sets):
        U = sets[i]
        if len(U) < threshold:
            info.append(None)
        else:
            sub = H.induced(U)
            try:
                split = vertex_split(
                    sub, eps, floor=0, exact_threshold=exact_threshold,
                    max_candidates=max_candidates, seed=seed,
                )
                X, Y, kind = split.X, split.Y, split.verdict.kind
            except WitnessFound as exc:
                lifted = [D2Witness(tuple(sorted(U[k] for k in w.four))) for w in exc.witnesses]
                raise WitnessFound(lifted) from None
            except VerificationError:
                # D2-free but no eps-homogeneous split at this size
                X, Y, kind = _forced_split(sub)
                forced.append(U)
            left = tuple(U[k] for k in X)
            right = tuple(U[k] for k in Y)
            info.append((len(sets), len(sets) + 1, kind))
            sets.extend((left, right))
        i += 1
    nodes: list[TreeNode | None] = [None] * len(sets)
    for i in reversed(range(len(sets))):
        if info[i] is None:
            nodes[i] = TreeNode(sets[i])
        else:
            l, r, kind = info[i]
            nodes[i] = TreeNode(sets[i], nodes[l], nodes[r], kind)
    tree = DecompositionTree(nodes[0], eps)
    tree.validate(n)

    edited = homogenize(H, tree)
    edits = EditSet.between(H, edited)

    ok, _ = is_cohypergraph(edited)
    if not ok:
        raise VerificationError("edited hypergraph is not a cohypergraph")
    if not verify_d2_free(edited):
        raise VerificationError("edited hypergraph still contains an induced D2")
    return RemovalResult(edited, edits, tree, tuple(forced))


def _forced_split(H: Hypergraph3) -> tuple[tuple[int, ...], tuple[int, ...], Verdict]:
    # the most extreme vertex alone, homogenized toward its majority side
    n = H.n
    pairs = (n - 1) * (n - 2) // 2
    deg = H.degrees.astype(np.int64)
    v = int(np.argmax(np.abs(2 * deg - pairs)))
    kind = Verdict.DENSE if 2 * deg[v] >= pairs else Verdict.SPARSE
    return (v,), tuple(u for u in range(n) if u != v), kind


def homogenize(H: Hypergraph3, tree: DecompositionTree) -> Hypergraph3:
    """Make every split of ``tree`` exactly homogeneous and empty every leaf."""
    adj = np.array(H.adj, copy=True)
    for node in tree.preorder():
        if node.is_leaf:
            L = np.asarray(node.vertices, dtype=np.int64)
            adj[np.ix_(L, L, L)] = False
        else:
            A = np.asarray(node.left.vertices, dtype=np.int64)
            B = np.asarray(node.right.vertices, dtype=np.int64)
            _paint_cross(adj, A, B, node.verdict is Verdict.DENSE)
    idx = np.arange(H.n)
    adj[idx, idx, :] = False
    adj[idx, :, idx] = False
    adj[:, idx, idx] = False
    return Hypergraph3.from_adjacency(adj, check=False)


def is_cohypergraph(H: Hypergraph3) -> tuple[bool, DecompositionTree | None]:
    """Exact test, with a certificate tree whose leaves are single vertices.

    Any exactly homogeneous split is fine at every level: cohypergraphs are
    closed under induced subgraphs, so if ``H`` is one, both sides of any
    homogeneous split are too.  Codegrees are updated incrementally for
    children, keeping deep trees at cubic cost.
    """
    if H.n < 1:
        raise PreconditionError("is_cohypergraph needs n >= 1")
    sets: list[np.ndarray] = [np.arange(H.n)]
    codegs: list[np.ndarray | None] = [H.codegrees]
    info: list[tuple | None] = []
    i = 0
    while i < len(sets):
        U, cd = sets[i], codegs[i]
        codegs[i] = None
        if len(U) == 1:
            info.append(None)
        else:
            found = exact_homogeneous_split(H, tuple(int(u) for u in U), codegrees=cd)
            if found is None:
                return False, None
            X, Y, kind = found
            pos = {int(u): k for k, u in enumerate(U)}
            for side, other in ((X, Y), (Y, X)):
                si = np.array([pos[u] for u in side])
                oth = np.asarray(other, dtype=np.int64)
                sub = cd[np.ix_(si, si)] - H.adj[np.ix_(np.asarray(side), np.asarray(side), oth)].sum(axis=2, dtype=np.int64)
                sets.append(np.asarray(side, dtype=np.int64))
                codegs.append(sub)
            info.append((len(sets) - 2, len(sets) - 1, kind))
        i += 1
    nodes: list[TreeNode | None] = [None] * len(sets)
    for i in reversed(range(len(sets))):
        verts = tuple(int(u) for u in sets[i])
        if info[i] is None:
            nodes[i] = TreeNode(verts)
        else:
            l, r, kind = info[i]
            nodes[i] = TreeNode(verts, nodes[l], nodes[r], kind)
    return True, DecompositionTree(nodes[0], None)


def _homogeneous_pair(adj: np.ndarray, X: list[int], Y: list[int]) -> bool:
    vals = []
    if len(X) >= 2:
        vals.append(adj[np.ix_(X, X, Y)][np.triu_indices(len(X), 1)].ravel())
    if len(Y) >= 2:
        vals.append(adj[np.ix_(Y, Y, X)][np.triu_indices(len(Y), 1)].ravel())
    if not vals:
        return True
    allv = np.concatenate(vals)
    return bool(allv.all() or not allv.any())


def is_cohypergraph_exhaustive(H: Hypergraph3) -> bool:
    """Definition-level check by trying every bipartition (memoized over subsets); small ``n`` only."""
    n = H.n
    if n > 14:
        raise PreconditionError("exhaustive cohypergraph check is limited to n <= 14")
    if n < 1:
        raise PreconditionError("is_cohypergraph needs n >= 1")
    adj = H.adj
    memo: dict[int, bool] = {}

    def ok(mask: int) -> bool:
        if mask in memo:
            return memo[mask]
        verts = [v for v in range(n) if mask >> v & 1]
        if len(verts) == 1:
            memo[mask] = True
            return True
        low = mask & -mask
        rest = mask ^ low
        result = False
        sub = rest
        while True:
            left = sub | low
            if left != mask:
                right = mask ^ left
                X = [v for v in range(n) if left >> v & 1]
                Y = [v for v in range(n) if right >> v & 1]
                if _homogeneous_pair(adj, X, Y) and ok(left) and ok(right):
                    result = True
                    break
            if sub == 0:
                break
            sub = (sub - 1) & rest
        memo[mask] = result
        return result

    return ok((1 << n) - 1)


def verify_d2_free(H: Hypergraph3) -> bool:
    return count_induced_d2(H) == 0


def min_edit_to_d2_free(H: Hypergraph3) -> int:
    """Exact minimum number of triple flips reaching an induced-D2-free 3-graph (``n <= 6``)."""
    n = H.n
    if n > 6:
        raise PreconditionError("exhaustive minimum edit is limited to n <= 6")
    tri = [tuple(t) for t in triples_upper(n)]
    if n < 4:
        return 0
    index = {t: k for k, t in enumerate(tri)}
    masks = np.arange(1 << len(tri), dtype=np.int64)
    free = np.ones(len(masks), dtype=bool)
    for four in itertools.combinations(range(n), 4):
        count = np.zeros(len(masks), dtype=np.int8)
        for t in itertools.combinations(four, 3):
            count += ((masks >> index[t]) & 1).astype(np.int8)
        free &= count != 2
    current = sum(1 << k for k, t in enumerate(tri) if H.adj[t])
    dist = np.bitwise_count((masks[free] ^ current).astype(np.uint64))
    return int(dist.min())
