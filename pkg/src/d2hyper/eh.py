"""Large homogeneous sets in induced-D2-free 3-graphs.

The pipeline repeatedly splits large parts into near-homogeneous pairs,
records the pairs as edges/non-edges of a part cograph, buckets the small
parts by size, takes a homogeneous set of parts from the cograph and finishes
with a derandomized independent set (or clique) on their union.

Parameters follow a schedule driven by ``eta = n^(-1/(100*C0))``; at desk
scale that schedule is vacuous, so every parameter can be overridden
("engineering mode").
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .cograph import build_cotree, cotree_homogeneous_set
from .core import Graph, Hypergraph3, Verdict, as_fraction, density_hypergraph, split_verdict
from .decomp import exact_homogeneous_split, main_partition
from .errors import (
    DensityEscape,
    HypothesisViolation,
    PreconditionError,
    VerificationError,
    WitnessFound,
)

__all__ = [
    "EHParams",
    "eh_parameters",
    "engineering_parameters",
    "link_density_scan",
    "StepSplit",
    "partition_step",
    "independent_set_bound",
    "sparse_independent_set",
    "dense_clique",
    "StepRecord",
    "EHLog",
    "EHResult",
    "eh_find",
    "brute_force_homogeneous",
    "is_homogeneous_set",
]


# --------------------------------------------------------------------------
# Parameters


@dataclass(frozen=True)
class EHParams:
    """Real-valued schedule; ``C`` is ``None`` when no root exists in ``(C0, 10*C0)``."""

    n: int
    C0: float
    eta: float
    gamma: float
    t: float
    beta: float
    xi: float
    eps: float
    C: float | None
    engineering: bool = False


def _c_equation(C: float, log_n: float, log_xi: float, log_gamma: float, log_eps: float) -> float:
    # log of (1/xi) * (C / (gamma n))^(1/C) minus log(eps)
    return -log_xi + (math.log(C) - log_gamma - log_n) / C - log_eps


def eh_parameters(n: int, C0=1) -> EHParams:
    """Schedule from ``n`` and ``C0``; ``C`` solved by bisection on ``[C0, 10*C0]``.

    The bisection runs in log space so astronomically large ``n`` works;
    only ``n`` large enough admits a root.
    """
    if n < 2:
        raise PreconditionError("n must be >= 2")
    C0 = float(C0)
    if C0 < 1:
        raise PreconditionError("C0 must be >= 1")
    log_n = math.log(n)
    log_eta = -log_n / (100 * C0)
    log_gamma = 2 * log_eta - math.log(8)
    log_beta = math.log(2) + 1.5 * log_gamma
    log_xi = 2 * log_beta - math.log(16)
    log_eps = 3 * (log_xi - math.log(10)) + 4 * log_gamma - math.log(2)
    eta, gamma, beta, xi, eps = (math.exp(x) for x in (log_eta, log_gamma, log_beta, log_xi, log_eps))
    t = 2 * math.exp(-3 * log_gamma) if -3 * log_gamma < 700 else math.inf
    f = lambda C: _c_equation(C, log_n, log_xi, log_gamma, log_eps)
    lo, hi = C0, 10 * C0
    f_lo, f_hi = f(lo), f(hi)
    C = None
    if f_lo == 0:
        C = lo
    elif f_lo * f_hi < 0:
        for _ in range(200):
            mid = (lo + hi) / 2
            f_mid = f(mid)
            if (f_mid < 0) == (f_lo < 0):
                lo, f_lo = mid, f_mid
            else:
                hi = mid
        C = (lo + hi) / 2
    return EHParams(n, C0, eta, gamma, t, beta, xi, eps, C)


def engineering_parameters(n: int, gamma=None, beta=None, xi=None, eps=None, t=None) -> EHParams:
    """Explicit schedule for desk-scale runs.

    Unspecified values follow the same formulas from ``gamma`` (default
    ``1/4``), except ``t`` which defaults to ``floor(1/(2 xi))`` so that
    ``t * xi <= 1/2`` keeps the discarded-set bound.
    """
    gamma = 0.25 if gamma is None else float(gamma)
    beta = 2 * gamma**1.5 if beta is None else float(beta)
    xi = beta**2 / 16 if xi is None else float(xi)
    eps = (xi / 10) ** 3 * gamma**4 / 2 if eps is None else float(eps)
    t = math.floor(1 / (2 * xi)) if t is None else float(t)
    for name, val in (("gamma", gamma), ("beta", beta), ("xi", xi), ("eps", eps)):
        if not 0 < val < 1:
            raise PreconditionError(f"{name} must lie in (0, 1), got {val}")
    if t < 1:
        raise PreconditionError("t must be >= 1")
    eta = math.sqrt(8 * gamma)
    return EHParams(n, 1.0, eta, gamma, t, beta, xi, eps, None, engineering=True)


# --------------------------------------------------------------------------
# Homogeneous sets from density


def link_density_scan(H: Hypergraph3, beta) -> int:
    """Smallest vertex whose link density lies in ``[beta^2/16, 1 - beta^2/16]``."""
    beta = as_fraction(beta)
    n = H.n
    if not 0 < beta < 1:
        raise PreconditionError("beta must lie in (0, 1)")
    if n < 4 / beta or n < 3:
        raise PreconditionError(f"n={n} below 4/beta={4 / beta}")
    d = density_hypergraph(H)
    if not beta <= d <= 1 - beta:
        raise DensityEscape(f"density {d} outside [{beta}, {1 - beta}]", d)
    low = beta**2 / 16
    pairs = comb(n - 1, 2)
    deg = H.degrees
    for v in range(n):
        if low * pairs <= int(deg[v]) <= (1 - low) * pairs:
            return v
    raise VerificationError("no vertex with balanced link density although the global density is balanced")


@dataclass(frozen=True)
class StepSplit:
    X: tuple[int, ...]
    Y: tuple[int, ...]
    S: tuple[int, ...]
    verdict: Verdict
    method: str  # "main" | "exact"


def _check_step(H, X, Y, S, U_size, xi, eps) -> tuple[bool, Verdict]:
    if not X or not Y:
        return False, Verdict.NEITHER
    if min(len(X), len(Y)) < xi * U_size / 10 or len(S) > xi * U_size / 2:
        return False, Verdict.NEITHER
    v = split_verdict(H, X, Y, eps)
    return v.homogeneous, v.kind


def partition_step(
    H: Hypergraph3,
    U,
    beta,
    C: float | None = None,
    *,
    xi=None,
    eps=None,
    floor: int = 0,
    exact_threshold: int = 10,
    seed: int = 0,
) -> StepSplit:
    """Split ``H[U]`` into ``X, Y, S`` with ``|X|,|Y| >= xi|U|/10``, ``|S| <= xi|U|/2``, eps-homogeneous.

    ``xi`` defaults to ``beta^2/16`` and ``eps`` to ``(1/xi)(C/|U|)^(1/C)``.
    Runs the link-density scan and :func:`main_partition`; when its output
    misses a postcondition and ``H[U]`` has an exactly homogeneous split
    meeting them, that split is used.  Vertex labels in the result are
    those of ``H``.  A density outside ``[beta, 1-beta]`` raises
    :class:`DensityEscape`.
    """
    U = tuple(int(u) for u in U)
    beta = as_fraction(beta)
    if len(U) < 4 / beta:
        raise PreconditionError(f"|U|={len(U)} below 4/beta")
    xi = beta**2 / 16 if xi is None else as_fraction(xi)
    if eps is None:
        if C is None:
            raise PreconditionError("either eps or C is required")
        eps = as_fraction((1 / float(xi)) * (C / len(U)) ** (1 / C))
    eps = as_fraction(eps)
    if not 0 < eps < 1:
        raise PreconditionError(f"eps={float(eps):.3g} is not in (0, 1); pass an engineering override")
    sub = H.induced(U)
    v = link_density_scan(sub, beta)
    lift = lambda vs: tuple(sorted(U[i] for i in vs))
    witnesses = []
    try:
        res = main_partition(sub, v, xi, eps, floor=floor, exact_threshold=exact_threshold, seed=seed)
        ok, kind = _check_step(sub, res.X, res.Y, res.S, len(U), xi, eps)
        if ok:
            return StepSplit(lift(res.X), lift(res.Y), lift(res.S), kind, "main")
        witnesses = list(res.witnesses)
    except HypothesisViolation:
        pass
    exact = exact_homogeneous_split(sub)
    if exact is not None:
        X, Y, _ = exact
        ok, kind = _check_step(sub, X, Y, (), len(U), xi, eps)
        if ok:
            return StepSplit(lift(X), lift(Y), (), kind, "exact")
    if witnesses:
        from .count import D2Witness

        raise WitnessFound([D2Witness(tuple(sorted(U[i] for i in w.four))) for w in witnesses])
    raise VerificationError("no split meeting the size and homogeneity bounds was found")


def independent_set_bound(n: int, d) -> Fraction | float:
    """``min(n/2, sqrt(3/(4d)))`` (``n/2`` when ``d = 0``)."""
    d = as_fraction(d)
    if d == 0:
        return Fraction(n, 2)
    return min(Fraction(n, 2), math.sqrt(3 / (4 * d)))


def _bound_ceiling(n: int, d: Fraction) -> int:
    # exact ceil(min(n/2, sqrt(3/(4d))))
    half = -(-n // 2)
    if d == 0:
        return half
    k = math.isqrt(int(3 / (4 * d)))
    while Fraction(k * k) * 4 * d < 3:
        k += 1
    while k > 0 and Fraction((k - 1) ** 2) * 4 * d >= 3:
        k -= 1
    return min(half, k)


def sparse_independent_set(H: Hypergraph3) -> tuple[int, ...]:
    """Independent set of size ``>= ceil(min(n/2, sqrt(3/(4d))))``, deterministically.

    Conditional expectations on ``sum p_v - sum_edges prod p``: each vertex
    in turn gets ``p_v in {0, 1}``, whichever keeps the potential from
    dropping; one vertex per surviving edge is then removed.  When
    ``d < 3/n^2`` all vertices start included.
    """
    n = H.n
    if n < 3:
        return tuple(range(n))
    d = density_hypergraph(H)
    if d * n * n < 3:
        chosen = np.ones(n, dtype=bool)
    else:
        p = math.sqrt(3 / float(d)) / n
        probs = np.full(n, min(1.0, p))
        A = H.adj
        for v in range(n):
            pv = probs.copy()
            pv[v] = 0.0
            # edges through v contribute p_v * p_b * p_c; each pair counted twice
            coeff = 1.0 - 0.5 * float(pv @ (A[v].astype(np.float64) @ pv))
            probs[v] = 1.0 if coeff >= 0 else 0.0
        chosen = probs == 1.0
    for a, b, c in H.edge_array():
        if chosen[a] and chosen[b] and chosen[c]:
            chosen[c] = False
    out = tuple(int(v) for v in np.flatnonzero(chosen))
    if not is_homogeneous_set(H, out, "independent"):
        raise VerificationError("derandomized set is not independent")
    need = _bound_ceiling(n, d)
    if len(out) < need:
        raise VerificationError(f"independent set of size {len(out)} below guaranteed {need}")
    return out


def dense_clique(H: Hypergraph3) -> tuple[int, ...]:
    """Clique of size ``>= ceil(min(n/2, sqrt(3/(4(1-d)))))``, via the complement."""
    out = sparse_independent_set(H.complement())
    if not is_homogeneous_set(H, out, "clique"):
        raise VerificationError("derandomized set is not a clique")
    return out


def is_homogeneous_set(H: Hypergraph3, vertices, kind: str) -> bool:
    idx = np.asarray(sorted(int(v) for v in vertices), dtype=np.int64)
    if len(idx) < 3:
        return True
    sub = H.induced(idx)
    if kind == "clique":
        return sub.num_edges == comb(len(idx), 3)
    if kind == "independent":
        return sub.num_edges == 0
    raise PreconditionError("kind must be 'clique' or 'independent'")


# --------------------------------------------------------------------------
# Iterated partition


@dataclass(frozen=True)
class StepRecord:
    step: int
    part_size: int
    x_size: int
    y_size: int
    s_size: int
    verdict: str
    good: bool
    q_before: float
    q_after: float


@dataclass
class EHLog:
    """Part state and step history of :func:`eh_find`."""

    n: int
    params: EHParams
    parts: list[tuple[int, ...]] = field(default_factory=list)
    part_graph: np.ndarray = field(default_factory=lambda: np.zeros((1, 1), dtype=bool))
    discarded: list[int] = field(default_factory=list)
    steps: list[StepRecord] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def bad_steps(self) -> int:
        return sum(not s.good for s in self.steps)

    def potential(self) -> float:
        return sum((len(p) / self.n) ** 2 for p in self.parts)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["step", "part_size", "x_size", "y_size", "s_size", "verdict", "good_or_bad"])
        for s in self.steps:
            w.writerow([s.step, s.part_size, s.x_size, s.y_size, s.s_size, s.verdict, "good" if s.good else "bad"])
        return buf.getvalue()

    def check(self) -> list[str]:
        """Invariant violations: potential drops, bad-step count, discard bound, partition."""
        problems = []
        g = self.params.gamma
        for s in self.steps:
            if not s.q_after < s.q_before:
                problems.append(f"step {s.step}: potential did not decrease")
            if not s.good and s.q_before - s.q_after < g**3 * (1 - 1e-12):
                problems.append(f"step {s.step}: bad step dropped potential by less than gamma^3")
        if self.bad_steps > 1 / g**3:
            problems.append(f"{self.bad_steps} bad steps > 1/gamma^3")
        if len(self.discarded) > self.n / 2:
            problems.append(f"|discarded|={len(self.discarded)} > n/2")
        covered = sorted([v for p in self.parts for v in p] + self.discarded)
        if covered != list(range(self.n)):
            problems.append("parts and discarded set do not partition V(H)")
        if self.part_graph.shape != (len(self.parts), len(self.parts)):
            problems.append("part cograph size differs from number of parts")
        return problems


@dataclass(frozen=True)
class EHResult:
    vertices: tuple[int, ...]
    kind: str  # "clique" | "independent"
    log: EHLog
    route: str  # "density-escape" | "partition"


def _homogeneous_from_density(H: Hypergraph3, U: tuple[int, ...], dense: bool) -> tuple[tuple[int, ...], str]:
    sub = H.induced(U)
    local = dense_clique(sub) if dense else sparse_independent_set(sub)
    return tuple(sorted(U[i] for i in local)), "clique" if dense else "independent"


def eh_find(
    H: Hypergraph3,
    C0=1,
    *,
    params: EHParams | None = None,
    floor: int | None = None,
    exact_threshold: int = 10,
    seed: int = 0,
) -> EHResult:
    """Homogeneous set (clique or independent) of an induced-D2-free 3-graph.

    ``params`` overrides the schedule (see :func:`engineering_parameters`).
    The returned set is re-verified by enumerating its triples, and the step
    log is checked against its invariants before return.
    """
    n = H.n
    if params is None:
        params = eh_parameters(max(n, 2), C0)
    floor = 1 if floor is None else floor
    if n < max(floor, 1):
        raise PreconditionError(f"n={n} below floor {floor}")
    log = EHLog(n, params, parts=[tuple(range(n))])
    if n < 3:
        log.notes["trivial"] = True
        return EHResult(tuple(range(n)), "clique", log, "trivial")
    beta = as_fraction(params.beta)
    gamma_n = params.gamma * n
    density_cache: dict[tuple[int, ...], Fraction] = {}

    def escape() -> EHResult | None:
        for U in log.parts:
            if len(U) < gamma_n or len(U) < 3:
                continue
            if U not in density_cache:
                density_cache[U] = density_hypergraph(H.induced(U))
            d = density_cache[U]
            if not beta <= d <= 1 - beta:
                verts, kind = _homogeneous_from_density(H, U, d > 1 - beta)
                log.notes["escape_part_size"] = len(U)
                log.notes["escape_density"] = d
                return EHResult(verts, kind, log, "density-escape")
        return None

    step = 0
    while step < params.t:
        found = escape()
        if found is not None:
            return _finish(H, found)
        big = [k for k, U in enumerate(log.parts) if len(U) > gamma_n]
        if not big:
            break
        k = max(big, key=lambda j: (len(log.parts[j]), -log.parts[j][0]))
        U = log.parts[k]
        if len(U) < 4 / beta:
            # too small for the link-density scan; stop refining
            log.notes["stopped_small"] = len(U)
            break
        try:
            split = partition_step(
                H, U, beta, params.C,
                xi=as_fraction(params.xi) if params.engineering or params.C is None else None,
                eps=as_fraction(params.eps) if params.engineering or params.C is None else None,
                floor=0, exact_threshold=exact_threshold, seed=seed,
            )
        except VerificationError:
            # no split of U meets the size bounds; keep U whole
            log.notes["stopped_unsplittable"] = len(U)
            break
        step += 1
        q_before = log.potential()
        parts = log.parts[:k] + log.parts[k + 1 :] + [split.X, split.Y]
        G = log.part_graph
        keep = [j for j in range(len(log.parts)) if j != k]
        row = G[k, keep]
        t_new = len(parts)
        NG = np.zeros((t_new, t_new), dtype=bool)
        NG[: t_new - 2, : t_new - 2] = G[np.ix_(keep, keep)]
        for col in (t_new - 2, t_new - 1):
            NG[: t_new - 2, col] = row
            NG[col, : t_new - 2] = row
        NG[t_new - 2, t_new - 1] = NG[t_new - 1, t_new - 2] = split.verdict is Verdict.DENSE
        log.parts, log.part_graph = parts, NG
        log.discarded.extend(split.S)
        q_after = log.potential()
        good = min(len(split.X), len(split.Y)) <= params.gamma * len(U)
        log.steps.append(
            StepRecord(step, len(U), len(split.X), len(split.Y), len(split.S), split.verdict.value, good, q_before, q_after)
        )
    found = escape()
    if found is not None:
        return _finish(H, found)

    # dyadic buckets over the small parts
    small = [k for k, U in enumerate(log.parts) if len(U) <= gamma_n]
    if not small:
        small = list(range(len(log.parts)))
    base = params.xi * params.gamma * n / 10
    buckets: dict[int, list[int]] = {}
    for k in small:
        i = math.floor(math.log2(len(log.parts[k]) / base)) if base > 0 else 0
        buckets.setdefault(i, []).append(k)
    bucket_i = min(buckets, key=lambda i: (-len(buckets[i]), i))
    chosen = buckets[bucket_i]
    log.notes["bucket"] = bucket_i
    log.notes["bucket_size"] = len(chosen)
    sub_graph = Graph.from_adjacency(log.part_graph[np.ix_(chosen, chosen)], check=False)
    tree = build_cotree(sub_graph)
    if not hasattr(tree, "kind"):
        raise VerificationError(f"part graph is not a cograph: induced P4 {tree.path}", log)
    hom = cotree_homogeneous_set(tree, sub_graph)
    V = tuple(sorted(v for a in hom.vertices for v in log.parts[chosen[a]]))
    dense = hom.kind == "clique"
    if len(V) >= 3:
        log.notes["union_density"] = density_hypergraph(H.induced(V))
    verts, kind = _homogeneous_from_density(H, V, dense) if len(V) >= 3 else (V, "clique" if dense else "independent")
    return _finish(H, EHResult(verts, kind, log, "partition"))


def _finish(H: Hypergraph3, res: EHResult) -> EHResult:
    if not is_homogeneous_set(H, res.vertices, res.kind):
        raise VerificationError(f"returned {res.kind} is not homogeneous", res.log)
    problems = res.log.check()
    if problems:
        raise VerificationError("; ".join(problems), res.log)
    return res


# --------------------------------------------------------------------------
# Exhaustive oracle


def _clique_table(adj: np.ndarray, n: int) -> np.ndarray:
    """``table[mask]`` true iff ``mask`` is a clique of the graph ``adj``."""
    nbr = np.array([sum(1 << j for j in np.flatnonzero(adj[i])) for i in range(n)], dtype=np.int64)
    table = np.ones(1 << n, dtype=bool)
    for i in range(n):
        lo, hi = 1 << i, 1 << (i + 1)
        rest = np.arange(0, lo, dtype=np.int64)
        table[lo:hi] = table[rest] & ((rest & ~nbr[i]) == 0)
    return table


def brute_force_homogeneous(H: Hypergraph3) -> tuple[tuple[int, ...], str]:
    """Largest vertex set spanning all or no triples (clique preferred on ties); ``n <= 16``."""
    n = H.n
    if n > 16:
        raise PreconditionError("brute-force homogeneous search is limited to n <= 16")
    if n == 0:
        return (), "clique"
    best = {}
    for kind, A in (("clique", H.adj), ("independent", ~H.adj)):
        good = np.ones(1 << n, dtype=bool)
        for v in range(n):
            link = np.array(A[v], copy=True)
            np.fill_diagonal(link, False)
            link[v, :] = link[:, v] = False
            table = _clique_table(link, n)
            lo, hi = 1 << v, 1 << (v + 1)
            rest = np.arange(0, lo, dtype=np.int64)
            good[lo:hi] = good[rest] & table[rest]
        masks = np.flatnonzero(good)
        sizes = np.bitwise_count(masks.astype(np.uint64))
        m = int(masks[np.argmax(sizes)])
        best[kind] = tuple(v for v in range(n) if m >> v & 1)
    if len(best["clique"]) >= len(best["independent"]):
        return best["clique"], "clique"
    return best["independent"], "independent"
