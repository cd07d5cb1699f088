import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from d2hyper.cograph import (
    Cotree,
    CographPartition,
    NodeKind,
    P4Witness,
    build_cotree,
    cograph_edit,
    cograph_partition,
    cotree_adjacency,
    cotree_homogeneous_set,
    cotree_leaves,
    cotree_of,
    min_cograph_edits_exact,
    validate_cotree,
    verify_cograph_partition,
    weighted_split,
)
from d2hyper.core import Graph
from d2hyper.count import count_induced_p4
from d2hyper.errors import NotACographError, PreconditionError

import oracles
from strategies import cographs, graphs, random_cograph

PATH4 = Graph(4, [(0, 1), (1, 2), (2, 3)])


def complete_graph(n):
    return Graph.from_adjacency(~np.eye(n, dtype=bool))


def test_path_gives_p4_witness():
    w = build_cotree(PATH4)
    assert isinstance(w, P4Witness)
    assert w.path == (0, 1, 2, 3) and w.verify(PATH4)
    with pytest.raises(NotACographError):
        cotree_of(PATH4)


def test_complete_graph_is_one_join():
    t = build_cotree(complete_graph(5))
    assert t.kind is NodeKind.JOIN and len(t.children) == 5


def test_four_cycle_is_cograph():
    C4 = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert oracles.naive_is_cograph(C4)
    t = build_cotree(C4)
    assert isinstance(t, Cotree)
    assert np.array_equal(cotree_adjacency(t, 4), C4.adj)


@given(graphs(min_n=1, max_n=9))
def test_recognition_agrees_with_p4_scan(G):
    t = build_cotree(G)
    if oracles.naive_is_cograph(G):
        assert isinstance(t, Cotree)
        validate_cotree(t, G)
        assert np.array_equal(cotree_adjacency(t, G.n), G.adj)
    else:
        assert isinstance(t, P4Witness) and t.verify(G)


@given(cographs())
def test_random_cotrees_round_trip(pair):
    G, tree = pair
    assert count_induced_p4(G) == 0
    rebuilt = cotree_of(G)
    assert sorted(cotree_leaves(rebuilt)) == list(range(G.n))
    assert np.array_equal(cotree_adjacency(rebuilt, G.n), G.adj)


def test_deep_cotree_does_not_recurse():
    G, _ = random_cograph(3000, 1, max_children=2)
    t = cotree_of(G)
    assert np.array_equal(cotree_adjacency(t, G.n), G.adj)


def test_homogeneous_set_trivial_cases():
    assert cotree_homogeneous_set(Cotree.join(*map(Cotree.leaf, range(6)))).vertices == tuple(range(6))
    hs = cotree_homogeneous_set(Cotree.union(*map(Cotree.leaf, range(6))))
    assert hs.kind == "independent" and len(hs.vertices) == 6


@given(cographs(max_n=14))
def test_homogeneous_set_is_maximum(pair):
    G, tree = pair
    hs = cotree_homogeneous_set(tree, G)
    assert len(hs.vertices) == oracles.naive_graph_homogeneous(G)
    assert len(hs.vertices) >= math.isqrt(G.n - 1) + 1


@given(cographs())
def test_homogeneous_set_at_least_sqrt(pair):
    G, tree = pair
    hs = cotree_homogeneous_set(tree, G)
    assert len(hs.vertices) ** 2 >= G.n


def test_edit_of_cograph_is_empty():
    G, _ = random_cograph(30, 4)
    assert cograph_edit(G).size == 0


def test_single_p4_needs_one_edit():
    assert min_cograph_edits_exact(PATH4) == 1
    assert oracles.naive_min_cograph_edits(PATH4) == 1


def test_five_cycle_matches_exhaustive():
    C5 = Graph(5, [(i, (i + 1) % 5) for i in range(5)])
    assert min_cograph_edits_exact(C5) == oracles.naive_min_cograph_edits(C5)


@given(graphs(min_n=1, max_n=5))
def test_exact_edit_is_optimal(G):
    res = cograph_edit(G, exact_threshold=G.n)
    assert res.exact
    assert res.size == oracles.naive_min_cograph_edits(G)
    assert count_induced_p4(res.graph) == 0


@given(graphs(min_n=1, max_n=30))
def test_heuristic_edit_yields_cograph(G):
    res = cograph_edit(G, exact_threshold=6)
    assert count_induced_p4(res.graph) == 0
    diff = res.graph.adj ^ G.adj
    assert int(diff.sum()) // 2 == res.size
    assert np.array_equal(cotree_adjacency(res.cotree, G.n), res.graph.adj)


def test_partition_base_case():
    G = Graph(2, [(0, 1)])
    P = cograph_partition(G, 1, Fraction(1, 4))
    assert verify_cograph_partition(G, P, 1, Fraction(1, 4)).ok


def test_partition_complete_graph():
    G = complete_graph(20)
    P = cograph_partition(G, 5, Fraction(1, 4))
    assert verify_cograph_partition(G, P, 5, Fraction(1, 4)).ok


def test_partition_random_500():
    G, tree = random_cograph(500, 9)
    P = cograph_partition(G, 40, Fraction(1, 10), tree)
    assert verify_cograph_partition(G, P, 40, Fraction(1, 10)).ok


def test_verifier_flags_oversized_part():
    G = complete_graph(6)
    P = CographPartition((), ((0, 1, 2, 3), (4, 5)), (), {})
    report = verify_cograph_partition(G, P, 3, Fraction(1, 3))
    assert not report.ok
    assert any("2" in f for f in report.failures)


def test_verifier_accepts_equal_parts():
    G = complete_graph(6)
    P = CographPartition((), ((0, 1, 2), (3, 4, 5)), (), {})
    assert verify_cograph_partition(G, P, 3, Fraction(1, 3)).ok


@pytest.mark.parametrize("m, beta", [(0, Fraction(1, 2)), (10, Fraction(1, 2)), (3, Fraction(0)), (3, Fraction(1))])
def test_partition_preconditions(m, beta):
    G = complete_graph(10)
    with pytest.raises(PreconditionError):
        cograph_partition(G, m, beta)


@given(cographs(min_n=2, max_n=60), st.data())
def test_partition_postconditions(pair, data):
    G, tree = pair
    m = data.draw(st.integers(1, G.n - 1))
    beta = Fraction(data.draw(st.integers(1, 99)), 100)
    P = cograph_partition(G, m, beta, tree)
    report = verify_cograph_partition(G, P, m, beta)
    assert report.ok, report.failures


def test_weighted_split_k2():
    ws = weighted_split(Graph(2, [(0, 1)]), [Fraction(1, 2)] * 2, Fraction(1, 3))
    assert {ws.I, ws.J} == {(0,), (1,)} and ws.L == () and ws.bipartite_kind == "complete"


def test_weighted_split_three_leaves():
    ws = weighted_split(Graph(3), [Fraction(1, 3)] * 3, Fraction(1, 3))
    assert ws.bipartite_kind == "empty"


@given(cographs(min_n=2, max_n=50), st.data())
def test_weighted_split_postconditions(pair, data):
    G, tree = pair
    raw = data.draw(st.lists(st.integers(1, 20), min_size=G.n, max_size=G.n))
    total = sum(raw)
    w = [Fraction(x, total) for x in raw]
    beta = Fraction(data.draw(st.integers(1, 33)), 100)
    if max(w) > 1 - beta:
        with pytest.raises(PreconditionError):
            weighted_split(G, w, beta, tree)
        return
    ws = weighted_split(G, w, beta, tree)
    wsum = lambda s: sum((w[v] for v in s), Fraction(0))
    assert wsum(ws.I) >= beta / 2 and wsum(ws.J) >= beta / 2 and wsum(ws.L) < beta
    assert sorted(ws.I + ws.J + ws.L) == list(range(G.n))
    block = G.adj[np.ix_(ws.I, ws.J)]
    assert block.all() if ws.bipartite_kind == "complete" else not block.any()


def test_weighted_split_rejects_heavy_vertex():
    with pytest.raises(PreconditionError, match="vertex 0"):
        weighted_split(Graph(2), [Fraction(9, 10), Fraction(1, 10)], Fraction(1, 3))
