from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from d2hyper.core import (
    Graph,
    Hypergraph3,
    Verdict,
    as_vertex_set,
    density_hypergraph,
    density_pair_xxy,
    density_triple,
    graph_density,
    graph_density_pair,
    homogeneity_verdict,
    link_graph,
    split_verdict,
)
from d2hyper.errors import PreconditionError

from strategies import graphs, hypergraphs


def test_edges_are_canonical_and_symmetric():
    H = Hypergraph3(5, [(2, 1, 0), (4, 3, 1)])
    assert H.edges == [(0, 1, 2), (1, 3, 4)]
    A = H.adj
    for a, b, c in [(0, 1, 2), (2, 0, 1), (1, 2, 0)]:
        assert A[a, b, c]
    assert H.num_edges == 2


@pytest.mark.parametrize("bad", [[(0, 0, 1)], [(0, 1, 5)], [(-1, 1, 2)]])
def test_rejects_malformed_edges(bad):
    with pytest.raises(PreconditionError):
        Hypergraph3(5, bad)


def test_from_adjacency_checks_symmetry():
    adj = np.zeros((4, 4, 4), dtype=bool)
    adj[0, 1, 2] = True
    with pytest.raises(PreconditionError):
        Hypergraph3.from_adjacency(adj)


def test_complete_density_is_one():
    assert density_hypergraph(Hypergraph3.complete(7)) == 1
    assert density_hypergraph(Hypergraph3(7)) == 0


def test_vertex_sets_must_increase():
    assert as_vertex_set([1, 2, 3]) == (1, 2, 3)
    for bad in ([3, 1, 2], [1, 1]):
        with pytest.raises(PreconditionError):
            as_vertex_set(bad)


def test_pair_density_on_small_example():
    H = Hypergraph3(4, [(0, 1, 2)])
    assert density_pair_xxy(H, (0, 1), (2, 3)) == Fraction(1, 2)
    assert density_triple(H, (0,), (1,), (2, 3)) == Fraction(1, 2)


def test_link_graph_isolates_vertex():
    H = Hypergraph3(5, [(0, 1, 2), (0, 3, 4), (1, 2, 3)])
    L = link_graph(H, 0)
    assert L.n == 5
    assert sorted(L.edges) == [(1, 2), (3, 4)]
    assert not L.adj[0].any()


def test_homogeneity_verdict_kinds():
    n = 6
    X, Y = (0, 1, 2), (3, 4, 5)
    assert homogeneity_verdict(Hypergraph3.complete(n), X, Y, 0).kind is Verdict.DENSE
    assert homogeneity_verdict(Hypergraph3(n), X, Y, 0).kind is Verdict.SPARSE
    H = Hypergraph3(n, [(0, 1, 3)])
    assert homogeneity_verdict(H, X, Y, Fraction(1, 8)).kind is Verdict.SPARSE
    assert homogeneity_verdict(H, X, Y, 0).kind is Verdict.NEITHER


def test_homogeneity_rejects_singletons_but_split_allows():
    H = Hypergraph3.complete(4)
    with pytest.raises(PreconditionError):
        homogeneity_verdict(H, (0,), (1, 2, 3), 0)
    v = split_verdict(H, (0,), (1, 2, 3), 0)
    assert v.kind is Verdict.DENSE and v.dxxy is None


@given(hypergraphs(min_n=3))
def test_complement_flips_density(H):
    assert density_hypergraph(H) + density_hypergraph(H.complement()) == 1
    assert H.complement().complement() == H


@given(hypergraphs(min_n=3), st.data())
def test_induced_matches_adjacency(H, data):
    k = data.draw(st.integers(0, H.n))
    idx = sorted(data.draw(st.sets(st.integers(0, H.n - 1), min_size=k, max_size=k)))
    sub = H.induced(idx)
    assert np.array_equal(sub.adj, H.adj[np.ix_(idx, idx, idx)])


@given(hypergraphs(min_n=3))
def test_degrees_sum_to_three_times_edges(H):
    assert int(H.degrees.sum()) == 3 * H.num_edges
    assert int(H.codegrees.sum()) == 3 * H.num_edges * 2


@given(hypergraphs(min_n=4), st.data())
def test_pair_densities_in_unit_interval(H, data):
    cut = data.draw(st.integers(2, H.n - 2))
    X, Y = tuple(range(cut)), tuple(range(cut, H.n))
    d = density_pair_xxy(H, X, Y)
    assert 0 <= d <= 1
    expected = sum(H.adj[a, b, y] for i, a in enumerate(X) for b in X[i + 1 :] for y in Y)
    assert d == Fraction(int(expected), comb(len(X), 2) * len(Y))


@given(graphs(min_n=2))
def test_graph_densities(G):
    assert 0 <= graph_density(G) <= 1
    assert graph_density(G) + graph_density(G.complement()) == 1
    X, Y = (0,), tuple(range(1, G.n))
    assert graph_density_pair(G, X, Y) == Fraction(int(G.adj[0, 1:].sum()), G.n - 1)


def test_with_edits_roundtrip():
    H = Hypergraph3(5, [(0, 1, 2)])
    H2 = H.with_edits(np.array([[1, 2, 3]]), np.array([[0, 1, 2]]))
    assert H2.edges == [(1, 2, 3)]


def test_graph_rejects_loops():
    with pytest.raises(PreconditionError):
        Graph(3, [(1, 1)])
