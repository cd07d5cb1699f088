import csv
import io
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from d2hyper.core import Hypergraph3, density_hypergraph, split_verdict
from d2hyper.eh import (
    brute_force_homogeneous,
    dense_clique,
    eh_find,
    eh_parameters,
    engineering_parameters,
    independent_set_bound,
    is_homogeneous_set,
    link_density_scan,
    partition_step,
)
from d2hyper.eh import sparse_independent_set
from d2hyper.errors import DensityEscape, PreconditionError
from d2hyper.generators import gen_planted_cohypergraph, gen_random_h3, random_split_spec

import oracles
from strategies import hypergraphs

ENG = dict(gamma=0.25, beta=0.125, xi=1 / 16, eps=0.05)


def test_params_at_two_to_the_hundred():
    p = eh_parameters(2**100, 1)
    assert p.eta == pytest.approx(0.5, rel=1e-12)
    assert p.gamma == pytest.approx(1 / 32, rel=1e-12)


@pytest.mark.parametrize("n", [10, 1000, 2**40, 2**100])
def test_param_identities(n):
    p = eh_parameters(n, 1)
    assert p.xi == pytest.approx(1 / (2 * p.t), rel=1e-12)
    assert p.beta**2 == pytest.approx(16 * p.xi, rel=1e-12)
    assert p.xi == pytest.approx(p.gamma**3 / 4, rel=1e-12)
    assert p.eps == pytest.approx((p.xi / 10) ** 3 * p.gamma**4 / 2, rel=1e-12)


def test_eta_decreases_in_n():
    etas = [eh_parameters(n, 1).eta for n in (10, 100, 10**4, 10**8)]
    assert etas == sorted(etas, reverse=True)


@pytest.mark.parametrize("k, C0", [(1000, 1), (3000, 1), (3000, 2), (10**4, 1)])
def test_c_makes_both_eps_agree(k, C0):
    n = 2**k
    p = eh_parameters(n, C0)
    assert p.C is not None and C0 < p.C < 10 * C0
    # compare in logs: the values themselves underflow
    lhs = -math.log(p.xi) + (math.log(p.C) - math.log(p.gamma) - math.log(n)) / p.C
    log_eps = 3 * (math.log(p.xi) - math.log(10)) + 4 * math.log(p.gamma) - math.log(2)
    assert lhs == pytest.approx(log_eps, rel=1e-9)


def test_c_absent_at_desk_scale():
    assert eh_parameters(1000, 1).C is None


def test_params_preconditions():
    with pytest.raises(PreconditionError):
        eh_parameters(1, 1)
    with pytest.raises(PreconditionError):
        eh_parameters(10, 0.5)


def test_link_scan_on_random():
    H = gen_random_h3(40, 0.5, 1)
    v = link_density_scan(H, Fraction(1, 4))
    lo = Fraction(1, 256)
    d = Fraction(int(H.degrees[v]), math.comb(39, 2))
    assert lo <= d <= 1 - lo
    assert all(not lo <= Fraction(int(H.degrees[u]), math.comb(39, 2)) <= 1 - lo for u in range(v))


@pytest.mark.parametrize("H", [Hypergraph3.complete(20), Hypergraph3(20)])
def test_link_scan_density_escape(H):
    with pytest.raises(DensityEscape) as info:
        link_density_scan(H, Fraction(1, 4))
    assert info.value.density in (0, 1)


def test_link_scan_too_small():
    with pytest.raises(PreconditionError):
        link_density_scan(gen_random_h3(10, 0.5, 0), Fraction(1, 4))


def test_partition_step_on_planted_block():
    H = gen_planted_cohypergraph(random_split_spec(120, 5, 4, min_leaf=10), "complete", 4)
    U = tuple(range(0, 120, 1))
    step = partition_step(H, U, Fraction(1, 8), xi=Fraction(1, 16), eps=Fraction(1, 20))
    assert sorted(step.X + step.Y + step.S) == list(U)
    assert min(len(step.X), len(step.Y)) >= len(U) / 160
    assert len(step.S) <= len(U) / 32
    assert split_verdict(H.induced(U), [U.index(x) for x in step.X], [U.index(y) for y in step.Y], Fraction(1, 20)).homogeneous


def test_partition_step_escape_and_small():
    with pytest.raises(DensityEscape):
        partition_step(Hypergraph3(60), range(60), Fraction(1, 8), xi=Fraction(1, 16), eps=Fraction(1, 20))
    with pytest.raises(PreconditionError):
        partition_step(Hypergraph3(60), range(20), Fraction(1, 8), xi=Fraction(1, 16), eps=Fraction(1, 20))


def test_partition_step_default_eps_is_vacuous_at_small_n():
    H = gen_random_h3(60, 0.5, 0)
    with pytest.raises(PreconditionError, match="override"):
        partition_step(H, range(60), Fraction(1, 8), C=2.0)


def test_sparse_examples():
    assert sparse_independent_set(Hypergraph3(7)) == tuple(range(7))
    assert len(sparse_independent_set(Hypergraph3(3, [(0, 1, 2)]))) == 2
    H = gen_random_h3(60, 0.5, 2)
    s = sparse_independent_set(H)
    assert oracles.naive_is_independent(H, s)
    assert len(s) >= min(30, math.sqrt(1.5))


@given(hypergraphs(min_n=0, max_n=30))
def test_sparse_bound_every_run(H):
    s = sparse_independent_set(H)
    assert oracles.naive_is_independent(H, s)
    if H.n >= 3:
        bound = independent_set_bound(H.n, density_hypergraph(H))
        assert len(s) >= math.ceil(float(bound) - 1e-9)


@given(hypergraphs(min_n=3, max_n=25))
def test_dense_clique_is_clique(H):
    c = dense_clique(H)
    assert oracles.naive_is_clique(H, c)
    d = density_hypergraph(H)
    bound = independent_set_bound(H.n, 1 - d)
    assert len(c) >= math.ceil(float(bound) - 1e-9)


def test_bound_function():
    assert independent_set_bound(10, 0) == 5
    assert independent_set_bound(100, Fraction(3, 4)) == pytest.approx(1.0)


@given(hypergraphs(min_n=0, max_n=9))
def test_brute_force_matches_naive(H):
    s, kind = brute_force_homogeneous(H)
    assert len(s) == oracles.naive_max_homogeneous(H)
    assert is_homogeneous_set(H, s, kind)


def test_brute_force_limit():
    with pytest.raises(PreconditionError):
        brute_force_homogeneous(Hypergraph3(17))


def test_eh_find_complete_and_empty():
    r = eh_find(Hypergraph3.complete(12), params=engineering_parameters(12, **ENG))
    assert r.kind == "clique" and r.vertices == tuple(range(12))
    r = eh_find(Hypergraph3(12), params=engineering_parameters(12, **ENG))
    assert r.kind == "independent" and len(r.vertices) == 12


@settings(max_examples=12)
@given(st.integers(40, 200), st.integers(0, 10**6), st.sampled_from(["empty", "complete"]), st.sampled_from([0.05, 0.125]))
def test_eh_find_invariants(n, seed, fill, beta):
    H = gen_planted_cohypergraph(random_split_spec(n, 8, seed, min_leaf=2), fill, seed)
    params = engineering_parameters(n, **{**ENG, "beta": beta})
    r = eh_find(H, params=params, seed=seed)
    assert is_homogeneous_set(H, r.vertices, r.kind)
    assert r.log.check() == []
    qs = [s.q_before for s in r.log.steps]
    assert qs == sorted(qs, reverse=True)
    assert r.log.bad_steps <= 1 / params.gamma**3
    assert len(r.log.discarded) <= n / 2


def test_step_log_csv():
    n = 250
    H = gen_planted_cohypergraph(random_split_spec(n, 8, 6, min_leaf=2), "complete", 6)
    r = eh_find(H, params=engineering_parameters(n, **{**ENG, "beta": 0.05}))
    rows = list(csv.reader(io.StringIO(r.log.to_csv())))
    assert rows[0] == ["step", "part_size", "x_size", "y_size", "s_size", "verdict", "good_or_bad"]
    assert len(rows) == len(r.log.steps) + 1
    for row in rows[1:]:
        assert row[5] in ("dense", "sparse") and row[6] in ("good", "bad")


def test_eh_find_partition_route_reached():
    routes = set()
    for seed in range(6):
        n = 250
        H = gen_planted_cohypergraph(random_split_spec(n, 8, seed, min_leaf=2), "complete" if seed % 2 == 0 else "empty", seed)
        routes.add(eh_find(H, params=engineering_parameters(n, **{**ENG, "beta": 0.05})).route)
    assert "partition" in routes


def test_engineering_defaults_keep_discard_bound():
    p = engineering_parameters(100, gamma=0.25)
    assert p.t * p.xi <= 0.5
    with pytest.raises(PreconditionError):
        engineering_parameters(100, gamma=1.5)
