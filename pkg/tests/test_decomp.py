from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from d2hyper.core import Hypergraph3, Verdict, density_triple, split_verdict
from d2hyper.count import is_d2
from d2hyper.decomp import (
    CertificateOutcome,
    certify_link_pair,
    certify_triple,
    default_floor,
    derive_main_params,
    exact_homogeneous_split,
    main_partition,
    vertex_split,
)
from d2hyper.errors import HypothesisViolation, PreconditionError, WitnessFound
from d2hyper.generators import (
    PlantedSplit,
    gen_noisy,
    gen_planted_cohypergraph,
    gen_random_h3,
    random_split_spec,
)

from strategies import link_pair_instance, triple_instance

EPS = Fraction(1, 4)


def test_params_are_exact_rationals():
    p = derive_main_params(Fraction(1, 2), Fraction(1, 2))
    assert p.alpha == Fraction(1, 4) ** 1 * Fraction(1, 2) / 800
    assert p.beta == Fraction(1, 480)
    assert p.gamma == Fraction(1, 128)
    assert default_floor(Fraction(1, 2), Fraction(1, 2)) == 9600


def test_triple_complete_and_empty():
    H = Hypergraph3.complete(12)
    X, Y, Z = tuple(range(8)), (8, 9), (10, 11)
    cert = certify_triple(H, X, Y, Z, EPS, True)
    assert cert.outcome is CertificateOutcome.DENSITY_BOUND and cert.bound == 1
    cert = certify_triple(Hypergraph3(12), X, Y, Z, EPS, False)
    assert cert.bound == 0


def test_triple_hypothesis_violation_reports_densities():
    H = Hypergraph3(12)
    with pytest.raises(HypothesisViolation) as info:
        certify_triple(H, tuple(range(8)), (8, 9), (10, 11), EPS, True)
    assert "d(X,X,Y)" in info.value.measured


def test_triple_requires_large_x():
    with pytest.raises(HypothesisViolation):
        certify_triple(Hypergraph3.complete(6), (0, 1), (2, 3), (4, 5), EPS, True)


@given(st.integers(8, 12), st.integers(1, 4), st.integers(1, 4), st.integers(0, 10**6), st.booleans())
def test_triple_violation_yields_verified_witnesses(nx, ny, nz, seed, dense):
    H, X, Y, Z = triple_instance((nx, ny, nz), seed, violate=True, dense_side=dense)
    cert = certify_triple(H, X, Y, Z, EPS, dense, seed=seed)
    assert cert.outcome is CertificateOutcome.WITNESS_BATCH
    assert cert.witnesses and all(w.verify(H) for w in cert.witnesses)


@given(st.integers(8, 12), st.integers(1, 4), st.integers(1, 4), st.integers(0, 10**6))
def test_triple_satisfied_gives_density_bound(nx, ny, nz, seed):
    H, X, Y, Z = triple_instance((nx, ny, nz), seed, violate=False)
    cert = certify_triple(H, X, Y, Z, EPS, True, seed=seed)
    assert cert.outcome is CertificateOutcome.DENSITY_BOUND
    assert cert.bound == density_triple(H, X, Y, Z) >= 1 - EPS


GAMMA = Fraction(1, 2)


@given(st.integers(4, 7), st.integers(4, 7), st.integers(1, 4), st.integers(0, 10**6), st.booleans())
def test_link_pair_satisfied(nx, ny, nz, seed, dense):
    H, v, X, Y, Z = link_pair_instance((nx, ny, nz), seed, violate=False, dense=dense)
    cert = certify_link_pair(H, v, X, Y, Z, GAMMA, seed=seed)
    assert cert.outcome is CertificateOutcome.DENSITY_BOUND


@given(st.integers(4, 7), st.integers(4, 7), st.integers(1, 4), st.integers(0, 10**6), st.booleans())
def test_link_pair_violation(nx, ny, nz, seed, dense):
    H, v, X, Y, Z = link_pair_instance((nx, ny, nz), seed, violate=True, dense=dense)
    cert = certify_link_pair(H, v, X, Y, Z, GAMMA, seed=seed)
    assert cert.outcome is CertificateOutcome.WITNESS_BATCH
    assert all(is_d2(H, w.four) for w in cert.witnesses)


def test_link_pair_names_failed_inequality():
    H, v, X, Y, Z = link_pair_instance((5, 5, 3), 0, violate=False)
    with pytest.raises(HypothesisViolation, match="d_L\\(X,Z\\)"):
        certify_link_pair(H, v, Y, X, Z, GAMMA)


def test_link_pair_rejects_overlap():
    H, v, X, Y, Z = link_pair_instance((5, 5, 3), 0, violate=False)
    with pytest.raises(PreconditionError):
        certify_link_pair(H, v, X, X, Z, GAMMA)


@given(st.integers(2, 40), st.integers(0, 4), st.integers(0, 10**6), st.sampled_from(["empty", "complete"]))
def test_exact_split_on_planted(n, depth, seed, fill):
    H = gen_planted_cohypergraph(random_split_spec(n, depth, seed), fill, seed)
    split = exact_homogeneous_split(H)
    assert split is not None
    X, Y, kind = split
    assert sorted(X + Y) == list(range(n))
    verdict = split_verdict(H, X, Y, 0)
    assert verdict.homogeneous
    if n >= 3:
        assert verdict.kind is kind


def test_exact_split_none_on_random():
    assert exact_homogeneous_split(gen_random_h3(30, 0.5, 3)) is None


def two_blocks(n, seed):
    spec = PlantedSplit(Verdict.SPARSE, n // 2, n - n // 2)
    return gen_planted_cohypergraph(spec, "complete", seed)


def test_main_partition_on_two_blocks():
    H = two_blocks(60, 1)
    xi, eps = Fraction(1, 8), Fraction(1, 10)
    res = main_partition(H, 0, xi, eps, floor=1)
    assert res.verdict.kind in (Verdict.DENSE, Verdict.SPARSE)
    assert sorted(res.X + res.Y + res.S) == list(range(60))
    assert min(len(res.X), len(res.Y)) >= xi * 60 / 10
    assert 0 in res.S


def test_main_partition_rejects_extreme_link():
    with pytest.raises(PreconditionError):
        main_partition(Hypergraph3.complete(20), 0, Fraction(1, 8), Fraction(1, 10), floor=1)


def test_main_partition_random_disjunction():
    H = gen_random_h3(200, 0.5, 5)
    res = main_partition(H, 0, Fraction(1, 8), Fraction(1, 10), floor=1)
    if res.verdict.kind is Verdict.NEITHER:
        assert res.witnesses and all(w.verify(H) for w in res.witnesses)
    else:
        assert res.verdict.homogeneous


def test_main_partition_floor():
    with pytest.raises(PreconditionError):
        main_partition(two_blocks(30, 0), 0, Fraction(1, 8), Fraction(1, 10))


@pytest.mark.parametrize("rate", [0, 0.002, 0.01])
def test_main_partition_noisy_planted(rate):
    H0 = gen_planted_cohypergraph(random_split_spec(120, 4, 3, min_leaf=12), "complete", 3)
    H = gen_noisy(H0, rate, 3)
    xi, eps = Fraction(1, 8), Fraction(1, 5)
    for v in range(H.n):
        try:
            res = main_partition(H, v, xi, eps, floor=1)
            break
        except HypothesisViolation:
            continue
    else:
        pytest.skip("no vertex with a balanced link")
    if res.verdict.homogeneous:
        assert split_verdict(H, res.X, res.Y, eps).kind is res.verdict.kind
    else:
        assert res.witnesses


def test_vertex_split_empty():
    res = vertex_split(Hypergraph3(10), Fraction(1, 10), floor=1)
    assert len(res.X) >= 1 and res.verdict.kind is Verdict.SPARSE


def test_vertex_split_degree_shortcut():
    H = Hypergraph3(12, [(0, 1, 2), (3, 4, 5), (6, 7, 8), (0, 4, 9), (2, 6, 10), (1, 8, 11), (5, 7, 11)])
    res = vertex_split(H, Fraction(1, 2), floor=1)
    assert res.verdict.homogeneous
    assert split_verdict(H, res.X, res.Y, Fraction(1, 2)).homogeneous


@settings(max_examples=15)
@given(st.integers(20, 80), st.integers(0, 10**6), st.sampled_from([0.002, 0.01]))
def test_vertex_split_disjunction(n, seed, rate):
    H = gen_noisy(gen_planted_cohypergraph(random_split_spec(n, 3, seed, min_leaf=5), "complete", seed), rate, seed)
    eps = Fraction(1, 5)
    try:
        res = vertex_split(H, eps, floor=1, seed=seed)
    except WitnessFound as exc:
        assert exc.witnesses and all(w.verify(H) for w in exc.witnesses)
        return
    assert res.X and res.Y and sorted(res.X + res.Y) == list(range(n))
    assert split_verdict(H, res.X, res.Y, eps).homogeneous


def test_vertex_split_floor():
    with pytest.raises(PreconditionError):
        vertex_split(Hypergraph3(10), Fraction(1, 10))
