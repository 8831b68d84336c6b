from fractions import Fraction as Fr
from itertools import combinations

import pytest

from nestofan.affine import (
    AffineInput,
    building_set_indices,
    inflated_fan,
    inflated_hypergraph,
    tdn_blowup_fan,
    torus_invariant,
    verify_theorem_tdn,
    weights_lm_t,
    weights_p_t,
)
from nestofan.fan import f_vector, fan_of_hypergraph, fans_equal, simplex_fan
from nestofan.hassett import HassettInput, HypothesisError, blowup_sequence_fan, hassett_hypergraph, weights_lm, weights_p
from nestofan.hypergraph import hypergraph_on, inflate
from nestofan.weights import COARSE, FINE, TDN, DomainError, OnWallError, WeightData, plus, signature


def T(*vals):
    return WeightData(tuple(Fr(v) for v in vals), TDN)


def power_set(m):
    return hypergraph_on(m, [c for k in range(1, m + 1) for c in combinations(range(1, m + 1), k)])


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_plus_maps_representatives(n):
    assert plus(weights_lm_t(n)) == weights_lm(n + 1)
    assert plus(weights_p_t(n)) == weights_p(n + 1)
    assert signature(plus(weights_lm_t(n)), COARSE) == signature(weights_lm(n + 1), COARSE)


def test_lm_t3_signature():
    sig = signature(weights_lm_t(3), FINE)
    assert sig.positive == {frozenset({1, 3}), frozenset({2, 3})}


def test_representatives_need_n3():
    with pytest.raises(DomainError):
        weights_lm_t(2)


def test_building_set_examples():
    assert building_set_indices(T(1, 1, 1)) == {frozenset({1, 2}), frozenset({1, 3}), frozenset({2, 3})}
    half = T(Fr(1, 2), Fr(1, 2), 1)
    assert building_set_indices(half, strict=False) == {frozenset({1, 3}), frozenset({2, 3})}
    with pytest.raises(OnWallError):
        building_set_indices(half)


def test_torus_invariant():
    assert torus_invariant({1, 3}, 3)
    assert not torus_invariant({1, 2}, 3)


def test_t23_example():
    inp = AffineInput.from_weights(2, weights_lm_t(3))
    assert building_set_indices(inp.A) == {frozenset({1, 3}), frozenset({2, 3})}
    F = tdn_blowup_fan(inp)
    assert (len(F.rays), len(F.max_cones)) == (6, 8)
    assert fans_equal(F, inflated_fan(inp))


def test_t23_inflated_hypergraph_is_inflated_k2():
    inp = AffineInput.from_weights(2, weights_lm_t(3))
    assert set(hassett_hypergraph(plus(inp.A)).hyperedges) == {frozenset({1}), frozenset({2}), frozenset({1, 2})}
    assert inflated_hypergraph(inp) == inflate(power_set(2), 2)


@pytest.mark.parametrize("d,n", [(1, 3), (2, 3), (3, 3), (2, 4), (1, 5)])
def test_projective_chamber_gives_simplex(d, n):
    inp = AffineInput.from_weights(d, weights_p_t(n))
    assert building_set_indices(inp.A) == set()
    assert fans_equal(tdn_blowup_fan(inp), simplex_fan(d * (n - 1)))
    assert fans_equal(inflated_fan(inp), simplex_fan(d * (n - 1)))


def test_d2_n4_is_inflated_permutohedron():
    inp = AffineInput.from_weights(2, weights_lm_t(4))
    assert verify_theorem_tdn(inp)["pass"]
    assert fans_equal(tdn_blowup_fan(inp), fan_of_hypergraph(inflate(power_set(3), 2)))


def test_d1_inflation_is_trivial():
    inp = AffineInput.from_weights(1, weights_lm_t(4))
    assert fans_equal(inflated_fan(inp), fan_of_hypergraph(hassett_hypergraph(plus(inp.A))))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_d1_bridge_extremes(n):
    for A in (weights_lm_t(n), weights_p_t(n)):
        inp = AffineInput.from_weights(1, A)
        assert fans_equal(tdn_blowup_fan(inp), blowup_sequence_fan(HassettInput.from_weights(plus(A))))


def test_report_shape():
    report = verify_theorem_tdn(AffineInput.from_weights(3, weights_lm_t(3)))
    assert report["pass"] and report["d"] == 3
    assert report["building_set"] == [[1, 3], [2, 3]]
    assert f_vector(tdn_blowup_fan(AffineInput.from_weights(3, weights_lm_t(3))))[-1] == len(report["fan"]["max_cones"])


def test_hypothesis_violations():
    with pytest.raises(HypothesisError):
        AffineInput.from_weights(2, T(Fr(3, 5), Fr(3, 5), Fr(1, 3)))  # a_1 + a_2 > 1
    with pytest.raises(HypothesisError):
        AffineInput.from_weights(2, T(Fr(2, 5), Fr(2, 5), Fr(2, 5), Fr(2, 5)))  # {1,2,3} is in G_A
    with pytest.raises(HypothesisError):
        AffineInput.from_weights(0, weights_lm_t(3))
    with pytest.raises(HypothesisError):
        AffineInput.from_weights(2, weights_lm(5))


def test_inflated_blocks_divisible_by_d():
    for d in (2, 3):
        H = inflated_hypergraph(AffineInput.from_weights(d, weights_lm_t(4)))
        assert all(len(e) % d == 0 for e in H.hyperedges if len(e) > 1)
