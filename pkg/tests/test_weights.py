import random
from fractions import Fraction as Fr
from itertools import combinations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from nestofan.fan import is_valid_blowup_order
from nestofan.hassett import weights_lm, weights_p
from nestofan.weights import (
    COARSE,
    FINE,
    M0N,
    TDN,
    ChamberSignature,
    DomainError,
    NonGenericError,
    OnWallError,
    WeightData,
    _geq_witness_signatures,
    crossing_path,
    feasible_signature,
    generic_pair,
    geq_c,
    geq_c_witness,
    in_domain,
    is_off_walls,
    perturb_point,
    plus,
    signature,
    wall_family,
)


def W(*vals, flavor=M0N):
    return WeightData(tuple(Fr(v) for v in vals), flavor)


def sets(*xs):
    return {frozenset(x) for x in xs}


def test_in_domain_examples():
    assert in_domain([Fr(1, 3)] * 3 + [1, 1], M0N)
    assert not in_domain([Fr(1, 2)] * 3 + [Fr(2, 5), Fr(1, 10)], M0N)
    assert in_domain([Fr(1, 2), Fr(1, 2), 1], TDN)
    assert not in_domain([0, 1, 1, 1], M0N)
    assert not in_domain([Fr(3, 2), 1, 1], M0N)


def test_weight_data_validation():
    with pytest.raises(DomainError):
        W(Fr(1, 2), Fr(1, 2), Fr(1, 2), Fr(2, 5), Fr(1, 10))
    with pytest.raises(ValueError):
        WeightData(("0.5", "1", "1", "1"))
    A = WeightData(("1/2", "1", "1", "1"))
    assert A.values[0] == Fr(1, 2)
    assert WeightData.from_json(A.to_json()) == A


def test_wall_families():
    assert len(wall_family(5, FINE)) == 10 + 10
    assert len(wall_family(5, COARSE)) == 10
    assert wall_family(4, COARSE) == []
    assert all(2 <= len(I) <= 3 for I in wall_family(4, FINE, TDN))


def test_signature_all_positive():
    sig = signature(W(1, 1, 1, 1, 1), FINE)
    assert sig.positive == set(wall_family(5, FINE))


def test_signature_on_wall():
    with pytest.raises(OnWallError) as exc:
        signature(W(Fr(1, 2), Fr(3, 10), Fr(3, 10), Fr(1, 2), 1), FINE)
    assert exc.value.wall == frozenset({1, 4})


def test_signature_near_projective_point():
    # (1/5,3/10,3/10,3/10,1) touches no fine wall: every a_I, |I| in {2,3}, differs from 1
    assert is_off_walls(W(Fr(1, 5), Fr(3, 10), Fr(3, 10), Fr(3, 10), 1), FINE)
    sig = signature(W(Fr(21, 100), Fr(3, 10), Fr(3, 10), Fr(3, 10), 1), COARSE)
    assert sig.positive == {frozenset(c) | {5} for c in combinations(range(1, 5), 2)}


def test_feasible_signature_examples():
    assert feasible_signature(5, M0N, sets({1, 2}), FINE) is None
    pos = {frozenset(c) | {5} for c in combinations(range(1, 5), 2)}
    A = feasible_signature(5, M0N, pos, COARSE)
    assert signature(A, COARSE).positive == pos
    A = feasible_signature(5, M0N, wall_family(5, FINE), FINE)
    assert signature(A, FINE).positive == set(wall_family(5, FINE))


def test_feasible_signature_rejects_non_walls():
    with pytest.raises(ValueError):
        feasible_signature(5, M0N, sets({1, 2}), COARSE)


def test_geq_c_examples():
    for n in (5, 6, 7):
        assert geq_c(weights_lm(n), weights_p(n))
        assert not geq_c(weights_p(n), weights_lm(n))
    A = weights_lm(5)
    assert geq_c(A, A)
    # positive(A) lacks {1,2,5} but positive(B) has it
    A = W(Fr(1, 10), Fr(1, 10), Fr(9, 10), Fr(9, 10), Fr(7, 10))
    B = W(*[Fr(9, 20)] * 5)
    assert frozenset({1, 2, 5}) not in signature(A).positive
    assert frozenset({1, 2, 5}) in signature(B).positive
    assert not geq_c(A, B)


def test_geq_c_witness_is_componentwise():
    Ap, Bp, s = geq_c_witness(weights_lm(6), weights_p(6))
    assert s > 0
    assert all(a > b for a, b in zip(Ap.values, Bp.values))
    assert signature(Ap) == signature(weights_lm(6))
    assert signature(Bp) == signature(weights_p(6))


def test_geq_c_shape_errors():
    with pytest.raises(ValueError):
        geq_c(weights_lm(5), weights_lm(6))


def test_crossing_path_example():
    Bp = W(Fr(1, 5), Fr(29, 100), Fr(31, 100), Fr(3, 10), 1)
    Ap = W(Fr(1, 5), Fr(29, 100), Fr(31, 100), 1, 1)
    path = crossing_path(Ap, Bp)
    assert [sorted(I) for I, _ in path] == [[2, 3, 4], [1, 3, 4], [1, 2, 4], [3, 4], [2, 4], [1, 4]]
    assert [t for _, t in path] == [Fr(1, 7), Fr(19, 70), Fr(3, 10), Fr(39, 70), Fr(41, 70), Fr(5, 7)]
    # independent check: each t puts the segment exactly on its wall
    for I, t in path:
        point = [(1 - t) * b + t * a for a, b in zip(Ap.values, Bp.values)]
        assert sum(point[i - 1] for i in I) == 1


def test_crossing_path_trivial_and_errors():
    A = weights_lm(5)
    assert crossing_path(A, A) == []
    Bp = W(Fr(1, 5), Fr(3, 10), Fr(3, 10), Fr(3, 10), 1)
    Ap = W(Fr(1, 5), Fr(3, 10), Fr(3, 10), 1, 1)
    with pytest.raises(NonGenericError):
        crossing_path(Ap, Bp)
    with pytest.raises(ValueError):
        crossing_path(Bp, Ap)


def test_plus_examples():
    assert plus(W(Fr(1, 2), Fr(1, 2), 1, flavor=TDN)).values == (Fr(1, 2), Fr(1, 2), 1, 1)
    A = W(*[Fr(1, 3)] * 4, flavor=TDN)
    assert plus(A).values[-1] == 1 and sum(plus(A).values) > 2
    with pytest.raises(DomainError):
        plus(weights_lm(5))


def test_generic_pair_path_is_valid():
    Ap, Bp, path = generic_pair(weights_lm(6), weights_p(6), seed=3)
    assert Ap >= Bp
    assert signature(Ap) == signature(weights_lm(6))
    walls = [I for I, _ in path]
    assert len(set(t for _, t in path)) == len(path)
    # a wall is never crossed before a crossed wall it is contained in
    for k, I in enumerate(walls):
        assert not any(I < J for J in walls[k + 1 :])
    assert is_valid_blowup_order([J - {5} for J in walls if 5 in J and 6 not in J], 4)
    assert generic_pair(weights_p(6), weights_lm(6)) is None


def test_perturb_point_stays_in_chamber():
    A = W(Fr(1, 2), Fr(1, 2), Fr(1, 2), Fr(1, 2), 1)  # on the fine walls a_ij = 1
    B = perturb_point(A, Fr(1, 100), random.Random(0), COARSE)
    assert is_off_walls(B, FINE)
    assert signature(B, COARSE) == signature(A, COARSE)


def test_signature_json_and_upset():
    sig = signature(weights_lm(6))
    data = sig.to_json()
    assert data["positive"] == sorted(data["positive"], key=lambda I: (len(I), I))
    assert sig.is_upset()
    assert ChamberSignature(5, COARSE, M0N, sets({1, 2, 3})).is_upset()
    assert not ChamberSignature(6, COARSE, M0N, sets({1, 2, 3})).is_upset()


def weight_lists(n_min, n_max, flavor):
    bound = 2 if flavor == M0N else 1
    return (
        st.integers(n_min, n_max)
        .flatmap(lambda n: st.lists(st.integers(1, 97), min_size=n, max_size=n))
        .filter(lambda xs: sum(xs) > bound * 97)
        .map(lambda xs: WeightData(tuple(Fr(x, 97) for x in xs), flavor))
    )


@given(weight_lists(4, 7, M0N), st.sampled_from([FINE, COARSE]))
@settings(max_examples=120, deadline=None)
def test_signature_is_upset(A, gran):
    try:
        sig = signature(A, gran)
    except OnWallError:
        assume(False)
    assert sig.is_upset()
    assert A.a(range(1, A.n)) > 1


@given(weight_lists(3, 6, TDN))
@settings(max_examples=80, deadline=None)
def test_tdn_walls_are_the_slice_of_plus(A):
    try:
        sig = signature(A, FINE)
        big = signature(plus(A), FINE)
    except OnWallError:
        assume(False)
    n = A.n
    assert {I for I in big.positive if n + 1 not in I} == set(sig.positive)
    # every wall through the extra point is positive on the slice
    assert all(I in big.positive for I in wall_family(n + 1, FINE) if n + 1 in I)


@given(weight_lists(5, 6, M0N), weight_lists(5, 6, M0N))
@settings(max_examples=60, deadline=None)
def test_geq_filter_is_sound(A, B):
    assume(A.n == B.n)
    try:
        sa, sb = signature(A), signature(B)
    except OnWallError:
        assume(False)
    res = _geq_witness_signatures(sa, sb, use_filter=False)
    if res is not None:
        assert sa.positive >= sb.positive
        Ap, Bp, _ = res
        assert Ap >= Bp and signature(Ap) == sa and signature(Bp) == sb
