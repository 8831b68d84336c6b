"""Weighted spaces of n points in affine d-space up to translation and scaling.

The fan of the weighted space T^A_{d,n} is built as a sequence of stellar
subdivisions of the fan of P^{d(n-1)-1} along the diagonal loci indexed by
the building set G_A, and compared with the fan of the d-inflation of H_{A+}.
Coordinates (i, k), i in [n-1], k in [d], are ordered point-major.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .exact import format_rational
from .fan import (
    Fan,
    fan_of_hypergraph,
    fans_equal,
    is_complete,
    is_smooth,
    is_valid_blowup_order,
    ray_of_subset,
    simplex_fan,
    star_subdivide,
)
from .hassett import HypothesisError, hassett_hypergraph
from .hypergraph import Hypergraph, inflate
from .weights import FINE, TDN, DomainError, OnWallError, WeightData, geq_c_witness, plus, signature


def _margin(n: int) -> Fraction:
    # the margin of the n+1 point chambers, so that plus() lands on weights_lm/weights_p
    return Fraction(1, 10 * (n + 1))


def weights_lm_t(n: int) -> WeightData:
    if n < 3:
        raise DomainError("need n >= 3")
    light = (1 - _margin(n)) / (n - 1)
    return WeightData((light,) * (n - 1) + (Fraction(1),), TDN)


def weights_p_t(n: int) -> WeightData:
    if n < 3:
        raise DomainError("need n >= 3")
    light = (1 + _margin(n)) / n
    return WeightData((light,) * n, TDN)


def building_set_indices(A: WeightData, strict: bool = True) -> set[frozenset]:
    """{I proper subset of [n] : |I| >= 2, a_I > 1}.

    With ``strict`` an index set on its wall (a_I = 1) is an error;
    otherwise it is simply left out.
    """
    if A.flavor != TDN:
        raise DomainError("building sets are defined for Tdn weight data")
    n = A.n
    out = set()
    for k in range(2, n):
        for I in combinations(range(1, n + 1), k):
            s = A.a(I)
            if s == 1 and strict:
                raise OnWallError(frozenset(I))
            if s > 1:
                out.add(frozenset(I))
    return out


def torus_invariant(I, n: int) -> bool:
    """The diagonal delta_I is torus invariant exactly when n is in I."""
    return n in set(I)


@dataclass(frozen=True)
class AffineInput:
    d: int
    A: WeightData

    @property
    def n(self) -> int:
        return self.A.n

    @property
    def m(self) -> int:
        return self.d * (self.n - 1)

    @classmethod
    def from_weights(cls, d: int, A: WeightData) -> "AffineInput":
        if not isinstance(d, int) or d < 1:
            raise HypothesisError("d must be a positive integer")
        if A.flavor != TDN:
            raise HypothesisError("weight data must have flavor Tdn")
        n = A.n
        if n < 3:
            raise HypothesisError("need n >= 3")
        signature(A, FINE)  # raises OnWallError
        if geq_c_witness(plus(weights_lm_t(n)), plus(A)) is None:
            raise HypothesisError("(A^T_LM)+ >=_c A+ fails")
        if geq_c_witness(plus(A), plus(weights_p_t(n))) is None:
            raise HypothesisError("A+ >=_c (A^T_P)+ fails")
        if n == 3 and A.values[0] + A.values[1] > 1:
            raise HypothesisError("for n = 3 need a_1 + a_2 <= 1")
        if A.a(range(1, n)) > 1:
            raise HypothesisError(f"violated: a_[{n - 1}] <= 1")
        bad = [sorted(I) for I in building_set_indices(A) if not torus_invariant(I, n)]
        if bad:
            raise HypothesisError(f"building set has non torus-invariant members {bad}")
        return cls(d, A)


def _coords(n: int, d: int) -> list[tuple[int, int]]:
    return [(i, k) for i in range(1, n) for k in range(1, d + 1)]


def tdn_blowup_fan(inp: AffineInput) -> Fan:
    """Blow up P^{m-1} along L_{d,I} for each I u {n} in G_A, larger I first."""
    n, d, m = inp.n, inp.d, inp.m
    G = building_set_indices(inp.A)
    for J in G:
        if n not in J:
            raise HypothesisError(f"delta_{sorted(J)} is not torus invariant; no fan model")
    blocks = sorted((J - {n} for J in G), key=lambda I: (-len(I), sorted(I)))
    if d == 1:
        blocks = [I for I in blocks if len(I) > 1]
    if not is_valid_blowup_order(blocks, n - 1):
        raise HypothesisError("building set is not closed under the required unions")
    coords = _coords(n, d)
    pos = {c: j + 1 for j, c in enumerate(coords)}
    F = simplex_fan(m, coords)
    for I in blocks:
        idx = [pos[(i, k)] for i in sorted(I) for k in range(1, d + 1)]
        sigma = [F.ray_index(ray_of_subset([j], m)) for j in idx]
        F = star_subdivide(F, sigma, tag=[(i, k) for i in sorted(I) for k in range(1, d + 1)])
    return F


def inflated_hypergraph(inp: AffineInput) -> Hypergraph:
    return inflate(hassett_hypergraph(plus(inp.A)), inp.d)


def inflated_fan(inp: AffineInput) -> Fan:
    return fan_of_hypergraph(inflated_hypergraph(inp))


def verify_theorem_tdn(inp: AffineInput, seed: int = 0) -> dict:
    n, d = inp.n, inp.d
    G = building_set_indices(inp.A)
    H = hassett_hypergraph(plus(inp.A))
    checks = {"building_set_torus_invariant": all(n in J for J in G)}
    # the building set and H_{A+} carry the same non-full index sets
    hat = {J - {n} for J in G}
    checks["building_set_matches_H_A+"] = hat == {I for I in H.hyperedges if I != H.full_set and len(I) >= 1}
    blow = tdn_blowup_fan(inp)
    infl = inflated_fan(inp)
    checks["fans_equal"] = fans_equal(blow, infl)
    checks["blowup_smooth"] = is_smooth(blow)
    checks["blowup_complete"] = is_complete(blow, seed=seed)
    checks["inflated_smooth"] = is_smooth(infl)
    checks["inflated_complete"] = is_complete(infl, seed=seed)
    return {
        "n": n,
        "d": d,
        "weights": [format_rational(v) for v in inp.A.values],
        "building_set": [sorted(J) for J in sorted(G, key=lambda J: (len(J), sorted(J)))],
        "H_A+": H.to_json(),
        "fan": blow.to_json(),
        "checks": checks,
        "pass": all(checks.values()),
    }
