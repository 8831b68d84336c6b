"""Hassett weights between the projective-space and Losev-Manin chambers.

For weight data A on n points with A_LM >=_c A >=_c A_P, the fan reached by
replaying the wall crossings from Ch(A_P) to Ch(A) as stellar subdivisions
of the fan of P^{n-3} is compared with the fan of the hypergraph H_A.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
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
    random_valid_order,
    ray_of_subset,
    simplex_fan,
    star_subdivide,
)
from .hypergraph import Hypergraph, atomic_closure, hypergraph_on, is_connected, is_saturated
from .weights import (
    FINE,
    M0N,
    DomainError,
    WeightData,
    generic_pair,
    geq_c_witness,
    signature,
)


class HypothesisError(ValueError):
    pass


class InadmissibleWallError(RuntimeError):
    pass


def _margin(n: int) -> Fraction:
    return Fraction(1, 10 * n)


def weights_lm(n: int) -> WeightData:
    """Interior point of Ch(A_LM): light points summing to 1 - 1/(10n), two weight-1 points."""
    if n < 4:
        raise DomainError("need n >= 4")
    light = (1 - _margin(n)) / (n - 2)
    return WeightData((light,) * (n - 2) + (Fraction(1), Fraction(1)), M0N)


def weights_p(n: int) -> WeightData:
    """Interior point of Ch(A_P): n-1 equal points summing to 1 + 1/(10n), then weight 1."""
    if n < 4:
        raise DomainError("need n >= 4")
    light = (1 + _margin(n)) / (n - 1)
    return WeightData((light,) * (n - 1) + (Fraction(1),), M0N)


def lemma_violations(A: WeightData) -> list[str]:
    """Inequalities forced on weights between A_P and A_LM (n >= 5) that fail for A."""
    n = A.n
    out = []
    if A.a(range(1, n)) <= 1:
        out.append(f"a_[{n - 1}] > 1")
    light = sorted(A.values[: n - 1])
    if light[0] + light[1] + A.values[n - 1] <= 1:
        out.append(f"a_I + a_{n} > 1 for all I in [{n - 1}], |I| >= 2")
    if A.a(range(1, n - 1)) > 1:
        out.append(f"a_[{n - 2}] <= 1")
    return out


@dataclass(frozen=True)
class HassettInput:
    """Weight data certified to lie between Ch(A_P) and Ch(A_LM)."""

    A: WeightData
    lm_witness: tuple = field(repr=False)  # (A'' in Ch(A_LM), A' in Ch(A)), A'' >= A'
    p_witness: tuple = field(repr=False)  # (A' in Ch(A), B' in Ch(A_P)), A' >= B'

    @property
    def n(self) -> int:
        return self.A.n

    @classmethod
    def from_weights(cls, A: WeightData) -> "HassettInput":
        if A.flavor != M0N:
            raise HypothesisError("Hassett weights must have flavor M0n")
        n = A.n
        if n < 4:
            raise HypothesisError("need n >= 4")
        signature(A, FINE)  # raises OnWallError off the fine chambers
        lm = geq_c_witness(weights_lm(n), A)
        if lm is None:
            raise HypothesisError("A_LM >=_c A fails")
        p = geq_c_witness(A, weights_p(n))
        if p is None:
            raise HypothesisError("A >=_c A_P fails")
        if n >= 5:
            bad = lemma_violations(A)
            if bad:
                raise HypothesisError("violated: " + "; ".join(bad))
        return cls(A, lm[:2], p[:2])


def _weights_of(A) -> WeightData:
    return A.A if isinstance(A, HassettInput) else A


def hassett_hypergraph(A) -> Hypergraph:
    """H_A on [n-2]: the nonempty I with a_I + a_{n-1} > 1."""
    A = _weights_of(A)
    n = A.n
    heavy = A.values[n - 2]
    m = n - 2
    edges = [
        c
        for k in range(1, m + 1)
        for c in combinations(range(1, m + 1), k)
        if A.a(c) + heavy > 1
    ]
    return hypergraph_on(m, edges)


def admissible_walls(n: int) -> set[frozenset]:
    """Fine walls that a path from Ch(A_P) into a between-chamber may cross."""
    if n < 5:
        raise ValueError("need n >= 5")
    base = range(1, n - 1)
    out = set()
    for k in range(1, n - 2):
        for I in combinations(base, k):
            out.add(frozenset(I) | {n - 1})
    for i in base:
        out.add(frozenset({i, n}))
    return {J for J in out if 2 <= len(J) <= n - 2}


@dataclass
class BlowupRun:
    fan: Fan
    crossed: list  # (wall, t) in path order
    skipped: list  # walls whose crossing is an isomorphism
    subdivisions: list  # I = J \ {n-1}, in order
    Aprime: WeightData | None = None
    Bprime: WeightData | None = None


def blowup_sequence(inp: HassettInput, seed: int = 0) -> BlowupRun:
    n = inp.n
    m = n - 2
    if n == 4:
        # every blow-up of P^1 at points is trivial
        return BlowupRun(simplex_fan(2, [1, 2]), [], [], [])
    res = generic_pair(inp.A, weights_p(n), seed)
    if res is None:
        raise HypothesisError("A >=_c A_P fails")
    Ap, Bp, path = res
    allowed = admissible_walls(n)
    skipped, subdivisions = [], []
    for J, _ in path:
        if J not in allowed:
            raise InadmissibleWallError(f"crossed inadmissible wall {sorted(J)}")
        if n in J or len(J) == 2:
            skipped.append(J)
        else:
            subdivisions.append(J - {n - 1})
    if not is_valid_blowup_order(subdivisions, m):
        raise InadmissibleWallError("crossing order is not union-closed")
    F = simplex_fan(m, list(range(1, m + 1)))
    for I in subdivisions:
        sigma = [F.ray_index(ray_of_subset([i], m)) for i in sorted(I)]
        F = star_subdivide(F, sigma, tag=I)
    if not is_smooth(F):
        raise RuntimeError("wall-crossing fan is not unimodular")
    return BlowupRun(F, path, skipped, subdivisions, Ap, Bp)


def blowup_sequence_fan(inp: HassettInput, seed: int = 0) -> Fan:
    return blowup_sequence(inp, seed).fan


def order_independent(H: Hypergraph, k: int, seed: int = 0, reference: Fan | None = None) -> bool:
    Hat = atomic_closure(H)
    ref = reference if reference is not None else fan_of_hypergraph(Hat)
    rng = random.Random(seed)
    eligible = Hat.eligible_edges()
    for _ in range(k):
        order = random_valid_order(eligible, Hat.full_set, rng)
        if not fans_equal(fan_of_hypergraph(Hat, order), ref):
            return False
    return True


def verify_theorem_mon(inp: HassettInput, orders: int = 5, seed: int = 0) -> dict:
    """Build both fans for ``inp`` and compare them; returns a JSON-ready report."""
    n = inp.n
    H = hassett_hypergraph(inp)
    checks = {"hypergraph_saturated_connected": is_saturated(H) and is_connected(H)}
    report = {"n": n, "weights": [format_rational(v) for v in inp.A.values], "H_A": H.to_json()}
    try:
        run = blowup_sequence(inp, seed)
        checks["admissible_walls"] = True
    except InadmissibleWallError as exc:
        checks["admissible_walls"] = False
        report.update(error=str(exc), checks=checks)
        report["pass"] = False
        return report
    checks["valid_blowup_order"] = is_valid_blowup_order(run.subdivisions, n - 2)
    hyper_fan = fan_of_hypergraph(H)
    checks["fans_equal"] = fans_equal(run.fan, hyper_fan)
    checks["blowup_smooth"] = is_smooth(run.fan)
    checks["blowup_complete"] = is_complete(run.fan, seed=seed)
    checks["hypergraph_smooth"] = is_smooth(hyper_fan)
    checks["hypergraph_complete"] = is_complete(hyper_fan, seed=seed)
    checks["order_independent"] = order_independent(H, orders, seed, hyper_fan)
    if n >= 5:
        crossed = {J - {n - 1} for J, _ in run.crossed if n - 1 in J and n not in J}
        H_I = hypergraph_on(n - 2, list(crossed) + [range(1, n - 1)])
        checks["crossings_match_H_A"] = H_I == hassett_hypergraph(run.Aprime) and atomic_closure(
            H_I
        ) == atomic_closure(H)
    report.update(
        fan=run.fan.to_json(),
        crossed_walls=[{"wall": sorted(J), "t": format_rational(t)} for J, t in run.crossed],
        skipped_isomorphism_walls=[sorted(J) for J in run.skipped],
        subdivisions=[sorted(I) for I in run.subdivisions],
        checks=checks,
    )
    report["pass"] = all(checks.values())
    return report
