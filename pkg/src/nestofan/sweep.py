"""Chamber enumeration and the sweeps over chambers between A_P and A_LM.

Chambers are found by a depth-first search over wall signs, larger walls
first, pruning every partial sign pattern that the exact LP rejects. The
grid scan at the bottom is an independent brute-force count used only as a
cross-check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .affine import AffineInput, weights_lm_t, weights_p_t
from .hassett import HassettInput, weights_lm, weights_p
from .weights import (
    COARSE,
    M0N,
    ChamberSignature,
    WeightData,
    geq_c_signatures,
    partial_feasible_point,
    perturb_point,
    signature,
    wall_family,
)


@dataclass(frozen=True)
class Chamber:
    signature: ChamberSignature
    witness: WeightData  # interior point, off every fine wall

    def to_json(self) -> dict:
        return {"positive": self.signature.sorted_positive(), "witness": self.witness.to_json()["values"]}


def _search(n, flavor, free, positive, negative):
    """All sign patterns on ``free`` extending the fixed ones that are realizable.

    Each node carries a witness point; the sign it already gives the next
    wall needs no LP, only the opposite sign does.
    """
    free = sorted(free, key=lambda I: (-len(I), sorted(I)))
    out = []

    def rec(k, pos, neg, x):
        if k == len(free):
            out.append(frozenset(pos))
            return
        J = free[k]
        value = x.a(J)
        # an up-set: J is forced negative if a decided superset is negative
        choices = [False] if any(J < K for K in neg) else [True, False]
        for sign in choices:
            (pos if sign else neg).append(J)
            if value != 1 and (value > 1) == sign:
                y = x
            else:
                res = partial_feasible_point(n, flavor, pos, neg)
                y = res[0] if res is not None else None
            if y is not None:
                rec(k + 1, pos, neg, y)
            (pos if sign else neg).pop()

    res = partial_feasible_point(n, flavor, list(positive), list(negative))
    if res is not None:
        rec(0, list(positive), list(negative), res[0])
    return out


def _witness(sig: ChamberSignature, seed: int) -> WeightData:
    fam = wall_family(sig.n, sig.granularity, sig.flavor)
    neg = [I for I in fam if I not in sig.positive]
    A, s = partial_feasible_point(sig.n, sig.flavor, list(sig.positive), neg)
    return perturb_point(A, s, random.Random(seed), sig.granularity)


def chambers(n: int, granularity: str = COARSE, flavor: str = M0N, seed: int = 0) -> list[Chamber]:
    """Every chamber of the given decomposition with an off-wall witness."""
    fam = wall_family(n, granularity, flavor)
    out = []
    for pos in _search(n, flavor, fam, [], []):
        sig = ChamberSignature(n, granularity, flavor, pos)
        out.append(Chamber(sig, _witness(sig, seed)))
    return sorted(out, key=lambda c: (len(c.signature.positive), c.signature.sorted_positive()))


def _between(lm: ChamberSignature, p: ChamberSignature, seed: int) -> list[Chamber]:
    n, g, fl = lm.n, lm.granularity, lm.flavor
    fam = wall_family(n, g, fl)
    free = [I for I in fam if I in lm.positive and I not in p.positive]
    negative = [I for I in fam if I not in lm.positive]
    out = []
    for pos in _search(n, fl, free, p.positive, negative):
        sig = ChamberSignature(n, g, fl, pos)
        # the sandwich is necessary; betweenness is certified by the joint LP
        if geq_c_signatures(lm, sig) and geq_c_signatures(sig, p):
            out.append(Chamber(sig, _witness(sig, seed)))
    return sorted(out, key=lambda c: (len(c.signature.positive), c.signature.sorted_positive()))


def between_chambers_mon(n: int, seed: int = 0) -> list[Chamber]:
    """Coarse chambers C with Ch(A_LM) >=_c C >=_c Ch(A_P)."""
    return _between(signature(weights_lm(n), COARSE), signature(weights_p(n), COARSE), seed)


def between_chambers_tdn(n: int, seed: int = 0) -> list[Chamber]:
    """Chambers of D^T between Ch(A^T_P) and Ch(A^T_LM)."""
    return _between(signature(weights_lm_t(n), COARSE), signature(weights_p_t(n), COARSE), seed)


def sweep_mon(n: int, seed: int = 0):
    from .hassett import verify_theorem_mon

    return [verify_theorem_mon(HassettInput.from_weights(c.witness), seed=seed) for c in between_chambers_mon(n, seed)]


def sweep_tdn(d: int, n: int, seed: int = 0):
    from .affine import verify_theorem_tdn

    return [
        verify_theorem_tdn(AffineInput.from_weights(d, c.witness), seed=seed) for c in between_chambers_tdn(n, seed)
    ]


# -- independent grid oracle -------------------------------------------------


def grid_between_signatures_mon(n: int, q: int) -> set[frozenset]:
    """Coarse signatures between A_P and A_LM met by a brute-force rational grid.

    Work in units of 1/(2q). The light weights a_1..a_{n-2} run over the even
    numerators with a_[n-2] < 1 (the wall [n-2] is negative in Ch(A_LM)),
    a_{n-1} over the odd numerators, and a_n = 1. Raising a_n to 1 keeps
    every sandwiched signature since walls through n are positive there, and
    the odd numerators meet every cell on each line in the a_{n-1} direction
    because the walls through n-1 cross it at even numerators.
    """
    fam = wall_family(n, COARSE, M0N)
    lm = signature(weights_lm(n), COARSE).positive
    p = signature(weights_p(n), COARSE).positive
    inner = [I for I in fam if n not in I]
    inc = np.array([[1 if i in I else 0 for I in inner] for i in range(1, n)], dtype=np.int64)
    axes = np.meshgrid(*[np.arange(1, q)] * (n - 2), indexing="ij")
    light = np.stack([a.ravel() for a in axes], axis=1)
    light = 2 * light[light.sum(axis=1) < q]
    found = set()
    for odd in range(1, 2 * q, 2):
        pts = np.hstack([light, np.full((len(light), 1), odd, dtype=np.int64)])
        pts = pts[pts.sum(axis=1) > 2 * q]  # a_[n] > 2
        sums = pts @ inc
        sums = sums[np.all(sums != 2 * q, axis=1)]
        for row in np.unique(sums > 2 * q, axis=0):
            pos = {I for I, b in zip(inner, row) if b} | {I for I in fam if n in I}
            if p <= pos <= lm:
                found.add(frozenset(pos))
    return found
