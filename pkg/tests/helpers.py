"""Generators and brute-force oracles shared by the tests."""

import random
from itertools import combinations, permutations, product

from nestofan.hypergraph import atomic_closure, hypergraph_on


def saturate(edges):
    edges = {frozenset(e) for e in edges}
    changed = True
    while changed:
        changed = False
        for I, J in combinations(list(edges), 2):
            if I & J and (I | J) not in edges:
                edges.add(I | J)
                changed = True
    return edges


def random_asc(m, rng, density=0.3):
    """Random ASC hypergraph on [m]: saturate random sets, add singletons and [m]."""
    pool = [frozenset(c) for k in range(2, m) for c in combinations(range(1, m + 1), k)]
    chosen = [I for I in pool if rng.random() < density]
    edges = saturate(chosen) | {frozenset([i]) for i in range(1, m + 1)} | {frozenset(range(1, m + 1))}
    return hypergraph_on(m, edges)


def all_asc(m):
    """Every ASC hypergraph on [m]: singletons and [m] plus a saturated family of middle sets."""
    pool = [frozenset(c) for k in range(2, m) for c in combinations(range(1, m + 1), k)]
    base = {frozenset([i]) for i in range(1, m + 1)} | {frozenset(range(1, m + 1))}
    out = []
    for mask in range(1 << len(pool)):
        fam = {pool[j] for j in range(len(pool)) if mask >> j & 1}
        if saturate(fam) == fam:
            out.append(hypergraph_on(m, fam | base))
    return out


def brute_nested(H):
    """All nested sets of an atomic H, straight from the definition, by subset scan."""
    edges = [I for I in H.hyperedges if I != H.full_set]
    members = set(H.hyperedges)
    out = set()
    for k in range(len(edges) + 1):
        if k > H.m - 1:
            break
        for N in combinations(edges, k):
            if not all(I <= J or J <= I or not I & J for I, J in combinations(N, 2)):
                continue
            ok = True
            for r in range(2, len(N) + 1):
                for S in combinations(N, r):
                    if all(not I & J for I, J in combinations(S, 2)) and frozenset().union(*S) in members:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.add(frozenset(N))
    return out


def rng(seed=0):
    return random.Random(seed)


def minkowski_points(H):
    """Every sum of one vertex per simplex conv(e_j : j in J), J in H^at."""
    B = atomic_closure(H)
    pos = {v: i for i, v in enumerate(B.vertices)}
    pts = set()
    for choice in product(*[sorted(J, key=pos.__getitem__) for J in B.hyperedges]):
        x = [0] * B.m
        for v in choice:
            x[pos[v]] += 1
        pts.add(tuple(x))
    return pts


def minkowski_vertices(H):
    """Vertices of the Minkowski sum: greedy sums for every ordering of the coordinates."""
    B = atomic_closure(H)
    pos = {v: i for i, v in enumerate(B.vertices)}
    out = set()
    for order in permutations(range(B.m)):
        rank = {i: r for r, i in enumerate(order)}
        x = [0] * B.m
        for J in B.hyperedges:
            x[min((pos[v] for v in J), key=rank.__getitem__)] += 1
        out.add(tuple(x))
    return out
