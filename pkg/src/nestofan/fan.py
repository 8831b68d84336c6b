"""Simplicial fans in the lattice Z^m / Z(1,...,1).

Vectors are stored in the drop-last-coordinate representation: the image
of e_i is the i-th unit vector for i < m and (-1,...,-1) for i = m.
"""

from __future__ import annotations

import random
from collections import Counter
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .exact import det, primitive, solve
from .hypergraph import Hypergraph, atomic_closure, is_asc, _label_key, _normalize_label


class FanError(ValueError):
    pass


def _tag_key(tag):
    if tag is None:
        return (0,)
    return (1, len(tag), sorted(_label_key(v) for v in tag))


class Fan:
    """Complete-or-not simplicial fan given by primitive rays and maximal cones.

    Always held in canonical form: rays sorted lexicographically and cones
    (sorted index tuples) sorted lexicographically. ``tags`` optionally
    records, per ray, the vertex set I whose ray r_I it is.
    """

    __slots__ = ("dim", "rays", "max_cones", "tags", "_index")

    def __init__(self, dim: int, rays, max_cones, tags=None):
        rays = [tuple(int(x) for x in r) for r in rays]
        if tags is None:
            tags = [None] * len(rays)
        tags = [frozenset(t) if t is not None else None for t in tags]
        if len(tags) != len(rays):
            raise FanError("one tag per ray required")
        for r in rays:
            if len(r) != dim:
                raise FanError(f"ray {r} has wrong length for rank {dim}")
        perm = sorted(range(len(rays)), key=lambda i: rays[i])
        new_of_old = {old: new for new, old in enumerate(perm)}
        self.dim = dim
        self.rays = tuple(rays[i] for i in perm)
        if len(set(self.rays)) != len(self.rays):
            raise FanError("duplicate rays")
        self.tags = tuple(tags[i] for i in perm)
        cones = set()
        for c in max_cones:
            c = tuple(sorted(new_of_old[i] for i in c))
            if len(set(c)) != dim:
                raise FanError(f"maximal cone {c} is not full-dimensional simplicial")
            cones.add(c)
        self.max_cones = tuple(sorted(cones))
        self._index = {r: i for i, r in enumerate(self.rays)}

    def __eq__(self, other):
        if not isinstance(other, Fan):
            return NotImplemented
        return self.dim == other.dim and self.rays == other.rays and self.max_cones == other.max_cones

    def __hash__(self):
        return hash((self.dim, self.rays, self.max_cones))

    def __repr__(self):
        return f"Fan(rank={self.dim}, rays={len(self.rays)}, max_cones={len(self.max_cones)})"

    def ray_index(self, v) -> int:
        return self._index[tuple(v)]

    def has_ray(self, v) -> bool:
        return tuple(v) in self._index

    def cone_rays(self, cone) -> list[tuple[int, ...]]:
        return [self.rays[i] for i in cone]

    def is_face(self, sigma) -> bool:
        s = set(sigma)
        return any(s <= set(c) for c in self.max_cones)

    # -- JSON --------------------------------------------------------------

    def to_json(self) -> dict:
        tags = {}
        for i, t in enumerate(self.tags):
            if t is not None:
                tags[str(i)] = [list(v) if isinstance(v, tuple) else v for v in sorted(t, key=_label_key)]
        return {
            "rank": self.dim,
            "rays": [list(r) for r in self.rays],
            "max_cones": [list(c) for c in self.max_cones],
            "tags": tags,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Fan":
        try:
            rays = data["rays"]
            tags = [None] * len(rays)
            for k, labels in data.get("tags", {}).items():
                tags[int(k)] = [_normalize_label(v) for v in labels]
            return cls(int(data["rank"]), rays, data["max_cones"], tags)
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise FanError(f"malformed fan JSON: {exc}") from exc


def simplex_fan(m: int, labels: Sequence | None = None) -> Fan:
    """Fan of P^{m-1}: rays e_1..e_m, maximal cones all (m-1)-subsets."""
    if m < 2:
        raise FanError("simplex fan needs m >= 2")
    dim = m - 1
    rays = [tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)]
    rays.append(tuple([-1] * dim))
    tags = None
    if labels is not None:
        if len(labels) != m:
            raise FanError("need one label per ray")
        tags = [{v} for v in labels]
    return Fan(dim, rays, combinations(range(m), dim), tags)


def ray_of_subset(I: Iterable[int], m: int) -> tuple[int, ...]:
    """The ray r_I = sum of images of e_i, i in I (1-based indices)."""
    I = set(I)
    if not I:
        raise FanError("empty index set has no ray")
    if not I <= set(range(1, m + 1)):
        raise FanError(f"indices {sorted(I)} outside [{m}]")
    if len(I) == m:
        raise FanError("the full index set maps to zero")
    if m in I:
        return tuple(0 if i in I else -1 for i in range(1, m))
    return tuple(1 if i in I else 0 for i in range(1, m))


def star_subdivide(F: Fan, sigma: Iterable[int], tag=None) -> Fan:
    """Stellar subdivision of ``F`` at the cone spanned by the ray indices ``sigma``."""
    sigma = frozenset(sigma)
    if len(sigma) < 2:
        raise FanError("need a cone of dimension >= 2 to subdivide")
    containing = [c for c in F.max_cones if sigma <= set(c)]
    if not containing:
        raise FanError(f"{sorted(sigma)} is not a cone of the fan")
    total = [sum(F.rays[i][k] for i in sigma) for k in range(F.dim)]
    new_ray = primitive(total)
    if F.has_ray(new_ray):
        raise FanError(f"ray {new_ray} already present")
    new_idx = len(F.rays)
    keep = [c for c in F.max_cones if not sigma <= set(c)]
    for c in containing:
        for rho in sigma:
            keep.append(tuple(i for i in c if i != rho) + (new_idx,))
    return Fan(F.dim, list(F.rays) + [new_ray], keep, list(F.tags) + [tag])


def locate_cone(F: Fan, v: Sequence[int]) -> tuple[int, ...] | None:
    """Smallest cone of ``F`` containing ``v`` in its relative interior."""
    if not F.max_cones:
        return None
    # unimodular cones: the verified integer inverse gives exact coordinates
    inv, ok = _cone_inverses(F)
    coefs = np.einsum("cij,j->ci", inv, np.asarray(v, dtype=np.int64))
    hits = ok & np.all(coefs >= 0, axis=1)
    for k, c in enumerate(F.max_cones):
        if ok[k]:
            if not hits[k]:
                continue
            coef = coefs[k].tolist()
        else:
            cols = F.cone_rays(c)
            rows = [[cols[j][i] for j in range(F.dim)] for i in range(F.dim)]
            coef = solve(rows, v)
            if coef is None or any(x < 0 for x in coef):
                continue
        return tuple(sorted(c[j] for j, x in enumerate(coef) if x > 0))
    return None


def fans_equal(F1: Fan, F2: Fan) -> bool:
    if F1.dim != F2.dim:
        raise FanError(f"rank mismatch: {F1.dim} vs {F2.dim}")
    return F1.rays == F2.rays and F1.max_cones == F2.max_cones


def is_smooth(F: Fan) -> bool:
    return all(abs(det(F.cone_rays(c))) == 1 for c in F.max_cones)


def _cone_inverses(F: Fan):
    """Integer inverses of unimodular cone matrices, verified exactly."""
    d = F.dim
    B = np.array([[F.rays[i] for i in c] for c in F.max_cones], dtype=np.int64)
    B = np.transpose(B, (0, 2, 1))  # columns are rays
    try:
        inv = np.rint(np.linalg.inv(B.astype(float))).astype(np.int64)
    except np.linalg.LinAlgError:
        # a singular cone somewhere in the batch; invert one at a time
        inv = np.zeros_like(B)
        for k, M in enumerate(B):
            try:
                inv[k] = np.rint(np.linalg.inv(M.astype(float))).astype(np.int64)
            except np.linalg.LinAlgError:
                pass
    eye = np.eye(d, dtype=np.int64)
    ok = np.all(np.einsum("cij,cjk->cik", B, inv) == eye, axis=(1, 2))
    return inv, ok


def is_complete(F: Fan, samples: int = 100, seed: int = 0) -> bool:
    """Facet pairing, adjacency connectivity, and a sampled membership cross-check."""
    if not F.max_cones:
        return False
    d = F.dim
    facets = Counter()
    for c in F.max_cones:
        for f in combinations(c, d - 1):
            facets[f] += 1
    if any(cnt != 2 for cnt in facets.values()):
        return False
    parent = list(range(len(F.max_cones)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    first_owner = {}
    for ci, c in enumerate(F.max_cones):
        for f in combinations(c, d - 1):
            if f in first_owner:
                parent[find(ci)] = find(first_owner[f])
            else:
                first_owner[f] = ci
    if len({find(i) for i in range(len(F.max_cones))}) != 1:
        return False

    rng = random.Random(seed)
    pts = np.array([[rng.randint(-10**6, 10**6) for _ in range(d)] for _ in range(samples)], dtype=np.int64)
    inv, ok = _cone_inverses(F)
    inside = np.zeros(samples, dtype=np.int64)
    interior = np.zeros(samples, dtype=np.int64)
    if ok.any():
        coef = np.einsum("cij,sj->csi", inv[ok], pts)
        inside += np.all(coef >= 0, axis=2).sum(axis=0)
        interior += np.all(coef > 0, axis=2).sum(axis=0)
    for ci in np.flatnonzero(~ok):
        cols = F.cone_rays(F.max_cones[ci])
        rows = [[cols[j][i] for j in range(d)] for i in range(d)]
        for s, p in enumerate(pts.tolist()):
            coef = solve(rows, p)
            if coef is None:
                return False
            if all(x >= 0 for x in coef):
                inside[s] += 1
                if all(x > 0 for x in coef):
                    interior[s] += 1
    return bool(np.all(inside >= 1) and np.all(interior <= 1))


def all_cones(F: Fan) -> set[frozenset]:
    """Every cone (as a frozenset of ray indices), the zero cone included."""
    out = set()
    for c in F.max_cones:
        for k in range(len(c) + 1):
            for f in combinations(c, k):
                out.add(frozenset(f))
    return out


def f_vector(F: Fan) -> tuple[int, ...]:
    counts = [0] * (F.dim + 1)
    for c in all_cones(F):
        counts[len(c)] += 1
    return tuple(counts)


def tagged_cones(F: Fan) -> set[frozenset]:
    """Cones as sets of ray tags; every ray must carry a tag."""
    if any(t is None for t in F.tags):
        raise FanError("fan has untagged rays")
    return {frozenset(F.tags[i] for i in c) for c in all_cones(F)}


# -- blow-up orders ------------------------------------------------------------


def is_valid_blowup_order(sets: Sequence[Iterable], ground) -> bool:
    """Prefix union-closure: unions already in the list must come first.

    ``ground`` is the vertex set (or its size m, meaning [m]). Singletons
    and the ground set itself induce no blow-up and are ignored.
    """
    ground = frozenset(range(1, ground + 1)) if isinstance(ground, int) else frozenset(ground)
    seq = [frozenset(s) for s in sets]
    seq = [s for s in seq if 2 <= len(s) and s != ground]
    listed = set(seq)
    placed: set = set()
    for x in seq:
        for y in placed:
            u = x | y
            if u != ground and u in listed and u not in placed and u != x:
                return False
        placed.add(x)
    return True


def random_valid_order(sets: Sequence[frozenset], ground, rng: random.Random) -> list[frozenset]:
    """Uniformly pick among currently admissible sets until all are placed."""
    ground = frozenset(range(1, ground + 1)) if isinstance(ground, int) else frozenset(ground)
    remaining = [frozenset(s) for s in sets]
    listed = set(remaining)
    placed: list = []
    placed_set: set = set()
    while remaining:
        ok = []
        for x in remaining:
            if all(
                (u := x | y) == ground or u not in listed or u in placed_set or u == x
                for y in placed
            ):
                ok.append(x)
        # the largest remaining set is always admissible
        pick = rng.choice(ok)
        remaining.remove(pick)
        placed.append(pick)
        placed_set.add(pick)
    return placed


# -- the fan of a hypergraph ---------------------------------------------------


def fan_of_hypergraph(H: Hypergraph, order: Sequence[Iterable] | None = None, check: bool = True) -> Fan:
    """Iterated stellar subdivision of the simplex fan at the hyperedge cones.

    Works with the atomic closure of ``H``. The default order is the
    canonical one (larger sets first). A custom ``order`` must list the
    non-singleton proper hyperedges exactly once and be a valid blow-up
    order.
    """
    Hat = atomic_closure(H)
    if not is_asc(Hat):
        raise FanError("atomic closure is not saturated and connected")
    m = Hat.m
    if m < 2:
        raise FanError("need at least two vertices")
    eligible = Hat.eligible_edges()
    if order is None:
        order = eligible
    else:
        order = [frozenset(s) for s in order]
        order = [s for s in order if 2 <= len(s) < m]
        if len(order) != len(set(order)) or set(order) != set(eligible):
            raise FanError("order must list each non-singleton proper hyperedge exactly once")
        if not is_valid_blowup_order(order, Hat.full_set):
            raise FanError("invalid blow-up order")
    pos = {v: i + 1 for i, v in enumerate(Hat.vertices)}
    F = simplex_fan(m, Hat.vertices)
    for I in order:
        idx = sorted(pos[v] for v in I)
        v = ray_of_subset(idx, m)
        base = [F.ray_index(ray_of_subset([i], m)) for i in idx]
        if F.is_face(base):
            tau = base
        else:
            tau = locate_cone(F, v)
            if tau is None:
                raise FanError(f"no cone contains r_I for I={sorted(idx)}")
            total = tuple(sum(F.rays[i][k] for i in tau) for k in range(F.dim))
            if total != v:
                raise FanError(f"r_I is not a ray sum of its carrier cone for I={sorted(idx)}")
        F = star_subdivide(F, tau, tag=I)
    if check and not is_smooth(F):
        raise FanError("subdivision produced a non-unimodular cone")
    return F


# -- nested sets ---------------------------------------------------------------


def is_nested(members: Iterable[frozenset], H: Hypergraph) -> bool:
    B = atomic_closure(H)
    members = [frozenset(x) for x in members]
    full = B.full_set
    if any(x not in B or x == full for x in members):
        return False
    for a, b in combinations(members, 2):
        if a & b and not (a <= b or b <= a):
            return False
    for k in range(2, len(members) + 1):
        for sub in combinations(members, k):
            if all(not (a & b) for a, b in combinations(sub, 2)):
                if frozenset().union(*sub) in B:
                    return False
    return True


def nested_sets(H: Hypergraph, k: int | None = None) -> list[frozenset]:
    """All nested sets of the atomic closure of ``H`` (optionally of size ``k``).

    Each nested set is a frozenset of hyperedges; none contains the full set.
    Output order is deterministic (by size, then canonical hyperedge order).
    """
    B = atomic_closure(H)
    edges = [e for e in B.hyperedges if e != B.full_set]
    rank = {e: i for i, e in enumerate(edges)}
    limit = B.m - 1
    out: list[list[frozenset]] = []

    def compatible(chosen, x) -> bool:
        for y in chosen:
            if x & y and not (x <= y or y <= x):
                return False
        disjoint = [y for y in chosen if not (x & y)]
        # every pairwise-disjoint subfamily together with x must have a union outside B
        for r in range(1, len(disjoint) + 1):
            for sub in combinations(disjoint, r):
                if all(not (a & b) for a, b in combinations(sub, 2)):
                    if x.union(*sub) in B:
                        return False
        return True

    def rec(start, chosen):
        out.append(list(chosen))
        if len(chosen) == limit:
            return
        for i in range(start, len(edges)):
            x = edges[i]
            if compatible(chosen, x):
                chosen.append(x)
                rec(i + 1, chosen)
                chosen.pop()

    rec(0, [])
    result = [frozenset(c) for c in out if k is None or len(c) == k]
    result.sort(key=lambda c: (len(c), sorted(rank[e] for e in c)))
    return result
