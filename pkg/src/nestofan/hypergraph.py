"""Finite hypergraphs, their structural predicates, graph tubes and inflation."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterable, Sequence


class HypergraphError(ValueError):
    pass


def _label_key(v):
    # integers and (i, k) pairs never mix inside one hypergraph
    return v if isinstance(v, tuple) else (v,)


def _normalize_label(v):
    if isinstance(v, (list, tuple)):
        return tuple(int(x) for x in v)
    return int(v) if not isinstance(v, bool) else v


@dataclass(frozen=True)
class Hypergraph:
    """A hypergraph on an ordered vertex set.

    Hyperedges are stored as frozensets in canonical order: size
    descending, then lexicographic on the sorted vertex lists.
    """

    vertices: tuple
    hyperedges: tuple

    def __init__(self, vertices: Iterable[Hashable], hyperedges: Iterable[Iterable[Hashable]]):
        verts = tuple(sorted(set(vertices), key=_label_key))
        if len(verts) == 0:
            raise HypergraphError("empty vertex set")
        vset = set(verts)
        edges = set()
        for e in hyperedges:
            e = frozenset(e)
            if not e:
                raise HypergraphError("empty hyperedge")
            if not e <= vset:
                raise HypergraphError(f"hyperedge {sorted(e, key=_label_key)} uses unknown vertices")
            edges.add(e)
        covered = frozenset().union(*edges) if edges else frozenset()
        if covered != vset:
            missing = sorted(vset - covered, key=_label_key)
            raise HypergraphError(f"hyperedges do not cover vertices {missing}")
        pos = {v: i for i, v in enumerate(verts)}
        ordered = sorted(edges, key=lambda e: (-len(e), sorted(pos[v] for v in e)))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "hyperedges", tuple(ordered))

    # -- basic accessors -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.vertices)

    @property
    def full_set(self) -> frozenset:
        return frozenset(self.vertices)

    def index(self, v) -> int:
        """1-based position of ``v`` in the vertex order."""
        return self.vertices.index(v) + 1

    def sorted_edge(self, e) -> list:
        pos = {v: i for i, v in enumerate(self.vertices)}
        return sorted(e, key=pos.__getitem__)

    def __contains__(self, edge) -> bool:
        return frozenset(edge) in self._edge_set

    @property
    def _edge_set(self) -> frozenset:
        s = self.__dict__.get("_cached_edge_set")
        if s is None:
            s = frozenset(self.hyperedges)
            object.__setattr__(self, "_cached_edge_set", s)
        return s

    def __len__(self) -> int:
        return len(self.hyperedges)

    def __repr__(self) -> str:
        edges = ", ".join("{" + ",".join(map(str, self.sorted_edge(e))) + "}" for e in self.hyperedges)
        return f"Hypergraph(vertices={list(self.vertices)}, hyperedges=[{edges}])"

    def eligible_edges(self) -> list[frozenset]:
        """Hyperedges that induce a subdivision: 2 <= |I| <= m - 1."""
        return [e for e in self.hyperedges if 2 <= len(e) < self.m]

    # -- JSON --------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "vertices": [list(v) if isinstance(v, tuple) else v for v in self.vertices],
            "hyperedges": [
                [list(v) if isinstance(v, tuple) else v for v in self.sorted_edge(e)]
                for e in self.hyperedges
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Hypergraph":
        try:
            verts = [_normalize_label(v) for v in data["vertices"]]
            edges = [[_normalize_label(v) for v in e] for e in data["hyperedges"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise HypergraphError(f"malformed hypergraph JSON: {exc}") from exc
        return cls(verts, edges)


@dataclass(frozen=True)
class HypergraphPartition:
    blocks: tuple

    def __len__(self) -> int:
        return len(self.blocks)

    def supports(self) -> list[frozenset]:
        return [b.full_set for b in self.blocks]


def hypergraph_on(m: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
    return Hypergraph(range(1, m + 1), edges)


def is_atomic(H: Hypergraph) -> bool:
    return all(frozenset([v]) in H for v in H.vertices)


def is_saturated(H: Hypergraph) -> bool:
    for a, b in combinations(H.hyperedges, 2):
        if a & b and (a | b) not in H:
            return False
    return True


def connected_components(H: Hypergraph) -> HypergraphPartition:
    """Finest hypergraph partition: classes of the transitive closure of overlap."""
    parent = {v: v for v in H.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in H.hyperedges:
        it = iter(e)
        root = find(next(it))
        for v in it:
            r = find(v)
            if r != root:
                parent[r] = root
    groups: dict = {}
    for v in H.vertices:
        groups.setdefault(find(v), []).append(v)
    blocks = []
    for verts in groups.values():
        vs = frozenset(verts)
        blocks.append(Hypergraph(verts, [e for e in H.hyperedges if e <= vs]))
    blocks.sort(key=lambda b: _label_key(b.vertices[0]))
    return HypergraphPartition(tuple(blocks))


def is_connected(H: Hypergraph) -> bool:
    return len(connected_components(H)) == 1


def is_asc(H: Hypergraph) -> bool:
    return is_atomic(H) and is_saturated(H) and is_connected(H)


def atomic_closure(H: Hypergraph) -> Hypergraph:
    return Hypergraph(H.vertices, list(H.hyperedges) + [[v] for v in H.vertices])


def graph_hypergraph(n: int, edges: Iterable[Sequence[int]]) -> Hypergraph:
    """Tubes of a connected simple graph on [n], the full vertex set included."""
    if n < 1:
        raise HypergraphError("graph needs at least one vertex")
    adj = {v: set() for v in range(1, n + 1)}
    for e in edges:
        u, w = e
        if u == w or u not in adj or w not in adj:
            raise HypergraphError(f"bad graph edge {e}")
        adj[u].add(w)
        adj[w].add(u)

    def induced_connected(subset) -> bool:
        subset = set(subset)
        start = next(iter(subset))
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v] & subset:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen == subset

    if not induced_connected(range(1, n + 1)):
        raise HypergraphError("graph is disconnected")
    tubes = [
        c for k in range(1, n + 1) for c in combinations(range(1, n + 1), k) if induced_connected(c)
    ]
    return hypergraph_on(n, tubes)


def inflate(H: Hypergraph, d) -> Hypergraph:
    """Replace vertex i by the block {(i,1),...,(i,d_i)}; add every singleton.

    ``d`` is a positive integer or one positive integer per vertex.
    Vertices of the result are pairs (i, k); ``H`` must be saturated and
    connected but need not be atomic.
    """
    if isinstance(d, int):
        d = (d,) * H.m
    d = tuple(d)
    if len(d) != H.m:
        raise HypergraphError("need one inflation factor per vertex")
    if any(not isinstance(x, int) or x <= 0 for x in d):
        raise HypergraphError("inflation factors must be positive integers")
    if not is_saturated(H) or not is_connected(H):
        raise HypergraphError("inflation needs a saturated, connected hypergraph")
    label = {v: i + 1 for i, v in enumerate(H.vertices)}
    blocks = {v: [(label[v], k) for k in range(1, dv + 1)] for v, dv in zip(H.vertices, d)}
    verts = [x for v in H.vertices for x in blocks[v]]
    edges = [[x] for x in verts]
    edges += [[x for v in e for x in blocks[v]] for e in H.hyperedges]
    return Hypergraph(verts, edges)


def relabel(H: Hypergraph, mapping: dict) -> Hypergraph:
    return Hypergraph([mapping[v] for v in H.vertices], [[mapping[v] for v in e] for e in H.hyperedges])
