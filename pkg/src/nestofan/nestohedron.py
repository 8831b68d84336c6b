"""The Minkowski-sum realization of a nestohedron: H-description and vertices.

The polytope is the sum of the simplices conv(e_j : j in J) over the
hyperedges J of the atomic closure. It lives in the hyperplane
x_[m] = |H^at| and is cut out by x_I >= #{J in H^at : J subset of I}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import format_rational, parse_rational, solve
from .fan import FanError, nested_sets
from .hypergraph import Hypergraph, _label_key, _normalize_label, atomic_closure, is_asc


@dataclass(frozen=True)
class HRep:
    vertices: tuple
    level: int
    inequalities: tuple  # (frozenset I, bound) pairs

    @property
    def ambient(self) -> int:
        return len(self.vertices)

    def bound(self, I) -> int:
        return dict(self.inequalities)[frozenset(I)]

    def satisfies(self, x) -> bool:
        coord = dict(zip(self.vertices, x))
        if sum(x) != self.level:
            return False
        return all(sum(coord[v] for v in I) >= b for I, b in self.inequalities)

    def tight(self, x) -> set[frozenset]:
        coord = dict(zip(self.vertices, x))
        return {I for I, b in self.inequalities if sum(coord[v] for v in I) == b}

    def to_json(self) -> dict:
        pos = {v: i for i, v in enumerate(self.vertices)}
        enc = lambda v: list(v) if isinstance(v, tuple) else v
        return {
            "vertices": [enc(v) for v in self.vertices],
            "level": self.level,
            "inequalities": [
                {"I": [enc(v) for v in sorted(I, key=pos.__getitem__)], "bound": b}
                for I, b in self.inequalities
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "HRep":
        verts = tuple(_normalize_label(v) for v in data["vertices"])
        ineqs = tuple(
            (frozenset(_normalize_label(v) for v in row["I"]), int(row["bound"]))
            for row in data["inequalities"]
        )
        return cls(verts, int(data["level"]), ineqs)


def h_rep(H: Hypergraph) -> HRep:
    B = atomic_closure(H)
    if not is_asc(B):
        raise FanError("atomic closure is not saturated and connected")
    edges = B.hyperedges
    ineqs = tuple((I, sum(1 for J in edges if J <= I)) for I in edges if I != B.full_set)
    return HRep(B.vertices, len(edges), ineqs)


def vertex_of_nested_set(H: Hypergraph, N) -> tuple[Fraction, ...]:
    """Solve x_J = bound(J) for J in N together with x_[m] = level."""
    rep = h_rep(H)
    N = [frozenset(J) for J in N]
    m = rep.ambient
    if len(N) != m - 1:
        raise FanError(f"a maximal nested set has {m - 1} members, got {len(N)}")
    bounds = dict(rep.inequalities)
    rows = [[1 if v in J else 0 for v in rep.vertices] for J in N] + [[1] * m]
    try:
        rhs = [bounds[J] for J in N] + [rep.level]
    except KeyError as exc:
        raise FanError(f"{sorted(exc.args[0], key=_label_key)} is not a proper hyperedge") from exc
    x = solve(rows, rhs)
    if x is None:
        raise FanError("singular system: input is not a nested set")
    return tuple(x)


def vertices(H: Hypergraph) -> dict:
    """Map each maximal nested set to its vertex; every vertex is checked feasible."""
    rep = h_rep(H)
    out = {}
    for N in nested_sets(H, rep.ambient - 1):
        x = vertex_of_nested_set(H, N)
        if not rep.satisfies(x):
            raise FanError(f"vertex {x} violates the H-description")
        out[N] = x
    return out


def vertices_to_json(H: Hypergraph, verts: dict) -> list:
    return [[format_rational(c) for c in x] for x in sorted(set(verts.values()))]


def vertices_from_json(rows) -> list[tuple[Fraction, ...]]:
    return [tuple(parse_rational(c) for c in row) for row in rows]
