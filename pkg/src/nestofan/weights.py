"""Weight data, walls and chambers, exact chamber feasibility, and wall-crossing paths.

Index sets are frozensets of 1-based point labels. Two weight domains are
supported: ``"M0n"`` (0 < a_i <= 1, a_[n] > 2) and ``"Tdn"``
(0 < a_i <= 1, a_[n] > 1).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .exact import format_rational, parse_rational
from .lp import max_slack_point

M0N = "M0n"
TDN = "Tdn"
FINE = "fine"
COARSE = "coarse"

MAX_RESAMPLES = 32


class DomainError(ValueError):
    pass


class OnWallError(ValueError):
    def __init__(self, wall: frozenset, message: str | None = None):
        self.wall = wall
        super().__init__(message or f"weights lie on the wall a_I = 1 for I = {sorted(wall)}")


class NonGenericError(ValueError):
    pass


def in_domain(values, flavor: str = M0N) -> bool:
    if isinstance(values, WeightData):
        values, flavor = values.values, values.flavor
    vals = [Fraction(v) for v in values]
    if not vals or any(not (0 < v <= 1) for v in vals):
        return False
    return sum(vals) > (2 if flavor == M0N else 1)


@dataclass(frozen=True)
class WeightData:
    values: tuple
    flavor: str = M0N

    def __post_init__(self):
        if self.flavor not in (M0N, TDN):
            raise DomainError(f"unknown flavor {self.flavor!r}")
        vals = tuple(parse_rational(v) if isinstance(v, str) else Fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if not in_domain(vals, self.flavor):
            bound = 2 if self.flavor == M0N else 1
            raise DomainError(
                f"{[format_rational(v) for v in vals]} is outside the {self.flavor} domain "
                f"(need 0 < a_i <= 1 and sum > {bound})"
            )

    @property
    def n(self) -> int:
        return len(self.values)

    def a(self, I: Iterable[int]) -> Fraction:
        return sum((self.values[i - 1] for i in I), Fraction(0))

    def __ge__(self, other: "WeightData") -> bool:
        return all(x >= y for x, y in zip(self.values, other.values))

    def to_json(self) -> dict:
        return {"flavor": self.flavor, "values": [format_rational(v) for v in self.values]}

    @classmethod
    def from_json(cls, data: dict) -> "WeightData":
        return cls(tuple(parse_rational(v) for v in data["values"]), data.get("flavor", M0N))

    def __str__(self) -> str:
        return "(" + ",".join(format_rational(v) for v in self.values) + ")"


def plus(A: WeightData) -> WeightData:
    """Append a weight-1 point: D^T_{d,n} -> D_{0,n+1}."""
    if A.flavor != TDN:
        raise DomainError("plus() takes Tdn weight data")
    return WeightData(A.values + (Fraction(1),), M0N)


def wall_family(n: int, granularity: str = COARSE, flavor: str = M0N) -> list[frozenset]:
    """Index sets I of the walls a_I = 1.

    M0n: fine 2 <= |I| <= n-2, coarse 3 <= |I| <= n-2.
    Tdn: 2 <= |I| <= n-1 at either granularity (the slice a_{n+1} = 1 of
    the fine decomposition of D_{0,n+1}).
    """
    if granularity not in (FINE, COARSE):
        raise ValueError(f"unknown granularity {granularity!r}")
    if flavor == TDN:
        lo, hi = 2, n - 1
    else:
        lo, hi = (2 if granularity == FINE else 3), n - 2
    return [frozenset(c) for k in range(lo, hi + 1) for c in combinations(range(1, n + 1), k)]


def _wall_key(I):
    return (len(I), sorted(I))


@dataclass(frozen=True)
class ChamberSignature:
    n: int
    granularity: str
    flavor: str
    positive: frozenset

    def walls(self) -> list[frozenset]:
        return wall_family(self.n, self.granularity, self.flavor)

    def is_upset(self) -> bool:
        fam = self.walls()
        return all(J in self.positive for I in self.positive for J in fam if I <= J)

    def sorted_positive(self) -> list[list[int]]:
        return [sorted(I) for I in sorted(self.positive, key=_wall_key)]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "granularity": self.granularity,
            "flavor": self.flavor,
            "positive": self.sorted_positive(),
        }


def signature(A: WeightData, granularity: str = COARSE) -> ChamberSignature:
    pos = set()
    for I in wall_family(A.n, granularity, A.flavor):
        s = A.a(I)
        if s == 1:
            raise OnWallError(I)
        if s > 1:
            pos.add(I)
    return ChamberSignature(A.n, granularity, A.flavor, frozenset(pos))


def is_off_walls(A: WeightData, granularity: str = FINE) -> bool:
    return all(A.a(I) != 1 for I in wall_family(A.n, granularity, A.flavor))


# -- linear systems over chambers ---------------------------------------------


def _indicator(I, n, offset, width):
    row = [0] * width
    for i in I:
        row[offset + i - 1] = 1
    return row


def _chamber_rows(n, positive, granularity, flavor, offset, width):
    """Strict rows a.x < b describing the open chamber inside the open domain."""
    fam = wall_family(n, granularity, flavor)
    return _sign_rows(n, flavor, [I for I in fam if I in positive], [I for I in fam if I not in positive], offset, width)


def _sign_rows(n, flavor, positive, negative, offset, width):
    rows = []
    for i in range(n):
        lo = [0] * width
        lo[offset + i] = -1
        rows.append((lo, 0))
        hi = [0] * width
        hi[offset + i] = 1
        rows.append((hi, 1))
    total = [0] * width
    for i in range(n):
        total[offset + i] = -1
    rows.append((total, -2 if flavor == M0N else -1))
    for I in positive:
        rows.append(([-v for v in _indicator(I, n, offset, width)], -1))
    for I in negative:
        rows.append((_indicator(I, n, offset, width), 1))
    return rows


def partial_feasible_point(n: int, flavor: str, positive, negative):
    """Domain point with a_I > 1 on ``positive`` and a_I < 1 on ``negative``, or None."""
    res = max_slack_point(n, _sign_rows(n, flavor, positive, negative, 0, n))
    if res is None:
        return None
    x, s = res
    return WeightData(tuple(x), flavor), s


def _check_positive(n, positive, granularity, flavor):
    fam = set(wall_family(n, granularity, flavor))
    positive = frozenset(frozenset(I) for I in positive)
    bad = [sorted(I) for I in positive if I not in fam]
    if bad:
        raise ValueError(f"not walls of the {granularity} family: {bad}")
    return positive


def feasible_point(n: int, positive, granularity: str = COARSE, flavor: str = M0N):
    """Interior point of the chamber with the given positive walls, and its slack."""
    positive = _check_positive(n, positive, granularity, flavor)
    res = max_slack_point(n, _chamber_rows(n, positive, granularity, flavor, 0, n))
    if res is None:
        return None
    x, s = res
    return WeightData(tuple(x), flavor), s


def feasible_signature(n: int, flavor: str, positive, granularity: str = COARSE) -> WeightData | None:
    """Exact realizability: a witness with exactly these positive walls, or None."""
    res = feasible_point(n, positive, granularity, flavor)
    if res is None:
        return None
    A = res[0]
    assert signature(A, granularity).positive == frozenset(frozenset(I) for I in positive)
    return A


def geq_c_witness(A: WeightData, B: WeightData, granularity: str = COARSE):
    """Witnesses A' >= B' in the chambers of A and B, as (A', B', slack), or None.

    Comparability is imposed strictly (a'_i > b'_i), which loses nothing
    because both chambers are open.
    """
    if A.n != B.n or A.flavor != B.flavor:
        raise ValueError("weight data must share n and flavor")
    sa = signature(A, granularity)
    sb = signature(B, granularity)
    return _geq_witness_signatures(sa, sb)


def _geq_witness_signatures(sa: ChamberSignature, sb: ChamberSignature, use_filter: bool = True):
    if use_filter and not sa.positive >= sb.positive:
        return None
    n, g, fl = sa.n, sa.granularity, sa.flavor
    width = 2 * n
    rows = _chamber_rows(n, sa.positive, g, fl, 0, width) + _chamber_rows(n, sb.positive, g, fl, n, width)
    for i in range(n):
        row = [0] * width
        row[i] = -1
        row[n + i] = 1
        rows.append((row, 0))
    res = max_slack_point(width, rows)
    if res is None:
        return None
    x, s = res
    return WeightData(tuple(x[:n]), fl), WeightData(tuple(x[n:]), fl), s


def geq_c(A: WeightData, B: WeightData, granularity: str = COARSE) -> bool:
    """A >=_c B: exact joint feasibility, behind the signature-inclusion filter."""
    if A.n != B.n or A.flavor != B.flavor:
        raise ValueError("weight data must share n and flavor")
    sa = signature(A, granularity)
    sb = signature(B, granularity)
    if not sa.positive >= sb.positive:
        return False
    res = _geq_witness_signatures(sa, sb)
    return res is not None


def geq_c_signatures(sa: ChamberSignature, sb: ChamberSignature) -> bool:
    return _geq_witness_signatures(sa, sb) is not None


# -- perturbation and wall crossing ----------------------------------------------


def _jitter(vals, radius, rng):
    K = 10**6
    return tuple(v + Fraction(rng.randint(-K, K), K) * radius for v in vals)


def perturb_point(A: WeightData, slack: Fraction, rng: random.Random, granularity: str = COARSE) -> WeightData:
    """Random point of A's chamber near A, off every fine wall.

    ``slack`` is the margin by which A satisfies its strict chamber rows.
    """
    sig = signature(A, granularity)
    radius = Fraction(slack) / (4 * A.n)
    for _ in range(MAX_RESAMPLES):
        P = WeightData(_jitter(A.values, radius, rng), A.flavor)
        if is_off_walls(P, FINE) and signature(P, granularity) == sig:
            return P
    raise NonGenericError("could not move the point off the fine walls")


def crossing_path(Ap: WeightData, Bp: WeightData) -> list[tuple[frozenset, Fraction]]:
    """Fine walls met on the segment from Bp (t=0) to Ap (t=1), sorted by t."""
    if Ap.n != Bp.n or Ap.flavor != Bp.flavor:
        raise ValueError("weight data must share n and flavor")
    if not Ap >= Bp:
        raise ValueError("crossing_path needs Aprime >= Bprime componentwise")
    out = []
    for I in wall_family(Ap.n, FINE, Ap.flavor):
        a, b = Ap.a(I), Bp.a(I)
        if a == 1 or b == 1:
            raise OnWallError(I, f"endpoint on the fine wall a_I = 1 for I = {sorted(I)}")
        if b < 1 < a:
            out.append((I, (1 - b) / (a - b)))
    ts = [t for _, t in out]
    if len(set(ts)) != len(ts):
        raise NonGenericError("non-generic pair: two walls are crossed at the same parameter")
    out.sort(key=lambda p: p[1])
    return out


def generic_pair(A: WeightData, B: WeightData, seed: int = 0, granularity: str = COARSE):
    """A' >= B' in the chambers of A and B, off fine walls, with a tie-free path.

    Returns (A', B', path) or None when A >=_c B fails.
    """
    res = geq_c_witness(A, B, granularity)
    if res is None:
        return None
    Ap0, Bp0, s = res
    n = A.n
    sa, sb = signature(A, granularity), signature(B, granularity)
    rng = random.Random(seed)
    radius = s / (4 * n)
    for _ in range(MAX_RESAMPLES):
        try:
            Ap = WeightData(_jitter(Ap0.values, radius, rng), A.flavor)
            Bp = WeightData(_jitter(Bp0.values, radius, rng), A.flavor)
        except DomainError:
            continue
        if not (Ap >= Bp and is_off_walls(Ap) and is_off_walls(Bp)):
            continue
        if signature(Ap, granularity) != sa or signature(Bp, granularity) != sb:
            continue
        try:
            path = crossing_path(Ap, Bp)
        except NonGenericError:
            continue
        return Ap, Bp, path
    raise NonGenericError("no generic witness pair after bounded re-sampling")
