"""Partitions, the fundamental poset, and order ideals.

Points of the fundamental poset are pairs (v, k) with 0 <= v < k, ordered by
(v, k) <= (v', k')  iff  v >= v' and k - v <= k' - v'.

An order ideal is stored context-free as the antichain of its maximal points,
so the same ideal object can be evaluated against several partitions (the
counting pipeline mixes three partition contexts per computation).  Boundary
valuations are derived on demand from the generators.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, NamedTuple, Optional

from .errors import MissingContext, NotComparable


class Point(NamedTuple):
    v: int
    k: int

    def __str__(self):
        return f"{self.v}:{self.k}"


def point(v: int, k: int) -> Point:
    if not 0 <= v < k:
        raise ValueError(f"point requires 0 <= v < k, got ({v}, {k})")
    return Point(v, k)


def point_leq(a: Point, b: Point) -> bool:
    """a <= b in the fundamental poset."""
    return a.v >= b.v and a.k - a.v <= b.k - b.v


class Partition:
    """Shape of a module: strictly decreasing parts with multiplicities."""

    __slots__ = ("pairs",)

    def __init__(self, pairs: Iterable[tuple[int, int]] = ()):
        pairs = tuple((int(p), int(m)) for p, m in pairs)
        for (p, m) in pairs:
            if p < 1 or m < 1:
                raise ValueError(f"bad partition pair ({p}, {m})")
        if any(pairs[i][0] <= pairs[i + 1][0] for i in range(len(pairs) - 1)):
            raise ValueError("parts must be strictly decreasing")
        self.pairs = pairs

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> "Partition":
        """Build from a plain list of parts in any order, e.g. [5, 4, 4, 2, 1]."""
        counts: dict[int, int] = {}
        for p in parts:
            counts[p] = counts.get(p, 0) + 1
        return cls(sorted(counts.items(), reverse=True))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse '5,4^2,2,1' or '5,4,4,2,1'; empty string is the empty partition."""
        text = text.strip()
        if not text:
            return cls()
        parts = []
        for chunk in text.split(","):
            chunk = chunk.strip()
            if "^" in chunk:
                base, _, mult = chunk.partition("^")
                parts.extend([int(base)] * int(mult))
            else:
                parts.append(int(chunk))
        return cls.from_parts(parts)

    @property
    def rows(self) -> tuple[int, ...]:
        """Distinct parts, largest first."""
        return tuple(p for p, _ in self.pairs)

    def mult(self, part: int) -> int:
        for p, m in self.pairs:
            if p == part:
                return m
        return 0

    @property
    def weight(self) -> int:
        return sum(p * m for p, m in self.pairs)

    @property
    def largest(self) -> int:
        return self.pairs[0][0] if self.pairs else 0

    def expand(self) -> tuple[int, ...]:
        """Weakly decreasing list of parts with multiplicity."""
        out = []
        for p, m in self.pairs:
            out.extend([p] * m)
        return tuple(out)

    def cap(self, m: int) -> "Partition":
        """Replace every multiplicity m_i by min(m_i, m)."""
        if m < 1:
            raise ValueError("cap must be positive")
        return Partition((p, min(mu, m)) for p, mu in self.pairs)

    def remove_one_of_each(self, parts: Iterable[int]) -> "Partition":
        """Delete one copy of each given part (each must be present)."""
        counts = dict(self.pairs)
        for p in parts:
            if counts.get(p, 0) < 1:
                raise ValueError(f"part {p} not available in {self}")
            counts[p] -= 1
        return Partition(sorted(((p, m) for p, m in counts.items() if m > 0),
                                reverse=True))

    def __eq__(self, other):
        return isinstance(other, Partition) and self.pairs == other.pairs

    def __hash__(self):
        return hash(self.pairs)

    def __bool__(self):
        return bool(self.pairs)

    def __str__(self):
        return ",".join(f"{p}^{m}" if m > 1 else str(p) for p, m in self.pairs)

    def __repr__(self):
        return f"Partition.parse({str(self)!r})"


def partitions_of(n: int) -> list[Partition]:
    """All partitions of n, in reverse lexicographic order on part lists."""
    if n < 0:
        raise ValueError("n must be non-negative")
    out: list[Partition] = []

    def rec(remaining: int, cap: int, acc: list[int]):
        if remaining == 0:
            out.append(Partition.from_parts(acc))
            return
        for part in range(min(cap, remaining), 0, -1):
            acc.append(part)
            rec(remaining - part, part, acc)
            acc.pop()

    rec(n, n, [])
    return out


class OrderIdeal:
    """An order ideal of the fundamental poset, stored as its antichain of
    maximal points (distinct rows; sorted by descending row)."""

    __slots__ = ("max_points",)

    def __init__(self, max_points: Iterable[Point] = ()):
        pts = sorted({Point(v, k) for v, k in max_points}, key=lambda p: -p.k)
        for a in pts:
            point(a.v, a.k)
            for b in pts:
                if a is not b and point_leq(a, b):
                    raise ValueError(f"{a} <= {b}: not an antichain")
        self.max_points = tuple(pts)

    @classmethod
    def from_generators(cls, gens: Iterable[Point]) -> "OrderIdeal":
        """Ideal generated by arbitrary points; keeps only the maximal ones."""
        gens = {Point(v, k) for v, k in gens}
        maximal = [g for g in gens
                   if not any(h != g and point_leq(g, h) for h in gens)]
        return cls(maximal)

    @classmethod
    def parse(cls, text: str) -> "OrderIdeal":
        """Parse a comma list of maximal points 'v:k', e.g. '1:4,0:1'."""
        text = text.strip()
        if not text:
            return cls()
        pts = []
        for chunk in text.split(","):
            v, _, k = chunk.strip().partition(":")
            pts.append(point(int(v), int(k)))
        return cls.from_generators(pts)

    def boundary(self, k: int) -> Optional[int]:
        """Least valuation of a point of the ideal in row k; None if the row
        misses the ideal (the EMPTY marker, acting as infinity)."""
        best: Optional[int] = None
        for g in self.max_points:
            v = max(g.v, k - g.k + g.v)
            if v < k and (best is None or v < best):
                best = v
        return best

    def contains(self, p: Point) -> bool:
        b = self.boundary(p.k)
        return b is not None and b <= p.v

    def is_subset_of(self, other: "OrderIdeal") -> bool:
        return all(other.contains(p) for p in self.max_points)

    def union(self, other: "OrderIdeal") -> "OrderIdeal":
        return OrderIdeal.from_generators(self.max_points + other.max_points)

    def intersect(self, other: "OrderIdeal", rows: Iterable[int] = None) -> "OrderIdeal":
        """Intersection, with boundaries evaluated on a finite row context."""
        if rows is None:
            raise MissingContext("intersect needs a finite row set")
        gens = []
        for k in rows:
            b1, b2 = self.boundary(k), other.boundary(k)
            if b1 is None or b2 is None:
                continue
            b = max(b1, b2)
            if b < k:
                gens.append(Point(b, k))
        return OrderIdeal.from_generators(gens)

    def weighted_size(self, lam: Partition) -> int:
        """Number of points of the ideal on the partition's rows, counted with
        multiplicity: sum of m_i * (lambda_i - boundary)."""
        total = 0
        for p, m in lam.pairs:
            b = self.boundary(p)
            if b is not None:
                total += m * (p - b)
        return total

    def in_context(self, lam: Partition) -> bool:
        """Membership in J(P)_lambda: all maximal points on rows of lambda."""
        rows = set(lam.rows)
        return all(p.k in rows for p in self.max_points)

    def __eq__(self, other):
        return isinstance(other, OrderIdeal) and self.max_points == other.max_points

    def __hash__(self):
        return hash(self.max_points)

    def __bool__(self):
        return bool(self.max_points)

    def __str__(self):
        return ",".join(str(p) for p in self.max_points)

    def __repr__(self):
        return f"OrderIdeal.parse({str(self)!r})"


EMPTY_IDEAL = OrderIdeal()


def enumerate_ideals(lam: Partition) -> list[OrderIdeal]:
    """All ideals of J(P)_lambda, via boundary profiles row by row.

    A profile assigns to the first t rows (largest first) boundary values
    that weakly decrease while the co-boundaries row - value also weakly
    decrease, with all later rows empty (which forces the last assigned
    value to dominate the next row length).
    """
    rows = lam.rows
    out = [EMPTY_IDEAL]

    def rec(i: int, prev_v: int, prev_c: int, acc: list[Point]):
        # acc covers rows[0..i-1]; either stop (remaining rows empty) or
        # assign a boundary to rows[i].
        if i == len(rows) or prev_v >= rows[i]:
            out.append(OrderIdeal.from_generators(acc))
            if i == len(rows):
                return
        k = rows[i]
        for v in range(min(prev_v, k - 1), -1, -1):
            if k - v > prev_c:
                break
            acc.append(Point(v, k))
            rec(i + 1, v, k - v, acc)
            acc.pop()

    for v0 in range(rows[0] - 1, -1, -1) if rows else ():
        rec(1, v0, rows[0] - v0, [Point(v0, rows[0])])
    return out


class IdealLattice:
    """The lattice J(P)_lambda with precomputed order and a Moebius memo."""

    def __init__(self, lam: Partition):
        self.partition = lam
        self.ideals = enumerate_ideals(lam)
        self.index = {I: i for i, I in enumerate(self.ideals)}
        n = len(self.ideals)
        self._below = [frozenset(j for j in range(n)
                                 if self.ideals[j].is_subset_of(self.ideals[i]))
                       for i in range(n)]
        self._mobius: dict[tuple[int, int], int] = {}

    def __len__(self):
        return len(self.ideals)

    def lower_interval(self, B: OrderIdeal) -> list[OrderIdeal]:
        """All ideals contained in B."""
        return [self.ideals[j] for j in sorted(self._below[self.index[B]])]

    def interval(self, A: OrderIdeal, B: OrderIdeal) -> list[OrderIdeal]:
        ia, ib = self.index[A], self.index[B]
        return [self.ideals[j] for j in sorted(self._below[ib])
                if ia in self._below[j]]

    def mobius(self, A: OrderIdeal, B: OrderIdeal) -> int:
        """Moebius function of the interval [A, B]."""
        ia, ib = self.index[A], self.index[B]
        if ia not in self._below[ib]:
            raise NotComparable(f"[{A}] is not contained in [{B}]")
        return self._mu(ia, ib)

    def _mu(self, ia: int, ib: int) -> int:
        if ia == ib:
            return 1
        key = (ia, ib)
        if key not in self._mobius:
            total = 0
            for ic in self._below[ib]:
                if ic != ib and ia in self._below[ic]:
                    total += self._mu(ia, ic)
            self._mobius[key] = -total
        return self._mobius[key]


@lru_cache(maxsize=None)
def lattice(lam: Partition) -> IdealLattice:
    """Shared per-partition lattice (ideals, order, Moebius memo)."""
    return IdealLattice(lam)


def mobius(lam: Partition, A: OrderIdeal, B: OrderIdeal) -> int:
    return lattice(lam).mobius(A, B)
