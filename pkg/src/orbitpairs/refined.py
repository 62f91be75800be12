"""Counts of orbits of pairs restricted to a pair of element orbits.

The fiber count over the distinguished part is mechanized as a dynamic
program over the exact valuation class of each coordinate: every coordinate
contributes the solutions of one coset condition (v(x) >= a and
v(x - y) >= b with v(y) known), whose valuation distribution depends only
on (k, a, b, v(y)).  Two Moebius inversions (one on the quotient context,
one on the source lattice) then sharpen "at least" constraints to "exactly".
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Optional

from .errors import ContextMismatch
from .orbits import CanonicalSplit, alpha, canonical_split, orbit_size
from .posets import OrderIdeal, Partition, lattice
from .qpoly import ONE, QPolynomial, ZERO, monomial


@dataclass(frozen=True)
class ValuationProfile:
    """Counts of solutions per exact valuation w in 0..k (w = k is zero)."""

    k: int
    per_valuation: tuple[QPolynomial, ...]

    def total(self) -> QPolynomial:
        out = ZERO
        for c in self.per_valuation:
            out = out + c
        return out


@lru_cache(maxsize=None)
def coset_count(k: int, a: int, b: int, vy: Optional[int]) -> ValuationProfile:
    """Valuation distribution of {x in R/P^k : v(x) >= a, v(x - y) >= b}
    when v(y) = vy (vy=None encodes y = 0, i.e. valuation infinity)."""
    a = max(0, min(a, k))
    b = max(0, min(b, k))
    counts = [ZERO] * (k + 1)
    if vy is None or vy >= b:
        lvl = max(a, b)
        for w in range(lvl, k):
            counts[w] = monomial(k - w) - monomial(k - w - 1)
        counts[k] = ONE
    elif vy >= a:
        # v(x - y) >= b > vy forces v(x) = vy exactly; solutions form a
        # coset of P^b.
        counts[vy] = monomial(k - b)
    return ValuationProfile(k, tuple(counts))


def _clamped(b: Optional[int], row: int) -> int:
    return row if b is None else b


def s_count(split: CanonicalSplit, L: OrderIdeal, J: OrderIdeal) -> QPolynomial:
    """Number of elements of the distinguished part that lie in the
    submodule cut out by L and whose image in the quotient lies in the
    submodule cut out by J."""
    if not L.in_context(split.source):
        raise ContextMismatch(f"[{L}] not in context {split.source}")
    if not J.in_context(split.quotient):
        raise ContextMismatch(f"[{J}] not in the quotient context")
    pts = split.prime_parts
    s = len(pts)
    if s == 0:
        return ONE
    # Bottom coordinate: both constraints are plain valuation bounds.
    v_s, k_s = pts[-1].v, pts[-1].k
    a = _clamped(L.boundary(k_s), k_s)
    b = 0 if v_s == 0 else _clamped(J.boundary(v_s), v_s)
    state = list(coset_count(k_s, a, b, None).per_valuation)
    for i in range(s - 2, -1, -1):
        v_i, k_i = pts[i].v, pts[i].k
        v_n, k_n = pts[i + 1].v, pts[i + 1].k
        mu = v_i + k_n - v_n
        a = _clamped(L.boundary(k_i), k_i)
        b = _clamped(J.boundary(mu), mu)
        new_state = [ZERO] * (k_i + 1)
        for w_next, c in enumerate(state):
            if not c:
                continue
            vy = None if w_next == k_n else w_next + v_i - v_n
            prof = coset_count(k_i, a, b, vy)
            for w, cnt in enumerate(prof.per_valuation):
                if cnt:
                    new_state[w] = new_state[w] + c * cnt
        state = new_state
    total = ZERO
    for c in state:
        total = total + c
    return total


def exact_fiber_count(split: CanonicalSplit, L: OrderIdeal, J: OrderIdeal) -> QPolynomial:
    """Number of elements of the distinguished part lying in the submodule
    of L whose quotient image has invariant exactly J (Moebius inversion of
    s_count over the quotient lattice)."""
    lat = lattice(split.quotient)
    total = ZERO
    for Jp in lat.lower_interval(J):
        total = total + lat.mobius(Jp, J) * s_count(split, L, Jp)
    return total


def y_count(lam: Partition, I: OrderIdeal, J: OrderIdeal, K: OrderIdeal,
            L: OrderIdeal) -> QPolynomial:
    """Number of second elements with invariants (J, K) lying in the
    submodule cut out by L."""
    split = canonical_split(lam, I)
    if not all(L.contains(p) for p in K.max_points):
        return ZERO
    return exact_fiber_count(split, L, J) * orbit_size(split.lambda_dprime, K)


def refined_census(lam: Partition, I: OrderIdeal,
                   L: OrderIdeal) -> Dict[QPolynomial, QPolynomial]:
    """Map cardinality -> number of orbits of pairs with first member in the
    orbit of I and second member in the orbit of L."""
    split = canonical_split(lam, I)
    lat = lattice(lam)
    lowers = lat.lower_interval(L)
    mob = {Lp: lat.mobius(Lp, L) for Lp in lowers}
    fiber: Dict[tuple, QPolynomial] = {}
    groups: Dict[QPolynomial, QPolynomial] = {}
    for J in lattice(split.quotient).ideals:
        for K in lattice(split.lambda_dprime).ideals:
            cell = ZERO
            os_k = orbit_size(split.lambda_dprime, K)
            for Lp in lowers:
                if not all(Lp.contains(p) for p in K.max_points):
                    continue
                key = (J, Lp)
                f = fiber.get(key)
                if f is None:
                    f = fiber[key] = exact_fiber_count(split, Lp, J)
                cell = cell + mob[Lp] * f
            cell = cell * os_k
            if not cell:
                continue
            a = alpha(lam, I, J, K)
            groups[a] = groups.get(a, ZERO) + cell
    return {a: total.exact_div(a) for a, total in groups.items()}


def refined_total(lam: Partition, I: OrderIdeal, L: OrderIdeal) -> QPolynomial:
    """Number of orbits of pairs in orbit(I) x orbit(L)."""
    total = ZERO
    for n in refined_census(lam, I, L).values():
        total = total + n
    return total


def refined_matrix(lam: Partition) -> Dict[tuple[OrderIdeal, OrderIdeal], QPolynomial]:
    """Totals for every ordered pair of element orbits."""
    ideals = lattice(lam).ideals
    return {(I, L): refined_total(lam, I, L) for I in ideals for L in ideals}


def x_in_submodule(lam: Partition, I: OrderIdeal, J: OrderIdeal, K: OrderIdeal,
                   L: OrderIdeal) -> QPolynomial:
    """Number of second elements with invariants (J, K) lying exactly in the
    orbit of L (Moebius inversion of y_count over the source lattice)."""
    lat = lattice(lam)
    total = ZERO
    for Lp in lat.lower_interval(L):
        total = total + lat.mobius(Lp, L) * y_count(lam, I, J, K, Lp)
    return total
