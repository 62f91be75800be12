"""Core counting engine.

Every automorphism orbit of elements of the module with shape lambda is
labelled by an order ideal I.  Fixing the canonical representative of that
orbit splits the module into a distinguished part (one cyclic summand per
maximal point of I) and the rest; stabilizer orbits of a second element are
then classified by a pair of ideals (J, K) over the derived contexts.  The
census groups the cell sizes by the common orbit cardinality and divides
exactly, giving the number of orbits per cardinality as a polynomial in q.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, MutableMapping, Optional

from .errors import ContextMismatch, DegreeMismatch, IdealOutOfContext
from .posets import OrderIdeal, Partition, Point, lattice
from .qpoly import ONE, QPolynomial, laurent_product, monomial


@dataclass(frozen=True)
class CanonicalSplit:
    """Decomposition data attached to a partition and an ideal.

    prime_parts are the maximal points (v_j, k_j) sorted by descending k;
    lambda_prime collects the rows k_j, lambda_dprime is the source shape
    with one copy of each k_j removed, and quotient is the shape of the
    distinguished part modulo the canonical representative.
    """

    source: Partition
    ideal: OrderIdeal
    prime_parts: tuple[Point, ...]
    lambda_prime: Partition
    lambda_dprime: Partition
    quotient: Partition


def _require_context(lam: Partition, I: OrderIdeal):
    if not I.in_context(lam):
        raise IdealOutOfContext(f"ideal [{I}] has maximal points off rows of {lam or 'empty'}")


@lru_cache(maxsize=None)
def orbit_size(lam: Partition, I: OrderIdeal) -> QPolynomial:
    """Cardinality of the orbit labelled by I, as a polynomial in q:
    q**[I] times (1 - q**-m_i) over the maximal rows.  Monic of degree [I]."""
    _require_context(lam, I)
    return laurent_product(I.weighted_size(lam),
                           [lam.mult(p.k) for p in I.max_points])


def submodule_size(lam: Partition, I: OrderIdeal) -> QPolynomial:
    """Cardinality q**[I] of the invariant submodule cut out by I's
    boundaries; I may come from another context."""
    return monomial(I.weighted_size(lam))


@lru_cache(maxsize=None)
def canonical_split(lam: Partition, I: OrderIdeal) -> CanonicalSplit:
    _require_context(lam, I)
    pts = I.max_points
    ks = [p.k for p in pts]
    lam_prime = Partition.from_parts(ks)
    lam_dprime = lam.remove_one_of_each(ks)
    qparts = [pts[j].v + pts[j + 1].k - pts[j + 1].v for j in range(len(pts) - 1)]
    if pts:
        qparts.append(pts[-1].v)
    quotient = Partition.from_parts(p for p in qparts if p > 0)
    return CanonicalSplit(lam, I, pts, lam_prime, lam_dprime, quotient)


def max_minus(K: OrderIdeal, J: OrderIdeal) -> tuple[Point, ...]:
    """Maximal points of K that are not absorbed anywhere inside J."""
    return tuple(p for p in K.max_points if not J.contains(p))


def sum_orbit_orbit(lam: Partition, I: OrderIdeal, J: OrderIdeal) -> list[OrderIdeal]:
    """Ideals K whose orbits make up orbit(I) + orbit(J).  Valid for residue
    fields with at least three elements (q >= 3); see sum_orbit_submodule
    for the unrestricted variant."""
    _require_context(lam, I)
    _require_context(lam, J)
    IJ = I.union(J)
    req = set(max_minus(I, J)) | set(max_minus(J, I))
    return [K for K in lattice(lam).ideals
            if K.is_subset_of(IJ) and req <= set(K.max_points)]


def sum_orbit_submodule(lam: Partition, I: OrderIdeal, J: OrderIdeal) -> list[OrderIdeal]:
    """Ideals K whose orbits make up orbit(I) + submodule(J); valid for
    every residue field size."""
    _require_context(lam, I)
    _require_context(lam, J)
    IJ = I.union(J)
    req = set(max_minus(I, J))
    return [K for K in lattice(lam).ideals
            if K.is_subset_of(IJ) and req <= set(K.max_points)]


def _check_cell(sp: CanonicalSplit, J: OrderIdeal, K: OrderIdeal):
    if not J.in_context(sp.quotient):
        raise ContextMismatch(f"[{J}] not in the quotient context {sp.quotient or 'empty'}")
    if not K.in_context(sp.lambda_dprime):
        raise ContextMismatch(f"[{K}] not in the complement context {sp.lambda_dprime or 'empty'}")


@lru_cache(maxsize=None)
def _alpha_core(lam_prime: Partition, lam_dprime: Partition,
                JK: OrderIdeal, required: frozenset) -> QPolynomial:
    total = QPolynomial()
    for K2 in lattice(lam_dprime).ideals:
        if K2.is_subset_of(JK) and required <= set(K2.max_points):
            total = total + orbit_size(lam_dprime, K2)
    return submodule_size(lam_prime, JK) * total


def alpha(lam: Partition, I: OrderIdeal, J: OrderIdeal, K: OrderIdeal) -> QPolynomial:
    """Cardinality of the stabilizer orbit of any second element with
    invariants (J, K); monic of degree [J union K] over lambda's rows."""
    sp = canonical_split(lam, I)
    _check_cell(sp, J, K)
    JK = J.union(K)
    return _alpha_core(sp.lambda_prime, sp.lambda_dprime, JK,
                       frozenset(max_minus(K, J)))


def x_count(lam: Partition, I: OrderIdeal, J: OrderIdeal, K: OrderIdeal) -> QPolynomial:
    """Number of second elements with invariants exactly (J, K)."""
    sp = canonical_split(lam, I)
    _check_cell(sp, J, K)
    if sp.prime_parts:
        fiber = monomial(sp.prime_parts[0].k - sp.prime_parts[0].v)
    else:
        fiber = ONE
    return fiber * orbit_size(sp.quotient, J) * orbit_size(sp.lambda_dprime, K)


def orbit_census(lam: Partition, I: OrderIdeal) -> Dict[QPolynomial, QPolynomial]:
    """Map from orbit cardinality to number of stabilizer orbits of that
    cardinality.  The total mass sum(alpha * N_alpha) is asserted to be
    q**|lambda| exactly."""
    sp = canonical_split(lam, I)
    groups: Dict[QPolynomial, QPolynomial] = {}
    for J in lattice(sp.quotient).ideals:
        for K in lattice(sp.lambda_dprime).ideals:
            a = alpha(lam, I, J, K)
            JK = J.union(K)
            if not a.is_monic() or a.degree != JK.weighted_size(lam):
                raise DegreeMismatch(
                    f"alpha cell ({I};{J};{K}) of {lam}: got {a}")
            groups[a] = groups.get(a, QPolynomial()) + x_count(lam, I, J, K)
    census = {a: total.exact_div(a) for a, total in groups.items()}
    mass = QPolynomial()
    for a, n in census.items():
        mass = mass + a * n
    if mass != monomial(lam.weight):
        raise DegreeMismatch(f"census mass for ({lam}; {I}) is {mass}")
    return census


def per_ideal_total(lam: Partition, I: OrderIdeal) -> QPolynomial:
    """Number of orbits of pairs whose first member has invariant I."""
    total = QPolynomial()
    for n in orbit_census(lam, I).values():
        total = total + n
    return total


_N_LAMBDA: Dict[Partition, QPolynomial] = {}


def n_lambda(lam: Partition,
             store: Optional[MutableMapping[Partition, QPolynomial]] = None,
             cap: bool = True) -> QPolynomial:
    """Number of automorphism orbits of pairs in the module of shape lambda,
    monic of degree lambda_1 with integer coefficients.

    Multiplicities are capped at 2 first (the count is invariant under the
    cap); pass cap=False to run the full computation, e.g. to check that
    invariance.  Results are memoized in `store` (module-level by default).
    """
    if store is None:
        store = _N_LAMBDA
    capped = lam.cap(2) if cap else lam
    if cap:
        cached = store.get(capped)
        if cached is not None:
            return cached
    total = QPolynomial()
    for I in lattice(capped).ideals:
        total = total + per_ideal_total(capped, I)
    if capped and (not total.is_monic() or total.degree != capped.largest
                   or not total.is_integer_coefficients()):
        raise DegreeMismatch(f"n_lambda({lam}) = {total} fails monic/degree check")
    if cap:
        store[capped] = total
    return total
