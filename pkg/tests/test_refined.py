from itertools import product

import pytest

from orbitpairs.errors import ContextMismatch
from orbitpairs.orbits import (canonical_split, n_lambda, per_ideal_total,
                               x_count)
from orbitpairs.posets import OrderIdeal, Partition, lattice, partitions_of
from orbitpairs.qpoly import ONE, Q, QPolynomial, ZERO
from orbitpairs.refined import (coset_count, exact_fiber_count, refined_census,
                                refined_matrix, refined_total, s_count,
                                x_in_submodule, y_count)


def val(x, k, p):
    """Valuation of a residue mod p**k, with k for zero."""
    if x % p ** k == 0:
        return k
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def brute_coset_profile(k, a, b, y, p):
    """Per-valuation counts of {x mod p^k : v(x) >= a, v(x - y) >= b}."""
    counts = [0] * (k + 1)
    for x in range(p ** k):
        if val(x, k, p) >= a and val(x - y, k, p) >= b:
            counts[val(x, k, p)] += 1
    return counts


def clamped(boundary, row):
    return row if boundary is None else boundary


def brute_s_count(split, L, J, p):
    """Count elements of the distinguished part satisfying both submodule
    constraints by direct enumeration of coordinate vectors."""
    pts = split.prime_parts
    s = len(pts)
    if s == 0:
        return 1
    ranges = [range(p ** pt.k) for pt in pts]
    total = 0
    for coords in product(*ranges):
        ok = all(val(coords[i], pts[i].k, p) >= clamped(L.boundary(pts[i].k), pts[i].k)
                 for i in range(s))
        if not ok:
            continue
        for i in range(s):
            if i < s - 1:
                mu = pts[i].v + pts[i + 1].k - pts[i + 1].v
                c = coords[i] - p ** (pts[i].v - pts[i + 1].v) * coords[i + 1]
            else:
                mu = pts[i].v
                c = coords[i]
            if mu == 0:
                continue
            if val(c % p ** mu, mu, p) < clamped(J.boundary(mu), mu):
                ok = False
                break
        if ok:
            total += 1
    return total


class TestCosetCount:
    def test_against_brute_force(self):
        for p in (2, 3):
            for k in range(1, 5):
                for a in range(k + 1):
                    for b in range(k + 1):
                        for vy in [None] + list(range(k)):
                            y = 0 if vy is None else p ** vy
                            prof = coset_count(k, a, b, vy)
                            got = [c(p) for c in prof.per_valuation]
                            assert got == brute_coset_profile(k, a, b, y, p), \
                                (p, k, a, b, vy)

    def test_unit_multiple_of_y_is_irrelevant(self):
        p, k = 3, 3
        for vy in range(k):
            for u in (1, 2):
                prof = coset_count(k, 1, 2, vy)
                got = [c(p) for c in prof.per_valuation]
                assert got == brute_coset_profile(k, 1, 2, u * p ** vy, p)

    def test_total(self):
        prof = coset_count(3, 1, 0, None)
        assert prof.total() == Q ** 2
        assert coset_count(2, 0, 0, None).total() == Q ** 2


class TestSCount:
    def shapes(self):
        for p, n_max in ((2, 5), (3, 4)):
            for n in range(1, n_max + 1):
                for lam in partitions_of(n):
                    yield p, lam

    def test_against_brute_force(self):
        for p, lam in self.shapes():
            lat = lattice(lam)
            for I in lat.ideals:
                split = canonical_split(lam, I)
                for L in lat.ideals:
                    for J in lattice(split.quotient).ideals:
                        expected = brute_s_count(split, L, J, p)
                        assert s_count(split, L, J)(p) == expected, \
                            (p, str(lam), str(I), str(L), str(J))

    def test_context_mismatch(self):
        lam = Partition.parse("2,1")
        split = canonical_split(lam, OrderIdeal.parse("0:2"))
        with pytest.raises(ContextMismatch):
            s_count(split, OrderIdeal.parse("1:3"), OrderIdeal())
        with pytest.raises(ContextMismatch):
            s_count(split, OrderIdeal(), OrderIdeal.parse("1:3"))


class TestFiberAndYCount:
    def test_exact_fibers_partition_s_count(self):
        # Moebius inversion must recover the at-least counts when re-summed.
        lam = Partition.parse("4,2,1")
        lat = lattice(lam)
        for I in lat.ideals:
            split = canonical_split(lam, I)
            qlat = lattice(split.quotient)
            for L in lat.ideals:
                for J in qlat.ideals:
                    resummed = ZERO
                    for Jp in qlat.lower_interval(J):
                        resummed = resummed + exact_fiber_count(split, L, Jp)
                    assert resummed == s_count(split, L, J)

    def test_y_count_at_full_module_is_x_count(self):
        for n in range(1, 6):
            for lam in partitions_of(n):
                top = OrderIdeal.parse(f"0:{lam.largest}")
                for I in lattice(lam).ideals:
                    split = canonical_split(lam, I)
                    for J in lattice(split.quotient).ideals:
                        for K in lattice(split.lambda_dprime).ideals:
                            assert y_count(lam, I, J, K, top) == \
                                x_count(lam, I, J, K)

    def test_x_in_submodule_partitions_x_count(self):
        lam = Partition.parse("3,2")
        lat = lattice(lam)
        for I in lat.ideals:
            split = canonical_split(lam, I)
            for J in lattice(split.quotient).ideals:
                for K in lattice(split.lambda_dprime).ideals:
                    total = ZERO
                    for L in lat.ideals:
                        total = total + x_in_submodule(lam, I, J, K, L)
                    assert total == x_count(lam, I, J, K)


class TestRefinedCensus:
    def test_row_sums_recover_per_ideal_totals(self):
        for n in range(1, 6):
            for lam in partitions_of(n):
                lat = lattice(lam)
                grand = ZERO
                for I in lat.ideals:
                    row = ZERO
                    for L in lat.ideals:
                        row = row + refined_total(lam, I, L)
                    assert row == per_ideal_total(lam, I), (str(lam), str(I))
                    grand = grand + row
                assert grand == n_lambda(lam)

    def test_census_counts_are_integer_polynomials(self):
        lam = Partition.parse("3,1")
        lat = lattice(lam)
        for I in lat.ideals:
            for L in lat.ideals:
                for a, cnt in refined_census(lam, I, L).items():
                    assert a.is_monic()
                    assert cnt.is_integer_coefficients()

    def test_single_row_matrix(self):
        lam = Partition.parse("1")
        empty = OrderIdeal()
        full = OrderIdeal.parse("0:1")
        m = refined_matrix(lam)
        assert m[(empty, empty)] == ONE
        assert m[(empty, full)] == ONE
        assert m[(full, empty)] == ONE
        assert m[(full, full)] == Q - 1
