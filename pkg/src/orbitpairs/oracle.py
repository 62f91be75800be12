"""Ground-truth engine over explicit finite modules.

Builds the module of a given shape over Z/p^k coordinates, closes elements
(or pairs, diagonally) under a generating set of the automorphism group, and
compares every orbit statistic against the polynomial formulas evaluated at
q = p.  The generator set is an engineering construction, so a full-endos
mode that enumerates every invertible endomorphism acts as the authority on
any disagreement.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Literal

import numpy as np

from .errors import BudgetExceeded
from .orbits import n_lambda, orbit_census, orbit_size
from .posets import OrderIdeal, Partition, Point, lattice
from .refined import refined_total

ELEMENT_BUDGET = 2 ** 12
PAIR_BUDGET = 2 ** 20
ENDO_BUDGET = 2 ** 24


def valuation(x: int, k: int, p: int) -> int:
    """Largest e <= k with p**e dividing x; k for x = 0."""
    if not 0 <= x < p ** k:
        raise ValueError(f"residue {x} out of range for p^{k}")
    if x == 0:
        return k
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


@dataclass(frozen=True)
class ExplicitModule:
    """A concrete module: one residue coordinate per cyclic summand."""

    p: int
    exponents: tuple[int, ...]

    @classmethod
    def from_partition(cls, lam: Partition, p: int,
                       budget: int = ELEMENT_BUDGET) -> "ExplicitModule":
        mod = cls(p, lam.expand())
        if mod.size > budget:
            raise BudgetExceeded(f"|M| = {mod.size} exceeds budget {budget}")
        return mod

    @property
    def size(self) -> int:
        return self.p ** sum(self.exponents)

    @property
    def coordinate_sizes(self) -> tuple[int, ...]:
        return tuple(self.p ** k for k in self.exponents)

    def elements(self) -> np.ndarray:
        """(size, ncoords) array of all coordinate vectors, row i being the
        mixed-radix decoding of index i."""
        sizes = self.coordinate_sizes
        n = self.size
        out = np.empty((n, len(sizes)), dtype=np.int64)
        idx = np.arange(n)
        for i in range(len(sizes) - 1, -1, -1):
            out[:, i] = idx % sizes[i]
            idx //= sizes[i]
        return out

    def index_of(self, coords: Iterable[int]) -> int:
        idx = 0
        for c, s in zip(coords, self.coordinate_sizes):
            idx = idx * s + c
        return idx

    def ideal_of(self, coords: Iterable[int]) -> OrderIdeal:
        """Invariant ideal of an element: generated by one point
        (valuation, exponent) per nonzero coordinate."""
        gens = []
        for c, k in zip(coords, self.exponents):
            if c:
                gens.append(Point(valuation(c, k, self.p), k))
        return OrderIdeal.from_generators(gens)


@lru_cache(maxsize=None)
def _unit_generators(p: int, k: int) -> tuple[int, ...]:
    """Units whose multiplication generates (Z/p^k)^*; for p = 2 both -1
    and 5 are needed since the unit group is not cyclic for k >= 3."""
    n = p ** k
    if p == 2:
        return tuple(sorted({(n - 1) % n, 5 % n} - {1}))
    # Smallest unit of full multiplicative order.
    target = n // p * (p - 1)
    for u in range(2, n):
        if u % p == 0:
            continue
        order, acc = 1, u % n
        while acc != 1:
            acc = acc * u % n
            order += 1
        if order == target:
            return (u,)
    return ()


def aut_generators(module: ExplicitModule) -> List[np.ndarray]:
    """Generating set for the automorphism group, as coordinate matrices:
    per-coordinate unit multiplications plus, for each ordered coordinate
    pair (r, s), the transvection adding p**max(0, k_r - k_s) * x_s to x_r."""
    p, ks = module.p, module.exponents
    n = len(ks)
    gens = []
    for i, k in enumerate(ks):
        for u in _unit_generators(p, k):
            m = np.eye(n, dtype=np.int64)
            m[i, i] = u
            gens.append(m)
    for r in range(n):
        for s in range(n):
            if r == s:
                continue
            m = np.eye(n, dtype=np.int64)
            m[r, s] = p ** max(0, ks[r] - ks[s])
            gens.append(m)
    return gens


def endo_permutation(module: ExplicitModule, matrix: np.ndarray,
                     elements: np.ndarray = None) -> np.ndarray:
    """Index permutation (or non-bijective map) induced by a coordinate
    matrix acting as y_i = sum_j m[i, j] * x_j mod p^{k_i}."""
    if elements is None:
        elements = module.elements()
    mods = np.array(module.coordinate_sizes, dtype=np.int64)
    images = (elements @ matrix.T) % mods
    weights = np.ones(len(mods), dtype=np.int64)
    for i in range(len(mods) - 2, -1, -1):
        weights[i] = weights[i + 1] * mods[i + 1]
    return images @ weights


def invertible_endomorphisms(module: ExplicitModule) -> List[np.ndarray]:
    """Every invertible endomorphism, as an element-index permutation.
    Safety net for the generator-set construction."""
    p, ks = module.p, module.exponents
    n = len(ks)
    total = p ** sum(min(ki, kj) for ki in ks for kj in ks)
    if total > ENDO_BUDGET:
        raise BudgetExceeded(f"{total} endomorphisms exceed budget {ENDO_BUDGET}")
    elements = module.elements()
    slots = [(i, j, p ** max(0, ks[i] - ks[j]), p ** min(ks[i], ks[j]))
             for i in range(n) for j in range(n)]
    perms = []
    m = np.zeros((n, n), dtype=np.int64)

    def rec(t: int):
        if t == len(slots):
            perm = endo_permutation(module, m, elements)
            if len(np.unique(perm)) == module.size:
                perms.append(perm)
            return
        i, j, scale, count = slots[t]
        for c in range(count):
            m[i, j] = scale * c
            rec(t + 1)
        m[i, j] = 0

    rec(0)
    return perms


def _closure_labels(perms: Iterable[np.ndarray], n: int) -> np.ndarray:
    """Connected-component labels (minimum index per component) of the graph
    with an edge x -- perm(x) for every generator permutation."""
    labels = np.arange(n, dtype=np.int64)
    while True:
        prev = labels.copy()
        for perm in perms:
            np.minimum(labels, labels[perm], out=labels)
            np.minimum.at(labels, perm, labels)
        while True:
            jumped = labels[labels]
            if np.array_equal(jumped, labels):
                break
            labels = jumped
        if np.array_equal(labels, prev):
            return labels


@dataclass
class OrbitDescriptor:
    size: int
    representative: tuple
    ideal: OrderIdeal
    second_ideal: OrderIdeal = None  # pairs only


def _group_perms(module: ExplicitModule, mode: str) -> List[np.ndarray]:
    if mode == "full-endos":
        return invertible_endomorphisms(module)
    elements = module.elements()
    return [endo_permutation(module, g, elements) for g in aut_generators(module)]


def orbits(module: ExplicitModule, space: Literal["elements", "pairs"] = "elements",
           mode: str = "quick") -> List[OrbitDescriptor]:
    """Orbit decomposition of the module (or of pairs under the diagonal
    action), annotated with the invariant ideal(s) of a representative."""
    n = module.size
    perms = _group_perms(module, mode)
    elements = module.elements()
    if space == "elements":
        labels = _closure_labels(perms, n)
    elif space == "pairs":
        if n * n > PAIR_BUDGET:
            raise BudgetExceeded(f"pair space {n * n} exceeds budget {PAIR_BUDGET}")
        pair_perms = [(perm[:, None] * n + perm[None, :]).ravel() for perm in perms]
        labels = _closure_labels(pair_perms, n * n)
    else:
        raise ValueError(f"unknown space {space!r}")
    reps, counts = np.unique(labels, return_counts=True)
    out = []
    for rep, size in zip(reps.tolist(), counts.tolist()):
        if space == "elements":
            coords = tuple(elements[rep].tolist())
            out.append(OrbitDescriptor(size, coords, module.ideal_of(coords)))
        else:
            first = tuple(elements[rep // n].tolist())
            second = tuple(elements[rep % n].tolist())
            out.append(OrbitDescriptor(size, (first, second),
                                       module.ideal_of(first),
                                       module.ideal_of(second)))
    return out


def _check(name, expected, actual):
    return {"name": name, "expected": expected, "actual": actual,
            "pass": expected == actual}


def verify(lam: Partition, p: int, mode: str = "quick") -> dict:
    """Compare every counting formula against direct orbit enumeration at
    q = p.  Returns a JSON-ready report with one entry per check."""
    module = ExplicitModule.from_partition(lam, p)
    ideals = lattice(lam).ideals
    checks = []

    element_orbits = orbits(module, "elements", mode)
    checks.append(_check("element orbit count vs ideal count",
                         len(ideals), len(element_orbits)))
    sizes_by_ideal = {o.ideal: o.size for o in element_orbits}
    expected_sizes = {I: orbit_size(lam, I)(p) for I in ideals}
    checks.append(_check("element orbit sizes vs orbit size formula",
                         _render_map(expected_sizes), _render_map(sizes_by_ideal)))

    pair_orbits = orbits(module, "pairs", mode)
    checks.append(_check("pair orbit count vs n_lambda",
                         int(n_lambda(lam)(p)), len(pair_orbits)))

    expected_multiset: dict[int, int] = {}
    for I in ideals:
        scale = orbit_size(lam, I)(p)
        for a, cnt in orbit_census(lam, I).items():
            size = int(a(p)) * int(scale)
            expected_multiset[size] = expected_multiset.get(size, 0) + int(cnt(p))
    actual_multiset: dict[int, int] = {}
    for o in pair_orbits:
        actual_multiset[o.size] = actual_multiset.get(o.size, 0) + 1
    checks.append(_check("pair orbit size multiset vs census",
                         _render_map(expected_multiset), _render_map(actual_multiset)))

    actual_refined: dict[tuple, int] = {}
    for o in pair_orbits:
        key = (o.ideal, o.second_ideal)
        actual_refined[key] = actual_refined.get(key, 0) + 1
    expected_refined = {}
    for I in ideals:
        for L in ideals:
            c = int(refined_total(lam, I, L)(p))
            if c:
                expected_refined[(I, L)] = c
    checks.append(_check("refined pair counts per orbit pair",
                         _render_map(expected_refined), _render_map(actual_refined)))

    return {"partition": str(lam), "p": p, "mode": mode, "checks": checks,
            "pass": all(c["pass"] for c in checks)}


def _render_map(d: dict) -> dict:
    return {str(k): str(v) for k, v in sorted(d.items(), key=lambda e: str(e[0]))}
