"""Diagonal arrangements, their intersection lattices, shellings of the
associated complexes, and closed-form Betti predictions for genus 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial, prod
from typing import Iterable

from .complexes import ComplexError, SimplicialComplex, build_delta_u, order_complex
from .homology import HomologyProfile, homology
from .linalg import _normalize_chain
from .weights import WeightError, WeightVector, heavy_family, marks_of, require_two_heavy


@dataclass(frozen=True, order=True)
class SetPartition:
    """Partition of {1..r}; ``blocks`` are bitmasks sorted by lowest element."""

    blocks: tuple[int, ...]
    r: int

    @classmethod
    def from_blocks(cls, blocks: Iterable[int], r: int) -> "SetPartition":
        bs = tuple(sorted((b for b in blocks if b), key=lambda b: b & -b))
        if sum(bin(b).count("1") for b in bs) != r or _or(bs) != (1 << r) - 1:
            raise ValueError("blocks do not partition 1..r")
        return cls(bs, r)

    @classmethod
    def discrete(cls, r: int) -> "SetPartition":
        return cls(tuple(1 << i for i in range(r)), r)

    @classmethod
    def with_block(cls, block: int, r: int) -> "SetPartition":
        rest = [1 << i for i in range(r) if not block >> i & 1]
        return cls.from_blocks([block] + rest, r)

    @property
    def d(self) -> int:
        """Dimension of the diagonal subspace: the number of blocks."""
        return len(self.blocks)

    def refines(self, other: "SetPartition") -> bool:
        return all(any(b & ~c == 0 for c in other.blocks) for b in self.blocks)

    def join(self, other: "SetPartition") -> "SetPartition":
        blocks = list(self.blocks)
        for c in other.blocks:
            merged = c
            rest = []
            for b in blocks:
                if b & merged:
                    merged |= b
                else:
                    rest.append(b)
            blocks = rest + [merged]
        # merging may cascade; repeat until stable
        changed = True
        while changed:
            changed = False
            for i, j in combinations(range(len(blocks)), 2):
                if blocks[i] & blocks[j]:
                    blocks[i] |= blocks[j]
                    del blocks[j]
                    changed = True
                    break
        return SetPartition.from_blocks(blocks, self.r)

    def __str__(self) -> str:
        return "|".join("".join(map(str, marks_of(b))) for b in self.blocks)


def _or(xs):
    out = 0
    for x in xs:
        out |= x
    return out


@dataclass(frozen=True)
class IntersectionLattice:
    elements: tuple[SetPartition, ...]  # bottom first, then by decreasing d
    r: int

    @property
    def bottom(self) -> SetPartition:
        return self.elements[0]

    def less(self, p: SetPartition, q: SetPartition) -> bool:
        return p != q and p.refines(q)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, p) -> bool:
        return p in self.elements


def intersection_lattice(u) -> IntersectionLattice:
    """Join-closure of the one-heavy-block partitions, plus the bottom element."""
    u = WeightVector(u) if len(u) else None
    r = u.n if u is not None else 0
    bottom = SetPartition.discrete(r)
    gens = [SetPartition.with_block(A, r) for A in heavy_family(u)] if u is not None else []
    found = set(gens)
    frontier = list(gens)
    while frontier:
        new = []
        for p in frontier:
            for g in gens:
                q = p.join(g)
                if q not in found:
                    found.add(q)
                    new.append(q)
        frontier = new
    elems = [bottom] + sorted(found, key=lambda p: (-p.d, p.blocks))
    return IntersectionLattice(tuple(elems), r)


def interval_order_complex(L: IntersectionLattice, p: SetPartition) -> SimplicialComplex:
    """Order complex of the open interval (bottom, p)."""
    if p not in L:
        raise ComplexError(f"{p} is not in the lattice")
    if p == L.bottom:
        raise ComplexError("the bottom element has no open lower interval")
    inside = [q for q in L.elements[1:] if L.less(q, p)]
    return order_complex(inside, L.less)


def _direct_sum(profiles: Iterable[tuple[int, HomologyProfile]]) -> HomologyProfile:
    betti: dict = {}
    tors: dict = {}
    for shift, prof in profiles:
        for d, b, t in prof.groups:
            betti[d + shift] = betti.get(d + shift, 0) + b
            tors.setdefault(d + shift, []).extend(t)
    torsion = {d: tuple(f for f in _normalize_chain(ts) if f > 1) for d, ts in tors.items()}
    return HomologyProfile.from_dict(betti, torsion, True, "Z")


def gm_link_homology(u) -> HomologyProfile:
    """Reduced homology of the singularity link, assembled over the lattice.

    Each element p above the bottom contributes the reduced homology of its
    open lower interval shifted up by d(p); the empty interval has Z in
    degree -1.
    """
    if not len(u):
        return HomologyProfile()
    L = intersection_lattice(u)
    terms = []
    for p in L.elements[1:]:
        terms.append((p.d, homology(interval_order_complex(L, p), "Z", reduced=True)))
    return _direct_sum(terms)


def predicted_delta0_profile(w) -> HomologyProfile:
    """Reduced integral homology of the genus-0 space for w = (1, 1, ...)."""
    w = require_two_heavy(w)
    top = HomologyProfile.from_dict({w.n - 4: 1})
    return _direct_sum([(0, gm_link_homology(w.entries[2:])), (0, top)])


# --- shellings ---------------------------------------------------------------

@dataclass(frozen=True)
class ShellingOrder:
    """Facets in order, each a sorted tuple of vertex labels."""

    facets: tuple[tuple, ...]


def lex_facet_order(u) -> ShellingOrder:
    """Facets of the u-induced complex, lexicographic after sorting u ascending.

    Ties in u keep their original order. Facets are returned as tuples of the
    original marks 1..r.
    """
    u = WeightVector(u)
    order = sorted(range(u.n), key=lambda i: (u.entries[i], i))
    K = build_delta_u(u)
    if not K.empty_face:
        raise ComplexError("the u-induced complex has no facets")
    new_index = {old: new for new, old in enumerate(order)}
    facets = []
    for f in K.facets():
        marks = [K.labels[v] for v in f]
        facets.append(tuple(sorted((new_index[m - 1] for m in marks))))
    facets.sort()
    return ShellingOrder(tuple(tuple(order[i] + 1 for i in f) for f in facets))


def verify_shelling(K: SimplicialComplex, order: ShellingOrder) -> bool:
    """Check the nonpure shelling condition for the given facet order."""
    facets = [frozenset(f) for f in order.facets]
    actual = {frozenset(K.labels[v] for v in f) for f in K.facets()}
    if set(facets) != actual or len(facets) != len(actual):
        raise ComplexError("order does not list exactly the facets of K")
    for k in range(1, len(facets)):
        ck = facets[k]
        # vertices x whose removal leaves a face of an earlier facet
        good = {x for x in ck if any(ck - {x} <= facets[b] for b in range(k))}
        for a in range(k):
            if not any(x not in facets[a] for x in good):
                return False
    return True


# --- closed forms ----------------------------------------------------------

def heavy_light_prediction(m: int, k: int) -> tuple[int, int]:
    """(number of spheres, their dimension) for w = (1^m, eps^k), eps small."""
    if m < 2 or m + k < 4 or k < 0:
        raise WeightError(f"need m >= 2 and m + k >= 4, got m={m}, k={k}")
    return factorial(m - 2) * (m - 1) ** k, m + k - 4


def gaps_support(n: int, ell: int) -> set[int]:
    """Degrees carrying reduced homology for w = (1, 1, (1/ell)^(n-2))."""
    if n < 4 or ell < 2:
        raise WeightError(f"need n >= 4 and ell >= 2, got n={n}, ell={ell}")
    top = (n - 2) // (ell + 1)
    return {n - 4 - t * (ell - 1) for t in range(top + 1)} & set(range(n - 3))


def compositions(k: int, parts: int):
    """Ordered tuples of ``parts`` nonnegative integers summing to k."""
    if parts == 0:
        if k == 0:
            yield ()
        return
    if parts == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for rest in compositions(k - first, parts - 1):
            yield (first,) + rest


def rep_dimension(m: int, k: int) -> int:
    """Dimension of the top-homology representation as a sum of induced modules."""
    if m < 2:
        raise WeightError("need m >= 2")
    return sum(factorial(m - 2) * factorial(k) // prod(factorial(x) for x in lam)
               for lam in compositions(k, m - 1))


def disconnected_prediction(m: int, k: int) -> tuple[int, int]:
    """(number of spheres, dimension) for w = ((1/m)^(2m), eps^k)."""
    if k < 2 or m < 1:
        raise WeightError(f"need m >= 1 and k >= 2, got m={m}, k={k}")
    return comb(2 * m, m) // 2, k - 2


def heavy_light_weights(m: int, k: int, eps: Fraction | None = None) -> WeightVector:
    eps = Fraction(1, k + 1) if eps is None else Fraction(eps)
    return WeightVector([1] * m + [eps] * k)
