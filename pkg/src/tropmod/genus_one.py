"""Genus-one weighted stable graphs and the rational chain complex of the
volume-one moduli space.

Cells are isomorphism classes of stable graphs; a cell with k+1 edges sits in
degree k and the single-vertex graph with no edges is the augmentation in
degree -1. Chains are oriented by an ordering of the edges, so a graph with an
automorphism acting oddly on its edges spans no rational chain.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import comb, factorial

from .complexes import CapacityError, build_delta0, suspend
from .homology import ChainComplex, HomologyProfile, chain_homology, homology
from .linalg import SparseMatrix
from .weights import WeightError, WeightVector, as_weights, subset_weight

MAX_GENUS1_MARKS = 7


@dataclass(frozen=True)
class MarkedGraph:
    genus: tuple[int, ...]
    marks: tuple[int, ...]  # bitmask of marks per vertex
    edges: tuple[tuple[int, int], ...]  # sorted endpoint pairs; loops are (v, v)
    n: int

    @property
    def num_vertices(self) -> int:
        return len(self.genus)

    def degree(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges)

    def first_betti(self) -> int:
        return len(self.edges) - self.num_vertices + 1

    def total_genus(self) -> int:
        return self.first_betti() + sum(self.genus)

    def is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for a, b in self.edges:
                if a == v and b not in seen:
                    seen.add(b)
                    stack.append(b)
                elif b == v and a not in seen:
                    seen.add(a)
                    stack.append(a)
        return len(seen) == self.num_vertices

    def is_stable(self, w: WeightVector) -> bool:
        return all(self.genus[v] > 0 or self.degree(v) + subset_weight(self.marks[v], w) > 2
                   for v in range(self.num_vertices))

    def is_cycle(self) -> bool:
        """Every vertex has genus 0 and degree 2 (a single cycle)."""
        return all(g == 0 for g in self.genus) and all(
            self.degree(v) == 2 for v in range(self.num_vertices))

    def has_heavy_vertex(self, w: WeightVector) -> bool:
        return any(subset_weight(m, w) > 1 for m in self.marks)

    def contract(self, i: int) -> "MarkedGraph":
        a, b = self.edges[i]
        rest = self.edges[:i] + self.edges[i + 1:]
        genus = list(self.genus)
        marks = list(self.marks)
        if a == b:
            genus[a] += 1
            return MarkedGraph(tuple(genus), tuple(marks), rest, self.n)
        genus[a] += genus[b]
        marks[a] |= marks[b]
        del genus[b], marks[b]

        def move(x):
            if x == b:
                x = a
            return x - 1 if x > b else x

        edges = tuple(tuple(sorted((move(x), move(y)))) for x, y in rest)
        return MarkedGraph(tuple(genus), tuple(marks), edges, self.n)


def _vertex_key(g: int, m: int):
    # marked vertices are pinned by their lowest mark; unmarked ones float
    return (0, (m & -m).bit_length(), g) if m else (1, 0, g)


def canonical_form(G: MarkedGraph) -> tuple[MarkedGraph, tuple[int, ...]]:
    """Lexicographically minimal relabeling and the vertex map old -> new."""
    nv = G.num_vertices
    order = sorted(range(nv), key=lambda v: _vertex_key(G.genus[v], G.marks[v]))
    fixed = [v for v in order if G.marks[v]]
    floating = [v for v in order if not G.marks[v]]
    best = None
    for perm in permutations(floating):
        if any(G.genus[perm[i]] > G.genus[perm[i + 1]] for i in range(len(perm) - 1)):
            continue
        seq = fixed + list(perm)
        newpos = [0] * nv
        for new, old in enumerate(seq):
            newpos[old] = new
        edges = tuple(sorted(tuple(sorted((newpos[a], newpos[b]))) for a, b in G.edges))
        if best is None or edges < best[0]:
            best = (edges, seq, tuple(newpos))
    edges, seq, newpos = best
    H = MarkedGraph(tuple(G.genus[v] for v in seq), tuple(G.marks[v] for v in seq), edges, G.n)
    return H, newpos


def _perm_parity(p) -> int:
    p = list(p)
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def _edge_image(G: MarkedGraph, newpos, target_edges) -> list[int] | None:
    """Index in ``target_edges`` of each edge of G under the vertex map; None if ambiguous."""
    where = {}
    for j, e in enumerate(target_edges):
        if e in where:
            return None
        where[e] = j
    return [where[tuple(sorted((newpos[a], newpos[b])))] for a, b in G.edges]


def is_degenerate(G: MarkedGraph) -> bool:
    """Some automorphism permutes the edges oddly. ``G`` must be canonical."""
    if len(set(G.edges)) != len(G.edges):
        # swapping two parallel edges (or two loops at one vertex) is odd
        return True
    nv = G.num_vertices
    floating = [v for v in range(nv) if not G.marks[v]]
    for perm in permutations(floating):
        newpos = list(range(nv))
        for src, dst in zip(floating, perm):
            newpos[src] = dst
        if any(G.genus[v] != G.genus[newpos[v]] for v in range(nv)):
            continue
        mapped = sorted(tuple(sorted((newpos[a], newpos[b]))) for a, b in G.edges)
        if tuple(mapped) != G.edges:
            continue
        if _perm_parity(_edge_image(G, newpos, G.edges)) < 0:
            return True
    return False


def _uncontractions(G: MarkedGraph):
    """All graphs that contract onto G along one new edge."""
    nv = G.num_vertices
    for v in range(nv):
        if G.genus[v] == 1:
            genus = list(G.genus)
            genus[v] = 0
            yield MarkedGraph(tuple(genus), G.marks, tuple(sorted(G.edges + ((v, v),))), G.n)
        ends = [(i, side) for i, e in enumerate(G.edges) for side in (0, 1) if e[side] == v]
        mark_bits = [1 << j for j in range(G.n) if G.marks[v] >> j & 1]
        new = nv
        for end_choice in product((0, 1), repeat=len(ends)):
            edges = [list(e) for e in G.edges]
            for (i, side), c in zip(ends, end_choice):
                if c:
                    edges[i][side] = new
            for mark_choice in product((0, 1), repeat=len(mark_bits)):
                m2 = sum(b for b, c in zip(mark_bits, mark_choice) if c)
                for genus_to_new in ((0, 1) if G.genus[v] else (0,)):
                    genus = list(G.genus) + [0]
                    if genus_to_new:
                        genus[v], genus[new] = 0, 1
                    marks = list(G.marks) + [m2]
                    marks[v] &= ~m2
                    es = [tuple(sorted(e)) for e in edges] + [(v, new)]
                    yield MarkedGraph(tuple(genus), tuple(marks), tuple(sorted(es)), G.n)


def _root_graph(w: WeightVector) -> MarkedGraph:
    return MarkedGraph((1,), (w.full,), (), w.n)


@lru_cache(maxsize=64)
def _all_levels(w: WeightVector) -> tuple[tuple[MarkedGraph, ...], ...]:
    if w.n > MAX_GENUS1_MARKS:
        raise CapacityError(f"genus-one enumeration is capped at {MAX_GENUS1_MARKS} marks")
    w.require_stable(1)
    levels = [(_root_graph(w),)]
    while True:
        seen = {}
        for G in levels[-1]:
            for H in _uncontractions(G):
                if not H.is_stable(w):
                    continue
                C, _ = canonical_form(H)
                seen.setdefault(C, None)
        if not seen:
            break
        levels.append(tuple(sorted(seen, key=lambda g: (g.num_vertices, g.genus, g.marks, g.edges))))
    return tuple(levels)


def enumerate_genus1_graphs(w, edge_count: int) -> list[MarkedGraph]:
    """Isomorphism classes of w-stable genus-one graphs with ``edge_count`` edges."""
    levels = _all_levels(as_weights(w))
    if edge_count < 0 or edge_count >= len(levels):
        return []
    return list(levels[edge_count])


@dataclass(frozen=True)
class GenusOneComplex:
    chain: ChainComplex
    cells: tuple  # cells[k + 1] are the degree-k basis graphs (k >= -1)

    def cells_in_degree(self, k: int) -> tuple:
        return self.cells[k + 1]


def _signed_contractions(G: MarkedGraph):
    """Yield (canonical face, sign) for each edge contraction of G."""
    for i in range(len(G.edges)):
        H = G.contract(i)
        C, newpos = canonical_form(H)
        img = _edge_image(H, newpos, C.edges)
        if img is None:
            yield C, 0
            continue
        yield C, (-1) ** i * _perm_parity(img)


def genus1_complex(w, keep=None) -> GenusOneComplex:
    """Rational cellular chains; ``keep`` optionally restricts to a subcomplex of cells."""
    w = as_weights(w)
    levels = _all_levels(w)
    cells = []
    for level in levels:
        cells.append(tuple(G for G in level if not is_degenerate(G) and (keep is None or keep(G))))
    pos = [{G: i for i, G in enumerate(cs)} for cs in cells]
    bds = {}
    for k in range(1, len(cells)):
        cols = []
        for G in cells[k]:
            col = {}
            for C, s in _signed_contractions(G):
                if not s:
                    continue
                j = pos[k - 1].get(C)
                if j is None:
                    if keep is None and not is_degenerate(C):
                        raise AssertionError(f"face {C} missing from enumeration")
                    continue
                v = col.get(j, 0) + s
                if v:
                    col[j] = v
                else:
                    col.pop(j, None)
            cols.append(col)
        bds[k - 1] = SparseMatrix(len(cells[k - 1]), len(cells[k]), cols)
    dims = tuple(len(c) for c in cells)
    while len(dims) > 1 and dims[-1] == 0:
        dims = dims[:-1]
    return GenusOneComplex(ChainComplex(-1, dims, bds), tuple(cells))


def genus1_chain_complex(w) -> ChainComplex:
    return genus1_complex(w).chain


def genus1_homology(w) -> HomologyProfile:
    """Reduced rational homology of the genus-one space."""
    return chain_homology(genus1_chain_complex(w), "Q", reduced=True)


def genus1_heavy_locus_homology(w) -> HomologyProfile:
    w = as_weights(w)
    sub = genus1_complex(w, keep=lambda G: G.has_heavy_vertex(w))
    return chain_homology(sub.chain, "Q", reduced=True)


def genus1_betti_prediction(m: int, k: int) -> HomologyProfile:
    """Closed-form reduced rational Betti numbers for w = (1^m, eps^k), k*eps < 1."""
    if m < 0 or k < 0 or m + k < 1:
        raise WeightError(f"need m, k >= 0 and m + k >= 1, got m={m}, k={k}")
    if m >= 2:
        if m + k < 3:
            betti = {}  # contractible for (m, k) = (2, 0)
        else:
            betti = {m + k - 1: factorial(m - 1) * m ** k // 2}
    elif m == 1:
        betti = {k: 1} if k and k % 2 == 0 else {}
    else:
        betti = {d: comb(k - 1, d) for d in range(2, k, 2)}
    return HomologyProfile.from_dict(betti, None, True, "Q")


def verify_double_suspension(w_short, w_long) -> bool:
    """Betti numbers of the double suspension of the genus-0 space on ``w_long``
    are twice those of the genus-one space on ``w_short``."""
    ws, wl = as_weights(w_short), as_weights(w_long)
    if (ws.n < 2 or ws.entries[:2] != (1, 1) or wl.n != ws.n + 1
            or wl.entries[:3] != (1, 1, 1) or wl.entries[3:] != ws.entries[2:]):
        raise WeightError("expected w_short = (1, 1, tail) and w_long = (1, 1, 1, tail)")
    if ws.n < 3:
        raise WeightError("tail must be nonempty: the weights after the first mark must sum to more than 1")
    genus0 = homology(suspend(suspend(build_delta0(wl))), "Q", reduced=True)
    genus1 = genus1_homology(ws)
    doubled = {d: 2 * b for d, b in genus1.betti_dict().items()}
    return genus0.betti_dict() == doubled
