"""Finite simplicial complexes built from weight vectors.

A complex stores its faces dimension by dimension as sorted tuples of vertex
indices into ``labels``. ``empty_face`` records whether the empty simplex is
present; it is for every ordinary complex, including the complex with no
vertices, whose reduced homology is Z in degree -1. Only the *void* complex
(no faces at all) has ``empty_face=False``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .weights import (
    Split,
    WeightError,
    WeightVector,
    admissible_splits,
    as_weights,
    heavy_family,
    is_path_space,
    marks_of,
    require_two_heavy,
    sides_compatible,
    subset_weight,
)

DEFAULT_MAX_FACES = 5_000_000


class CapacityError(RuntimeError):
    """A computation would exceed its configured resource cap."""


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class SimplicialComplex:
    labels: tuple
    faces: tuple  # faces[d] is a tuple of sorted (d+1)-tuples, lexicographically ordered
    empty_face: bool = True
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    @classmethod
    def from_faces(cls, labels: Sequence, faces: Iterable[Iterable[int]],
                   empty_face: bool = True) -> "SimplicialComplex":
        by_dim: dict[int, set] = {}
        has_empty = False
        for f in faces:
            t = tuple(sorted(f))
            if not t:
                has_empty = True
                continue
            by_dim.setdefault(len(t) - 1, set()).add(t)
        top = max(by_dim) if by_dim else -1
        out = tuple(tuple(sorted(by_dim.get(d, ()))) for d in range(top + 1))
        return cls(tuple(labels), out, empty_face or has_empty or bool(by_dim))

    @classmethod
    def from_facets(cls, labels: Sequence, facets: Iterable[Iterable[int]]) -> "SimplicialComplex":
        faces = set()
        for f in facets:
            f = tuple(sorted(f))
            for k in range(1, len(f) + 1):
                faces.update(combinations(f, k))
        return cls.from_faces(labels, faces)

    @classmethod
    def void(cls) -> "SimplicialComplex":
        return cls((), (), empty_face=False)

    @property
    def dim(self) -> int:
        if self.faces:
            return len(self.faces) - 1
        return -1 if self.empty_face else -2

    @property
    def num_vertices(self) -> int:
        return len(self.faces[0]) if self.faces else 0

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(fs) for fs in self.faces)

    def faces_of_dim(self, d: int) -> tuple:
        if d == -1:
            return ((),) if self.empty_face else ()
        if 0 <= d < len(self.faces):
            return self.faces[d]
        return ()

    def all_faces(self) -> Iterable[tuple]:
        for fs in self.faces:
            yield from fs

    def index(self, d: int) -> dict:
        """Map from d-face tuple to its position in ``faces[d]`` (cached)."""
        if self._index is None:
            object.__setattr__(self, "_index", {})
        idx = self._index.get(d)
        if idx is None:
            idx = {f: i for i, f in enumerate(self.faces_of_dim(d))}
            self._index[d] = idx
        return idx

    def __contains__(self, face) -> bool:
        t = tuple(sorted(face))
        if not t:
            return self.empty_face
        return t in self.index(len(t) - 1)

    def facets(self) -> list[tuple]:
        """Maximal faces, lexicographically ordered by vertex tuple."""
        covered = set()
        for d in range(len(self.faces) - 1, 0, -1):
            for f in self.faces[d]:
                for i in range(len(f)):
                    covered.add(f[:i] + f[i + 1:])
        out = [f for f in self.all_faces() if f not in covered]
        if not out and self.empty_face:
            out = [()]
        return sorted(out)

    def is_closed(self) -> bool:
        for d in range(1, len(self.faces)):
            lower = self.index(d - 1)
            for f in self.faces[d]:
                for i in range(len(f)):
                    if f[:i] + f[i + 1:] not in lower:
                        return False
        return True

    def labeled_faces(self) -> set[frozenset]:
        return {frozenset(self.labels[v] for v in f) for f in self.all_faces()}

    def subcomplex(self, keep: Callable[[tuple], bool]) -> "SimplicialComplex":
        """Faces satisfying ``keep``, with the vertex indexing of ``self`` unchanged.

        ``keep`` must be closed under passing to faces.
        """
        kept = [tuple(f for f in fs if keep(f)) for fs in self.faces]
        while kept and not kept[-1]:
            kept.pop()
        return SimplicialComplex(self.labels, tuple(kept), self.empty_face)

    def vertex_components(self) -> int:
        parent = list(range(len(self.labels)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.faces_of_dim(1):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        return len({find(v) for (v,) in self.faces_of_dim(0)})


def flag_complex(labels: Sequence, adjacent: Callable[[int, int], bool],
                 max_faces: int = DEFAULT_MAX_FACES) -> SimplicialComplex:
    """Clique complex of the graph on ``range(len(labels))``."""
    nv = len(labels)
    up = [0] * nv  # neighbours with larger index, as bitsets
    for i in range(nv):
        bits = 0
        for j in range(i + 1, nv):
            if adjacent(i, j):
                bits |= 1 << j
        up[i] = bits
    faces: list[list[tuple]] = []
    count = 0

    def extend(face: tuple, cand: int):
        nonlocal count
        d = len(face) - 1
        if d == len(faces):
            faces.append([])
        faces[d].append(face)
        count += 1
        if count > max_faces:
            raise CapacityError(f"flag complex exceeds {max_faces} faces")
        while cand:
            low = cand & -cand
            j = low.bit_length() - 1
            cand ^= low
            extend(face + (j,), cand & up[j])

    for v in range(nv):
        extend((v,), up[v])
    return SimplicialComplex(tuple(labels), tuple(tuple(fs) for fs in faces))


def order_complex(elements: Sequence, less: Callable, max_faces: int = DEFAULT_MAX_FACES
                  ) -> SimplicialComplex:
    """Complex of chains of a finite poset; faces are sorted by element index."""
    return flag_complex(elements,
                        lambda i, j: less(elements[i], elements[j]) or less(elements[j], elements[i]),
                        max_faces)


# --- genus zero ------------------------------------------------------------

def build_delta0(w, max_faces: int = DEFAULT_MAX_FACES) -> SimplicialComplex:
    """The volume-one genus-0 tropical moduli space as a flag complex on splits."""
    w = as_weights(w)
    if w.n < 3:
        raise WeightError("need n >= 3")
    w.require_stable(0)
    splits = admissible_splits(w)
    sides = [s.side for s in splits]
    full = w.full
    return flag_complex(splits, lambda i, j: sides_compatible(sides[i], sides[j], full),
                        max_faces)


@dataclass(frozen=True)
class StableTree:
    """A marked tree: ``marks[v]`` is the bitmask of marks at vertex ``v``."""

    marks: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    n: int

    def degree(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges)

    def leaves(self) -> list[int]:
        return [v for v in range(len(self.marks)) if self.degree(v) <= 1]

    def is_connected_acyclic(self) -> bool:
        nv = len(self.marks)
        if len(self.edges) != nv - 1:
            return False
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for a, b in self.edges:
                for x, y in ((a, b), (b, a)):
                    if x == v and y not in seen:
                        seen.add(y)
                        stack.append(y)
        return len(seen) == nv

    def validate(self, w) -> None:
        w = as_weights(w)
        union = 0
        for m in self.marks:
            if m & union:
                raise ComplexError("vertex mark sets overlap")
            union |= m
        if union != w.full:
            raise ComplexError("marks do not cover 1..n")
        if not self.is_connected_acyclic():
            raise ComplexError("not a tree")
        for v, m in enumerate(self.marks):
            if self.degree(v) + subset_weight(m, w) <= 2:
                raise ComplexError(f"vertex {v} with marks {marks_of(m)} is unstable")


def face_to_tree(face: Iterable[Split], w) -> StableTree:
    """Rebuild the unique tree whose edge splits are ``face``.

    Canonical sides avoid mark 1, so pairwise compatible sides form a laminar
    family; each side becomes a vertex hanging below the smallest side
    containing it, and the root carries mark 1.
    """
    w = as_weights(w)
    full = w.full
    sides = sorted({s.side for s in face}, key=lambda a: (bin(a).count("1"), a))
    for a, b in combinations(sides, 2):
        if not sides_compatible(a, b, full):
            raise ComplexError(f"incompatible splits {marks_of(a)} and {marks_of(b)}")
    nodes = [full] + sides  # index 0 is the root region
    parent = [None] * len(nodes)
    for i in range(1, len(nodes)):
        best = 0
        for j in range(1, len(nodes)):
            if j != i and nodes[i] & ~nodes[j] == 0 and nodes[j] != nodes[i]:
                if best == 0 or bin(nodes[j]).count("1") < bin(nodes[best]).count("1"):
                    best = j
        parent[i] = best
    marks = list(nodes)
    for i in range(1, len(nodes)):
        marks[parent[i]] &= ~nodes[i]
    tree = StableTree(tuple(marks), tuple((parent[i], i) for i in range(1, len(nodes))), w.n)
    tree.validate(w)
    return tree


def tree_vertex_marks(sides: Sequence[int], full: int) -> list[int]:
    """Mark sets at the vertices of the tree with the given (laminar) split sides."""
    sides = sorted(sides, key=lambda a: bin(a).count("1"))
    marks = [full] + list(sides)
    for i, a in enumerate(sides):
        # smallest strictly larger side containing a is its parent
        par = 0
        for j in range(i + 1, len(sides)):
            if a & ~sides[j] == 0 and sides[j] != a:
                par = j + 1
                break
        marks[par] &= ~a
    return marks


def build_heavy_locus(w, delta: SimplicialComplex | None = None) -> SimplicialComplex:
    """Faces whose tree has a vertex of weight > 1 away from marks 1 and 2."""
    w = require_two_heavy(w)
    if delta is None:
        delta = build_delta0(w)
    light = w.full & ~0b11
    table = {}
    for A in heavy_family(w, light):
        table[A] = True
    full = w.full
    sides = [s.side for s in delta.labels]

    def heavy_vertex(face):
        for m in tree_vertex_marks([sides[v] for v in face], full):
            if subset_weight(m & light, w) > 1:
                return True
        return False

    return delta.subcomplex(heavy_vertex)


def build_double_cover(w, max_faces: int = DEFAULT_MAX_FACES) -> SimplicialComplex:
    """Order complex of the subsets A with w(A) > 1 and w(A^c) > 1.

    Labels are the subsets themselves (bitmasks); ``double_cover_projection``
    sends each to its split.
    """
    w = as_weights(w)
    if not is_path_space(w):
        raise WeightError(f"{w} is not a path space; the double cover is undefined")
    total = w.total()
    elems = [A for A in heavy_family(w) if total - subset_weight(A, w) > 1]
    return order_complex(elems, lambda a, b: a != b and a & ~b == 0, max_faces)


def double_cover_projection(cover: SimplicialComplex, delta: SimplicialComplex) -> list[int]:
    """Vertex map of the 2:1 projection onto the genus-0 complex."""
    where = {s.side: i for i, s in enumerate(delta.labels)}
    out = []
    for A in cover.labels:
        n = delta.labels[0].n
        out.append(where[Split(A, n).side])
    return out


def build_rank_selected_flag(n: int, k: int, max_faces: int = DEFAULT_MAX_FACES
                             ) -> SimplicialComplex:
    """Order complex of the subsets A of an n-set with k <= |A| <= n - k."""
    if not 1 <= k <= n / 2:
        raise ComplexError(f"rank selection needs 1 <= k <= n/2, got n={n}, k={k}")
    elems = [A for A in range(1 << n) if k <= bin(A).count("1") <= n - k]
    return order_complex(elems, lambda a, b: a != b and a & ~b == 0, max_faces)


def build_delta_u(u) -> SimplicialComplex:
    """Complements of the heavy subsets of {1..r}; vertex labels are marks 1..r."""
    u = WeightVector(u)
    r = u.n
    full = u.full
    faces = [marks_of(full & ~A) for A in heavy_family(u)]
    if not faces:
        return SimplicialComplex.void()
    return SimplicialComplex.from_faces(
        list(range(1, r + 1)), [tuple(i - 1 for i in f) for f in faces])


def suspend(K: SimplicialComplex) -> SimplicialComplex:
    """Join with two points. The labels ``('apex', 0)`` and ``('apex', 1)`` are appended."""
    if not K.empty_face:
        return K
    nv = len(K.labels)
    a, b = nv, nv + 1
    faces = list(K.all_faces())
    for apex in (a, b):
        faces.append((apex,))
        faces.extend(f + (apex,) for f in K.all_faces())
    return SimplicialComplex.from_faces(K.labels + (("apex", 0), ("apex", 1)), faces)


def relabel_marks(K: SimplicialComplex, w, perm) -> list[int]:
    """Vertex bijection induced on a split complex by permuting marks.

    ``perm`` maps mark i to ``perm[i]`` (a dict or a 1-based sequence indexed
    from position 0). The permutation must preserve weights.
    """
    w = as_weights(w)
    if not isinstance(perm, dict):
        perm = {i + 1: p for i, p in enumerate(perm)}
    if sorted(perm) != list(range(1, w.n + 1)) or sorted(perm.values()) != list(range(1, w.n + 1)):
        raise WeightError("not a permutation of the marks")
    for i, j in perm.items():
        if w.entries[i - 1] != w.entries[j - 1]:
            raise WeightError(f"permutation sends mark {i} to {j} of different weight")
    where = {s.side: v for v, s in enumerate(K.labels)}
    image = []
    for s in K.labels:
        moved = 0
        for i in s.marks():
            moved |= 1 << (perm[i] - 1)
        image.append(where[Split(moved, w.n).side])
    for fs in K.faces:
        idx = set(fs)
        for f in fs:
            if tuple(sorted(image[v] for v in f)) not in idx:
                raise ComplexError("induced map is not a simplicial automorphism")
    return image


def connected_components(K: SimplicialComplex) -> list[SimplicialComplex]:
    """Each component as its own complex, vertices renumbered in original order."""
    verts = [v for (v,) in K.faces_of_dim(0)]
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in K.faces_of_dim(1):
        parent[find(a)] = find(b)
    groups: dict = {}
    for v in verts:
        groups.setdefault(find(v), []).append(v)
    out = []
    for members in sorted(groups.values()):
        pos = {v: i for i, v in enumerate(members)}
        faces = [tuple(pos[v] for v in f) for f in K.all_faces() if f[0] in pos]
        out.append(SimplicialComplex.from_faces([K.labels[v] for v in members], faces))
    return out
