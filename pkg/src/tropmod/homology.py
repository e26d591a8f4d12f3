"""Chain complexes and homology of simplicial complexes.

Boundary of a face (v0 < ... < vk) is sum_i (-1)^i (face without v_i). In the
reduced complex the augmentation sends every vertex to the empty face, which
sits in degree -1.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .complexes import CapacityError, ComplexError, SimplicialComplex
from .linalg import SparseMatrix, rank_mod_p, smith_normal_form

DEFAULT_MAX_CELLS = 2_000_000
LARGE_PRIME = 2_147_483_647


@dataclass(frozen=True)
class ChainComplex:
    """``boundaries[k]`` maps degree-k chains to degree-(k-1) chains.

    ``dims[k]`` is the rank of the chain group in degree k; degrees run from
    ``lo`` to ``lo + len(dims) - 1``.
    """

    lo: int
    dims: tuple[int, ...]
    boundaries: dict

    @property
    def hi(self) -> int:
        return self.lo + len(self.dims) - 1

    def dim(self, k: int) -> int:
        i = k - self.lo
        return self.dims[i] if 0 <= i < len(self.dims) else 0

    def boundary(self, k: int) -> SparseMatrix:
        b = self.boundaries.get(k)
        if b is None:
            return SparseMatrix(self.dim(k - 1), self.dim(k))
        return b

    def check_square_zero(self) -> bool:
        for k in range(self.lo + 1, self.hi + 1):
            if not self.boundary(k - 1).matmul(self.boundary(k)).is_zero():
                return False
        return True


@dataclass(frozen=True)
class HomologyProfile:
    """Homology degree by degree; only nonzero groups are stored.

    ``groups`` is a sorted tuple of ``(degree, betti, torsion)`` with torsion a
    tuple of invariant factors > 1.
    """

    groups: tuple = ()
    reduced: bool = True
    coeffs: str = "Z"

    @classmethod
    def from_dict(cls, betti: dict, torsion: dict | None = None, reduced=True, coeffs="Z"):
        torsion = torsion or {}
        degs = sorted(set(betti) | set(torsion))
        groups = tuple((d, betti.get(d, 0), tuple(torsion.get(d, ())))
                       for d in degs if betti.get(d, 0) or torsion.get(d))
        return cls(groups, reduced, coeffs)

    def betti(self, d: int) -> int:
        for deg, b, _ in self.groups:
            if deg == d:
                return b
        return 0

    def torsion(self, d: int) -> tuple:
        for deg, _, t in self.groups:
            if deg == d:
                return t
        return ()

    def betti_dict(self) -> dict:
        return {d: b for d, b, _ in self.groups if b}

    def support(self) -> set:
        return {d for d, _, _ in self.groups}

    def is_zero(self) -> bool:
        return not self.groups

    def is_torsion_free(self) -> bool:
        return all(not t for _, _, t in self.groups)

    def euler(self) -> int:
        return sum((-1) ** d * b for d, b, _ in self.groups)

    def betti_list(self, lo: int = 0, hi: int | None = None) -> list[int]:
        if hi is None:
            hi = max([d for d, _, _ in self.groups], default=lo)
        return [self.betti(d) for d in range(lo, hi + 1)]

    def same_groups(self, other: "HomologyProfile") -> bool:
        return self.groups == other.groups

    def __str__(self) -> str:
        if not self.groups:
            return "0"
        ring = "Z" if self.coeffs == "Z" else self.coeffs
        parts = []
        for d, b, t in self.groups:
            terms = []
            if b:
                terms.append(ring if b == 1 else f"{ring}^{b}")
            terms += [f"Z/{f}" for f in t]
            parts.append(f"H{d}=" + "+".join(terms))
        return ", ".join(parts)


def _check_size(K: SimplicialComplex, max_cells: int):
    total = sum(len(fs) for fs in K.faces)
    if total > max_cells:
        raise CapacityError(f"complex has {total} faces, cap is {max_cells}")


def boundary_matrices(K: SimplicialComplex, reduced: bool = True,
                      max_cells: int = DEFAULT_MAX_CELLS) -> ChainComplex:
    _check_size(K, max_cells)
    aug = reduced and K.empty_face
    lo = -1 if aug else 0
    dims = []
    if aug:
        dims.append(1)
    dims += [len(fs) for fs in K.faces]
    bds = {}
    if aug and K.faces:
        bds[0] = SparseMatrix(1, len(K.faces[0]), [{0: 1} for _ in K.faces[0]])
    for d in range(1, len(K.faces)):
        lower = K.index(d - 1)
        cols = []
        for f in K.faces[d]:
            col = {}
            for i in range(len(f)):
                col[lower[f[:i] + f[i + 1:]]] = -1 if i & 1 else 1
            cols.append(col)
        bds[d] = SparseMatrix(len(K.faces[d - 1]), len(K.faces[d]), cols)
    return ChainComplex(lo, tuple(dims), bds)


def _coeff_tag(coeffs) -> str:
    if coeffs in ("Z", "Q"):
        return coeffs
    if isinstance(coeffs, int) or (isinstance(coeffs, str) and coeffs.startswith("F")):
        p = int(coeffs[1:]) if isinstance(coeffs, str) else coeffs
        return f"F{p}"
    raise ValueError(f"unknown coefficient ring {coeffs!r}")


def chain_homology(C: ChainComplex, coeffs="Z", reduced: bool = True) -> HomologyProfile:
    """Homology of a chain complex of free abelian groups."""
    tag = _coeff_tag(coeffs)
    ranks = {}
    factors = {}
    for k in range(C.lo + 1, C.hi + 1):
        M = C.boundary(k)
        if tag in ("Z", "Q"):
            r, fs = smith_normal_form(M)
            ranks[k] = r
            factors[k] = [f for f in fs if f > 1]
        else:
            ranks[k] = rank_mod_p(M, int(tag[1:]))
    betti, torsion = {}, {}
    for k in range(C.lo, C.hi + 1):
        b = C.dim(k) - ranks.get(k, 0) - ranks.get(k + 1, 0)
        if b:
            betti[k] = b
        if tag == "Z" and factors.get(k + 1):
            torsion[k] = tuple(factors[k + 1])
    return HomologyProfile.from_dict(betti, torsion, reduced, tag)


def homology(K: SimplicialComplex, coeffs="Z", reduced: bool = True,
             max_cells: int = DEFAULT_MAX_CELLS) -> HomologyProfile:
    return chain_homology(boundary_matrices(K, reduced, max_cells), coeffs, reduced)


def betti_mod_p(K: SimplicialComplex, p: int, reduced: bool = True) -> dict:
    return homology(K, p, reduced).betti_dict()


def relative_homology(K: SimplicialComplex, L: SimplicialComplex, coeffs="Z",
                      max_cells: int = DEFAULT_MAX_CELLS) -> HomologyProfile:
    """Homology of C(K)/C(L). ``L`` must share the vertex indexing of ``K``."""
    if not any(L.faces):
        raise ComplexError("relative homology needs a nonempty subcomplex; "
                           "use absolute homology instead")
    if tuple(L.labels) != tuple(K.labels):
        raise ComplexError("subcomplex must use the same vertex labels")
    for f in L.all_faces():
        if f not in K:
            raise ComplexError(f"face {f} of L is not in K")
    _check_size(K, max_cells)
    keep = []
    for d in range(len(K.faces)):
        inL = L.index(d)
        keep.append([f for f in K.faces[d] if f not in inL])
    pos = [{f: i for i, f in enumerate(fs)} for fs in keep]
    bds = {}
    for d in range(1, len(keep)):
        cols = []
        for f in keep[d]:
            col = {}
            for i in range(len(f)):
                g = f[:i] + f[i + 1:]
                j = pos[d - 1].get(g)
                if j is not None:
                    col[j] = -1 if i & 1 else 1
            cols.append(col)
        bds[d] = SparseMatrix(len(keep[d - 1]), len(keep[d]), cols)
    C = ChainComplex(0, tuple(len(fs) for fs in keep), bds)
    return chain_homology(C, coeffs, reduced=False)


def _perm_sign(seq: Sequence[int]) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def invariant_chain_complex(K: SimplicialComplex, action: Sequence[int],
                            reduced: bool = True) -> ChainComplex:
    """Chains fixed by a simplicial involution given as a vertex map."""
    nv = len(K.labels)
    if sorted(action) != list(range(nv)):
        raise ComplexError("action is not a bijection of the vertices")
    if any(action[action[v]] != v for v in range(nv)):
        raise ComplexError("action is not an involution")
    # orbit representatives and the image (face, sign) of each face
    reps, img = [], []
    for d, fs in enumerate(K.faces):
        idx = K.index(d)
        r, im = [], {}
        for f in fs:
            moved = [action[v] for v in f]
            g = tuple(sorted(moved))
            if g not in idx:
                raise ComplexError("action is not simplicial")
            im[f] = (g, _perm_sign(moved))
        for f in fs:
            g, s = im[f]
            if g == f:
                if s == 1:
                    r.append(f)
            elif f < g:
                r.append(f)
        reps.append(r)
        img.append(im)
    aug = reduced and K.empty_face
    dims = ([1] if aug else []) + [len(r) for r in reps]
    bds = {}
    if aug and reps:
        # augmentation of f + s*sigma(f) is 1 + s = 2 on free orbits of vertices
        cols = []
        for (v,) in reps[0]:
            g, s = img[0][(v,)]
            cols.append({0: 1} if g == (v,) else {0: 2})
        bds[0] = SparseMatrix(1, len(reps[0]), cols)
    for d in range(1, len(reps)):
        pos = {f: i for i, f in enumerate(reps[d - 1])}
        cols = []
        for f in reps[d]:
            g, s = img[d][f]
            chain = {f: 1} if g == f else {f: 1, g: s}
            col = {}
            for face, c in chain.items():
                for i in range(len(face)):
                    h = face[:i] + face[i + 1:]
                    j = pos.get(h)
                    if j is not None:
                        v = col.get(j, 0) + c * (-1 if i & 1 else 1)
                        if v:
                            col[j] = v
                        else:
                            col.pop(j, None)
            cols.append(col)
        bds[d] = SparseMatrix(len(reps[d - 1]), len(reps[d]), cols)
    return ChainComplex(-1 if aug else 0, tuple(dims), bds)


def invariant_homology(K: SimplicialComplex, action: Sequence[int],
                       reduced: bool = False) -> HomologyProfile:
    """Rational homology of the chains fixed by an involution, i.e. H(K/G; Q)."""
    return chain_homology(invariant_chain_complex(K, action, reduced), "Q", reduced)


@dataclass(frozen=True)
class ComplexStats:
    f_vector: tuple
    reduced_euler: int
    components: int


def complex_stats(K: SimplicialComplex) -> ComplexStats:
    f = K.f_vector()
    chi = sum((-1) ** d * c for d, c in enumerate(f)) - (1 if K.empty_face else 0)
    return ComplexStats(f, chi, K.vertex_components())
