"""Sparse exact linear algebra: Smith normal form over Z and rank over F_p.

Matrices are column-sparse: ``cols[j]`` maps row index to a nonzero int.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from math import gcd


@dataclass
class SparseMatrix:
    nrows: int
    ncols: int
    cols: list = field(default_factory=list)  # list of {row: value}

    def __post_init__(self):
        if not self.cols:
            self.cols = [dict() for _ in range(self.ncols)]

    @classmethod
    def from_dense(cls, rows) -> "SparseMatrix":
        rows = [list(r) for r in rows]
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        cols = [{i: rows[i][j] for i in range(nr) if rows[i][j]} for j in range(nc)]
        return cls(nr, nc, cols)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                out[i][j] = v
        return out

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for col in other.cols:
            acc: dict = {}
            for k, b in col.items():
                for i, a in self.cols[k].items():
                    v = acc.get(i, 0) + a * b
                    if v:
                        acc[i] = v
                    else:
                        acc.pop(i, None)
            out.append(acc)
        return SparseMatrix(self.nrows, other.ncols, out)


def _eliminate(cols: list, unit, normalize=None):
    """Pivot on unit entries with a Markowitz-style choice.

    Returns (number of pivots, residual columns) where the residual columns
    hold no unit entries. ``cols`` is consumed.
    """
    work = {j: c for j, c in enumerate(cols) if c}
    rows: dict = {}
    for j, c in work.items():
        for i in c:
            rows.setdefault(i, set()).add(j)
    heap = [(len(c), j) for j, c in work.items()]
    heapq.heapify(heap)
    pivots = 0
    deferred = set()
    while heap:
        size, j = heapq.heappop(heap)
        col = work.get(j)
        if col is None or len(col) != size:
            continue
        best = None
        for i, v in col.items():
            if unit(v):
                cost = len(rows[i])
                if best is None or cost < best[0]:
                    best = (cost, i)
                    if cost == 1:
                        break
        if best is None:
            deferred.add(j)
            continue
        deferred.discard(j)
        r = best[1]
        pv = col[r]
        # clear row r from every other column: c_k -= (a_rk / pv) * c_j
        for k in rows[r]:
            if k == j:
                continue
            ck = work[k]
            f = ck[r] * pv  # pv is +-1 (or an F_p unit handled by normalize)
            if normalize is not None:
                f = normalize(ck[r], pv)
            for i, v in col.items():
                nv = ck.get(i, 0) - f * v
                if normalize is not None:
                    nv = normalize(nv)
                if nv:
                    if i not in ck:
                        rows[i].add(k)
                    ck[i] = nv
                else:
                    if i in ck:
                        del ck[i]
                        if i != r:
                            rows[i].discard(k)
            if ck:
                heapq.heappush(heap, (len(ck), k))
            else:
                del work[k]
                deferred.discard(k)
        for i in col:
            rows[i].discard(j)
        del rows[r]
        del work[j]
        pivots += 1
    residual = [c for c in work.values() if c]
    return pivots, residual


def _dense_snf(rows: list[list[int]]) -> list[int]:
    """Invariant factors of a small dense integer matrix."""
    A = [r[:] for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        # choose the smallest nonzero entry in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        for r in A:
            r[t], r[j] = r[j], r[t]
        done = False
        while not done:
            done = True
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    if q:
                        A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
                        done = False
                        break
            if not done:
                continue
            p = A[t][t]
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    if q:
                        for r in A:
                            r[j] -= q * r[t]
                    if A[t][j]:
                        for r in A:
                            r[t], r[j] = r[j], r[t]
                        done = False
                        break
            if not done:
                continue
            # the pivot must divide the whole remaining block
            p = A[t][t]
            for i in range(t + 1, m):
                if any(A[i][j] % p for j in range(t + 1, n)):
                    A[t] = [a + b for a, b in zip(A[t], A[i])]
                    done = False
                    break
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def smith_normal_form(M: SparseMatrix) -> tuple[int, list[int]]:
    """Rank and nonzero invariant factors d1 | d2 | ... of an integer matrix."""
    cols = [dict(c) for c in M.cols]
    units, residual = _eliminate(cols, lambda v: v == 1 or v == -1)
    factors = [1] * units
    if residual:
        row_ids = sorted({i for c in residual for i in c})
        pos = {r: k for k, r in enumerate(row_ids)}
        dense = [[0] * len(residual) for _ in row_ids]
        for j, c in enumerate(residual):
            for i, v in c.items():
                dense[pos[i]][j] = v
        factors += _dense_snf(dense)
    factors = _normalize_chain(factors)
    return len(factors), factors


def _normalize_chain(diag: list[int]) -> list[int]:
    """Turn a nonzero diagonal into a divisibility chain with the same cokernel."""
    d = sorted(abs(x) for x in diag if x)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
        d.sort()
    return d


def rank_mod_p(M: SparseMatrix, p: int) -> int:
    """Rank over the prime field F_p."""
    cols = []
    for c in M.cols:
        r = {i: v % p for i, v in c.items() if v % p}
        cols.append(r)

    def norm(a, pv=None):
        if pv is None:
            return a % p
        return a * pow(pv, -1, p) % p

    rank, residual = _eliminate(cols, lambda v: True, norm)
    assert not residual
    return rank
