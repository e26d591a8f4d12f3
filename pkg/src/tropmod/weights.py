"""Exact weight vectors, mark subsets and admissible splits.

Marks are numbered 1..n. Subsets of marks are stored as integer bitmasks,
mark ``i`` occupying bit ``i - 1``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence


class WeightError(ValueError):
    """Raised for malformed weight vectors or violated preconditions."""


class InvalidMarkError(WeightError):
    pass


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise WeightError(f"floating point weight {x!r} not allowed; use Fraction")
    return Fraction(x)


@dataclass(frozen=True)
class WeightVector:
    """An immutable tuple of rational weights in (0, 1]."""

    entries: tuple[Fraction, ...]

    def __init__(self, entries: Iterable):
        vals = tuple(_as_fraction(e) for e in entries)
        for i, v in enumerate(vals, 1):
            if not 0 < v <= 1:
                raise WeightError(f"weight w_{i} = {v} is not in (0, 1]")
        object.__setattr__(self, "entries", vals)

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def total(self) -> Fraction:
        return sum(self.entries, Fraction(0))

    def is_stable(self, genus: int) -> bool:
        return 2 * genus - 2 + self.total() > 0

    def require_stable(self, genus: int) -> None:
        if not self.is_stable(genus):
            raise WeightError(
                f"2*{genus} - 2 + sum(w) = {2 * genus - 2 + self.total()} is not positive")

    def __str__(self) -> str:
        return "(" + ", ".join(str(e) for e in self.entries) + ")"


def as_weights(w) -> WeightVector:
    return w if isinstance(w, WeightVector) else WeightVector(w)


# --- mark sets ---------------------------------------------------------------

def mask_of(marks: Iterable[int], n: int | None = None) -> int:
    """Bitmask of a collection of 1-based marks."""
    m = 0
    for i in marks:
        if i < 1 or (n is not None and i > n):
            raise InvalidMarkError(f"mark {i} out of range 1..{n}")
        m |= 1 << (i - 1)
    return m


def marks_of(mask: int) -> tuple[int, ...]:
    """Sorted 1-based marks of a bitmask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _check_mask(mask: int, n: int) -> None:
    if mask < 0 or mask >> n:
        raise InvalidMarkError(f"mark set {marks_of(mask) if mask >= 0 else mask} "
                               f"not contained in 1..{n}")


def subset_weight(A, w) -> Fraction:
    """Exact total weight of the marks in ``A`` (a bitmask or an iterable of marks)."""
    w = as_weights(w)
    if not isinstance(A, int):
        A = mask_of(A, w.n)
    _check_mask(A, w.n)
    total = Fraction(0)
    for i in marks_of(A):
        total += w.entries[i - 1]
    return total


def _weight_table(w: WeightVector, universe: int) -> dict[int, Fraction]:
    """Weights of every subset of ``universe``, built incrementally."""
    table = {0: Fraction(0)}
    for i in marks_of(universe):
        bit = 1 << (i - 1)
        wi = w.entries[i - 1]
        for s, v in list(table.items()):
            table[s | bit] = v + wi
    return table


def subsets_of(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` in increasing numeric order."""
    bits = [1 << (i - 1) for i in marks_of(mask)]
    subs = [0]
    for b in bits:
        subs += [s | b for s in subs]
    return iter(sorted(subs))


def heavy_family(w, restrict_to=None) -> list[int]:
    """Subsets of ``restrict_to`` whose weight exceeds 1, ordered by bitmask."""
    w = as_weights(w)
    if restrict_to is None:
        restrict_to = w.full
    elif not isinstance(restrict_to, int):
        restrict_to = mask_of(restrict_to, w.n)
    _check_mask(restrict_to, w.n)
    table = _weight_table(w, restrict_to)
    return sorted(s for s, v in table.items() if v > 1)


# --- splits --------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Split:
    """A bipartition of the marks, stored by the side not containing mark 1."""

    side: int
    n: int

    def __post_init__(self):
        full = (1 << self.n) - 1
        if self.side & 1:
            object.__setattr__(self, "side", full & ~self.side)
        _check_mask(self.side, self.n)
        if self.side == 0 or self.side == full:
            raise WeightError("a split needs two nonempty sides")

    @classmethod
    def from_marks(cls, marks: Iterable[int], n: int) -> "Split":
        return cls(mask_of(marks, n), n)

    @property
    def complement(self) -> int:
        return ((1 << self.n) - 1) & ~self.side

    def marks(self) -> tuple[int, ...]:
        return marks_of(self.side)

    def is_admissible(self, w) -> bool:
        w = as_weights(w)
        return subset_weight(self.side, w) > 1 and subset_weight(self.complement, w) > 1

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.marks())) + "}"


def admissible_splits(w) -> list[Split]:
    """Canonical splits with both sides of weight > 1, ordered by side bitmask.

    These are the vertices of the genus-0 complex.
    """
    w = as_weights(w)
    if w.n < 2:
        raise WeightError("need at least two marks")
    full = w.full
    # sides avoid mark 1
    table = _weight_table(w, full & ~1)
    total = w.total()
    out = []
    for side in sorted(table):
        if side == 0:
            continue
        ws = table[side]
        if ws > 1 and total - ws > 1:
            out.append(Split(side, w.n))
    return out


def sides_compatible(a: int, b: int, full: int) -> bool:
    """Two bipartitions (given by one side each) coexist in a tree."""
    ac = full & ~a
    bc = full & ~b
    return not (a & b) or not (a & bc) or not (ac & b) or not (ac & bc)


def splits_compatible(s1: Split, s2: Split) -> bool:
    if s1.n != s2.n:
        raise WeightError(f"splits on different mark counts {s1.n} and {s2.n}")
    return sides_compatible(s1.side, s2.side, (1 << s1.n) - 1)


def is_path_space(w) -> bool:
    """True iff the marks admit no tripartition into three parts of weight > 1."""
    w = as_weights(w)
    full = w.full
    table = _weight_table(w, full)
    total = w.total()
    heavy = [s for s, v in table.items() if v > 1]
    # order parts so that mark 1 lies in alpha; beta ranges over heavy subsets avoiding it
    for alpha in heavy:
        if not alpha & 1:
            continue
        rest = full & ~alpha
        if total - table[alpha] <= 2:
            continue
        for beta in subsets_of(rest):
            if beta and beta != rest and table[beta] > 1 and table[rest & ~beta] > 1:
                return False
    return True


class EdgeCase(enum.Enum):
    HEAVY_LOCUS_EMPTY = "heavy_locus_empty"
    HEAVY_LOCUS_ISOLATED_POINT = "heavy_locus_isolated_point"
    GENERIC = "generic"


def require_two_heavy(w) -> WeightVector:
    w = as_weights(w)
    if w.n < 2 or w.entries[0] != 1 or w.entries[1] != 1:
        raise WeightError(f"expected w = (1, 1, ...), got {w}")
    return w


def classify_edge_cases(w) -> EdgeCase:
    w = require_two_heavy(w)
    light = w.entries[2:]
    s = sum(light, Fraction(0))
    if s <= 1:
        return EdgeCase.HEAVY_LOCUS_EMPTY
    if all(s - t <= 1 for t in light):
        return EdgeCase.HEAVY_LOCUS_ISOLATED_POINT
    return EdgeCase.GENERIC


def weight_key(w) -> tuple[Fraction, ...]:
    """Permutation-invariant key: weights sorted descending."""
    return tuple(sorted(as_weights(w).entries, reverse=True))


def count_weight_one(w: Sequence[Fraction]) -> int:
    return sum(1 for x in w if x == 1)

