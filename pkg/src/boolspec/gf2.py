"""GF(2) linear algebra over parity masks.

Masks are Python ints used as bit vectors: bit i-1 encodes coordinate i
(coordinate 1 is the least significant bit). Canonical echelon form pivots
on the highest set bit of each row, with pivot bits cleared from all other
rows, so coset reduction below is a canonical-representative map.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DependentMasks, SizeGuard

# Exhaustive affine-subspace search is exponential in n.
EXACT_SEARCH_MAX_N = 10


class Gf2Basis:
    """Incremental basis of a subspace of GF(2)^n, kept in reduced echelon form."""

    __slots__ = ("_rows",)

    def __init__(self, masks: Iterable[int] = ()) -> None:
        self._rows: dict[int, int] = {}  # pivot bit position -> row mask
        for m in masks:
            self.add(m)

    @property
    def dim(self) -> int:
        return len(self._rows)

    def rows(self) -> tuple[int, ...]:
        return tuple(self._rows[p] for p in sorted(self._rows, reverse=True))

    def reduce(self, mask: int) -> int:
        """Canonical representative of mask's coset modulo the span."""
        for p, row in self._rows.items():
            if (mask >> p) & 1:
                mask ^= row
        return mask

    def contains(self, mask: int) -> bool:
        return self.reduce(mask) == 0

    def add(self, mask: int) -> bool:
        """Insert mask; returns True iff it enlarged the span."""
        m = self.reduce(mask)
        if m == 0:
            return False
        p = m.bit_length() - 1
        for q, row in self._rows.items():
            if (row >> p) & 1:
                self._rows[q] = row ^ m
        self._rows[p] = m
        return True

    def copy(self) -> "Gf2Basis":
        out = Gf2Basis()
        out._rows = dict(self._rows)
        return out


def rank_of(masks: Iterable[int]) -> int:
    """GF(2) dimension of the span; the zero mask contributes nothing."""
    return Gf2Basis(masks).dim


def reduce_mod(span: Gf2Basis, mask: int) -> int:
    return span.reduce(mask)


def gaussian_binomial(n: int, d: int) -> int:
    """Number of d-dimensional linear subspaces of GF(2)^n."""
    if d < 0 or d > n:
        return 0
    num = den = 1
    for i in range(d):
        num *= (1 << (n - i)) - 1
        den *= (1 << (d - i)) - 1
    return num // den


def enumerate_affine_subspaces(
    n: int, d: int, max_n: int = EXACT_SEARCH_MAX_N
) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield every d-dimensional affine subspace of GF(2)^n exactly once.

    Each subspace appears as (rows, offset): rows are an echelonized linear
    basis (highest-bit pivots, pivot columns exclusive), and the offset is
    the unique coset representative supported on non-pivot coordinates.
    """
    if not 0 <= d <= n:
        raise ValueError(f"need 0 <= d <= n, got n={n} d={d}")
    if n > max_n:
        raise SizeGuard(f"n={n} exceeds exact-search limit {max_n}")
    positions = range(n)
    for pivots in itertools.combinations(positions, d):
        pivot_set = set(pivots)
        nonpivot = [q for q in positions if q not in pivot_set]
        # free slots: (row index, bit position) with position below that row's pivot
        slots = [(i, q) for i, p in enumerate(pivots) for q in nonpivot if q < p]
        offsets = [sum(bits[j] << q for j, q in enumerate(nonpivot))
                   for bits in itertools.product((0, 1), repeat=len(nonpivot))]
        for pattern in range(1 << len(slots)):
            rows = [1 << p for p in pivots]
            for j, (i, q) in enumerate(slots):
                if (pattern >> j) & 1:
                    rows[i] |= 1 << q
            rows_t = tuple(rows)
            for off in offsets:
                yield rows_t, off


@dataclass(frozen=True)
class RestrictionMap:
    """Constraints chi_gamma(x) = b_gamma for an independent parity set.

    rows hold the reduced echelon form of the constraint system as
    (mask, beta) pairs with beta = (1 - b)/2, pivoting on the lowest-index
    coordinate of each mask. pivots/free list 1-based coordinates; free
    coordinates, in increasing order, index the quotient space.
    """

    n: int
    gamma: tuple[int, ...]
    b: tuple[int, ...]
    rows: tuple[tuple[int, int], ...]
    pivots: tuple[int, ...]
    free: tuple[int, ...]

    @property
    def codim(self) -> int:
        return len(self.gamma)

    def solve_index(self, zidx: int) -> int:
        """Map an index over the free coordinates to the full-space index."""
        x = 0
        for j, coord in enumerate(self.free):
            if (zidx >> j) & 1:
                x |= 1 << (coord - 1)
        for mask, beta in self.rows:
            pivot_bit = mask & -mask
            if beta ^ ((mask & x).bit_count() & 1):
                x |= pivot_bit
        return x

    def member(self, idx: int) -> bool:
        return all(((mask & idx).bit_count() & 1) == beta for mask, beta in self.rows)

    def lift(self, free_mask: int) -> int:
        """Embed a parity mask over the free coordinates into the full space."""
        out = 0
        for j, coord in enumerate(self.free):
            if (free_mask >> j) & 1:
                out |= 1 << (coord - 1)
        return out


def make_restriction(n: int, gamma: Sequence[int], signs: Sequence[int]) -> RestrictionMap:
    """Build a RestrictionMap, echelonizing the constraint system."""
    if len(gamma) != len(signs):
        raise ValueError("one sign per mask required")
    rows: list[tuple[int, int]] = []
    for g, s in zip(gamma, signs):
        if g <= 0 or g >= (1 << n):
            raise ValueError(f"mask {g:#x} out of range for n={n}")
        if s not in (1, -1):
            raise ValueError("signs must be +1 or -1")
        m, beta = g, (1 - s) // 2
        for rm, rb in rows:
            if m & (rm & -rm):
                m ^= rm
                beta ^= rb
        if m == 0:
            raise DependentMasks(f"mask {g:#x} is dependent on earlier masks")
        piv = m & -m
        rows = [(rm ^ m, rb ^ beta) if rm & piv else (rm, rb) for rm, rb in rows]
        rows.append((m, beta))
    rows.sort(key=lambda r: r[0] & -r[0])
    pivots = tuple((r[0] & -r[0]).bit_length() for r in rows)
    pivot_set = set(pivots)
    free = tuple(c for c in range(1, n + 1) if c not in pivot_set)
    return RestrictionMap(n=n, gamma=tuple(gamma), b=tuple(signs),
                          rows=tuple(rows), pivots=pivots, free=free)


def dual_constraints(w_rows: Sequence[int], offset: int, n: int) -> RestrictionMap:
    """Constraints whose solution set is the affine subspace offset + span(W).

    Returns n - dim(W) independent masks spanning the orthogonal complement
    of W, each with the sign it takes at the offset point.
    """
    basis = Gf2Basis(w_rows)
    if basis.dim != len(list(w_rows)):
        raise DependentMasks("W rows are not independent")
    rows = basis.rows()
    pivot_of = {row.bit_length() - 1: row for row in rows}
    gamma = []
    for q in range(n):
        if q in pivot_of:
            continue
        v = 1 << q
        for p, row in pivot_of.items():
            if (row >> q) & 1:
                v |= 1 << p
        gamma.append(v)
    signs = [-1 if (g & offset).bit_count() & 1 else 1 for g in gamma]
    return make_restriction(n, gamma, signs)
