"""Spectral measures: weight, sparsity, rank, and the two entropy-style thresholds.

Everything is exact: weights and thresholds are Fractions, comparisons never
go through floats. Sparse entry points accept {mask: scaled coefficient}
dictionaries so that closed-form spectra far beyond the truth-table guard
can still be profiled.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .core import BooleanFunction, Spectrum, f2_degree, wht
from .gf2 import Gf2Basis


@dataclass(frozen=True)
class SpectralProfile:
    n: int
    delta: Fraction      # Pr[f = -1]
    k: int               # Fourier sparsity
    r: int               # GF(2) dimension of the support span
    kprime: Fraction     # 1 / min nonzero |fhat|
    kdprime: Fraction    # least t with dim(S_t) = r
    degf2: Optional[int]  # None when only a sparse spectrum was available
    degenerate: bool     # constant or +/- parity (k <= 1)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "delta": {"num": self.delta.numerator, "den": self.delta.denominator},
            "k": self.k,
            "r": self.r,
            "kprime": {"num": self.kprime.numerator, "den": self.kprime.denominator},
            "kdprime": {"num": self.kdprime.numerator, "den": self.kdprime.denominator},
            "degf2": self.degf2,
            "degenerate": self.degenerate,
        }


def _support_items(n: int, coeffs: Mapping[int, int]) -> list[tuple[int, int]]:
    items = [(int(m), int(c)) for m, c in coeffs.items() if c]
    items.sort()
    return items


def _magnitude_groups(items: Sequence[tuple[int, int]]) -> list[tuple[int, list[int]]]:
    """Support masks grouped by |c|, magnitudes descending, masks ascending."""
    by_mag: dict[int, list[int]] = {}
    for mask, c in items:
        by_mag.setdefault(abs(c), []).append(mask)
    return [(mag, sorted(by_mag[mag])) for mag in sorted(by_mag, reverse=True)]


def threshold_steps(n: int, coeffs: Mapping[int, int]) -> list[tuple[Fraction, int]]:
    """Step function t -> dim(S_t): one entry per distinct magnitude."""
    items = _support_items(n, coeffs)
    basis = Gf2Basis()
    steps = []
    for mag, masks in _magnitude_groups(items):
        for m in masks:
            basis.add(m)
        steps.append((Fraction(1 << n, mag), basis.dim))
    return steps


def threshold_dims(s: Spectrum) -> list[tuple[Fraction, int]]:
    supp = s.support()
    return threshold_steps(s.n, {int(m): int(s.coeffs[m]) for m in supp})


def rank_saturating_basis(n: int, coeffs: Mapping[int, int]) -> list[tuple[int, int]]:
    """A basis of the support span picked greedily by decreasing |c|.

    Every selected mask has |c| at least the magnitude attained when the
    dimension first reaches the full rank, so 1/|fhat| <= kdprime on it.
    """
    items = _support_items(n, coeffs)
    basis = Gf2Basis()
    chosen = []
    for _mag, masks in _magnitude_groups(items):
        for m in masks:
            if basis.add(m):
                chosen.append((m, abs(dict(items)[m])))
    return chosen


def profile_from_coeffs(
    n: int, coeffs: Mapping[int, int], degf2: Optional[int] = None
) -> SpectralProfile:
    items = _support_items(n, coeffs)
    if not items:
        raise ValueError("zero spectrum is not a Boolean function")
    scale = 1 << n
    c_empty = dict(items).get(0, 0)
    delta = Fraction(scale - c_empty, 2 * scale)
    k = len(items)
    if k == 1:
        mask = items[0][0]
        r = 0 if mask == 0 else 1
        kdprime = Fraction(0) if mask == 0 else Fraction(1)
        return SpectralProfile(n, delta, 1, r, Fraction(1), kdprime, degf2, True)
    steps = threshold_steps(n, coeffs)
    r = steps[-1][1]
    kprime = steps[-1][0]
    kdprime = next(t for t, dim in steps if dim == r)
    return SpectralProfile(n, delta, k, r, kprime, kdprime, degf2, False)


def profile_of_spectrum(s: Spectrum, degf2: Optional[int] = None) -> SpectralProfile:
    supp = s.support()
    return profile_from_coeffs(s.n, {int(m): int(s.coeffs[m]) for m in supp}, degf2)


def profile(f: BooleanFunction) -> SpectralProfile:
    return profile_of_spectrum(wht(f), degf2=f2_degree(f))
