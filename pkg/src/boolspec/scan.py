"""Exhaustive frontier scan over every Boolean function of a small arity.

The transform and the bit-level quantities are vectorized across all 2^(2^n)
functions at once; the per-function remainder (rank, threshold grouping,
inequality verdicts) runs in a tight integer loop. All verdicts compare
scaled integers, so the exhaustive checks are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np


@dataclass
class ScanRecord:
    index: int
    n: int
    w: int                      # number of -1 outputs
    k: int
    r: int
    kprime: Fraction
    kdprime: Fraction
    degf2: int
    kline: Optional[float]
    kprime_curve: Optional[float]
    kdprime_curve: Optional[float]
    chang_best: Optional[float]
    failures: list[str] = field(default_factory=list)

    def csv_row(self) -> str:
        def flt(x: Optional[float]) -> str:
            return "" if x is None else repr(x)
        return (f"{self.index},{self.w},{self.k},{self.r},"
                f"{self.kprime.numerator},{self.kprime.denominator},"
                f"{self.kdprime.numerator},{self.kdprime.denominator},"
                f"{self.degf2},{flt(self.kline)},{flt(self.kprime_curve)},"
                f"{flt(self.kdprime_curve)},{flt(self.chang_best)}")


CSV_HEADER = ("index,w,k,r,kprime_num,kprime_den,kdprime_num,kdprime_den,"
              "degf2,kline,kprime_curve,kdprime_curve,chang_best")


def _hadamard(n: int) -> np.ndarray:
    size = 1 << n
    idx = np.arange(size, dtype=np.uint32)
    pop = np.bitwise_count(idx[:, None] & idx[None, :])
    return np.where(pop & 1, -1, 1).astype(np.int64)


def _all_degrees(tables: np.ndarray, n: int) -> np.ndarray:
    """F2-degree of every table, via the packed subset transform."""
    size = 1 << n
    anf = tables.astype(np.int64).copy()
    for j in range(n):
        period = 2 << j
        block = (1 << (1 << j)) - 1
        repeat = ((1 << size) - 1) // ((1 << period) - 1)
        mask = np.int64(block * repeat)
        anf ^= (anf & mask) << (1 << j)
    anf &= np.int64((1 << size) - 1)
    deg = np.zeros(len(tables), dtype=np.int64)
    pc = [bin(pos).count("1") for pos in range(size)]
    for pos in range(size):
        deg = np.maximum(deg, np.where((anf >> pos) & 1, pc[pos], 0))
    return deg


def _rank(masks: list[int]) -> int:
    basis: list[int] = []
    for m in masks:
        for b in basis:
            if (m >> (b.bit_length() - 1)) & 1:
                m ^= b
        if m:
            basis.append(m)
    return len(basis)


def _steps_and_rank(supp: list[tuple[int, int]]) -> tuple[list[tuple[int, int]], int]:
    """[(magnitude, dim)] by descending magnitude, plus the final rank."""
    groups: dict[int, list[int]] = {}
    for mask, c in supp:
        groups.setdefault(abs(c), []).append(mask)
    basis: list[int] = []
    steps = []
    for mag in sorted(groups, reverse=True):
        for m in groups[mag]:
            for b in basis:
                if (m >> (b.bit_length() - 1)) & 1:
                    m ^= b
            if m:
                basis.append(m)
        steps.append((mag, len(basis)))
    return steps, len(basis)


def scan_function(index: int, n: int, coeffs: list[int], w: int, degf2: int,
                  check: bool = True) -> ScanRecord:
    """Profile + bound report + exact inequality verdicts for one function."""
    scale = 1 << n
    sq = scale * scale
    supp = [(m, c) for m, c in enumerate(coeffs) if c]
    k = len(supp)
    failures: list[str] = []
    if check and sum(c * c for _m, c in supp) != sq:
        failures.append("parseval")

    if k == 1:
        mask = supp[0][0]
        r = 0 if mask == 0 else 1
        kdp = Fraction(0) if mask == 0 else Fraction(1)
        return ScanRecord(index, n, w, 1, r, Fraction(1), kdp, degf2,
                          None, None, None, None, failures)

    if check:
        gran = 1 << (n + 1 - (k.bit_length() - 1))
        if any(abs(c) % gran for _m, c in supp):
            failures.append("granularity")

    steps, r = _steps_and_rank(supp)
    m_min = steps[-1][0]
    mk = next(mag for mag, dim in steps if dim == r)
    kprime = Fraction(scale, m_min)
    kdprime = Fraction(scale, mk)

    chang_best = None
    for mag, dim in steps:
        if dim <= 1:
            continue
        t = scale / mag
        if t * t <= dim:
            continue
        val = math.sqrt(dim) / (t * math.sqrt(math.log2(t * t / dim)))
        if chang_best is None or val > chang_best:
            chang_best = val
    logk = math.log2(k)
    kline = r * r / (k * logk * logk)
    kprime_curve = k * m_min * m_min / sq
    kdprime_curve = r * mk / (scale * logk)

    if check:
        abs_sum = sum(abs(c) for _m, c in supp)
        if k * w < scale:
            failures.append("k*delta>=1")
        if k > (1 << r):
            failures.append("log2k<=r")
        if k * m_min * m_min > sq:
            failures.append("sqrt(k)<=k'")
        if 2 * scale > k * m_min:
            failures.append("k'<=k/2")
        if r * mk * mk > sq:
            failures.append("sqrt(r)<=k''")
        if r * mk > 4 * scale * logk + 1e-9:
            failures.append("r/(4log2k)<=k''")
        if 4 * scale * w < (k - 1) * m_min * m_min:
            failures.append("delta>=(k-1)/4k'2")
        if abs_sum * abs_sum > 9 * k * w * scale:
            failures.append("l1<=3sqrt(k*delta)")
        # basis l1 over the rank-saturating greedy basis
        basis: list[int] = []
        basis_l1 = 0
        for mag in sorted({abs(c) for _m, c in supp}, reverse=True):
            for mask, c in supp:
                if abs(c) != mag:
                    continue
                mm = mask
                for b in basis:
                    if (mm >> (b.bit_length() - 1)) & 1:
                        mm ^= b
                if mm:
                    basis.append(mm)
                    basis_l1 += mag
            if len(basis) == r:
                break
        if basis_l1 > 4 * scale * logk + 1e-9:
            failures.append("basis_l1<=4log2k")
        level1 = sum(abs(c) for m, c in supp if m and m & (m - 1) == 0)
        if level1 > 4 * degf2 * scale:
            failures.append("level1<=4degf2")
        if 4 * w <= scale and level1 > 32 * w * degf2:
            failures.append("level1<=32*delta*degf2")

    return ScanRecord(index, n, w, k, r, kprime, kdprime, degf2,
                      kline, kprime_curve, kdprime_curve, chang_best, failures)


def iter_exhaustive(n: int, check: bool = True) -> Iterator[ScanRecord]:
    """Every function of arity n, in truth-table order. Needs n <= 4."""
    if n > 4:
        raise ValueError("exhaustive scan supports n <= 4 (2^32 tables at n = 5)")
    size = 1 << n
    total = 1 << size
    tables = np.arange(total, dtype=np.int64)
    bits = ((tables[:, None] >> np.arange(size)[None, :]) & 1).astype(np.int64)
    coeff_matrix = (1 - 2 * bits) @ _hadamard(n)
    weights = np.bitwise_count(tables.astype(np.uint64)).astype(np.int64)
    degrees = _all_degrees(tables, n)
    for i in range(total):
        yield scan_function(i, n, coeff_matrix[i].tolist(), int(weights[i]),
                            int(degrees[i]), check)


def scan_sampled(n: int, samples: int, seed: int, check: bool = True) -> Iterator[ScanRecord]:
    """Seeded random sample of functions for arities past the exhaustive cap."""
    import random

    from .core import BooleanFunction, f2_degree, wht
    rng = random.Random(seed)
    for _ in range(samples):
        f = BooleanFunction.random(n, rng)
        s = wht(f)
        yield scan_function(f.table, n, s.coeffs.tolist(), f.minus_count,
                            f2_degree(f), check)
