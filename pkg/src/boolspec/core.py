"""Exact representations of Boolean functions on the +/-1 hypercube.

A function f: {-1,1}^n -> {-1,1} is stored as a bit-packed truth table:
bit idx of `table` is 1 iff f(x) = -1, where idx encodes x little-endian
with b_i = (1 - x_i)/2 (coordinate 1 is the least significant bit).
Spectra hold the integer-scaled coefficients c_S = 2^n * fhat(S); all
identities about them are exact, so no floats appear in this module.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import gf2
from .errors import NotBoolean, SingularMatrix, SizeGuard
from .gf2 import RestrictionMap, make_restriction

DEFAULT_MAX_N = 22


def max_arity() -> int:
    """Largest allowed arity; override with BOOLSPEC_MAX_N."""
    value = os.environ.get("BOOLSPEC_MAX_N")
    return int(value) if value else DEFAULT_MAX_N


def _check_arity(n: int) -> None:
    if n < 0:
        raise ValueError("arity must be nonnegative")
    if n > max_arity():
        raise SizeGuard(f"arity {n} exceeds guard {max_arity()} (set BOOLSPEC_MAX_N)")


def _bits_to_int(bits: np.ndarray) -> int:
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def _int_to_bits(value: int, length: int) -> np.ndarray:
    nbytes = (length + 7) // 8
    raw = np.frombuffer(value.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:length]


@dataclass(frozen=True)
class BooleanFunction:
    n: int
    table: int  # bit idx set iff f(x) = -1

    def __post_init__(self) -> None:
        _check_arity(self.n)
        if self.table < 0 or self.table >> (1 << self.n):
            raise ValueError("table does not fit in 2^n bits")

    @classmethod
    def from_values(cls, n: int, values: Sequence[int] | np.ndarray) -> "BooleanFunction":
        arr = np.asarray(values)
        if arr.shape != (1 << n,):
            raise ValueError("need exactly 2^n values")
        if not np.all(np.abs(arr) == 1):
            raise ValueError("values must be +/-1")
        return cls(n, _bits_to_int((arr == -1).astype(np.uint8)))

    @classmethod
    def random(cls, n: int, rng: random.Random) -> "BooleanFunction":
        return cls(n, rng.getrandbits(1 << n))

    def bits(self) -> np.ndarray:
        """0/1 output table (1 means f = -1), index order."""
        return _int_to_bits(self.table, 1 << self.n)

    def values(self) -> np.ndarray:
        """+/-1 output table as int64, index order."""
        return 1 - 2 * self.bits().astype(np.int64)

    def value_at(self, idx: int) -> int:
        return -1 if (self.table >> idx) & 1 else 1

    @property
    def minus_count(self) -> int:
        return self.table.bit_count()

    @property
    def delta(self) -> Fraction:
        return Fraction(self.minus_count, 1 << self.n)

    def is_constant(self) -> bool:
        return self.table == 0 or self.table == (1 << (1 << self.n)) - 1


@dataclass(frozen=True, eq=False)
class Spectrum:
    n: int
    coeffs: np.ndarray  # int64, coeffs[mask] = sum_x f(x) chi_S(x)

    def __post_init__(self) -> None:
        coeffs = np.ascontiguousarray(self.coeffs, dtype=np.int64)
        if coeffs.shape != (1 << self.n,):
            raise ValueError("need exactly 2^n coefficients")
        coeffs.flags.writeable = False
        object.__setattr__(self, "coeffs", coeffs)

    def support(self) -> np.ndarray:
        """Masks with nonzero coefficient, ascending."""
        return np.nonzero(self.coeffs)[0]

    def fhat(self, mask: int) -> Fraction:
        return Fraction(int(self.coeffs[mask]), 1 << self.n)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Spectrum) and self.n == other.n
                and bool(np.array_equal(self.coeffs, other.coeffs)))


def _butterfly(a: np.ndarray) -> np.ndarray:
    size = a.shape[0]
    h = 1
    while h < size:
        a = a.reshape(-1, 2, h)
        left = a[:, 0, :].copy()
        a[:, 0, :] = left + a[:, 1, :]
        a[:, 1, :] = left - a[:, 1, :]
        a = a.reshape(size)
        h *= 2
    return a


def wht(f: BooleanFunction) -> Spectrum:
    """Scaled Walsh-Hadamard transform: coeffs[mask] = sum_x f(x) chi_S(x)."""
    return Spectrum(f.n, _butterfly(f.values()))


def inverse_wht(s: Spectrum) -> BooleanFunction:
    """Reconstruct the function; raises NotBoolean for invalid spectra."""
    scale = 1 << s.n
    v = _butterfly(s.coeffs.astype(np.int64).copy())
    bad = np.abs(v) != scale
    if np.any(bad):
        idx = int(np.nonzero(bad)[0][0])
        raise NotBoolean(f"reconstructed value {Fraction(int(v[idx]), scale)} at index {idx}")
    return BooleanFunction(s.n, _bits_to_int((v < 0).astype(np.uint8)))


_MOBIUS_MASKS: dict[int, tuple[int, ...]] = {}


def _mobius_masks(n: int) -> tuple[int, ...]:
    if n not in _MOBIUS_MASKS:
        total = 1 << n
        masks = []
        for j in range(n):
            period = 2 << j
            block = (1 << (1 << j)) - 1
            repeat = ((1 << total) - 1) // ((1 << period) - 1)
            masks.append(block * repeat)
        _MOBIUS_MASKS[n] = tuple(masks)
    return _MOBIUS_MASKS[n]


def f2_anf(f: BooleanFunction) -> int:
    """GF(2) multilinear coefficients of the 0/1 version, bit-packed by monomial mask."""
    a = f.table
    for j, mask in enumerate(_mobius_masks(f.n)):
        a ^= (a & mask) << (1 << j)
    return a & ((1 << (1 << f.n)) - 1)


def f2_degree(f: BooleanFunction) -> int:
    """Degree of the GF(2) polynomial of (1 - f)/2; constants give 0."""
    anf = f2_anf(f)
    if anf == 0:
        return 0
    monomials = np.nonzero(_int_to_bits(anf, 1 << f.n))[0]
    return int(np.max(np.bitwise_count(monomials.astype(np.uint64))))


def restrict(f: BooleanFunction, rmap: RestrictionMap) -> BooleanFunction:
    """Quotient function on the free coordinates of the affine subspace."""
    if rmap.n != f.n:
        raise ValueError("restriction map arity mismatch")
    m = len(rmap.free)
    z = np.arange(1 << m, dtype=np.int64)
    x = np.zeros_like(z)
    for j, coord in enumerate(rmap.free):
        x |= ((z >> j) & 1) << (coord - 1)
    for mask, beta in rmap.rows:
        pivot_shift = (mask & -mask).bit_length() - 1
        par = (np.bitwise_count((x & mask).astype(np.uint64)).astype(np.int64) & 1) ^ beta
        x |= par << pivot_shift
    bits = f.bits()[x]
    return BooleanFunction(m, _bits_to_int(bits))


def xor_power(f: BooleanFunction, t: int) -> BooleanFunction:
    """Product of t disjoint copies: F(x1,..,xt) = f(x1) * ... * f(xt)."""
    if t < 1:
        raise ValueError("t must be >= 1")
    _check_arity(f.n * t)
    base = f.bits()
    cur = base
    for _ in range(t - 1):
        cur = (cur[:, None] ^ base[None, :]).ravel()
    return BooleanFunction(f.n * t, _bits_to_int(cur))


def apply_gf2_matrix(rows: Sequence[int], masks: np.ndarray) -> np.ndarray:
    """Matrix-vector products B*alpha over GF(2) for every mask in `masks`."""
    out = np.zeros_like(masks)
    m = masks.astype(np.uint64)
    for i, row in enumerate(rows):
        out |= (np.bitwise_count(m & np.uint64(row)).astype(masks.dtype) & 1) << i
    return out


def invert_gf2_matrix(rows: Sequence[int]) -> list[int]:
    """Inverse of an invertible GF(2) matrix given as row masks."""
    n = len(rows)
    aug = [(rows[i], 1 << i) for i in range(n)]
    result = [0] * n
    done: list[tuple[int, int, int]] = []  # (pivot bit, row, inv row)
    for m, inv in aug:
        for p, rm, ri in done:
            if (m >> p) & 1:
                m ^= rm
                inv ^= ri
        if m == 0:
            raise SingularMatrix("matrix rows are dependent over GF(2)")
        p = m.bit_length() - 1
        done = [(q, rm ^ m, ri ^ inv) if (rm >> p) & 1 else (q, rm, ri)
                for q, rm, ri in done]
        done.append((p, m, inv))
    for p, rm, ri in done:
        result[p] = ri
    return result


def basis_change(s: Spectrum, matrix_rows: Sequence[int]) -> Spectrum:
    """Relabel the Fourier domain: new coeffs[alpha] = coeffs[B * alpha]."""
    n = s.n
    if len(matrix_rows) != n or gf2.rank_of(matrix_rows) != n:
        raise SingularMatrix("need an invertible n x n GF(2) matrix")
    alphas = np.arange(1 << n, dtype=np.int64)
    mapped = apply_gf2_matrix(matrix_rows, alphas)
    return Spectrum(n, s.coeffs[mapped].copy())


def transpose_gf2_matrix(rows: Sequence[int]) -> list[int]:
    n = len(rows)
    return [sum(((rows[j] >> i) & 1) << j for j in range(n)) for i in range(n)]


# --- external text formats -------------------------------------------------

def format_table_text(f: BooleanFunction) -> str:
    """Two-line format: decimal arity, then 2^n characters from {+,-}."""
    chars = np.where(f.bits() == 1, "-", "+")
    return f"{f.n}\n{''.join(chars)}\n"


def parse_table_text(text: str) -> BooleanFunction:
    lines = text.splitlines()
    if len(lines) < 2:
        raise ValueError("expected two lines: arity, then the +/- table")
    n = int(lines[0].strip())
    _check_arity(n)
    row = lines[1].strip()
    if len(row) != (1 << n) or set(row) - {"+", "-"}:
        raise ValueError(f"table line must be exactly 2^{n} characters from {{+,-}}")
    bits = np.frombuffer(row.encode(), dtype=np.uint8) == ord("-")
    return BooleanFunction(n, _bits_to_int(bits.astype(np.uint8)))


def format_spectrum_csv(s: Spectrum) -> str:
    """CSV of nonzero coefficients, masks ascending, with exact fhat fractions."""
    lines = ["mask_hex,c,fhat_num,fhat_den"]
    scale = 1 << s.n
    for mask in s.support():
        c = int(s.coeffs[mask])
        fr = Fraction(c, scale)
        lines.append(f"{int(mask):x},{c},{fr.numerator},{fr.denominator}")
    return "\n".join(lines) + "\n"


def parse_spectrum_csv(text: str, n: int) -> Spectrum:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "mask_hex,c,fhat_num,fhat_den":
        raise ValueError("bad spectrum CSV header")
    coeffs = np.zeros(1 << n, dtype=np.int64)
    for ln in lines[1:]:
        mask_hex, c, _num, _den = ln.split(",")
        coeffs[int(mask_hex, 16)] = int(c)
    return Spectrum(n, coeffs)


__all__ = [
    "BooleanFunction", "Spectrum", "RestrictionMap", "make_restriction",
    "wht", "inverse_wht", "f2_anf", "f2_degree", "restrict", "xor_power",
    "basis_change", "apply_gf2_matrix", "invert_gf2_matrix",
    "transpose_gf2_matrix", "max_arity",
    "format_table_text", "parse_table_text",
    "format_spectrum_csv", "parse_spectrum_csv",
]
