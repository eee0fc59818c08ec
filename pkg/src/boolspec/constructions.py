"""Generators for the addressing-function family zoo.

Every family has a direct truth-table builder; most also have an explicit
spectrum assembled from closed forms (exact scaled integers), which the
tests compare coefficient-by-coefficient against the transform. Sparse
closed-form coefficients work far beyond the truth-table arity guard.

Variable order is fixed everywhere: addressing bits first (little-endian,
coordinate 1 is the address LSB), then target blocks in address order, then
auxiliary bits within each block. The all-(+1) address selects block 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

import numpy as np

from .core import BooleanFunction, Spectrum, _bits_to_int, _check_arity
from .errors import InvalidSpec, NoClosedForm, OutOfRange

CLOSED_FORM_FAMILIES = ("and", "bent_ip", "addressing", "composed",
                        "ad_tt", "ad_tta", "ab", "aab", "mand")
ALL_FAMILIES = CLOSED_FORM_FAMILIES + ("parity", "mad")


def _is_pow2(x: Optional[int]) -> bool:
    return x is not None and x >= 1 and x & (x - 1) == 0


def _log2(x: int) -> int:
    return x.bit_length() - 1


@dataclass(frozen=True)
class FamilySpec:
    family: str
    t: Optional[int] = None
    tprime: Optional[int] = None
    a: Optional[int] = None
    ell: Optional[int] = None
    p: Optional[int] = None
    inner: Optional["FamilySpec"] = None

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        fam = self.family
        if fam not in ALL_FAMILIES:
            raise InvalidSpec(f"unknown family {fam!r}")
        need = {
            "and": ("tprime",), "parity": ("t",), "bent_ip": ("ell",),
            "addressing": ("t",), "ad_tt": ("t", "tprime"),
            "ad_tta": ("t", "tprime", "a"), "ab": ("tprime", "ell"),
            "aab": ("t", "tprime", "ell"), "mand": ("tprime", "p"),
            "mad": ("t", "tprime", "p"), "composed": ("t", "inner"),
        }[fam]
        for name in need:
            if getattr(self, name) is None:
                raise InvalidSpec(f"{fam} requires parameter {name}")
        if fam == "parity":
            if self.t < 1:
                raise InvalidSpec("parity needs at least one variable")
            return
        for name in ("t", "tprime", "a", "ell"):
            value = getattr(self, name)
            if name in need and not _is_pow2(value):
                raise InvalidSpec(f"{fam}: {name}={value} must be a power of two")
        if fam == "and" and self.tprime < 2:
            raise InvalidSpec("and: tprime >= 2 required")
        if fam == "bent_ip" and (self.ell < 4 or _log2(self.ell) % 2):
            raise InvalidSpec("bent_ip: log2(ell) must be even and >= 2")
        if fam in ("addressing", "ad_tt", "ad_tta", "aab", "mad", "composed") and self.t < 2:
            raise InvalidSpec(f"{fam}: t >= 2 required")
        if fam in ("ad_tt", "ad_tta") and self.tprime < 4:
            raise InvalidSpec(f"{fam}: tprime >= 4 required")
        if fam == "ad_tta" and self.a < 2 * self.tprime:
            raise InvalidSpec("ad_tta: a >= 2*tprime required")
        if fam in ("ab", "aab"):
            if self.tprime <= 3:
                raise InvalidSpec(f"{fam}: tprime > 3 required")
            if self.ell < 4 or _log2(self.ell) % 2:
                raise InvalidSpec(f"{fam}: log2(ell) must be even and >= 2")
        if fam == "mand":
            if self.tprime < 2:
                raise InvalidSpec("mand: tprime >= 2 required")
            if self.p < 2:
                raise InvalidSpec("mand: p >= 2 required")
        if fam == "mad":
            if self.tprime < 2:
                raise InvalidSpec("mad: tprime >= 2 required")
            if not 2 <= self.p <= (self.t - 1) * _log2(self.tprime):
                raise InvalidSpec("mad: need 2 <= p <= (t-1)*log2(tprime)")

    @property
    def arity(self) -> int:
        fam = self.family
        if fam == "and":
            return _log2(self.tprime)
        if fam == "parity":
            return self.t
        if fam == "bent_ip":
            return _log2(self.ell)
        if fam == "addressing":
            return _log2(self.t) + self.t
        if fam == "ad_tt":
            return _log2(self.t) + self.t * _log2(self.tprime)
        if fam == "ad_tta":
            return _log2(self.t) + _log2(self.a) + (self.t - 1) * _log2(self.tprime)
        if fam == "ab":
            return _log2(self.tprime) + _log2(self.ell)
        if fam == "aab":
            return _log2(self.t) + self.t * (_log2(self.tprime) + _log2(self.ell))
        if fam == "mand":
            return _log2(self.tprime) + self.p
        if fam == "mad":
            return _log2(self.t) + self.t * _log2(self.tprime)
        return _log2(self.t) + self.t * self.inner.arity  # composed

    def to_json_dict(self) -> dict:
        out: dict = {"family": self.family}
        for name in ("t", "tprime", "a", "ell", "p"):
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        if self.inner is not None:
            out["inner"] = self.inner.to_json_dict()
        return out

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "FamilySpec":
        inner = data.get("inner")
        return cls(family=data["family"], t=data.get("t"), tprime=data.get("tprime"),
                   a=data.get("a"), ell=data.get("ell"), p=data.get("p"),
                   inner=cls.from_json_dict(inner) if inner else None)


# --- truth-table builders ---------------------------------------------------

def _and_bits(m: int) -> np.ndarray:
    bits = np.zeros(1 << m, dtype=np.uint8)
    bits[-1] = 1
    return bits


def _parity_bits(m: int) -> np.ndarray:
    idx = np.arange(1 << m, dtype=np.uint64)
    return (np.bitwise_count(idx) & 1).astype(np.uint8)


def _bent_ip_bits(m: int) -> np.ndarray:
    idx = np.arange(1 << m, dtype=np.uint64)
    acc = np.zeros(1 << m, dtype=np.uint8)
    for i in range(0, m, 2):
        acc ^= (((idx >> i) & 1) & ((idx >> (i + 1)) & 1)).astype(np.uint8)
    return acc


def _address_compose_bits(t: int, block_bits: list[np.ndarray]) -> np.ndarray:
    """Truth table of the addressing function with the given target blocks."""
    lt = _log2(t)
    widths = [_log2(len(b)) for b in block_bits]
    n = lt + sum(widths)
    idx = np.arange(1 << n, dtype=np.int64)
    addr = idx & (t - 1)
    out = np.zeros(1 << n, dtype=np.uint8)
    shift = lt
    for j in range(t):
        w = widths[j]
        sel = addr == j
        block_val = (idx[sel] >> shift) & ((1 << w) - 1)
        out[sel] = block_bits[j][block_val]
        shift += w
    return out


def _ab_bits(tprime: int, ell: int) -> np.ndarray:
    m, lm = _log2(tprime), _log2(ell)
    idx = np.arange(1 << (m + lm), dtype=np.int64)
    bent = _bent_ip_bits(lm)
    z = (idx >> m) & (ell - 1)
    first = (idx & 1) ^ bent[z]
    rest_mask = ((1 << m) - 1) & ~1
    rest_all = (idx & rest_mask) == rest_mask
    return (first.astype(np.uint8) & rest_all.astype(np.uint8))


def _mand_bits(tprime: int, p: int) -> np.ndarray:
    m = _log2(tprime)
    idx = np.arange(1 << (m + p), dtype=np.int64)
    u_all = ((idx >> m) & ((1 << p) - 1)) == (1 << p) - 1
    first = (idx & 1) ^ u_all
    rest_mask = ((1 << m) - 1) & ~1
    rest_all = (idx & rest_mask) == rest_mask
    return (first.astype(np.uint8) & rest_all.astype(np.uint8))


def _mad_bits(t: int, tprime: int, p: int) -> np.ndarray:
    lt, m = _log2(t), _log2(tprime)
    n = lt + t * m
    idx = np.arange(1 << n, dtype=np.int64)
    addr = idx & (t - 1)
    # u = first p coordinates of blocks 1..t-1, in coordinate order
    u_positions = [lt + j * m + i for j in range(1, t) for i in range(m)][:p]
    u_all = np.ones(1 << n, dtype=bool)
    for pos in u_positions:
        u_all &= ((idx >> pos) & 1) == 1
    out = np.zeros(1 << n, dtype=np.uint8)
    for j in range(t):
        sel = addr == j
        block = (idx[sel] >> (lt + j * m)) & (tprime - 1)
        if j == 0:
            first = ((block & 1) ^ u_all[sel]).astype(np.int64)
            rest_mask = (tprime - 1) & ~1
            out[sel] = (first & ((block & rest_mask) == rest_mask)).astype(np.uint8)
        else:
            out[sel] = (block == tprime - 1).astype(np.uint8)
    return out


def make(spec: FamilySpec) -> BooleanFunction:
    """Build the truth table by direct evaluation."""
    n = spec.arity
    _check_arity(n)
    fam = spec.family
    if fam == "and":
        bits = _and_bits(_log2(spec.tprime))
    elif fam == "parity":
        bits = _parity_bits(spec.t)
    elif fam == "bent_ip":
        bits = _bent_ip_bits(_log2(spec.ell))
    elif fam == "addressing":
        bits = _address_compose_bits(spec.t, [np.array([0, 1], dtype=np.uint8)] * spec.t)
    elif fam == "ad_tt":
        bits = _address_compose_bits(spec.t, [_and_bits(_log2(spec.tprime))] * spec.t)
    elif fam == "ad_tta":
        blocks = [_and_bits(_log2(spec.a))] + [_and_bits(_log2(spec.tprime))] * (spec.t - 1)
        bits = _address_compose_bits(spec.t, blocks)
    elif fam == "ab":
        bits = _ab_bits(spec.tprime, spec.ell)
    elif fam == "aab":
        bits = _address_compose_bits(spec.t, [_ab_bits(spec.tprime, spec.ell)] * spec.t)
    elif fam == "mand":
        bits = _mand_bits(spec.tprime, spec.p)
    elif fam == "mad":
        bits = _mad_bits(spec.t, spec.tprime, spec.p)
    elif fam == "composed":
        bits = _address_compose_bits(spec.t, [make(spec.inner).bits()] * spec.t)
    else:  # pragma: no cover
        raise InvalidSpec(fam)
    return BooleanFunction(n, _bits_to_int(bits))


def compose_addressing(t: int, g: BooleanFunction) -> BooleanFunction:
    """Addressing function with every target replaced by a copy of g."""
    if not _is_pow2(t) or t < 2:
        raise InvalidSpec("t must be a power of two >= 2")
    bits = _address_compose_bits(t, [g.bits()] * t)
    n = _log2(t) + t * g.n
    _check_arity(n)
    return BooleanFunction(n, _bits_to_int(bits))


# --- closed-form spectra ----------------------------------------------------

def _and_coeffs(m: int) -> dict[int, int]:
    scale = 1 << m
    out = {0: scale - 2}
    for s in range(1, scale):
        out[s] = 2 if s.bit_count() & 1 else -2
    if m == 1:
        del out[0]  # 1 - 2/2 = 0
    return out


def _bent_ip_coeffs(m: int) -> dict[int, int]:
    mag = 1 << (m // 2)
    out = {}
    for s in range(1 << m):
        pairs = sum(1 for i in range(0, m, 2) if (s >> i) & 3 == 3)
        out[s] = -mag if pairs & 1 else mag
    return out


def _ab_coeffs(tprime: int, ell: int) -> dict[int, int]:
    m, lm = _log2(tprime), _log2(ell)
    scale = 1 << (m + lm)
    half = 1 << (lm + 1)        # scale * 2/t'
    bent_mag = 1 << (lm // 2 + 1)  # scale * 2/(t' sqrt(ell))
    out = {0: scale - half}
    for s in range(2, 1 << m, 2):  # nonempty, bit0 clear
        out[s] = half if s.bit_count() & 1 == 0 else -half
        out[s] = -out[s]  # (-1)^{|S|+1}
    for s in range(1, 1 << m, 2):  # bit0 set
        sign_s = 1 if (s.bit_count() + 1) & 1 == 0 else -1
        for tmask in range(1 << lm):
            pairs = sum(1 for i in range(0, lm, 2) if (tmask >> i) & 3 == 3)
            sign = sign_s * (-1 if pairs & 1 else 1)
            out[s | (tmask << m)] = sign * bent_mag
    return {k: v for k, v in out.items() if v}


def _mand_coeffs(tprime: int, p: int) -> dict[int, int]:
    m = _log2(tprime)
    scale = 1 << (m + p)
    base = 1 << (p + 1)  # scale * 2/t'
    out = {0: scale - base}
    for s in range(1, 1 << m):
        sign = 1 if s.bit_count() & 1 else -1  # (-1)^{|S|+1}
        if s & 1 == 0:
            out[s] = sign * base
        else:
            if base != 4:
                out[s] = sign * (base - 4)
            for tmask in range(1, 1 << p):
                sign_t = 1 if (s.bit_count() + tmask.bit_count()) & 1 == 0 else -1
                out[s | (tmask << m)] = sign_t * 4
    return {k: v for k, v in out.items() if v}


def _addressing_coeffs(t: int) -> dict[int, int]:
    lt = _log2(t)
    mag = 1 << t  # 2^n / t with n = log t + t
    out = {}
    for j in range(t):
        for tmask in range(1 << lt):
            sign = -1 if (tmask & j).bit_count() & 1 else 1
            out[tmask | (1 << (lt + j))] = sign * mag
    return out


def compose_addressing_coeffs(t: int, m: int, g_coeffs: Mapping[int, int]) -> dict[int, int]:
    """Spectrum of the addressed composition from the inner spectrum.

    g_coeffs are scaled by 2^m; the result is scaled by 2^(log t + t m).
    """
    lt = _log2(t)
    lift = 1 << ((t - 1) * m)
    out: dict[int, int] = {}
    g0 = g_coeffs.get(0, 0)
    if g0:
        out[0] = t * lift * g0
    for s, c in g_coeffs.items():
        if s == 0 or c == 0:
            continue
        for j in range(t):
            base = s << (lt + j * m)
            for tmask in range(1 << lt):
                sign = -1 if (tmask & j).bit_count() & 1 else 1
                out[base | tmask] = sign * lift * c
    return out


def _ad_tta_coeffs(t: int, tprime: int, a: int) -> dict[int, int]:
    lt, la, m = _log2(t), _log2(a), _log2(tprime)
    n = lt + la + (t - 1) * m
    scale = 1 << n
    c_small = 2 * scale // (t * tprime)   # 2/(t t')
    c_huge = 2 * scale // (a * t)         # 2/(a t)
    out = {0: scale + c_small - c_huge - 2 * scale // tprime}
    for u in range(1, 1 << lt):
        out[u] = c_small - c_huge
    for s in range(1, 1 << la):  # huge AND block at address 0
        sign = 1 if (s.bit_count() + 1) & 1 == 0 else -1
        base = s << lt
        for tmask in range(1 << lt):
            out[base | tmask] = sign * c_huge
    for j in range(1, t):
        shift = lt + la + (j - 1) * m
        for s in range(1, 1 << m):
            sign_s = 1 if (s.bit_count() + 1) & 1 == 0 else -1
            base = s << shift
            for tmask in range(1 << lt):
                sign = sign_s * (-1 if (tmask & j).bit_count() & 1 else 1)
                out[base | tmask] = sign * c_small
    return {k: v for k, v in out.items() if v}


def closed_form_coeffs(spec: FamilySpec) -> dict[int, int]:
    """Sparse scaled spectrum from the family's explicit expansion."""
    fam = spec.family
    if fam not in CLOSED_FORM_FAMILIES:
        raise NoClosedForm(f"no explicit expansion for family {fam!r}")
    if fam == "and":
        return _and_coeffs(_log2(spec.tprime))
    if fam == "bent_ip":
        return _bent_ip_coeffs(_log2(spec.ell))
    if fam == "addressing":
        return _addressing_coeffs(spec.t)
    if fam == "ab":
        return _ab_coeffs(spec.tprime, spec.ell)
    if fam == "mand":
        return _mand_coeffs(spec.tprime, spec.p)
    if fam == "ad_tt":
        inner = _and_coeffs(_log2(spec.tprime))
        return compose_addressing_coeffs(spec.t, _log2(spec.tprime), inner)
    if fam == "aab":
        inner = _ab_coeffs(spec.tprime, spec.ell)
        m = _log2(spec.tprime) + _log2(spec.ell)
        return compose_addressing_coeffs(spec.t, m, inner)
    if fam == "ad_tta":
        return _ad_tta_coeffs(spec.t, spec.tprime, spec.a)
    # composed
    inner = closed_form_coeffs(spec.inner)
    return compose_addressing_coeffs(spec.t, spec.inner.arity, inner)


def closed_form_spectrum(spec: FamilySpec) -> Spectrum:
    """Dense spectrum assembled from the closed form (guarded by arity)."""
    n = spec.arity
    _check_arity(n)
    coeffs = np.zeros(1 << n, dtype=np.int64)
    for mask, c in closed_form_coeffs(spec).items():
        coeffs[mask] = c
    return Spectrum(n, coeffs)


# --- witness parameter instantiation ----------------------------------------

def round_pow2(x: Fraction | float | int) -> int:
    """Nearest power of two by linear distance; ties round up."""
    xf = Fraction(x) if not isinstance(x, Fraction) else x
    if xf <= 0:
        raise OutOfRange("cannot round a nonpositive value to a power of two")
    j = 0
    while (1 << (j + 1)) <= xf:
        j += 1
    lo, hi = 1 << j, 1 << (j + 1)
    return lo if xf - lo < hi - xf else hi


def round_pow4(x: Fraction | float | int) -> int:
    """Nearest power of four (even exponent), at least 4; ties round up."""
    xf = Fraction(x) if not isinstance(x, Fraction) else x
    if xf <= 0:
        raise OutOfRange("cannot round a nonpositive value to a power of four")
    j = 0
    while (1 << (j + 2)) <= xf:
        j += 2
    lo, hi = 1 << j, 1 << (j + 2)
    best = lo if xf - lo < hi - xf else hi
    return max(best, 4)


@dataclass(frozen=True)
class WitnessExpectation:
    kind: str
    spec: FamilySpec
    ranges: dict = field(default_factory=dict)  # measure -> (low, high), factor-8 sandwich

    def in_range(self, name: str, value) -> bool:
        lo, hi = self.ranges[name]
        return lo <= float(value) <= hi


DEFAULT_SANDWICH = 8.0
DEFAULT_EPSILON = 0.05


def _sandwich(center: float, factor: float) -> tuple[float, float]:
    return center / factor, center * factor


def witness(kind: str, rho: int, kappa: int, kappa_aux: int,
            factor: float = DEFAULT_SANDWICH,
            epsilon: float = DEFAULT_EPSILON) -> WitnessExpectation:
    """Instantiate a tightness-witness family for the requested point.

    kind selects the construction: 'kline' (huge-AND addressing, pins k' and
    k''), 'kprime_curve' (bent-augmented targets), 'kdprime_curve' (modified
    AND). Raw parameters are rounded to powers of two and the construction's
    validity constraints re-checked; violations raise OutOfRange.
    """
    if kind not in ("kline", "kprime_curve", "kdprime_curve"):
        raise OutOfRange(f"unknown witness kind {kind!r}")
    logk = math.log2(kappa)
    if not logk <= rho:
        raise OutOfRange("need log2(kappa) <= rho")
    if not rho <= kappa ** (0.5 - epsilon):
        raise OutOfRange(f"need rho <= kappa^(1/2 - {epsilon})")

    def _aux_range(low: float, high: float, label: str) -> None:
        # factor-2 slack on each end: parameters are rounded to powers of
        # two afterwards, so anything within one rounding step may succeed
        if not low / 2 <= kappa_aux <= high * 2:
            raise OutOfRange(f"need {label}")

    if kind == "kline":
        _aux_range(kappa * logk / rho, kappa, "kappa*log2(kappa)/rho <= kappa' <= kappa")
        t = round_pow2(Fraction(2 * rho) / Fraction(logk))
        tprime = round_pow2(Fraction(kappa) * Fraction(logk) ** 2 / rho ** 2)
        a = round_pow2(Fraction(2 * kappa_aux) * Fraction(logk) / rho)
        try:
            spec = FamilySpec("ad_tta", t=t, tprime=tprime, a=a)
        except InvalidSpec as exc:
            raise OutOfRange(f"rounded parameters invalid: {exc}") from exc
        delta_center = rho ** 2 / (kappa * logk * logk)
        ranges = {
            "r": _sandwich(rho, factor), "k": _sandwich(kappa, factor),
            "kprime": _sandwich(kappa_aux, factor),
            "kdprime": _sandwich(kappa_aux, factor),
            "delta": _sandwich(delta_center, factor),
        }
        return WitnessExpectation(kind, spec, ranges)

    if kind == "kprime_curve":
        _aux_range(math.sqrt(kappa), kappa * logk / rho,
                   "sqrt(kappa) <= kappa' <= kappa*log2(kappa)/rho")
        t = round_pow2(Fraction(2 * rho) / Fraction(logk))
        tprime = round_pow2(Fraction(4 * kappa_aux * kappa_aux, kappa))
        ell = round_pow4(2 * (Fraction(kappa) * Fraction(logk) / (kappa_aux * rho)) ** 2)
        try:
            spec = FamilySpec("aab", t=t, tprime=tprime, ell=ell)
        except InvalidSpec as exc:
            raise OutOfRange(f"rounded parameters invalid: {exc}") from exc
        ranges = {
            "r": _sandwich(rho, factor), "k": _sandwich(kappa, factor),
            "kprime": _sandwich(kappa_aux, factor),
            "kdprime": _sandwich(kappa_aux, factor),
            "delta": _sandwich(kappa / kappa_aux ** 2, factor),
        }
        return WitnessExpectation(kind, spec, ranges)

    # kdprime_curve
    _aux_range(math.e * rho, kappa * logk / rho,
               "e*rho <= kappa'' <= kappa*log2(kappa)/rho")
    lograt = math.log2(kappa_aux / rho)
    p = round(math.log2(4 * kappa / kappa_aux))
    t = round_pow2(2 * rho / lograt)
    tprime = round_pow2(kappa_aux / rho * lograt)
    try:
        spec = FamilySpec("mad", t=t, tprime=tprime, p=p)
    except InvalidSpec as exc:
        raise OutOfRange(f"rounded parameters invalid: {exc}") from exc
    delta_center = rho / (kappa_aux * lograt)
    ranges = {
        "r": _sandwich(rho, factor), "k": _sandwich(kappa, factor),
        "kdprime": _sandwich(kappa_aux, factor),
        "delta": _sandwich(delta_center, factor),
    }
    return WitnessExpectation("kdprime_curve", spec, ranges)
