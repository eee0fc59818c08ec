"""Chang-style threshold bounds and the refined weight inequalities.

The two Chang forms are kept constant-free (no universal constant applied);
callers compare ratios. All logarithms are base 2. Inequality verdicts use
exact rational arithmetic wherever no logarithm or square root appears;
square roots are handled by squaring, logarithms through floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .core import BooleanFunction, f2_degree, wht
from .errors import NoValidThreshold, Undefined
from .measures import (SpectralProfile, profile_from_coeffs,
                       rank_saturating_basis, threshold_steps)


def chang_weight_bound(d: int, t: Fraction | float) -> float:
    """sqrt(d) / (t sqrt(log2(t^2/d))), the constant-free weight bound."""
    if d <= 1:
        raise Undefined("need dim > 1")
    tf = float(t)
    ratio = tf * tf / d
    if ratio <= 1.0:
        raise Undefined("need t^2 > d")
    return math.sqrt(d) / (tf * math.sqrt(math.log2(ratio)))


def chang_dim_bound(t: Fraction | float, delta: Fraction) -> float:
    """t^2 delta^2 log2(1/delta), the constant-free dimension bound."""
    if not 0 < delta < 1:
        raise Undefined("need 0 < delta < 1")
    tf = float(t)
    df = float(delta)
    return tf * tf * df * df * math.log2(1.0 / df)


def best_chang_from_steps(steps: Sequence[tuple[Fraction, int]]) -> tuple[float, Fraction]:
    """Maximum of the weight bound over the threshold step points.

    The bound decreases in t between steps, so the maximum over all real
    thresholds is attained at one of the coefficient-magnitude steps.
    """
    best: Optional[tuple[float, Fraction]] = None
    for t, dim in steps:
        if dim <= 1 or t * t <= dim:
            continue
        value = chang_weight_bound(dim, t)
        if best is None or value > best[0]:
            best = (value, t)
    if best is None:
        raise NoValidThreshold("dim(S_t) <= 1 at every threshold")
    return best


def best_chang_bound(s) -> tuple[float, Fraction]:
    from .measures import threshold_dims
    return best_chang_from_steps(threshold_dims(s))


@dataclass(frozen=True)
class Verdict:
    name: str
    lhs: float
    rhs: float
    passed: bool

    def to_json_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs, "pass": self.passed}


SKIPPED = "skipped(degenerate)"


def inequality_verdicts(
    n: int, coeffs: Mapping[int, int], degf2: Optional[int],
    prof: Optional[SpectralProfile] = None,
) -> list[Verdict]:
    """The refined weight/level-1 inequalities on one function's spectrum."""
    prof = prof or profile_from_coeffs(n, coeffs, degf2)
    if prof.degenerate:
        return [Verdict(SKIPPED, 0.0, 0.0, True)]
    scale = 1 << n
    delta, k = prof.delta, prof.k
    out = []

    rhs_a = Fraction(k - 1, 4) / (prof.kprime * prof.kprime)
    out.append(Verdict("delta_ge_(k-1)/4k'2", float(delta), float(rhs_a), delta >= rhs_a))

    l1 = Fraction(sum(abs(c) for c in coeffs.values()), scale)
    ok_b = l1 * l1 <= 9 * k * delta
    out.append(Verdict("l1_le_3sqrt(k*delta)", float(l1),
                       3 * math.sqrt(k * float(delta)), ok_b))

    basis_l1 = Fraction(sum(c for _m, c in rank_saturating_basis(n, coeffs)), scale)
    rhs_c = 4 * math.log2(k)
    out.append(Verdict("basis_l1_le_4log2k", float(basis_l1), rhs_c, float(basis_l1) <= rhs_c))

    if degf2 is not None:
        level1 = Fraction(sum(abs(c) for m, c in coeffs.items()
                              if c and m and m & (m - 1) == 0), scale)
        out.append(Verdict("level1_le_4degf2", float(level1), 4.0 * degf2,
                           level1 <= 4 * degf2))
        if delta <= Fraction(1, 4):
            rhs_e = 32 * delta * degf2
            out.append(Verdict("level1_le_32*delta*degf2", float(level1), float(rhs_e),
                               level1 <= rhs_e))

    out.append(Verdict("k*delta_ge_1", float(k * delta), 1.0, k * delta >= 1))
    return out


def verify_inequalities(f: BooleanFunction) -> list[Verdict]:
    s = wht(f)
    supp = s.support()
    coeffs = {int(m): int(s.coeffs[m]) for m in supp}
    return inequality_verdicts(f.n, coeffs, f2_degree(f))


@dataclass(frozen=True)
class BoundReport:
    chang_best: Optional[float]
    chang_argmax: Optional[Fraction]
    kline: Optional[float]           # r^2 / (k log2^2 k)
    kprime_curve: Optional[float]    # k / k'^2
    kdprime_curve: Optional[float]   # r / (k'' log2 k)
    verdicts: tuple[Verdict, ...]

    def to_json_dict(self) -> dict:
        return {
            "chang_best": self.chang_best,
            "chang_argmax": None if self.chang_argmax is None else
                {"num": self.chang_argmax.numerator, "den": self.chang_argmax.denominator},
            "kline": self.kline,
            "kprime_curve": self.kprime_curve,
            "kdprime_curve": self.kdprime_curve,
            "verdicts": [v.to_json_dict() for v in self.verdicts],
        }

    def csv_row(self) -> str:
        vals = [self.chang_best, self.kline, self.kprime_curve, self.kdprime_curve]
        return ",".join("" if v is None else repr(v) for v in vals)


def bound_report_from_coeffs(
    n: int, coeffs: Mapping[int, int], degf2: Optional[int],
    prof: Optional[SpectralProfile] = None,
) -> BoundReport:
    prof = prof or profile_from_coeffs(n, coeffs, degf2)
    verdicts = tuple(inequality_verdicts(n, coeffs, degf2, prof))
    if prof.degenerate:
        return BoundReport(None, None, None, None, None, verdicts)
    logk = math.log2(prof.k)
    kline = prof.r ** 2 / (prof.k * logk * logk)
    kprime_curve = float(Fraction(prof.k) / (prof.kprime * prof.kprime))
    kdprime_curve = prof.r / (float(prof.kdprime) * logk)
    try:
        value, argmax = best_chang_from_steps(threshold_steps(n, coeffs))
    except NoValidThreshold:
        value, argmax = None, None
    return BoundReport(value, argmax, kline, kprime_curve, kdprime_curve, verdicts)


def bound_report(f: BooleanFunction) -> BoundReport:
    s = wht(f)
    coeffs = {int(m): int(s.coeffs[m]) for m in s.support()}
    return bound_report_from_coeffs(f.n, coeffs, f2_degree(f))


def appendix_dim_screen(
    n: int, coeffs: Mapping[int, int], delta: Fraction, c_const: float = 64.0
) -> list[tuple[float, int, float]]:
    """Desk-scale screen of the dimension form against observed dim(S_t).

    Returns (t, dim, scaled bound) triples where C * t^2 delta^2 log2(1/delta)
    < dim(S_t); these are recorded, never asserted.
    """
    if not delta < Fraction(1, 2):
        return []
    violations = []
    for t, dim in threshold_steps(n, coeffs):
        if dim <= 1:
            continue
        bound = c_const * chang_dim_bound(t, delta)
        if bound < dim:
            violations.append((float(t), dim, bound))
    return violations
