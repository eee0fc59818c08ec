"""Named verification suites behind `verify`: each runs a battery of exact
checks at desk scale and reports failures individually.

Suites are deterministic for a fixed seed; the failure JSON contains no
timing, so reruns are byte-identical.
"""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .bounds import best_chang_from_steps
from .constructions import FamilySpec, closed_form_coeffs, closed_form_spectrum, make, witness
from .core import BooleanFunction, inverse_wht, make_restriction, restrict, wht
from .gf2 import Gf2Basis
from .measures import profile, threshold_steps
from .napdt import napdt
from .scan import iter_exhaustive


@dataclass
class Failure:
    function: str
    check: str
    lhs: str
    rhs: str

    def to_json_dict(self) -> dict:
        return {"function": self.function, "check": self.check,
                "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class SuiteResult:
    name: str
    cases: int
    failures: list[Failure] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def failures_json(self) -> str:
        return json.dumps(
            {"suite": self.name, "cases": self.cases,
             "failures": [f.to_json_dict() for f in self.failures]},
            sort_keys=True)

    def summary_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} suite={self.name} cases={self.cases} "
                f"failures={len(self.failures)} time={self.seconds:.2f}s")


def _timed(fn: Callable[[SuiteResult], None], name: str) -> SuiteResult:
    result = SuiteResult(name, 0)
    t0 = time.perf_counter()
    fn(result)
    result.seconds = time.perf_counter() - t0
    return result


# --- core: exhaustive invariants + restriction identities --------------------

def _seeded_pairs(samples: int, seed: int):
    """(f, gamma) pairs with independent gamma not covering supp(f)."""
    rng = random.Random(seed)
    out = []
    while len(out) < samples:
        n = rng.randint(2, 4)
        f = BooleanFunction.random(n, rng)
        if f.is_constant():
            continue
        q = rng.randint(1, n - 1)
        basis = Gf2Basis()
        gamma = []
        while len(gamma) < q:
            m = rng.getrandbits(n)
            if m and basis.add(m):
                gamma.append(m)
        supp = [int(m) for m in wht(f).support()]
        if all(basis.contains(m) for m in supp):
            continue  # every restriction constant: expectation bound is void
        out.append((f, gamma))
    return out


def suite_core(max_n: int = 4, samples: int = 100, seed: int = 0) -> SuiteResult:
    def run(res: SuiteResult) -> None:
        scan_checks = {"parseval", "granularity", "k*delta>=1", "log2k<=r",
                       "sqrt(k)<=k'", "k'<=k/2", "sqrt(r)<=k''",
                       "r/(4log2k)<=k''", "delta>=(k-1)/4k'2",
                       "l1<=3sqrt(k*delta)"}
        for n in range(1, max_n + 1):
            for rec in iter_exhaustive(n):
                res.cases += 1
                for check in rec.failures:
                    if check in scan_checks:
                        res.failures.append(Failure(f"n{n}:{rec.index:#x}", check, "", ""))
        # transform round trip on seeded samples
        rng = random.Random(seed)
        for _ in range(samples):
            n = rng.randint(1, max_n)
            f = BooleanFunction.random(n, rng)
            res.cases += 1
            if inverse_wht(wht(f)) != f:
                res.failures.append(Failure(f"n{n}:{f.table:#x}", "wht_roundtrip", "", ""))
        # restriction identities
        for f, gamma in _seeded_pairs(samples, seed):
            res.cases += 1
            q = len(gamma)
            deltas = []
            kplus_sum = 0
            for b in range(1 << q):
                signs = [(-1 if (b >> j) & 1 else 1) for j in range(q)]
                g = restrict(f, make_restriction(f.n, gamma, signs))
                deltas.append(g.delta)
                s = wht(g)
                kplus_sum += len(s.support()) - (1 if s.coeffs[0] else 0)
            mean_delta = sum(deltas, Fraction(0)) / (1 << q)
            if mean_delta != f.delta:
                res.failures.append(Failure(f"n{f.n}:{f.table:#x}", "E_b[delta]=delta",
                                            str(mean_delta), str(f.delta)))
            supp = [int(m) for m in wht(f).support()]
            basis = Gf2Basis(gamma)
            ell = len({basis.reduce(m) for m in supp})
            k = len(supp)
            if 4 * k * kplus_sum < ell * ell * (1 << q):
                res.failures.append(Failure(
                    f"n{f.n}:{f.table:#x}", "E_b[k+]>=l^2/4k",
                    f"{kplus_sum}/{1 << q}", f"{ell}^2/(4*{k})"))
    return _timed(run, "core")


# --- chlt: level-1 and basis bounds ------------------------------------------

def suite_chlt(max_n: int = 4) -> SuiteResult:
    def run(res: SuiteResult) -> None:
        wanted = {"basis_l1<=4log2k", "level1<=4degf2", "level1<=32*delta*degf2"}
        for n in range(1, max_n + 1):
            for rec in iter_exhaustive(n):
                res.cases += 1
                for check in rec.failures:
                    if check in wanted:
                        res.failures.append(Failure(f"n{n}:{rec.index:#x}", check, "", ""))
    return _timed(run, "chlt")


# --- tables: named constructions, closed forms, witnesses --------------------

TABLE_ROWS = [
    (FamilySpec("and", tprime=8), (Fraction(1, 8), 8, 3, 4, 4)),
    (FamilySpec("addressing", t=4), (Fraction(1, 2), 16, 6, 4, 4)),
    (FamilySpec("ad_tt", t=4, tprime=8), (Fraction(1, 8), 113, 14, 16, 16)),
    (FamilySpec("ad_tta", t=4, tprime=4, a=8), (Fraction(7, 32), 68, 11, 16, 16)),
    (FamilySpec("ab", tprime=8, ell=4), (Fraction(1, 8), 20, 5, 8, 8)),
    (FamilySpec("aab", t=2, tprime=8, ell=4), (Fraction(1, 8), 77, 11, 16, 16)),
]

CLOSED_FORM_GRID = [
    FamilySpec("and", tprime=4), FamilySpec("and", tprime=8),
    FamilySpec("and", tprime=64),
    FamilySpec("bent_ip", ell=4), FamilySpec("bent_ip", ell=16),
    FamilySpec("bent_ip", ell=256),
    FamilySpec("addressing", t=2), FamilySpec("addressing", t=4),
    FamilySpec("addressing", t=8),
    FamilySpec("ad_tt", t=2, tprime=4), FamilySpec("ad_tt", t=2, tprime=8),
    FamilySpec("ad_tt", t=4, tprime=4), FamilySpec("ad_tt", t=4, tprime=8),
    FamilySpec("ad_tta", t=2, tprime=4, a=8), FamilySpec("ad_tta", t=2, tprime=4, a=16),
    FamilySpec("ad_tta", t=2, tprime=8, a=16), FamilySpec("ad_tta", t=4, tprime=4, a=8),
    FamilySpec("ab", tprime=8, ell=4), FamilySpec("ab", tprime=4, ell=16),
    FamilySpec("ab", tprime=16, ell=4), FamilySpec("ab", tprime=8, ell=16),
    FamilySpec("aab", t=2, tprime=8, ell=4), FamilySpec("aab", t=2, tprime=4, ell=4),
    FamilySpec("aab", t=2, tprime=4, ell=16),
    FamilySpec("mand", tprime=4, p=2), FamilySpec("mand", tprime=8, p=3),
    FamilySpec("mand", tprime=16, p=2), FamilySpec("mand", tprime=4, p=6),
    FamilySpec("composed", t=2, inner=FamilySpec("and", tprime=8)),
    FamilySpec("composed", t=2, inner=FamilySpec("ab", tprime=4, ell=4)),
    FamilySpec("composed", t=2, inner=FamilySpec("bent_ip", ell=4)),
    FamilySpec("composed", t=4, inner=FamilySpec("and", tprime=4)),
]

WITNESS_GRID = [
    ("kline", 8, 256, 256),
    ("kline", 10, 256, 256),
    ("kline", 9, 512, 512),
    ("kprime_curve", 12, 512, 200),
    ("kprime_curve", 10, 256, 100),
    ("kdprime_curve", 10, 1024, 1024),
    ("kdprime_curve", 10, 1024, 32),
]


def suite_tables() -> SuiteResult:
    def run(res: SuiteResult) -> None:
        for spec, (delta, k, r, kp, kdp) in TABLE_ROWS:
            res.cases += 1
            p = profile(make(spec))
            got = (p.delta, p.k, p.r, p.kprime, p.kdprime)
            want = (delta, k, r, Fraction(kp), Fraction(kdp))
            if got != want:
                res.failures.append(Failure(json.dumps(spec.to_json_dict()),
                                            "profile_table", str(got), str(want)))
        # modified-AND table row: exact delta and rank, sandwiched k and k''
        res.cases += 1
        spec = FamilySpec("mad", t=4, tprime=4, p=2)
        p = profile(make(spec))
        center_k = (1 << spec.p) * spec.t * spec.tprime + spec.t ** 2 * spec.tprime
        center_kdp = spec.t * spec.tprime
        ok = (p.delta == Fraction(1, 4) and p.r == 10
              and Fraction(center_k, 8) <= p.k <= 8 * center_k
              and Fraction(center_kdp, 8) <= p.kdprime <= 8 * center_kdp)
        if not ok:
            res.failures.append(Failure(json.dumps(spec.to_json_dict()), "mad_table",
                                        str((p.delta, p.r, p.k, p.kdprime)),
                                        f"delta=1/4 r=10 k~{center_k} k''~{center_kdp}"))
        for spec in CLOSED_FORM_GRID:
            res.cases += 1
            direct = wht(make(spec))
            closed = closed_form_spectrum(spec)
            if direct != closed:
                res.failures.append(Failure(json.dumps(spec.to_json_dict()),
                                            "closed_form_vs_wht", "", ""))
        for kind, rho, kappa, aux in WITNESS_GRID:
            res.cases += 1
            w = witness(kind, rho, kappa, aux)
            p = profile(make(w.spec))
            measured = {"r": p.r, "k": p.k, "kprime": float(p.kprime),
                        "kdprime": float(p.kdprime), "delta": float(p.delta)}
            for name in w.ranges:
                if not w.in_range(name, measured[name]):
                    res.failures.append(Failure(
                        f"{kind}({rho},{kappa},{aux})", f"witness_{name}",
                        str(measured[name]), str(w.ranges[name])))
    return _timed(run, "tables")


# --- composition lemma --------------------------------------------------------

def _composable_inner(rng: random.Random) -> BooleanFunction:
    """Nonconstant g with a nonempty coefficient no larger than |ghat(empty)|."""
    while True:
        m = rng.randint(1, 4)
        g = BooleanFunction.random(m, rng)
        s = wht(g)
        c0 = abs(int(s.coeffs[0]))
        if c0 == 0:
            continue
        nonempty = [abs(int(c)) for mask, c in enumerate(s.coeffs) if mask and c]
        if nonempty and min(nonempty) <= c0:
            return g


def suite_composition(samples: int = 200, seed: int = 0) -> SuiteResult:
    from .constructions import compose_addressing

    def run(res: SuiteResult) -> None:
        rng = random.Random(seed)
        for _ in range(samples):
            g = _composable_inner(rng)
            t = rng.choice((2, 4))
            if t == 4 and g.n > 3:
                t = 2  # keep the composed arity small
            f = compose_addressing(t, g)
            res.cases += 1
            pg, pf = profile(g), profile(f)
            lt = t.bit_length() - 1
            checks = [
                ("r", pf.r, t * pg.r + lt),
                ("k", pf.k, 1 + t * t * (pg.k - 1)),
                ("kprime", pf.kprime, t * pg.kprime),
                ("kdprime", pf.kdprime, t * pg.kdprime),
                ("delta", pf.delta, pg.delta),
            ]
            for name, got, want in checks:
                if got != want:
                    res.failures.append(Failure(
                        f"t={t},g=n{g.n}:{g.table:#x}", f"composition_{name}",
                        str(got), str(want)))
    return _timed(run, "composition")


# --- napdt --------------------------------------------------------------------

def suite_napdt(max_n: int = 3) -> SuiteResult:
    def run(res: SuiteResult) -> None:
        named = [
            (BooleanFunction(2, 0), 0),
            (BooleanFunction(2, 0b0110), 1),  # parity on two coordinates
            (BooleanFunction(3, 0b10000000), 3),  # AND of three
        ]
        for f, want in named:
            res.cases += 1
            gamma, _trace = napdt(f)
            if len(gamma) != want:
                res.failures.append(Failure(f"n{f.n}:{f.table:#x}", "napdt_named",
                                            str(len(gamma)), str(want)))
        for n in range(1, max_n + 1):
            for table in range(1 << (1 << n)):
                f = BooleanFunction(n, table)
                res.cases += 1
                fid = f"n{n}:{table:#x}"
                gamma, trace = napdt(f)
                for b in range(1 << len(gamma)):
                    signs = [(-1 if (b >> j) & 1 else 1) for j in range(len(gamma))]
                    if not restrict(f, make_restriction(n, list(gamma), signs)).is_constant():
                        res.failures.append(Failure(fid, "restriction_constant", str(b), ""))
                p = profile(f)
                if p.r > len(gamma):
                    res.failures.append(Failure(fid, "rank<=|Gamma|",
                                                str(p.r), str(len(gamma))))
                if sum(it.q for it in trace.iterations) != len(gamma):
                    res.failures.append(Failure(fid, "sum(q_i)=|Gamma|", "", ""))
                if p.k < 2:
                    continue
                scale = 1 << n
                w = f.minus_count
                logk = math.log2(p.k)
                if len(gamma) ** 2 * scale > 36 * w * p.k * logk * logk + 1e-9:
                    res.failures.append(Failure(
                        fid, "|Gamma|<=6sqrt(delta*k)log2k", str(len(gamma)), ""))
                prev_ell = p.k
                for it in trace.iterations:
                    drop = prev_ell - it.ell
                    if drop <= 0:
                        res.failures.append(Failure(fid, "ell_strictly_decreasing",
                                                    str(it.ell), str(prev_ell)))
                    elif it.q ** 2 * prev_ell ** 2 * scale > 36 * w * p.k * drop ** 2:
                        res.failures.append(Failure(
                            fid, "q_i/(drop)<=6sqrt(delta*k)/ell",
                            f"{it.q}/{drop}", f"ell_prev={prev_ell}"))
                    if it.k_fmin is not None:
                        bound = Fraction(4 * p.k, it.ell ** 2) * p.delta
                        if it.delta_fmin / it.k_fmin > bound:
                            res.failures.append(Failure(
                                fid, "main_lemma_k", str(it.delta_fmin / it.k_fmin),
                                str(bound)))
                        if it.kplus_fmin and it.delta_fmin / it.kplus_fmin > bound:
                            res.failures.append(Failure(
                                fid, "main_lemma_kplus",
                                str(it.delta_fmin / it.kplus_fmin), str(bound)))
                    prev_ell = it.ell
    return _timed(run, "napdt")


# --- beating Chang ------------------------------------------------------------

def suite_beating_chang() -> SuiteResult:
    def run(res: SuiteResult) -> None:
        for t in (4, 8, 16):
            res.cases += 1
            fid = f"ad_tt(t={t},t'={t})"
            spec = FamilySpec("ad_tt", t=t, tprime=t)
            coeffs = closed_form_coeffs(spec)
            n = spec.arity
            scale = 1 << n
            c0 = coeffs.get(0, 0)
            delta = Fraction(scale - c0, 2 * scale)
            if delta != Fraction(1, t):
                res.failures.append(Failure(fid, "delta=1/t", str(delta), f"1/{t}"))
            expected_mag = 2 * scale // (t * t)
            if any(abs(c) != expected_mag for m, c in coeffs.items() if m):
                res.failures.append(Failure(fid, "|fhat|=2/t^2", "", str(expected_mag)))
            if t == 4:
                direct = wht(make(spec))
                if closed_form_spectrum(spec) != direct:
                    res.failures.append(Failure(fid, "closed_form_vs_wht", "", ""))
            value, _argmax = best_chang_from_steps(threshold_steps(n, coeffs))
            ratio = float(delta) / value
            floor = 0.4 * math.sqrt(t)
            if not ratio > floor - 1e-9:
                res.failures.append(Failure(fid, "delta/chang>=0.4sqrt(t)",
                                            f"{ratio:.6f}", f"{floor:.6f}"))
    return _timed(run, "chang")


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "core": suite_core,
    "chlt": suite_chlt,
    "tables": suite_tables,
    "composition": suite_composition,
    "napdt": suite_napdt,
    "chang": suite_beating_chang,
}


def run_suite(name: str, max_n: Optional[int] = None, samples: Optional[int] = None,
              seed: int = 0) -> list[SuiteResult]:
    names = list(SUITES) if name == "all" else [name]
    results = []
    for suite_name in names:
        fn = SUITES[suite_name]
        kwargs = {}
        if suite_name == "core":
            kwargs = {"max_n": max_n or 4, "samples": samples or 100, "seed": seed}
        elif suite_name == "chlt":
            kwargs = {"max_n": max_n or 4}
        elif suite_name == "composition":
            kwargs = {"samples": samples or 200, "seed": seed}
        elif suite_name == "napdt":
            kwargs = {"max_n": min(max_n or 3, 3)}
        results.append(fn(**kwargs))
    return results
