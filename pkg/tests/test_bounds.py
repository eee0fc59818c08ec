"""Threshold bound evaluators and the exact inequality verdicts."""

import math
import random
from fractions import Fraction

import pytest

from boolspec.bounds import (appendix_dim_screen, best_chang_bound,
                             best_chang_from_steps, bound_report,
                             chang_dim_bound, chang_weight_bound,
                             verify_inequalities, SKIPPED)
from boolspec.constructions import FamilySpec, closed_form_coeffs, make
from boolspec.core import BooleanFunction, wht
from boolspec.errors import NoValidThreshold, Undefined
from boolspec.measures import threshold_steps

from helpers import and_function, parity_function


def test_chang_weight_bound_values():
    assert chang_weight_bound(27, Fraction(32)) == pytest.approx(0.070880, abs=1e-5)
    assert chang_weight_bound(2, Fraction(2)) == pytest.approx(math.sqrt(2) / 2)
    with pytest.raises(Undefined):
        chang_weight_bound(1, Fraction(10))
    with pytest.raises(Undefined):
        chang_weight_bound(4, Fraction(2))  # t^2 == d


def test_chang_dim_bound_values():
    assert chang_dim_bound(Fraction(4), Fraction(1, 2)) == pytest.approx(4.0)
    assert chang_dim_bound(Fraction(2), Fraction(1, 4)) == pytest.approx(0.5)
    with pytest.raises(Undefined):
        chang_dim_bound(Fraction(2), Fraction(0))
    with pytest.raises(Undefined):
        chang_dim_bound(Fraction(2), Fraction(1))


def test_dim_bound_monotone_in_weight():
    # eta * log2(1/eta) is nondecreasing on (0, 1/e]
    etas = [Fraction(i, 1000) for i in range(1, 368)]
    values = [float(e) * math.log2(1 / float(e)) for e in etas]
    assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))


def test_best_chang_ad88():
    spec = FamilySpec("ad_tt", t=8, tprime=8)
    value, argmax = best_chang_from_steps(
        threshold_steps(spec.arity, closed_form_coeffs(spec)))
    assert argmax == 32
    assert value == pytest.approx(0.070880, abs=1e-5)


def test_best_chang_bent_and_and2():
    value, argmax = best_chang_bound(wht(and_function(2)))
    assert argmax == 2
    assert value == pytest.approx(0.70710678, abs=1e-7)


def test_best_chang_degenerate_raises():
    with pytest.raises(NoValidThreshold):
        best_chang_bound(wht(parity_function(3, 0b1)))


def test_best_chang_step_points_dominate_dense_grid():
    rng = random.Random(17)
    checked = 0
    while checked < 25:
        f = BooleanFunction.random(4, rng)
        steps = threshold_steps(4, {int(m): int(c) for m, c in
                                    enumerate(wht(f).coeffs) if c})
        try:
            best, _ = best_chang_from_steps(steps)
        except NoValidThreshold:
            continue
        checked += 1
        # scan a dense grid of thresholds; dim(S_t) is the step function
        for i in range(1, 400):
            t = 1 + i / 25.0
            dim = 0
            for st, sd in steps:
                if st <= t:
                    dim = sd
            if dim <= 1 or t * t <= dim:
                continue
            value = chang_weight_bound(dim, t)
            assert value <= best * (1 + 1e-9)


def test_verify_inequalities_and3():
    verdicts = {v.name: v for v in verify_inequalities(and_function(3))}
    v = verdicts["delta_ge_(k-1)/4k'2"]
    assert v.passed and v.lhs == 0.125 and v.rhs == pytest.approx(7 / 64)
    v = verdicts["level1_le_4degf2"]
    assert v.passed and v.lhs == pytest.approx(0.75) and v.rhs == 12.0
    v = verdicts["level1_le_32*delta*degf2"]
    assert v.passed and v.rhs == pytest.approx(12.0)
    assert verdicts["k*delta_ge_1"].passed


def test_verify_inequalities_skips_degenerate():
    verdicts = verify_inequalities(parity_function(2, 0b1))
    assert len(verdicts) == 1 and verdicts[0].name == SKIPPED


def test_verify_inequalities_exhaustive_small():
    for n in (1, 2, 3):
        for table in range(1 << (1 << n)):
            for v in verify_inequalities(BooleanFunction(n, table)):
                assert v.passed, (n, table, v)


def test_appendix_screen_records_only():
    violations = []
    for table in range(256):
        f = BooleanFunction(3, table)
        s = wht(f)
        coeffs = {int(m): int(c) for m, c in enumerate(s.coeffs) if c}
        violations += appendix_dim_screen(3, coeffs, f.delta)
    # a desk-scale screen: violations are reported, not asserted away
    print(f"appendix dimension screen: {len(violations)} flagged at C=64")
    assert isinstance(violations, list)
    assert appendix_dim_screen(2, {0: 0, 3: 4}, Fraction(1, 2)) == []


def test_bound_report_shapes():
    rep = bound_report(and_function(3))
    data = rep.to_json_dict()
    assert set(data) == {"chang_best", "chang_argmax", "kline", "kprime_curve",
                         "kdprime_curve", "verdicts"}
    assert rep.kprime_curve == pytest.approx(0.5)  # k/k'^2 = 8/16
    assert all(v["pass"] for v in data["verdicts"])
    rep = bound_report(BooleanFunction(2, 0))
    assert rep.chang_best is None and rep.kline is None
