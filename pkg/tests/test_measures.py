"""Spectral profiles and the threshold step function."""

import math
import random
from fractions import Fraction

from boolspec.constructions import FamilySpec, make
from boolspec.core import BooleanFunction, wht
from boolspec.measures import profile, profile_of_spectrum, threshold_dims

from helpers import and_function, parity_function


def test_profile_and3():
    p = profile(and_function(3))
    assert (p.delta, p.k, p.r) == (Fraction(1, 8), 8, 3)
    assert p.kprime == 4 and p.kdprime == 4
    assert p.degf2 == 3 and not p.degenerate


def test_profile_ad4():
    p = profile(make(FamilySpec("addressing", t=4)))
    assert (p.delta, p.k, p.r, p.kprime, p.kdprime) == (Fraction(1, 2), 16, 6, 4, 4)


def test_profile_ad_4_8():
    p = profile(make(FamilySpec("ad_tt", t=4, tprime=8)))
    assert (p.delta, p.k, p.r, p.kprime, p.kdprime) == (Fraction(1, 8), 113, 14, 16, 16)


def test_profile_degenerate_cases():
    p = profile(BooleanFunction(3, 0))
    assert p.degenerate and (p.k, p.r, p.kprime, p.kdprime) == (1, 0, 1, 0)
    p = profile(parity_function(3, 0b101))
    assert p.degenerate and (p.k, p.r, p.kprime, p.kdprime) == (1, 1, 1, 1)


def test_threshold_dims_ad_tt_two_steps():
    from boolspec.constructions import closed_form_coeffs
    from boolspec.measures import threshold_steps

    spec = FamilySpec("ad_tt", t=8, tprime=8)
    steps = threshold_steps(spec.arity, closed_form_coeffs(spec))
    assert steps == [(Fraction(8, 6), 0), (Fraction(32), 27)]
    # sparse path agrees with the dense transform at buildable size
    small = FamilySpec("ad_tt", t=4, tprime=4)
    assert threshold_dims(wht(make(small))) == \
        threshold_steps(small.arity, closed_form_coeffs(small))


def test_threshold_dims_trivia():
    assert threshold_dims(wht(BooleanFunction(2, 0))) == [(Fraction(1), 0)]
    assert threshold_dims(wht(and_function(2))) == [(Fraction(2), 2)]


def test_threshold_dims_monotone_and_final_rank():
    rng = random.Random(31)
    for _ in range(40):
        f = BooleanFunction.random(4, rng)
        s = wht(f)
        steps = threshold_dims(s)
        p = profile_of_spectrum(s)
        dims = [d for _t, d in steps]
        assert dims == sorted(dims)
        assert dims[-1] == p.r
        if not p.degenerate:
            # dim stays below r strictly before kdprime, reaches r exactly there
            for t, d in steps:
                if t < p.kdprime:
                    assert d < p.r
                if t == p.kdprime:
                    assert d == p.r


def test_relationship_ranges_exhaustive():
    for n in (1, 2, 3):
        for table in range(1 << (1 << n)):
            p = profile(BooleanFunction(n, table))
            if p.degenerate:
                continue
            assert p.k <= 1 << p.r
            assert p.kprime * p.kprime >= p.k
            assert 2 * p.kprime <= p.k
            assert p.kdprime * p.kdprime >= p.r
            assert 4 * float(p.kdprime) * math.log2(p.k) >= p.r - 1e-9
            assert p.kdprime <= p.kprime
            assert p.k * p.delta >= 1


def test_l1_bound_exhaustive_small():
    for n in (1, 2, 3):
        for table in range(1 << (1 << n)):
            f = BooleanFunction(n, table)
            s = wht(f)
            k = len(s.support())
            if k <= 1:
                continue
            l1 = Fraction(int(sum(abs(c) for c in s.coeffs)), 1 << n)
            assert l1 * l1 <= 9 * k * f.delta
