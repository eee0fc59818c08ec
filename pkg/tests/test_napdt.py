"""Parity-fixing algorithm: monochromatic search, greedy picks, traces."""

import json
import random

import pytest

from boolspec.constructions import FamilySpec, make
from boolspec.core import BooleanFunction, make_restriction, restrict, wht
from boolspec.errors import SizeGuard
from boolspec.napdt import greedy_step, max_monochromatic, napdt

from helpers import and_function, parity_function


def test_max_monochromatic_and3():
    d, rm = max_monochromatic(and_function(3))
    assert d == 2 and rm.codim == 1


def test_max_monochromatic_parity():
    d, rm = max_monochromatic(parity_function(3, 0b111))
    assert d == 2 and rm.gamma == (0b111,)


def test_max_monochromatic_ad2():
    d, rm = max_monochromatic(make(FamilySpec("addressing", t=2)))
    assert d == 1 and rm.codim == 2


def test_max_monochromatic_result_is_monochromatic():
    rng = random.Random(41)
    for _ in range(30):
        n = rng.randint(1, 5)
        f = BooleanFunction.random(n, rng)
        d, rm = max_monochromatic(f)
        assert rm.codim == n - d
        values = {f.value_at(rm.solve_index(z)) for z in range(1 << d)}
        assert len(values) == 1


def test_max_monochromatic_codimension_floor():
    # codimension never exceeds 3 sqrt(delta k), exhaustively at n <= 3
    for n in (1, 2, 3):
        for table in range(1 << (1 << n)):
            f = BooleanFunction(n, table)
            d, _rm = max_monochromatic(f)
            q = n - d
            k = len(wht(f).support())
            assert q * q * (1 << n) <= 9 * f.minus_count * k or q == 0


def test_max_monochromatic_size_guard():
    with pytest.raises(SizeGuard):
        max_monochromatic(BooleanFunction(11, 0))


def test_greedy_step_examples():
    mask, sign = greedy_step(and_function(2))
    assert mask == 0b01 and sign == 1
    assert restrict(and_function(2),
                    make_restriction(2, [mask], [sign])).is_constant()
    mask, sign = greedy_step(parity_function(3, 0b101))
    assert mask == 0b101
    g = restrict(parity_function(3, 0b101), make_restriction(3, [mask], [sign]))
    assert g.is_constant()


def test_napdt_named_examples():
    gamma, trace = napdt(BooleanFunction(3, 0))
    assert gamma == () and trace.iterations == ()
    gamma, _ = napdt(parity_function(2, 0b11))
    assert len(gamma) == 1
    gamma, trace = napdt(and_function(3))
    assert len(gamma) == 3
    for b in range(8):
        signs = [(-1 if (b >> j) & 1 else 1) for j in range(3)]
        assert restrict(and_function(3),
                        make_restriction(3, list(gamma), signs)).is_constant()
    # 3 <= 6 sqrt(k delta) log2 k = 18
    assert len(gamma) <= 18


def test_napdt_trace_json_and_determinism():
    f = make(FamilySpec("ad_tt", t=2, tprime=4))
    gamma1, trace1 = napdt(f)
    gamma2, trace2 = napdt(f)
    assert gamma1 == gamma2
    assert json.dumps(trace1.to_json_dict()) == json.dumps(trace2.to_json_dict())
    data = trace1.to_json_dict()
    assert data["mode"] == "exact"
    assert all(set(it) == {"q_i", "ell_i", "b_star", "delta_fmin",
                           "k_fmin", "kplus_fmin"} for it in data["iterations"])


def test_napdt_greedy_mode():
    rng = random.Random(43)
    for _ in range(20):
        n = rng.randint(1, 4)
        f = BooleanFunction.random(n, rng)
        gamma, _ = napdt(f, "greedy")
        for b in range(1 << len(gamma)):
            signs = [(-1 if (b >> j) & 1 else 1) for j in range(len(gamma))]
            assert restrict(f, make_restriction(n, list(gamma), signs)).is_constant()


def test_napdt_exact_size_guard():
    with pytest.raises(SizeGuard):
        napdt(BooleanFunction(11, 0), "exact")


def test_napdt_gamma_independent_and_spans_support():
    from boolspec.gf2 import Gf2Basis, rank_of
    rng = random.Random(47)
    for _ in range(20):
        n = rng.randint(2, 5)
        f = BooleanFunction.random(n, rng)
        gamma, _ = napdt(f)
        assert rank_of(gamma) == len(gamma)
        basis = Gf2Basis(gamma)
        assert all(basis.contains(int(m)) for m in wht(f).support())
