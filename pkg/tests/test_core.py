"""Transforms, restrictions, and the bit-exact core conventions."""

import random
from fractions import Fraction

import numpy as np
import pytest

from boolspec.core import (BooleanFunction, Spectrum, apply_gf2_matrix,
                           basis_change, f2_degree, format_spectrum_csv,
                           format_table_text, inverse_wht, invert_gf2_matrix,
                           make_restriction, parse_spectrum_csv,
                           parse_table_text, restrict, transpose_gf2_matrix,
                           wht, xor_power)
from boolspec.errors import DependentMasks, NotBoolean, SingularMatrix, SizeGuard
from boolspec.gf2 import rank_of

from helpers import and_function, naive_wht, parity_function


def test_wht_and2():
    s = wht(parse_table_text("2\n+++-\n"))
    assert s.coeffs.tolist() == [2, 2, 2, -2]


def test_wht_constant():
    s = wht(BooleanFunction(3, 0))
    assert s.coeffs.tolist() == [8] + [0] * 7


def test_wht_matches_naive_summation():
    rng = random.Random(11)
    for _ in range(25):
        f = BooleanFunction.random(3, rng)
        assert wht(f).coeffs.tolist() == naive_wht(f)


def test_inverse_wht_examples():
    and2 = and_function(2)
    assert inverse_wht(Spectrum(2, np.array([2, 2, 2, -2]))) == and2
    assert inverse_wht(Spectrum(3, np.array([8, 0, 0, 0, 0, 0, 0, 0]))) == BooleanFunction(3, 0)
    with pytest.raises(NotBoolean):
        inverse_wht(Spectrum(2, np.array([1, 0, 0, 0])))


def test_wht_round_trip():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(1, 5)
        f = BooleanFunction.random(n, rng)
        assert inverse_wht(wht(f)) == f


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_parseval_exhaustive(n):
    for table in range(1 << (1 << n)):
        c = wht(BooleanFunction(n, table)).coeffs
        assert int(np.sum(c.astype(object) * c)) == 4 ** n


def test_f2_degree_examples():
    assert f2_degree(and_function(3)) == 3
    assert f2_degree(parity_function(3, 0b111)) == 1
    assert f2_degree(BooleanFunction(4, 0)) == 0
    assert f2_degree(BooleanFunction(2, 0b1111)) == 0


def test_f2_degree_at_most_log_sparsity():
    for n in (1, 2, 3):
        for table in range(1 << (1 << n)):
            f = BooleanFunction(n, table)
            k = len(wht(f).support())
            if k > 1:
                assert (1 << f2_degree(f)) <= k


def test_restrict_examples():
    and2 = and_function(2)
    g = restrict(and2, make_restriction(2, [0b01], [1]))
    assert g == BooleanFunction(1, 0)
    g = restrict(and2, make_restriction(2, [0b01], [-1]))
    assert format_table_text(g) == "1\n+-\n"
    chi12 = parity_function(2, 0b11)
    g = restrict(chi12, make_restriction(2, [0b11], [-1]))
    assert g == BooleanFunction(1, 0b11)


def test_restrict_dependent_masks():
    with pytest.raises(DependentMasks):
        make_restriction(3, [0b011, 0b101, 0b110], [1, 1, 1])


def test_restriction_weight_average_is_exact():
    # averaging the weight over all assignments of an independent set
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randint(2, 4)
        f = BooleanFunction.random(n, rng)
        q = rng.randint(1, n)
        masks = []
        while len(masks) < q:
            m = rng.getrandbits(n)
            if m and rank_of(masks + [m]) == len(masks) + 1:
                masks.append(m)
        total = Fraction(0)
        for b in range(1 << q):
            signs = [(-1 if (b >> j) & 1 else 1) for j in range(q)]
            total += restrict(f, make_restriction(n, masks, signs)).delta
        assert total / (1 << q) == f.delta


def test_xor_power_identity_and_tensor():
    and2 = and_function(2)
    assert xor_power(and2, 1) == and2
    F = xor_power(and2, 2)
    cf = wht(and2).coeffs
    cF = wht(F).coeffs
    for m1 in range(4):
        for m2 in range(4):
            assert cF[m1 | (m2 << 2)] == cf[m1] * cf[m2]
    level1 = sum(Fraction(int(abs(cF[1 << i])), 16) for i in range(4))
    assert level1 == 1


def test_xor_power_tensor_law_exhaustive_small():
    rng = random.Random(19)
    for n, t in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3)]:
        f = BooleanFunction.random(n, rng)
        cf = wht(f).coeffs
        cF = wht(xor_power(f, t)).coeffs
        for mask in range(1 << (n * t)):
            prod = 1
            for i in range(t):
                prod *= int(cf[(mask >> (i * n)) & ((1 << n) - 1)])
            assert int(cF[mask]) == prod


def test_xor_power_parity_stays_sparse():
    chi = parity_function(1, 0b1)
    F = xor_power(chi, 3)
    assert len(wht(F).support()) == 1


def test_xor_power_size_guard(monkeypatch):
    monkeypatch.setenv("BOOLSPEC_MAX_N", "8")
    f = BooleanFunction(3, 0b10000000)
    with pytest.raises(SizeGuard):
        xor_power(f, 3)


def test_basis_change_identity_and_swap():
    and2 = and_function(2)
    s = wht(and2)
    ident = [0b01, 0b10]
    assert basis_change(s, ident) == s
    swap = [0b10, 0b01]
    swapped = basis_change(s, swap)
    assert sorted(swapped.coeffs.tolist()) == sorted(s.coeffs.tolist())
    assert inverse_wht(swapped) == and2  # AND is symmetric in its inputs


def test_basis_change_random_invertible():
    rng = random.Random(23)
    f = BooleanFunction.random(4, rng)
    s = wht(f)
    d = f2_degree(f)
    done = 0
    while done < 10:
        rows = [rng.getrandbits(4) for _ in range(4)]
        if rank_of(rows) != 4:
            continue
        done += 1
        sb = basis_change(s, rows)
        fb = inverse_wht(sb)  # Boolean-valued by construction
        assert f2_degree(fb) == d
        # substitution oracle: table of f_B at u equals f at (B^-1)^T u
        binv_t = transpose_gf2_matrix(invert_gf2_matrix(rows))
        mapped = apply_gf2_matrix(binv_t, np.arange(16, dtype=np.int64))
        assert np.array_equal(fb.bits(), f.bits()[mapped])


def test_basis_change_singular():
    s = wht(and_function(2))
    with pytest.raises(SingularMatrix):
        basis_change(s, [0b11, 0b11])


def test_granularity_exhaustive_small():
    for n in (2, 3):
        for table in range(1 << (1 << n)):
            c = wht(BooleanFunction(n, table)).coeffs
            nz = [int(abs(x)) for x in c if x]
            k = len(nz)
            if k <= 1:
                continue
            step = 1 << (n + 1 - (k.bit_length() - 1))
            assert all(v % step == 0 for v in nz)


def test_table_text_round_trip():
    rng = random.Random(5)
    for _ in range(10):
        f = BooleanFunction.random(rng.randint(1, 6), rng)
        assert parse_table_text(format_table_text(f)) == f
    with pytest.raises(ValueError):
        parse_table_text("2\n++*-\n")


def test_spectrum_csv_round_trip():
    f = and_function(3)
    s = wht(f)
    text = format_spectrum_csv(s)
    lines = text.splitlines()
    assert lines[0] == "mask_hex,c,fhat_num,fhat_den"
    assert len(lines) == 1 + len(s.support())
    assert parse_spectrum_csv(text, 3) == s
