"""Mask algebra: rank, coset reduction, subspace enumeration, dual constraints."""

import random

import pytest

from boolspec.core import wht
from boolspec.errors import DependentMasks, SizeGuard
from boolspec.gf2 import (Gf2Basis, dual_constraints, enumerate_affine_subspaces,
                          gaussian_binomial, make_restriction, rank_of, reduce_mod)
from boolspec.constructions import FamilySpec, make


def test_rank_examples():
    ad2 = make(FamilySpec("addressing", t=2))
    supp = [int(m) for m in wht(ad2).support()]
    assert rank_of(supp) == 3
    assert rank_of([0]) == 0
    assert rank_of(range(16)) == 4


def test_rank_order_independent():
    rng = random.Random(2)
    for _ in range(30):
        masks = [rng.getrandbits(5) for _ in range(rng.randint(1, 8))]
        shuffled = masks[:]
        rng.shuffle(shuffled)
        r = rank_of(masks)
        assert r == rank_of(shuffled)
        assert r <= min(5, len(masks))


def test_reduce_mod_examples():
    span = Gf2Basis([0b011])
    assert reduce_mod(span, 0b010) == 0b001
    assert reduce_mod(Gf2Basis(), 0b1101) == 0b1101
    assert reduce_mod(span, 0b011) == 0


def test_reduce_mod_is_coset_canonical():
    rng = random.Random(9)
    for _ in range(40):
        span = Gf2Basis(rng.getrandbits(6) for _ in range(3))
        m1, m2 = rng.getrandbits(6), rng.getrandbits(6)
        same = reduce_mod(span, m1) == reduce_mod(span, m2)
        assert same == span.contains(m1 ^ m2)


def test_enumerate_affine_subspace_counts():
    assert sum(1 for _ in enumerate_affine_subspaces(2, 1)) == 6
    assert sum(1 for _ in enumerate_affine_subspaces(3, 3)) == 1
    assert sum(1 for _ in enumerate_affine_subspaces(3, 0)) == 8
    for n in range(6):
        for d in range(n + 1):
            count = sum(1 for _ in enumerate_affine_subspaces(n, d))
            assert count == gaussian_binomial(n, d) << (n - d)


def test_enumerate_affine_subspaces_distinct():
    for n, d in [(3, 1), (3, 2), (4, 2)]:
        seen = set()
        for rows, off in enumerate_affine_subspaces(n, d):
            points = [off]
            for r in rows:
                points += [p ^ r for p in points]
            key = frozenset(points)
            assert key not in seen
            seen.add(key)


def test_enumerate_size_guard():
    with pytest.raises(SizeGuard):
        next(enumerate_affine_subspaces(11, 2))


def test_dual_constraints_standard_cases():
    rm = dual_constraints([0b10, 0b100], 0, 3)
    assert rm.gamma == (0b1,) and rm.b == (1,)
    rm = dual_constraints([], 0b101, 3)
    assert rm.gamma == (0b1, 0b10, 0b100)
    assert rm.b == (-1, 1, -1)


def test_dual_constraints_membership_round_trip():
    rng = random.Random(13)
    for _ in range(40):
        n = 4
        d = rng.randint(0, n)
        basis = Gf2Basis()
        rows = []
        while len(rows) < d:
            m = rng.getrandbits(n)
            if m and basis.add(m):
                rows.append(m)
        off = rng.getrandbits(n)
        rm = dual_constraints(rows, off, n)
        assert rm.codim == n - d
        points = {off}
        for combo in range(1 << d):
            x = off
            for j in range(d):
                if (combo >> j) & 1:
                    x ^= rows[j]
            points.add(x)
        assert {i for i in range(1 << n) if rm.member(i)} == points


def test_make_restriction_pivots_and_free():
    rm = make_restriction(4, [0b0110, 0b1100], [1, -1])
    assert rm.pivots == (2, 3)
    assert rm.free == (1, 4)
    assert len(rm.rows) == 2
    with pytest.raises(DependentMasks):
        make_restriction(4, [0b0110, 0b1100, 0b1010], [1, 1, 1])


def test_restriction_map_solve_members():
    rng = random.Random(21)
    for _ in range(25):
        n = 5
        q = rng.randint(1, 4)
        masks = []
        while len(masks) < q:
            m = rng.getrandbits(n)
            if m and rank_of(masks + [m]) == len(masks) + 1:
                masks.append(m)
        signs = [rng.choice((1, -1)) for _ in range(q)]
        rm = make_restriction(n, masks, signs)
        solved = {rm.solve_index(z) for z in range(1 << (n - q))}
        assert len(solved) == 1 << (n - q)
        assert all(rm.member(x) for x in solved)
        for g, s in zip(masks, signs):
            for x in solved:
                chi = -1 if (g & x).bit_count() & 1 else 1
                assert chi == s
