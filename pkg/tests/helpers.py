"""Shared builders and brute-force oracles for the test suite."""

from __future__ import annotations

from boolspec.core import BooleanFunction


def and_function(n: int) -> BooleanFunction:
    """-1 exactly when every input is -1."""
    return BooleanFunction(n, 1 << ((1 << n) - 1))


def parity_function(n: int, mask: int) -> BooleanFunction:
    table = 0
    for idx in range(1 << n):
        if (idx & mask).bit_count() & 1:
            table |= 1 << idx
    return BooleanFunction(n, table)


def naive_wht(f: BooleanFunction) -> list[int]:
    """Direct double-loop summation sum_x f(x) chi_S(x)."""
    out = []
    for mask in range(1 << f.n):
        total = 0
        for idx in range(1 << f.n):
            sign = -1 if (mask & idx).bit_count() & 1 else 1
            total += f.value_at(idx) * sign
        out.append(total)
    return out
