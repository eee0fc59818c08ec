"""Iterative parity fixing: build a set of parities whose every assignment
makes the function constant.

Exact mode realizes the per-round "smallest parity set" as a maximum-dimension
monochromatic affine subspace found by exhaustive canonical enumeration;
greedy mode repeatedly fixes the largest-magnitude coefficient instead and
carries no optimality guarantee. All tie-breaking is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .core import BooleanFunction, restrict, wht
from .errors import SizeGuard
from .gf2 import (EXACT_SEARCH_MAX_N, Gf2Basis, RestrictionMap,
                  dual_constraints, enumerate_affine_subspaces, make_restriction)

MAX_GAMMA = 20  # assignment enumeration guard: 2^|Gamma| restrictions per round


def max_monochromatic(f: BooleanFunction) -> tuple[int, RestrictionMap]:
    """Largest d with f constant on some d-dimensional affine subspace.

    Returns d and the dual constraint map (n - d independent parities with
    the signs the subspace satisfies). Scans d from n downward over the
    canonical subspace enumeration; the first hit wins.
    """
    n = f.n
    if n > EXACT_SEARCH_MAX_N:
        raise SizeGuard(f"exact search limited to n <= {EXACT_SEARCH_MAX_N}")
    table = f.table
    for d in range(n, -1, -1):
        for rows, off in enumerate_affine_subspaces(n, d):
            want = (table >> off) & 1
            # cheap single-row screen before walking the whole subspace
            if any(((table >> (off ^ r)) & 1) != want for r in rows):
                continue
            points = [off]
            ok = True
            for r in rows:
                nxt = [p ^ r for p in points]
                if any(((table >> p) & 1) != want for p in nxt):
                    ok = False
                    break
                points += nxt
            if ok:
                return d, dual_constraints(rows, off, n)
    raise AssertionError("unreachable: every point is a 0-dimensional subspace")


def greedy_step(f: BooleanFunction) -> tuple[int, int]:
    """Heuristic single parity pick: the largest-|coefficient| nonempty mask
    (ties: smallest mask) with the sign whose restriction has smaller weight
    (ties: +1)."""
    if f.is_constant():
        raise ValueError("greedy_step needs a nonconstant function")
    c = wht(f).coeffs
    mags = np.abs(c)
    mags[0] = -1
    mask = int(np.argmax(mags))  # argmax returns the first, i.e. smallest, mask
    w_plus = restrict(f, make_restriction(f.n, [mask], [1])).minus_count
    w_minus = restrict(f, make_restriction(f.n, [mask], [-1])).minus_count
    sign = 1 if w_plus <= w_minus else -1
    return mask, sign


@dataclass(frozen=True)
class NapdtIteration:
    q: int                      # parities added this round
    ell: int                    # coset count of supp(f) after the update
    b_star: Optional[str]       # chosen assignment as +/- string, None when done
    delta_fmin: Optional[Fraction]
    k_fmin: Optional[int]
    kplus_fmin: Optional[int]   # sparsity excluding the empty coefficient

    def to_json_dict(self) -> dict:
        return {
            "q_i": self.q,
            "ell_i": self.ell,
            "b_star": self.b_star,
            "delta_fmin": None if self.delta_fmin is None else
                {"num": self.delta_fmin.numerator, "den": self.delta_fmin.denominator},
            "k_fmin": self.k_fmin,
            "kplus_fmin": self.kplus_fmin,
        }


@dataclass(frozen=True)
class NapdtTrace:
    mode: str
    n: int
    gamma: tuple[int, ...]
    iterations: tuple[NapdtIteration, ...]

    def to_json_dict(self) -> dict:
        return {
            "mode": self.mode,
            "n": self.n,
            "gamma": [f"{g:x}" for g in self.gamma],
            "iterations": [it.to_json_dict() for it in self.iterations],
        }


def _sign_tuple(bidx: int, q: int) -> tuple[int, ...]:
    return tuple(-1 if (bidx >> j) & 1 else 1 for j in range(q))


def _coset_count(supp: list[int], gamma: list[int]) -> int:
    basis = Gf2Basis(gamma)
    return len({basis.reduce(m) for m in supp})


def napdt(f: BooleanFunction, mode: str = "exact") -> tuple[tuple[int, ...], NapdtTrace]:
    """Run the parity-fixing loop; returns the parity set and a full trace."""
    if mode not in ("exact", "greedy"):
        raise ValueError("mode must be 'exact' or 'greedy'")
    if mode == "exact" and f.n > EXACT_SEARCH_MAX_N:
        raise SizeGuard(f"exact mode limited to n <= {EXACT_SEARCH_MAX_N}")

    gamma: list[int] = []
    iterations: list[NapdtIteration] = []
    if f.is_constant():
        return (), NapdtTrace(mode=mode, n=f.n, gamma=(), iterations=())

    supp = [int(m) for m in wht(f).support()]
    fmin = f
    lift: Callable[[int], int] = lambda m: m

    while True:
        # Step (a): make fmin constant with as few parities as the mode provides
        if mode == "exact":
            _d, sub = max_monochromatic(fmin)
            added = [lift(m) for m in sub.gamma]
        else:
            added = []
            g, local_lift = fmin, lift
            while not g.is_constant():
                mask, sign = greedy_step(g)
                added.append(local_lift(mask))
                sub = make_restriction(g.n, [mask], [sign])
                local_lift = (lambda prev, sm: (lambda m: prev(sm.lift(m))))(local_lift, sub)
                g = restrict(g, sub)
        gamma.extend(added)
        if len(gamma) > MAX_GAMMA:
            raise SizeGuard(f"|Gamma| exceeded {MAX_GAMMA}")
        ell = _coset_count(supp, gamma)

        # Step (b): among nonconstant restrictions pick the smallest
        # weight-to-sparsity ratio, ties to the lexicographically first signs
        best: Optional[tuple[Fraction, int, BooleanFunction, RestrictionMap]] = None
        for b in range(1 << len(gamma)):
            rmap = make_restriction(f.n, gamma, _sign_tuple(b, len(gamma)))
            g = restrict(f, rmap)
            if g.is_constant():
                continue
            k_g = len(wht(g).support())
            ratio = g.delta / k_g
            if best is None or ratio < best[0]:
                best = (ratio, b, g, rmap)
        if best is None:
            # every assignment is constant: the loop condition fails
            iterations.append(NapdtIteration(len(added), ell, None, None, None, None))
            break
        _ratio, bidx, fmin, rmap = best
        lift = rmap.lift
        s_fmin = wht(fmin)
        k_fmin = len(s_fmin.support())
        kplus = k_fmin - (1 if s_fmin.coeffs[0] else 0)
        b_str = "".join("-" if (bidx >> j) & 1 else "+" for j in range(len(gamma)))
        iterations.append(NapdtIteration(len(added), ell, b_str,
                                         fmin.delta, k_fmin, kplus))

    return tuple(gamma), NapdtTrace(mode=mode, n=f.n, gamma=tuple(gamma),
                                    iterations=tuple(iterations))
