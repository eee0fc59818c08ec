"""Exact Fourier analysis of Boolean functions at desk scale."""

from .core import (BooleanFunction, RestrictionMap, Spectrum, basis_change,
                   f2_degree, inverse_wht, make_restriction, restrict, wht,
                   xor_power)
from .gf2 import Gf2Basis, dual_constraints, enumerate_affine_subspaces, rank_of, reduce_mod
from .measures import SpectralProfile, profile, threshold_dims

__all__ = [
    "BooleanFunction", "Spectrum", "RestrictionMap", "Gf2Basis",
    "SpectralProfile", "wht", "inverse_wht", "f2_degree", "restrict",
    "xor_power", "basis_change", "make_restriction", "rank_of", "reduce_mod",
    "enumerate_affine_subspaces", "dual_constraints", "profile", "threshold_dims",
]
