"""Extreme points of group-invariant couplings with fixed marginals.

Exact-arithmetic tools for finite sets X, Y acted on by a permutation group G:
orbit computation, good / G-good subsets of product grids, enumeration of the
extreme points of the polytope of G-invariant couplings, and the counting
results (spanning trees of K_{m,n}, ratios against binomial bounds).
"""

from .group_action import ActionSpec, OrbitPartition, orbits_product, orbits_x, orbits_y
from .good_sets import GridSubset, count_maximal_good, enumerate_maximal_good, find_loop, is_good
from .g_good import OrbitGrid, build_orbit_grid, count_maximal_ggood, enumerate_maximal_ggood, is_ggood
from .extreme_measures import (
    InvariantMeasure,
    Marginals,
    enumerate_extreme,
    is_extreme_support,
    is_extreme_zeta,
    verify_bound,
)
from .counting import ratio_constant_alpha, ratio_exact, ratio_table

__version__ = "0.1.0"

__all__ = [
    "ActionSpec",
    "OrbitPartition",
    "orbits_x",
    "orbits_y",
    "orbits_product",
    "GridSubset",
    "find_loop",
    "is_good",
    "enumerate_maximal_good",
    "count_maximal_good",
    "OrbitGrid",
    "build_orbit_grid",
    "is_ggood",
    "enumerate_maximal_ggood",
    "count_maximal_ggood",
    "Marginals",
    "InvariantMeasure",
    "is_extreme_zeta",
    "is_extreme_support",
    "enumerate_extreme",
    "verify_bound",
    "ratio_exact",
    "ratio_constant_alpha",
    "ratio_table",
]
