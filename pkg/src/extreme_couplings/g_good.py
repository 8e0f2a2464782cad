"""The orbit grid X/G x Y/G and G-good sets.

Each product orbit projects onto one X-orbit and one Y-orbit; ``phi`` files
it in that cell of the orbit grid. A G-invariant set (given by its orbit ids)
is G-good exactly when phi is injective on it and the image is good.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod
from typing import Iterable, Iterator, Optional

from .good_sets import DEFAULT_CAP, CapExceeded, GridSubset, _spanning_trees, count_maximal_good, is_good
from .group_action import ActionSpec, OrbitPartition, orbits_product, orbits_x, orbits_y
from .linalg import rank


@dataclass(frozen=True)
class OrbitGrid:
    m1: int
    n1: int
    cell_orbits: dict  # (i, j) -> tuple of product-orbit ids
    orbit_cell: tuple[tuple[int, int], ...]  # product-orbit id -> (i, j)
    x_orbits: OrbitPartition
    y_orbits: OrbitPartition
    xy_orbits: OrbitPartition

    @property
    def m12(self) -> int:
        return self.xy_orbits.num_orbits

    def alpha(self, i: int, j: int) -> int:
        return len(self.cell_orbits[(i, j)])

    def alphas(self) -> list[list[int]]:
        return [[self.alpha(i, j) for j in range(self.n1)] for i in range(self.m1)]

    def is_constant_alpha(self) -> Optional[int]:
        values = {self.alpha(i, j) for i in range(self.m1) for j in range(self.n1)}
        return values.pop() if len(values) == 1 else None


def build_orbit_grid(spec: ActionSpec) -> OrbitGrid:
    ox, oy, oxy = orbits_x(spec), orbits_y(spec), orbits_product(spec)
    cells: dict[tuple[int, int], list[int]] = {
        (i, j): [] for i in range(ox.num_orbits) for j in range(oy.num_orbits)
    }
    orbit_cell = []
    for oid, members in enumerate(oxy.orbits):
        x, y = spec.cell_coords(members[0])
        key = (ox.orbit_of[x], oy.orbit_of[y])
        cells[key].append(oid)
        orbit_cell.append(key)
    return OrbitGrid(
        ox.num_orbits,
        oy.num_orbits,
        {k: tuple(v) for k, v in cells.items()},
        tuple(orbit_cell),
        ox,
        oy,
        oxy,
    )


def phi(grid: OrbitGrid, orbit_id: int) -> tuple[int, int]:
    if not 0 <= orbit_id < grid.m12:
        raise KeyError(f"unknown product orbit {orbit_id}")
    return grid.orbit_cell[orbit_id]


def _check_ids(grid, s):
    ids = sorted(set(s))
    for o in ids:
        if not isinstance(o, int) or not 0 <= o < grid.m12:
            raise ValueError(f"invalid product-orbit id {o!r}")
    return ids


def is_ggood(grid: OrbitGrid, s: Iterable[int]) -> bool:
    ids = _check_ids(grid, s)
    image = [phi(grid, o) for o in ids]
    if len(set(image)) != len(image):
        return False
    return is_good(GridSubset.of(grid.m1, grid.n1, image))


def ggood_rank_oracle(grid: OrbitGrid, s: Iterable[int]) -> bool:
    """Direct check of the definition.

    One equation u[X-orbit] + v[Y-orbit] = f(o) per orbit o of ``s``; every
    invariant f decomposes iff the system has full row rank.
    """
    ids = _check_ids(grid, s)
    if not ids:
        return True
    rows = []
    for o in ids:
        i, j = grid.orbit_cell[o]
        row = [0] * (grid.m1 + grid.n1)
        row[i] = 1
        row[grid.m1 + j] = 1
        rows.append(row)
    return rank(rows) == len(ids)


def count_maximal_ggood(grid: OrbitGrid) -> int:
    """Sum over maximal good sets T of the orbit grid of the product of alpha over T.

    Sums over the trees while there are at most DEFAULT_CAP of them; beyond
    that only the constant-alpha closed form is available.
    """
    if count_maximal_good(grid.m1, grid.n1) > DEFAULT_CAP:
        a = grid.is_constant_alpha()
        if a is None:
            raise CapExceeded("orbit grid too large to sum over its spanning trees")
        return a ** (grid.m1 + grid.n1 - 1) * count_maximal_good(grid.m1, grid.n1)
    return sum(
        prod(grid.alpha(i, j) for i, j in t.cells)
        for t in _spanning_trees(grid.m1, grid.n1)
    )


def enumerate_maximal_ggood(grid: OrbitGrid, cap: Optional[int] = DEFAULT_CAP) -> Iterator[tuple[int, ...]]:
    """Yield maximal G-good sets as sorted orbit-id tuples.

    Ordered by the canonical order of their image tree, then lexicographically
    over the per-cell orbit choices (in the tree's cell order).
    """
    if cap is not None:
        trees = count_maximal_good(grid.m1, grid.n1)
        if trees > cap:
            raise CapExceeded(f"{trees} maximal good sets in the orbit grid exceed the cap {cap}")
        total = count_maximal_ggood(grid)
        if total > cap:
            raise CapExceeded(f"{total} maximal G-good sets exceed the cap {cap}")
    return _lift(grid)


def _lift(grid):
    for t in _spanning_trees(grid.m1, grid.n1):
        for choice in product(*(grid.cell_orbits[c] for c in t.cells)):
            yield tuple(sorted(choice))


def replace_in_cell(grid: OrbitGrid, s: Iterable[int], old: int, new: int) -> tuple[int, ...]:
    """Swap orbit ``old`` of ``s`` for ``new`` lying in the same orbit-grid cell."""
    ids = set(_check_ids(grid, s))
    if old not in ids:
        raise ValueError(f"orbit {old} not in the set")
    if phi(grid, old) != phi(grid, new):
        raise ValueError("replacement orbit lies in a different cell")
    ids.discard(old)
    ids.add(new)
    return tuple(sorted(ids))
