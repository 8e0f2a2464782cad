"""G-invariant couplings with fixed marginals and their extreme points.

A measure is stored by its per-cell value on each product orbit (invariance
holds by construction). Extremality is decided two independent ways: by the
nullspace of the weighted row/column system on the support (zeta test) and by
G-goodness of the support. All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Optional, Sequence

from .g_good import OrbitGrid, build_orbit_grid, count_maximal_ggood, enumerate_maximal_ggood, is_ggood
from .good_sets import DEFAULT_CAP, CapExceeded
from .group_action import ActionSpec, is_invariant_vector
from .linalg import nullspace_dim, solve

BRUTEFORCE_MAX_ORBITS = 12


class MarginalError(ValueError):
    """Marginals that cannot define K(mu1, mu2)."""


class MembershipError(ValueError):
    """A measure that does not lie in K(mu1, mu2)."""


@dataclass(frozen=True)
class Marginals:
    mu1: tuple[Fraction, ...]
    mu2: tuple[Fraction, ...]

    @classmethod
    def of(cls, mu1: Iterable, mu2: Iterable) -> "Marginals":
        return cls(tuple(Fraction(v) for v in mu1), tuple(Fraction(v) for v in mu2))

    @classmethod
    def uniform(cls, spec: ActionSpec) -> "Marginals":
        return cls((Fraction(1, spec.x_size),) * spec.x_size, (Fraction(1, spec.y_size),) * spec.y_size)


def validate_marginals(grid: OrbitGrid, marg: Marginals) -> None:
    if len(marg.mu1) != grid.x_orbits.universe_size or len(marg.mu2) != grid.y_orbits.universe_size:
        raise MarginalError("marginal length does not match |X| or |Y|")
    if sum(marg.mu1) != sum(marg.mu2):
        raise MarginalError(f"marginal mass mismatch: {sum(marg.mu1)} != {sum(marg.mu2)}")
    if sum(marg.mu1) != 1:
        raise MarginalError(f"marginals must have total mass 1, got {sum(marg.mu1)}")
    if any(v <= 0 for v in marg.mu1 + marg.mu2):
        raise MarginalError("marginals must have full support (all entries > 0)")
    if not is_invariant_vector(marg.mu1, grid.x_orbits):
        raise MarginalError("mu1 is not constant on X-orbits")
    if not is_invariant_vector(marg.mu2, grid.y_orbits):
        raise MarginalError("mu2 is not constant on Y-orbits")


@dataclass(frozen=True)
class InvariantMeasure:
    """Per-cell value on each product orbit, indexed by orbit id."""

    orbit_values: tuple[Fraction, ...]
    grid: OrbitGrid = field(compare=False, repr=False)

    @classmethod
    def from_cells(cls, grid: OrbitGrid, values: Mapping[tuple[int, int], object]) -> "InvariantMeasure":
        """Build from a cell -> value map (missing cells are 0); must be orbit-constant."""
        n = grid.y_orbits.universe_size
        vec = [Fraction(0)] * grid.xy_orbits.universe_size
        for (i, j), v in values.items():
            vec[i * n + j] = Fraction(v)
        if not is_invariant_vector(vec, grid.xy_orbits):
            raise MembershipError("measure is not G-invariant")
        return cls(tuple(vec[orb[0]] for orb in grid.xy_orbits.orbits), grid)

    def cell_value(self, i: int, j: int) -> Fraction:
        n = self.grid.y_orbits.universe_size
        return self.orbit_values[self.grid.xy_orbits.orbit_of[i * n + j]]

    def cell_table(self) -> list[list[Fraction]]:
        m, n = self.grid.x_orbits.universe_size, self.grid.y_orbits.universe_size
        return [[self.cell_value(i, j) for j in range(n)] for i in range(m)]

    def support(self) -> tuple[int, ...]:
        return tuple(o for o, v in enumerate(self.orbit_values) if v > 0)

    def total_mass(self) -> Fraction:
        return sum(
            (v * len(self.grid.xy_orbits.orbits[o]) for o, v in enumerate(self.orbit_values)),
            Fraction(0),
        )

    def combine(self, other: "InvariantMeasure", t) -> "InvariantMeasure":
        """(1 - t) * self + t * other."""
        t = Fraction(t)
        vals = tuple((1 - t) * a + t * b for a, b in zip(self.orbit_values, other.orbit_values))
        return InvariantMeasure(vals, self.grid)


def _marginal_sums(mu: InvariantMeasure):
    table = mu.cell_table()
    rows = [sum(r, Fraction(0)) for r in table]
    cols = [sum(c, Fraction(0)) for c in zip(*table)]
    return rows, cols


def validate_membership(grid: OrbitGrid, marg: Marginals, mu: InvariantMeasure) -> bool:
    if len(mu.orbit_values) != grid.m12:
        raise ValueError("measure has the wrong number of orbit values")
    if len(marg.mu1) != grid.x_orbits.universe_size or len(marg.mu2) != grid.y_orbits.universe_size:
        raise ValueError("marginal dimensions do not match the action")
    if any(v < 0 for v in mu.orbit_values):
        return False
    rows, cols = _marginal_sums(mu)
    return tuple(rows) == marg.mu1 and tuple(cols) == marg.mu2


def _require_member(grid, marg, mu):
    if not validate_membership(grid, marg, mu):
        raise MembershipError("measure is not in K(mu1, mu2)")


def is_extreme_zeta(grid: OrbitGrid, marg: Marginals, mu: InvariantMeasure) -> bool:
    """Extreme iff no nonzero invariant zeta on the support has
    sum_y zeta mu = 0 for every x and sum_x zeta mu = 0 for every y."""
    _require_member(grid, marg, mu)
    supp = mu.support()
    col = {o: k for k, o in enumerate(supp)}
    m, n = grid.x_orbits.universe_size, grid.y_orbits.universe_size
    orbit_of = grid.xy_orbits.orbit_of
    rows = []
    for x in range(m):
        row = [Fraction(0)] * len(supp)
        for y in range(n):
            o = orbit_of[x * n + y]
            if o in col:
                row[col[o]] += mu.orbit_values[o]
        rows.append(row)
    for y in range(n):
        row = [Fraction(0)] * len(supp)
        for x in range(m):
            o = orbit_of[x * n + y]
            if o in col:
                row[col[o]] += mu.orbit_values[o]
        rows.append(row)
    return nullspace_dim(rows, len(supp)) == 0


def is_extreme_support(grid: OrbitGrid, marg: Marginals, mu: InvariantMeasure) -> bool:
    _require_member(grid, marg, mu)
    return is_ggood(grid, mu.support())


def _orbit_system(grid: OrbitGrid, marg: Marginals, orbits: Sequence[int], aggregate: bool):
    """Row- and column-sum equations for per-cell values on ``orbits``.

    With ``aggregate`` only one representative row (column) per X-orbit
    (Y-orbit) is used; invariance makes the other equations copies.
    """
    m, n = grid.x_orbits.universe_size, grid.y_orbits.universe_size
    col = {o: k for k, o in enumerate(orbits)}
    orbit_of = grid.xy_orbits.orbit_of
    xs = [orb[0] for orb in grid.x_orbits.orbits] if aggregate else range(m)
    ys = [orb[0] for orb in grid.y_orbits.orbits] if aggregate else range(n)
    rows, rhs = [], []
    for x in xs:
        row = [0] * len(orbits)
        for y in range(n):
            o = orbit_of[x * n + y]
            if o in col:
                row[col[o]] += 1
        rows.append(row)
        rhs.append(marg.mu1[x])
    for y in ys:
        row = [0] * len(orbits)
        for x in range(m):
            o = orbit_of[x * n + y]
            if o in col:
                row[col[o]] += 1
        rows.append(row)
        rhs.append(marg.mu2[y])
    return rows, rhs


def _measure(grid, orbits, values):
    vec = [Fraction(0)] * grid.m12
    for o, v in zip(orbits, values):
        vec[o] = v
    return InvariantMeasure(tuple(vec), grid)


def solve_on_support(grid: OrbitGrid, marg: Marginals, support: Iterable[int]) -> Optional[InvariantMeasure]:
    """Unique measure carried by a maximal G-good set, or None if it has a negative value."""
    orbits = tuple(sorted(set(support)))
    if len(orbits) != grid.m1 + grid.n1 - 1 or not is_ggood(grid, orbits):
        raise ValueError("support is not a maximal G-good set")
    rows, rhs = _orbit_system(grid, marg, orbits, aggregate=True)
    x, unique = solve(rows, rhs)
    if x is None:
        raise RuntimeError("inconsistent marginal system on a maximal G-good support")
    if not unique:
        raise RuntimeError("marginal system on a maximal G-good support is not uniquely solvable")
    if any(v < 0 for v in x):
        return None
    return _measure(grid, orbits, x)


def _canonical(measures):
    unique = {mu.orbit_values: mu for mu in measures}
    return sorted(unique.values(), key=lambda mu: (mu.support(), mu.orbit_values))


def enumerate_extreme(grid: OrbitGrid, marg: Marginals, cap: Optional[int] = DEFAULT_CAP) -> list[InvariantMeasure]:
    """All extreme points of K(mu1, mu2), ordered by support orbit ids."""
    validate_marginals(grid, marg)
    found = []
    for s in enumerate_maximal_ggood(grid, cap=cap):
        mu = solve_on_support(grid, marg, s)
        if mu is not None:
            found.append(mu)
    return _canonical(found)


def bruteforce_vertices(grid: OrbitGrid, marg: Marginals) -> list[InvariantMeasure]:
    """Vertex oracle: try every orbit subset as a support and keep unique,
    nonnegative solutions of the full (unaggregated) marginal system."""
    if grid.m12 > BRUTEFORCE_MAX_ORBITS:
        raise CapExceeded(f"brute force limited to {BRUTEFORCE_MAX_ORBITS} product orbits, got {grid.m12}")
    validate_marginals(grid, marg)
    found = []
    for size in range(1, grid.m12 + 1):
        for orbits in combinations(range(grid.m12), size):
            rows, rhs = _orbit_system(grid, marg, orbits, aggregate=False)
            x, unique = solve(rows, rhs)
            if x is None or not unique or any(v < 0 for v in x):
                continue
            found.append(_measure(grid, orbits, x))
    return _canonical(found)


@dataclass(frozen=True)
class BoundReport:
    count: int
    bound: int
    m1: int
    n1: int
    m12: int
    maximal_ggood: int

    @property
    def holds(self) -> bool:
        return self.count <= self.bound

    @property
    def sharp(self) -> bool:
        return self.count == self.bound


def verify_bound(grid: OrbitGrid, marg: Marginals, cap: Optional[int] = DEFAULT_CAP) -> BoundReport:
    count = len(enumerate_extreme(grid, marg, cap=cap))
    return BoundReport(
        count=count,
        bound=comb(grid.m12, grid.m1 + grid.n1 - 1),
        m1=grid.m1,
        n1=grid.n1,
        m12=grid.m12,
        maximal_ggood=count_maximal_ggood(grid),
    )


def extreme_for(spec: ActionSpec, marg: Optional[Marginals] = None) -> list[InvariantMeasure]:
    """Convenience wrapper: build the orbit grid and enumerate (uniform marginals by default)."""
    grid = build_orbit_grid(spec)
    return enumerate_extreme(grid, marg or Marginals.uniform(spec))
