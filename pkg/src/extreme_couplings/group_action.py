"""Finite permutation actions on X and Y and their orbit partitions.

A group is given only through generators. Each generator is a pair
``(perm_x, perm_y)`` describing the action of one abstract element on X and
on Y; the product X x Y carries the diagonal action g(x, y) = (g(x), g(y)).
Cells of X x Y are indexed row-major: ``i * y_size + j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Sequence


class ActionError(ValueError):
    """Raised when an ActionSpec violates its invariants."""


@dataclass(frozen=True)
class ActionSpec:
    x_size: int
    y_size: int
    generators: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] = ()

    @classmethod
    def from_lists(cls, x_size, y_size, generators=()):
        gens = tuple((tuple(px), tuple(py)) for px, py in generators)
        return cls(int(x_size), int(y_size), gens)

    def cell(self, i: int, j: int) -> int:
        return i * self.y_size + j

    def cell_coords(self, c: int) -> tuple[int, int]:
        return divmod(c, self.y_size)


@dataclass(frozen=True)
class OrbitPartition:
    universe_size: int
    orbit_of: tuple[int, ...]
    orbits: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def num_orbits(self) -> int:
        return len(self.orbits)


def _perm_problems(perm, size, label):
    problems = []
    if len(perm) != size:
        problems.append(f"{label} has length {len(perm)}, expected {size}")
    bad = [p for p in perm if not isinstance(p, int) or isinstance(p, bool) or not 0 <= p < size]
    if bad:
        problems.append(f"{label} index out of range: {bad[0]!r}")
    elif len(set(perm)) != len(perm):
        problems.append(f"{label} not a bijection")
    return problems


def validate_action(spec: ActionSpec) -> list[str]:
    """Return a list of violations; an empty list means the spec is valid."""
    problems = []
    for name, size in (("x_size", spec.x_size), ("y_size", spec.y_size)):
        if not isinstance(size, int) or size < 1:
            problems.append(f"{name} must be a positive integer, got {size!r}")
    if problems:
        return problems
    for k, (px, py) in enumerate(spec.generators):
        problems += _perm_problems(px, spec.x_size, f"generator {k}: perm_x")
        problems += _perm_problems(py, spec.y_size, f"generator {k}: perm_y")
    return problems


def require_valid(spec: ActionSpec) -> None:
    problems = validate_action(spec)
    if problems:
        raise ActionError("; ".join(problems))


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            # keep the smaller index as root so roots are orbit minima
            if b < a:
                a, b = b, a
            self.parent[b] = a


def _partition(size: int, images: Sequence[Sequence[int]]) -> OrbitPartition:
    uf = _UnionFind(size)
    for img in images:
        for e in range(size):
            uf.union(e, img[e])
    ids: dict[int, int] = {}
    orbit_of = []
    members: list[list[int]] = []
    for e in range(size):
        root = uf.find(e)
        if root not in ids:
            ids[root] = len(members)
            members.append([])
        orbit_of.append(ids[root])
        members[ids[root]].append(e)
    return OrbitPartition(size, tuple(orbit_of), tuple(tuple(m) for m in members))


def orbits_x(spec: ActionSpec) -> OrbitPartition:
    require_valid(spec)
    return _partition(spec.x_size, [px for px, _ in spec.generators])


def orbits_y(spec: ActionSpec) -> OrbitPartition:
    require_valid(spec)
    return _partition(spec.y_size, [py for _, py in spec.generators])


def orbits_product(spec: ActionSpec) -> OrbitPartition:
    """Orbits of the diagonal action on the row-major cells of X x Y."""
    require_valid(spec)
    m, n = spec.x_size, spec.y_size
    images = []
    for px, py in spec.generators:
        images.append([px[i] * n + py[j] for i in range(m) for j in range(n)])
    return _partition(m * n, images)


def is_invariant_vector(values: Sequence, partition: OrbitPartition) -> bool:
    if len(values) != partition.universe_size:
        raise ValueError(
            f"vector length {len(values)} does not match universe size {partition.universe_size}"
        )
    return all(len({values[e] for e in orb}) <= 1 for orb in partition.orbits)


# Ready-made actions used by tests, golden instances and the CLI.


def trivial_action(m: int, n: int) -> ActionSpec:
    return ActionSpec(m, n, ())


def swap_action() -> ActionSpec:
    """Z/2 swapping both points of X = Y = {0, 1}."""
    return ActionSpec(2, 2, (((1, 0), (1, 0)),))


def symmetric_group_action(n: int) -> ActionSpec:
    """S_n on X = {0..n-1} naturally and on Y = S_n by left composition.

    Y lists the permutations of range(n) in lexicographic order. Generators
    are the adjacent transpositions (k, k+1).
    """
    elems = list(permutations(range(n)))
    index = {h: t for t, h in enumerate(elems)}
    gens = []
    for k in range(n - 1):
        g = list(range(n))
        g[k], g[k + 1] = g[k + 1], g[k]
        perm_y = tuple(index[tuple(g[h[i]] for i in range(n))] for h in elems)
        gens.append((tuple(g), perm_y))
    return ActionSpec(n, len(elems), tuple(gens))


def cyclic_block_action(m1: int, n1: int, a: int) -> ActionSpec:
    """Z/a rotating each of m1 blocks of X and n1 blocks of Y, all of size a.

    Every cell of the orbit grid then holds exactly ``a`` product orbits.
    Element ``b * a + r`` is residue r of block b.
    """
    rot_x = tuple(b * a + (r + 1) % a for b in range(m1) for r in range(a))
    rot_y = tuple(b * a + (r + 1) % a for b in range(n1) for r in range(a))
    gens = ((rot_x, rot_y),) if a > 1 else ()
    return ActionSpec(m1 * a, n1 * a, gens)


def uniform_vector(partition_size: int) -> list[Fraction]:
    return [Fraction(1, partition_size)] * partition_size
