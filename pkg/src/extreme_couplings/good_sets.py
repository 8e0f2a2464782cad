"""Good subsets of an m x n grid.

A set S of cells is good when every function on S splits as
f(i, j) = u(i) + v(j). Goodness is equivalent to S containing no loop, i.e.
to the bipartite graph (rows + columns, one edge per cell) being a forest.
Maximal good sets have m + n - 1 cells and are the spanning trees of K_{m,n}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Mapping, Optional

from .linalg import int_det, rank

DEFAULT_CAP = 10**6

Cell = tuple[int, int]


class NotGoodError(ValueError):
    def __init__(self, message, loop=None):
        super().__init__(message)
        self.loop = loop


class CapExceeded(RuntimeError):
    """An enumeration would emit more objects than the configured cap."""


@dataclass(frozen=True)
class GridSubset:
    m: int
    n: int
    cells: tuple[Cell, ...]

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("grid dimensions must be positive")
        cells = tuple(sorted(set((int(i), int(j)) for i, j in self.cells)))
        if len(cells) != len(self.cells):
            raise ValueError("duplicate cells")
        for i, j in cells:
            if not (0 <= i < self.m and 0 <= j < self.n):
                raise ValueError(f"cell {(i, j)} outside {self.m}x{self.n} grid")
        object.__setattr__(self, "cells", cells)

    @classmethod
    def of(cls, m: int, n: int, cells: Iterable[Cell]) -> "GridSubset":
        return cls(m, n, tuple(sorted(set(map(tuple, cells)))))

    @classmethod
    def full(cls, m: int, n: int) -> "GridSubset":
        return cls(m, n, tuple((i, j) for i in range(m) for j in range(n)))

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def __contains__(self, cell):
        return tuple(cell) in set(self.cells)


@dataclass(frozen=True)
class LoopWitness:
    """Closed alternating path of cells; the first cell is repeated at the end."""

    cells: tuple[Cell, ...]

    def is_valid(self) -> bool:
        seq = self.cells
        if len(seq) < 5 or seq[0] != seq[-1]:
            return False
        steps = []
        for a, b in zip(seq, seq[1:]):
            same_row, same_col = a[0] == b[0], a[1] == b[1]
            if same_row == same_col:
                return False
            steps.append("row" if same_row else "col")
        return all(s != t for s, t in zip(steps, steps[1:]))


def find_loop(s: GridSubset) -> Optional[LoopWitness]:
    """Return a loop in ``s`` or None if ``s`` is good.

    Runs a DFS on the row/column incidence graph; the first non-tree edge
    closes a cycle, read back as alternating cells.
    """
    # vertices: rows 0..m-1, columns m..m+n-1
    adj: dict[int, list[tuple[int, Cell]]] = {}
    for i, j in s.cells:
        adj.setdefault(i, []).append((s.m + j, (i, j)))
        adj.setdefault(s.m + j, []).append((i, (i, j)))
    parent: dict[int, tuple[int, Cell] | None] = {}
    for root in sorted(adj):
        if root in parent:
            continue
        parent[root] = None
        stack = [(root, iter(adj[root]))]
        while stack:
            v, it = stack[-1]
            for w, cell in it:
                via = parent[v]
                if via is not None and via[1] == cell:
                    continue
                if w in parent:
                    return LoopWitness(_close_cycle(parent, v, w, cell))
                parent[w] = (v, cell)
                stack.append((w, iter(adj[w])))
                break
            else:
                stack.pop()
    return None


def _close_cycle(parent, v, w, closing: Cell) -> tuple[Cell, ...]:
    # w is an ancestor of v on the DFS stack
    path = []
    x = v
    while x != w:
        px, cell = parent[x]
        path.append(cell)
        x = px
    path.reverse()
    cycle = path + [closing]
    return tuple(cycle + [cycle[0]])


def is_good(s: GridSubset) -> bool:
    return find_loop(s) is None


def incidence_matrix(s: GridSubset) -> list[list[int]]:
    """One row per cell (i, j): coefficient 1 on u_i and on v_j."""
    rows = []
    for i, j in s.cells:
        row = [0] * (s.m + s.n)
        row[i] = 1
        row[s.m + j] = 1
        rows.append(row)
    return rows


def incidence_rank(s: GridSubset) -> int:
    if not s.cells:
        return 0
    return rank(incidence_matrix(s))


def decompose(s: GridSubset, f: Mapping[Cell, object]) -> tuple[list[Fraction], list[Fraction]]:
    """Split ``f`` on the good set ``s`` as u(i) + v(j).

    In each connected component the smallest row gets u = 0; rows and
    columns not touched by ``s`` get 0.
    """
    loop = find_loop(s)
    if loop is not None:
        raise NotGoodError("not a good set", loop)
    if set(f) != set(s.cells):
        raise ValueError("f must be defined exactly on the cells of s")
    u: list[Optional[Fraction]] = [None] * s.m
    v: list[Optional[Fraction]] = [None] * s.n
    by_row: dict[int, list[int]] = {}
    by_col: dict[int, list[int]] = {}
    for i, j in s.cells:
        by_row.setdefault(i, []).append(j)
        by_col.setdefault(j, []).append(i)
    for start in sorted(by_row):
        if u[start] is not None:
            continue
        u[start] = Fraction(0)
        stack = [("r", start)]
        while stack:
            kind, k = stack.pop()
            if kind == "r":
                for j in by_row[k]:
                    if v[j] is None:
                        v[j] = Fraction(f[(k, j)]) - u[k]
                        stack.append(("c", j))
            else:
                for i in by_col[k]:
                    if u[i] is None:
                        u[i] = Fraction(f[(i, k)]) - v[k]
                        stack.append(("r", i))
    zero = Fraction(0)
    return [zero if x is None else x for x in u], [zero if x is None else x for x in v]


class _RollbackUF:
    """Union-find without path compression so unions can be undone."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.size = [1] * n
        self.history = []

    def find(self, x):
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        if self.size[a] < self.size[b]:
            a, b = b, a
        self.parent[b] = a
        self.size[a] += self.size[b]
        self.history.append(b)
        return True

    def undo(self):
        b = self.history.pop()
        a = self.parent[b]
        self.size[a] -= self.size[b]
        self.parent[b] = b


def enumerate_maximal_good(m: int, n: int, cap: Optional[int] = DEFAULT_CAP) -> Iterator[GridSubset]:
    """Yield every maximal good subset of the m x n grid once.

    Order is lexicographic in the sorted cell list. Refuses (CapExceeded)
    when m^(n-1) n^(m-1) exceeds ``cap``; pass ``cap=None`` to disable.
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    total = count_maximal_good(m, n)
    if cap is not None and total > cap:
        raise CapExceeded(f"{total} maximal good sets in a {m}x{n} grid exceed the cap {cap}")
    return _spanning_trees(m, n)


def _spanning_trees(m, n):
    universe = [(i, j) for i in range(m) for j in range(n)]
    need = m + n - 1
    uf = _RollbackUF(m + n)
    chosen: list[Cell] = []

    def rec(pos):
        if len(chosen) == need:
            yield GridSubset(m, n, tuple(chosen))
            return
        if len(universe) - pos < need - len(chosen):
            return
        i, j = universe[pos]
        if uf.union(i, m + j):
            chosen.append((i, j))
            yield from rec(pos + 1)
            chosen.pop()
            uf.undo()
        yield from rec(pos + 1)

    return rec(0)


def count_maximal_good(m: int, n: int) -> int:
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    return m ** (n - 1) * n ** (m - 1)


def _check_fixed(m, n, k, k_max, what):
    if m < 2 or n < 2:
        raise ValueError("fixed-point counts need m, n >= 2")
    if not 1 <= k <= k_max:
        raise ValueError(f"k must satisfy 1 <= k <= {k_max} ({what})")


def count_fixed_row_points(m: int, n: int, k: int) -> int:
    """Maximal good sets whose cells in a given row are exactly k given cells."""
    _check_fixed(m, n, k, n, "cells of a row")
    return k * n ** (m - 2) * (m - 1) ** (n - k)


def count_fixed_col_points(m: int, n: int, k: int) -> int:
    """Maximal good sets whose cells in a given column are exactly k given cells."""
    _check_fixed(m, n, k, m, "cells of a column")
    return k * m ** (n - 2) * (n - 1) ** (m - k)


def count_spanning_trees_matrix_tree(m: int, n: int) -> int:
    """Spanning trees of K_{m,n} from a Laplacian minor determinant."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    size = m + n
    lap = [[0] * size for _ in range(size)]
    for i in range(m):
        for j in range(n):
            a, b = i, m + j
            lap[a][b] = lap[b][a] = -1
            lap[a][a] += 1
            lap[b][b] += 1
    minor = [row[1:] for row in lap[1:]]
    return int_det(minor)


def fixed_row_total(m: int, n: int) -> int:
    """Sum over k of C(n, k) * count_fixed_row_points(m, n, k)."""
    return sum(comb(n, k) * count_fixed_row_points(m, n, k) for k in range(1, n + 1))


def fixed_col_total(m: int, n: int) -> int:
    return sum(comb(m, k) * count_fixed_col_points(m, n, k) for k in range(1, m + 1))
