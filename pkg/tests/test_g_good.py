from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extreme_couplings.g_good import (
    build_orbit_grid,
    count_maximal_ggood,
    enumerate_maximal_ggood,
    ggood_rank_oracle,
    is_ggood,
    phi,
    replace_in_cell,
)
from extreme_couplings.good_sets import CapExceeded, count_maximal_good
from extreme_couplings.group_action import (
    ActionSpec,
    cyclic_block_action,
    swap_action,
    symmetric_group_action,
    trivial_action,
)


def maximal_ggood_oracle(grid):
    """All orbit subsets that pass the rank oracle and admit no G-good extension."""
    good = [
        frozenset(s)
        for r in range(grid.m12 + 1)
        for s in combinations(range(grid.m12), r)
        if ggood_rank_oracle(grid, s)
    ]
    good_set = set(good)
    return sorted(
        tuple(sorted(s))
        for s in good
        if not any(s | {o} in good_set for o in range(grid.m12) if o not in s)
    )


def test_build_orbit_grid_examples():
    g = build_orbit_grid(trivial_action(2, 3))
    assert (g.m1, g.n1, g.m12) == (2, 3, 6)
    assert all(g.alpha(i, j) == 1 for i in range(2) for j in range(3))
    g = build_orbit_grid(swap_action())
    assert (g.m1, g.n1) == (1, 1) and g.alpha(0, 0) == 2
    for n in (3, 4):
        g = build_orbit_grid(symmetric_group_action(n))
        assert (g.m1, g.n1, g.alpha(0, 0)) == (1, 1, n)


def test_phi_examples():
    g = build_orbit_grid(trivial_action(2, 3))
    for o, members in enumerate(g.xy_orbits.orbits):
        assert phi(g, o) == divmod(members[0], 3)
    g = build_orbit_grid(swap_action())
    assert phi(g, 0) == phi(g, 1) == (0, 0)
    g = build_orbit_grid(symmetric_group_action(3))
    assert {phi(g, o) for o in range(3)} == {(0, 0)}
    with pytest.raises(KeyError):
        phi(g, 3)


def test_is_ggood_examples():
    swap = build_orbit_grid(swap_action())
    assert not is_ggood(swap, [0, 1]) and not ggood_rank_oracle(swap, [0, 1])
    assert is_ggood(swap, [0]) and is_ggood(swap, [1])
    triv = build_orbit_grid(trivial_action(2, 2))
    assert not is_ggood(triv, range(4))
    with pytest.raises(ValueError):
        is_ggood(swap, [2])


def test_enumerate_examples():
    triv = build_orbit_grid(trivial_action(2, 2))
    assert list(enumerate_maximal_ggood(triv)) == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    assert list(enumerate_maximal_ggood(build_orbit_grid(swap_action()))) == [(0,), (1,)]
    assert list(enumerate_maximal_ggood(build_orbit_grid(symmetric_group_action(3)))) == [(0,), (1,), (2,)]


def test_counts():
    assert count_maximal_ggood(build_orbit_grid(trivial_action(3, 3))) == 81
    assert count_maximal_ggood(build_orbit_grid(swap_action())) == 2
    g = build_orbit_grid(cyclic_block_action(2, 2, 2))
    assert (g.m1, g.n1, g.m12, g.is_constant_alpha()) == (2, 2, 8, 2)
    assert count_maximal_ggood(g) == 32 == len(list(enumerate_maximal_ggood(g)))


@pytest.mark.parametrize("m1,n1,a", [(1, 1, 3), (1, 3, 2), (2, 2, 3), (2, 3, 2), (3, 3, 2)])
def test_constant_alpha_closed_form(m1, n1, a):
    g = build_orbit_grid(cyclic_block_action(m1, n1, a))
    assert g.is_constant_alpha() == a and g.m12 == a * m1 * n1
    expected = a ** (m1 + n1 - 1) * m1 ** (n1 - 1) * n1 ** (m1 - 1)
    assert count_maximal_ggood(g) == expected == len(set(enumerate_maximal_ggood(g)))


def test_enumeration_cap():
    g = build_orbit_grid(cyclic_block_action(2, 2, 2))
    with pytest.raises(CapExceeded):
        enumerate_maximal_ggood(g, cap=10)


def test_replace_in_cell():
    g = build_orbit_grid(swap_action())
    assert replace_in_cell(g, (0,), 0, 1) == (1,)
    t = build_orbit_grid(trivial_action(2, 2))
    with pytest.raises(ValueError):
        replace_in_cell(t, (0, 1, 2), 0, 3)


@st.composite
def small_actions(draw):
    m = draw(st.integers(1, 4))
    n = draw(st.integers(1, 4))
    k = draw(st.integers(0, 2))
    gens = tuple(
        (tuple(draw(st.permutations(list(range(m))))), tuple(draw(st.permutations(list(range(n))))))
        for _ in range(k)
    )
    return ActionSpec(m, n, gens)


@settings(max_examples=80, deadline=None)
@given(small_actions())
def test_grid_partition_and_prop2_sweep(spec):
    g = build_orbit_grid(spec)
    assert sum(g.alpha(i, j) for i in range(g.m1) for j in range(g.n1)) == g.m12
    assert all(g.alpha(i, j) >= 1 for i in range(g.m1) for j in range(g.n1))
    if g.m12 > 12:
        return
    for r in range(g.m12 + 1):
        for s in combinations(range(g.m12), r):
            verdict = is_ggood(g, s)
            assert verdict == ggood_rank_oracle(g, s)
            if verdict:
                cells = [phi(g, o) for o in s]
                assert len(cells) == len(set(cells))


@settings(max_examples=40, deadline=None)
@given(small_actions())
def test_enumeration_matches_maximal_oracle(spec):
    g = build_orbit_grid(spec)
    if g.m12 > 10:
        return
    enumerated = list(enumerate_maximal_ggood(g))
    assert sorted(enumerated) == maximal_ggood_oracle(g)
    assert len(enumerated) == len(set(enumerated)) == count_maximal_ggood(g)
    assert all(len(s) == g.m1 + g.n1 - 1 for s in enumerated)
    assert count_maximal_ggood(g) >= count_maximal_good(g.m1, g.n1)
