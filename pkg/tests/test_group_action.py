from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extreme_couplings.group_action import (
    ActionError,
    ActionSpec,
    is_invariant_vector,
    orbits_product,
    orbits_x,
    orbits_y,
    swap_action,
    symmetric_group_action,
    trivial_action,
    validate_action,
)


def bfs_orbits(size, perms):
    """Orbit oracle: breadth-first closure from each unvisited point."""
    seen, orbits = set(), []
    for start in range(size):
        if start in seen:
            continue
        orb, frontier = {start}, [start]
        while frontier:
            e = frontier.pop()
            for p in perms:
                if p[e] not in orb:
                    orb.add(p[e])
                    frontier.append(p[e])
        seen |= orb
        orbits.append(tuple(sorted(orb)))
    return tuple(orbits)


def test_validate_action():
    assert validate_action(swap_action()) == []
    bad = ActionSpec(2, 2, (((0, 0), (0, 1)),))
    assert any("perm_x not a bijection" in p for p in validate_action(bad))
    assert validate_action(ActionSpec(3, 5, ())) == []
    assert validate_action(ActionSpec(2, 2, (((0, 2), (0, 1)),)))
    assert validate_action(ActionSpec(2, 2, (((0, 1, 2), (0, 1)),)))
    with pytest.raises(ActionError):
        orbits_x(bad)


def test_orbit_examples():
    assert orbits_x(trivial_action(3, 1)).orbits == ((0,), (1,), (2,))
    assert orbits_x(swap_action()).num_orbits == 1
    s3 = symmetric_group_action(3)
    assert s3.y_size == 6
    assert orbits_x(s3).num_orbits == 1
    assert orbits_y(s3).num_orbits == 1
    assert orbits_product(s3).num_orbits == 3
    assert orbits_product(trivial_action(2, 2)).num_orbits == 4
    assert orbits_product(swap_action()).orbits == ((0, 3), (1, 2))


def test_symmetric_group_orbit_sizes():
    for n in (3, 4):
        part = orbits_product(symmetric_group_action(n))
        assert part.num_orbits == n
        assert all(len(o) == len(part.orbits[0]) for o in part.orbits)


def test_is_invariant_vector():
    part = orbits_product(swap_action())
    assert is_invariant_vector([Fraction(1, 2), Fraction(1, 3), Fraction(1, 3), Fraction(1, 2)], part)
    assert is_invariant_vector([5] * 4, part)
    assert not is_invariant_vector([1, 2], orbits_x(swap_action()))
    with pytest.raises(ValueError):
        is_invariant_vector([1], part)


perm_strategy = lambda size: st.permutations(list(range(size))).map(tuple)


@st.composite
def actions(draw):
    m = draw(st.integers(1, 5))
    n = draw(st.integers(1, 5))
    k = draw(st.integers(0, 3))
    gens = tuple((draw(perm_strategy(m)), draw(perm_strategy(n))) for _ in range(k))
    return ActionSpec(m, n, gens)


@settings(max_examples=100, deadline=None)
@given(actions())
def test_orbits_agree_with_bfs_and_are_canonical(spec):
    ox, oy, oxy = orbits_x(spec), orbits_y(spec), orbits_product(spec)
    assert ox.orbits == bfs_orbits(spec.x_size, [g[0] for g in spec.generators])
    assert oy.orbits == bfs_orbits(spec.y_size, [g[1] for g in spec.generators])
    n = spec.y_size
    prod_perms = [[px[c // n] * n + py[c % n] for c in range(spec.x_size * n)] for px, py in spec.generators]
    assert oxy.orbits == bfs_orbits(spec.x_size * n, prod_perms)
    for part in (ox, oy, oxy):
        assert [o[0] for o in part.orbits] == sorted(o[0] for o in part.orbits)
        assert sorted(e for o in part.orbits for e in o) == list(range(part.universe_size))
    # each product orbit projects onto exactly one X-orbit and one Y-orbit, fully
    for orb in oxy.orbits:
        xs = {c // n for c in orb}
        ys = {c % n for c in orb}
        assert len({ox.orbit_of[x] for x in xs}) == 1
        assert len({oy.orbit_of[y] for y in ys}) == 1
        assert xs == set(ox.orbits[ox.orbit_of[min(xs)]])
        assert ys == set(oy.orbits[oy.orbit_of[min(ys)]])
    for px, py in spec.generators:
        assert all(ox.orbit_of[e] == ox.orbit_of[px[e]] for e in range(spec.x_size))
        assert all(oy.orbit_of[e] == oy.orbit_of[py[e]] for e in range(spec.y_size))
