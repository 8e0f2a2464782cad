import random
import sys
from fractions import Fraction

import pytest

from extreme_couplings.extreme_measures import Marginals
from extreme_couplings.g_good import build_orbit_grid
from extreme_couplings.group_action import (
    cyclic_block_action,
    swap_action,
    symmetric_group_action,
    trivial_action,
)

NAMED_ACTIONS = {
    "trivial_2x2": lambda: trivial_action(2, 2),
    "trivial_2x3": lambda: trivial_action(2, 3),
    "trivial_3x3": lambda: trivial_action(3, 3),
    "swap_2x2": swap_action,
    "sym3": lambda: symmetric_group_action(3),
    "sym4": lambda: symmetric_group_action(4),
}


def random_invariant_marginals(grid, rng: random.Random) -> Marginals:
    """Full-support marginals constant on orbits, with random integer weights."""

    def one(part):
        weights = [rng.randint(1, 9) for _ in part.orbits]
        total = sum(w * len(o) for w, o in zip(weights, part.orbits))
        vec = [Fraction(0)] * part.universe_size
        for w, o in zip(weights, part.orbits):
            for e in o:
                vec[e] = Fraction(w, total)
        return vec

    return Marginals.of(one(grid.x_orbits), one(grid.y_orbits))


@pytest.fixture(params=sorted(NAMED_ACTIONS))
def named_grid(request):
    spec = NAMED_ACTIONS[request.param]()
    return request.param, spec, build_orbit_grid(spec)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])
