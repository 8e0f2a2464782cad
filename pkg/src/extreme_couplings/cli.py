"""Command-line interface.

Exit codes: 0 success, 2 parse error, 3 validation error, 4 resource cap
exceeded. Output is deterministic: identical input gives identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .counting import DEFAULT_PRECISION, ratio_constant_alpha, ratio_diagonal, ratio_table, to_decimal
from .extreme_measures import MarginalError, Marginals, enumerate_extreme, verify_bound
from .g_good import build_orbit_grid
from .good_sets import (
    DEFAULT_CAP,
    CapExceeded,
    GridSubset,
    count_fixed_col_points,
    count_fixed_row_points,
    count_maximal_good,
    count_spanning_trees_matrix_tree,
    enumerate_maximal_good,
    find_loop,
)
from .instance import InstanceParseError, InstanceValidationError, load_instance

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_CAP = 0, 2, 3, 4


class UsageError(ValueError):
    pass


def q(value) -> str:
    """Exact string for an integer or rational."""
    return str(Fraction(value))


def cell_str(cell) -> str:
    return f"({cell[0]},{cell[1]})"


def parse_range(text: str) -> range:
    try:
        lo, hi = (int(p) for p in text.split("..")) if ".." in text else (int(text),) * 2
    except ValueError:
        raise UsageError(f"malformed range {text!r}, expected A..B") from None
    if lo < 1 or hi < lo:
        raise UsageError(f"range {text!r} must satisfy 1 <= A <= B")
    return range(lo, hi + 1)


def parse_cells(text: str) -> list[tuple[int, int]]:
    cells = []
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        try:
            i, j = (int(p) for p in chunk.split(","))
        except ValueError:
            raise UsageError(f"malformed cell {chunk!r}, expected i,j") from None
        cells.append((i, j))
    return cells


class Report:
    """Collects one command's payload and renders it in the requested format."""

    def __init__(self, command: str):
        self.command = command
        self.instance = None
        self.digest = None
        self.sizes: dict = {}
        self.result: dict = {}
        self.text: list[str] = []
        self.table_header: list[str] = []
        self.table_rows: list[list] = []
        self.exit_code = EXIT_OK

    def set_instance(self, inst, grid):
        self.instance = inst.name
        self.digest = inst.digest()
        self.sizes = {
            "m": inst.spec.x_size,
            "n": inst.spec.y_size,
            "m1": grid.m1,
            "n1": grid.n1,
            "m12": grid.m12,
        }

    def header_lines(self):
        lines = [f"command: {self.command}"]
        if self.instance is not None:
            lines.append(f"instance: {self.instance}")
            lines.append(f"digest: {self.digest}")
            lines.append("sizes: " + " ".join(f"{k}={v}" for k, v in self.sizes.items()))
        return lines

    def render(self, fmt: str) -> str:
        if fmt == "structured":
            doc = {
                "command": self.command,
                "instance": self.instance,
                "instance_digest": self.digest,
                "sizes": self.sizes,
                "result": self.result,
                "exit_code": self.exit_code,
            }
            return json.dumps(doc, indent=2, sort_keys=True) + "\n"
        if fmt == "table":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(self.table_header)
            writer.writerows(self.table_rows)
            return buf.getvalue()
        return "\n".join(self.header_lines() + self.text) + "\n"


def _load(args, report):
    inst = load_instance(args.instance)
    grid = build_orbit_grid(inst.spec)
    report.set_instance(inst, grid)
    return inst, grid


def _marginals(inst):
    return inst.marginals if inst.marginals is not None else Marginals.uniform(inst.spec)


def cmd_orbits(args) -> Report:
    rep = Report("orbits")
    inst, grid = _load(args, rep)
    spec = inst.spec
    xy = [[cell_str(spec.cell_coords(c)) for c in orb] for orb in grid.xy_orbits.orbits]
    cells = [
        {"cell": [i, j], "alpha": grid.alpha(i, j), "orbits": list(grid.cell_orbits[(i, j)])}
        for i in range(grid.m1)
        for j in range(grid.n1)
    ]
    rep.result = {
        "x_orbits": [list(o) for o in grid.x_orbits.orbits],
        "y_orbits": [list(o) for o in grid.y_orbits.orbits],
        "xy_orbits": [[list(spec.cell_coords(c)) for c in orb] for orb in grid.xy_orbits.orbits],
        "orbit_grid": cells,
    }
    rep.text.append("X orbits:")
    rep.text += [f"  {k}: " + " ".join(map(str, o)) for k, o in enumerate(grid.x_orbits.orbits)]
    rep.text.append("Y orbits:")
    rep.text += [f"  {k}: " + " ".join(map(str, o)) for k, o in enumerate(grid.y_orbits.orbits)]
    rep.text.append("XxY orbits:")
    rep.text += [f"  {k}: " + " ".join(o) for k, o in enumerate(xy)]
    rep.text.append("orbit grid:")
    for c in cells:
        rep.text.append(
            f"  cell {cell_str(c['cell'])}: alpha={c['alpha']} orbits=" + " ".join(map(str, c["orbits"]))
        )
    rep.table_header = ["i", "j", "alpha", "orbits"]
    rep.table_rows = [[c["cell"][0], c["cell"][1], c["alpha"], " ".join(map(str, c["orbits"]))] for c in cells]
    return rep


def cmd_good(args) -> Report:
    m, n = args.m, args.n
    if m < 1 or n < 1:
        raise InstanceValidationError("m and n must be positive")
    rep = Report(f"good {args.action}")
    rep.sizes = {"m": m, "n": n}
    if args.action == "check":
        if args.cells is None:
            raise UsageError("good check needs --cells")
        try:
            s = GridSubset.of(m, n, parse_cells(args.cells))
        except ValueError as exc:
            raise InstanceValidationError(str(exc)) from exc
        loop = find_loop(s)
        rep.result = {
            "cells": [list(c) for c in s.cells],
            "good": loop is None,
            "loop": None if loop is None else [list(c) for c in loop.cells],
        }
        rep.text.append("cells: " + " ".join(map(cell_str, s.cells)))
        if loop is None:
            rep.text.append("good")
        else:
            rep.text.append("not good")
            rep.text.append("loop: " + " -> ".join(map(cell_str, loop.cells)))
        rep.table_header = ["good", "loop"]
        rep.table_rows = [[int(loop is None), "" if loop is None else " ".join(map(cell_str, loop.cells))]]
    elif args.action == "enumerate":
        sets = list(enumerate_maximal_good(m, n, cap=args.limit))
        rep.result = {"count": len(sets), "sets": [[list(c) for c in s.cells] for s in sets]}
        rep.text.append(f"maximal good sets: {len(sets)}")
        rep.text += [f"  {k}: " + " ".join(map(cell_str, s.cells)) for k, s in enumerate(sets)]
        rep.table_header = ["index", "cells"]
        rep.table_rows = [[k, " ".join(map(cell_str, s.cells))] for k, s in enumerate(sets)]
    elif args.action == "count":
        formula = count_maximal_good(m, n)
        det = count_spanning_trees_matrix_tree(m, n)
        rep.result = {"formula": str(formula), "matrix_tree": str(det), "agree": formula == det}
        rep.text += [f"formula m^(n-1) n^(m-1): {formula}", f"matrix-tree determinant: {det}"]
        rep.text.append("agree" if formula == det else "DISAGREE")
        rep.table_header = ["m", "n", "formula", "matrix_tree"]
        rep.table_rows = [[m, n, formula, det]]
    else:
        if args.k is None:
            raise UsageError(f"good {args.action} needs --k")
        fn = count_fixed_row_points if args.action == "count-row" else count_fixed_col_points
        try:
            value = fn(m, n, args.k)
        except ValueError as exc:
            raise InstanceValidationError(str(exc)) from exc
        rep.sizes["k"] = args.k
        rep.result = {"count": str(value)}
        rep.text.append(f"count: {value}")
        rep.table_header = ["m", "n", "k", "count"]
        rep.table_rows = [[m, n, args.k, value]]
    return rep


def cmd_extreme(args) -> Report:
    rep = Report(f"extreme {args.action}")
    inst, grid = _load(args, rep)
    marg = _marginals(inst)
    try:
        if args.action == "enumerate":
            measures = enumerate_extreme(grid, marg, cap=args.limit)
        else:
            bound = verify_bound(grid, marg, cap=args.limit)
    except MarginalError as exc:
        raise InstanceValidationError(str(exc)) from exc
    rep.result["marginals"] = {"mu1": [q(v) for v in marg.mu1], "mu2": [q(v) for v in marg.mu2]}
    if args.action == "enumerate":
        rep.result["count"] = len(measures)
        rep.result["measures"] = [
            {
                "support_orbits": list(mu.support()),
                "orbit_values": [q(v) for v in mu.orbit_values],
                "cells": [[q(v) for v in row] for row in mu.cell_table()],
            }
            for mu in measures
        ]
        rep.text.append(f"extreme measures: {len(measures)}")
        for k, mu in enumerate(measures):
            rep.text.append(f"measure {k}: support orbits " + " ".join(map(str, mu.support())))
            for row in mu.cell_table():
                rep.text.append("  " + " ".join(q(v) for v in row))
        rep.table_header = ["index", "i", "j", "value"]
        rep.table_rows = [
            [k, i, j, q(v)]
            for k, mu in enumerate(measures)
            for i, row in enumerate(mu.cell_table())
            for j, v in enumerate(row)
        ]
    else:
        rep.result.update(
            {
                "count": bound.count,
                "bound": str(bound.bound),
                "maximal_ggood": str(bound.maximal_ggood),
                "holds": bound.holds,
                "sharp": bound.sharp,
            }
        )
        rep.text += [
            f"extreme measures: {bound.count}",
            f"maximal G-good sets: {bound.maximal_ggood}",
            f"bound C(m12, m1+n1-1) = C({bound.m12}, {bound.m1 + bound.n1 - 1}) = {bound.bound}",
            f"holds: {'yes' if bound.holds else 'NO'}",
            f"sharp: {'yes' if bound.sharp else 'no'}",
        ]
        rep.table_header = ["count", "maximal_ggood", "bound", "holds", "sharp"]
        rep.table_rows = [[bound.count, bound.maximal_ggood, bound.bound, int(bound.holds), int(bound.sharp)]]
    return rep


def cmd_ratio(args) -> Report:
    rep = Report(f"ratio {args.action}")
    if args.action == "const-alpha":
        if min(args.m1, args.n1, args.a) < 1:
            raise InstanceValidationError("m1, n1 and a must be positive")
        r = ratio_constant_alpha(args.m1, args.n1, args.a)
        rep.sizes = {"m1": args.m1, "n1": args.n1, "a": args.a}
        rep.result = {"ratio_exact": q(r), "ratio_decimal": to_decimal(r, args.precision)}
        rep.text += [f"ratio: {q(r)}", f"ratio_decimal: {to_decimal(r, args.precision)}"]
        rep.table_header = ["m1", "n1", "a", "ratio_exact", "ratio_decimal"]
        rep.table_rows = [[args.m1, args.n1, args.a, q(r), to_decimal(r, args.precision)]]
        return rep
    if args.diag is not None:
        records = ratio_diagonal(parse_range(args.diag), args.precision)
    elif args.m is not None and args.n is not None:
        records = ratio_table(parse_range(args.m), parse_range(args.n), args.precision)
    else:
        raise UsageError("ratio table needs --diag A..B or both --m and --n")
    rep.table_header = ["m", "n", "tree_count", "binom", "ratio_exact", "ratio_decimal"]
    rep.table_rows = [[r.m, r.n, r.tree_count, r.binom, q(r.ratio), r.ratio_decimal] for r in records]
    rep.result = {"rows": [dict(zip(rep.table_header, map(str, row))) for row in rep.table_rows]}
    rep.text += ["  ".join(rep.table_header)] + ["  ".join(map(str, row)) for row in rep.table_rows]
    return rep


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "table", "structured"), default="text")
    common.add_argument("--limit", type=int, default=DEFAULT_CAP, help="enumeration cap (default %(default)s)")
    common.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="significant digits for decimals")

    parser = argparse.ArgumentParser(prog="extreme-couplings", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orbits", parents=[common], help="orbit partitions and the orbit grid")
    p.add_argument("instance", help="instance file or shipped instance name")
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("good", parents=[common], help="good sets of a plain m x n grid")
    p.add_argument("action", choices=("check", "enumerate", "count", "count-row", "count-col"))
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--cells", help='cells for check, e.g. "0,0;0,1;1,0"')
    p.add_argument("--k", type=int, help="number of fixed cells for count-row / count-col")
    p.set_defaults(func=cmd_good)

    p = sub.add_parser("extreme", parents=[common], help="extreme invariant couplings")
    p.add_argument("action", choices=("enumerate", "verify-bound"))
    p.add_argument("instance", help="instance file or shipped instance name")
    p.set_defaults(func=cmd_extreme)

    p = sub.add_parser("ratio", help="tree count over binomial bound")
    rs = p.add_subparsers(dest="action", required=True)
    t = rs.add_parser("table", parents=[common])
    t.add_argument("--diag", help="diagonal m = n range A..B")
    t.add_argument("--m", help="row range A..B")
    t.add_argument("--n", help="column range A..B")
    t.set_defaults(func=cmd_ratio)
    c = rs.add_parser("const-alpha", parents=[common])
    c.add_argument("m1", type=int)
    c.add_argument("n1", type=int)
    c.add_argument("a", type=int)
    c.set_defaults(func=cmd_ratio)
    return parser


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    fmt = args.format
    try:
        if args.limit is not None and args.limit < 1:
            raise UsageError("--limit must be positive")
        if args.precision < 1:
            raise UsageError("--precision must be positive")
        report = args.func(args)
    except (InstanceParseError, UsageError) as exc:
        return _fail(stdout, stderr, args, fmt, EXIT_PARSE, exc)
    except (InstanceValidationError, MarginalError) as exc:
        return _fail(stdout, stderr, args, fmt, EXIT_INVALID, exc)
    except CapExceeded as exc:
        return _fail(stdout, stderr, args, fmt, EXIT_CAP, f"{exc}; raise --limit to override")
    stdout.write(report.render(fmt))
    return EXIT_OK


def _fail(stdout, stderr, args, fmt, code, exc) -> int:
    stderr.write(f"error: {exc}\n")
    if fmt == "structured":
        doc = {"command": args.command, "error": str(exc), "exit_code": code}
        stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return code


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
