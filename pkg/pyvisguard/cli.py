# Copyright 2026 The PyVisGuard developers

# This file is part of PyVisGuard.

# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:

# The above copyright notice and this permission notice shall be included in
# all copies or substantial portions of the Software.

# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

"""
Command line interface: ``pyvisguard COMMAND POLYGON [options]``.

Polygon files use the format of :func:`~pyvisguard.pvg.parse_polygon`;
``-`` reads the polygon from standard input. The environment variable
``VISGUARD_SEED`` overrides ``--seed``.
"""

import argparse
import os
import sys

from pyvisguard.arrangement import decompose
from pyvisguard.epsnet import visibility_matrix
from pyvisguard.families import families, generate
from pyvisguard.pvg import (
    Control,
    StatsReport,
    methods,
    parse_polygon,
    read_guards,
    read_polygon,
    solve,
)
from pyvisguard.rangespace import build_range_space
from pyvisguard.solvers import verify_guard_set


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", default=0, help="Random seed, 0 to 2**64-1")
    common.add_argument(
        "--samples", default=10000, help="Number of coverage-audit samples"
    )
    common.add_argument(
        "--epsilon-start", default="1/2", help="First epsilon guess, a power of 1/2"
    )
    common.add_argument(
        "--oracle-cap", default=20, help="Largest n for the exact solver"
    )
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="pyvisguard", description="Vertex guards for polygons with holes"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def polygon_command(name, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.add_argument("polygon", help="Polygon file, '-' for stdin")
        return p

    p = polygon_command("decompose", "Count windows, crossings and cells")
    p.add_argument("--cells", action="store_true", help="List every cell")
    p = polygon_command("sinks", "Count and list the minimal cells")
    p.add_argument("--cells", action="store_true", help="List every sink")
    p = polygon_command("guard", "Compute a guard set")
    p.add_argument("--method", choices=methods, default="greedy")
    p.add_argument("-o", "--output", help="Also write the guards to this file")
    p = polygon_command("stats", "Counts, guard sizes and envelope ratios")
    p.add_argument(
        "--method",
        action="append",
        choices=methods,
        help="Solver to include, repeatable (default: greedy)",
    )
    p.add_argument("--csv", help="Write the report as CSV to this file")
    p = polygon_command("render", "Draw decomposition, sinks and guards")
    p.add_argument("--svg", required=True, help="Output file")
    p.add_argument("--method", choices=methods, default="greedy")
    p = polygon_command("verify", "Check a guard set")
    p.add_argument("--guards", required=True, help="Guard file, one id per line")

    p = sub.add_parser("generate", parents=[common], help="Generate a polygon")
    p.add_argument("family", choices=list(families))
    p.add_argument("params", nargs="+", type=int)
    p.add_argument("-o", "--output", help="Output file (default: stdout)")
    return parser


def _control(args):
    seed = os.environ.get("VISGUARD_SEED", args.seed)
    return Control(
        verbose=int(args.verbose),
        seed=seed,
        samples=args.samples,
        epsilon_start=args.epsilon_start,
        oracle_cap=args.oracle_cap,
    )


def _polygon(fname):
    if fname == "-":
        return parse_polygon(sys.stdin.read())
    return read_polygon(fname)


def _print_cells(D, ids):
    for f in ids:
        cell = D.cells[f]
        x, y = cell.representative
        print(
            "{:d}: ({:.9g}, {:.9g}) sees {:}".format(
                f, float(x), float(y), " ".join(str(v) for v in cell.visible_ids())
            )
        )


def run_command(args):
    """
    Execute one parsed command

    Returns:
        (int): Exit status
    """
    rc = _control(args)

    if args.command == "generate":
        poly = generate(args.family, args.params, seed=rc.seed)
        if args.output:
            poly.write(args.output, comment="{:} {:}".format(
                args.family, " ".join(str(p) for p in args.params)))
        else:
            print(poly)
        return 0

    poly = _polygon(args.polygon)

    if args.command == "verify":
        guards = read_guards(args.guards)
        report = verify_guard_set(
            poly, guards, samples=rc.samples, seed=rc.seed, oracle_cap=rc.oracle_cap
        )
        print(report)
        if not report.ok:
            print("Error: guards do not cover the polygon", file=sys.stderr)
            return 1
        return 0

    D = decompose(poly, verbose=rc.verbose)

    if args.command == "decompose":
        print(D)
        if args.cells:
            _print_cells(D, range(len(D.cells)))
        return 0

    if args.command == "sinks":
        print("Sinks: {:d}".format(len(D.sinks)))
        if args.cells:
            _print_cells(D, D.sinks)
        return 0

    rs = build_range_space(D, verbose=rc.verbose)

    if args.command == "guard":
        G = solve(poly, rs, rc, args.method)
        print(G)
        print("# size: {:d}".format(len(G)))
        if args.output:
            G.write(args.output)
        return 0

    if args.command == "render":
        G = solve(poly, rs, rc, args.method)
        fmt = os.path.splitext(args.svg)[1].lstrip(".") or "svg"
        import matplotlib

        matplotlib.use("Agg")
        from pyvisguard import plot

        fig = plot.render(D, guards=G, fname=args.svg, fmt=fmt)
        plot.plt.close(fig)
        return 0

    if args.command == "stats":
        guardsets = [solve(poly, rs, rc, m) for m in args.method or ["greedy"]]
        edges = visibility_matrix(poly).edge_count()
        report = StatsReport(D, rs, guardsets, visibility_edges=edges)
        print(report)
        print()
        print(report.to_csv(), end="")
        if args.csv:
            report.write(args.csv)
        return 0

    msg = "Unknown command: '{:}'".format(args.command)
    raise ValueError(msg)


def main(argv=None):
    """
    Entry point of the ``pyvisguard`` console script

    Returns:
        (int): Exit status, 1 on invalid input or solver failure
    """
    args = _parser().parse_args(argv)
    try:
        return run_command(args)
    except (ValueError, RuntimeError, OSError) as e:
        print("Error: {:}".format(e), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
