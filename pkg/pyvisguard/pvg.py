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
Run control, the guarding pipeline, statistics and file input.
"""

import time
from copy import deepcopy
from datetime import datetime
from fractions import Fraction

from pyvisguard.arrangement import decompose
from pyvisguard.epsnet import (
    KKNetFinder,
    bg_solve,
    check_epsilon,
    check_unit,
    visibility_matrix,
)
from pyvisguard.geometry import PolygonWithHoles, as_rational
from pyvisguard.rangespace import build_range_space
from pyvisguard.solvers import exact_guards, greedy_guards
from pyvisguard.visibility import LEFT, RIGHT, TRANS

methods = ("greedy", "bg", "kk", "exact")


class PolygonFileError(ValueError):
    """
    Malformed polygon or guard file.

    Attributes:
        lineno (int): Offending line (1-based)
    """

    def __init__(self, lineno, msg):
        self.lineno = lineno
        super().__init__("line {:}: {:}".format(lineno, msg))


def _as_bool(name, value):
    if value in [0, 1, "0", "1", True, False, "True", "False"]:
        return value in [1, "1", True, "True"]
    msg = "{:} must be 0 or 1, not: {:}".format(name, value)
    raise ValueError(msg)


def _as_count(name, value, minimum):
    try:
        count = int(value)
    except (TypeError, ValueError):
        msg = "{:} must be an integer, not: {:}".format(name, value)
        raise ValueError(msg)
    if count < minimum or count != float(value):
        msg = "{:} must be an integer >= {:}, not: {:}".format(name, minimum, value)
        raise ValueError(msg)
    return count


class Control(object):
    """
    Run Control parameters for :meth:`pvg.run()`.

    Parameters:
        verbose (int or bool):
            Verbosity:

                * :const:`0` or :const:`False`: silent
                * :const:`1` or :const:`True`: verbose

        seed (int):
            Seed of every random draw (0 to 2**64 - 1)
        samples (int):
            Number of coverage-audit samples
        epsilon_start (Fraction, float or str):
            First epsilon guess of the reweighting solver, a power of 1/2
        oracle_cap (int):
            Largest vertex count for the exact solver
        delta (Fraction, float or str):
            Failure probability of one random net draw
        iteration_constant (int):
            Constant of the iteration cap of one reweighting run
        vc_slack (int):
            Additive slack of the VC-dimension bound for h >= 2
        max_retries (int):
            Redraws of a fragmentation net before giving up
        verify_cells (bool):
            Recompute every cell's visible set directly

    Attributes:

        parameters (list):
          Convenience attribute that collects the attributes in the order
          written by :meth:`Control.write()`

    Example
    -------
        >>> from pyvisguard import Control
        >>> rc = Control(epsilon_start="1/4")
        >>> rc.epsilon_start
        Fraction(1, 4)
        >>> rc.seed = -1
        Traceback (most recent call last):
        ...
        ValueError: seed must be in [0, 2**64), not: -1
    """

    def __init__(
        self,
        verbose=0,
        seed=0,
        samples=10000,
        epsilon_start=Fraction(1, 2),
        oracle_cap=20,
        delta=Fraction(1, 2),
        iteration_constant=4,
        vc_slack=4,
        max_retries=32,
        verify_cells=False,
    ):
        self.parameters = [0] * 10
        self.verbose = verbose
        self.seed = seed
        self.samples = samples
        self.epsilon_start = epsilon_start
        self.oracle_cap = oracle_cap
        self.delta = delta
        self.iteration_constant = iteration_constant
        self.vc_slack = vc_slack
        self.max_retries = max_retries
        self.verify_cells = verify_cells

    @property
    def verbose(self):
        return self._verbose

    @verbose.setter
    def verbose(self, value):
        if value not in [0, 1, "0", "1", True, False]:
            msg = "verbose must be 0 or 1, not: " + str(value)
            raise ValueError(msg)
        self._verbose = int(value)
        self.parameters[0] = self._verbose

    @property
    def seed(self):
        return self._seed

    @seed.setter
    def seed(self, value):
        try:
            seed = int(value)
        except (TypeError, ValueError):
            msg = "seed must be an integer, not: " + str(value)
            raise ValueError(msg)
        if not 0 <= seed < 2**64:
            msg = "seed must be in [0, 2**64), not: " + str(value)
            raise ValueError(msg)
        self._seed = seed
        self.parameters[1] = self._seed

    @property
    def samples(self):
        return self._samples

    @samples.setter
    def samples(self, value):
        self._samples = _as_count("samples", value, 0)
        self.parameters[2] = self._samples

    @property
    def epsilon_start(self):
        return self._epsilon_start

    @epsilon_start.setter
    def epsilon_start(self, value):
        self._epsilon_start = check_epsilon(value)
        self.parameters[3] = self._epsilon_start

    @property
    def oracle_cap(self):
        return self._oracle_cap

    @oracle_cap.setter
    def oracle_cap(self, value):
        self._oracle_cap = _as_count("oracle_cap", value, 0)
        self.parameters[4] = self._oracle_cap

    @property
    def delta(self):
        return self._delta

    @delta.setter
    def delta(self, value):
        self._delta = check_unit("delta", value)
        self.parameters[5] = self._delta

    @property
    def iteration_constant(self):
        return self._iteration_constant

    @iteration_constant.setter
    def iteration_constant(self, value):
        self._iteration_constant = _as_count("iteration_constant", value, 1)
        self.parameters[6] = self._iteration_constant

    @property
    def vc_slack(self):
        return self._vc_slack

    @vc_slack.setter
    def vc_slack(self, value):
        self._vc_slack = _as_count("vc_slack", value, 0)
        self.parameters[7] = self._vc_slack

    @property
    def max_retries(self):
        return self._max_retries

    @max_retries.setter
    def max_retries(self, value):
        self._max_retries = _as_count("max_retries", value, 0)
        self.parameters[8] = self._max_retries

    @property
    def verify_cells(self):
        return self._verify_cells

    @verify_cells.setter
    def verify_cells(self, value):
        self._verify_cells = _as_bool("verify_cells", value)
        self.parameters[9] = self._verify_cells

    def __str__(self):
        out = "Run control parameters:\n\n"
        out += "Verbosity: {:}\n".format(self.verbose)
        out += "Random seed: {:}\n".format(self.seed)
        out += "Coverage-audit samples: {:}\n".format(self.samples)
        out += "First epsilon guess: {:}\n".format(self.epsilon_start)
        out += "Exact solver cap (vertices): {:}\n".format(self.oracle_cap)
        out += "Net failure probability: {:}\n".format(self.delta)
        out += "Iteration cap constant: {:}\n".format(self.iteration_constant)
        out += "VC-dimension slack: {:}\n".format(self.vc_slack)
        out += "Net redraws: {:}\n".format(self.max_retries)
        out += "Verify cells: {:}".format(self.verify_cells)
        return out

    def _pvg_str(self):
        out = "# Verbosity\n"
        out += "{:}\n".format(self.verbose)
        out += "# Random seed\n"
        out += "{:}\n".format(self.seed)
        out += "# Coverage-audit samples\n"
        out += "{:}\n".format(self.samples)
        out += "# First epsilon guess (power of 1/2)\n"
        out += "{:}\n".format(self.epsilon_start)
        out += "# Exact solver cap (vertices)\n"
        out += "{:}\n".format(self.oracle_cap)
        out += "# Net failure probability\n"
        out += "{:}\n".format(self.delta)
        out += "# Iteration cap constant\n"
        out += "{:}\n".format(self.iteration_constant)
        out += "# VC-dimension slack\n"
        out += "{:}\n".format(self.vc_slack)
        out += "# Net redraws\n"
        out += "{:}\n".format(self.max_retries)
        out += "# Verify cells: 0 or 1\n"
        out += "{:}\n".format(int(self.verify_cells))
        return out

    def __eq__(self, other):
        if not isinstance(other, Control):
            return False
        return self.parameters == other.parameters

    def copy(self):
        return deepcopy(self)

    def save(self, fname="visguard-param"):
        """
        Alias for :meth:`~pyvisguard.pvg.Control.write()`
        """
        self.write(fname=fname)

    def write(self, fname="visguard-param"):
        """
        Write run control parameters to disk

        Args:
            fname (str): Name of the output file
        """
        buf = "# Run control parameters created with PyVisGuard\n"
        buf += "# on: {:}\n".format(datetime.now().isoformat(" ", "seconds"))
        buf += self._pvg_str()
        with open(fname, "w") as fil:
            fil.write(buf)


def read_control(paramfile):
    """
    Read run control parameters from file.

    Returns:
        :class:`~pyvisguard.pvg.Control`:
            Run control parameters
    """
    with open(paramfile, "r") as f:
        lines = f.readlines()

    buf = []
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        buf.append(line)

    return Control(*buf)


def parse_polygon(document):
    """
    Parse a polygon from its text form

    The document holds the number of outer vertices, one ``x y`` line per
    vertex, the number of holes, and for each hole its vertex count and
    vertex lines. Everything after ``#`` on a line is ignored. Coordinates
    are integers, decimals or fractions and are read exactly.

    Returns:
        :class:`~pyvisguard.geometry.PolygonWithHoles`

    Raises:
        PolygonFileError: With the number of the offending line

    Example
    -------
        >>> from pyvisguard.pvg import parse_polygon
        >>> P = parse_polygon("4\\n0 0\\n1 0\\n1 1\\n0 1\\n0\\n")
        >>> P.n, P.h
        (4, 0)
    """
    lines = []
    for lineno, raw in enumerate(document.splitlines(), start=1):
        text = raw.split("#", 1)[0].strip()
        if text:
            lines.append((lineno, text.split()))
    lines.reverse()
    last = [0]

    def take():
        if not lines:
            msg = "unexpected end of document"
            raise PolygonFileError(last[0] + 1, msg)
        lineno, fields = lines.pop()
        last[0] = lineno
        return lineno, fields

    def count(minimum, what):
        lineno, fields = take()
        if len(fields) != 1:
            raise PolygonFileError(lineno, "expected the {:} count".format(what))
        try:
            value = int(fields[0])
        except ValueError:
            msg = "malformed {:} count: '{:}'".format(what, fields[0])
            raise PolygonFileError(lineno, msg)
        if value < minimum:
            msg = "{:} count must be >= {:}, not {:}".format(what, minimum, value)
            raise PolygonFileError(lineno, msg)
        return value

    def ring():
        pts = []
        for _ in range(count(3, "vertex")):
            lineno, fields = take()
            if len(fields) != 2:
                msg = "expected 'x y', got {:} fields".format(len(fields))
                raise PolygonFileError(lineno, msg)
            try:
                pts.append((as_rational(fields[0]), as_rational(fields[1])))
            except ValueError as e:
                raise PolygonFileError(lineno, str(e))
        return pts

    first = lines[-1][0] if lines else 1
    outer = ring()
    holes = [ring() for _ in range(count(0, "hole"))]
    if lines:
        raise PolygonFileError(lines[-1][0], "trailing content after last hole")

    try:
        return PolygonWithHoles(outer, holes)
    except ValueError as e:
        raise PolygonFileError(first, str(e))


def read_polygon(fname):
    """
    Read a polygon file

    Returns:
        :class:`~pyvisguard.geometry.PolygonWithHoles`
    """
    with open(fname, "r") as fil:
        return parse_polygon(fil.read())


def read_guards(fname):
    """
    Read guard vertex ids, one per line; ``#`` starts a comment

    Returns:
        (list of int)
    """
    guards = []
    with open(fname, "r") as fil:
        for lineno, raw in enumerate(fil, start=1):
            text = raw.split("#", 1)[0].strip()
            if not text:
                continue
            try:
                guards.append(int(text))
            except ValueError:
                raise PolygonFileError(lineno, "malformed guard id: '{:}'".format(text))
    return guards


def write_guards(fname, guards):
    """Write guard vertex ids, one per line"""
    with open(fname, "w") as fil:
        fil.write("".join("{:}\n".format(int(g)) for g in guards))


class StatsReport(object):
    """
    Counts and envelope ratios of one polygon.

    Attributes:
        n, h (int): Vertices and holes
        windows (dict): Window count per kind
        k (int): Window-window crossings
        cells, sinks, ranges (int): Sizes of decomposition and range space
        visibility_edges (int): Edges of the vertex visibility graph
        guards (dict): Method to ``(size, runtime)``
        cell_ratio (float): ``cells / ((h+1) n^3)``
        sink_ratio (float): ``sinks / ((h+1)^2 n^2)``
    """

    def __init__(self, decomposition, rangespace, guardsets=(), visibility_edges=None):
        D = decomposition
        self.n = D.source.n
        self.h = D.source.h
        self.windows = D.window_counts()
        self.k = D.crossing_count
        self.cells = len(D.cells)
        self.sinks = len(D.sinks)
        self.ranges = len(rangespace)
        self.visibility_edges = visibility_edges
        self.guards = {
            G.method: (len(G), G.stats.get("runtime", 0.0)) for G in guardsets
        }
        self.cell_ratio = self.cells / ((self.h + 1) * self.n**3)
        self.sink_ratio = self.sinks / ((self.h + 1) ** 2 * self.n**2)
        if not self.cells >= self.sinks >= 1:
            msg = "Inconsistent counts: {:} cells, {:} sinks".format(self.cells, self.sinks)
            raise RuntimeError(msg)

    def rows(self):
        """Names and formatted values, shared by table and CSV"""
        rows = [
            ("n", "{:d}".format(self.n)),
            ("h", "{:d}".format(self.h)),
            ("windows", "{:d}".format(sum(self.windows.values()))),
            ("windows_left", "{:d}".format(self.windows[LEFT])),
            ("windows_right", "{:d}".format(self.windows[RIGHT])),
            ("windows_trans", "{:d}".format(self.windows[TRANS])),
            ("crossings", "{:d}".format(self.k)),
            ("cells", "{:d}".format(self.cells)),
            ("sinks", "{:d}".format(self.sinks)),
            ("ranges", "{:d}".format(self.ranges)),
        ]
        if self.visibility_edges is not None:
            rows.append(("visibility_edges", "{:d}".format(self.visibility_edges)))
        for method, (size, runtime) in self.guards.items():
            rows.append(("guards_" + method, "{:d}".format(size)))
            rows.append(("runtime_" + method, "{:.6f}".format(runtime)))
        rows.append(("cell_ratio", "{:.6e}".format(self.cell_ratio)))
        rows.append(("sink_ratio", "{:.6e}".format(self.sink_ratio)))
        return rows

    def __str__(self):
        rows = self.rows()
        width = max(len(name) for name, _ in rows)
        return "\n".join("{:<{w}}  {:>14}".format(name, value, w=width) for name, value in rows)

    def to_csv(self):
        rows = self.rows()
        return ",".join(name for name, _ in rows) + "\n" + ",".join(v for _, v in rows) + "\n"

    def save(self, fname="stats.csv"):
        """
        Alias for :meth:`write()`
        """
        self.write(fname=fname)

    def write(self, fname="stats.csv"):
        """Write the report as CSV"""
        with open(fname, "w") as fil:
            fil.write(self.to_csv())


class Result(object):
    """
    Outcome of :meth:`pvg.run()`.

    Attributes:
        polygon (PolygonWithHoles): Input polygon
        rc (Control): Run control parameters
        decomposition (Decomposition): Decomposition with sinks
        rangespace (RangeSpace): Hitting-set instance
        guards (GuardSet): Solver output
        stats (StatsReport): Counts of this run
    """

    def __init__(self, polygon, rc, decomposition, rangespace, guards, stats):
        self.polygon = polygon
        self.rc = rc
        self.decomposition = decomposition
        self.rangespace = rangespace
        self.guards = guards
        self.stats = stats

    def __str__(self):
        msg = "Result contains:\n"
        msg += "{:d} cell(s), {:d} sink(s), {:d} range(s)\n".format(
            self.stats.cells, self.stats.sinks, self.stats.ranges
        )
        msg += "{:d} guard(s) found by '{:}': {:}\n".format(
            len(self.guards),
            self.guards.method,
            " ".join(str(g) for g in self.guards),
        )
        msg += "\nFrom polygon with n={:d}, h={:d}".format(self.polygon.n, self.polygon.h)
        return msg

    def plot(self, ftitle=None, fmt="svg", show=False):
        """
        Render decomposition, sinks and guards, see :func:`plot.render`

        Args:
            ftitle (str): Save the figure to ``ftitle.fmt``
            fmt (str): Output format
            show (bool): Show the figure
        """
        from pyvisguard import plot

        fname = None if ftitle is None else ftitle + "." + fmt
        return plot.render(
            self.decomposition, guards=self.guards, fname=fname, fmt=fmt, show=show
        )

    def write(self, fname="guards.txt"):
        """Write the guards to disk, one per line"""
        self.guards.write(fname)


def solve(polygon, rangespace, rc, method):
    """
    Run one solver on a range space

    Returns:
        :class:`~pyvisguard.solvers.GuardSet`

    Raises:
        ValueError: For unknown methods, the fragmentation method on a
            polygon with holes, or the exact method above the oracle cap
    """
    if method == "greedy":
        return greedy_guards(rangespace)
    if method == "exact":
        return exact_guards(rangespace, cap=rc.oracle_cap)
    if method == "bg":
        return bg_solve(
            rangespace,
            epsilon_start=rc.epsilon_start,
            delta=rc.delta,
            iteration_constant=rc.iteration_constant,
            slack=rc.vc_slack,
            seed=rc.seed,
            verbose=rc.verbose,
        )
    if method == "kk":
        if polygon.h > 0:
            msg = "Method 'kk' needs a simple polygon, not h={:}".format(polygon.h)
            raise ValueError(msg)
        tic = time.perf_counter()
        finder = KKNetFinder(polygon, rangespace, max_retries=rc.max_retries)
        G = bg_solve(
            rangespace,
            finder=finder,
            epsilon_start=rc.epsilon_start,
            iteration_constant=rc.iteration_constant,
            seed=rc.seed,
            verbose=rc.verbose,
        )
        G.method = "kk"
        G.stats["oracle_calls"] = finder.oracle_calls
        G.stats["runtime"] = time.perf_counter() - tic
        return G
    msg = "Unknown method: '{:}'. Must be one of: ".format(method)
    msg += ", ".join(methods)
    raise ValueError(msg)


def run(polygon, rc=None, method="greedy", matrix=False):
    """
    Guard a polygon: decomposition, sinks, range space and solver

    Parameters:
        polygon (PolygonWithHoles): Polygon
        rc (Control): Run control parameters, defaults to :class:`Control()`
        method (str): ``"greedy"``, ``"bg"``, ``"kk"`` or ``"exact"``
        matrix (bool): Also count visibility-graph edges for the report

    Returns:
        :class:`~pyvisguard.pvg.Result`

    Example
    -------
        >>> from pyvisguard import generate, run
        >>> result = run(generate("comb", [3]), method="exact")
        >>> len(result.guards)
        3
    """
    if rc is None:
        rc = Control()
    if method not in methods:
        msg = "Unknown method: '{:}'. Must be one of: ".format(method)
        msg += ", ".join(methods)
        raise ValueError(msg)

    D = decompose(polygon, verify=rc.verify_cells, verbose=rc.verbose)
    rs = build_range_space(D, verbose=rc.verbose)
    G = solve(polygon, rs, rc, method)
    edges = visibility_matrix(polygon).edge_count() if matrix else None
    stats = StatsReport(D, rs, [G], visibility_edges=edges)
    if rc.verbose:
        print("Found {:} guards with method '{:}'".format(len(G), method))
    return Result(polygon, rc, D, rs, G, stats)
