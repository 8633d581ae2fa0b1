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
Guard-set solvers on a :class:`~pyvisguard.rangespace.RangeSpace`:
greedy hitting set, exhaustive exact oracle, and verification.
"""

import time

import numpy as np

from pyvisguard.arrangement import decompose
from pyvisguard.rangespace import build_range_space, coverage_audit, covers


class GuardSet(object):
    """
    Vertex guards found by a solver.

    Parameters:
        guards (iterable of int): Guard vertex ids, in the order found
        method (str): Name of the solver
        stats (dict, optional): Solver statistics (``iterations``,
            ``runtime`` in seconds, and solver specific entries)

    Example
    -------
        >>> from pyvisguard.solvers import GuardSet
        >>> G = GuardSet([3, 1, 3], "greedy")
        >>> len(G), list(G)
        (2, [3, 1])
    """

    def __init__(self, guards, method, stats=None):
        ordered = []
        for g in guards:
            if int(g) not in ordered:
                ordered.append(int(g))
        self.guards = tuple(ordered)
        self.method = method
        self.stats = {} if stats is None else dict(stats)

    def __len__(self):
        return len(self.guards)

    def __iter__(self):
        return iter(self.guards)

    def __contains__(self, v):
        return v in self.guards

    def __eq__(self, other):
        if not isinstance(other, GuardSet):
            return False
        return self.guards == other.guards and self.method == other.method

    def __str__(self):
        return "\n".join(str(g) for g in self.guards)

    def save(self, fname="guards.txt"):
        """
        Alias for :meth:`write()`
        """
        self.write(fname=fname)

    def write(self, fname="guards.txt"):
        """Write guard ids to disk, one per line"""
        with open(fname, "w") as fil:
            fil.write("# {:} guards ({:})\n".format(len(self), self.method))
            fil.write(self.__str__() + "\n")


def greedy_guards(rs):
    """
    Greedy hitting set

    Repeatedly takes the vertex that hits the most unhit ranges; ties go to
    the lowest vertex id.

    Parameters:
        rs (RangeSpace): Range space

    Returns:
        :class:`GuardSet`

    Example
    -------
        >>> from pyvisguard.rangespace import RangeSpace
        >>> from pyvisguard.solvers import greedy_guards
        >>> list(greedy_guards(RangeSpace(3, [0b011, 0b110, 0b100])))
        [1, 2]
    """
    tic = time.perf_counter()
    M = rs.matrix
    unhit = np.ones(len(rs), dtype=bool)
    counts = M.sum(axis=0).astype(int)
    guards = []
    while unhit.any():
        v = int(np.argmax(counts))
        if counts[v] == 0:
            msg = "Ranges {:} cannot be hit".format(np.flatnonzero(unhit).tolist())
            raise RuntimeError(msg)
        guards.append(v)
        newly = unhit & M[:, v]
        counts -= M[newly].sum(axis=0)
        unhit &= ~newly

    stats = {"iterations": len(guards), "runtime": time.perf_counter() - tic}
    return GuardSet(guards, "greedy", stats)


def exact_guards(rs, cap=20):
    """
    Minimum hitting set by exhaustive search

    Subsets are enumerated by increasing size and in lexicographic order
    within a size. A branch is cut as soon as its next element is larger
    than every element of the lowest unhit range, so the first cover found
    is the lexicographically first minimum one.

    Parameters:
        rs (RangeSpace): Range space
        cap (int): Largest number of elements searched

    Raises:
        ValueError: If `rs` has more than `cap` elements
    """
    if rs.n > cap:
        msg = "Exact search is capped at n={:}, not n={:}".format(cap, rs.n)
        raise ValueError(msg)
    tic = time.perf_counter()

    nranges = len(rs)
    full = (1 << nranges) - 1
    hits = [0] * rs.n
    for r in range(nranges):
        for e in rs[r]:
            hits[e] |= 1 << r
    last = [max(rs[r]) for r in range(nranges)]
    nodes = 0

    def search(start, slots, covered, chosen):
        nonlocal nodes
        nodes += 1
        if covered == full:
            return list(chosen)
        if slots == 0:
            return None
        r = ((covered + 1) & ~covered).bit_length() - 1
        for e in range(start, rs.n):
            if e > last[r]:
                break
            chosen.append(e)
            found = search(e + 1, slots - 1, covered | hits[e], chosen)
            chosen.pop()
            if found is not None:
                return found
        return None

    for size in range(0, rs.n + 1):
        found = search(0, size, 0, [])
        if found is not None:
            break
    else:
        msg = "No hitting set exists"
        raise RuntimeError(msg)

    stats = {"nodes": nodes, "runtime": time.perf_counter() - tic, "iterations": size}
    return GuardSet(found, "exact", stats)


class GuardReport(object):
    """
    Outcome of :func:`verify_guard_set`.

    Attributes:
        guards (tuple of int): Verified guards
        covering (bool): Whether the guards hit every range
        failures (list of Point): Unseen audit samples
        opt (int or None): Minimum guard count, if the oracle ran
        ratio (float or None): ``len(guards) / opt``
    """

    def __init__(self, guards, covering, failures, opt=None):
        self.guards = tuple(guards)
        self.covering = covering
        self.failures = failures
        self.opt = opt
        self.ratio = len(self.guards) / opt if opt else None

    @property
    def ok(self):
        return self.covering and not self.failures

    def __str__(self):
        out = "Guards: {:}\n".format(" ".join(str(g) for g in self.guards))
        out += "Covering: {:}\n".format(self.covering)
        out += "Unseen samples: {:}".format(len(self.failures))
        if self.opt is not None:
            out += "\nOptimum: {:}\nRatio: {:.3f}".format(self.opt, self.ratio)
        return out


def verify_guard_set(
    poly, guards, rs=None, samples=10000, seed=0, oracle_cap=20, decomposition=None
):
    """
    Check a guard set against the range space, by sampling, and against the
    exact optimum

    Parameters:
        poly (PolygonWithHoles): Polygon
        guards (iterable of int): Guard vertex ids
        rs (RangeSpace, optional): Range space of `poly`, built if missing
        samples (int): Number of coverage-audit samples (``0`` skips it)
        seed (int): Audit seed
        oracle_cap (int): Run :func:`exact_guards` if ``poly.n <= oracle_cap``
        decomposition (Decomposition, optional): Reused for the audit

    Returns:
        :class:`GuardReport`
    """
    guards = [int(g) for g in guards]
    if decomposition is None and (rs is None or samples > 0):
        decomposition = decompose(poly)
    if rs is None:
        rs = build_range_space(decomposition)
    covering = covers(rs, guards)
    failures = []
    if samples > 0:
        failures = coverage_audit(
            poly, guards, m=samples, seed=seed, decomposition=decomposition
        )
    opt = len(exact_guards(rs, cap=oracle_cap)) if poly.n <= oracle_cap else None
    return GuardReport(guards, covering, failures, opt)
