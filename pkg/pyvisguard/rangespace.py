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
Hitting-set instance over the sinks of the visibility decomposition.

The elements are the polygon vertices; every distinct visible set of a sink
cell is a range. A vertex set guards the polygon if and only if it hits
every range.
"""

import numpy as np

from pyvisguard.arrangement import Decomposition, bits, decompose
from pyvisguard.geometry import (
    EXTERIOR,
    PolygonWithHoles,
    ring_contains,
    sample_triangle,
    triangle_area,
    triangulate,
)
from pyvisguard.visibility import visibility_polygon


class RangeSpace(object):
    """
    Range space of vertex guards versus sink cells.

    Parameters:
        n (int): Number of elements (vertices)
        ranges (list of int): Bitsets over the elements, one per range
        origin (list of list of int, optional): Sink cell ids per range
        h (int): Number of holes of the source polygon

    Attributes:
        matrix (numpy.ndarray): Boolean incidence, ``(len(ranges), n)``

    Raises:
        ValueError: If a range is empty or has bits beyond `n`

    Example
    -------
        >>> from pyvisguard.rangespace import RangeSpace
        >>> rs = RangeSpace(3, [0b011, 0b110, 0b100])
        >>> rs[1]
        (1, 2)
        >>> rs.matrix.sum(axis=0)
        array([1, 2, 2])
    """

    def __init__(self, n, ranges, origin=None, h=0):
        self.n = int(n)
        self.h = int(h)
        self.ranges = [int(r) for r in ranges]
        self.origin = origin if origin is not None else [[i] for i in range(len(ranges))]

        self.matrix = np.zeros((len(self.ranges), self.n), dtype=bool)
        for i, r in enumerate(self.ranges):
            if r == 0:
                msg = "Range {:} (sinks {:}) is empty".format(i, self.origin[i])
                raise ValueError(msg)
            if r >> self.n:
                msg = "Range {:} holds elements beyond n={:}".format(i, self.n)
                raise ValueError(msg)
            self.matrix[i, bits(r)] = True

    @property
    def elements(self):
        return list(range(self.n))

    def __len__(self):
        return len(self.ranges)

    def __getitem__(self, i):
        return tuple(bits(self.ranges[i]))

    def __str__(self):
        out = "Range space with {:} elements and {:} ranges\n".format(
            self.n, len(self.ranges)
        )
        for i, r in enumerate(self.ranges):
            out += "{:4d}: {:}\n".format(i, " ".join(str(v) for v in bits(r)))
        return out.strip("\n")

    def incidence(self):
        return Incidence(self)

    def dedup(self):
        """Copy with identical ranges merged (first occurrence kept)"""
        ranges, origin, index = [], [], {}
        for r, o in zip(self.ranges, self.origin):
            if r in index:
                origin[index[r]] = origin[index[r]] + list(o)
                continue
            index[r] = len(ranges)
            ranges.append(r)
            origin.append(list(o))
        return RangeSpace(self.n, ranges, origin, self.h)


class Incidence(object):
    """
    Element-to-range adjacency with per-range hit flags.

    One instance belongs to exactly one solver run.

    Attributes:
        element_ranges (list of numpy.ndarray): Ranges containing each element
        hit (numpy.ndarray): Hit flag per range
    """

    def __init__(self, rs):
        self.rs = rs
        self.element_ranges = [np.flatnonzero(rs.matrix[:, j]) for j in range(rs.n)]
        self.hit = np.zeros(len(rs), dtype=bool)

    def reset(self):
        self.hit[:] = False

    def mark(self, elements):
        """
        Mark every range incident to `elements` as hit

        Returns:
            (int): Number of incidences visited
        """
        work = 0
        for j in elements:
            incident = self.element_ranges[j]
            self.hit[incident] = True
            work += len(incident)
        return work

    def first_unhit(self):
        """Lowest index of an unhit range, or ``None``"""
        unhit = np.flatnonzero(~self.hit)
        return int(unhit[0]) if len(unhit) else None


def build_range_space(source, verify=False, verbose=False):
    """
    Range space of a polygon or of a finished decomposition

    Parameters:
        source (PolygonWithHoles or Decomposition): If a polygon is given, it
            is decomposed first
        verify (bool): Recompute every sink range with :func:`sees`

    Returns:
        :class:`RangeSpace` with one range per distinct sink visible set,
        ordered by the first sink cell that produced it

    Raises:
        ValueError: If a sink is seen by no vertex
    """
    if isinstance(source, PolygonWithHoles):
        D = decompose(source, verify=verify, verbose=verbose)
    elif isinstance(source, Decomposition):
        D = source
    else:
        msg = "Cannot build a range space from {:}".format(type(source).__name__)
        raise TypeError(msg)
    if D.sinks is None:
        msg = "Decomposition has no sinks; run decompose() first"
        raise ValueError(msg)

    ranges, origin, index = [], [], {}
    for s in sorted(D.sinks):
        visible = D.cells[s].visible
        if not visible:
            msg = "Sink cell {:} is seen by no vertex".format(s)
            raise ValueError(msg)
        if visible in index:
            origin[index[visible]].append(s)
            continue
        index[visible] = len(ranges)
        ranges.append(visible)
        origin.append([s])

    rs = RangeSpace(D.source.n, ranges, origin, D.source.h)
    if verbose:
        print(
            "Range space: {:} ranges from {:} sinks over {:} vertices".format(
                len(rs), len(D.sinks), rs.n
            )
        )
    return rs


def covers(rs, guards):
    """
    True if `guards` hits every range of `rs`

    Example
    -------
        >>> from pyvisguard.rangespace import RangeSpace, covers
        >>> rs = RangeSpace(3, [0b011, 0b110, 0b100])
        >>> covers(rs, [1]), covers(rs, [1, 2])
        (False, True)
    """
    guards = [int(g) for g in guards]
    if not len(rs):
        return True
    if not guards:
        return False
    for g in guards:
        if not 0 <= g < rs.n:
            msg = "Guard {:} is not an element of the range space".format(g)
            raise ValueError(msg)
    return bool(rs.matrix[:, guards].any(axis=1).all())


def sample_decomposition(D, m, rng):
    """
    Draw `m` uniform random points of the polygon through its cells

    Each cell's outer ring is triangulated; a triangle is picked with
    probability proportional to its area and points falling into an enclosed
    ring are redrawn.
    """
    tris, owner = [], []
    for cell in D.cells:
        for tri in triangulate(cell.outer):
            tris.append(tri)
            owner.append(cell)
    weights = np.array([float(triangle_area(t)) for t in tris])
    weights /= weights.sum()
    out = []
    while len(out) < m:
        k = rng.choice(len(tris), p=weights)
        pt = sample_triangle(tris[k], rng)
        if all(ring_contains(r, pt) == EXTERIOR for r in owner[k].inner):
            out.append(pt)
    return out


def coverage_audit(poly, guards, m=10000, seed=0, decomposition=None):
    """
    Sample the polygon and report every point no guard sees

    Parameters:
        poly (PolygonWithHoles): Polygon
        guards (iterable of int): Guard vertex ids
        m (int): Number of samples
        seed (int): Seed of the random generator
        decomposition (Decomposition, optional): Cells to sample through,
            built with :func:`decompose` if missing

    Returns:
        (list of Point): Unseen samples, empty for a guarding set
    """
    if decomposition is None:
        decomposition = decompose(poly)
    rng = np.random.default_rng(seed)
    samples = sample_decomposition(decomposition, m, rng)
    regions = [visibility_polygon(poly, g) for g in guards]
    return [pt for pt in samples if not any(vis.contains(pt) for vis in regions)]
