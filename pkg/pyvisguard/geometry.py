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
Exact planar geometry for polygons with holes.

Coordinates are :class:`fractions.Fraction` throughout. No predicate in this
module rounds, so orientation tests, intersections and point location are
exact for any rational input.

The vertices of a :class:`PolygonWithHoles` are numbered consecutively: the
outer ring first, then each hole in order. Component ``0`` is the outer ring
(the unbounded complement of P), component ``i`` is hole ``i``.
"""

from collections import namedtuple
from copy import deepcopy
from datetime import datetime
from fractions import Fraction

import numpy as np
import matplotlib.pyplot as plt

INTERIOR = "interior"
BOUNDARY = "boundary"
EXTERIOR = "exterior"

Point = namedtuple("Point", ["x", "y"])
Segment = namedtuple("Segment", ["a", "b"])
VertexRef = namedtuple("VertexRef", ["index", "component"])

_polyhint = (
    "################################################\n"
    "#\n"
    "#   Polygon file to use with `PyVisGuard`.\n"
    "#\n"
    "#   Lines starting with '#' are ignored.\n"
    "#   Coordinates are exact rationals, written as\n"
    "#   integers, decimals or fractions (e.g. 3/8).\n"
    "#\n"
    "#   Format:\n"
    "#       number of outer vertices\n"
    "#       x y             (one line per vertex)\n"
    "#       number of holes\n"
    "#       per hole: number of vertices, then x y lines\n"
    "#\n"
    "################################################\n"
)


def as_rational(value):
    """
    Convert `value` to an exact :class:`~fractions.Fraction`

    Strings may be integers (``"3"``), decimals (``"0.25"``) or fractions
    (``"3/8"``). Floats are converted exactly from their binary value.

    Raises:
        ValueError: If `value` is not a finite rational number
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (bool, np.bool_)):
        msg = "Not a coordinate: " + str(value)
        raise ValueError(msg)
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, (float, np.floating)):
        if not np.isfinite(value):
            msg = "Coordinate must be finite, not: " + str(value)
            raise ValueError(msg)
        return Fraction(float(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            msg = "Malformed number: '{:}'".format(value)
            raise ValueError(msg)
    msg = "Cannot interpret {:} as rational number".format(repr(value))
    raise ValueError(msg)


def as_point(xy):
    """Return `xy` (any pair of numbers) as exact :class:`Point`"""
    if isinstance(xy, Point) and all(isinstance(c, Fraction) for c in xy):
        return xy
    try:
        x, y = xy
    except (TypeError, ValueError):
        msg = "A point needs exactly two coordinates, not: " + str(xy)
        raise ValueError(msg)
    return Point(as_rational(x), as_rational(y))


def segment(a, b):
    """
    Build a :class:`Segment` from two points

    Raises:
        ValueError: If both end points coincide
    """
    a = as_point(a)
    b = as_point(b)
    if a == b:
        msg = "Degenerate segment at ({:}, {:})".format(*a)
        raise ValueError(msg)
    return Segment(a, b)


def fmt_point(p):
    """Exact text form of a point, as written to polygon files"""
    return "{:} {:}".format(p.x, p.y)


def cross(o, a, b):
    """Cross product of the vectors o->a and o->b"""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def orient(p, q, r):
    """
    Orientation of point `r` relative to the directed line `p` -> `q`

    Returns:
        (int): ``+1`` if `r` is strictly left, ``-1`` if strictly right, and
        ``0`` if the three points are collinear

    Example
    -------
        >>> from pyvisguard.geometry import orient, as_point
        >>> orient(as_point((0, 0)), as_point((1, 0)), as_point((0, 1)))
        1
    """
    c = cross(p, q, r)
    return (c > 0) - (c < 0)


def dot(o, a, b):
    """Dot product of the vectors o->a and o->b"""
    return (a.x - o.x) * (b.x - o.x) + (a.y - o.y) * (b.y - o.y)


def lerp(p, q, t):
    """Point at parameter `t` on the line through `p` (t=0) and `q` (t=1)"""
    return Point(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y))


def param(p, q, x):
    """Parameter of point `x` on the line through `p` and `q`"""
    return dot(p, q, x) / dot(p, q, q)


def on_segment(p, a, b):
    """True if `p` lies on the closed segment `a` `b`"""
    if cross(a, b, p) != 0:
        return False
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(
        a.y, b.y
    )


def _boxes_apart(a1, b1, a2, b2):
    return (
        max(a1.x, b1.x) < min(a2.x, b2.x)
        or max(a2.x, b2.x) < min(a1.x, b1.x)
        or max(a1.y, b1.y) < min(a2.y, b2.y)
        or max(a2.y, b2.y) < min(a1.y, b1.y)
    )


def intersect(a1, b1, a2, b2):
    """
    Intersection of the closed segments `a1` `b1` and `a2` `b2`

    Returns:
        ``None`` if disjoint, a :class:`Point` for a single common point, or a
        :class:`Segment` if the segments overlap collinearly.
    """
    if _boxes_apart(a1, b1, a2, b2):
        return None

    rx, ry = b1.x - a1.x, b1.y - a1.y
    sx, sy = b2.x - a2.x, b2.y - a2.y
    denom = rx * sy - ry * sx
    qx, qy = a2.x - a1.x, a2.y - a1.y

    if denom != 0:
        t = (qx * sy - qy * sx) / denom
        u = (qx * ry - qy * rx) / denom
        if 0 <= t <= 1 and 0 <= u <= 1:
            return Point(a1.x + t * rx, a1.y + t * ry)
        return None

    if qx * ry - qy * rx != 0:
        # parallel, not collinear
        return None

    rr = rx * rx + ry * ry
    t0 = (qx * rx + qy * ry) / rr
    t1 = ((b2.x - a1.x) * rx + (b2.y - a1.y) * ry) / rr
    lo = max(Fraction(0), min(t0, t1))
    hi = min(Fraction(1), max(t0, t1))
    if lo > hi:
        return None
    if lo == hi:
        return lerp(a1, b1, lo)
    return Segment(lerp(a1, b1, lo), lerp(a1, b1, hi))


def segment_intersection(s1, s2):
    """
    Exact intersection of two segments

    Parameters:
        s1 (Segment): First segment
        s2 (Segment): Second segment

    Returns:
        ``None`` (empty), :class:`Point`, or :class:`Segment` (collinear overlap)

    Example
    -------
        >>> from pyvisguard.geometry import segment, segment_intersection
        >>> segment_intersection(segment((0, 0), (2, 2)), segment((0, 2), (2, 0)))
        Point(x=Fraction(1, 1), y=Fraction(1, 1))
        >>> print(segment_intersection(segment((0, 0), (1, 0)), segment((0, 1), (1, 1))))
        None
    """
    s1 = segment(*s1)
    s2 = segment(*s2)
    return intersect(s1.a, s1.b, s2.a, s2.b)


def crosses(a1, b1, a2, b2):
    """True if the two segments meet in a single point interior to both"""
    d1 = orient(a1, b1, a2)
    d2 = orient(a1, b1, b2)
    d3 = orient(a2, b2, a1)
    d4 = orient(a2, b2, b1)
    return d1 * d2 < 0 and d3 * d4 < 0


def signed_area(ring):
    """Signed area of a closed ring, positive if counterclockwise"""
    acc = Fraction(0)
    for i in range(len(ring)):
        p = ring[i - 1]
        q = ring[i]
        acc += p.x * q.y - q.x * p.y
    return acc / 2


def _odd_crossings(ring, pt):
    inside = False
    for i in range(len(ring)):
        a = ring[i - 1]
        b = ring[i]
        if (a.y > pt.y) != (b.y > pt.y):
            xint = a.x + (pt.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if pt.x < xint:
                inside = not inside
    return inside


def ring_contains(ring, pt):
    """
    Locate `pt` relative to a single closed ring

    Returns:
        (str): :const:`INTERIOR`, :const:`BOUNDARY` or :const:`EXTERIOR`
    """
    for i in range(len(ring)):
        if on_segment(pt, ring[i - 1], ring[i]):
            return BOUNDARY
    return INTERIOR if _odd_crossings(ring, pt) else EXTERIOR


def locate(poly, pt):
    """
    Locate a point relative to a polygon with holes

    The polygon is closed: points on the outer ring or on a hole ring are
    :const:`BOUNDARY`. Points inside a hole are :const:`EXTERIOR`.

    Parameters:
        poly (PolygonWithHoles): Polygon
        pt (Point): Query point

    Returns:
        (str): :const:`INTERIOR`, :const:`BOUNDARY` or :const:`EXTERIOR`
    """
    pt = as_point(pt)
    for a, b in poly.edge_points():
        if on_segment(pt, a, b):
            return BOUNDARY
    inside = False
    for ring in poly.rings:
        if _odd_crossings(ring, pt):
            inside = not inside
    return INTERIOR if inside else EXTERIOR


def sees(poly, p, q):
    """
    Exact visibility predicate

    `p` sees `q` if the closed segment `p` `q` is contained in the closed
    polygon. The segment may run along the boundary or touch a reflex vertex.

    Raises:
        ValueError: If `p` or `q` lies outside the polygon
    """
    p = as_point(p)
    q = as_point(q)
    for name, pt in (("p", p), ("q", q)):
        if locate(poly, pt) == EXTERIOR:
            msg = "Point {:} = ({:}) is outside the polygon".format(name, fmt_point(pt))
            raise ValueError(msg)
    return segment_in_polygon(poly, p, q)


def segment_in_polygon(poly, p, q):
    """
    Visibility between two exact points already known to lie in the polygon

    Same as :func:`sees` without the point location of the endpoints.
    """
    if p == q:
        return True
    params = {Fraction(0), Fraction(1)}
    for a, b in poly.edge_points():
        hit = intersect(p, q, a, b)
        if hit is None:
            continue
        if isinstance(hit, Segment):
            params.add(param(p, q, hit.a))
            params.add(param(p, q, hit.b))
        else:
            params.add(param(p, q, hit))
    params = sorted(params)
    for t0, t1 in zip(params[:-1], params[1:]):
        if locate(poly, lerp(p, q, (t0 + t1) / 2)) == EXTERIOR:
            return False
    return True


def _strip_collinear(ring):
    pts = [p for i, p in enumerate(ring) if p != ring[i - 1]]
    changed = True
    while changed and len(pts) > 3:
        changed = False
        for i in range(len(pts)):
            if cross(pts[i - 1], pts[i], pts[(i + 1) % len(pts)]) == 0:
                pts.pop(i)
                changed = True
                break
    return pts


def _in_triangle(p, a, b, c):
    return cross(a, b, p) >= 0 and cross(b, c, p) >= 0 and cross(c, a, p) >= 0


def triangulate(ring):
    """
    Ear-clipping triangulation of a simple ring

    Collinear vertices are removed first. The ring may be given in either
    orientation; triangles are returned counterclockwise.

    Returns:
        (list of tuple): Triangles as triples of :class:`Point`

    Raises:
        RuntimeError: If the ring encloses no area or no ear can be found
    """
    pts = _strip_collinear(list(ring))
    if len(pts) < 3 or signed_area(pts) == 0:
        msg = "Cannot triangulate a ring of zero area"
        raise RuntimeError(msg)
    if signed_area(pts) < 0:
        pts = pts[::-1]

    tris = []
    while len(pts) > 3:
        m = len(pts)
        for i in range(m):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % m]
            if cross(a, b, c) <= 0:
                continue
            if any(
                _in_triangle(p, a, b, c)
                for p in pts
                if p != a and p != b and p != c
            ):
                continue
            tris.append((a, b, c))
            pts.pop(i)
            break
        else:
            msg = "No ear found in ring of {:} vertices".format(m)
            raise RuntimeError(msg)
        pts = _strip_collinear(pts)
    if len(pts) == 3 and cross(*pts) > 0:
        tris.append(tuple(pts))
    return tris


def triangle_area(tri):
    return abs(Fraction(cross(*tri))) / 2


def centroid(tri):
    """Centroid of a triangle"""
    a, b, c = (as_point(p) for p in tri)
    return Point((a.x + b.x + c.x) / Fraction(3), (a.y + b.y + c.y) / Fraction(3))


def sample_triangle(tri, rng, resolution=2**20):
    """
    Uniform random point strictly inside a triangle

    Barycentric coordinates are drawn on a grid of `resolution` steps and
    reflected into the triangle, so the point is an exact rational.
    """
    a, b, c = tri
    while True:
        r1, r2 = rng.integers(1, resolution, size=2)
        if r1 + r2 == resolution:
            continue
        if r1 + r2 > resolution:
            r1, r2 = resolution - r1, resolution - r2
        u = Fraction(int(r1), resolution)
        w = Fraction(int(r2), resolution)
        return Point(
            a.x + u * (b.x - a.x) + w * (c.x - a.x),
            a.y + u * (b.y - a.y) + w * (c.y - a.y),
        )


class PolygonWithHoles(object):
    """
    Closed polygonal region with holes and exact rational vertices.

    Parameters:
        outer (list of pairs):
            Vertices of the outer ring
        holes (list of list of pairs, optional):
            Vertices of each hole ring
        general_position (bool):
            Reject three collinear vertices. Polygon files are always read
            with this check enabled.

    Rings are reoriented on input: the outer ring counterclockwise and every
    hole clockwise, so the interior of P is always to the left of an edge.
    Vertex ids follow the reoriented rings.

    Raises:
        ValueError: If a ring has fewer than 3 vertices, vertices coincide,
            a ring self-intersects, rings touch, a hole lies outside the outer
            ring or inside another hole, or (with :const:`general_position`)
            three vertices are collinear.

    Example
    -------
        >>> from pyvisguard import PolygonWithHoles
        >>> square = PolygonWithHoles([(0, 0), (1, 0), (1, 1), (0, 1)])
        >>> len(square), square.h
        (4, 0)
        >>> print(square)
        4
        0 0
        1 0
        1 1
        0 1
        0
    """

    def __init__(self, outer, holes=None, general_position=True):
        holes = [] if holes is None else holes

        rings = [[as_point(p) for p in outer]] + [
            [as_point(p) for p in hole] for hole in holes
        ]
        for ir, ring in enumerate(rings):
            if len(ring) < 3:
                msg = "Ring {:} has {:} vertices; at least 3 are needed".format(
                    ir, len(ring)
                )
                raise ValueError(msg)
            area = signed_area(ring)
            if area == 0:
                msg = "Ring {:} encloses no area".format(ir)
                raise ValueError(msg)
            if (ir == 0 and area < 0) or (ir > 0 and area > 0):
                ring.reverse()

        self.rings = [tuple(ring) for ring in rings]
        self.general_position = general_position
        self._set_index()
        self.validate()

    def _set_index(self):
        self.points = [p for ring in self.rings for p in ring]
        self.n = len(self.points)
        self.h = len(self.rings) - 1
        self._component = []
        self._next = []
        self._prev = []
        first = 0
        for ic, ring in enumerate(self.rings):
            m = len(ring)
            for k in range(m):
                self._component.append(ic)
                self._next.append(first + (k + 1) % m)
                self._prev.append(first + (k - 1) % m)
            first += m
        self.edges = [(i, self._next[i]) for i in range(self.n)]
        self._segments = [(self.points[i], self.points[j]) for i, j in self.edges]
        self._reflex = frozenset(
            i
            for i in range(self.n)
            if orient(self.points[self._prev[i]], self.points[i], self.points[self._next[i]])
            < 0
        )

    @property
    def outer(self):
        return self.rings[0]

    @property
    def holes(self):
        return self.rings[1:]

    @property
    def reflex(self):
        """Indices of vertices that are reflex with respect to the interior"""
        return sorted(self._reflex)

    def is_reflex(self, v):
        return self._index(v) in self._reflex

    def _collinear_triple(self):
        # a repeated direction from vertex i means a collinear triple
        for i, p in enumerate(self.points):
            directions = {}
            for j in range(i + 1, self.n):
                q = self.points[j]
                dx, dy = q.x - p.x, q.y - p.y
                key = None if dx == 0 else dy / dx
                if key in directions:
                    return i, directions[key], j
                directions[key] = j
        return None

    def validate(self):
        """
        Check the structural invariants of the polygon

        Raises:
            ValueError: On the first violated invariant
        """
        seen = {}
        for i, p in enumerate(self.points):
            if p in seen:
                msg = "Vertices {:} and {:} coincide at ({:})".format(
                    seen[p], i, fmt_point(p)
                )
                raise ValueError(msg)
            seen[p] = i

        if self.general_position:
            triple = self._collinear_triple()
            if triple is not None:
                i, j, k = triple
                msg = "Vertices {:}, {:}, {:} are collinear: ({:}), ({:}), ({:})".format(
                    i, j, k, *[fmt_point(self.points[m]) for m in triple]
                )
                raise ValueError(msg)

        # edges may only meet at a shared end point of adjacent edges
        for e1 in range(self.n):
            i1, j1 = self.edges[e1]
            a1, b1 = self.points[i1], self.points[j1]
            for e2 in range(e1 + 1, self.n):
                i2, j2 = self.edges[e2]
                hit = intersect(a1, b1, self.points[i2], self.points[j2])
                if hit is None:
                    continue
                shared = {i1, j1} & {i2, j2}
                if (
                    len(shared) == 1
                    and isinstance(hit, Point)
                    and hit == self.points[shared.pop()]
                ):
                    continue
                msg = "Edges ({:}, {:}) and ({:}, {:}) intersect".format(
                    i1, j1, i2, j2
                )
                raise ValueError(msg)

        for ih, hole in enumerate(self.holes, start=1):
            if ring_contains(self.outer, hole[0]) != INTERIOR:
                msg = "Hole {:} is not inside the outer ring".format(ih)
                raise ValueError(msg)
            for jh, other in enumerate(self.holes, start=1):
                if jh != ih and ring_contains(other, hole[0]) != EXTERIOR:
                    msg = "Hole {:} lies inside hole {:}".format(ih, jh)
                    raise ValueError(msg)

    def _index(self, v):
        i = v.index if isinstance(v, VertexRef) else int(v)
        if not 0 <= i < self.n:
            msg = "Vertex index {:} out of range [0, {:})".format(i, self.n)
            raise IndexError(msg)
        return i

    def vertex(self, v):
        """:class:`VertexRef` of vertex `v`"""
        i = self._index(v)
        return VertexRef(i, self._component[i])

    def component_of(self, v):
        """Ring (component) id of vertex `v`"""
        return self._component[self._index(v)]

    def ring_of(self, v):
        """Vertex ids of the ring that holds vertex `v`, in ring order"""
        c = self.component_of(v)
        first = sum(len(r) for r in self.rings[:c])
        return list(range(first, first + len(self.rings[c])))

    def next(self, v):
        """Successor of vertex `v` along its ring (interior to the left)"""
        return self._next[self._index(v)]

    def prev(self, v):
        """Predecessor of vertex `v` along its ring"""
        return self._prev[self._index(v)]

    def edge_points(self):
        """Boundary edges as pairs of :class:`Point`"""
        return self._segments

    def on_boundary(self, pt):
        """Index of the first edge containing `pt`, or ``None``"""
        for e, (i, j) in enumerate(self.edges):
            if on_segment(pt, self.points[i], self.points[j]):
                return e
        return None

    def area(self):
        """Exact area of the region"""
        return sum(signed_area(ring) for ring in self.rings)

    def bounds(self):
        """Bounding box ``(xmin, ymin, xmax, ymax)`` of the outer ring"""
        xs = [p.x for p in self.outer]
        ys = [p.y for p in self.outer]
        return min(xs), min(ys), max(xs), max(ys)

    def __len__(self):
        return self.n

    def __getitem__(self, v):
        return self.points[self._index(v)]

    def __iter__(self):
        return iter(self.points)

    def __eq__(self, other):
        if not isinstance(other, PolygonWithHoles):
            return False
        return self.rings == other.rings

    def __str__(self):
        buf = "{:}\n".format(len(self.outer))
        buf += "".join(fmt_point(p) + "\n" for p in self.outer)
        buf += "{:}\n".format(self.h)
        for hole in self.holes:
            buf += "{:}\n".format(len(hole))
            buf += "".join(fmt_point(p) + "\n" for p in hole)
        return buf.strip("\n")

    def copy(self):
        return deepcopy(self)

    def save(self, fname="sample.poly", comment="", hint=False):
        """
        Alias for :meth:`write()`
        """
        self.write(fname=fname, comment=comment, hint=hint)

    def write(self, fname="sample.poly", comment="", hint=False):
        """
        Write polygon to disk in the exact rational text format

        Args:
            fname (str): Name of the output file (including extension)
            comment (str): String to write into file header
            hint (bool): Include format description in file header
        """
        if not comment.startswith("#"):
            comment = "# " + comment
        if not comment.endswith("\n"):
            comment += "\n"

        if not isinstance(fname, str):
            print("Warning: filename reverts to default 'sample.poly'")
            fname = "sample.poly"

        buf = "# Polygon with holes created with PyVisGuard\n"
        buf += "# on: {:}\n".format(datetime.now().isoformat(" ", "seconds"))
        if hint:
            buf += _polyhint
        buf += comment
        buf += self.__str__() + "\n"

        with open(fname, "w") as fil:
            fil.write(buf)

    def plot(self, ax=None, show=True, labels=False):
        """
        Plot the polygon boundary, holes filled grey

        Args:
            ax (:class:`matplotlib.axes.Axes`): Axes to plot into
            show (bool): Show the figure
            labels (bool): Annotate vertex ids

        Returns:
            :class:`matplotlib.figure.Figure`
        """
        if ax is None:
            fig, ax = plt.subplots(figsize=(6, 6))
        else:
            fig = ax.figure

        for ic, ring in enumerate(self.rings):
            xy = np.array([[float(p.x), float(p.y)] for p in ring + ring[:1]])
            ax.plot(xy[:, 0], xy[:, 1], color="k", lw=1.2)
            if ic > 0:
                ax.fill(xy[:, 0], xy[:, 1], color="0.8")

        if labels:
            for i, p in enumerate(self.points):
                ax.annotate(str(i), (float(p.x), float(p.y)), fontsize=8)

        ax.set_aspect("equal")
        ax.set_xticks([])
        ax.set_yticks([])

        if show:
            plt.show()

        return fig


def sample_polygon(poly, m, rng, resolution=2**16):
    """
    Draw `m` uniform random interior points of a polygon

    Points are drawn on a rational grid of `resolution` steps per side of the
    bounding box and rejected unless :func:`locate` returns
    :const:`INTERIOR`.

    Returns:
        (list of Point)
    """
    xmin, ymin, xmax, ymax = poly.bounds()
    out = []
    while len(out) < m:
        ix, iy = rng.integers(0, resolution + 1, size=2)
        pt = Point(
            xmin + (xmax - xmin) * Fraction(int(ix), resolution),
            ymin + (ymax - ymin) * Fraction(int(iy), resolution),
        )
        if locate(poly, pt) == INTERIOR:
            out.append(pt)
    return out
