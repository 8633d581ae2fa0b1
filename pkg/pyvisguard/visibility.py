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
Visibility polygons, windows and pockets of polygon vertices.

A window of a vertex `v` starts at a vertex `b` seen by `v` and runs along
the ray from `v` through `b` until it first hits the boundary again. Its
kind is :const:`TRANS` if base and end lie on different rings, otherwise
:const:`LEFT` or :const:`RIGHT` by the side of the oriented line `v` -> `b`
on which the cut-off pocket lies.
"""

from dataclasses import dataclass
from functools import cmp_to_key

from pyvisguard.geometry import (
    EXTERIOR,
    Point,
    VertexRef,
    cross,
    dot,
    on_segment,
    orient,
    ring_contains,
    segment_in_polygon,
)

LEFT = "left"
RIGHT = "right"
TRANS = "trans"
KINDS = (LEFT, RIGHT, TRANS)


@dataclass(frozen=True)
class Window:
    """
    Cut bounding the visibility polygon of its owner.

    Attributes:
        owner (VertexRef): Vertex whose visibility the window bounds
        origin (Point): Position of the owner
        base (Point): Polygon vertex where the cut starts
        end (Point): First boundary point behind the base
        kind (str): :const:`LEFT`, :const:`RIGHT` or :const:`TRANS`
        base_vertex (int): Vertex id of the base
        end_edge (int): Id of the boundary edge holding the end
        end_component (int): Ring id of the end
    """

    owner: VertexRef
    origin: Point
    base: Point
    end: Point
    kind: str
    base_vertex: int
    end_edge: int
    end_component: int

    @property
    def segment(self):
        return self.base, self.end

    def in_half_plane(self, pt):
        """
        True if `pt` lies strictly inside the window half plane

        The half plane of a left (right) window is the open half plane left
        (right) of the line from owner to base. Trans windows have none.
        """
        if self.kind == TRANS:
            return False
        side = orient(self.origin, self.base, pt)
        return side > 0 if self.kind == LEFT else side < 0


@dataclass(frozen=True)
class VisibilityPolygon:
    """
    Region seen by a vertex, bounded by its windows and pieces of the boundary

    Attributes:
        owner (VertexRef): The seeing vertex
        region (tuple of Point): Counterclockwise ring starting at the owner
        windows (list of Window): Windows in counterclockwise angular order
    """

    owner: VertexRef
    region: tuple
    windows: list

    def contains(self, pt):
        return ring_contains(self.region, pt) != EXTERIOR


@dataclass(frozen=True)
class Pocket:
    """
    Part of the polygon cut off by a left or right window

    Attributes:
        window (Window): The cutting window
        chain (tuple of Point): Boundary chain from window base to window end
        side (str): :const:`LEFT` or :const:`RIGHT`
    """

    window: Window
    chain: tuple
    side: str

    @property
    def ring(self):
        return self.chain

    def contains(self, pt):
        return ring_contains(self.chain, pt) != EXTERIOR


@dataclass(frozen=True)
class ComponentSequence:
    """
    Rings first hit by a ray turning once clockwise around the owner

    Attributes:
        owner (VertexRef): The vertex the ray turns around
        sequence (tuple of int): Ring ids, without immediate repetitions
    """

    owner: VertexRef
    sequence: tuple

    def __len__(self):
        return len(self.sequence)

    def is_valid(self, h=None):
        """
        True if the sequence is closed, of Davenport-Schinzel order 2 and,
        if `h` is given, no longer than 2h+1
        """
        seq = self.sequence
        if not seq or seq[0] != seq[-1]:
            return False
        if h is not None and len(seq) > 2 * h + 1:
            return False
        return is_davenport_schinzel(seq, order=2)


def is_davenport_schinzel(sequence, order=2):
    """
    Check the Davenport-Schinzel property of a sequence

    No two adjacent symbols are equal, and no two distinct symbols alternate
    more than `order` + 1 times (for order 2: no subsequence a..b..a..b).

    Example
    -------
        >>> from pyvisguard.visibility import is_davenport_schinzel
        >>> is_davenport_schinzel([0, 1, 0, 2, 0])
        True
        >>> is_davenport_schinzel([0, 1, 0, 1])
        False
    """
    seq = list(sequence)
    if any(a == b for a, b in zip(seq[:-1], seq[1:])):
        return False
    symbols = sorted(set(seq))
    for i, a in enumerate(symbols):
        for b in symbols[i + 1 :]:
            alternation = []
            for s in seq:
                if s in (a, b) and (not alternation or alternation[-1] != s):
                    alternation.append(s)
            if len(alternation) > order + 1:
                return False
    return True


def visible_vertices(poly, v):
    """Ids of all vertices seen by vertex `v` (excluding `v`)"""
    i = poly._index(v)
    pv = poly.points[i]
    return [j for j, pj in enumerate(poly.points) if j != i and segment_in_polygon(poly, pv, pj)]


def _window_side(poly, i, b):
    # side of line v->b holding the edges at b, or 0 if the ray through b
    # does not continue into the interior
    pv = poly.points[i]
    pb = poly.points[b]
    neighbours = [k for k in (poly.prev(b), poly.next(b)) if k != i]
    sides = {orient(pv, pb, poly.points[k]) for k in neighbours}
    if len(sides) != 1 or 0 in sides:
        return 0
    if not poly.is_reflex(b):
        return 0
    return sides.pop()


def shoot(poly, origin, direction):
    """
    First boundary point hit by the open ray from `origin` along `direction`

    Parameters:
        origin (Point): Ray origin (its own edges are skipped)
        direction (Point): Direction vector

    Returns:
        (tuple): Hit point and id of the boundary edge holding it

    Raises:
        RuntimeError: If the ray leaves without hitting the boundary
    """
    best = None
    for e, (a, c) in enumerate(poly.edge_points()):
        ex, ey = c.x - a.x, c.y - a.y
        denom = direction.x * ey - direction.y * ex
        if denom == 0:
            continue
        wx, wy = a.x - origin.x, a.y - origin.y
        s = (wx * ey - wy * ex) / denom
        u = (wx * direction.y - wy * direction.x) / denom
        if s > 0 and 0 <= u <= 1 and (best is None or s < best[0]):
            best = (s, e)
    if best is None:
        msg = "Ray from ({:} {:}) hits no boundary".format(*origin)
        raise RuntimeError(msg)
    s, e = best
    hit = Point(origin.x + s * direction.x, origin.y + s * direction.y)
    return hit, e


def _make_window(poly, i, b):
    side = _window_side(poly, i, b)
    if side == 0:
        return None
    pv = poly.points[i]
    pb = poly.points[b]
    end, e = shoot(poly, pb, Point(pb.x - pv.x, pb.y - pv.y))
    end_component = poly.component_of(poly.edges[e][0])
    if end_component != poly.component_of(b):
        kind = TRANS
    else:
        kind = LEFT if side > 0 else RIGHT
    return Window(poly.vertex(i), pv, pb, end, kind, b, e, end_component)


def vertex_windows(poly, v, visible=None):
    """
    Windows of vertex `v`, in vertex-id order of their bases

    Parameters:
        visible (list of int, optional): Precomputed :func:`visible_vertices`
    """
    i = poly._index(v)
    if visible is None:
        visible = visible_vertices(poly, i)
    windows = []
    for b in visible:
        w = _make_window(poly, i, b)
        if w is not None:
            windows.append(w)
    return windows


def classify_window(poly, w):
    """
    Recompute the kind of a window from the polygon

    Returns:
        (str): :const:`TRANS` if base and end lie on different rings, else
        :const:`LEFT` or :const:`RIGHT` by the side of the line owner -> base
        that holds the pocket
    """
    b = w.base_vertex
    e = poly.on_boundary(w.end)
    if e is None:
        msg = "Window end ({:} {:}) is not on the boundary".format(*w.end)
        raise ValueError(msg)
    if poly.component_of(poly.edges[e][0]) != poly.component_of(b):
        return TRANS
    i = w.owner.index
    neighbour = poly.prev(b) if poly.prev(b) != i else poly.next(b)
    side = orient(poly.points[i], poly.points[b], poly.points[neighbour])
    return LEFT if side > 0 else RIGHT


def _angle_cmp(origin, ref):
    def half(p):
        c = cross(origin, ref, p)
        return 0 if c > 0 or (c == 0 and dot(origin, ref, p) > 0) else 1

    def cmp(p, q):
        hp, hq = half(p), half(q)
        if hp != hq:
            return hp - hq
        c = cross(origin, p, q)
        if c != 0:
            return -1 if c > 0 else 1
        dp, dq = dot(origin, p, p), dot(origin, q, q)
        return (dp > dq) - (dp < dq)

    return cmp


def visibility_polygon(poly, v):
    """
    Visibility polygon of vertex `v`

    The visible vertices are sorted counterclockwise around `v`, starting
    at the direction of the next vertex along the ring. A window contributes
    its base and end in the order the sweep meets them.

    Parameters:
        poly (PolygonWithHoles): Polygon
        v (int or VertexRef): Seeing vertex

    Returns:
        :class:`VisibilityPolygon`

    Example
    -------
        >>> from pyvisguard import PolygonWithHoles
        >>> from pyvisguard.visibility import visibility_polygon
        >>> hexagon = PolygonWithHoles([(0, 0), (2, -1), (4, 0), (4, 2), (2, 3), (0, 2)])
        >>> visibility_polygon(hexagon, 0).windows
        []
    """
    i = poly._index(v)
    pv = poly.points[i]
    visible = visible_vertices(poly, i)
    by_base = {w.base_vertex: w for w in vertex_windows(poly, i, visible)}

    cmp = _angle_cmp(pv, poly.points[poly.next(i)])
    order = sorted(visible, key=cmp_to_key(lambda a, b: cmp(poly.points[a], poly.points[b])))

    ring = [pv]
    windows = []
    for b in order:
        w = by_base.get(b)
        if w is None:
            pieces = [poly.points[b]]
        else:
            windows.append(w)
            side = orient(pv, w.base, poly.points[poly.prev(b)])
            if side == 0:
                side = orient(pv, w.base, poly.points[poly.next(b)])
            pieces = [w.end, w.base] if side > 0 else [w.base, w.end]
        for p in pieces:
            if p != ring[-1]:
                ring.append(p)
    while len(ring) > 1 and ring[-1] == ring[0]:
        ring.pop()

    return VisibilityPolygon(poly.vertex(i), tuple(ring), windows)


def pocket_of(poly, w):
    """
    Pocket cut off by a left or right window

    The chain runs along the boundary from the window base to the window
    end, away from the owner.

    Raises:
        ValueError: For Trans windows, which have no pocket
    """
    if w.kind == TRANS:
        msg = "Trans window with base ({:} {:}) has no pocket".format(*w.base)
        raise ValueError(msg)

    b = w.base_vertex
    a0, a1 = poly.edges[w.end_edge]
    if w.kind == RIGHT:
        idx = [b]
        while idx[-1] != a0:
            idx.append(poly.next(idx[-1]))
        pts = [poly.points[k] for k in idx] + [w.end]
    else:
        idx = [a1]
        while idx[-1] != b:
            idx.append(poly.next(idx[-1]))
        pts = [w.end] + [poly.points[k] for k in idx]
        pts.reverse()

    chain = [pts[0]]
    for p in pts[1:]:
        if p != chain[-1]:
            chain.append(p)
    return Pocket(w, tuple(chain), w.kind)


def component_sequence(poly, v):
    """
    Rings hit first by a ray turning one full clockwise turn around `v`

    The ray starts inside the external angle at `v`. The sequence is read off
    the boundary pieces of the visibility polygon; consecutive repetitions
    collapse, so every change of symbol happens at a Trans window.

    Returns:
        :class:`ComponentSequence`
    """
    i = poly._index(v)
    vis = visibility_polygon(poly, i)
    cuts = {frozenset(w.segment) for w in vis.windows}

    ccw = []
    ring = vis.region
    for k in range(len(ring)):
        p, q = ring[k], ring[(k + 1) % len(ring)]
        if frozenset((p, q)) in cuts:
            continue
        for e, (a, c) in enumerate(poly.edge_points()):
            if on_segment(p, a, c) and on_segment(q, a, c):
                ccw.append(poly.component_of(poly.edges[e][0]))
                break
        else:
            msg = "Piece ({:} {:})-({:} {:}) of Vis({:}) is neither window nor boundary".format(
                p.x, p.y, q.x, q.y, i
            )
            raise RuntimeError(msg)

    own = poly.component_of(i)
    sequence = [own]
    for c in ccw[::-1] + [own]:
        if c != sequence[-1]:
            sequence.append(c)
    return ComponentSequence(poly.vertex(i), tuple(sequence))
