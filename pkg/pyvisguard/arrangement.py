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
Minimum visibility decomposition of a polygon by the windows of its vertices.

The windows of all vertices and the boundary edges form a planar
arrangement. Its bounded faces inside the polygon are the cells; every point
of a cell is seen by the same set of vertices. Crossing a window changes
that set by exactly the window's owner, which directs the dual graph
towards the cell that sees less. Its sinks are the cells of minimal
visibility.

Visible sets are stored as Python integers used as bitsets over vertex ids.
"""

from collections import deque
from functools import cmp_to_key

import numpy as np
from sortedcontainers import SortedKeyList

from pyvisguard.geometry import (
    EXTERIOR,
    INTERIOR,
    Point,
    Segment,
    centroid,
    cross,
    crosses,
    intersect,
    param,
    ring_contains,
    sample_triangle,
    segment_in_polygon,
    signed_area,
    triangle_area,
    triangulate,
)
from pyvisguard.visibility import KINDS, LEFT, RIGHT, TRANS, vertex_windows


def bits(mask):
    """Sorted ids of the set bits of `mask`"""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(ids):
    """Bitset with the bits `ids` set"""
    mask = 0
    for i in ids:
        mask |= 1 << int(i)
    return mask


class Cell(object):
    """
    Face of the decomposition inside the polygon.

    Attributes:
        id (int): Cell id
        halfedges (list of int): Half-edges of the outer boundary cycle
        outer (tuple of Point): Outer boundary ring (counterclockwise)
        inner (list of tuple of Point): Boundary rings of enclosed components
        representative (Point): Point strictly inside the cell
        visible (int): Bitset of vertices seeing the cell, ``None`` until
            :func:`assign_visible_sets` ran
    """

    def __init__(self, id, halfedges, outer, inner=None):
        self.id = id
        self.halfedges = halfedges
        self.outer = tuple(outer)
        self.inner = [tuple(ring) for ring in inner or []]
        self.representative = None
        self.visible = None

    @property
    def area(self):
        return signed_area(self.outer) + sum(signed_area(r) for r in self.inner)

    def contains(self, pt):
        """True if `pt` lies in the open cell"""
        if ring_contains(self.outer, pt) != INTERIOR:
            return False
        return all(ring_contains(r, pt) == EXTERIOR for r in self.inner)

    def visible_ids(self):
        return bits(self.visible) if self.visible is not None else None

    def __repr__(self):
        return "Cell({:}, {:} edges, visible={:})".format(
            self.id, len(self.outer), self.visible_ids()
        )


class DualGraph(object):
    """
    Directed dual graph of the decomposition.

    Nodes are cell ids. An edge ``(f, g)`` joins cells sharing a window edge
    and points from the cell that sees more to the cell that sees less.

    Attributes:
        n (int): Number of nodes
        edges (list of tuple): Directed edges, sorted
        successors (list of list of int): Out-neighbours per node
    """

    def __init__(self, n, edges):
        self.n = n
        self.edges = sorted(set(edges))
        self.successors = [[] for _ in range(n)]
        self.predecessors = [[] for _ in range(n)]
        for f, g in self.edges:
            self.successors[f].append(g)
            self.predecessors[g].append(f)

    def out_degree(self, f):
        return len(self.successors[f])

    def is_acyclic(self):
        indeg = [len(p) for p in self.predecessors]
        queue = deque(f for f in range(self.n) if indeg[f] == 0)
        count = 0
        while queue:
            f = queue.popleft()
            count += 1
            for g in self.successors[f]:
                indeg[g] -= 1
                if indeg[g] == 0:
                    queue.append(g)
        return count == self.n

    def __len__(self):
        return self.n


class Decomposition(object):
    """
    Planar subdivision of a polygon by the windows of all its vertices.

    Half-edge ``2k`` runs from ``edges[k][0]`` to ``edges[k][1]``, half-edge
    ``2k+1`` runs back; the twin of half-edge ``e`` is ``e ^ 1``.

    Attributes:
        source (PolygonWithHoles): Decomposed polygon
        windows (list of Window): Windows, deduplicated by segment
        segments (list of Segment): Boundary edges followed by windows
        vertices (list of Point): Arrangement vertices
        edges (list of tuple): Arrangement edges as vertex id pairs
        edge_windows (list of frozenset): Window ids covering each edge
        edge_boundary (list of bool): Whether each edge lies on the boundary
        nxt (list of int): Next half-edge around the face on its left
        face_of (list of int): Cell id left of each half-edge, ``-1`` outside
        cells (list of Cell): Cells inside the polygon
        crossing_count (int): Number of proper window-window crossings
        crossings (list of set): Window ids crossing each window
        dual (DualGraph): Set by :func:`decompose`
        sinks (list of int): Set by :func:`decompose`
    """

    def __init__(self, source, windows):
        self.source = source
        self.windows = windows
        self.segments = []
        self.vertices = []
        self.edges = []
        self.edge_windows = []
        self.edge_boundary = []
        self.nxt = []
        self.face_of = []
        self.cells = []
        self.crossing_count = 0
        self.crossings = [set() for _ in windows]
        self.dual = None
        self.sinks = None

    @property
    def k(self):
        return self.crossing_count

    def origin(self, he):
        return self.edges[he >> 1][he & 1]

    def window_counts(self):
        """Number of windows per kind"""
        counts = {kind: 0 for kind in KINDS}
        for w in self.windows:
            counts[w.kind] += 1
        return counts

    def __len__(self):
        return len(self.cells)

    def __getitem__(self, i):
        return self.cells[i]

    def __str__(self):
        counts = self.window_counts()
        out = "Decomposition of polygon with n={:}, h={:}\n".format(
            self.source.n, self.source.h
        )
        out += "Windows (left/right/trans): {:}/{:}/{:}\n".format(
            counts[LEFT], counts[RIGHT], counts[TRANS]
        )
        out += "Window crossings: {:}\n".format(self.crossing_count)
        out += "Vertices/edges: {:}/{:}\n".format(len(self.vertices), len(self.edges))
        out += "Cells: {:}".format(len(self.cells))
        if self.sinks is not None:
            out += "\nSinks: {:}".format(len(self.sinks))
        return out


def collect_windows(poly, verbose=False):
    """
    Windows of all vertices, deduplicated by segment

    Returns:
        (list of Window): In owner-id order
    """
    windows = []
    seen = set()
    for v in range(poly.n):
        for w in vertex_windows(poly, v):
            key = frozenset(w.segment)
            if key in seen:
                continue
            seen.add(key)
            windows.append(w)
    if verbose:
        print("Collected {:} windows of {:} vertices".format(len(windows), poly.n))
    return windows


def _candidate_pairs(segments):
    # sweep over x: a segment is tested against the active segments whose
    # x-extent still reaches its left end
    def xlo(s):
        return min(segments[s].a.x, segments[s].b.x)

    def xhi(s):
        return max(segments[s].a.x, segments[s].b.x)

    active = SortedKeyList(key=xhi)
    for s in sorted(range(len(segments)), key=xlo):
        left = xlo(s)
        while active and xhi(active[0]) < left:
            active.pop(0)
        for t in active:
            yield t, s
        active.add(s)


def _direction_cmp(p, q):
    def half(d):
        return 0 if d.y > 0 or (d.y == 0 and d.x > 0) else 1

    hp, hq = half(p), half(q)
    if hp != hq:
        return hp - hq
    c = p.x * q.y - p.y * q.x
    return -1 if c > 0 else (1 if c < 0 else 0)


def build_decomposition(poly, windows, verbose=False):
    """
    Build the planar subdivision of `poly` by `windows`

    Parameters:
        poly (PolygonWithHoles): Polygon
        windows (list of Window): Output of :func:`collect_windows`
        verbose (bool): Print a summary line

    Returns:
        :class:`Decomposition` with cells and representative points

    Raises:
        RuntimeError: If a window end is off the boundary, or the face
            structure is inconsistent
    """
    for w in windows:
        if poly.on_boundary(w.end) is None:
            msg = "Window of vertex {:} ends at ({:} {:}), off the boundary".format(
                w.owner.index, *w.end
            )
            raise RuntimeError(msg)

    D = Decomposition(poly, list(windows))
    nb = len(poly.edges)
    D.segments = [Segment(a, b) for a, b in poly.edge_points()] + [
        Segment(w.base, w.end) for w in windows
    ]
    segs = D.segments

    splits = [{s.a, s.b} for s in segs]
    for s, t in _candidate_pairs(segs):
        hit = intersect(segs[s].a, segs[s].b, segs[t].a, segs[t].b)
        if hit is None:
            continue
        points = [hit.a, hit.b] if isinstance(hit, Segment) else [hit]
        for p in points:
            splits[s].add(p)
            splits[t].add(p)
        if s >= nb and t >= nb and crosses(segs[s].a, segs[s].b, segs[t].a, segs[t].b):
            D.crossings[s - nb].add(t - nb)
            D.crossings[t - nb].add(s - nb)
            D.crossing_count += 1

    vid = {}
    edge_id = {}
    for s, seg in enumerate(segs):
        pts = sorted(splits[s], key=lambda p: param(seg.a, seg.b, p))
        for p in pts:
            if p not in vid:
                vid[p] = len(D.vertices)
                D.vertices.append(p)
        for p, q in zip(pts[:-1], pts[1:]):
            u, v = vid[p], vid[q]
            key = (min(u, v), max(u, v))
            if key not in edge_id:
                edge_id[key] = len(D.edges)
                D.edges.append((u, v))
                D.edge_windows.append(set())
                D.edge_boundary.append(None)
            k = edge_id[key]
            if s < nb:
                # direction of the boundary ring, interior on the left
                D.edge_boundary[k] = (u, v)
            else:
                D.edge_windows[k].add(s - nb)

    # boundary half-edges running against the ring have the outside on their left
    outside = set()
    for k, (u, v) in enumerate(D.edges):
        if D.edge_boundary[k] is not None:
            outside.add(2 * k if D.edge_boundary[k] != (u, v) else 2 * k + 1)
    D.edge_boundary = [b is not None for b in D.edge_boundary]
    D.edge_windows = [frozenset(s) for s in D.edge_windows]

    nhe = 2 * len(D.edges)
    outgoing = [[] for _ in D.vertices]
    for he in range(nhe):
        outgoing[D.origin(he)].append(he)

    def vec(he):
        p = D.vertices[D.origin(he)]
        q = D.vertices[D.origin(he ^ 1)]
        return Point(q.x - p.x, q.y - p.y)

    position = [0] * nhe
    for v, hes in enumerate(outgoing):
        hes.sort(key=cmp_to_key(lambda a, b: _direction_cmp(vec(a), vec(b))))
        for k, he in enumerate(hes):
            position[he] = k

    D.nxt = [0] * nhe
    for he in range(nhe):
        twin = he ^ 1
        around = outgoing[D.origin(twin)]
        D.nxt[he] = around[position[twin] - 1]

    cycles = []
    cycle_of = [-1] * nhe
    for he in range(nhe):
        if cycle_of[he] >= 0:
            continue
        cyc = []
        e = he
        while cycle_of[e] < 0:
            cycle_of[e] = len(cycles)
            cyc.append(e)
            e = D.nxt[e]
        cycles.append(cyc)

    rings = [tuple(D.vertices[D.origin(e)] for e in cyc) for cyc in cycles]
    areas = [signed_area(r) for r in rings]

    positive = [c for c in range(len(cycles)) if areas[c] > 0]
    holes_of = {c: [] for c in positive}
    for c in range(len(cycles)):
        if areas[c] > 0:
            continue
        if areas[c] == 0:
            msg = "Face cycle of zero area at ({:} {:})".format(*rings[c][0])
            raise RuntimeError(msg)
        corner = rings[c][0]
        container = None
        for f in positive:
            if ring_contains(rings[f], corner) == INTERIOR:
                if container is None or areas[f] < areas[container]:
                    container = f
        if container is not None:
            holes_of[container].append(c)

    D.face_of = [-1] * nhe
    for c in positive:
        if any(e in outside for e in cycles[c]):
            continue
        cell = Cell(
            len(D.cells),
            cycles[c],
            rings[c],
            [rings[i] for i in holes_of[c]],
        )
        for e in cycles[c]:
            D.face_of[e] = cell.id
        for i in holes_of[c]:
            for e in cycles[i]:
                D.face_of[e] = cell.id
        cell.representative = representative_point(cell)
        D.cells.append(cell)

    if verbose:
        counts = D.window_counts()
        print(
            "Decomposition: {:} windows ({:} left, {:} right, {:} trans), "
            "k={:}, {:} cells".format(
                len(windows),
                counts[LEFT],
                counts[RIGHT],
                counts[TRANS],
                D.crossing_count,
                len(D.cells),
            )
        )
    return D


def representative_point(cell):
    """
    Exact point strictly inside a cell

    The outer ring is triangulated; the centroid of the largest triangle
    that avoids every inner ring is returned.

    Raises:
        RuntimeError: If the cell has no area
    """
    if cell.area <= 0:
        msg = "Cell {:} has no area".format(getattr(cell, "id", "?"))
        raise RuntimeError(msg)
    tris = sorted(triangulate(cell.outer), key=triangle_area, reverse=True)
    for tri in tris:
        c = centroid(tri)
        if all(ring_contains(r, c) == EXTERIOR for r in cell.inner):
            return c
    msg = "No interior point found for cell {:}".format(getattr(cell, "id", "?"))
    raise RuntimeError(msg)


def sample_cell(cell, k, rng):
    """
    Draw `k` uniform random points strictly inside a cell

    Returns:
        (list of Point)
    """
    tris = triangulate(cell.outer)
    weights = np.array([float(triangle_area(t)) for t in tris])
    weights /= weights.sum()
    out = []
    while len(out) < k:
        tri = tris[rng.choice(len(tris), p=weights)]
        pt = sample_triangle(tri, rng)
        if all(ring_contains(r, pt) == EXTERIOR for r in cell.inner):
            out.append(pt)
    return out


def visible_set(poly, pt):
    """Bitset of the vertices that see point `pt`"""
    mask = 0
    for i, p in enumerate(poly.points):
        if segment_in_polygon(poly, p, pt):
            mask |= 1 << i
    return mask


def _window_adjacency(D):
    # (f, g) -> bitset of owners of the windows separating f and g
    adjacency = {}
    for k, wins in enumerate(D.edge_windows):
        if not wins:
            continue
        f, g = D.face_of[2 * k], D.face_of[2 * k + 1]
        if f < 0 or g < 0 or f == g:
            continue
        owners = mask_of(D.windows[w].owner.index for w in wins)
        adjacency.setdefault((f, g), owners)
        adjacency.setdefault((g, f), owners)
    return adjacency


def assign_visible_sets(D, verify=False, verbose=False, samples=3, seed=0):
    """
    Attach the visible-vertex bitset to every cell

    The first cell is computed directly with :func:`sees`. All other cells
    follow by breadth-first propagation across window edges: crossing a
    window toggles its owner.

    Parameters:
        D (Decomposition): Decomposition
        verify (bool): Recompute every cell directly and compare
        samples (int): Extra random points per cell checked when verifying
        seed (int): Seed of the sampling generator

    Returns:
        :class:`Decomposition` (the same object)

    Raises:
        RuntimeError: If propagation is inconsistent or disagrees with the
            direct computation
    """
    poly = D.source
    if not D.cells:
        return D
    adjacency = _window_adjacency(D)
    neighbours = [[] for _ in D.cells]
    for (f, g), owners in adjacency.items():
        neighbours[f].append((g, owners))

    for cell in D.cells:
        cell.visible = None

    for start in D.cells:
        if start.visible is not None:
            continue
        start.visible = visible_set(poly, start.representative)
        queue = deque([start.id])
        while queue:
            f = queue.popleft()
            for g, owners in neighbours[f]:
                expected = D.cells[f].visible ^ owners
                if D.cells[g].visible is None:
                    D.cells[g].visible = expected
                    queue.append(g)
                elif D.cells[g].visible != expected:
                    msg = "Visible sets of cells {:} and {:} disagree".format(f, g)
                    raise RuntimeError(msg)

    if verify:
        rng = np.random.default_rng(seed)
        for cell in D.cells:
            for pt in [cell.representative] + sample_cell(cell, samples, rng):
                direct = visible_set(poly, pt)
                if direct != cell.visible:
                    msg = "Cell {:}: propagated {:} but sees() gives {:}".format(
                        cell.id, bits(cell.visible), bits(direct)
                    )
                    msg += " at ({:} {:})".format(*pt)
                    raise RuntimeError(msg)

    empty = [cell.id for cell in D.cells if cell.visible == 0]
    if empty:
        print("Warning: cells {:} are seen by no vertex".format(empty))
    if verbose:
        print("Assigned visible sets to {:} cells".format(len(D.cells)))
    return D


def build_dual(D):
    """
    Directed dual graph over window edges

    Raises:
        RuntimeError: If two adjacent cells do not differ by exactly one
            vertex
    """
    edges = []
    for (f, g), owners in _window_adjacency(D).items():
        if f > g:
            continue
        vf, vg = D.cells[f].visible, D.cells[g].visible
        delta = vf ^ vg
        if delta == 0 or delta & (delta - 1):
            msg = "Adjacent cells {:} and {:} differ by {:} vertices".format(
                f, g, len(bits(delta))
            )
            raise RuntimeError(msg)
        edges.append((f, g) if vg & delta == 0 else (g, f))
    return DualGraph(len(D.cells), edges)


def sinks(graph):
    """Cell ids with out-degree 0"""
    return [f for f in range(graph.n) if graph.out_degree(f) == 0]


def decompose(poly, verify=False, verbose=False):
    """
    Windows, decomposition, visible sets, dual graph and sinks in one call

    Returns:
        :class:`Decomposition` with :attr:`dual` and :attr:`sinks` set
    """
    D = build_decomposition(poly, collect_windows(poly, verbose=verbose), verbose)
    assign_visible_sets(D, verify=verify, verbose=verbose)
    D.dual = build_dual(D)
    D.sinks = sinks(D.dual)
    if verbose:
        print("Dual graph: {:} edges, {:} sinks".format(len(D.dual.edges), len(D.sinks)))
    return D


def crossing_budget(D):
    """
    Largest number of windows of a single vertex crossing one window

    Returns:
        (dict): Maximum over windows and vertices, in total (``"total"``)
        and per window kind
    """
    budget = {"total": 0}
    budget.update({kind: 0 for kind in KINDS})
    for crossing in D.crossings:
        per_owner = {}
        for w in crossing:
            win = D.windows[w]
            counts = per_owner.setdefault(win.owner.index, {kind: 0 for kind in KINDS})
            counts[win.kind] += 1
        for counts in per_owner.values():
            budget["total"] = max(budget["total"], sum(counts.values()))
            for kind in KINDS:
                budget[kind] = max(budget[kind], counts[kind])
    return budget
