from itertools import combinations

import numpy as np
import pytest

from pyvisguard import generate
from pyvisguard.arrangement import (
    LEFT,
    RIGHT,
    TRANS,
    assign_visible_sets,
    bits,
    collect_windows,
    crossing_budget,
    decompose,
    mask_of,
    sample_cell,
    visible_set,
)
from pyvisguard.geometry import INTERIOR, Segment, intersect, locate, param

try:
    #  pytest
    from . import test_1_geometry as geo
    from . import test_2_visibility as vis
except ImportError:
    #  ipython
    import test_1_geometry as geo
    import test_2_visibility as vis


def naive_cell_count(poly):
    """Cells from all-pairs splitting and Euler's formula"""
    segs = [Segment(a, b) for a, b in poly.edge_points()]
    segs += [Segment(w.base, w.end) for w in collect_windows(poly)]
    splits = [{s.a, s.b} for s in segs]
    for i, j in combinations(range(len(segs)), 2):
        hit = intersect(segs[i].a, segs[i].b, segs[j].a, segs[j].b)
        if hit is None:
            continue
        pts = list(hit) if isinstance(hit, Segment) else [hit]
        splits[i].update(pts)
        splits[j].update(pts)

    vertices = set()
    edges = set()
    for s, pts in zip(segs, splits):
        pts = sorted(pts, key=lambda p: param(s.a, s.b, p))
        vertices.update(pts)
        edges.update(frozenset(e) for e in zip(pts[:-1], pts[1:]))

    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            v = parent[v]
        return v

    for e in edges:
        a, b = tuple(e)
        parent[find(a)] = find(b)
    components = len({find(v) for v in vertices})
    # V - E + F = 1 + C, minus the unbounded face and the hole interiors
    return len(edges) - len(vertices) + components - poly.h


def test_def_lpolygon_decomposition():
    return decompose(geo.test_def_lpolygon(), verify=True)


def test_bits():
    assert bits(0b10110) == [1, 2, 4]
    assert mask_of([4, 1, 2]) == 0b10110
    assert bits(0) == []


def test_convex():
    D = decompose(geo.test_def_convex())
    assert len(D.windows) == 0
    assert len(D.cells) == 1
    assert D.cells[0].visible_ids() == list(range(6))
    assert D.dual.edges == []
    assert D.sinks == [0]
    assert D.k == 0


def test_lpolygon():
    D = test_def_lpolygon_decomposition()
    assert len(D.windows) == 4
    assert len(D.cells) == 5
    assert D.crossing_count == 0
    assert len(D.dual.edges) == 4
    assert D.dual.is_acyclic()
    sinks = sorted(D.cells[s].visible_ids() for s in D.sinks)
    assert sinks == [[0, 1, 2, 3], [0, 3, 4, 5]]
    full = [c for c in D.cells if c.visible_ids() == list(range(6))]
    assert len(full) == 1
    assert D.window_counts()[TRANS] == 0
    assert "Cells: 5" in str(D)


def test_face_counts():
    polys = vis.test_def_corpus() + [geo.test_def_lpolygon()]
    for poly in polys:
        D = decompose(poly)
        assert len(D.cells) == naive_cell_count(poly)
        assert sum(c.area for c in D.cells) == poly.area()


def test_equivalence_cells():
    rng = np.random.default_rng(11)
    for poly in vis.test_def_corpus():
        D = decompose(poly, verify=True)
        for cell in D.cells:
            assert locate(poly, cell.representative) == INTERIOR
            assert cell.contains(cell.representative)
            for pt in sample_cell(cell, 3, rng):
                assert visible_set(poly, pt) == cell.visible


def test_dual_edges():
    for poly in vis.test_def_corpus():
        D = decompose(poly)
        assert D.dual.is_acyclic()
        for f, g in D.dual.edges:
            vf, vg = D.cells[f].visible, D.cells[g].visible
            assert vf & vg == vg
            assert len(bits(vf ^ vg)) == 1


def test_sinks_brute_force():
    polys = vis.test_def_corpus() + [geo.test_def_lpolygon()]
    for poly in polys:
        D = decompose(poly)
        neighbours = {f: set() for f in range(len(D.cells))}
        for k, wins in enumerate(D.edge_windows):
            f, g = D.face_of[2 * k], D.face_of[2 * k + 1]
            if wins and f >= 0 and g >= 0 and f != g:
                neighbours[f].add(g)
                neighbours[g].add(f)
        # a sink sees no more than any adjacent cell
        brute = [
            f
            for f, cell in enumerate(D.cells)
            if all(
                cell.visible & D.cells[g].visible == cell.visible for g in neighbours[f]
            )
        ]
        assert D.sinks == brute
        assert 1 <= len(D.sinks) <= len(D.cells)


def test_crossing_budget():
    for poly in vis.test_def_corpus():
        D = decompose(poly)
        budget = crossing_budget(D)
        assert budget[LEFT] <= 1
        assert budget[RIGHT] <= 1
        assert budget[TRANS] <= 2 * poly.h
        assert budget["total"] <= 2 * (poly.h + 1)
        assert D.crossing_count == sum(len(c) for c in D.crossings) // 2


def test_verify_samples_cells():
    D = test_def_lpolygon_decomposition()
    full = [c for c in D.cells if c.visible_ids() == list(range(6))][0]
    sink = [c for c in D.cells if c.visible_ids() == [0, 3, 4, 5]][0]
    # same representative, but the ring of a cell that sees less
    full.outer = sink.outer
    assign_visible_sets(D)
    with pytest.raises(RuntimeError, match="Cell {:}:".format(full.id)):
        assign_visible_sets(D, verify=True)


def test_def_growth_bounds():
    # cells / ((h+1) n^3) and sinks / ((h+1)^2 n^2)
    return {"cells": 1, "sinks": 1}


def test_growth():
    bounds = test_def_growth_bounds()
    polys = [generate("spiral", [n]) for n in (20, 40, 80)]
    # holed families stop at n=40 to keep the run short
    polys += [generate("grid-holes", [n, h]) for n in (20, 40) for h in (1, 2)]
    for poly in polys:
        D = decompose(poly)
        h1 = poly.h + 1
        assert len(D.cells) <= bounds["cells"] * h1 * poly.n**3
        assert 1 <= len(D.sinks) <= bounds["sinks"] * h1**2 * poly.n**2
