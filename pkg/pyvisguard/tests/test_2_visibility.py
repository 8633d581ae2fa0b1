from fractions import Fraction

import numpy as np
import pytest

from pyvisguard import generate
from pyvisguard.geometry import (
    EXTERIOR,
    INTERIOR,
    Point,
    crosses,
    ring_contains,
    sample_polygon,
    sees,
)
from pyvisguard.visibility import (
    KINDS,
    LEFT,
    RIGHT,
    TRANS,
    classify_window,
    component_sequence,
    is_davenport_schinzel,
    pocket_of,
    vertex_windows,
    visibility_polygon,
    visible_vertices,
)

try:
    #  pytest
    from . import test_1_geometry as geo
except ImportError:
    #  ipython
    import test_1_geometry as geo


def test_def_corpus():
    return [
        geo.test_def_dart(),
        geo.test_def_square_hole(),
        geo.test_def_convex(),
        generate("comb", [3]),
        generate("grid-holes", [12, 2]),
    ]


def test_def_lemma_corpus():
    return test_def_corpus() + [
        generate("grid-holes", [14, 2]),
        generate("grid-holes", [11, 1], seed=1),
        generate("spiral", [12]),
    ]


def random_segments(poly, count, rng):
    """Segments between random interior points that see each other"""
    out = []
    while len(out) < count:
        p, q = sample_polygon(poly, 2, rng)
        if p != q and sees(poly, p, q):
            out.append((p, q))
    return out


def test_convex_sees_everything():
    hexagon = geo.test_def_hexagon()
    for v in range(hexagon.n):
        vis = visibility_polygon(hexagon, v)
        assert vis.windows == []
        assert len(visible_vertices(hexagon, v)) == hexagon.n - 1
        assert set(vis.region) == set(hexagon.points)
        assert component_sequence(hexagon, v).sequence == (0,)


def test_lpolygon_windows():
    lpoly = geo.test_def_lpolygon()
    corner = Point(1, 1)

    assert vertex_windows(lpoly, 0) == []
    assert vertex_windows(lpoly, 3) == []

    ends = {}
    for v in [1, 2, 4, 5]:
        (w,) = vertex_windows(lpoly, v)
        assert w.base == corner
        assert w.base_vertex == 3
        assert w.kind != TRANS
        assert classify_window(lpoly, w) == w.kind
        ends[v] = w.end
    assert ends == {
        1: Point(0, 2),
        2: Point(0, 1),
        4: Point(1, 0),
        5: Point(2, 0),
    }
    # mirror images have mirrored kinds
    assert vertex_windows(lpoly, 1)[0].kind != vertex_windows(lpoly, 5)[0].kind
    assert vertex_windows(lpoly, 2)[0].kind != vertex_windows(lpoly, 4)[0].kind


def test_lpolygon_pocket():
    lpoly = geo.test_def_lpolygon()
    (w,) = vertex_windows(lpoly, 2)
    pocket = pocket_of(lpoly, w)
    assert pocket.side == w.kind
    assert set(pocket.chain) == {Point(1, 1), Point(1, 2), Point(0, 2), Point(0, 1)}
    half = Fraction(1, 2)
    assert pocket.contains(Point(half, Fraction(3, 2)))
    assert not pocket.contains(Point(half, half))
    # the owner sees nothing inside its pocket
    assert not sees(lpoly, lpoly[2], Point(half, Fraction(3, 2)))


def test_trans_windows():
    holed = geo.test_def_square_centered_hole()
    windows = vertex_windows(holed, 0)
    assert len(windows) == 2
    assert all(w.kind == TRANS for w in windows)
    assert {w.end for w in windows} == {
        Point(1, Fraction(1, 3)),
        Point(Fraction(1, 3), 1),
    }
    with pytest.raises(ValueError):
        pocket_of(holed, windows[0])
    assert component_sequence(holed, 0).sequence == (0, 1, 0)


def test_davenport_schinzel():
    assert is_davenport_schinzel([0, 1, 0, 2, 0])
    assert is_davenport_schinzel([0])
    assert not is_davenport_schinzel([0, 1, 0, 1])
    assert not is_davenport_schinzel([0, 0, 1])


def test_component_sequences():
    for poly in test_def_corpus():
        for v in range(poly.n):
            seq = component_sequence(poly, v)
            assert seq.is_valid(h=poly.h)
            if poly.h == 0:
                assert seq.sequence == (0,)
            trans = [w for w in vertex_windows(poly, v) if w.kind == TRANS]
            assert len(trans) <= 2 * poly.h


def test_windows_are_consistent():
    for poly in test_def_corpus():
        for v in range(poly.n):
            for w in vertex_windows(poly, v):
                assert w.kind in KINDS
                assert w.owner.index == v
                assert classify_window(poly, w) == w.kind
                assert poly.on_boundary(w.end) is not None
                assert sees(poly, poly[v], w.end)


def test_visibility_region():
    rng = np.random.default_rng(3)
    for poly in test_def_corpus():
        samples = sample_polygon(poly, 40, rng)
        for v in range(poly.n):
            vis = visibility_polygon(poly, v)
            assert vis.region[0] == poly[v]
            for pt in samples:
                assert vis.contains(pt) == sees(poly, poly[v], pt)


def test_pockets_are_blind():
    rng = np.random.default_rng(5)
    for poly in [geo.test_def_dart(), generate("comb", [3])]:
        samples = sample_polygon(poly, 60, rng)
        for v in range(poly.n):
            for w in vertex_windows(poly, v):
                if w.kind == TRANS:
                    continue
                pocket = pocket_of(poly, w)
                for pt in samples:
                    if ring_contains(pocket.ring, pt) == INTERIOR:
                        assert not sees(poly, poly[v], pt)


def test_sees_symmetric():
    for poly in test_def_lemma_corpus():
        for i in range(poly.n):
            for j in range(i + 1, poly.n):
                assert sees(poly, poly[i], poly[j]) == sees(poly, poly[j], poly[i])


def test_pocket_blind_to_half_plane():
    rng = np.random.default_rng(13)
    for poly in test_def_lemma_corpus():
        pool = sample_polygon(poly, 120, rng)
        for v in range(poly.n):
            for w in vertex_windows(poly, v):
                if w.kind == TRANS:
                    continue
                ring = pocket_of(poly, w).ring
                inside = [p for p in pool if ring_contains(ring, p) == INTERIOR]
                across = [
                    p
                    for p in pool
                    if w.in_half_plane(p) and ring_contains(ring, p) == EXTERIOR
                ]
                # at most 49 pairs per window
                for z in inside[:7]:
                    for y in across[:7]:
                        assert not sees(poly, z, y)


def test_segments_cross_few_windows():
    rng = np.random.default_rng(21)
    for poly in test_def_lemma_corpus():
        windows = [vertex_windows(poly, v) for v in range(poly.n)]
        for p, q in random_segments(poly, 200, rng):
            for wins in windows:
                counts = {kind: 0 for kind in KINDS}
                for w in wins:
                    if crosses(p, q, w.base, w.end):
                        counts[w.kind] += 1
                assert counts[LEFT] <= 1
                assert counts[RIGHT] <= 1
                assert counts[TRANS] <= 2 * poly.h
                assert sum(counts.values()) <= 2 * (poly.h + 1)


def test_right_pockets_blind_to_each_other():
    rng = np.random.default_rng(17)
    for poly in test_def_lemma_corpus():
        pool = sample_polygon(poly, 120, rng)
        for x in range(poly.n):
            rings = [
                pocket_of(poly, w).ring for w in vertex_windows(poly, x) if w.kind == RIGHT
            ]
            members = [
                [p for p in pool if ring_contains(ring, p) == INTERIOR][:5]
                for ring in rings
            ]
            for i in range(len(rings)):
                for j in range(i + 1, len(rings)):
                    for a in members[i]:
                        for b in members[j]:
                            assert not sees(poly, a, b)


def test_right_windows_cross_once():
    for poly in test_def_lemma_corpus():
        right = [
            [w for w in vertex_windows(poly, v) if w.kind == RIGHT] for v in range(poly.n)
        ]
        for x in range(poly.n):
            for y in range(x + 1, poly.n):
                hits = sum(
                    crosses(a.base, a.end, b.base, b.end)
                    for a in right[x]
                    for b in right[y]
                )
                assert hits <= 1


def test_trans_window_crosses_one_right_window():
    for poly in test_def_lemma_corpus():
        if poly.h == 0:
            continue
        windows = [vertex_windows(poly, v) for v in range(poly.n)]
        for j in range(poly.n):
            right = [w for w in windows[j] if w.kind == RIGHT]
            rings = [pocket_of(poly, w).ring for w in right]
            for i in range(poly.n):
                # only vertices strictly outside every right pocket of j
                if i == j or any(ring_contains(r, poly[i]) != EXTERIOR for r in rings):
                    continue
                for t in windows[i]:
                    if t.kind != TRANS:
                        continue
                    hits = sum(crosses(t.base, t.end, w.base, w.end) for w in right)
                    assert hits <= 1
