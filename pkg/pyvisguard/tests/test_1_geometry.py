from fractions import Fraction
import os
import tempfile
from os import remove

import numpy as np
import pytest

import pyvisguard
from pyvisguard import PolygonWithHoles, pvg
from pyvisguard.geometry import (
    BOUNDARY,
    EXTERIOR,
    INTERIOR,
    Point,
    Segment,
    as_point,
    as_rational,
    centroid,
    crosses,
    locate,
    on_segment,
    orient,
    segment,
    segment_in_polygon,
    segment_intersection,
    sees,
    signed_area,
    triangle_area,
    triangulate,
)

datadir = os.path.join(os.path.dirname(pyvisguard.__file__), "examples", "data")
holefile = os.path.join(datadir, "square_hole.txt")
dartfile = os.path.join(datadir, "dart.txt")
convexfile = os.path.join(datadir, "convex6.txt")


def test_def_square():
    return PolygonWithHoles([(0, 0), (1, 0), (1, 1), (0, 1)])


def test_def_square_centered_hole():
    q = Fraction(1, 4)
    hole = [(q, q), (q, 3 * q), (3 * q, 3 * q), (3 * q, q)]
    poly = PolygonWithHoles(
        [(0, 0), (1, 0), (1, 1), (0, 1)], [hole], general_position=False
    )
    assert poly.h == 1
    return poly


def test_def_lpolygon():
    poly = PolygonWithHoles(
        [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)], general_position=False
    )
    assert poly.reflex == [3]
    return poly


def test_def_hexagon():
    return PolygonWithHoles([(0, 0), (2, -1), (4, 0), (4, 2), (2, 3), (0, 2)])


def test_def_square_hole():
    return pvg.read_polygon(holefile)


def test_def_dart():
    return pvg.read_polygon(dartfile)


def test_def_convex():
    return pvg.read_polygon(convexfile)


def test_orient():
    o, x, y = as_point((0, 0)), as_point((1, 0)), as_point((0, 1))
    assert orient(o, x, y) == 1
    assert orient(o, x, as_point((2, 0))) == 0
    assert orient(o, x, as_point((0, -1))) == -1
    # exact where floats round
    a = Fraction(1, 3)
    assert orient(o, as_point((a, a)), as_point((2 * a, 2 * a))) == 0


def test_orient_antisymmetry():
    rng = np.random.default_rng(2)
    # small range, so collinear triples come up too
    for xy in rng.integers(-3, 4, size=(300, 6)):
        p, q, r = (as_point((Fraction(int(x), 3), int(y))) for x, y in xy.reshape(3, 2))
        assert orient(p, q, r) == -orient(q, p, r)
        assert orient(p, q, r) == orient(q, r, p)
        assert orient(p, q, r) == -orient(p, r, q)


def test_as_rational():
    assert as_rational("3/4") == Fraction(3, 4)
    assert as_rational("0.1") == Fraction(1, 10)
    assert as_rational(2) == Fraction(2)
    with pytest.raises(ValueError):
        as_rational("a/b")
    with pytest.raises(ValueError):
        as_rational(True)


def test_intersect():
    assert segment_intersection(((0, 0), (2, 2)), ((0, 2), (2, 0))) == Point(1, 1)
    assert segment_intersection(((0, 0), (1, 0)), ((0, 1), (1, 1))) is None
    overlap = segment_intersection(((0, 0), (2, 0)), ((1, 0), (3, 0)))
    assert isinstance(overlap, Segment)
    assert set(overlap) == {Point(1, 0), Point(2, 0)}
    # touching at an end point
    assert segment_intersection(((0, 0), (1, 0)), ((1, 0), (1, 1))) == Point(1, 0)
    assert crosses(*[as_point(p) for p in [(0, 0), (2, 2), (0, 2), (2, 0)]])
    assert not crosses(*[as_point(p) for p in [(0, 0), (1, 0), (1, 0), (1, 1)]])
    with pytest.raises(ValueError):
        segment((1, 1), (1, 1))


def test_locate():
    square = test_def_square()
    half = Fraction(1, 2)
    assert locate(square, (half, half)) == INTERIOR
    assert locate(square, (0, half)) == BOUNDARY
    assert locate(square, (2, half)) == EXTERIOR

    holed = test_def_square_centered_hole()
    assert locate(holed, (half, half)) == EXTERIOR
    assert locate(holed, (Fraction(1, 4), half)) == BOUNDARY
    assert locate(holed, (Fraction(1, 8), half)) == INTERIOR


def winding_number(ring, pt):
    wn = 0
    ring = list(ring)
    for a, b in zip(ring, ring[1:] + ring[:1]):
        if a.y <= pt.y:
            if b.y > pt.y and orient(a, b, pt) > 0:
                wn += 1
        elif b.y <= pt.y and orient(a, b, pt) < 0:
            wn -= 1
    return wn


def test_locate_winding():
    rng = np.random.default_rng(9)
    polys = [
        test_def_lpolygon(),
        test_def_square_centered_hole(),
        test_def_square_hole(),
        test_def_dart(),
    ]
    for poly in polys:
        xmin, ymin, xmax, ymax = poly.bounds()
        for ix, iy in rng.integers(-8, 72, size=(400, 2)):
            pt = Point(
                xmin + (xmax - xmin) * Fraction(int(ix), 64),
                ymin + (ymax - ymin) * Fraction(int(iy), 64),
            )
            if any(on_segment(pt, a, b) for a, b in poly.edge_points()):
                assert locate(poly, pt) == BOUNDARY
                continue
            inside = winding_number(poly.outer, pt) != 0
            inside = inside and all(winding_number(r, pt) == 0 for r in poly.holes)
            assert locate(poly, pt) == (INTERIOR if inside else EXTERIOR)


def test_sees():
    hexagon = test_def_hexagon()
    for p in hexagon:
        for q in hexagon:
            assert sees(hexagon, p, q)

    holed = test_def_square_centered_hole()
    assert not sees(holed, (0, 0), (1, 1))
    assert sees(holed, (0, 0), (1, 0))

    lpoly = test_def_lpolygon()
    # the segment runs through the notch
    assert not sees(lpoly, (2, 1), (1, 2))
    # grazes the reflex corner only
    assert sees(lpoly, (2, 0), (0, 2))
    for p in lpoly:
        for q in lpoly:
            assert segment_in_polygon(lpoly, p, q) == sees(lpoly, p, q)
    assert sees(lpoly, (0, 0), (1, 1))

    with pytest.raises(ValueError):
        sees(lpoly, (0, 0), (2, 2))


def test_orientation_and_ids():
    poly = PolygonWithHoles([(0, 1), (1, 1), (1, 0), (0, 0)])
    assert signed_area(poly.outer) > 0
    assert poly.area() == 1

    holed = test_def_square_hole()
    assert signed_area(holed.holes[0]) < 0
    assert holed.n == 8 and holed.h == 1
    assert holed.component_of(5) == 1
    assert holed.ring_of(5) == [4, 5, 6, 7]
    assert holed.next(7) == 4
    assert holed.prev(4) == 7
    # hole corners are reflex for the region
    assert holed.reflex == [4, 5, 6, 7]
    with pytest.raises(IndexError):
        holed.vertex(8)


def test_validation():
    with pytest.raises(ValueError, match="collinear"):
        PolygonWithHoles([(0, 0), (1, 0), (2, 0), (1, 1)])
    with pytest.raises(ValueError, match="intersect"):
        PolygonWithHoles([(0, 0), (4, 0), (1, 2), (3, 3)])
    with pytest.raises(ValueError, match="not inside"):
        PolygonWithHoles(
            [(0, 0), (10, 0), (10, 10), (0, 10)],
            [[(11, 3), (13, 4), (12, 7)]],
            general_position=False,
        )
    with pytest.raises(ValueError, match="at least 3"):
        PolygonWithHoles([(0, 0), (1, 0)])
    with pytest.raises(ValueError, match="coincide"):
        PolygonWithHoles([(0, 0), (4, 0), (4, 4), (0, 4)], [[(0, 0), (2, 1), (1, 2)]])


def test_triangulate():
    for poly in [test_def_lpolygon(), test_def_dart(), test_def_convex()]:
        tris = triangulate(poly.outer)
        assert sum(triangle_area(t) for t in tris) == poly.area()
    tri = [Point(0, 0), Point(1, 0), Point(0, 1)]
    assert centroid(tri) == Point(Fraction(1, 3), Fraction(1, 3))
    assert isinstance(centroid(tri).x, Fraction)
    assert triangle_area(tri) == Fraction(1, 2)
    assert centroid([(0, 0), (2, 0), (0, 2)]) == Point(Fraction(2, 3), Fraction(2, 3))


def test_write_read_polygon():
    poly1 = PolygonWithHoles(
        [(0, 0), (Fraction(7, 3), Fraction(1, 5)), (2, 2), (Fraction(1, 7), 3)]
    )
    tmpf = tempfile.NamedTemporaryFile(delete=False)
    poly1.write(tmpf.name, comment="rational test", hint=True)
    poly2 = pvg.read_polygon(tmpf.name)
    remove(tmpf.name)
    assert poly1 == poly2
    assert pvg.parse_polygon(str(poly1)) == poly1

    holed = test_def_square_hole()
    assert pvg.parse_polygon(str(holed)) == holed


def test_plot_polygon():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig = test_def_square_hole().plot(show=False, labels=True)
    assert plt.fignum_exists(fig.number)
    (ax,) = fig.axes
    # outer ring and one hole, closed
    assert len(ax.lines) == 2
    assert len(ax.texts) == 8
    plt.close(fig)
