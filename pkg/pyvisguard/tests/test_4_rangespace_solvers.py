from fractions import Fraction
import math
import tempfile
from itertools import combinations
from os import remove

import pytest

from pyvisguard import generate
from pyvisguard.arrangement import decompose
from pyvisguard.epsnet import bg_solve, net_size
from pyvisguard.rangespace import (
    RangeSpace,
    build_range_space,
    coverage_audit,
    covers,
)
from pyvisguard.solvers import (
    GuardSet,
    exact_guards,
    greedy_guards,
    verify_guard_set,
)

try:
    #  pytest
    from . import test_1_geometry as geo
    from . import test_2_visibility as vis
except ImportError:
    #  ipython
    import test_1_geometry as geo
    import test_2_visibility as vis


def test_def_comb():
    comb = generate("comb", [3])
    D = decompose(comb)
    rs = build_range_space(D)
    return comb, D, rs


def test_def_oracle_corpus():
    polys = [geo.test_def_dart(), geo.test_def_square_hole(), geo.test_def_convex()]
    for seed in range(2):
        polys += [generate("comb", [k], seed=seed) for k in (1, 2, 3)]
        polys += [
            generate("grid-holes", [n, h], seed=seed)
            for n, h in ((6, 0), (9, 0), (8, 1), (10, 1), (13, 1), (12, 2), (14, 2))
        ]
    polys += [generate("spiral", [n]) for n in (6, 8, 10, 12, 14)]
    polys += [generate("convex", [n]) for n in (4, 7, 10, 13)]
    return polys


def test_range_space():
    rs = RangeSpace(3, [0b011, 0b110, 0b100])
    assert len(rs) == 3
    assert rs[0] == (0, 1)
    assert rs.elements == [0, 1, 2]
    assert rs.matrix.shape == (3, 3)
    with pytest.raises(ValueError):
        RangeSpace(3, [0b011, 0])
    with pytest.raises(ValueError):
        RangeSpace(2, [0b111])
    merged = RangeSpace(3, [0b011, 0b011, 0b100]).dedup()
    assert len(merged) == 2
    assert merged.origin == [[0, 1], [2]]


def test_incidence():
    rs = RangeSpace(3, [0b011, 0b110, 0b100])
    inc = rs.incidence()
    assert inc.first_unhit() == 0
    assert inc.mark([1]) == 2
    assert inc.first_unhit() == 2
    inc.reset()
    assert inc.first_unhit() == 0


def test_range_space_from_polygon():
    convex = geo.test_def_convex()
    rs = build_range_space(convex)
    assert len(rs) == 1
    assert rs[0] == tuple(range(convex.n))

    rs = build_range_space(geo.test_def_lpolygon())
    assert sorted(rs[r] for r in range(len(rs))) == [(0, 1, 2, 3), (0, 3, 4, 5)]

    comb, D, rs = test_def_comb()
    assert len(rs) >= 3
    assert rs.n == comb.n
    for r in range(len(rs)):
        for s in rs.origin[r]:
            assert D.cells[s].visible_ids() == list(rs[r])


def test_covers():
    rs = RangeSpace(3, [0b011, 0b110, 0b100])
    assert covers(rs, [1, 2])
    assert not covers(rs, [1])
    assert not covers(rs, [])
    assert covers(rs, rs.elements)
    with pytest.raises(ValueError):
        covers(rs, [3])

    convex = geo.test_def_convex()
    rs = build_range_space(convex)
    for v in range(convex.n):
        assert covers(rs, [v])

    comb, D, rs = test_def_comb()
    for pair in combinations(range(comb.n), 2):
        assert not covers(rs, pair)


def test_greedy():
    assert list(greedy_guards(RangeSpace(4, [0b1111]))) == [0]
    assert list(greedy_guards(RangeSpace(3, [0b011, 0b110, 0b100]))) == [1, 2]

    comb, D, rs = test_def_comb()
    G = greedy_guards(rs)
    assert len(G) >= 3
    assert covers(rs, G)
    assert coverage_audit(comb, G, m=300, seed=0, decomposition=D) == []


def test_exact():
    rs = RangeSpace(4, [0b0011, 0b1100, 0b0110])
    G = exact_guards(rs)
    # lexicographically first minimum
    assert list(G) == [0, 2]
    assert G.method == "exact"

    assert len(exact_guards(build_range_space(geo.test_def_convex()))) == 1
    assert list(exact_guards(build_range_space(geo.test_def_lpolygon()))) == [0]

    comb, D, rs = test_def_comb()
    assert len(exact_guards(rs)) == 3
    with pytest.raises(ValueError):
        exact_guards(rs, cap=11)


def test_greedy_within_log_factor():
    for poly in vis.test_def_corpus():
        rs = build_range_space(poly)
        G = greedy_guards(rs)
        opt = len(exact_guards(rs))
        assert covers(rs, G)
        assert opt <= len(G) <= (math.log(len(rs)) + 1) * opt


def test_coverage_audit():
    convex = geo.test_def_convex()
    assert coverage_audit(convex, [0], m=500, seed=1) == []
    assert len(coverage_audit(convex, [], m=10, seed=1)) == 10

    comb, D, rs = test_def_comb()
    G = list(exact_guards(rs))
    assert coverage_audit(comb, G, m=300, seed=2) == []
    assert coverage_audit(comb, G[:-1], m=1000, seed=2, decomposition=D) != []

    # without cells given, the audit decomposes on its own
    assert coverage_audit(comb, [], m=20, seed=4) == coverage_audit(
        comb, [], m=20, seed=4, decomposition=decompose(comb)
    )


def test_verify_guard_set():
    convex = geo.test_def_convex()
    report = verify_guard_set(convex, [0], samples=200)
    assert report.ok
    assert report.opt == 1
    assert report.ratio == 1.0

    report = verify_guard_set(convex, [], samples=0)
    assert not report.covering
    assert not report.ok
    assert "Covering: False" in str(report)


def test_write_guard_set():
    G = GuardSet([3, 1, 3, 7], "greedy", {"runtime": 0.0})
    assert list(G) == [3, 1, 7]
    assert 7 in G
    tmpf = tempfile.NamedTemporaryFile(delete=False)
    G.write(tmpf.name)
    with open(tmpf.name) as fil:
        lines = fil.read().splitlines()
    remove(tmpf.name)
    assert lines[0].startswith("#")
    assert lines[1:] == ["3", "1", "7"]


def test_oracle_parity():
    polys = test_def_oracle_corpus()
    assert len(polys) >= 30
    for poly in polys:
        assert poly.n <= 14 and poly.h <= 2
        D = decompose(poly)
        rs = build_range_space(D)
        opt = len(exact_guards(rs))
        greedy = greedy_guards(rs)
        bg = bg_solve(rs, seed=0)
        assert len(greedy) <= (math.log(len(rs)) + 1) * opt

        assert bg.stats["runs"][-1] >= Fraction(1, 2 * opt)
        assert len(bg) <= net_size(poly.h, Fraction(1, 2 * opt))
        assert bg.stats["max_total"] <= rs.n**4
        assert list(bg_solve(rs, seed=0)) == list(bg)

        for G in (greedy, bg):
            assert covers(rs, G)
            # 200 samples per seed instead of 10**4 keep the sweep short
            for seed in range(5):
                assert coverage_audit(poly, G, m=200, seed=seed, decomposition=D) == []
