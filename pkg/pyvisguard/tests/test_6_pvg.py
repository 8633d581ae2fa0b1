from fractions import Fraction
import tempfile
from os import remove

import pytest

from pyvisguard import Control, generate, pvg, run
from pyvisguard.families import families

try:
    #  pytest
    from . import test_1_geometry as geo
except ImportError:
    #  ipython
    import test_1_geometry as geo


def test_def_control():
    rc = Control(epsilon_start="1/4")

    assert rc.verbose == 0
    assert rc.seed == 0
    assert rc.samples == 10000
    assert rc.oracle_cap == 20
    assert rc.delta == Fraction(1, 2)
    assert rc.verify_cells is False

    assert rc.epsilon_start == Fraction(1, 4)
    assert rc.parameters[3] == Fraction(1, 4)

    rc.epsilon_start = 0.125
    assert rc.epsilon_start == Fraction(1, 8)

    rc.verbose = "1"
    assert rc.verbose == 1
    assert rc.parameters[0] == 1

    rc.seed = 2**64 - 1
    assert rc.parameters[1] == 2**64 - 1

    rc.samples = "500"
    assert rc.samples == 500
    assert rc.parameters[2] == 500

    rc.verify_cells = "1"
    assert rc.verify_cells is True
    assert rc.parameters[9] is True
    return rc


def test_control_errors():
    rc = Control()
    with pytest.raises(ValueError):
        rc.epsilon_start = Fraction(1, 3)
    with pytest.raises(ValueError):
        rc.epsilon_start = 0
    with pytest.raises(ValueError):
        rc.seed = -1
    with pytest.raises(ValueError):
        rc.seed = 2**64
    with pytest.raises(ValueError):
        rc.samples = "many"
    with pytest.raises(ValueError):
        rc.oracle_cap = 2.5
    with pytest.raises(ValueError):
        rc.verbose = 2
    with pytest.raises(ValueError):
        rc.iteration_constant = 0


def test_write_read_control():
    rc1 = test_def_control()
    tmpf = tempfile.NamedTemporaryFile(delete=False)
    rc1.write(tmpf.name)
    rc2 = pvg.read_control(tmpf.name)
    remove(tmpf.name)
    assert rc1 == rc2
    assert "First epsilon guess: 1/8" in str(rc2)


def test_parse_polygon():
    square = pvg.parse_polygon("4\n0 0\n1 0\n1 1\n0 1\n0\n")
    assert square.n == 4 and square.h == 0

    text = "4\n0 0\n10 0\n10 10\n0 10\n1\n4\n3 4\n6 3\n7 6\n4 7\n"
    holed = pvg.parse_polygon(text)
    assert holed.h == 1
    assert holed == geo.test_def_square_hole()

    commented = "# square\n4  # outer\n0 0\n1/2 0\n1 1\n0 0.5\n\n0\n"
    poly = pvg.parse_polygon(commented)
    assert poly[1].x == Fraction(1, 2)


def test_parse_polygon_errors():
    with pytest.raises(pvg.PolygonFileError) as err:
        pvg.parse_polygon("4\n0 0\n1 0\n1 x\n0 1\n0\n")
    assert err.value.lineno == 4
    assert str(err.value).startswith("line 4: ")

    with pytest.raises(pvg.PolygonFileError) as err:
        pvg.parse_polygon("2\n0 0\n1 0\n0\n")
    assert err.value.lineno == 1

    with pytest.raises(pvg.PolygonFileError) as err:
        pvg.parse_polygon("4\n0 0\n1 0\n1 1\n")
    assert err.value.lineno == 5

    with pytest.raises(pvg.PolygonFileError):
        pvg.parse_polygon("3\n0 0\n1 0\n0 1\n0\n5\n")

    with pytest.raises(pvg.PolygonFileError) as err:
        pvg.parse_polygon("4\n0 0\n1 0\n2 0\n1 1\n0\n")
    assert "collinear" in str(err.value)
    assert isinstance(err.value, ValueError)


def test_read_write_guards():
    tmpf = tempfile.NamedTemporaryFile(delete=False)
    pvg.write_guards(tmpf.name, [4, 0, 9])
    assert pvg.read_guards(tmpf.name) == [4, 0, 9]
    with open(tmpf.name, "w") as fil:
        fil.write("# guards\n3\n\n5 # tip\n")
    assert pvg.read_guards(tmpf.name) == [3, 5]
    with open(tmpf.name, "w") as fil:
        fil.write("3\nseven\n")
    with pytest.raises(pvg.PolygonFileError):
        pvg.read_guards(tmpf.name)
    remove(tmpf.name)


def test_generate():
    comb = generate("comb", [3])
    assert comb.n == 12 and comb.h == 0
    assert comb == generate("comb", [3])
    assert str(comb) == str(generate("comb", [3], seed=0))

    grid = generate("grid-holes", [16, 2])
    assert grid.n == 16 and grid.h == 2

    spiral = generate("spiral", [12], seed=4)
    assert spiral.n == 12 and spiral.h == 0

    assert generate("convex", [7]).reflex == []

    with pytest.raises(ValueError):
        generate("star", [5])
    with pytest.raises(ValueError):
        generate("comb", [families["comb"][1] + 1])
    with pytest.raises(ValueError):
        generate("spiral", [11])
    with pytest.raises(ValueError):
        generate("grid-holes", [8, 2])


def test_run_convex():
    result = run(geo.test_def_convex(), matrix=True)
    assert len(result.guards) == 1
    stats = result.stats
    assert stats.cells == 1
    assert stats.sinks == 1
    assert sum(stats.windows.values()) == 0
    assert stats.visibility_edges == 15
    assert stats.cell_ratio == 1 / 216
    assert stats.sink_ratio == 1 / 36
    assert "1 guard(s)" in str(result)


def test_run_methods():
    comb = generate("comb", [3])
    rc = Control(seed=2)
    exact = run(comb, rc, method="exact")
    assert len(exact.guards) == 3
    for method in ["greedy", "bg", "kk"]:
        result = run(comb, rc, method=method)
        assert result.guards.method == method
        assert len(result.guards) >= 3
    with pytest.raises(ValueError):
        run(comb, rc, method="random")
    with pytest.raises(ValueError):
        run(geo.test_def_square_hole(), rc, method="kk")


def test_stats_report():
    result = run(geo.test_def_square_hole(), Control(verify_cells=1))
    stats = result.stats
    assert stats.n == 8 and stats.h == 1
    assert stats.cells >= stats.sinks >= 1

    table = str(stats)
    header, values = stats.to_csv().splitlines()
    names = header.split(",")
    assert names[:3] == ["n", "h", "windows"]
    assert "guards_greedy" in names
    # table and CSV carry the same values
    for name, value in zip(names, values.split(",")):
        line = [ln for ln in table.splitlines() if ln.split()[0] == name][0]
        assert line.split()[1] == value

    tmpf = tempfile.NamedTemporaryFile(delete=False)
    stats.write(tmpf.name)
    with open(tmpf.name) as fil:
        assert fil.read() == stats.to_csv()
    remove(tmpf.name)
