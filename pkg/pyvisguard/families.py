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
Generated polygon families for tests and growth experiments.

Every family is in general position: vertices are placed on strictly
concave arcs or moved by a small seeded rational jitter, and a draw that
still fails validation is repeated with the next jitter.
"""

import math
from fractions import Fraction

import numpy as np

from pyvisguard.geometry import PolygonWithHoles

families = {
    "comb": (1, 50),
    "spiral": (6, 400),
    "grid-holes": (4, 400),
    "convex": (3, 400),
}
max_holes = 16
_attempts = 32


def _jitter(points, rng, scale):
    steps = rng.integers(-100, 101, size=(len(points), 2))
    return [
        (x + scale * int(dx), y + scale * int(dy))
        for (x, y), (dx, dy) in zip(points, steps)
    ]


def _comb(k, rng):
    W = 2 * k - 1
    delta = Fraction(1, 4)

    def arc(base, x):
        return base + delta * x * (W - x) / Fraction(W * W)

    pts = [(Fraction(0), Fraction(0)), (Fraction(W), Fraction(0))]
    for j in range(k - 1, -1, -1):
        pts.append((Fraction(2 * j + 1), arc(3, 2 * j + 1)))
        pts.append((Fraction(2 * j), arc(3, 2 * j)))
        if j > 0:
            pts.append((Fraction(2 * j), arc(1, 2 * j)))
            pts.append((Fraction(2 * j - 1), arc(1, 2 * j - 1)))
    # keeps the notch arc strictly concave
    return _jitter(pts, rng, Fraction(1, 1000 * W * W)), []


def _rational(value):
    return Fraction(value).limit_denominator(10**4)


def _spiral(n, rng):
    if n % 2:
        msg = "spiral needs an even vertex count, not: {:}".format(n)
        raise ValueError(msg)
    m = n // 2
    step = 0.5
    outer, inner = [], []
    for i in range(m):
        theta = 1.0 + i * step
        for chain, r in ((outer, 1.0 + theta), (inner, 0.5 + theta)):
            chain.append((_rational(r * math.cos(theta)), _rational(r * math.sin(theta))))
    pts = outer + inner[::-1]
    return _jitter(pts, rng, Fraction(1, 10**6)), []


def _grid_holes(n, h, rng):
    extra = n - 4 * h - 4
    if extra < 0:
        msg = "grid-holes needs n >= 4h + 4, not n={:}, h={:}".format(n, h)
        raise ValueError(msg)
    g = max(1, math.ceil(math.sqrt(h)))
    L = Fraction(3 * g + 1)
    bottom = [
        (L * Fraction(q, extra + 1), Fraction(1, 4) if q % 2 else Fraction(0))
        for q in range(1, extra + 1)
    ]
    outer = [(Fraction(0), Fraction(0))] + bottom + [(L, Fraction(0)), (L, L), (Fraction(0), L)]
    holes = []
    for ih in range(h):
        a, b = ih % g, ih // g
        x0, y0 = Fraction(1 + 3 * a), Fraction(1 + 3 * b)
        square = [(x0, y0), (x0, y0 + 1), (x0 + 1, y0 + 1), (x0 + 1, y0)]
        holes.append(_jitter(square, rng, Fraction(1, 10**4)))
    return _jitter(outer, rng, Fraction(1, 10**4)), holes


def _convex(n, rng):
    d = n - 1
    return [(Fraction(i, d), Fraction(i * i, d * d)) for i in range(n)], []


def generate(family, params, seed=0):
    """
    Generate a polygon of a named family

    Families:

        * ``comb k``: ``4k`` vertices, ``k`` teeth, minimum guard set ``k``
        * ``spiral n``: spiral strip with ``n`` (even) vertices
        * ``grid-holes n h``: square with ``h`` square holes on a grid and
          ``n`` vertices in total; the bottom edge is serrated when
          ``n > 4h + 4``
        * ``convex n``: convex polygon with vertices on a parabola

    Parameters:
        family (str): Family name
        params (list of int): Family parameters
        seed (int): Seed of the jitter

    Returns:
        :class:`~pyvisguard.geometry.PolygonWithHoles`

    Raises:
        ValueError: For unknown families or parameters outside the caps

    Example
    -------
        >>> from pyvisguard.families import generate
        >>> comb = generate("comb", [3])
        >>> comb.n, comb.h
        (12, 0)
    """
    if family not in families:
        msg = "Unknown family: '{:}'. Must be one of: ".format(family)
        msg += ", ".join(families)
        raise ValueError(msg)
    params = [int(p) for p in params]
    nparams = 2 if family == "grid-holes" else 1
    if len(params) != nparams:
        msg = "{:} takes {:} parameter(s), not {:}".format(family, nparams, len(params))
        raise ValueError(msg)
    lo, hi = families[family]
    if not lo <= params[0] <= hi:
        msg = "{:} size must be in [{:}, {:}], not: {:}".format(family, lo, hi, params[0])
        raise ValueError(msg)
    if family == "grid-holes" and not 0 <= params[1] <= max_holes:
        msg = "Number of holes must be in [0, {:}], not: {:}".format(max_holes, params[1])
        raise ValueError(msg)

    for attempt in range(_attempts):
        rng = np.random.default_rng([int(seed), attempt])
        if family == "comb":
            outer, holes = _comb(params[0], rng)
        elif family == "spiral":
            outer, holes = _spiral(params[0], rng)
        elif family == "grid-holes":
            outer, holes = _grid_holes(params[0], params[1], rng)
        else:
            outer, holes = _convex(params[0], rng)
        try:
            return PolygonWithHoles(outer, holes)
        except ValueError:
            continue
    msg = "No valid {:} polygon for parameters {:} after {:} draws".format(
        family, params, _attempts
    )
    raise RuntimeError(msg)
