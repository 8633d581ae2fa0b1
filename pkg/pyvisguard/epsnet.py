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
Epsilon-net based hitting sets.

:func:`bg_solve` runs iterative reweighting: draw an epsilon-net under the
current weights, look for a range it misses, double the weights of that
range's elements and try again. Nets come from a pluggable finder:
:class:`RandomNetFinder` draws a weighted random sample whose size follows
from the VC-dimension of the range space, :class:`KKNetFinder` builds nets
over a hierarchical fragmentation of the boundary of a simple polygon.

All logarithms are base 2. Epsilon is always a power of 1/2.
"""

import math
import time
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import accumulate

import numpy as np

from pyvisguard.geometry import as_rational, segment_in_polygon
from pyvisguard.rangespace import build_range_space
from pyvisguard.solvers import GuardSet


def is_power_of_half(epsilon):
    """True if `epsilon` equals 1/2**k for some k >= 0"""
    eps = as_rational(epsilon)
    return eps.numerator == 1 and eps.denominator & (eps.denominator - 1) == 0


def check_unit(name, value):
    """Return `value` as a Fraction, raising ValueError unless in (0, 1]"""
    value = as_rational(value)
    if not 0 < value <= 1:
        msg = "{:} must be in (0, 1], not: {:}".format(name, value)
        raise ValueError(msg)
    return value


def check_epsilon(epsilon):
    """Return `epsilon` as a Fraction, raising ValueError unless a power of 1/2"""
    eps = check_unit("epsilon", epsilon)
    if not is_power_of_half(eps):
        msg = "epsilon must be a power of 1/2, not: {:}".format(eps)
        raise ValueError(msg)
    return eps


def vc_dim(h, slack=4):
    """
    Upper bound on the VC-dimension of vertex visibility with `h` holes

    23 for simple polygons and one hole; for more holes
    ``max(23, ceil(2 log h + 4 log max(1, log h)) + slack)``.

    Example
    -------
        >>> from pyvisguard.epsnet import vc_dim
        >>> vc_dim(0), vc_dim(2), vc_dim(256)
        (23, 23, 32)
    """
    h = int(h)
    if h < 0:
        msg = "Number of holes must be >= 0, not: {:}".format(h)
        raise ValueError(msg)
    if h <= 1:
        return 23
    logh = math.log2(h)
    return max(23, math.ceil(2 * logh + 4 * math.log2(max(1.0, logh))) + int(slack))


def sample_size(epsilon, delta, d):
    """
    Size of a random sample that is an epsilon-net with probability 1-delta

    ``ceil(max(4/eps log(2/delta), 8d/eps log(13/eps)))``

    Raises:
        ValueError: If `epsilon` or `delta` is outside (0, 1]

    Example
    -------
        >>> from pyvisguard.epsnet import sample_size
        >>> sample_size(1, 1, 23), sample_size(0.5, 0.5, 23)
        (681, 1730)
    """
    eps = float(check_unit("epsilon", epsilon))
    delta = float(check_unit("delta", delta))
    return math.ceil(
        max(4 / eps * math.log2(2 / delta), 8 * int(d) / eps * math.log2(13 / eps))
    )


def net_size(h, epsilon, delta=Fraction(1, 2), slack=4):
    """Size of the random epsilon-net drawn for a polygon with `h` holes"""
    return sample_size(epsilon, delta, vc_dim(h, slack=slack))


@dataclass(frozen=True)
class NetFinderConfig:
    """
    Parameters of a random net draw.

    Raises:
        ValueError: If epsilon is not a power of 1/2 or delta is outside (0, 1]
    """

    epsilon: Fraction
    delta: Fraction = Fraction(1, 2)
    vc_dim: int = 23
    seed: int = 0
    log_base: int = field(default=2, init=False)

    def __post_init__(self):
        object.__setattr__(self, "epsilon", check_epsilon(self.epsilon))
        object.__setattr__(self, "delta", check_unit("delta", self.delta))

    @property
    def sample_size(self):
        return sample_size(self.epsilon, self.delta, self.vc_dim)


class WeightMap(object):
    """
    Power-of-2 weights over the elements ``0 .. n-1``.

    Weights are stored as exponents; elements are bucketed by exponent so a
    weighted draw picks a bucket by its mass and then an element uniformly.

    Attributes:
        exponents (numpy.ndarray): Weight exponent of every element
        buckets (dict): Exponent to sorted list of elements
        total (int): Total weight
        doublings (int): Number of element doublings so far

    Example
    -------
        >>> from pyvisguard.epsnet import WeightMap
        >>> wm = WeightMap(4)
        >>> wm.double([1, 2])
        >>> wm.total, wm.weight(1)
        (6, 2)
    """

    def __init__(self, n):
        self.n = int(n)
        self.exponents = np.zeros(self.n, dtype=np.int64)
        self.buckets = {0: list(range(self.n))}
        self.total = self.n
        self.doublings = 0

    def weight(self, j):
        return 1 << int(self.exponents[j])

    def weights(self):
        return [1 << int(e) for e in self.exponents]

    def mass(self, elements):
        return sum(1 << int(self.exponents[j]) for j in elements)

    def double(self, elements):
        """Double the weight of every element in `elements` once"""
        for j in sorted(set(int(j) for j in elements)):
            e = int(self.exponents[j])
            self.buckets[e].remove(j)
            if not self.buckets[e]:
                del self.buckets[e]
            self.buckets.setdefault(e + 1, []).append(j)
            self.buckets[e + 1].sort()
            self.exponents[j] = e + 1
            self.total += 1 << e
            self.doublings += 1

    def __len__(self):
        return self.n


def sample_net(weights, m, rng):
    """
    Draw `m` elements independently with probability proportional to weight

    Returns:
        (list of int): Distinct drawn elements, sorted
    """
    if weights.total <= 0:
        msg = "Cannot sample from zero total weight"
        raise ValueError(msg)
    exps = sorted(weights.buckets)
    masses = np.array(
        [len(weights.buckets[e]) * float(2**e) for e in exps], dtype=float
    )
    probs = masses / masses.sum()
    picks = rng.choice(len(exps), size=int(m), p=probs)
    drawn = set()
    for k, count in enumerate(np.bincount(picks, minlength=len(exps))):
        if count == 0:
            continue
        bucket = weights.buckets[exps[k]]
        for idx in rng.integers(0, len(bucket), size=count):
            drawn.add(bucket[idx])
    return sorted(drawn)


def verify(rs, net, incidence=None):
    """
    Find a range missed by `net`

    Hit flags are reset, the ranges incident to `net` are marked, and the
    ranges are scanned in index order.

    Returns:
        (int or None): Lowest unhit range, ``None`` if all are hit
    """
    if incidence is None:
        incidence = rs.incidence()
    incidence.reset()
    incidence.mark(net)
    return incidence.first_unhit()


def is_eps_net(rs, net, weights, epsilon):
    """True if `net` hits every range of weight >= epsilon * total weight"""
    eps = as_rational(epsilon)
    net = set(int(j) for j in net)
    for r in range(len(rs)):
        elements = rs[r]
        if net.intersection(elements):
            continue
        if weights.mass(elements) >= eps * weights.total:
            return False
    return True


class RandomNetFinder(object):
    """
    Weighted random sample of size :func:`sample_size`.

    Parameters:
        vc_dim (int): VC-dimension bound of the range space
        delta (Fraction): Failure probability of one draw
    """

    def __init__(self, vc_dim=23, delta=Fraction(1, 2)):
        self.vc_dim = int(vc_dim)
        self.delta = check_unit("delta", delta)

    def __call__(self, weights, epsilon, rng):
        return sample_net(weights, sample_size(epsilon, self.delta, self.vc_dim), rng)


def max_iterations(n, epsilon, constant=4):
    """Iteration cap ``ceil(constant * (1/eps) * log |X|)`` of one run"""
    eps = as_rational(epsilon)
    return math.ceil(constant * float(1 / eps) * math.log2(max(int(n), 2)))


def bg_run(rs, epsilon, finder, max_iters=None, rng=None, iteration_constant=4):
    """
    One reweighting run for a fixed epsilon guess

    Parameters:
        rs (RangeSpace): Range space
        epsilon (Fraction): Power of 1/2
        finder (callable): ``finder(weights, epsilon, rng)`` returns a net
        max_iters (int, optional): Defaults to :func:`max_iterations`
        rng (numpy.random.Generator, optional): Random generator

    Returns:
        :class:`~pyvisguard.solvers.GuardSet` when a net hits every range,
        ``None`` when the iteration cap is reached or the total weight would
        exceed ``n**4``
    """
    eps = check_epsilon(epsilon)
    if rng is None:
        rng = np.random.default_rng(0)
    if max_iters is None:
        max_iters = max_iterations(rs.n, eps, iteration_constant)

    tic = time.perf_counter()
    weights = WeightMap(rs.n)
    incidence = rs.incidence()
    cap = rs.n**4
    stats = {"epsilon": eps, "iterations": 0, "verifier_work": 0, "max_total": weights.total}

    for it in range(1, max_iters + 1):
        stats["iterations"] = it
        net = finder(weights, eps, rng)
        stats["verifier_work"] += len(net) * len(rs)
        r = verify(rs, net, incidence)
        if r is None:
            stats["doublings"] = weights.doublings
            stats["total_weight"] = weights.total
            stats["runtime"] = time.perf_counter() - tic
            return GuardSet(net, "bg", stats)
        elements = rs[r]
        if weights.total + weights.mass(elements) > cap:
            return None
        weights.double(elements)
        stats["max_total"] = max(stats["max_total"], weights.total)
    return None


def bg_solve(
    rs,
    finder=None,
    epsilon_start=Fraction(1, 2),
    delta=Fraction(1, 2),
    iteration_constant=4,
    slack=4,
    seed=0,
    verbose=False,
):
    """
    Hitting set by reweighting with halving epsilon guesses

    Starts at `epsilon_start` and halves the guess after every failed run.

    Parameters:
        rs (RangeSpace): Range space
        finder (callable, optional): Net finder, defaults to
            :class:`RandomNetFinder` with :func:`vc_dim` of ``rs.h``
        epsilon_start (Fraction): First guess, a power of 1/2
        seed (int): Seed of the random generator

    Returns:
        :class:`~pyvisguard.solvers.GuardSet` with ``stats["runs"]`` holding
        the tried guesses

    Raises:
        RuntimeError: If epsilon drops below 1/(2n) without success
    """
    eps = check_epsilon(epsilon_start)
    if finder is None:
        finder = RandomNetFinder(vc_dim(rs.h, slack=slack), delta)
    rng = np.random.default_rng(seed)
    floor = Fraction(1, 2 * max(rs.n, 1))
    runs = []
    tic = time.perf_counter()
    while eps >= floor:
        G = bg_run(rs, eps, finder, rng=rng, iteration_constant=iteration_constant)
        runs.append(eps)
        if verbose:
            print(
                "B&G epsilon={:}: {:}".format(
                    eps, "failed" if G is None else "{:} guards".format(len(G))
                )
            )
        if G is not None:
            G.stats["runs"] = runs
            G.stats["runtime"] = time.perf_counter() - tic
            return G
        eps /= 2
    msg = "Reweighting failed for every epsilon down to {:}".format(eps * 2)
    raise RuntimeError(msg)


def kk_params(epsilon):
    """
    Fragmentation schedule ``(t, [b_1..b_t], [f_0..f_t])`` for epsilon

    Raises:
        ValueError: If epsilon is not a power of 1/2 or larger than 1/4

    Example
    -------
        >>> from pyvisguard.epsnet import kk_params
        >>> kk_params(1 / 16)
        (2, [32, 4], [1, 32, 128])
    """
    eps = check_epsilon(epsilon)
    if eps > Fraction(1, 4):
        msg = "Fragmentation needs epsilon <= 1/4, not: {:}".format(eps)
        raise ValueError(msg)
    k = eps.denominator.bit_length() - 1
    t = max(1, (k - 1).bit_length())

    b = [Fraction(2 ** (2 ** (t - 1) + 1) * 4 * t, 2 ** (t - 1))]
    b += [Fraction(2 ** (2 ** (t - i) + 1)) for i in range(2, t + 1)]
    f = [Fraction(1)]
    for i in range(1, t + 1):
        f.append(4 * t * Fraction(2) ** (2**t - 2 ** (t - i) - t + i + 1))

    for i in range(1, t + 1):
        if f[i] != f[i - 1] * b[i - 1]:
            msg = "Schedule inconsistent at level {:}".format(i)
            raise RuntimeError(msg)
    return t, [int(x) for x in b], [int(x) for x in f]


@dataclass(frozen=True)
class Fragment:
    """
    Node of a :class:`FragmentTree`

    Attributes:
        level (int): Depth, the root is level 0
        vertices (tuple of int): Vertex ids in cyclic order
        weight (int): Total weight of the vertices
        dummy (bool): Complement node added to every parent
        parent (int or None): Index of the parent on the level above
    """

    level: int
    vertices: tuple
    weight: int
    dummy: bool = False
    parent: object = None


def _split(vertices, weights, parts):
    # contiguous pieces of near-equal weight, none empty
    cum = list(accumulate(weights[v] for v in vertices))
    total = cum[-1] if cum else 0
    cuts = []
    prev = 0
    for j in range(1, parts):
        idx = bisect_left(cum, Fraction(j * total, parts)) + 1
        idx = min(max(idx, prev + 1), len(vertices) - (parts - j))
        cuts.append(idx)
        prev = idx
    bounds = [0] + cuts + [len(vertices)]
    return [tuple(vertices[a:c]) for a, c in zip(bounds[:-1], bounds[1:])]


class FragmentTree(object):
    """
    Hierarchical partition of the vertices in cyclic boundary order.

    Level ``i`` splits every normal node of level ``i-1`` into ``b_i``
    contiguous fragments of near-equal weight (fewer if the node has fewer
    vertices) and adds one dummy child holding all other vertices.

    Attributes:
        t (int): Depth
        b (list of int): Branching factor per level
        f (list of int): Fragment count per level
        levels (list of list of Fragment): Nodes per level
        oracle_calls (list of int): Visibility queries per level, filled by
            :func:`kk_net`
    """

    def __init__(self, n, t, b, f, levels):
        self.n = n
        self.t = t
        self.b = b
        self.f = f
        self.levels = levels
        self.oracle_calls = [0] * (t + 1)

    @classmethod
    def build(cls, n, epsilon, weights=None):
        t, b, f = kk_params(epsilon)
        w = weights.weights() if weights is not None else [1] * n
        root = Fragment(0, tuple(range(n)), sum(w))
        levels = [[root]]
        for i in range(1, t + 1):
            nodes = []
            for p, node in enumerate(levels[i - 1]):
                if node.dummy:
                    continue
                parts = min(b[i - 1], len(node.vertices))
                for piece in _split(node.vertices, w, parts):
                    nodes.append(Fragment(i, piece, sum(w[v] for v in piece), False, p))
                inside = set(node.vertices)
                rest = tuple(v for v in range(n) if v not in inside)
                nodes.append(Fragment(i, rest, sum(w[v] for v in rest), True, p))
            levels.append(nodes)
        return cls(n, t, b, f, levels)

    def normal(self, level):
        return [node for node in self.levels[level] if not node.dummy]

    def children(self, level, parent):
        """Nodes on `level` whose parent is node `parent` of the level above"""
        return [node for node in self.levels[level] if node.parent == parent]

    def level_costs(self, n=None):
        """
        Visibility queries predicted per level,
        ``f_{i-1} (b_i^2 (n/f_i)^2 + b_i n^2 / f_i)``
        """
        n = self.n if n is None else n
        return [
            self.f[i - 1]
            * (self.b[i - 1] ** 2 * (n / self.f[i]) ** 2 + self.b[i - 1] * n * n / self.f[i])
            for i in range(1, self.t + 1)
        ]

    def __len__(self):
        return self.t


class VisibilityMatrix(object):
    """
    Vertex-to-vertex visibility, a constant time oracle.

    Attributes:
        matrix (numpy.ndarray): ``(n, n)`` boolean, symmetric, diagonal set
    """

    def __init__(self, matrix):
        self.matrix = np.asarray(matrix, dtype=bool)

    @property
    def n(self):
        return self.matrix.shape[0]

    def __getitem__(self, ij):
        return self.matrix[ij]

    def is_symmetric(self):
        return bool((self.matrix == self.matrix.T).all())

    def edge_count(self):
        """Number of edges of the vertex visibility graph"""
        return int((self.matrix.sum() - self.n) // 2)


def visibility_matrix(poly):
    """:class:`VisibilityMatrix` of all vertex pairs of `poly`"""
    n = poly.n
    M = np.eye(n, dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            M[i, j] = M[j, i] = segment_in_polygon(poly, poly.points[i], poly.points[j])
    return VisibilityMatrix(M)


def sample_pair_rule(U1, U2, weights, epsilon, matrix, rng):
    """
    Guard a pair of fragments by a weighted random sample

    Candidates are the vertices of either fragment that see a vertex of the
    other. They are sampled ``sample_size(eps', 1/2, 23)`` times with
    ``eps' = min(1, eps * W / W_pair)``, where ``W_pair`` is the candidates'
    weight.

    Returns:
        (tuple): Chosen vertex set and number of oracle queries
    """
    U1, U2 = list(U1), list(U2)
    calls = len(U1) * len(U2)
    sub = matrix[np.ix_(U1, U2)]
    candidates = [u for u, ok in zip(U1, sub.any(axis=1)) if ok]
    candidates += [u for u, ok in zip(U2, sub.any(axis=0)) if ok and u not in candidates]
    if not candidates:
        return set(), calls
    pair_weight = weights.mass(candidates)
    eps_pair = min(Fraction(1), as_rational(epsilon) * weights.total / pair_weight)
    m = sample_size(eps_pair, Fraction(1, 2), 23)
    p = np.array([float(weights.weight(u)) for u in candidates])
    picks = rng.choice(len(candidates), size=m, p=p / p.sum())
    return {candidates[k] for k in set(picks.tolist())}, calls


def kk_net(
    poly,
    epsilon,
    weights,
    rng,
    rs=None,
    matrix=None,
    pair_rule=None,
    max_retries=32,
    stats=None,
):
    """
    Epsilon-net of a simple polygon over a fragmentation of its boundary

    Every pair of sibling fragments (including the dummy sibling) is guarded
    by `pair_rule`; every leaf fragment is also paired with itself. The
    union is checked to be an epsilon-net for the current weights and
    redrawn on failure.

    Parameters:
        poly (PolygonWithHoles): Simple polygon (``h == 0``)
        epsilon (Fraction): Power of 1/2, at most 1/4
        weights (WeightMap): Current weights
        rng (numpy.random.Generator): Random generator
        rs (RangeSpace, optional): Range space of `poly`
        matrix (VisibilityMatrix, optional): Built if missing
        pair_rule (callable, optional): Defaults to :func:`sample_pair_rule`
        max_retries (int): Redraws before giving up
        stats (dict, optional): Receives ``tree``, ``oracle_calls`` and
            ``attempts``

    Returns:
        (set of int)

    Raises:
        ValueError: If the polygon has holes or epsilon is invalid
        RuntimeError: If no valid net is found within `max_retries`
    """
    if poly.h > 0:
        msg = "Fragmentation nets need a simple polygon, not h={:}".format(poly.h)
        raise ValueError(msg)
    eps = check_epsilon(epsilon)
    if matrix is None:
        matrix = visibility_matrix(poly)
    if rs is None:
        rs = build_range_space(poly)
    if pair_rule is None:
        pair_rule = sample_pair_rule
    M = matrix.matrix if isinstance(matrix, VisibilityMatrix) else np.asarray(matrix)

    tree = FragmentTree.build(poly.n, eps, weights)
    for attempt in range(1, max_retries + 2):
        net = set()
        calls = [0] * (tree.t + 1)
        for level in range(1, tree.t + 1):
            for p in range(len(tree.levels[level - 1])):
                kids = [c for c in tree.children(level, p) if c.vertices]
                for a in range(len(kids)):
                    for c in range(a + 1, len(kids)):
                        chosen, ncalls = pair_rule(
                            kids[a].vertices, kids[c].vertices, weights, eps, M, rng
                        )
                        net |= chosen
                        calls[level] += ncalls
        for leaf in tree.normal(tree.t):
            chosen, ncalls = pair_rule(leaf.vertices, leaf.vertices, weights, eps, M, rng)
            net |= chosen
            calls[tree.t] += ncalls

        if is_eps_net(rs, net, weights, eps):
            tree.oracle_calls = calls
            if stats is not None:
                stats.update(tree=tree, oracle_calls=calls, attempts=attempt)
            return net

    msg = "No valid {:}-net after {:} attempts".format(eps, max_retries + 1)
    raise RuntimeError(msg)


class KKNetFinder(object):
    """
    Net finder for :func:`bg_run` backed by :func:`kk_net`.

    Guesses above 1/4 are clamped to 1/4, the largest epsilon the
    fragmentation schedule is defined for.
    """

    def __init__(self, poly, rs=None, matrix=None, pair_rule=None, max_retries=32):
        self.poly = poly
        self.rs = rs if rs is not None else build_range_space(poly)
        self.matrix = matrix if matrix is not None else visibility_matrix(poly)
        self.pair_rule = pair_rule
        self.max_retries = max_retries
        self.oracle_calls = 0

    def __call__(self, weights, epsilon, rng):
        eps = min(as_rational(epsilon), Fraction(1, 4))
        stats = {}
        net = kk_net(
            self.poly,
            eps,
            weights,
            rng,
            rs=self.rs,
            matrix=self.matrix,
            pair_rule=self.pair_rule,
            max_retries=self.max_retries,
            stats=stats,
        )
        self.oracle_calls += sum(stats["oracle_calls"])
        return sorted(net)
