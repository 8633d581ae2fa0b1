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

Functions to draw decompositions, sinks and guards.

Coordinates are converted to floats, quantized to 1e-9, for display only.

"""

import matplotlib.pyplot as plt
import numpy as np

from pyvisguard.visibility import LEFT, RIGHT, TRANS

window_colors = {LEFT: "tab:blue", RIGHT: "tab:green", TRANS: "tab:red"}


def _xy(points):
    return np.array([[round(float(p.x), 9), round(float(p.y), 9)] for p in points])


def plot_boundary(poly, ax, plot_kwargs={"color": "black", "linewidth": 1.2}):
    """Draw the rings of `poly`, holes filled grey"""
    for ic, ring in enumerate(poly.rings):
        xy = _xy(ring + ring[:1])
        if ic > 0:
            ax.fill(xy[:, 0], xy[:, 1], color="0.85", zorder=1)
        ax.plot(xy[:, 0], xy[:, 1], zorder=3, **plot_kwargs)


def plot_windows(windows, ax, linewidth=0.6):
    """Draw windows colored by kind"""
    for w in windows:
        xy = _xy([w.base, w.end])
        ax.plot(xy[:, 0], xy[:, 1], color=window_colors[w.kind], lw=linewidth, zorder=2)


def plot_cells(decomposition, cells, ax, color="tab:green", alpha=0.35):
    """Shade the given cells"""
    for c in cells:
        xy = _xy(decomposition.cells[c].outer)
        ax.fill(xy[:, 0], xy[:, 1], color=color, alpha=alpha, lw=0, zorder=0)


def plot_guards(poly, guards, ax, marker="*", color="black", size=120):
    """Mark guard vertices"""
    if not len(guards):
        return
    xy = _xy([poly[g] for g in guards])
    ax.scatter(xy[:, 0], xy[:, 1], marker=marker, c=color, s=size, zorder=4)


def render(decomposition, guards=None, fname=None, fmt="svg", ax=None, show=False):
    """
    Draw a decomposition with its sinks and, optionally, guards.

    Args:
        decomposition (:class:`~pyvisguard.arrangement.Decomposition`):
            Decomposition; sinks are shaded if :attr:`sinks` is set
        guards (iterable of int):
            Guard vertices to mark
        fname (str):
            Save the figure to this file
        fmt (str):
            Output format ('svg', 'pdf', 'png', etc.)
        ax (:class:`matplotlib.axes.Axes`):
            Axes to draw into. A new figure is created if ``None``
        show (bool):
            Show the figure

    Returns:
        :class:`matplotlib.figure.Figure`

    """
    if ax is None:
        fig, ax = plt.subplots(figsize=(7, 7))
    else:
        fig = ax.figure

    poly = decomposition.source
    if decomposition.sinks is not None:
        plot_cells(decomposition, decomposition.sinks, ax)
    plot_windows(decomposition.windows, ax)
    plot_boundary(poly, ax)
    if guards is not None:
        plot_guards(poly, list(guards), ax)

    ax.set_aspect("equal")
    ax.set_xticks([])
    ax.set_yticks([])

    if fname is not None:
        fig.savefig(fname, bbox_inches="tight", format=fmt)
    if show:
        plt.show()

    return fig
