# Copyright 2021 National Technology & Engineering Solutions
# of Sandia, LLC (NTESS). Under the terms of Contract DE-NA0003525 with NTESS,
# the U.S. Government retains certain rights in this software.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Static SVG diagrams of free space, reachability, witnesses and crossing orders."""

import logging

import drawsvg as draw
import numpy

from folded.curves import FreeSpaceDiagram
from folded.decide import proper_intersection_order
from folded.geometry import Metric, segment_point_interval

log = logging.getLogger(__name__)

BACKGROUND = "#404040"
FREE = "#ffffff"
GRID = "#a0a0a0"
REACHABLE = "#2a9d8f"
WITNESS = "#e63946"
TEXT = "#202020"
FONT = "monospace"


class Theme(object):
    """Sizes used by the renderers."""
    def __init__(self, cell=48, margin=24, samples=24, font_size=11):
        self.cell = cell
        self.margin = margin
        self.samples = samples
        self.font_size = font_size


def _reach(diagram):
    """Run the reachability search that decides the diagram, keeping its annotations."""
    f, g = diagram.f, diagram.g
    if f.closed and g.closed:
        for row in range(g.edge_count):
            for y in diagram.start_candidates(row):
                matching = diagram.reach_closed(row, y)
                if matching is not None:
                    return matching
        return None
    diagram.reach_open()
    return None


def _cell_region(f, g, column, row, eps, metric, samples):
    """Outline of the free space of one cell, as a list of (x, y) cell fractions."""
    lows = []
    highs = []
    segment = g.segment(row)
    for x in numpy.linspace(0.0, 1.0, samples + 1):
        interval = segment_point_interval(segment, f.segment(column)(x), eps, metric)
        if not interval.empty:
            lows.append((x, interval.lo))
            highs.append((x, interval.hi))
    return lows + highs[::-1]


def _free_space(f, g, eps, metric, matching, allowed, theme):
    """Group of free space elements with its width and height."""
    diagram = FreeSpaceDiagram(f, g, eps, metric, allowed=allowed)
    found = _reach(diagram)
    if matching is None:
        matching = found

    columns = f.edge_count
    rows = 2 * g.edge_count if g.closed else g.edge_count
    width = columns * theme.cell + 2 * theme.margin
    height = rows * theme.cell + 2 * theme.margin + 2 * theme.font_size

    def at(x, y):
        return theme.margin + x * theme.cell, theme.margin + (rows - y) * theme.cell

    group = draw.Group()
    group.append(draw.Rectangle(0, 0, width, height, fill=BACKGROUND))

    for row in range(rows):
        for column in range(columns):
            region = _cell_region(f, g, column, row % g.edge_count, eps, metric, theme.samples)
            if len(region) < 2:
                continue
            coordinates = []
            for x, y in region:
                coordinates.extend(at(column + x, row + y))
            group.append(draw.Lines(*coordinates, close=True, fill=FREE, stroke="none"))

    for column in range(columns + 1):
        group.append(draw.Line(*at(column, 0), *at(column, rows), stroke=GRID, stroke_width=0.5))
    for row in range(rows + 1):
        group.append(draw.Line(*at(0, row), *at(columns, row), stroke=GRID, stroke_width=0.5))

    for (column, row), interval in sorted(diagram.reachable_vertical.items()):
        if not interval.empty:
            group.append(draw.Line(*at(column, row + interval.lo), *at(column, row + interval.hi), stroke=REACHABLE, stroke_width=3))
    for (column, row), interval in sorted(diagram.reachable_horizontal.items()):
        if not interval.empty:
            group.append(draw.Line(*at(column + interval.lo, row), *at(column + interval.hi, row), stroke=REACHABLE, stroke_width=3))

    if matching is not None:
        coordinates = []
        for x, y in matching.points:
            coordinates.extend(at(x, y))
        group.append(draw.Lines(*coordinates, close=False, fill="none", stroke=WITNESS, stroke_width=2))

    caption = f"eps={eps:.6g} metric={metric.value} " + ("matching found" if matching is not None else "no matching")
    group.append(draw.Text(caption, theme.font_size, theme.margin, height - theme.font_size, fill=FREE, font_family=FONT))
    return group, width, height


def _crossings(mapping, theme):
    """Group of crossing order elements with its width and height."""
    Q = mapping.Q
    length = 8 * theme.cell
    spacing = 3 * theme.font_size + theme.cell // 2
    edges = Q.interior_edges
    width = length + 2 * theme.margin
    height = max(1, len(edges)) * spacing + 2 * theme.margin

    group = draw.Group()
    group.append(draw.Rectangle(0, 0, width, height, fill=FREE))
    for position, edge in enumerate(edges):
        y = theme.margin + position * spacing + theme.font_size
        group.append(draw.Text(f"edge {edge.index}", theme.font_size, theme.margin, y - theme.font_size // 2, fill=TEXT, font_family=FONT))
        group.append(draw.Line(theme.margin, y + theme.font_size, theme.margin + length, y + theme.font_size, stroke=TEXT, stroke_width=2))
        for rank, index in enumerate(proper_intersection_order(mapping, edge.index)):
            t, s = mapping.paths[index].crossing(edge.index)
            x = theme.margin + s * length
            group.append(draw.Circle(x, y + theme.font_size, 4, fill=WITNESS))
            group.append(draw.Text(f"{index}:{rank}", theme.font_size, x + 5, y + 2.5 * theme.font_size, fill=TEXT, font_family=FONT))
    return group, width, height


def render_free_space(f, g, eps, metric=Metric.L2, matching=None, allowed=None, theme=None):
    """Draw the (double) free space diagram of two curves.

    Feasible regions are white, reachable boundary intervals are drawn in
    color, and the matching path, if any, is drawn on top.  When `matching`
    is omitted, the matching found by the search is drawn.

    Parameters
    ----------
    f, g: :class:`folded.curves.PolyCurve`, required
    eps: :class:`float`, required
    metric: :class:`folded.geometry.Metric`, optional
    matching: :class:`folded.curves.BoundaryMatching`, optional
    allowed: :class:`dict`, optional
        Column restrictions, as for :class:`folded.curves.FreeSpaceDiagram`.
    theme: :class:`Theme`, optional

    Returns
    -------
    drawing: :class:`drawsvg.Drawing`
    """
    theme = Theme() if theme is None else theme
    group, width, height = _free_space(f, g, eps, Metric.parse(metric), matching, allowed, theme)
    d = draw.Drawing(width, height)
    d.append(group)
    return d


def render_crossings(mapping, theme=None):
    """Draw every interior edge of the target with the crossings of the diagonal images.

    Each edge is a horizontal bar from its first vertex (left) to its second.
    Crossings are labeled with the diagonal index and their rank in the
    proper intersection order.

    Returns
    -------
    drawing: :class:`drawsvg.Drawing`
    """
    theme = Theme() if theme is None else theme
    group, width, height = _crossings(mapping, theme)
    d = draw.Drawing(width, height)
    d.append(group)
    return d


def render_surfaces(P, Q, eps, metric=Metric.L2, mapping=None, theme=None):
    """Free space of the boundary curves, with the crossing diagram of `mapping` beneath it.

    Returns
    -------
    drawing: :class:`drawsvg.Drawing`
    """
    theme = Theme() if theme is None else theme
    metric = Metric.parse(metric)
    allowed = mapping.klass.allowed(mapping.diagonals) if mapping is not None else None
    matching = mapping.matching if mapping is not None else None
    top, top_width, top_height = _free_space(P.boundary_curve(), Q.boundary_curve(), eps, metric, matching, allowed, theme)
    if mapping is None or not Q.interior_edges:
        d = draw.Drawing(top_width, top_height)
        d.append(top)
        return d

    bottom, bottom_width, bottom_height = _crossings(mapping, theme)
    d = draw.Drawing(max(top_width, bottom_width), top_height + bottom_height)
    d.append(top)
    shifted = draw.Group(transform=f"translate(0, {top_height})")
    shifted.append(bottom)
    d.append(shifted)
    return d
