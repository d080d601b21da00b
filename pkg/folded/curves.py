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

"""Exact Fréchet distance decision and computation for polygonal curves.

Decisions use reachable-interval propagation through the free space diagram.
Closed curves use a double free space diagram: the y axis runs twice around
the second curve, and a matching is a monotone path of width one full period
of the first curve.
"""

import logging
import math

import numpy

from folded.geometry import (
    TOLERANCE,
    Interval,
    Metric,
    Segment,
    distance,
    equidistant_parameters,
    free_space_cell,
    point,
    point_segment_distance,
    segment_point_interval,
)

log = logging.getLogger(__name__)


class PolyCurve(object):
    """Polygonal curve in space.

    Parameters
    ----------
    vertices: sequence of points, required
        At least two vertices.  Closed curves don't repeat their first vertex.
    closed: :class:`bool`, optional
    """
    def __init__(self, vertices, closed=False):
        vertices = numpy.array([point(vertex) for vertex in vertices])
        if len(vertices) < 2:
            raise ValueError(f"Expected at least two vertices, got {len(vertices)} instead.")
        vertices.setflags(write=False)
        self._vertices = vertices
        self._closed = bool(closed)

    def __call__(self, x):
        """Point at curve parameter `x`, measured in edges from the first vertex."""
        count = self.edge_count
        if self._closed:
            x = x % count
        index = min(int(math.floor(x)), count - 1)
        return self.segment(index)(x - index)

    def __len__(self):
        return len(self._vertices)

    def __repr__(self):
        return f"PolyCurve({len(self._vertices)} vertices, closed={self._closed})"

    @property
    def closed(self):
        return self._closed

    @property
    def edge_count(self):
        """Number of edges, including the closing edge of a closed curve."""
        return len(self._vertices) if self._closed else len(self._vertices) - 1

    @property
    def vertices(self):
        return self._vertices

    def reversed(self):
        return PolyCurve(self._vertices[::-1], closed=self._closed)

    def segment(self, index):
        """Edge `index` as a :class:`folded.geometry.Segment`."""
        count = len(self._vertices)
        return Segment(self._vertices[index % count], self._vertices[(index + 1) % count])

    def vertex(self, index):
        """Vertex `index`; closed curves wrap around."""
        return self._vertices[index % len(self._vertices)]


class BoundaryMatching(object):
    """Monotone path through a (double) free space diagram.

    Parameters
    ----------
    points: sequence of (x, y) pairs, required
        Path vertices; x measures the first curve and y the second, in edges.
        For closed curves y is lifted, so it may exceed the second curve's edge count.
    offset: :class:`float`, required
        Starting y value, matched with x = 0.
    """
    def __init__(self, points, offset):
        self.points = numpy.array(points, dtype=float)
        self.offset = float(offset)

    def __repr__(self):
        return f"BoundaryMatching({len(self.points)} points, offset={self.offset})"

    def y_at(self, x):
        """Lowest lifted y matched with first-curve parameter `x`."""
        points = self.points
        for index in range(len(points)):
            if points[index, 0] >= x - TOLERANCE:
                if index == 0 or points[index, 0] <= x + TOLERANCE:
                    return float(points[index, 1])
                (x0, y0), (x1, y1) = points[index - 1], points[index]
                return float(y0 + (y1 - y0) * (x - x0) / (x1 - x0))
        return float(points[-1, 1])

    def x_at(self, y):
        """Lowest x matched with lifted second-curve parameter `y`."""
        points = self.points
        for index in range(len(points)):
            if points[index, 1] >= y - TOLERANCE:
                if index == 0 or points[index, 1] <= y + TOLERANCE:
                    return float(points[index, 0])
                (x0, y0), (x1, y1) = points[index - 1], points[index]
                return float(x0 + (x1 - x0) * (y - y0) / (y1 - y0))
        return float(points[-1, 0])

    def samples(self):
        """Path vertices plus every crossing of an integer grid line, in path order."""
        result = [tuple(self.points[0])]
        for (x0, y0), (x1, y1) in zip(self.points[:-1], self.points[1:]):
            cuts = {0.0, 1.0}
            for lo, hi in ((x0, x1), (y0, y1)):
                if hi - lo > TOLERANCE:
                    for grid in range(math.ceil(lo), math.floor(hi) + 1):
                        cuts.add((grid - lo) / (hi - lo))
            for fraction in sorted(cuts)[1:]:
                result.append((x0 + fraction * (x1 - x0), y0 + fraction * (y1 - y0)))
        return result

    def violations(self, f, g, eps, metric=Metric.L2):
        """Return matched pairs farther apart than `eps`, with their distances.

        Every path piece between samples lies in a single free space cell,
        where distance is convex along the piece, so checking samples suffices.
        """
        metric = Metric.parse(metric)
        result = []
        for x, y in self.samples():
            gap = distance(f(x), g(y), metric)
            if gap > eps + TOLERANCE:
                result.append(((x, y), gap))
        return result


def _restrict(lower, interval):
    """Part of `interval` at or above `lower`, collapsing tolerance-sized overlaps."""
    if interval.empty:
        return interval
    lo = max(lower, interval.lo)
    if lo > interval.hi + TOLERANCE:
        return Interval.empty_interval()
    return Interval(min(lo, interval.hi), interval.hi)


class FreeSpaceDiagram(object):
    """Free space of two curves with reachability annotations.

    Columns are indexed by vertices of `f` (the x axis) and rows by edges of
    `g` (the y axis).  When `g` is closed, rows beyond its edge count wrap
    around, which gives the double diagram.

    Parameters
    ----------
    f, g: :class:`PolyCurve`, required
    eps: :class:`float`, required
    metric: :class:`Metric`, optional
    allowed: :class:`dict`, optional
        Maps vertex indices of `f` to the set of edges of `g` that may be
        matched with that vertex.  Feasible intervals at other rows of the
        column are treated as empty.
    """
    def __init__(self, f, g, eps, metric=Metric.L2, allowed=None):
        self.f = f
        self.g = g
        self.eps = eps
        self.metric = Metric.parse(metric)
        self.allowed = dict(allowed) if allowed else {}

        n = f.edge_count
        m = g.edge_count
        self._vertical = [[segment_point_interval(g.segment(j), f.vertex(i), eps, self.metric) for j in range(m)] for i in range(n + 1)]
        self._horizontal = [[segment_point_interval(f.segment(i), g.vertex(j), eps, self.metric) for j in range(m + 1)] for i in range(n)]
        self.reachable_vertical = {}
        self.reachable_horizontal = {}

    def cell(self, column, row):
        """Feasible boundary intervals of a cell as a :class:`folded.geometry.FreeSpaceCell`."""
        return free_space_cell(self.f.segment(column), self.g.segment(row), self.eps, self.metric)

    def horizontal(self, column, row):
        """Feasible x interval on the horizontal line y = `row` within `column`."""
        if self.g.closed:
            row = row % self.g.edge_count
        return self._horizontal[column][row]

    def vertical(self, column, row):
        """Feasible y interval on the vertical line x = `column` within `row`."""
        m = self.g.edge_count
        vertex = column % self.f.edge_count if self.f.closed else column
        if vertex in self.allowed and (row % m) not in self.allowed[vertex]:
            return Interval.empty_interval()
        return self._vertical[column][row % m]

    def _propagate(self, first_row, last_row, left, bottom):
        n = self.f.edge_count
        empty = Interval.empty_interval()
        vertical = {(0, row): left.get(row, empty) for row in range(first_row, last_row + 1)}
        horizontal = {(column, first_row): bottom.get(column, empty) for column in range(n)}
        for row in range(first_row, last_row + 1):
            for column in range(n):
                entering_left = vertical[(column, row)]
                entering_bottom = horizontal[(column, row)]

                right = self.vertical(column + 1, row)
                if not entering_bottom.empty:
                    vertical[(column + 1, row)] = right
                elif not entering_left.empty:
                    vertical[(column + 1, row)] = _restrict(entering_left.lo, right)
                else:
                    vertical[(column + 1, row)] = empty

                top = self.horizontal(column, row + 1)
                if not entering_left.empty:
                    horizontal[(column, row + 1)] = top
                elif not entering_bottom.empty:
                    horizontal[(column, row + 1)] = _restrict(entering_bottom.lo, top)
                else:
                    horizontal[(column, row + 1)] = empty
        self.reachable_vertical = vertical
        self.reachable_horizontal = horizontal
        return vertical, horizontal

    def _corner_chains(self, first_row, last_row, y):
        """Reachable intervals along the left column and bottom row from the start (0, first_row + y)."""
        n = self.f.edge_count
        left = {}
        bottom = {}
        interval = self.vertical(0, first_row)
        if not interval.contains(y, TOLERANCE):
            return left, bottom
        left[first_row] = Interval(min(y, interval.hi), interval.hi)
        for row in range(first_row + 1, last_row + 1):
            interval = self.vertical(0, row)
            if left[row - 1].hi < 1 - TOLERANCE or not interval.contains(0, TOLERANCE):
                break
            left[row] = Interval(0, interval.hi)
        if y <= TOLERANCE:
            for column in range(n):
                interval = self.horizontal(column, first_row)
                if not interval.contains(0, TOLERANCE):
                    break
                bottom[column] = Interval(0, interval.hi)
                if interval.hi < 1 - TOLERANCE or not self.vertical(column + 1, first_row).contains(0, TOLERANCE):
                    break
        return left, bottom

    def reach_open(self):
        """True if a monotone path joins the bottom left and top right corners."""
        n = self.f.edge_count
        m = self.g.edge_count
        left, bottom = self._corner_chains(0, m - 1, 0.0)
        if not left:
            return False
        vertical, horizontal = self._propagate(0, m - 1, left, bottom)
        return vertical[(n, m - 1)].contains(1, TOLERANCE) or horizontal[(n - 1, m)].contains(1, TOLERANCE)

    def reach_closed(self, row, y):
        """Search for a closed matching starting at (0, `row` + `y`).

        Returns
        -------
        matching: :class:`BoundaryMatching` or :any:`None`
        """
        n = self.f.edge_count
        m = self.g.edge_count
        last = row + m
        left, bottom = self._corner_chains(row, last, y)
        if not left:
            return None
        vertical, horizontal = self._propagate(row, last, left, bottom)
        if not vertical[(n, last)].contains(y, TOLERANCE):
            return None
        return BoundaryMatching(self._backtrack(row, y), row + y)

    def start_candidates(self, row):
        """Starting y fractions worth testing in `row`.

        The smallest feasible start, if any, is either the lowest feasible
        point on the left column or the lower end of a feasible interval in the
        final row of the period.
        """
        interval = self.vertical(0, row)
        if interval.empty:
            return []
        candidates = {interval.lo, interval.hi}
        for column in range(self.f.edge_count + 1):
            other = self.vertical(column, row + self.g.edge_count)
            if not other.empty and interval.lo <= other.lo <= interval.hi:
                candidates.add(other.lo)
        return sorted(candidates)

    def _backtrack(self, row, y):
        n = self.f.edge_count
        m = self.g.edge_count
        vertical = self.reachable_vertical
        horizontal = self.reachable_horizontal

        kind, column, current_row, value = "V", n, row + m, y
        path = [(float(n), row + m + y)]
        while True:
            if kind == "V":
                if column == 0:
                    path.append((0.0, row + y))
                    break
                entering_left = vertical[(column - 1, current_row)]
                entering_bottom = horizontal[(column - 1, current_row)]
                if not entering_left.empty and entering_left.lo <= value + TOLERANCE:
                    value = max(min(value, entering_left.hi), entering_left.lo)
                    column -= 1
                    path.append((float(column), current_row + value))
                elif not entering_bottom.empty:
                    kind, column, value = "H", column - 1, entering_bottom.hi
                    path.append((column + value, float(current_row)))
                else: # pragma: no cover
                    raise RuntimeError("Reachability annotations are inconsistent.")
            else:
                if current_row == row:
                    path.append((0.0, float(row)))
                    break
                entering_left = vertical[(column, current_row - 1)]
                entering_bottom = horizontal[(column, current_row - 1)]
                if not entering_left.empty:
                    kind, current_row, value = "V", current_row - 1, entering_left.hi
                    path.append((float(column), current_row + value))
                elif entering_bottom.lo <= value + TOLERANCE:
                    value = max(min(value, entering_bottom.hi), entering_bottom.lo)
                    current_row -= 1
                    path.append((column + value, float(current_row)))
                else: # pragma: no cover
                    raise RuntimeError("Reachability annotations are inconsistent.")

        path.reverse()
        result = [path[0]]
        for x, y in path[1:]:
            previous = result[-1]
            result.append((max(x, previous[0]), max(y, previous[1])))
        return result


def frechet_decide_open(f, g, eps, metric=Metric.L2):
    """True if the Fréchet distance between open curves `f` and `g` is at most `eps`."""
    if f.closed or g.closed:
        raise ValueError("Expected open curves, got a closed curve instead.")
    return FreeSpaceDiagram(f, g, eps, metric).reach_open()


def frechet_decide_closed(f, g, eps, metric=Metric.L2, allowed=None):
    """Search for a matching of closed curves `f` and `g` within `eps`.

    Every start row of the double free space diagram is tested, in order, with
    the candidate start positions of :meth:`FreeSpaceDiagram.start_candidates`.

    Parameters
    ----------
    f, g: :class:`PolyCurve`, required
        Closed curves.
    eps: :class:`float`, required
    metric: :class:`Metric`, optional
    allowed: :class:`dict`, optional
        Restricts which edges of `g` each vertex of `f` may be matched with;
        see :class:`FreeSpaceDiagram`.

    Returns
    -------
    matching: :class:`BoundaryMatching` or :any:`None`
    """
    if not (f.closed and g.closed):
        raise ValueError("Expected closed curves, got an open curve instead.")
    diagram = FreeSpaceDiagram(f, g, eps, metric, allowed=allowed)
    for row in range(g.edge_count):
        for y in diagram.start_candidates(row):
            matching = diagram.reach_closed(row, y)
            if matching is not None:
                return matching
    return None


def frechet_decide(f, g, eps, metric=Metric.L2):
    """Decide open or closed curves, returning a :class:`bool`."""
    if f.closed and g.closed:
        return frechet_decide_closed(f, g, eps, metric) is not None
    return frechet_decide_open(f, g, eps, metric)


def dedupe(values):
    """Sort `values`, merging entries within :data:`TOLERANCE` of their predecessor."""
    result = []
    for value in sorted(values):
        if not result or value - result[-1] > TOLERANCE:
            result.append(float(value))
    return result


def curve_critical_values(f, g, metric=Metric.L2):
    """Values of eps at which a Fréchet decision between `f` and `g` can change.

    Includes vertex to vertex distances, vertex to edge distances and the
    monotonicity events where a point on an edge is equidistant from two
    vertices of the other curve.
    """
    metric = Metric.parse(metric)
    values = []
    for p in f.vertices:
        for q in g.vertices:
            values.append(distance(p, q, metric))
    for first, second in ((f, g), (g, f)):
        for index in range(second.edge_count):
            segment = second.segment(index)
            for p in first.vertices:
                values.append(point_segment_distance(p, segment, metric))
            vertices = first.vertices
            for a in range(len(vertices)):
                for b in range(a + 1, len(vertices)):
                    for t in equidistant_parameters(segment, vertices[a], vertices[b], metric):
                        values.append(distance(segment(t), vertices[a], metric))
    return dedupe(values)


def frechet_compute(f, g, metric=Metric.L2):
    """Fréchet distance between two curves, by binary search over critical values."""
    metric = Metric.parse(metric)
    values = curve_critical_values(f, g, metric)
    lo, hi = 0, len(values) - 1
    while lo < hi:
        middle = (lo + hi) // 2
        if frechet_decide(f, g, values[middle] + TOLERANCE, metric):
            hi = middle
        else:
            lo = middle + 1
    return values[lo]


def discrete_frechet(p, q, metric=Metric.L2):
    """Discrete Fréchet distance between two point sequences.

    Parameters
    ----------
    p, q: array-like of points, required
    """
    metric = Metric.parse(metric)
    p = numpy.asarray(p, dtype=float)
    q = numpy.asarray(q, dtype=float)
    distances = metric.norm(p[:, None, :] - q[None, :, :], axis=2)
    table = numpy.empty_like(distances)
    table[0, 0] = distances[0, 0]
    for j in range(1, len(q)):
        table[0, j] = max(table[0, j - 1], distances[0, j])
    for i in range(1, len(p)):
        table[i, 0] = max(table[i - 1, 0], distances[i, 0])
        for j in range(1, len(q)):
            table[i, j] = max(min(table[i - 1, j], table[i - 1, j - 1], table[i, j - 1]), distances[i, j])
    return float(table[-1, -1])


def subsample(curve, count):
    """Points splitting every edge of `curve` into `count` equal pieces.

    Closed curves end with a copy of their first vertex.
    """
    fractions = numpy.arange(count) / count
    points = [curve.segment(index)(t) for index in range(curve.edge_count) for t in fractions]
    points.append(curve.vertex(curve.edge_count))
    return numpy.array(points)
