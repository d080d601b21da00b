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

"""Match a segment against paths that follow a sequence of edges.

A path from `u` to `v` that crosses edges e_1, ..., e_s in order is within
Fréchet distance eps of a segment d exactly when the endpoints are within eps
and monotone parameters t_1 <= ... <= t_s can be chosen with d(t_i) within eps
of e_i.  The greedy scan of :func:`folded.geometry.interval_chain_greedy`
decides this and yields a witness made of straight pieces between crossings.
"""

import logging

import numpy

from folded.curves import PolyCurve, frechet_compute
from folded.geometry import (
    TOLERANCE,
    Metric,
    closest_parameter,
    distance,
    interval_chain_greedy,
    segment_projection_interval,
)

log = logging.getLogger(__name__)


class Placement(object):
    """Images of a diagonal's endpoints on the target boundary.

    Parameters
    ----------
    diagonal: :class:`int`, required
        Diagonal index.
    u, v: :class:`folded.surface.BoundaryPoint`, required
        Images of the diagonal's first and second endpoints.
    """
    def __init__(self, diagonal, u, v):
        self.diagonal = diagonal
        self.u = u
        self.v = v

    def __eq__(self, other):
        return isinstance(other, Placement) and (self.diagonal, self.u, self.v) == (other.diagonal, other.u, other.v)

    def __repr__(self):
        return f"Placement(diagonal={self.diagonal}, u={tuple(self.u)}, v={tuple(self.v)})"


class FrechetShortestPath(object):
    """Polyline following an edge sequence, matched with a segment.

    Parameters
    ----------
    sequence: sequence of :class:`int`, required
        Edges crossed, in order.
    t: sequence of :class:`float`, required
        Segment parameter matched with each crossing.
    s: sequence of :class:`float`, required
        Edge parameter of each crossing.
    points: :class:`numpy.ndarray`, required
        Polyline from the image of the segment start, through the crossings, to
        the image of the segment end.
    placement: :class:`Placement`, optional
    """
    def __init__(self, sequence, t, s, points, placement=None):
        self.sequence = tuple(sequence)
        self.t = numpy.array(t, dtype=float)
        self.s = numpy.array(s, dtype=float)
        self.points = numpy.array(points, dtype=float)
        self.placement = placement

    def __repr__(self):
        return f"FrechetShortestPath(sequence={self.sequence}, t={self.t.tolist()}, s={self.s.tolist()})"

    def crossing(self, edge):
        """Return the (t, s) pair where this path crosses `edge`."""
        index = self.sequence.index(edge)
        return float(self.t[index]), float(self.s[index])


def match_segment_to_sequence(d, edges, u, v, eps, metric=Metric.L2, sequence=None):
    """Find a path from `u` to `v` across `edges` within Fréchet distance `eps` of `d`.

    Parameters
    ----------
    d: :class:`folded.geometry.Segment`, required
    edges: sequence of :class:`folded.geometry.Segment`, required
        Geometry of the edges to cross, in order.
    u, v: points, required
        Path endpoints.
    eps: :class:`float`, required
    metric: :class:`folded.geometry.Metric`, optional
    sequence: sequence of :class:`int`, optional
        Edge identifiers stored in the result; defaults to positions in `edges`.

    Returns
    -------
    path: :class:`FrechetShortestPath` or :any:`None` if no such path exists.
    """
    metric = Metric.parse(metric)
    if distance(d(0.0), u, metric) > eps + TOLERANCE or distance(d(1.0), v, metric) > eps + TOLERANCE:
        return None
    chain = [segment_projection_interval(d, edge, eps, metric) for edge in edges]
    t = interval_chain_greedy(chain, 0.0, 1.0)
    if t is None:
        return None
    s = [closest_parameter(edge, d(ti), metric) for edge, ti in zip(edges, t)]
    points = [numpy.asarray(u, dtype=float)] + [edge(si) for edge, si in zip(edges, s)] + [numpy.asarray(v, dtype=float)]
    if sequence is None:
        sequence = range(len(edges))
    return FrechetShortestPath(sequence, t, s, points)


def _is_subsequence(sub, full):
    remaining = iter(full)
    return all(any(item == other for other in remaining) for item in sub)


def subsequence_feasibility(d, full, sub, u, v, eps, metric=Metric.L2):
    """Check whether dropping edges from a sequence preserves feasibility.

    Parameters
    ----------
    d: :class:`folded.geometry.Segment`, required
    full: sequence of :class:`folded.geometry.Segment`, required
    sub: sequence of :class:`folded.geometry.Segment`, required
        Subsequence of `full`.
    u, v: points, required
    eps: :class:`float`, required
    metric: :class:`folded.geometry.Metric`, optional

    Returns
    -------
    feasible: :class:`tuple` of two :class:`bool`
        Feasibility for `full` and for `sub`.  Whenever the first is true, so is the second.

    Raises
    ------
    ValueError: if `sub` isn't a subsequence of `full`.
    """
    if not _is_subsequence(list(sub), list(full)):
        raise ValueError("Expected a subsequence of the full edge sequence, got an unrelated sequence instead.")
    full_path = match_segment_to_sequence(d, full, u, v, eps, metric)
    sub_path = match_segment_to_sequence(d, sub, u, v, eps, metric)
    return full_path is not None, sub_path is not None


def frechet_segment_to_path(d, points, metric=Metric.L2):
    """Exact Fréchet distance between segment `d` and the polyline through `points`."""
    points = numpy.asarray(points, dtype=float)
    if len(points) == 1:
        points = numpy.vstack((points, points))
    return frechet_compute(PolyCurve([d.a, d.b]), PolyCurve(points), metric)
