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

"""Brute force reference computations used to cross-check the library."""

import numpy

from folded.geometry import Metric, distance, point_segment_distance


def sampled_point_interval(segment, p, eps, metric=Metric.L2, samples=2001):
    """Parameters of `segment` within `eps` of `p`, by dense sampling, as an array."""
    t = numpy.linspace(0.0, 1.0, samples)
    return t[[distance(segment(value), p, metric) <= eps for value in t]]


def chain_selection_exists(chain, samples=2001):
    """True if nondecreasing parameters can be picked from a chain of intervals, on a grid."""
    grid = numpy.linspace(0.0, 1.0, samples)
    position = 0
    for interval in chain:
        if interval.empty:
            return False
        while position < samples and not interval.contains(grid[position]):
            if grid[position] > interval.hi:
                return False
            position += 1
        if position == samples:
            return False
    return True


def grid_sequence_feasible(d, edges, u, v, eps, metric=Metric.L2, samples=401):
    """Grid search for monotone crossing parameters matching `d` with a path across `edges`."""
    if distance(d(0.0), u, metric) > eps or distance(d(1.0), v, metric) > eps:
        return False
    grid = numpy.linspace(0.0, 1.0, samples)
    position = 0
    for edge in edges:
        while position < samples and point_segment_distance(d(grid[position]), edge, metric) > eps:
            position += 1
        if position == samples:
            return False
    return True


def grid_untangle_feasible(segment, diagonals, eps, metric=Metric.L2, t_samples=81, s_samples=201):
    """Grid search for ordered crossings of `segment` by `diagonals`, each within eps of its diagonal."""
    t = numpy.linspace(0.0, 1.0, t_samples)
    s = numpy.linspace(0.0, 1.0, s_samples)
    edge_points = numpy.array([segment(value) for value in s])
    position = 0
    for diagonal in diagonals:
        points = numpy.array([diagonal(value) for value in t])
        reachable = numpy.array([numpy.any(Metric.parse(metric).norm(points - edge_point, axis=1) <= eps) for edge_point in edge_points])
        candidates = numpy.flatnonzero(reachable[position:])
        if not len(candidates):
            return False
        position += candidates[0]
    return True
