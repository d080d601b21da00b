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

"""The diagonal monotonicity test and its optimization.

A pair of folded polygons passes the test at eps when one boundary matching
within eps also lets every diagonal of the first polygon be matched, within
eps, with a path in the second polygon that follows the shortest path edge
sequence between the images of the diagonal's endpoints.

The search enumerates combinatorial classes: for every diagonal endpoint, the
boundary edge of the target that hosts its image.  Fixing a class fixes every
edge sequence, so each diagonal reduces to an interior feasibility bit plus
endpoint constraints that restrict boundary reachability at single columns of
the double free space diagram.
"""

import collections
import itertools
import logging
import math

import numpy
import scipy.optimize

import folded.logger
import folded.pool
from folded.curves import curve_critical_values, dedupe, frechet_compute, frechet_decide_closed
from folded.geometry import (
    TOLERANCE,
    Metric,
    distance,
    interval_chain_greedy,
    point_segment_distance,
    segment_distance,
    segment_point_interval,
    segment_projection_interval,
)
from folded.segmatch import FrechetShortestPath, Placement, frechet_segment_to_path, match_segment_to_sequence
from folded.surface import BoundaryPoint, shortest_path_edge_sequence

log = folded.logger.Logger(logging.getLogger(__name__))


Diagonal = collections.namedtuple("Diagonal", ["index", "segment", "first", "second"])
Diagonal.__doc__ = """Interior edge of the source polygon, with the boundary positions of its endpoints."""


class DiagonalSet(object):
    """Diagonals of a folded polygon with their nesting structure.

    Every diagonal is directed from the endpoint that comes first in a
    counterclockwise traversal of the boundary.  Diagonals of a convex
    subdivision never cross, so their boundary position intervals are nested
    or disjoint.

    Parameters
    ----------
    P: :class:`folded.surface.FoldedPolygon`, required
    """
    def __init__(self, P):
        self._diagonals = []
        for edge in P.interior_edges:
            a, b = edge.vertices
            self._diagonals.append(Diagonal(edge.index, P.edge_segment(edge.index), P.boundary_position(a), P.boundary_position(b)))

        self._parents = []
        for diagonal in self._diagonals:
            parent = None
            for other in self._diagonals:
                if other is diagonal:
                    continue
                if other.first < diagonal.first < other.second < diagonal.second or diagonal.first < other.first < diagonal.second < other.second:
                    raise ValueError(f"Expected non-crossing diagonals, got crossing diagonals {diagonal.index} and {other.index} instead.")
                if other.first <= diagonal.first and diagonal.second <= other.second:
                    if parent is None or self._diagonals[parent].second - self._diagonals[parent].first > other.second - other.first:
                        parent = other.index
            self._parents.append(parent)

    def __getitem__(self, index):
        return self._diagonals[index]

    def __iter__(self):
        return iter(self._diagonals)

    def __len__(self):
        return len(self._diagonals)

    @property
    def parents(self):
        """Index of the innermost diagonal enclosing each diagonal, or :any:`None`."""
        return list(self._parents)

    def endpoints(self):
        """Sorted (boundary position, diagonal index, endpoint) triples; endpoint is 0 or 1."""
        result = []
        for diagonal in self._diagonals:
            result.append((diagonal.first, diagonal.index, 0))
            result.append((diagonal.second, diagonal.index, 1))
        return sorted(result)


class CombinatorialClass(object):
    """Choice of host boundary edges for the images of every diagonal endpoint.

    Parameters
    ----------
    hosts: sequence of (int, int) pairs, required
        Host edge of the target boundary for the first and second endpoint of each diagonal.
    """
    def __init__(self, hosts):
        self.hosts = tuple(tuple(pair) for pair in hosts)

    def __eq__(self, other):
        return isinstance(other, CombinatorialClass) and self.hosts == other.hosts

    def __hash__(self):
        return hash(self.hosts)

    def __lt__(self, other):
        return self.hosts < other.hosts

    def __repr__(self):
        return f"CombinatorialClass({self.hosts})"

    def allowed(self, diagonals):
        """Column restrictions for boundary reachability.

        Returns
        -------
        allowed: :class:`dict` mapping source boundary positions to sets of host edges, or :any:`None` if two diagonals sharing an endpoint disagree about its host.
        """
        result = {}
        for diagonal, pair in zip(diagonals, self.hosts):
            for position, host in zip((diagonal.first, diagonal.second), pair):
                if position in result and result[position] != {host}:
                    return None
                result[position] = {host}
        return result

    def sequences(self, Q):
        """Edge sequence implied for each diagonal."""
        return [Q.face_sequence(Q.boundary_faces[first], Q.boundary_faces[second]) for first, second in self.hosts]


class MonotoneDiagonalMapping(object):
    """Witness that a pair of folded polygons passes the diagonal monotonicity test.

    Attributes
    ----------
    P, Q: :class:`folded.surface.FoldedPolygon`
    eps: :class:`float`
    metric: :class:`folded.geometry.Metric`
    klass: :class:`CombinatorialClass`
    matching: :class:`folded.curves.BoundaryMatching`
    placements: :class:`list` of :class:`folded.segmatch.Placement`
    paths: :class:`list` of :class:`folded.segmatch.FrechetShortestPath`
    lifted: :class:`list`
        For each diagonal, the (x, y) positions of both endpoints in the double free space diagram.
    """
    def __init__(self, P, Q, eps, metric, klass, matching, placements, paths, lifted):
        self.P = P
        self.Q = Q
        self.eps = eps
        self.metric = Metric.parse(metric)
        self.klass = klass
        self.matching = matching
        self.placements = placements
        self.paths = paths
        self.lifted = lifted

    def __repr__(self):
        return f"MonotoneDiagonalMapping(eps={self.eps}, klass={self.klass!r})"

    @property
    def diagonals(self):
        return DiagonalSet(self.P)

    def crossing_diagonals(self, edge):
        """Diagonals whose path crosses interior edge `edge` of the target."""
        return [index for index, path in enumerate(self.paths) if edge in path.sequence]


def _host_hint(Q, position, host):
    """Boundary point for lifted boundary position `position`, hosted on edge `host` when possible."""
    count = len(Q.boundary)
    wrapped = position % count
    if wrapped > count - TOLERANCE:
        wrapped = 0.0
    if math.floor(wrapped) == host:
        return BoundaryPoint(host, wrapped - host)
    if abs(wrapped - (host + 1) % count) <= TOLERANCE or (host + 1 == count and wrapped <= TOLERANCE):
        return BoundaryPoint(host, 1.0)
    if abs(wrapped - host) <= TOLERANCE:
        return BoundaryPoint(host, 0.0)
    return BoundaryPoint.from_position(wrapped, count)


def _cyclically_monotone(diagonals, klass, count):
    """True if host edges appear in nondecreasing cyclic order along the source boundary."""
    hosts = []
    for position, index, end in diagonals.endpoints():
        hosts.append(klass.hosts[index][end])
    if len(hosts) < 2:
        return True
    descents = sum(1 for a, b in zip(hosts, hosts[1:] + hosts[:1]) if b < a)
    return descents <= 1


class _Search(object):
    """Shared, memoized state for one run of the class enumeration."""
    def __init__(self, P, Q, eps, metric, pruning):
        self.P = P
        self.Q = Q
        self.eps = eps
        self.metric = Metric.parse(metric)
        self.pruning = pruning
        self.diagonals = DiagonalSet(P)
        self.f = P.boundary_curve()
        self.g = Q.boundary_curve()
        self._bits = {}
        self._matchings = {}

    def candidate_hosts(self, position):
        count = len(self.Q.boundary)
        if not self.pruning:
            return list(range(count))
        result = []
        p = self.P.vertices[self.P.boundary[position]]
        for host in range(count):
            if segment_point_interval(self.Q.boundary_segment(host), p, self.eps, self.metric).empty:
                continue
            if self.matching({position: {host}}) is None:
                continue
            result.append(host)
        return result

    def interior_bit(self, index, pair):
        key = (index, pair)
        if key not in self._bits:
            sequence = self.Q.face_sequence(self.Q.boundary_faces[pair[0]], self.Q.boundary_faces[pair[1]])
            segment = self.diagonals[index].segment
            chain = [segment_projection_interval(segment, self.Q.edge_segment(edge), self.eps, self.metric) for edge in sequence]
            self._bits[key] = interval_chain_greedy(chain, 0.0, 1.0) is not None
        return self._bits[key]

    def matching(self, allowed):
        key = tuple(sorted((position, tuple(sorted(hosts))) for position, hosts in allowed.items()))
        if key not in self._matchings:
            self._matchings[key] = frechet_decide_closed(self.f, self.g, self.eps, self.metric, allowed=allowed)
        return self._matchings[key]

    def classes(self):
        """Candidate classes in lexicographic order."""
        hosts = {}
        for position, index, end in self.diagonals.endpoints():
            if position not in hosts:
                hosts[position] = self.candidate_hosts(position)
        pairs = []
        for diagonal in self.diagonals:
            options = []
            for pair in itertools.product(hosts[diagonal.first], hosts[diagonal.second]):
                if self.interior_bit(diagonal.index, pair):
                    options.append(pair)
            pairs.append(options)
        count = len(self.Q.boundary)
        for choice in itertools.product(*pairs):
            klass = CombinatorialClass(choice)
            if self.pruning and not _cyclically_monotone(self.diagonals, klass, count):
                continue
            yield klass

    def evaluate(self, klass):
        """Build the witness for one class, or return :any:`None`."""
        allowed = klass.allowed(self.diagonals)
        if allowed is None:
            return None
        matching = self.matching(allowed)
        if matching is None:
            return None

        sequences = klass.sequences(self.Q)
        placements = []
        paths = []
        lifted = []
        for diagonal, pair, sequence in zip(self.diagonals, klass.hosts, sequences):
            yu = matching.y_at(diagonal.first)
            yv = matching.y_at(diagonal.second)
            u = _host_hint(self.Q, yu, pair[0])
            v = _host_hint(self.Q, yv, pair[1])
            placement = Placement(diagonal.index, u, v)
            path = match_segment_to_sequence(
                diagonal.segment,
                [self.Q.edge_segment(edge) for edge in sequence],
                self.Q.point(u),
                self.Q.point(v),
                self.eps,
                self.metric,
                sequence=sequence,
                )
            if path is None:
                log.debug(f"Class {klass.hosts} passed reachability but diagonal {diagonal.index} has no witness path.")
                return None
            path.placement = placement
            placements.append(placement)
            paths.append(path)
            lifted.append(((float(diagonal.first), yu), (float(diagonal.second), yv)))

        return MonotoneDiagonalMapping(self.P, self.Q, self.eps, self.metric, klass, matching, placements, paths, lifted)


def accepting_mappings(P, Q, eps, metric=Metric.L2, pruning=True):
    """Generate a witness for every accepting combinatorial class, in lexicographic class order.

    Parameters
    ----------
    P, Q: :class:`folded.surface.FoldedPolygon`, required
        Source and target; the diagonals of `P` are matched into `Q`.
    eps: :class:`float`, required
    metric: :class:`folded.geometry.Metric`, optional
    pruning: :class:`bool`, optional
        When :any:`False`, every boundary edge is a candidate host for every endpoint.
    """
    search = _Search(P, Q, eps, metric, pruning)
    if search.matching({}) is None:
        return
    for klass in search.classes():
        mapping = search.evaluate(klass)
        if mapping is not None:
            yield mapping


def diagonal_monotonicity_test(P, Q, eps, metric=Metric.L2, pruning=True, workers=None):
    """Run the diagonal monotonicity test.

    Parameters
    ----------
    P, Q: :class:`folded.surface.FoldedPolygon`, required
    eps: :class:`float`, required
    metric: :class:`folded.geometry.Metric`, optional
    pruning: :class:`bool`, optional
    workers: :class:`int`, optional
        Evaluate classes in this many processes; the lexicographically smallest
        accepting class wins regardless.

    Returns
    -------
    mapping: :class:`MonotoneDiagonalMapping` or :any:`None` if the test fails.
    """
    if folded.pool.worker_count(workers) == 1:
        return next(accepting_mappings(P, Q, eps, metric, pruning), None)

    search = _Search(P, Q, eps, metric, pruning)
    if search.matching({}) is None:
        return None
    classes = list(search.classes())
    for result in folded.pool.run(search.evaluate, classes, workers=workers):
        if isinstance(result, (folded.pool.Failed, folded.pool.Terminated)):
            raise RuntimeError(f"Class evaluation failed: {result!r}")
        if result is not None:
            return result
    return None


def _overlap_event(d, first, second, metric):
    """Smallest eps at which d can meet `first` no later than it meets `second`."""
    def gap(edge):
        return lambda t: point_segment_distance(d(t), edge, metric)
    g1 = gap(first)
    g2 = gap(second)
    peak = scipy.optimize.minimize_scalar(g1, bounds=(0.0, 1.0), method="bounded", options={"xatol": 1e-12}).x
    if g1(0.0) <= g1(peak):
        peak = 0.0

    def combined(t):
        return max(g1(min(t, peak)), g2(t))

    result = scipy.optimize.minimize_scalar(combined, bounds=(0.0, 1.0), method="bounded", options={"xatol": 1e-12})
    return min(result.fun, combined(0.0), combined(1.0))


def surface_critical_values(P, Q, metric=Metric.L2):
    """Values of eps at which the monotonicity test can change its answer.

    The union of boundary curve critical values, distances from diagonals to
    every interior edge of the target, and the values where the projected free
    intervals of two target edges start to admit a monotone choice.
    """
    metric = Metric.parse(metric)
    values = list(curve_critical_values(P.boundary_curve(), Q.boundary_curve(), metric))
    diagonals = DiagonalSet(P)
    edges = [Q.edge_segment(edge.index) for edge in Q.interior_edges]
    for diagonal in diagonals:
        for edge in edges:
            values.append(segment_distance(diagonal.segment, edge, metric))
        for first, second in itertools.permutations(edges, 2):
            values.append(_overlap_event(diagonal.segment, first, second, metric))
    return dedupe(values)


def minimize_monotonicity_eps(P, Q, metric=Metric.L2):
    """Smallest eps at which :func:`diagonal_monotonicity_test` succeeds.

    Binary search over :func:`surface_critical_values`.  If the result isn't
    tight, because the true minimum lies between two listed values, the
    search falls back to bisection and logs a diagnostic.
    """
    metric = Metric.parse(metric)

    def accepts(eps):
        return diagonal_monotonicity_test(P, Q, eps, metric) is not None

    values = surface_critical_values(P, Q, metric)
    lo, hi = 0, len(values) - 1
    if not accepts(values[hi] + TOLERANCE):
        log.warning(f"Monotonicity test rejects the largest critical value {values[hi]}; bisecting upward.")
        lower, upper = values[hi], max(2 * values[hi], 1.0)
        while not accepts(upper):
            lower, upper = upper, 2 * upper
        return _bisect(accepts, lower, upper)

    while lo < hi:
        middle = (lo + hi) // 2
        if accepts(values[middle] + TOLERANCE):
            hi = middle
        else:
            lo = middle + 1

    result = values[lo]
    below = result - 10 * TOLERANCE
    if lo > 0 and below > values[lo - 1] and accepts(below):
        log.warning(f"Critical value list is incomplete near {result}; refined by bisection.")
        return _bisect(accepts, values[lo - 1], below)
    return result


def _bisect(accepts, lower, upper, resolution=1e-9):
    """Refine an interval with a rejected `lower` and an accepted `upper` bound."""
    while upper - lower > resolution:
        middle = 0.5 * (lower + upper)
        if accepts(middle):
            upper = middle
        else:
            lower = middle
    return upper


def proper_intersection_order(mapping, edge):
    """Order in which the diagonals' images must cross an interior edge of the target.

    Non-crossing images must cross `edge` in the order their endpoints occur
    on the target boundary, walking counterclockwise from the edge's first
    vertex.  Endpoints with the same image are ordered by their position on
    the source boundary, measured from the point matched with that vertex.

    Parameters
    ----------
    mapping: :class:`MonotoneDiagonalMapping`, required
    edge: :class:`int`, required
        Interior edge index of the target.

    Returns
    -------
    order: :class:`list` of :class:`int`
        Indices of the diagonals that cross `edge`, first crossing nearest the edge's first vertex.
    """
    Q = mapping.Q
    record = Q.interior_edges[edge]
    count = len(Q.boundary)
    source_count = len(mapping.P.boundary)

    anchor = Q.boundary_position(record.vertices[0])
    lifted_anchor = mapping.matching.offset + ((anchor - mapping.matching.offset) % count)
    reference = mapping.matching.x_at(lifted_anchor)

    keys = []
    for index in mapping.crossing_diagonals(edge):
        placement = mapping.placements[index]
        (xu, yu), (xv, yv) = mapping.lifted[index]
        if Q.boundary_faces[placement.u.edge] in record.arc_faces:
            x, y = xu, yu
        else:
            x, y = xv, yv
        along = (y - anchor) % count
        if along > count - TOLERANCE:
            along = 0.0
        keys.append(((along, (x - reference) % source_count), index))
    return [index for key, index in sorted(keys)]


def witness_consistency(P, Q, matching, placements, sequences):
    """Check that placements and edge sequences follow from the boundary matching.

    The matching has to advance by one full period along both boundaries,
    every placement has to be the matching's image of its diagonal's
    endpoints, and every edge sequence has to be the dual tree path between
    the placement's host faces.

    Returns
    -------
    problems: :class:`list` of :class:`str`
    """
    f, g = P.boundary_curve(), Q.boundary_curve()
    problems = []
    if abs(matching.points[-1, 0] - matching.points[0, 0] - f.edge_count) > TOLERANCE:
        problems.append("boundary matching doesn't cover the source boundary")
    if abs(matching.points[-1, 1] - matching.points[0, 1] - g.edge_count) > TOLERANCE:
        problems.append("boundary matching doesn't cover the target boundary")

    diagonals = {diagonal.index: diagonal for diagonal in DiagonalSet(P)}
    for placement, sequence in zip(placements, sequences):
        diagonal = diagonals.get(placement.diagonal)
        if diagonal is None:
            problems.append(f"placement for unknown diagonal {placement.diagonal}")
            continue
        for position, image in ((diagonal.first, placement.u), (diagonal.second, placement.v)):
            expected = g(matching.y_at(position))
            if not numpy.allclose(Q.point(image), expected):
                problems.append(f"diagonal {diagonal.index} placement {tuple(image)} isn't the matching's image of boundary position {position}")
        if tuple(sequence) != tuple(shortest_path_edge_sequence(Q, placement.u, placement.v)):
            problems.append(f"diagonal {diagonal.index} path crosses {list(sequence)}, not the shortest path edge sequence")
    return problems


def verify_mapping(mapping):
    """Re-check every eps constraint of a witness from raw geometry.

    Returns
    -------
    problems: :class:`list` of :class:`str`
        Empty when the witness is valid.
    """
    P, Q = mapping.P, mapping.Q
    eps, metric = mapping.eps, mapping.metric
    problems = []
    for (x, y), gap in mapping.matching.violations(P.boundary_curve(), Q.boundary_curve(), eps, metric):
        problems.append(f"boundary pair ({x}, {y}) is {gap} apart")
    problems.extend(witness_consistency(P, Q, mapping.matching, mapping.placements, [path.sequence for path in mapping.paths]))

    for diagonal, placement, path in zip(DiagonalSet(P), mapping.placements, mapping.paths):
        if not numpy.allclose(path.points[0], Q.point(placement.u)) or not numpy.allclose(path.points[-1], Q.point(placement.v)):
            problems.append(f"diagonal {diagonal.index} path doesn't join its placement")
        value = frechet_segment_to_path(diagonal.segment, path.points, metric)
        if value > eps + TOLERANCE:
            problems.append(f"diagonal {diagonal.index} path is {value} from the diagonal")
        if numpy.any(numpy.diff(path.t) < -TOLERANCE):
            problems.append(f"diagonal {diagonal.index} crossings are not monotone")
    return problems


def convex_target_reduction_check(P, Q, metric=Metric.L2):
    """Compare the surface pipeline with the boundary curve distance for a convex target.

    Parameters
    ----------
    P: :class:`folded.surface.FoldedPolygon`, required
    Q: :class:`folded.surface.FoldedPolygon`, required
        Must consist of a single convex face.

    Returns
    -------
    surface: :class:`float`
        Result of :func:`minimize_monotonicity_eps`.
    boundary: :class:`float`
        Fréchet distance between the boundary curves.
    agrees: :class:`bool`
        True if the two agree within ten times :data:`folded.geometry.TOLERANCE`.
    """
    if len(Q.faces) != 1:
        raise ValueError(f"Expected a convex single-face target, got {len(Q.faces)} faces instead.")
    surface = minimize_monotonicity_eps(P, Q, metric)
    boundary = frechet_compute(P.boundary_curve(), Q.boundary_curve(), metric)
    return surface, boundary, abs(surface - boundary) <= 10 * TOLERANCE
