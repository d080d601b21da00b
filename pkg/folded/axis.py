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

"""Exact distances for axis-parallel folded polygons under the maximum norm.

When every diagonal and edge is parallel to a coordinate axis and distances
are measured with the maximum norm, a diagonal can be matched with the
geodesic between its placements whenever it can be matched with any path
that follows the same edge sequence.  Geodesics never cross, so the
monotonicity test becomes exact.
"""

import collections
import logging

import numpy

import folded.logger
from folded.decide import accepting_mappings, minimize_monotonicity_eps
from folded.geometry import TOLERANCE, Interval, Metric
from folded.segmatch import frechet_segment_to_path, match_segment_to_sequence
from folded.surface import LENGTH_TOLERANCE, geodesic_shortest_path, shortest_path_edge_sequence

log = folded.logger.Logger(logging.getLogger(__name__))

AXES = "xyz"


class CertificateError(ValueError):
    """Raised when an operation requires axis-parallel surfaces and gets something else.

    Parameters
    ----------
    certificate: :class:`AxisParallelCertificate`, required
    """
    def __init__(self, certificate):
        self.certificate = certificate
        failures = ", ".join(f"{surface} edge {edge}" for surface, edge in certificate.failures)
        super().__init__(f"Expected axis-parallel subdivisions, got skew segments instead: {failures}.")


class AxisParallelCertificate(object):
    """Axis of every subdivision segment of a group of surfaces.

    Attributes
    ----------
    segments: :class:`list`
        (surface label, edge index, axis) triples; the axis is "x", "y", "z"
        or :any:`None` for a skew segment.
    """
    def __init__(self, segments):
        self.segments = list(segments)

    def __bool__(self):
        return self.passed

    def __repr__(self):
        return f"AxisParallelCertificate(passed={self.passed}, failures={self.failures})"

    @property
    def failures(self):
        """(surface label, edge index) of every skew segment."""
        return [(surface, edge) for surface, edge, axis in self.segments if axis is None]

    @property
    def passed(self):
        return not self.failures


def segment_axis(segment):
    """Coordinate axis a segment is parallel to, or :any:`None`."""
    direction = segment.direction
    scale = max(1.0, float(numpy.max(numpy.abs(direction))))
    nonzero = numpy.flatnonzero(numpy.abs(direction) > TOLERANCE * scale)
    if len(nonzero) != 1:
        return None
    return AXES[nonzero[0]]


def is_axis_parallel(*surfaces, labels=None):
    """Check that every interior edge of every surface is axis-parallel.

    Parameters
    ----------
    surfaces: :class:`folded.surface.FoldedPolygon`, required
    labels: sequence of :class:`str`, optional
        Surface labels used in the certificate; defaults to "P", "Q", ...

    Returns
    -------
    certificate: :class:`AxisParallelCertificate`
    """
    if labels is None:
        labels = [chr(ord("P") + index) for index in range(len(surfaces))]
    segments = []
    for label, surface in zip(labels, surfaces):
        for edge in surface.interior_edges:
            segments.append((label, edge.index, segment_axis(surface.edge_segment(edge.index))))
    return AxisParallelCertificate(segments)


def _require(*surfaces):
    certificate = is_axis_parallel(*surfaces)
    if not certificate.passed:
        raise CertificateError(certificate)
    return certificate


def shortest_path_test(P, Q, eps):
    """Monotonicity test with every diagonal matched against its geodesic.

    Returns
    -------
    mapping: :class:`folded.decide.MonotoneDiagonalMapping` or :any:`None`
        The first accepting witness whose geodesics all stay within eps.
    """
    for mapping in accepting_mappings(P, Q, eps, Metric.LINF):
        for diagonal, placement in zip(mapping.diagonals, mapping.placements):
            geodesic = geodesic_shortest_path(Q, placement.u, placement.v)
            if frechet_segment_to_path(diagonal.segment, geodesic.points, Metric.LINF) > eps + LENGTH_TOLERANCE:
                log.debug(f"Diagonal {diagonal.index} is farther than {eps} from its geodesic.")
                break
        else:
            return mapping
    return None


def exact_axis_parallel(P, Q, certificate=None, resolution=1e-9):
    """Exact Fréchet distance between axis-parallel folded polygons under the maximum norm.

    Parameters
    ----------
    P, Q: :class:`folded.surface.FoldedPolygon`, required
    certificate: :class:`AxisParallelCertificate`, optional
        A passing certificate for both surfaces; computed when omitted.
    resolution: :class:`float`, optional
        Used only if geodesics disagree with the critical value search.

    Raises
    ------
    CertificateError: if either surface has a skew subdivision segment.
    """
    if certificate is None:
        certificate = _require(P, Q)
    elif not certificate.passed:
        raise CertificateError(certificate)

    def accepts(eps):
        return shortest_path_test(P, Q, eps) is not None

    lower = minimize_monotonicity_eps(P, Q, Metric.LINF)
    if accepts(lower + TOLERANCE):
        return lower

    log.warning(f"Geodesics reject the monotonicity optimum {lower}; searching upward.")
    step = max(lower, 1e-3)
    upper = lower + step
    while not accepts(upper):
        lower, step = upper, 2 * step
        upper = lower + step
    while upper - lower > resolution:
        middle = 0.5 * (lower + upper)
        if accepts(middle):
            upper = middle
        else:
            lower = middle
    return upper


class HalfSpace(collections.namedtuple("HalfSpace", ["axis", "sign", "offset"])):
    """Axis-aligned closed half-space {p : sign * (p[axis] - offset) <= 0}."""
    __slots__ = ()

    def contains(self, p, tolerance=0.0):
        return self.sign * (p[self.axis] - self.offset) <= tolerance

    def segment_interval(self, segment):
        """Parameters of `segment` that lie inside the half-space."""
        start = self.sign * (segment.a[self.axis] - self.offset)
        slope = self.sign * segment.direction[self.axis]
        if abs(slope) <= TOLERANCE:
            return Interval.unit() if start <= TOLERANCE else Interval.empty_interval()
        root = -start / slope
        if slope > 0:
            return Interval(0.0, min(1.0, root))
        return Interval(max(0.0, root), 1.0)


HalfspaceReport = collections.namedtuple("HalfspaceReport", ["samples", "inside", "violations"])
HalfspaceReport.__doc__ = """Outcome of :func:`halfspace_restriction_check`: paths sampled, paths inside the half-space, and offending geodesic points."""


def halfspace_restriction_check(Q, halfspace, a, b, samples=100, generator=None):
    """Check that geodesics stay in an axis-aligned half-space whenever some path does.

    Paths following the shortest path edge sequence from `a` to `b` are sampled
    with crossings chosen inside the half-space.  Such a path lies in the
    half-space when its endpoints do, since faces and half-spaces are convex.

    Parameters
    ----------
    Q: :class:`folded.surface.FoldedPolygon`, required
        Must be axis-parallel.
    halfspace: :class:`HalfSpace`, required
    a, b: :class:`folded.surface.BoundaryPoint`, required
    samples: :class:`int`, optional
    generator: :class:`numpy.random.Generator`, optional

    Returns
    -------
    report: :class:`HalfspaceReport`
    """
    _require(Q)
    if generator is None:
        generator = numpy.random.default_rng()
    sequence = shortest_path_edge_sequence(Q, a, b)
    start, end = Q.point(a), Q.point(b)
    windows = [halfspace.segment_interval(Q.edge_segment(edge)) for edge in sequence]

    inside = 0
    for sample in range(samples):
        crossings = []
        for edge, window in zip(sequence, windows):
            if window.empty:
                break
            if generator.random() < 0.25:
                s = window.lo if generator.random() < 0.5 else window.hi
            else:
                s = generator.uniform(window.lo, window.hi)
            crossings.append(Q.edge_segment(edge)(s))
        else:
            points = [start] + crossings + [end]
            if all(halfspace.contains(p, LENGTH_TOLERANCE) for p in points):
                inside += 1

    violations = []
    if inside:
        geodesic = geodesic_shortest_path(Q, a, b)
        violations = [p.tolist() for p in geodesic.points if not halfspace.contains(p, LENGTH_TOLERANCE)]
        if violations:
            log.error(f"Geodesic from {tuple(a)} to {tuple(b)} leaves {halfspace}.")
    return HalfspaceReport(samples, inside, violations)


EquivalenceCheck = collections.namedtuple("EquivalenceCheck", ["sequence_feasible", "geodesic_distance", "holds"])
EquivalenceCheck.__doc__ = """Outcome of :func:`shortest_vs_sequence_equivalence`."""


def shortest_vs_sequence_equivalence(Q, d, u, v, eps, metric=Metric.LINF):
    """Compare sequence-following feasibility with the geodesic's distance to `d`.

    Parameters
    ----------
    Q: :class:`folded.surface.FoldedPolygon`, required
    d: :class:`folded.geometry.Segment`, required
    u, v: :class:`folded.surface.BoundaryPoint`, required
    eps: :class:`float`, required
    metric: :class:`folded.geometry.Metric`, optional

    Returns
    -------
    check: :class:`EquivalenceCheck`
        `holds` is true if some path following the edge sequence is within eps
        exactly when the geodesic is.
    """
    metric = Metric.parse(metric)
    sequence = shortest_path_edge_sequence(Q, u, v)
    path = match_segment_to_sequence(d, [Q.edge_segment(edge) for edge in sequence], Q.point(u), Q.point(v), eps, metric, sequence=sequence)
    geodesic = geodesic_shortest_path(Q, u, v)
    value = frechet_segment_to_path(d, geodesic.points, metric)
    feasible = path is not None
    return EquivalenceCheck(feasible, value, feasible == (value <= eps + LENGTH_TOLERANCE))
