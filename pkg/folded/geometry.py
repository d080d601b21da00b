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

"""Metric primitives, segments, intervals and free space cells.

Everything here is a pure function of immutable values.  Distances are
measured under either the Euclidean or the maximum norm (see :class:`Metric`),
and all feasibility comparisons are inclusive within :data:`TOLERANCE`.
"""

import collections
import enum
import logging
import math

import numpy
import scipy.optimize

log = logging.getLogger(__name__)

TOLERANCE = 1e-9
"""Absolute tolerance, in world units, for all geometric comparisons."""


class Metric(enum.Enum):
    """Norm used to measure distances between points."""
    L2 = "l2"
    LINF = "linf"

    @classmethod
    def parse(cls, value):
        """Convert a :class:`Metric` or its name (case-insensitive) to a :class:`Metric`.

        Raises
        ------
        ValueError: if `value` doesn't name a metric.
        """
        if isinstance(value, Metric):
            return value
        if isinstance(value, str):
            for metric in cls:
                if value.lower() == metric.value:
                    return metric
        raise ValueError(f"Expected l2 or linf, got {value!r} instead.")

    @property
    def order(self):
        """Order of the norm, suitable for :func:`numpy.linalg.norm`."""
        return 2 if self is Metric.L2 else numpy.inf

    def norm(self, vector, axis=None):
        """Length of `vector` under this metric."""
        return numpy.linalg.norm(vector, ord=self.order, axis=axis)


def point(value):
    """Convert `value` to a finite three dimensional point.

    Two-dimensional input is embedded in the plane z = 0.

    Raises
    ------
    ValueError: if `value` doesn't have two or three finite coordinates.
    """
    result = numpy.array(value, dtype=float)
    if result.shape == (2,):
        result = numpy.append(result, 0.0)
    if result.shape != (3,):
        raise ValueError(f"Expected a point with 2 or 3 coordinates, got {value!r} instead.")
    if not numpy.all(numpy.isfinite(result)):
        raise ValueError(f"Expected finite coordinates, got {value!r} instead.")
    result.setflags(write=False)
    return result


def distance(p, q, metric=Metric.L2):
    """Distance between points `p` and `q`."""
    metric = Metric.parse(metric)
    return float(metric.norm(numpy.subtract(p, q)))


class Segment(object):
    """Straight line segment parameterized as :math:`a + t(b - a)` for :math:`t \\in [0, 1]`.

    Degenerate segments with coincident endpoints are allowed.
    """
    __slots__ = ["_a", "_b"]

    def __init__(self, a, b):
        self._a = point(a)
        self._b = point(b)

    def __call__(self, t):
        return self._a + t * (self._b - self._a)

    def __eq__(self, other):
        return isinstance(other, Segment) and numpy.array_equal(self._a, other._a) and numpy.array_equal(self._b, other._b)

    def __hash__(self):
        return hash((tuple(self._a), tuple(self._b)))

    def __repr__(self):
        return f"Segment(a={self._a.tolist()}, b={self._b.tolist()})"

    @property
    def a(self):
        """Start point."""
        return self._a

    @property
    def b(self):
        """End point."""
        return self._b

    @property
    def degenerate(self):
        """True if the endpoints coincide within :data:`TOLERANCE`."""
        return self.length <= TOLERANCE

    @property
    def direction(self):
        """Vector from :attr:`a` to :attr:`b`."""
        return self._b - self._a

    @property
    def length(self):
        """Euclidean length."""
        return float(numpy.linalg.norm(self.direction))

    def reversed(self):
        """Return the same segment traversed from :attr:`b` to :attr:`a`."""
        return Segment(self._b, self._a)


class Interval(object):
    """Closed sub-interval :math:`[lo, hi]` of the unit interval, possibly empty."""
    __slots__ = ["_lo", "_hi"]

    def __init__(self, lo, hi):
        self._lo = float(lo)
        self._hi = float(hi)

    def __eq__(self, other):
        if not isinstance(other, Interval):
            return NotImplemented
        if self.empty and other.empty:
            return True
        return self._lo == other._lo and self._hi == other._hi

    def __repr__(self):
        if self.empty:
            return "Interval(empty)"
        return f"Interval({self._lo!r}, {self._hi!r})"

    @classmethod
    def empty_interval(cls):
        return cls(numpy.inf, -numpy.inf)

    @classmethod
    def unit(cls):
        return cls(0.0, 1.0)

    @property
    def empty(self):
        return self._lo > self._hi

    @property
    def hi(self):
        return self._hi

    @property
    def lo(self):
        return self._lo

    def contains(self, t, tolerance=0.0):
        """True if `t` lies in the interval, optionally widened by `tolerance`."""
        return (not self.empty) and self._lo - tolerance <= t <= self._hi + tolerance

    def intersection(self, other):
        return Interval(max(self._lo, other._lo), min(self._hi, other._hi))

    def shifted(self, offset):
        if self.empty:
            return self
        return Interval(self._lo + offset, self._hi + offset)


FreeSpaceCell = collections.namedtuple("FreeSpaceCell", ["left", "right", "bottom", "top"])
FreeSpaceCell.__doc__ = """Feasible sub-intervals of the four sides of a free space cell.

The cell's x axis follows the first segment and its y axis follows the
second.  `left` and `right` are intervals of y at x = 0 and x = 1, `bottom` and
`top` are intervals of x at y = 0 and y = 1.
"""


def _clamp(t):
    return min(max(t, 0.0), 1.0)


def segment_point_interval(s, p, eps, metric=Metric.L2):
    """Return the parameters `t` for which `s(t)` is within `eps` of `p`.

    The distance from `p` along a line is convex, so the result is a single
    (possibly empty) :class:`Interval`.

    Parameters
    ----------
    s: :class:`Segment`, required
    p: point, required
    eps: :class:`float`, required
        Non-negative distance threshold.
    metric: :class:`Metric`, optional

    Returns
    -------
    interval: :class:`Interval`
    """
    if eps < 0:
        raise ValueError(f"Expected non-negative eps, got {eps} instead.")
    metric = Metric.parse(metric)
    p = point(p)
    a = s.a
    direction = s.direction

    if s.degenerate:
        if distance(a, p, metric) <= eps + TOLERANCE:
            return Interval.unit()
        return Interval.empty_interval()

    if metric is Metric.L2:
        offset = a - p
        qa = float(numpy.dot(direction, direction))
        qb = 2.0 * float(numpy.dot(offset, direction))
        qc = float(numpy.dot(offset, offset)) - eps * eps
        discriminant = qb * qb - 4.0 * qa * qc
        if discriminant < -TOLERANCE:
            return Interval.empty_interval()
        # Tangency.
        if discriminant < 0:
            root = -qb / (2.0 * qa)
            lower, upper = root, root
        else:
            root = math.sqrt(discriminant)
            lower = (-qb - root) / (2.0 * qa)
            upper = (-qb + root) / (2.0 * qa)
        lo, hi = max(lower, 0.0), min(upper, 1.0)
        if lo > hi:
            # The feasible part of the line ends just outside the segment.
            gap = lo - hi
            if gap * math.sqrt(qa) <= TOLERANCE:
                t = 0.0 if upper < 0 else 1.0
                return Interval(t, t)
            return Interval.empty_interval()
        return Interval(lo, hi)

    lo, hi = 0.0, 1.0
    for k in range(3):
        if abs(direction[k]) <= TOLERANCE * TOLERANCE:
            if abs(a[k] - p[k]) > eps + TOLERANCE:
                return Interval.empty_interval()
            continue
        first = (p[k] - a[k] - eps) / direction[k]
        second = (p[k] - a[k] + eps) / direction[k]
        lo = max(lo, min(first, second))
        hi = min(hi, max(first, second))
    if lo > hi:
        # Touching the box within rounding.
        if (lo - hi) * float(numpy.max(numpy.abs(direction))) <= TOLERANCE:
            t = _clamp(0.5 * (lo + hi))
            return Interval(t, t)
        return Interval.empty_interval()
    return Interval(lo, hi)


def _linf_breakpoints(s, p):
    """Parameters where the maximum norm of s(t) - p can change slope."""
    a = s.a - p
    d = s.direction
    candidates = [0.0, 1.0]
    for k in range(3):
        if d[k] != 0:
            candidates.append(-a[k] / d[k])
        for l in range(k + 1, 3):
            for sign in (1.0, -1.0):
                denominator = d[k] - sign * d[l]
                if denominator != 0:
                    candidates.append((sign * a[l] - a[k]) / denominator)
    candidates = numpy.array(candidates)
    candidates = candidates[(candidates >= 0.0) & (candidates <= 1.0)]
    return numpy.unique(candidates)


def closest_parameter(s, p, metric=Metric.L2):
    """Return the parameter of a point of `s` closest to `p`.

    Under the maximum norm ties are broken toward the smallest parameter.
    """
    metric = Metric.parse(metric)
    p = point(p)
    if s.degenerate:
        return 0.0
    if metric is Metric.L2:
        direction = s.direction
        return _clamp(float(numpy.dot(p - s.a, direction) / numpy.dot(direction, direction)))

    candidates = _linf_breakpoints(s, p)
    values = numpy.max(numpy.abs(s.a[None, :] + candidates[:, None] * s.direction[None, :] - p[None, :]), axis=1)
    best = numpy.min(values)
    return float(candidates[numpy.flatnonzero(values <= best + TOLERANCE * 1e-3)[0]])


def point_segment_distance(p, s, metric=Metric.L2):
    """Distance from point `p` to the closest point of segment `s`."""
    return distance(p, s(closest_parameter(s, p, metric)), metric)


def _closest_parameters_l2(s1, s2):
    """Closest point parameters (t, u) between two segments under the Euclidean norm."""
    d1 = s1.direction
    d2 = s2.direction
    r = s1.a - s2.a
    a = float(numpy.dot(d1, d1))
    e = float(numpy.dot(d2, d2))
    f = float(numpy.dot(d2, r))

    if a <= TOLERANCE ** 2 and e <= TOLERANCE ** 2:
        return 0.0, 0.0
    if a <= TOLERANCE ** 2:
        return 0.0, _clamp(f / e)
    c = float(numpy.dot(d1, r))
    if e <= TOLERANCE ** 2:
        return _clamp(-c / a), 0.0

    b = float(numpy.dot(d1, d2))
    denominator = a * e - b * b
    t = _clamp((b * f - c * e) / denominator) if denominator > TOLERANCE ** 2 else 0.0
    u = (b * t + f) / e
    if u < 0.0:
        u = 0.0
        t = _clamp(-c / a)
    elif u > 1.0:
        u = 1.0
        t = _clamp((b - c) / a)
    return t, u


def segment_distance(s1, s2, metric=Metric.L2):
    """Smallest distance between any point of `s1` and any point of `s2`."""
    metric = Metric.parse(metric)
    if metric is Metric.L2:
        t, u = _closest_parameters_l2(s1, s2)
        return distance(s1(t), s2(u), metric)

    # min r subject to |s1(t) - s2(u)|_k <= r for every coordinate k.
    offset = s1.a - s2.a
    rows = []
    bounds = []
    for k in range(3):
        for sign in (1.0, -1.0):
            rows.append([sign * s1.direction[k], -sign * s2.direction[k], -1.0])
            bounds.append(-sign * offset[k])
    result = scipy.optimize.linprog(
        c=[0.0, 0.0, 1.0],
        A_ub=numpy.array(rows),
        b_ub=numpy.array(bounds),
        bounds=[(0.0, 1.0), (0.0, 1.0), (0.0, None)],
        method="highs",
        )
    if not result.success: # pragma: no cover
        raise RuntimeError(f"Segment distance solve failed: {result.message}")
    t, u, _ = result.x
    return distance(s1(_clamp(t)), s2(_clamp(u)), metric)


def segment_projection_interval(d, e, eps, metric=Metric.L2):
    """Return the parameters `t` for which `d(t)` is within `eps` of some point of `e`.

    This is the projection of the free space of `d` and `e` onto `d`.  The
    distance from `d(t)` to `e` is convex in `t`, so the result is a single
    :class:`Interval`.
    """
    metric = Metric.parse(metric)

    def gap(t):
        return point_segment_distance(d(t), e, metric) - eps

    if d.degenerate:
        return Interval.unit() if gap(0.0) <= TOLERANCE else Interval.empty_interval()

    if metric is Metric.L2:
        t_min, _ = _closest_parameters_l2(d, e)
    else:
        t_min = scipy.optimize.minimize_scalar(gap, bounds=(0.0, 1.0), method="bounded", options={"xatol": 1e-13}).x
        for candidate in (0.0, 1.0):
            if gap(candidate) < gap(t_min):
                t_min = candidate

    lowest = gap(t_min)
    if lowest > TOLERANCE:
        return Interval.empty_interval()
    if lowest > 0:
        return Interval(t_min, t_min)

    # Parallel segments give a flat minimum, so roots are taken half a tolerance up.
    def shifted(t):
        return gap(t) - 0.5 * TOLERANCE

    lo = 0.0 if shifted(0.0) <= 0 else scipy.optimize.brentq(shifted, 0.0, t_min, xtol=1e-15)
    hi = 1.0 if shifted(1.0) <= 0 else scipy.optimize.brentq(shifted, t_min, 1.0, xtol=1e-15)
    return Interval(lo, hi)


def free_space_cell(s1, s2, eps, metric=Metric.L2):
    """Compute the feasible boundary intervals of the free space cell of two segments.

    Parameters
    ----------
    s1: :class:`Segment`, required
        Segment along the cell's x axis.
    s2: :class:`Segment`, required
        Segment along the cell's y axis.
    eps: :class:`float`, required
    metric: :class:`Metric`, optional

    Returns
    -------
    cell: :class:`FreeSpaceCell`
    """
    return FreeSpaceCell(
        left=segment_point_interval(s2, s1.a, eps, metric),
        right=segment_point_interval(s2, s1.b, eps, metric),
        bottom=segment_point_interval(s1, s2.a, eps, metric),
        top=segment_point_interval(s1, s2.b, eps, metric),
        )


def interval_chain_greedy(chain, start=0.0, end=1.0):
    """Choose monotone parameters from a chain of intervals.

    Scans the chain from left to right, always choosing the smallest admissible
    parameter.  This finds a selection whenever one exists.

    Parameters
    ----------
    chain: sequence of :class:`Interval`, required
    start: :class:`float`, optional
        Lower bound for the first parameter.
    end: :class:`float`, optional
        Upper bound for the last parameter.

    Returns
    -------
    parameters: :class:`list` of :class:`float`, or :any:`None` if no monotone selection exists.
    """
    result = []
    t = start
    for interval in chain:
        if interval.empty:
            return None
        t = max(interval.lo, t)
        if t > interval.hi + TOLERANCE:
            return None
        result.append(t)
    if t > end + TOLERANCE:
        return None
    return result


def equidistant_parameters(s, p, q, metric=Metric.L2):
    """Return the parameters of points on `s` equidistant from `p` and `q`.

    Under the maximum norm the difference of the two distances is piecewise
    linear, so every sign change between breakpoints is solved exactly.  Runs of
    exact ties contribute their endpoints.
    """
    metric = Metric.parse(metric)
    p = point(p)
    q = point(q)
    if s.degenerate:
        return []

    if metric is Metric.L2:
        # |s(t) - p|^2 = |s(t) - q|^2 is linear in t.
        slope = 2.0 * float(numpy.dot(s.direction, q - p))
        intercept = float(numpy.dot(s.a - p, s.a - p) - numpy.dot(s.a - q, s.a - q))
        if abs(slope) <= TOLERANCE * TOLERANCE:
            return []
        t = -intercept / slope
        return [t] if 0.0 <= t <= 1.0 else []

    breakpoints = numpy.union1d(_linf_breakpoints(s, p), _linf_breakpoints(s, q))
    points = s.a[None, :] + breakpoints[:, None] * s.direction[None, :]
    values = numpy.max(numpy.abs(points - p), axis=1) - numpy.max(numpy.abs(points - q), axis=1)
    results = set()
    for index, value in enumerate(values):
        if abs(value) <= TOLERANCE:
            results.add(float(breakpoints[index]))
    for index in range(len(values) - 1):
        if values[index] * values[index + 1] < 0:
            lower, upper = breakpoints[index], breakpoints[index + 1]
            results.add(float(lower + (upper - lower) * values[index] / (values[index] - values[index + 1])))
    return sorted(results)
