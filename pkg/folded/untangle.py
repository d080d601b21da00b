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

"""Untangleability of diagonal images, and the exact fixed-parameter decision.

For a witness of the monotonicity test, the images of the diagonals can be
made pairwise non-crossing exactly when one convex system is feasible.  For
every interior edge e of the target and every diagonal i whose image crosses
it there are two variables: t[i,e], the diagonal parameter matched with the
crossing, and s[i,e], the crossing's parameter on e.  The constraints are

* distance: d_i(t[i,e]) is within eps of e(s[i,e]),
* order: along every edge, s follows the proper intersection order,
* monotonicity: along every diagonal, t is nondecreasing over its edge sequence,
* anchoring: the images' endpoints stay at their placements.

Systems are solved as "minimize the common slack gamma"; under the maximum
norm every constraint is linear and :func:`scipy.optimize.linprog` decides
feasibility exactly, while Euclidean systems use second order cones in
:mod:`cvxpy`.
"""

import collections
import logging
import os

import cvxpy
import numpy
import scipy.optimize

import folded.logger
from folded.decide import accepting_mappings, minimize_monotonicity_eps, proper_intersection_order
from folded.geometry import TOLERANCE, Metric, distance, interval_chain_greedy, segment_point_interval, segment_projection_interval

log = folded.logger.Logger(logging.getLogger(__name__))


class BoundaryIndeterminate(Exception):
    """Raised when a solve can't separate feasibility from infeasibility within tolerance.

    Parameters
    ----------
    certificate: :class:`Certificate`, required
    """
    def __init__(self, certificate):
        self.certificate = certificate
        super().__init__(f"Feasibility is indeterminate: slack {certificate.gap}, violation {certificate.violation}.")


class DistanceIndeterminate(Exception):
    """Raised when a distance search meets an indeterminate decision.

    Attributes
    ----------
    eps: :class:`float`
        Where the decision was indeterminate.
    lower: :class:`float`
        Largest value known to be rejected, or the monotonicity optimum.
    upper: :class:`float` or :any:`None`
        Smallest value known to be accepted, if any.
    certificate: :class:`Certificate`
    """
    def __init__(self, eps, lower, upper, certificate):
        self.eps = eps
        self.lower = lower
        self.upper = upper
        self.certificate = certificate
        bracket = f"at least {lower}" if upper is None else f"in [{lower}, {upper}]"
        super().__init__(f"Exact decision is indeterminate at eps={eps}; the distance lies {bracket}.")


def feasibility_tolerance(tolerance=None):
    """Tolerance used to declare systems feasible or infeasible.

    Falls back to the FOLDED_FEASIBILITY_TOLERANCE environment variable, then to 1e-6.
    """
    if tolerance is None:
        tolerance = float(os.environ.get("FOLDED_FEASIBILITY_TOLERANCE", 1e-6))
    if tolerance <= 0:
        raise ValueError(f"Expected a positive tolerance, got {tolerance} instead.")
    return tolerance


class Certificate(object):
    """Outcome of a convex feasibility solve.

    Attributes
    ----------
    status: :class:`str`
        One of "feasible", "infeasible" or "indeterminate".
    gap: :class:`float`
        Smallest common slack that makes every constraint hold.
    violation: :class:`float`
        Largest constraint violation of the returned point without slack.
    point: :class:`numpy.ndarray`
        Values of the model variables.
    binding: :class:`list` of :class:`str`
        Labels of the constraints that determine the slack.
    """
    def __init__(self, status, gap, violation, point, binding):
        self.status = status
        self.gap = gap
        self.violation = violation
        self.point = point
        self.binding = binding

    def __repr__(self):
        return f"Certificate(status={self.status!r}, gap={self.gap}, binding={self.binding})"

    @property
    def feasible(self):
        return self.status == "feasible"


class ConvexModel(object):
    """Variables with box bounds, linear rows and distance rows.

    Linear rows read :math:`\\sum_k c_k x_k \\le b`; distance rows read
    :math:`\\| base + \\sum_k v_k x_k \\| \\le \\epsilon`.

    Parameters
    ----------
    metric: :class:`folded.geometry.Metric`, required
    """
    def __init__(self, metric):
        self.metric = Metric.parse(metric)
        self.names = []
        self.lower = []
        self.upper = []
        self.linear = []
        self.distances = []

    def __len__(self):
        return len(self.names)

    def absorb(self, other):
        """Copy every variable and row of `other` into this model, returning the index offset."""
        offset = len(self.names)
        self.names += other.names
        self.lower += other.lower
        self.upper += other.upper
        for coefficients, bound, label in other.linear:
            self.linear.append(({index + offset: value for index, value in coefficients.items()}, bound, label))
        for base, terms, eps, label in other.distances:
            self.distances.append((base, {index + offset: value for index, value in terms.items()}, eps, label))
        return offset

    def add_distance(self, base, terms, eps, label):
        self.distances.append((numpy.asarray(base, dtype=float), {index: numpy.asarray(value, dtype=float) for index, value in terms.items()}, eps, label))

    def add_equal(self, first, second, label):
        self.add_linear({first: 1.0, second: -1.0}, 0.0, label)
        self.add_linear({first: -1.0, second: 1.0}, 0.0, label)

    def add_linear(self, coefficients, bound, label):
        self.linear.append((dict(coefficients), float(bound), label))

    def copy(self):
        result = ConvexModel(self.metric)
        result.absorb(self)
        return result

    def variable(self, name, lower=0.0, upper=1.0):
        self.names.append(name)
        self.lower.append(lower)
        self.upper.append(upper)
        return len(self.names) - 1

    def _residuals(self, x):
        """Constraint values minus their bounds at point `x`, with labels."""
        result = []
        for coefficients, bound, label in self.linear:
            result.append((sum(value * x[index] for index, value in coefficients.items()) - bound, label))
        for base, terms, eps, label in self.distances:
            vector = base + sum((value * x[index] for index, value in terms.items()), numpy.zeros(3))
            result.append((float(self.metric.norm(vector)) - eps, label))
        return result

    def _solve_linear(self, count):
        rows = []
        bounds = []
        for coefficients, bound, label in self.linear:
            row = numpy.zeros(count + 1)
            for index, value in coefficients.items():
                row[index] += value
            row[count] = -1.0
            rows.append(row)
            bounds.append(bound)
        for base, terms, eps, label in self.distances:
            for axis in range(3):
                for sign in (1.0, -1.0):
                    row = numpy.zeros(count + 1)
                    for index, value in terms.items():
                        row[index] += sign * value[axis]
                    row[count] = -1.0
                    rows.append(row)
                    bounds.append(eps - sign * base[axis])
        objective = numpy.zeros(count + 1)
        objective[count] = 1.0
        result = scipy.optimize.linprog(
            c=objective,
            A_ub=numpy.array(rows) if rows else None,
            b_ub=numpy.array(bounds) if rows else None,
            bounds=list(zip(self.lower, self.upper)) + [(0.0, None)],
            method="highs",
            )
        if not result.success: # pragma: no cover
            raise RuntimeError(f"Linear feasibility solve failed: {result.message}")
        return result.x[:count], float(result.x[count])

    def _solve_conic(self, count):
        x = cvxpy.Variable(count)
        gamma = cvxpy.Variable(nonneg=True)
        constraints = [x >= numpy.array(self.lower), x <= numpy.array(self.upper)]
        if self.linear:
            matrix = numpy.zeros((len(self.linear), count))
            bounds = numpy.zeros(len(self.linear))
            for row, (coefficients, bound, label) in enumerate(self.linear):
                for index, value in coefficients.items():
                    matrix[row, index] += value
                bounds[row] = bound
            constraints.append(matrix @ x - gamma <= bounds)
        for base, terms, eps, label in self.distances:
            matrix = numpy.zeros((3, count))
            for index, value in terms.items():
                matrix[:, index] += value
            constraints.append(cvxpy.norm(base + matrix @ x, 2) <= eps + gamma)
        problem = cvxpy.Problem(cvxpy.Minimize(gamma), constraints)
        problem.solve()
        if problem.status not in (cvxpy.OPTIMAL, cvxpy.OPTIMAL_INACCURATE): # pragma: no cover
            raise RuntimeError(f"Conic feasibility solve failed with status {problem.status}.")
        return numpy.clip(numpy.array(x.value, dtype=float), self.lower, self.upper), float(gamma.value)

    def solve(self, tolerance=None):
        """Minimize the common slack and classify the result.

        Returns
        -------
        certificate: :class:`Certificate`
        """
        tolerance = feasibility_tolerance(tolerance)
        count = len(self.names)

        if count == 0:
            x = numpy.zeros(0)
            residuals = self._residuals(x)
            gap = max([0.0] + [value for value, label in residuals])
        elif self.metric is Metric.LINF or not self.distances:
            x, gap = self._solve_linear(count)
            residuals = self._residuals(x)
        else:
            x, gap = self._solve_conic(count)
            residuals = self._residuals(x)

        violation = max([0.0] + [value for value, label in residuals])
        binding = [label for value, label in residuals if value >= gap - max(tolerance, 1e-7) and gap > tolerance]
        if violation <= tolerance:
            status = "feasible"
        elif gap > tolerance:
            status = "infeasible"
        else:
            status = "indeterminate"
        return Certificate(status, gap, violation, x, binding)


class PropagationSpace(object):
    """Convex set of t-values for a group of diagonals.

    The set is the projection of a :class:`ConvexModel` onto its exposed
    variables, one per diagonal.  Other model variables are existentially
    quantified.

    Parameters
    ----------
    model: :class:`ConvexModel`, required
    exposed: :class:`dict`, required
        Maps diagonal identifiers to model variable indices.
    edge: optional
        Edge the space belongs to.
    """
    def __init__(self, model, exposed, edge=None):
        self.model = model
        self.exposed = dict(exposed)
        self.edge = edge

    def __repr__(self):
        return f"PropagationSpace(edge={self.edge}, diagonals={sorted(self.exposed)})"

    @classmethod
    def box(cls, diagonals, metric=Metric.LINF, edge=None):
        """The unit box for `diagonals`."""
        model = ConvexModel(metric)
        exposed = {diagonal: model.variable(f"t[{diagonal}]") for diagonal in diagonals}
        return cls(model, exposed, edge)

    @classmethod
    def untangle(cls, segment, diagonals, eps, metric=Metric.L2, edge=None):
        """Untangleability space of one edge.

        Parameters
        ----------
        segment: :class:`folded.geometry.Segment`, required
            The edge.
        diagonals: sequence of (identifier, :class:`folded.geometry.Segment`) pairs, required
            Diagonals crossing the edge, in proper intersection order.
        eps: :class:`float`, required
        metric: :class:`folded.geometry.Metric`, optional
        """
        model = ConvexModel(metric)
        exposed = {}
        crossings = []
        for identifier, diagonal in diagonals:
            t = model.variable(f"t[{identifier},{edge}]")
            s = model.variable(f"s[{identifier},{edge}]")
            model.add_distance(diagonal.a - segment.a, {t: diagonal.direction, s: -segment.direction}, eps, f"edge {edge}: diagonal {identifier} within eps")
            exposed[identifier] = t
            crossings.append((identifier, s))
        for (first, s1), (second, s2) in zip(crossings, crossings[1:]):
            model.add_linear({s1: 1.0, s2: -1.0}, 0.0, f"edge {edge}: diagonal {first} crosses before diagonal {second}")
        return cls(model, exposed, edge)

    def contains(self, values, tolerance=None):
        """True if the point `values` (diagonal to t-value) lies in the space."""
        model = self.model.copy()
        for diagonal, value in values.items():
            index = self.exposed[diagonal]
            model.add_linear({index: 1.0}, value, f"t[{diagonal}] fixed")
            model.add_linear({index: -1.0}, -value, f"t[{diagonal}] fixed")
        return model.solve(tolerance).feasible

    def intersect(self, other, label="intersection"):
        """Intersection with `other`, identifying the t-values of shared diagonals."""
        model = self.model.copy()
        offset = model.absorb(other.model)
        exposed = dict(self.exposed)
        for diagonal, index in other.exposed.items():
            if diagonal in exposed:
                model.add_equal(exposed[diagonal], index + offset, f"{label}: diagonal {diagonal}")
            else:
                exposed[diagonal] = index + offset
        return PropagationSpace(model, exposed, self.edge)

    def nonempty(self, tolerance=None):
        return self.solve(tolerance).feasible

    def restrict(self, diagonal, lower=None, upper=None):
        """The subset whose t-value for `diagonal` lies within the given bounds."""
        model = self.model.copy()
        index = self.exposed[diagonal]
        if lower is not None:
            model.add_linear({index: -1.0}, -lower, f"t[{diagonal}] >= {lower}")
        if upper is not None:
            model.add_linear({index: 1.0}, upper, f"t[{diagonal}] <= {upper}")
        return PropagationSpace(model, self.exposed, self.edge)

    def solve(self, tolerance=None):
        return self.model.solve(tolerance)


def minkowski_ray_closure(space, directions):
    """Sum of `space` with a ray along each listed diagonal's t-axis.

    Parameters
    ----------
    space: :class:`PropagationSpace`, required
    directions: :class:`dict`, required
        Maps diagonals to -1 (close downward: every smaller t is added), +1
        (close upward) or 0 (keep the value).  Diagonals that aren't listed are
        projected out.

    Returns
    -------
    closure: :class:`PropagationSpace`
    """
    model = space.model.copy()
    exposed = {}
    for diagonal, direction in directions.items():
        original = space.exposed[diagonal]
        shifted = model.variable(f"ray[{diagonal}]")
        if direction < 0:
            model.add_linear({shifted: 1.0, original: -1.0}, 0.0, f"closure below diagonal {diagonal}")
        elif direction > 0:
            model.add_linear({original: 1.0, shifted: -1.0}, 0.0, f"closure above diagonal {diagonal}")
        else:
            model.add_equal(shifted, original, f"closure at diagonal {diagonal}")
        exposed[diagonal] = shifted
    return PropagationSpace(model, exposed, space.edge)


def untangle_space_feasible(segment, diagonals, eps, metric=Metric.L2, tolerance=None):
    """True if the diagonals can cross `segment` within eps, in the given order.

    Parameters
    ----------
    segment: :class:`folded.geometry.Segment`, required
    diagonals: sequence of :class:`folded.geometry.Segment`, required
        In proper intersection order.
    """
    space = PropagationSpace.untangle(segment, list(enumerate(diagonals)), eps, metric)
    return space.nonempty(tolerance)


def _edge_points(segment, diagonals, t, eps, metric):
    """Greedy crossing parameters on `segment` for the diagonal points at `t`, or :any:`None`."""
    chain = [segment_point_interval(segment, diagonal(value), eps, metric) for diagonal, value in zip(diagonals, t)]
    return interval_chain_greedy(chain, 0.0, 1.0)


ProbeReport = collections.namedtuple("ProbeReport", ["trials", "pairs", "violations"])
ProbeReport.__doc__ = """Outcome of :func:`convexity_probe`: trials run, feasible pairs found, and violating midpoints."""


def convexity_probe(segment, diagonals, eps, metric=Metric.L2, trials=100, generator=None):
    """Probe the convexity of an edge's untangleability space.

    For random feasible pairs of t-tuples a and c, the midpoint b = (a + c) / 2
    is checked two ways: the midpoints of the edge points found for a and c
    must serve b, and the greedy membership test must accept b.

    Parameters
    ----------
    segment: :class:`folded.geometry.Segment`, required
    diagonals: sequence of :class:`folded.geometry.Segment`, required
        In proper intersection order.
    eps: :class:`float`, required
    metric: :class:`folded.geometry.Metric`, optional
    trials: :class:`int`, optional
    generator: :class:`numpy.random.Generator`, optional

    Returns
    -------
    report: :class:`ProbeReport`
    """
    metric = Metric.parse(metric)
    if generator is None:
        generator = numpy.random.default_rng()
    windows = [segment_projection_interval(diagonal, segment, eps, metric) for diagonal in diagonals]
    if any(window.empty for window in windows):
        return ProbeReport(trials, 0, [])

    def sample():
        for attempt in range(100):
            t = numpy.array([generator.uniform(window.lo, window.hi) for window in windows])
            s = _edge_points(segment, diagonals, t, eps, metric)
            if s is not None:
                return t, numpy.array(s)
        return None, None

    pairs = 0
    violations = []
    for trial in range(trials):
        a, p = sample()
        c, r = sample()
        if a is None or c is None:
            continue
        pairs += 1
        b = 0.5 * (a + c)
        q = 0.5 * (p + r)
        constructed = all(distance(diagonal(tb), segment(qb), metric) <= eps + TOLERANCE for diagonal, tb, qb in zip(diagonals, b, q))
        constructed = constructed and bool(numpy.all(numpy.diff(q) >= -TOLERANCE))
        if not constructed or _edge_points(segment, diagonals, b, eps, metric) is None:
            violations.append((a.tolist(), c.tolist()))
    return ProbeReport(trials, pairs, violations)


def _anchoring(mapping, eps, metric):
    """Labels of placements whose endpoints are farther than eps from the diagonal's endpoints."""
    problems = []
    for index, (placement, path) in enumerate(zip(mapping.placements, mapping.paths)):
        segment = mapping.P.edge_segment(placement.diagonal)
        if distance(segment(0.0), mapping.Q.point(placement.u), metric) > eps + TOLERANCE:
            problems.append(f"diagonal {index} start")
        if distance(segment(1.0), mapping.Q.point(placement.v), metric) > eps + TOLERANCE:
            problems.append(f"diagonal {index} end")
    return problems


def _diagonal_segments(mapping, order):
    return [(index, mapping.P.edge_segment(mapping.placements[index].diagonal)) for index in order]


class UntangleSystem(object):
    """The global untangling system of a witness.

    Attributes
    ----------
    model: :class:`ConvexModel`
    t: :class:`dict`
        Maps (diagonal, edge) pairs to the model index of the diagonal parameter.
    s: :class:`dict`
        Maps (diagonal, edge) pairs to the model index of the edge parameter.
    """
    def __init__(self, model, t, s):
        self.model = model
        self.t = t
        self.s = s

    @classmethod
    def build(cls, Q, mapping, eps=None, metric=None):
        """Assemble the system for `mapping`; eps and metric default to the mapping's."""
        eps = mapping.eps if eps is None else eps
        metric = mapping.metric if metric is None else Metric.parse(metric)

        model = ConvexModel(metric)
        t = {}
        s = {}
        for edge in Q.interior_edges:
            order = proper_intersection_order(mapping, edge.index)
            space = PropagationSpace.untangle(Q.edge_segment(edge.index), _diagonal_segments(mapping, order), eps, metric, edge=edge.index)
            offset = model.absorb(space.model)
            for index, variable in space.exposed.items():
                t[(index, edge.index)] = variable + offset
                s[(index, edge.index)] = variable + offset + 1

        for index, path in enumerate(mapping.paths):
            for first, second in zip(path.sequence, path.sequence[1:]):
                model.add_linear({t[(index, first)]: 1.0, t[(index, second)]: -1.0}, 0.0, f"diagonal {index}: edge {first} before edge {second}")

        for label in _anchoring(mapping, eps, metric):
            model.add_linear({}, -1.0, f"{label} anchored")
        return cls(model, t, s)

    def solve(self, tolerance=None):
        """Returns the :class:`Certificate` of the system."""
        return self.model.solve(tolerance)

    def values(self, certificate):
        """Map (diagonal, edge) pairs to the (t, s) values of a certificate's point."""
        return {key: (float(certificate.point[self.t[key]]), float(certificate.point[self.s[key]])) for key in self.t}


def untangle_certificate(Q, mapping, eps=None, metric=None, tolerance=None):
    """Solve the global untangling system, returning its :class:`Certificate`."""
    return UntangleSystem.build(Q, mapping, eps, metric).solve(tolerance)


def global_untangle_feasible(Q, mapping, eps=None, metric=None, tolerance=None):
    """True if the images of a witness can be untangled within eps.

    Raises
    ------
    BoundaryIndeterminate: if the solve is inconclusive within the feasibility tolerance.
    """
    certificate = untangle_certificate(Q, mapping, eps, metric, tolerance)
    if certificate.status == "indeterminate":
        log.warning(f"Untangling is indeterminate at eps={mapping.eps if eps is None else eps}: slack {certificate.gap}.")
        raise BoundaryIndeterminate(certificate)
    if not certificate.feasible:
        log.debug(f"Untangling fails; binding constraints: {certificate.binding}")
    return certificate.feasible


def propagate_edge_tree(Q, mapping, eps=None, metric=None, root=None, tolerance=None):
    """Decide untangleability by propagating constraints up the tree of interior edges.

    Each edge's space is its untangleability space intersected with the ray
    closures of its children's spaces; diagonals that cross two children but
    not the edge itself are ordered where the children meet.

    Parameters
    ----------
    Q: :class:`folded.surface.FoldedPolygon`, required
    mapping: :class:`folded.decide.MonotoneDiagonalMapping`, required
    eps: :class:`float`, optional
        Defaults to the mapping's eps.
    metric: :class:`folded.geometry.Metric`, optional
        Defaults to the mapping's metric.
    root: :class:`int`, optional
        Root edge, defaults to the first interior edge.
    tolerance: :class:`float`, optional
    """
    eps = mapping.eps if eps is None else eps
    metric = mapping.metric if metric is None else Metric.parse(metric)
    if _anchoring(mapping, eps, metric):
        return False
    if not Q.interior_edges:
        return True
    root = Q.interior_edges[0].index if root is None else root

    tree = Q.edge_tree(root)
    sequences = [path.sequence for path in mapping.paths]

    def build(edge):
        order = proper_intersection_order(mapping, edge)
        space = PropagationSpace.untangle(Q.edge_segment(edge), _diagonal_segments(mapping, order), eps, metric, edge=edge)
        children = [child for child, face in tree[edge]]
        siblings = collections.defaultdict(list)
        for child in children:
            child_space = build(child)
            directions = {}
            for index in child_space.exposed:
                sequence = sequences[index]
                if index in space.exposed:
                    directions[index] = -1 if sequence.index(edge) < sequence.index(child) else 1
                elif sum(1 for other in children if other in sequence) > 1:
                    directions[index] = 0
            closure = minkowski_ray_closure(child_space, directions)
            offset = space.model.absorb(closure.model)
            for index, variable in closure.exposed.items():
                if index in space.exposed:
                    space.model.add_equal(space.exposed[index], variable + offset, f"edge {edge}: child {child} diagonal {index}")
                else:
                    siblings[index].append((sequences[index].index(child), variable + offset))
        for index, entries in siblings.items():
            entries.sort()
            for (first_position, first), (second_position, second) in zip(entries, entries[1:]):
                space.model.add_linear({first: 1.0, second: -1.0}, 0.0, f"edge {edge}: diagonal {index} sibling order")
        return space

    certificate = build(root).solve(tolerance)
    if certificate.status == "indeterminate":
        raise BoundaryIndeterminate(certificate)
    return certificate.feasible


def fpt_decide(P, Q, eps, metric=Metric.L2, tolerance=None):
    """Exact decision: true if some accepting witness can be untangled within eps.

    Every accepting combinatorial class is tried, in lexicographic order,
    because untangleability depends on the witness.  The cost grows
    exponentially with the number of diagonals.

    Raises
    ------
    BoundaryIndeterminate: if no class is feasible but at least one was inconclusive.
    """
    metric = Metric.parse(metric)
    inconclusive = None
    for mapping in accepting_mappings(P, Q, eps, metric):
        try:
            if global_untangle_feasible(Q, mapping, eps, metric, tolerance):
                return True
        except BoundaryIndeterminate as e:
            inconclusive = e
    if inconclusive is not None:
        raise inconclusive
    return False


def fpt_compute(P, Q, metric=Metric.L2, tolerance=None, resolution=1e-9, lower=None):
    """Smallest eps accepted by :func:`fpt_decide`, within `resolution`.

    The search starts at the monotonicity test optimum, a lower bound, doubles
    an upper bound until it is accepted, then bisects.  Pass `lower` when the
    optimum is already known.

    Raises
    ------
    DistanceIndeterminate: if a decision on the way is indeterminate; the
        exception carries the bracket established so far.
    """
    metric = Metric.parse(metric)

    def accepts(eps, lower, upper):
        try:
            return fpt_decide(P, Q, eps, metric, tolerance)
        except BoundaryIndeterminate as e:
            raise DistanceIndeterminate(eps, lower, upper, e.certificate)

    if lower is None:
        lower = minimize_monotonicity_eps(P, Q, metric)
    if accepts(lower + TOLERANCE, lower, None):
        return lower
    step = max(lower, 1e-3)
    upper = lower + step
    while not accepts(upper, lower, None):
        lower, step = upper, 2 * step
        upper = lower + step
    while upper - lower > resolution:
        middle = 0.5 * (lower + upper)
        if accepts(middle, lower, upper):
            upper = middle
        else:
            lower = middle
    return upper

