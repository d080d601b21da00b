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

import numpy

from behave import *

import folded.axis
import folded.document
import folded.fixtures
import folded.segmatch
import folded.surface
import folded.untangle
from folded.axis import CertificateError, HalfSpace
from folded.geometry import Metric, Segment
from folded.surface import BoundaryPoint

import test


@given(u'the random staircases with seed {seed} and {steps} steps')
def step_impl(context, seed, steps):
    seed = eval(seed)
    steps = eval(steps)
    generator = numpy.random.default_rng(seed=seed)
    context.surfaces = (folded.fixtures.random_staircase(generator, steps), folded.fixtures.random_staircase(generator, steps))


@then(u'the axis-parallel certificate should report failures {failures}')
def step_impl(context, failures):
    failures = eval(failures)
    certificate = folded.axis.is_axis_parallel(*context.surfaces)
    test.assert_equal(certificate.failures, failures)
    test.assert_equal(bool(certificate), not failures)


@then(u'the exact axis-parallel distance should raise {error}')
def step_impl(context, error):
    error = eval(error)
    P, Q = context.surfaces
    with test.assert_raises(error) as caught:
        folded.axis.exact_axis_parallel(P, Q)
    test.assert_true(caught.exception.certificate.failures)


@then(u'the exact axis-parallel distance should be {value}')
def step_impl(context, value):
    value = eval(value)
    P, Q = context.surfaces
    test.assert_almost_equal(folded.axis.exact_axis_parallel(P, Q), value, places=6)


@then(u'the exact axis-parallel distance should match the untangling distance')
def step_impl(context):
    P, Q = context.surfaces
    exact = folded.axis.exact_axis_parallel(P, Q)
    test.assert_almost_equal(folded.untangle.fpt_compute(P, Q, Metric.LINF), exact, delta=1e-5)


@then(u'the half-space {halfspace} should hold {segment} between {interval}')
def step_impl(context, halfspace, segment, interval):
    halfspace = HalfSpace(*eval(halfspace))
    segment = Segment(*eval(segment))
    interval = eval(interval)
    result = halfspace.segment_interval(segment)
    if interval is None:
        test.assert_true(result.empty)
    else:
        test.assert_almost_equal(result.lo, interval[0])
        test.assert_almost_equal(result.hi, interval[1])


@then(u'paths from {a} to {b} should stay in the half-space {halfspace}')
def step_impl(context, a, b, halfspace):
    a = BoundaryPoint(*eval(a))
    b = BoundaryPoint(*eval(b))
    halfspace = HalfSpace(*eval(halfspace))
    report = folded.axis.halfspace_restriction_check(context.surfaces[0], halfspace, a, b, samples=50, generator=numpy.random.default_rng(seed=1234))
    test.assert_equal(report.samples, 50)
    test.assert_greater(report.inside, 0)
    test.assert_equal(report.violations, [])


@then(u'the probe equivalence using metric {metric} should fail with a feasible sequence')
def step_impl(context, metric):
    metric = eval(metric)
    probe = context.probe
    check = folded.axis.shortest_vs_sequence_equivalence(probe.surface, probe.d, probe.u, probe.v, probe.eps, metric)
    test.assert_true(check.sequence_feasible)
    test.assert_greater(check.geodesic_distance, probe.eps)
    test.assert_false(check.holds)


@then(u'the shortest path test at {eps} should accept')
def step_impl(context, eps):
    eps = eval(eps)
    P, Q = context.surfaces
    mapping = folded.axis.shortest_path_test(P, Q, eps)
    test.assert_is_not_none(mapping)
    test.assert_equal(folded.document.verify(folded.document.witness_document(mapping), P, Q), [])


@then(u'the shortest path test at {eps} should reject')
def step_impl(context, eps):
    eps = eval(eps)
    P, Q = context.surfaces
    test.assert_is_none(folded.axis.shortest_path_test(P, Q, eps))


def random_boundary_point(generator, surface):
    return BoundaryPoint(int(generator.integers(len(surface.boundary))), float(generator.uniform(0, 1)))


@then(u'{count} random staircase pairs with {steps} steps should have exact distances matching the untangling distance')
def step_impl(context, count, steps):
    count = eval(count)
    steps = eval(steps)
    compared = 0
    for index in range(count):
        P = folded.fixtures.random_staircase(context.generator, steps)
        Q = folded.fixtures.random_staircase(context.generator, steps)
        exact = folded.axis.exact_axis_parallel(P, Q)
        try:
            untangled = folded.untangle.fpt_compute(P, Q, Metric.LINF)
        except folded.untangle.DistanceIndeterminate as e:
            test.assert_less_equal(e.lower, exact + 1e-6)
            continue
        test.assert_almost_equal(untangled, exact, delta=1e-6)
        compared += 1
    test.assert_greater(compared, count // 2)


@then(u'{count} random staircases should keep geodesics in half-spaces that hold a sampled path')
def step_impl(context, count):
    count = eval(count)
    generator = context.generator
    held = 0
    for index in range(count):
        Q = folded.fixtures.random_staircase(generator, int(generator.integers(2, 5)))
        a = random_boundary_point(generator, Q)
        b = random_boundary_point(generator, Q)
        axis = int(generator.integers(3))
        sign = int(generator.choice([-1, 1]))
        # Geodesic crossings along y are approximate, so y boundaries keep a margin.
        margin = generator.uniform(0.05, 0.5) if axis == 1 or generator.random() < 0.5 else 0.0
        ends = [Q.point(a)[axis], Q.point(b)[axis]]
        offset = max(ends) + margin if sign > 0 else min(ends) - margin
        report = folded.axis.halfspace_restriction_check(Q, HalfSpace(axis, sign, offset), a, b, samples=20, generator=generator)
        test.assert_equal(report.violations, [], msg=f"instance {index}")
        held += bool(report.inside)
    test.assert_greater(held, 0)


@then(u'{count} random staircases should agree with their geodesics at sampled eps')
def step_impl(context, count):
    count = eval(count)
    generator = context.generator
    for index in range(count):
        P = folded.fixtures.random_staircase(generator, 2)
        Q = folded.fixtures.random_staircase(generator, int(generator.integers(2, 5)))
        d = P.edge_segment(P.interior_edges[0].index)
        u = random_boundary_point(generator, Q)
        v = random_boundary_point(generator, Q)
        geodesic = folded.surface.geodesic_shortest_path(Q, u, v)
        value = folded.segmatch.frechet_segment_to_path(d, geodesic.points, Metric.LINF)
        for factor in [0.5, 0.9, 1.1, 2.0]:
            check = folded.axis.shortest_vs_sequence_equivalence(Q, d, u, v, factor * value, Metric.LINF)
            test.assert_true(check.holds, msg=f"instance {index} at {factor} times {value}: {check}")
            test.assert_equal(check.sequence_feasible, factor > 1)
