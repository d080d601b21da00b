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

import folded.decide
import folded.fixtures
import folded.surface
from folded.decide import CombinatorialClass, DiagonalSet

import test


@when(u'running the monotonicity test at {eps} using metric {metric}')
def step_impl(context, eps, metric):
    eps = eval(eps)
    metric = eval(metric)
    P, Q = context.surfaces
    context.mapping = folded.decide.diagonal_monotonicity_test(P, Q, eps, metric)


@then(u'the test should accept')
def step_impl(context):
    test.assert_is_not_none(context.mapping)


@then(u'the test should reject')
def step_impl(context):
    test.assert_is_none(context.mapping)


@then(u'the witness should pass verification')
def step_impl(context):
    test.assert_equal(folded.decide.verify_mapping(context.mapping), [])
    P, Q = context.surfaces
    test.assert_equal(len(context.mapping.paths), len(P.interior_edges))


@then(u'every proper intersection order should rank the crossing diagonals')
def step_impl(context):
    Q = context.surfaces[1]
    for edge in Q.interior_edges:
        order = folded.decide.proper_intersection_order(context.mapping, edge.index)
        test.assert_equal(sorted(order), sorted(context.mapping.crossing_diagonals(edge.index)))


@then(u'the smallest accepted eps using metric {metric} should be {eps}')
def step_impl(context, metric, eps):
    metric = eval(metric)
    eps = eval(eps)
    P, Q = context.surfaces
    test.assert_almost_equal(folded.decide.minimize_monotonicity_eps(P, Q, metric), eps, places=6)


@then(u'the test without pruning at {eps} using metric {metric} should agree')
def step_impl(context, eps, metric):
    eps = eval(eps)
    metric = eval(metric)
    P, Q = context.surfaces
    mapping = folded.decide.diagonal_monotonicity_test(P, Q, eps, metric, pruning=False)
    test.assert_equal(mapping is None, context.mapping is None)


@then(u'the test with {workers} workers at {eps} using metric {metric} should produce the same class')
def step_impl(context, workers, eps, metric):
    workers = eval(workers)
    eps = eval(eps)
    metric = eval(metric)
    P, Q = context.surfaces
    mapping = folded.decide.diagonal_monotonicity_test(P, Q, eps, metric, workers=workers)
    test.assert_is_not_none(mapping)
    test.assert_equal(mapping.klass, context.mapping.klass)
    test.assert_equal(folded.decide.verify_mapping(mapping), [])


@then(u'the convex target check using metric {metric} should agree at {eps}')
def step_impl(context, metric, eps):
    metric = eval(metric)
    eps = eval(eps)
    P, Q = context.surfaces
    surface, boundary, agrees = folded.decide.convex_target_reduction_check(P, Q, metric)
    test.assert_true(agrees, msg=f"{surface} != {boundary}")
    test.assert_almost_equal(boundary, eps, places=7)


@then(u'the convex target check using metric {metric} should raise {error}')
def step_impl(context, metric, error):
    metric = eval(metric)
    error = eval(error)
    P, Q = context.surfaces
    with test.assert_raises(error):
        folded.decide.convex_target_reduction_check(P, Q, metric)


@then(u'the diagonal parents should be {parents}')
def step_impl(context, parents):
    parents = eval(parents)
    test.assert_equal(DiagonalSet(context.surfaces[0]).parents, parents)


@then(u'the diagonal endpoints should be {endpoints}')
def step_impl(context, endpoints):
    endpoints = eval(endpoints)
    test.assert_equal(DiagonalSet(context.surfaces[0]).endpoints(), endpoints)


@then(u'the class {hosts} should have column restrictions {allowed}')
def step_impl(context, hosts, allowed):
    hosts = eval(hosts)
    allowed = eval(allowed)
    test.assert_equal(CombinatorialClass(hosts).allowed(DiagonalSet(context.surfaces[0])), allowed)


@then(u'the accepting classes at {eps} using metric {metric} should be in lexicographic order')
def step_impl(context, eps, metric):
    eps = eval(eps)
    metric = eval(metric)
    P, Q = context.surfaces
    hosts = [mapping.klass.hosts for mapping in folded.decide.accepting_mappings(P, Q, eps, metric)]
    test.assert_greater(len(hosts), 0)
    test.assert_equal(hosts, sorted(hosts))


@then(u'the first accepting class at {eps} using metric {metric} should be the class the test reports')
def step_impl(context, eps, metric):
    eps = eval(eps)
    metric = eval(metric)
    P, Q = context.surfaces
    first = next(folded.decide.accepting_mappings(P, Q, eps, metric))
    mapping = folded.decide.diagonal_monotonicity_test(P, Q, eps, metric)
    test.assert_equal(first.klass, mapping.klass)


@then(u'the critical values of the surfaces using metric {metric} should include {value}')
def step_impl(context, metric, value):
    metric = eval(metric)
    value = eval(value)
    P, Q = context.surfaces
    values = folded.decide.surface_critical_values(P, Q, metric)
    test.assert_almost_equal(min(values, key=lambda candidate: abs(candidate - value)), value, places=7)
    test.assert_equal(values, sorted(values))


def random_convex_target(generator):
    count = int(generator.integers(3, 7))
    angles = numpy.sort(generator.uniform(0, 2 * numpy.pi, size=count))
    radius = generator.uniform(0.8, 1.2)
    vertices = numpy.column_stack((radius * numpy.cos(angles), radius * numpy.sin(angles), numpy.full(count, generator.uniform(-0.5, 0.5))))
    vertices += generator.uniform(-0.25, 0.25, size=3)
    return folded.surface.validate({"vertices": vertices.tolist(), "faces": [list(range(count))], "boundary": list(range(count))})


@then(u'{count} random folded polygons with convex targets using metric {metric} should reduce to their boundary distances')
def step_impl(context, count, metric):
    count = eval(count)
    metric = eval(metric)
    for index in range(count):
        P = folded.fixtures.random_folded(int(context.generator.integers(1 << 30)), int(context.generator.integers(2, 4)))
        Q = random_convex_target(context.generator)
        surface, boundary, agrees = folded.decide.convex_target_reduction_check(P, Q, metric)
        test.assert_almost_equal(surface, boundary, delta=1e-8, msg=f"instance {index}")
        test.assert_true(agrees)
