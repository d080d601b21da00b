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

import contextlib
import itertools
import os
import unittest.mock

import numpy

from behave import *

import folded.approx
import folded.decide
import folded.fixtures
import folded.untangle
from folded.geometry import Metric, Segment
from folded.untangle import PropagationSpace

import oracles
import test


@contextlib.contextmanager
def environment(name, value):
    original = os.environ.get(name)
    if value is None:
        os.environ.pop(name, None)
    else:
        os.environ[name] = value
    try:
        yield
    finally:
        if original is None:
            os.environ.pop(name, None)
        else:
            os.environ[name] = original


def ordered(context, order):
    return [context.diagonals[index] for index in order]


@given(u'an edge from {a} to {b}')
def step_impl(context, a, b):
    a = eval(a)
    b = eval(b)
    context.edge = Segment(a, b)


@given(u'the diagonals {diagonals}')
def step_impl(context, diagonals):
    diagonals = eval(diagonals)
    context.diagonals = [Segment(a, b) for a, b in diagonals]


@then(u'with tolerance {tolerance} the diagonals should be untangleable in order {order} within {eps} using metric {metric}')
def step_impl(context, tolerance, order, eps, metric):
    tolerance = eval(tolerance)
    order = eval(order)
    eps = eval(eps)
    metric = eval(metric)
    test.assert_true(folded.untangle.untangle_space_feasible(context.edge, ordered(context, order), eps, metric, tolerance))


@then(u'the diagonals should be untangleable in order {order} within {eps} using metric {metric}')
def step_impl(context, order, eps, metric):
    order = eval(order)
    eps = eval(eps)
    metric = eval(metric)
    test.assert_true(folded.untangle.untangle_space_feasible(context.edge, ordered(context, order), eps, metric))


@then(u'the diagonals should not be untangleable in order {order} within {eps} using metric {metric}')
def step_impl(context, order, eps, metric):
    order = eval(order)
    eps = eval(eps)
    metric = eval(metric)
    space = PropagationSpace.untangle(context.edge, list(enumerate(ordered(context, order))), eps, metric)
    certificate = space.solve()
    test.assert_equal(certificate.status, "infeasible")
    test.assert_almost_equal(certificate.gap, 0.1, places=4)
    test.assert_true(certificate.binding)


@then(u'the space of the diagonals in order {order} within {eps} using metric {metric} should pass the convexity probe')
def step_impl(context, order, eps, metric):
    order = eval(order)
    eps = eval(eps)
    metric = eval(metric)
    report = folded.untangle.convexity_probe(context.edge, ordered(context, order), eps, metric, trials=50, generator=numpy.random.default_rng(seed=1234))
    test.assert_equal(report.trials, 50)
    test.assert_greater(report.pairs, 0)
    test.assert_equal(report.violations, [])


@then(u'{count} random untangling instances using metric {metric} should agree with the grid search')
def step_impl(context, count, metric):
    count = eval(count)
    metric = Metric.parse(eval(metric))
    generator = context.generator
    for index in range(count):
        edge = Segment(generator.uniform(-1, 1, size=3), generator.uniform(-1, 1, size=3))
        diagonals = []
        for s in sorted(generator.uniform(0, 1, size=2)):
            center = edge(s) + generator.uniform(-0.3, 0.3, size=3)
            direction = generator.uniform(-1, 1, size=3)
            diagonals.append(Segment(center - direction, center + direction))
        eps = generator.uniform(0.1, 0.5)
        if oracles.grid_untangle_feasible(edge, diagonals, eps, metric):
            test.assert_true(folded.untangle.untangle_space_feasible(edge, diagonals, eps, metric))
        report = folded.untangle.convexity_probe(edge, diagonals, eps, metric, trials=10, generator=generator)
        test.assert_equal(report.violations, [])


@given(u'the box for diagonals {diagonals}')
def step_impl(context, diagonals):
    diagonals = eval(diagonals)
    context.space = PropagationSpace.box(diagonals)


@when(u'restricting diagonal {diagonal} between {lower} and {upper}')
def step_impl(context, diagonal, lower, upper):
    diagonal = eval(diagonal)
    lower = eval(lower)
    upper = eval(upper)
    context.space = context.space.restrict(diagonal, lower, upper)


@when(u'closing the space with rays {directions}')
def step_impl(context, directions):
    directions = eval(directions)
    context.space = folded.untangle.minkowski_ray_closure(context.space, directions)


@when(u'intersecting with the box for diagonals {diagonals} with diagonal {diagonal} between {lower} and {upper}')
def step_impl(context, diagonals, diagonal, lower, upper):
    diagonals = eval(diagonals)
    diagonal = eval(diagonal)
    lower = eval(lower)
    upper = eval(upper)
    other = PropagationSpace.box(diagonals).restrict(diagonal, lower, upper)
    context.space = context.space.intersect(other)


@then(u'the space should contain {values}')
def step_impl(context, values):
    values = eval(values)
    test.assert_true(context.space.nonempty())
    test.assert_true(context.space.contains(values))


@then(u'the space should not contain {values}')
def step_impl(context, values):
    values = eval(values)
    test.assert_false(context.space.contains(values))


@then(u'the exact decision at {eps} using metric {metric} should be {result}')
def step_impl(context, eps, metric, result):
    eps = eval(eps)
    metric = eval(metric)
    result = eval(result)
    P, Q = context.surfaces
    test.assert_equal(folded.untangle.fpt_decide(P, Q, eps, metric), result)


@then(u'the global system and the edge tree should agree at {eps} using metric {metric}')
def step_impl(context, eps, metric):
    eps = eval(eps)
    metric = eval(metric)
    P, Q = context.surfaces
    mapping = folded.decide.diagonal_monotonicity_test(P, Q, eps, metric)
    test.assert_is_not_none(mapping)
    system = folded.untangle.UntangleSystem.build(Q, mapping)
    certificate = system.solve()
    test.assert_equal(certificate.feasible, folded.untangle.propagate_edge_tree(Q, mapping))
    test.assert_equal(certificate.feasible, folded.untangle.global_untangle_feasible(Q, mapping))
    if certificate.feasible:
        for t, s in system.values(certificate).values():
            test.assert_true(-1e-6 <= t <= 1 + 1e-6)
            test.assert_true(-1e-6 <= s <= 1 + 1e-6)


@then(u'the exact distance using metric {metric} with resolution {resolution} should be {value}')
def step_impl(context, metric, resolution, value):
    metric = eval(metric)
    resolution = eval(resolution)
    value = eval(value)
    P, Q = context.surfaces
    test.assert_almost_equal(folded.untangle.fpt_compute(P, Q, metric, resolution=resolution), value, delta=resolution)


@then(u'setting the feasibility tolerance variable to {value} should give {expected}')
def step_impl(context, value, expected):
    value = eval(value)
    expected = eval(expected)
    with environment("FOLDED_FEASIBILITY_TOLERANCE", value):
        if isinstance(expected, type) and issubclass(expected, Exception):
            with test.assert_raises(expected):
                folded.untangle.feasibility_tolerance()
        else:
            test.assert_almost_equal(folded.untangle.feasibility_tolerance(), expected)
            test.assert_almost_equal(folded.untangle.feasibility_tolerance(0.25), 0.25)


@given(u'every untangling solve is indeterminate')
def step_impl(context):
    certificate = folded.untangle.Certificate("indeterminate", 5e-7, 2e-6, numpy.zeros(0), [])

    def indeterminate(*args, **kwargs):
        raise folded.untangle.BoundaryIndeterminate(certificate)

    patcher = unittest.mock.patch("folded.untangle.global_untangle_feasible", side_effect=indeterminate)
    patcher.start()
    context.add_cleanup(patcher.stop)


@then(u'the exact distance using metric {metric} should be indeterminate above {lower}')
def step_impl(context, metric, lower):
    metric = eval(metric)
    lower = eval(lower)
    P, Q = context.surfaces
    with test.assert_raises(folded.untangle.DistanceIndeterminate) as caught:
        folded.untangle.fpt_compute(P, Q, metric)
    test.assert_almost_equal(caught.exception.lower, lower, places=6)
    test.assert_is_none(caught.exception.upper)
    test.assert_equal(caught.exception.certificate.status, "indeterminate")


@then(u'the tightness report using metric {metric} should list the instances {indices} as indeterminate')
def step_impl(context, metric, indices):
    metric = eval(metric)
    indices = eval(indices)
    report = folded.approx.approx_tightness_report([context.surfaces], metric)
    test.assert_equal(report.indeterminate, indices)
    test.assert_equal(report.entries, [])


def decided(function, *args, **kwargs):
    try:
        return function(*args, **kwargs)
    except folded.untangle.BoundaryIndeterminate:
        return None


@then(u'{count} random witnesses using metric {metric} should untangle alike from every root')
def step_impl(context, count, metric):
    count = eval(count)
    metric = Metric.parse(eval(metric))
    witnesses = 0
    for seed in itertools.count():
        if witnesses >= count:
            break
        test.assert_less_equal(seed, 10 * count)
        P, Q = folded.fixtures.random_pair(seed, 3)
        diameter = float(metric.norm(P.vertices[:, None, :] - Q.vertices[None, :, :], axis=2).max())
        for mapping in itertools.islice(folded.decide.accepting_mappings(P, Q, diameter, metric), 2):
            witnesses += 1
            for eps in [diameter, 0.5 * diameter, 0.25 * diameter]:
                expected = decided(folded.untangle.global_untangle_feasible, Q, mapping, eps)
                for edge in Q.interior_edges:
                    result = decided(folded.untangle.propagate_edge_tree, Q, mapping, eps, root=edge.index)
                    if expected is not None and result is not None:
                        test.assert_equal(result, expected, msg=f"seed {seed} eps {eps} root {edge.index}")
