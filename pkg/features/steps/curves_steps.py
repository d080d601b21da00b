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

import folded.curves
from folded.curves import PolyCurve
from folded.geometry import Metric

import test


def append_curve(context, curve):
    if "curves" not in context:
        context.curves = []
    context.curves.append(curve)


@given(u'an open curve through {vertices}')
def step_impl(context, vertices):
    vertices = eval(vertices)
    append_curve(context, PolyCurve(vertices))


@given(u'a closed curve through {vertices}')
def step_impl(context, vertices):
    vertices = eval(vertices)
    append_curve(context, PolyCurve(vertices, closed=True))


@given(u'the boundary curves of the surfaces')
def step_impl(context):
    context.curves = [surface.boundary_curve() for surface in context.surfaces]


@then(u'the Fréchet distance between the curves using metric {metric} should be {distance}')
def step_impl(context, metric, distance):
    metric = eval(metric)
    distance = eval(distance)
    f, g = context.curves
    test.assert_almost_equal(folded.curves.frechet_compute(f, g, metric), distance, places=7)


@then(u'deciding the curves at {eps} using metric {metric} should accept')
def step_impl(context, eps, metric):
    eps = eval(eps)
    metric = eval(metric)
    f, g = context.curves
    test.assert_true(folded.curves.frechet_decide(f, g, eps + 1e-9, metric))


@then(u'deciding the curves at {eps} using metric {metric} should reject')
def step_impl(context, eps, metric):
    eps = eval(eps)
    metric = eval(metric)
    f, g = context.curves
    test.assert_false(folded.curves.frechet_decide(f, g, eps, metric))


@then(u'the closed matching at {eps} using metric {metric} should stay within distance')
def step_impl(context, eps, metric):
    eps = eval(eps)
    metric = eval(metric)
    f, g = context.curves
    matching = folded.curves.frechet_decide_closed(f, g, eps + 1e-9, metric)
    test.assert_is_not_none(matching)
    test.assert_equal(matching.violations(f, g, eps + 1e-6, metric), [])
    test.assert_almost_equal(matching.points[-1, 0] - matching.points[0, 0], f.edge_count)
    test.assert_true(numpy.all(numpy.diff(matching.points, axis=0) >= -1e-9))


@then(u'{count} random open curves using metric {metric} should be bounded by their discrete distances at {pieces} pieces')
def step_impl(context, count, metric, pieces):
    count = eval(count)
    metric = Metric.parse(eval(metric))
    pieces = eval(pieces)
    for index in range(count):
        f = PolyCurve(context.generator.uniform(0, 1, size=(4, 3)))
        g = PolyCurve(context.generator.uniform(0, 1, size=(3, 3)))
        value = folded.curves.frechet_compute(f, g, metric)
        p = folded.curves.subsample(f, pieces)
        q = folded.curves.subsample(g, pieces)
        discrete = folded.curves.discrete_frechet(p, q, metric)
        longest = max(metric.norm(numpy.diff(p, axis=0), axis=1).max(), metric.norm(numpy.diff(q, axis=0), axis=1).max())
        test.assert_less_equal(value, discrete + 1e-7)
        test.assert_less_equal(discrete, value + longest + 1e-7)


@then(u'creating a curve through {vertices} should raise {error}')
def step_impl(context, vertices, error):
    vertices = eval(vertices)
    error = eval(error)
    with test.assert_raises(error):
        PolyCurve(vertices)


@then(u'{count} random open curve pairs using metric {metric} should have the distance found by bisection')
def step_impl(context, count, metric):
    count = eval(count)
    metric = Metric.parse(eval(metric))
    for index in range(count):
        f = PolyCurve(context.generator.uniform(0, 1, size=(3, 3)))
        g = PolyCurve(context.generator.uniform(0, 1, size=(4, 3)))
        value = folded.curves.frechet_compute(f, g, metric)
        values = folded.curves.curve_critical_values(f, g, metric)
        test.assert_in(value, values)

        lower = 0.0
        upper = metric.norm(f.vertices[:, None, :] - g.vertices[None, :, :], axis=2).max()
        for iteration in range(60):
            middle = (lower + upper) / 2
            if folded.curves.frechet_decide(f, g, middle, metric):
                upper = middle
            else:
                lower = middle
        test.assert_almost_equal(value, upper, delta=1e-6)


@then(u'the open curve decision at {eps} should raise {error}')
def step_impl(context, eps, error):
    eps = eval(eps)
    error = eval(error)
    f, g = context.curves
    with test.assert_raises(error):
        folded.curves.frechet_decide_open(f, g, eps)
