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

import folded.geometry
from folded.geometry import Interval, Metric, Segment

import oracles
import test


def as_interval(value):
    if value is None:
        return Interval.empty_interval()
    return Interval(*value)


@given(u'a random number generator with seed {seed}')
def step_impl(context, seed):
    seed = eval(seed)
    context.generator = numpy.random.default_rng(seed=seed)


@given(u'a segment from {a} to {b}')
def step_impl(context, a, b):
    a = eval(a)
    b = eval(b)
    if "segments" not in context:
        context.segments = []
    context.segments.append(Segment(a, b))


@given(u'the interval chain {chain}')
def step_impl(context, chain):
    chain = eval(chain)
    context.chain = [as_interval(interval) for interval in chain]


@when(u'computing the parameters within {eps} of {p} using metric {metric}')
def step_impl(context, eps, p, metric):
    eps = eval(eps)
    p = eval(p)
    metric = eval(metric)
    context.interval = folded.geometry.segment_point_interval(context.segments[-1], p, eps, metric)


@when(u'computing the parameters of the first segment within {eps} of the second using metric {metric}')
def step_impl(context, eps, metric):
    eps = eval(eps)
    metric = eval(metric)
    context.interval = folded.geometry.segment_projection_interval(context.segments[0], context.segments[1], eps, metric)


@then(u'the parameters should be {interval}')
def step_impl(context, interval):
    interval = eval(interval)
    if interval is None:
        test.assert_true(context.interval.empty, msg=f"{context.interval} isn't empty")
    else:
        test.assert_false(context.interval.empty)
        test.assert_almost_equal(context.interval.lo, interval[0], places=6)
        test.assert_almost_equal(context.interval.hi, interval[1], places=6)


@then(u'{count} random point intervals using metric {metric} should agree with dense sampling')
def step_impl(context, count, metric):
    count = eval(count)
    metric = Metric.parse(eval(metric))
    for index in range(count):
        segment = Segment(context.generator.uniform(-1, 1, size=3), context.generator.uniform(-1, 1, size=3))
        p = context.generator.uniform(-1, 1, size=3)
        eps = context.generator.uniform(0.1, 1.5)
        interval = folded.geometry.segment_point_interval(segment, p, eps, metric)
        inside = oracles.sampled_point_interval(segment, p, eps - 1e-6, metric)
        for t in inside:
            test.assert_true(interval.contains(t, 1e-6), msg=f"{t} missing from {interval}")
        if not interval.empty:
            for t in (interval.lo, interval.hi):
                test.assert_true(folded.geometry.distance(segment(t), p, metric) <= eps + 1e-6)


@then(u'the distance between the segments using metric {metric} should be {distance}')
def step_impl(context, metric, distance):
    metric = eval(metric)
    distance = eval(distance)
    first, second = context.segments
    test.assert_almost_equal(folded.geometry.segment_distance(first, second, metric), distance, places=7)
    test.assert_almost_equal(folded.geometry.segment_distance(second, first, metric), distance, places=7)


@then(u'the closest parameter to {p} using metric {metric} should be {t}')
def step_impl(context, p, metric, t):
    p = eval(p)
    metric = eval(metric)
    t = eval(t)
    test.assert_almost_equal(folded.geometry.closest_parameter(context.segments[-1], p, metric), t, places=9)


@then(u'the greedy choice should be {choice}')
def step_impl(context, choice):
    choice = eval(choice)
    result = folded.geometry.interval_chain_greedy(context.chain)
    if choice is None:
        test.assert_is_none(result)
    else:
        numpy.testing.assert_allclose(result, choice)


@then(u'the greedy choice should agree with the grid search')
def step_impl(context):
    expected = oracles.chain_selection_exists(context.chain)
    test.assert_equal(folded.geometry.interval_chain_greedy(context.chain) is not None, expected)


@then(u'the parameters equidistant from {p} and {q} using metric {metric} should be {expected}')
def step_impl(context, p, q, metric, expected):
    p = eval(p)
    q = eval(q)
    metric = eval(metric)
    expected = eval(expected)
    numpy.testing.assert_allclose(folded.geometry.equidistant_parameters(context.segments[-1], p, q, metric), expected, atol=1e-9)


@then(u'converting {value} to a point should produce {result}')
def step_impl(context, value, result):
    value = eval(value)
    result = eval(result)
    if isinstance(result, type) and issubclass(result, Exception):
        with test.assert_raises(result):
            folded.geometry.point(value)
    else:
        numpy.testing.assert_array_equal(folded.geometry.point(value), result)


@then(u'parsing the metric {name} should produce {metric}')
def step_impl(context, name, metric):
    name = eval(name)
    metric = eval(metric)
    if isinstance(metric, type) and issubclass(metric, Exception):
        with test.assert_raises(metric):
            Metric.parse(name)
    else:
        test.assert_is(Metric.parse(name), metric)


@then(u'the free space cell at {eps} using metric {metric} should be {cell}')
def step_impl(context, eps, metric, cell):
    eps = eval(eps)
    metric = eval(metric)
    cell = eval(cell)
    s1, s2 = context.segments[-2:]
    result = folded.geometry.free_space_cell(s1, s2, eps, metric)
    for side, interval in zip(result._fields, cell):
        actual = getattr(result, side)
        if interval is None:
            test.assert_true(actual.empty, msg=f"{side} {actual} isn't empty")
        else:
            test.assert_false(actual.empty, msg=f"{side} is empty")
            test.assert_almost_equal(actual.lo, interval[0], places=6)
            test.assert_almost_equal(actual.hi, interval[1], places=6)


@then(u'the parameters should end within {eps} of {p} using metric {metric}')
def step_impl(context, eps, p, metric):
    eps = eval(eps)
    p = eval(p)
    metric = eval(metric)
    test.assert_false(context.interval.empty)
    segment = context.segments[-1]
    for t in (context.interval.lo, context.interval.hi):
        test.assert_less_equal(folded.geometry.distance(segment(t), p, metric), eps + 1e-12)
