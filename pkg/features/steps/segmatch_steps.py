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

import folded.segmatch
from folded.geometry import Metric, Segment

import oracles
import test


def random_instance(generator):
    d = Segment(generator.uniform(-1, 1, size=3), generator.uniform(-1, 1, size=3))
    edges = []
    for t in sorted(generator.uniform(0, 1, size=3)):
        center = d(t) + generator.uniform(-0.4, 0.4, size=3)
        direction = generator.uniform(-0.5, 0.5, size=3)
        edges.append(Segment(center - direction, center + direction))
    u = d(0.0) + generator.uniform(-0.2, 0.2, size=3)
    v = d(1.0) + generator.uniform(-0.2, 0.2, size=3)
    eps = generator.uniform(0.2, 0.6)
    return d, edges, u, v, eps


@given(u'the edges {edges}')
def step_impl(context, edges):
    edges = eval(edges)
    context.edges = [Segment(a, b) for a, b in edges]


@when(u'matching the segment from {u} to {v} with eps {eps} using metric {metric}')
def step_impl(context, u, v, eps, metric):
    u = eval(u)
    v = eval(v)
    eps = eval(eps)
    metric = eval(metric)
    context.path = folded.segmatch.match_segment_to_sequence(context.segments[-1], context.edges, u, v, eps, metric)


@then(u'the crossings should be at {t} along the segment and {s} along the edges')
def step_impl(context, t, s):
    t = eval(t)
    s = eval(s)
    if t is None:
        test.assert_is_none(context.path)
        return
    test.assert_is_not_none(context.path)
    numpy.testing.assert_allclose(context.path.t, t, atol=1e-6)
    numpy.testing.assert_allclose(context.path.s, s, atol=1e-6)
    test.assert_equal(context.path.sequence, tuple(range(len(context.edges))))
    test.assert_equal(len(context.path.points), len(context.edges) + 2)


@then(u'{count} random matchings using metric {metric} should agree with the grid search')
def step_impl(context, count, metric):
    count = eval(count)
    metric = Metric.parse(eval(metric))
    for index in range(count):
        d, edges, u, v, eps = random_instance(context.generator)
        path = folded.segmatch.match_segment_to_sequence(d, edges, u, v, eps, metric)
        if oracles.grid_sequence_feasible(d, edges, u, v, eps, metric):
            test.assert_is_not_none(path)
        if path is not None:
            test.assert_true(numpy.all(numpy.diff(path.t) >= 0))
            test.assert_less_equal(folded.segmatch.frechet_segment_to_path(d, path.points, metric), eps + 1e-6)


@then(u'{count} random edge sequences using metric {metric} should stay feasible without their middle edge')
def step_impl(context, count, metric):
    count = eval(count)
    metric = Metric.parse(eval(metric))
    for index in range(count):
        d, edges, u, v, eps = random_instance(context.generator)
        full, sub = folded.segmatch.subsequence_feasibility(d, edges, [edges[0], edges[2]], u, v, eps, metric)
        if full:
            test.assert_true(sub)


@then(u'checking feasibility of the subsequence {sub} should raise {error}')
def step_impl(context, sub, error):
    sub = [Segment(a, b) for a, b in eval(sub)]
    error = eval(error)
    with test.assert_raises(error):
        folded.segmatch.subsequence_feasibility(context.segments[-1], context.edges, sub, (0, 0, 0), (3, 0, 0), 0.1)


@then(u'the distance to the polyline {points} using metric {metric} should be {distance}')
def step_impl(context, points, metric, distance):
    points = eval(points)
    metric = eval(metric)
    distance = eval(distance)
    test.assert_almost_equal(folded.segmatch.frechet_segment_to_path(context.segments[-1], points, metric), distance, places=7)
