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

from behave import *

import folded.approx
import folded.fixtures
import folded.untangle
from folded.approx import ApproxResult

import test


@given(u'the instances {instances}')
def step_impl(context, instances):
    context.instances = eval(instances)


@when(u'approximating the distance using metric {metric}')
def step_impl(context, metric):
    metric = eval(metric)
    P, Q = context.surfaces
    context.approximation = folded.approx.approx_compute(P, Q, metric)


@when(u'approximating the distance in one orientation using metric {metric}')
def step_impl(context, metric):
    metric = eval(metric)
    P, Q = context.surfaces
    context.approximation = folded.approx.approx_compute(P, Q, metric, both=False)


@when(u'measuring tightness using metric {metric}')
def step_impl(context, metric):
    metric = eval(metric)
    context.report = folded.approx.approx_tightness_report(context.instances, metric)


@then(u'the approximation should be the interval {interval}')
def step_impl(context, interval):
    lower, upper = eval(interval)
    test.assert_almost_equal(context.approximation.eps_star, lower, places=6)
    test.assert_almost_equal(context.approximation.lower, lower, places=6)
    test.assert_almost_equal(context.approximation.upper, upper, places=5)


@then(u'the approximation should carry a witness from the {which} surface')
def step_impl(context, which):
    P, Q = context.surfaces
    witness = context.approximation.witness
    test.assert_is_not_none(witness)
    if which == "first":
        test.assert_false(context.approximation.swapped)
        test.assert_is(witness.P, P)
    else:
        test.assert_true(context.approximation.swapped)
        test.assert_is(witness.P, Q)


@then(u'the approximation should have no alternate orientation')
def step_impl(context):
    test.assert_is_none(context.approximation.alternate)


@then(u'the exact distance with resolution {resolution} should lie in the approximation')
def step_impl(context, resolution):
    resolution = eval(resolution)
    P, Q = context.surfaces
    exact = folded.untangle.fpt_compute(P, Q, context.approximation.witness.metric, resolution=resolution, lower=context.approximation.eps_star)
    test.assert_greater(exact, context.approximation.eps_star)
    test.assert_true(context.approximation.contains(exact))


@then(u'the tightness ratios should be {ratios}')
def step_impl(context, ratios):
    ratios = eval(ratios)
    test.assert_equal(len(context.report.ratios), len(ratios))
    for ratio, expected in zip(context.report.ratios, ratios):
        test.assert_almost_equal(ratio, expected, places=6)


@then(u'the tightness ratios should be within bounds')
def step_impl(context):
    test.assert_true(context.report.within_bounds)
    test.assert_less_equal(context.report.maximum, folded.approx.FACTOR)


@then(u'the ratio of {exact} to {eps_star} should be {ratio}')
def step_impl(context, exact, eps_star, ratio):
    exact = eval(exact)
    eps_star = eval(eps_star)
    ratio = eval(ratio)
    test.assert_equal(folded.approx.ratio(exact, eps_star), ratio)


@then(u'an approximation at {eps_star} should contain {value} is {result}')
def step_impl(context, eps_star, value, result):
    eps_star = eval(eps_star)
    value = eval(value)
    result = eval(result)
    test.assert_equal(ApproxResult(eps_star, None).contains(value), result)
