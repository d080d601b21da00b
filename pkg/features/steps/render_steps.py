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

import folded.decide
import folded.fixtures
import folded.render

import test


@when(u'rendering the free space at {eps} using metric {metric}')
def step_impl(context, eps, metric):
    eps = eval(eps)
    metric = eval(metric)
    f, g = context.curves
    context.svg = folded.render.render_free_space(f, g, eps, metric).as_svg()


@when(u'rendering the surfaces with their witness at {eps} using metric {metric}')
def step_impl(context, eps, metric):
    eps = eval(eps)
    metric = eval(metric)
    P, Q = context.surfaces
    mapping = folded.decide.diagonal_monotonicity_test(P, Q, eps, metric)
    context.svg = folded.render.render_surfaces(P, Q, eps, metric, mapping).as_svg()


@when(u'rendering the crossings of the witness at {eps} using metric {metric}')
def step_impl(context, eps, metric):
    eps = eval(eps)
    metric = eval(metric)
    mapping = folded.decide.diagonal_monotonicity_test(*context.surfaces, eps, metric)
    test.assert_is_not_none(mapping)
    context.svg = folded.render.render_crossings(mapping).as_svg()


@then(u'the drawing should contain {texts}')
def step_impl(context, texts):
    for text in eval(texts):
        test.assert_in(text, context.svg)


@then(u'the drawing should not contain {texts}')
def step_impl(context, texts):
    for text in eval(texts):
        test.assert_not_in(text, context.svg)
