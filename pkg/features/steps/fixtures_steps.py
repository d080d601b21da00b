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
import folded.fixtures

import test


@when(u'generating the fixture {name} with seed {seed} and {faces} faces')
def step_impl(context, name, seed, faces):
    context.fixture = (eval(name), eval(seed), eval(faces))
    context.surfaces = folded.fixtures.generate(*context.fixture)


@then(u'every cube pair claim should hold')
def step_impl(context):
    claims = folded.fixtures.cube_pair_claims(*context.surfaces)
    test.assert_equal(len(claims), 4)
    test.assert_equal([name for name, holds in claims.items() if not holds], [])


@then(u'the surface names should be {names}')
def step_impl(context, names):
    names = eval(names)
    test.assert_equal([surface.name for surface in context.surfaces], names)


@then(u'the fixture should contain {count} surfaces')
def step_impl(context, count):
    count = eval(count)
    test.assert_is_instance(context.surfaces, tuple)
    test.assert_equal(len(context.surfaces), count)


@then(u'generating the fixture again should produce the same vertices')
def step_impl(context):
    again = folded.fixtures.generate(*context.fixture)
    for first, second in zip(context.surfaces, again):
        numpy.testing.assert_array_equal(first.vertices, second.vertices)
        test.assert_equal(first.faces, second.faces)


@then(u'the surfaces should have the same faces')
def step_impl(context):
    P, Q = context.surfaces
    test.assert_equal(P.faces, Q.faces)


@then(u'the surfaces should have different vertices')
def step_impl(context):
    P, Q = context.surfaces
    test.assert_false(numpy.allclose(P.vertices, Q.vertices))


@then(u'evaluating {expression} should raise {error}')
def step_impl(context, expression, error):
    error = eval(error)
    with test.assert_raises(error):
        eval(expression)


@then(u'the surfaces should not be axis-parallel')
def step_impl(context):
    certificate = folded.axis.is_axis_parallel(*context.surfaces)
    test.assert_false(certificate)
    test.assert_equal(len(certificate.failures), len(context.surfaces[0].interior_edges))
