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

import folded.fixtures
import folded.surface
from folded.surface import BoundaryPoint, FoldedPolygon, InvalidSurface

import test


@given(u'the surfaces from {expression}')
def step_impl(context, expression):
    result = eval(expression)
    context.probe = None
    if isinstance(result, FoldedPolygon):
        result = (result,)
    elif isinstance(result, folded.fixtures.FoldProbe):
        context.probe = result
        result = (result.surface,)
    context.surfaces = tuple(result)


@then(u'validating the raw surface {raw} should report {violation}')
def step_impl(context, raw, violation):
    raw = eval(raw)
    violation = eval(violation)
    with test.assert_raises(InvalidSurface) as caught:
        folded.surface.validate(raw)
    test.assert_in(violation, caught.exception.violations)


@then(u'every surface should have {faces} faces and {diagonals} diagonals')
def step_impl(context, faces, diagonals):
    faces = eval(faces)
    diagonals = eval(diagonals)
    for surface in context.surfaces:
        test.assert_equal(len(surface.faces), faces)
        test.assert_equal(len(surface.interior_edges), diagonals)
        test.assert_equal(surface.dual.number_of_edges(), diagonals)


@then(u'the boundary position {position} with {count} edges should be {point}')
def step_impl(context, position, count, point):
    position = eval(position)
    count = eval(count)
    point = eval(point)
    result = BoundaryPoint.from_position(position, count)
    test.assert_equal(result.edge, point[0])
    test.assert_almost_equal(result.param, point[1])


@then(u'checking the boundary point {p} should raise {error}')
def step_impl(context, p, error):
    p = eval(p)
    error = eval(error)
    with test.assert_raises(error):
        context.surfaces[0].check_boundary_point(p)


@then(u'the boundary point {p} should be at {coordinates}')
def step_impl(context, p, coordinates):
    p = eval(p)
    coordinates = eval(coordinates)
    numpy.testing.assert_allclose(context.surfaces[0].point(p), coordinates)


@then(u'the edge sequence from {u} to {v} should be {sequence}')
def step_impl(context, u, v, sequence):
    u = eval(u)
    v = eval(v)
    sequence = eval(sequence)
    test.assert_equal(folded.surface.shortest_path_edge_sequence(context.surfaces[0], u, v), sequence)


@then(u'the edge tree rooted at {root} should be {children}')
def step_impl(context, root, children):
    root = eval(root)
    children = eval(children)
    test.assert_equal(context.surfaces[0].edge_tree(root), children)


@then(u'the geodesic from {u} to {v} should have length {length} and cross edges {sequence} at {parameters}')
def step_impl(context, u, v, length, sequence, parameters):
    u = eval(u)
    v = eval(v)
    length = eval(length)
    sequence = eval(sequence)
    parameters = eval(parameters)
    path = folded.surface.geodesic_shortest_path(context.surfaces[0], u, v)
    test.assert_almost_equal(path.length, length, places=6)
    test.assert_equal(path.sequence, sequence)
    numpy.testing.assert_allclose(path.parameters, parameters, atol=1e-4)


@then(u'unfolding the probe should give length {length} crossing at {parameter}')
def step_impl(context, length, parameter):
    length = eval(length)
    parameter = eval(parameter)
    probe = context.probe
    result, crossing = folded.surface.unfold_two_faces(probe.surface, probe.u, probe.v)
    test.assert_almost_equal(result, length, places=9)
    test.assert_almost_equal(crossing, parameter, places=9)


@then(u'the geodesic of the probe should match the unfolding')
def step_impl(context):
    probe = context.probe
    length, crossing = folded.surface.unfold_two_faces(probe.surface, probe.u, probe.v)
    path = folded.surface.geodesic_shortest_path(probe.surface, probe.u, probe.v)
    test.assert_almost_equal(path.length, length, places=6)
    test.assert_almost_equal(path.parameters[0], crossing, places=4)


@then(u'unfolding from {u} to {v} should raise {error}')
def step_impl(context, u, v, error):
    u = eval(u)
    v = eval(v)
    error = eval(error)
    with test.assert_raises(error):
        folded.surface.unfold_two_faces(context.surfaces[0], u, v)


@then(u'every surface should validate to an identical surface')
def step_impl(context):
    for surface in context.surfaces:
        copy = folded.surface.validate(surface.to_document())
        numpy.testing.assert_array_equal(copy.vertices, surface.vertices)
        test.assert_equal(copy.faces, surface.faces)
        test.assert_equal(copy.boundary, surface.boundary)
        test.assert_equal([edge.vertices for edge in copy.interior_edges], [edge.vertices for edge in surface.interior_edges])
