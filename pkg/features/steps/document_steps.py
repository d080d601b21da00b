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

import json

import numpy

from behave import *

import folded.decide
import folded.document
import folded.fixtures
import folded.surface
from folded.document import ParseError, RunReport
from folded.surface import InvalidSurface

import test


@then(u'dumping {document} should produce the lines {lines}')
def step_impl(context, document, lines):
    document = eval(document)
    lines = eval(lines)
    test.assert_equal(folded.document.dumps(document).split("\n"), lines + [""])


@then(u'loading {text} should produce {result}')
def step_impl(context, text, result):
    text = eval(text)
    result = eval(result)
    if isinstance(result, type) and issubclass(result, Exception):
        with test.assert_raises(result):
            folded.document.loads(text)
    else:
        test.assert_equal(folded.document.loads(text), result)


@then(u'parsing the surface document {text} should raise {error}')
def step_impl(context, text, error):
    text = eval(text)
    error = eval(error)
    with test.assert_raises(error):
        folded.document.parse_surface(text)


@then(u'parsing the dumped surface documents should produce the same surfaces')
def step_impl(context):
    for surface in context.surfaces:
        parsed = folded.document.parse_surface(folded.document.dumps(folded.document.surface_document(surface)))
        test.assert_equal(parsed.name, surface.name)
        test.assert_equal(parsed.faces, surface.faces)
        numpy.testing.assert_array_equal(parsed.vertices, surface.vertices)


@then(u'parsing the curve document {text} should produce {result}')
def step_impl(context, text, result):
    text = eval(text)
    result = eval(result)
    if isinstance(result, type) and issubclass(result, Exception):
        with test.assert_raises(result):
            folded.document.parse_curve(text)
    else:
        vertices, closed = result
        curve = folded.document.parse_curve(text)
        numpy.testing.assert_array_equal(curve.vertices, vertices)
        test.assert_equal(curve.closed, closed)
        test.assert_equal(folded.document.curve_document(curve), {"vertices": vertices, "closed": closed})


@when(u'summarizing the witness at {eps} using metric {metric}')
def step_impl(context, eps, metric):
    eps = eval(eps)
    metric = eval(metric)
    P, Q = context.surfaces
    mapping = folded.decide.diagonal_monotonicity_test(P, Q, eps, metric)
    test.assert_is_not_none(mapping)
    context.witness = folded.document.witness_document(mapping)


@then(u'the witness summary should verify')
def step_impl(context):
    test.assert_equal(folded.document.verify(context.witness, *context.surfaces), [])


@then(u'the witness summary should verify after a round trip through text')
def step_impl(context):
    witness = folded.document.loads(folded.document.dumps(context.witness))
    test.assert_equal(folded.document.verify(witness, *context.surfaces), [])


@then(u'the witness summary should fail verification with eps {eps}')
def step_impl(context, eps):
    eps = eval(eps)
    witness = dict(context.witness, eps=eps)
    problems = folded.document.verify(witness, *context.surfaces)
    test.assert_true(any(problem.startswith("boundary pair") for problem in problems))


@then(u'the witness summary should fail verification with a displaced path')
def step_impl(context):
    witness = json.loads(json.dumps(context.witness))
    witness["paths"][0]["points"][-1][2] += 0.5
    problems = folded.document.verify(witness, *context.surfaces)
    test.assert_true(any(problem.endswith("path doesn't join its placement") for problem in problems))


@then(u'verifying an empty summary should raise {error}')
def step_impl(context, error):
    error = eval(error)
    with test.assert_raises(error):
        folded.document.verify({}, *context.surfaces)


@given(u'a run report for {command} on {inputs} with result {result} and timing {timing}')
def step_impl(context, command, inputs, result, timing):
    context.report = RunReport(eval(command), eval(inputs), "l2", eval(result), timing=eval(timing))


@then(u'the run report text should contain {text}')
def step_impl(context, text):
    test.assert_in(eval(text), context.report.dumps())


@then(u'the run report text without timing should not contain {text}')
def step_impl(context, text):
    test.assert_not_in(eval(text), context.report.dumps(timing=False))


@then(u'the run report should survive a round trip through text')
def step_impl(context):
    report = RunReport.from_document(folded.document.loads(context.report.dumps()))
    test.assert_equal(report.to_document(), context.report.to_document())


@then(u'the witness summary should fail verification with a moved placement')
def step_impl(context):
    P, Q = context.surfaces
    witness = json.loads(json.dumps(context.witness))
    edge, param = witness["placements"][0]["u"]
    moved = [(edge + 1) % len(Q.boundary), param]
    witness["placements"][0]["u"] = moved
    witness["paths"][0]["points"][0] = Q.point(folded.surface.BoundaryPoint(*moved)).tolist()
    problems = folded.document.verify(witness, P, Q)
    test.assert_true(any("isn't the matching's image" in problem for problem in problems), msg=problems)


@then(u'the witness summary should fail verification with a shortened period')
def step_impl(context):
    witness = json.loads(json.dumps(context.witness))
    witness["matching"]["points"][-1][1] -= 1
    problems = folded.document.verify(witness, *context.surfaces)
    test.assert_in("boundary matching doesn't cover the target boundary", problems)
