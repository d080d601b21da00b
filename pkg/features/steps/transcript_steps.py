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
import io
import logging

import numpy

from behave import *

import folded.curves
import folded.geometry
import folded.surface
import folded.transcript

import test


@contextlib.contextmanager
def transcription(context):
    folded.transcript.set_handler(folded.transcript.logger, context.handler)
    try:
        with folded.transcript.record():
            yield
    finally:
        folded.transcript.logger.removeHandler(context.handler)
    context.transcript = context.handler.stream.getvalue()


@given(u'a default code message handler')
def step_impl(context):
    buffer = io.StringIO()
    context.handler = folded.transcript.code_handler(logging.StreamHandler(buffer))


@given(u'a default trace message handler')
def step_impl(context):
    buffer = io.StringIO()
    context.handler = folded.transcript.trace_handler(logging.StreamHandler(buffer))


@when(u'transcription is enabled while finding the closest parameter to {p} on a segment from {a} to {b}')
def step_impl(context, p, a, b):
    p = eval(p)
    a = eval(a)
    b = eval(b)
    with transcription(context):
        folded.geometry.closest_parameter(folded.geometry.Segment(a, b), p)


@when(u'transcription is enabled while logging {message}')
def step_impl(context, message):
    message = eval(message)
    with transcription(context):
        folded.transcript.log(message)


@when(u'transcription is enabled while deciding an open curve through {f} against {g} at {eps}')
def step_impl(context, f, g, eps):
    f = folded.curves.PolyCurve(eval(f))
    g = folded.curves.PolyCurve(eval(g))
    eps = eval(eps)
    with transcription(context):
        folded.curves.frechet_decide(f, g, eps)


@then(u'the transcript should contain {text}')
def step_impl(context, text):
    text = eval(text)
    test.assert_in(text, context.transcript)


@then(u'the transcript should not contain {text}')
def step_impl(context, text):
    text = eval(text)
    test.assert_not_in(text, context.transcript)


@then(u'the transcript should match {text}')
def step_impl(context, text):
    text = eval(text)
    test.assert_equal(context.transcript.strip(), text)


@then(u'the transcript can be executed without error')
def step_impl(context):
    exec(context.transcript, {"folded": folded, "numpy": numpy})


@then(u'checking that {lhs} equals {rhs} should pass is {result}')
def step_impl(context, lhs, rhs, result):
    lhs = eval(lhs)
    rhs = eval(rhs)
    result = eval(result)
    if result:
        folded.transcript.assert_equal(lhs, rhs)
    else:
        with test.assert_raises(AssertionError):
            folded.transcript.assert_equal(lhs, rhs)
