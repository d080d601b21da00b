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
import shlex
import tempfile
import unittest.mock

from behave import *

import folded
import folded.cli.main
import folded.cli.perf
import folded.document

import test


def run(context, arguments, program=folded.cli.main, name="folded"):
    if "directory" not in context:
        context.directory = tempfile.TemporaryDirectory()
        context.add_cleanup(context.directory.cleanup)
    arguments = arguments.replace("$TMP", context.directory.name)
    stdout = io.StringIO()
    status = 0
    with unittest.mock.patch("sys.argv", [name] + shlex.split(arguments)):
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(io.StringIO()):
            try:
                program.main()
            except SystemExit as e:
                status = e.code
    context.arguments = arguments
    context.status = status
    context.output = stdout.getvalue()


def report(context):
    return folded.document.loads(context.output)


@when(u'running folded with {arguments}')
def step_impl(context, arguments):
    run(context, eval(arguments))


@when(u'running folded-perf with {arguments}')
def step_impl(context, arguments):
    run(context, eval(arguments), folded.cli.perf, "folded-perf")


@when(u'running folded again with the same arguments')
def step_impl(context):
    context.first_output = context.output
    run(context, context.arguments)


@then(u'the exit status should be {status}')
def step_impl(context, status):
    status = eval(status)
    test.assert_equal(context.status, status)


@then(u'the report result {key} should be {value}')
def step_impl(context, key, value):
    key = eval(key)
    value = eval(value.replace("$TMP", context.directory.name))
    test.assert_equal(report(context)["result"][key], value)


@then(u'the report metric should be {metric}')
def step_impl(context, metric):
    metric = eval(metric)
    test.assert_equal(report(context)["metric"], metric)


@then(u'the report diagnostics should include a {level} containing {text}')
def step_impl(context, level, text):
    text = eval(text)
    diagnostics = report(context)["diagnostics"]
    test.assert_true(any(item["level"] == level and text in item["message"] for item in diagnostics))


@then(u'the two outputs should be identical')
def step_impl(context):
    test.assert_equal(context.output, context.first_output)


@then(u'the report should not contain {key}')
def step_impl(context, key):
    key = eval(key)
    test.assert_not_in(key, report(context))


@then(u'the output should contain {text}')
def step_impl(context, text):
    text = eval(text)
    test.assert_in(text, context.output)


@then(u'the report value {key} should be close to {value}')
def step_impl(context, key, value):
    key = eval(key)
    value = eval(value)
    test.assert_almost_equal(report(context)["result"][key], value, places=6)


@when(u'moving the first placement in the report {path}')
def step_impl(context, path):
    path = eval(path).replace("$TMP", context.directory.name)
    with open(path) as stream:
        document = folded.document.loads(stream.read())
    placement = document["result"]["witness"]["placements"][0]
    edge, param = placement["u"]
    placement["u"] = [edge - 1 if edge else edge + 1, param]
    with open(path, "w") as stream:
        stream.write(folded.document.dumps(document))
