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

import logging
import os
import unittest.mock

from behave import *

import folded.pool

import test


def square(value):
    return value * value


def invert(value):
    return 1 / value


def repeat(task):
    value, count = task
    return [value] * count


@when(u'squaring {tasks} with {workers} workers')
def step_impl(context, tasks, workers):
    tasks = eval(tasks)
    workers = eval(workers)
    context.results = folded.pool.run(square, tasks, workers=workers)


@when(u'inverting {tasks} with {workers} workers')
def step_impl(context, tasks, workers):
    tasks = eval(tasks)
    workers = eval(workers)
    with test.assert_logs("folded.pool", logging.ERROR) as logs:
        context.results = folded.pool.run(invert, tasks, workers=workers)
    context.logs = logs.output


@then(u'the pool results should be {results}')
def step_impl(context, results):
    results = eval(results)
    test.assert_equal(context.results, results)


@then(u'pool result {index} should be a failure caused by {error}')
def step_impl(context, index, error):
    index = eval(index)
    error = eval(error)
    result = context.results[index]
    test.assert_is_instance(result, folded.pool.Failed)
    test.assert_is_instance(result.exception, error)
    test.assert_in(error.__name__, result.traceback)


@then(u'the other pool results should be {results}')
def step_impl(context, results):
    results = eval(results)
    test.assert_equal([result for result in context.results if not isinstance(result, folded.pool.Failed)], results)


@then(u'the pool should have logged {message}')
def step_impl(context, message):
    message = eval(message)
    test.assert_true(any(message in line for line in context.logs))


@then(u'the worker count for {workers} with FOLDED_WORKERS set to {variable} should be {count}')
def step_impl(context, workers, variable, count):
    workers = eval(workers)
    variable = eval(variable)
    count = eval(count)

    environment = {key: value for key, value in os.environ.items() if key != "FOLDED_WORKERS"}
    if variable is not None:
        environment["FOLDED_WORKERS"] = variable
    with unittest.mock.patch.dict(os.environ, environment, clear=True):
        if isinstance(count, type):
            with test.assert_raises(count):
                folded.pool.worker_count(workers)
        else:
            test.assert_equal(folded.pool.worker_count(workers), count)


@when(u'repeating each of {tasks} tasks {count} times with {workers} workers')
def step_impl(context, tasks, count, workers):
    tasks = eval(tasks)
    count = eval(count)
    workers = eval(workers)
    context.results = folded.pool.run(repeat, [(task, count) for task in range(tasks)], workers=workers)
    context.tasks = tasks


@then(u'every pool result should hold its task repeated {count} times')
def step_impl(context, count):
    count = eval(count)
    test.assert_equal(len(context.results), context.tasks)
    for task, result in enumerate(context.results):
        test.assert_is_instance(result, list)
        test.assert_equal(len(result), count)
        test.assert_equal(result[0], task)
        test.assert_equal(result[-1], task)
