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

from behave import *

import folded.approx
import folded.fixtures
import folded.logger

import test


class LogWatcher(logging.Handler):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.records = []

    def emit(self, record):
        self.records.append(record)


@given(u'a folded logger named {name}')
def step_impl(context, name):
    name = eval(name)
    context.log = folded.logger.Logger(logging.getLogger(name))


@given(u'a folded logger with threshold {threshold} named {name}')
def step_impl(context, threshold, name):
    name = eval(name)
    threshold = eval(threshold)
    context.log = folded.logger.Logger(logging.getLogger(name), threshold=threshold)


@then(u'the folded logger should wrap the Python logger named {name}')
def step_impl(context, name):
    name = eval(name)
    test.assert_is(context.log.logger, logging.getLogger(name))


@then(u'the folded logger should be collecting')
def step_impl(context):
    test.assert_true(context.log.collect)


@when(u'the folded logger logs {message} with arguments {arguments} at level {level} while collecting')
def step_impl(context, message, arguments, level):
    message = eval(message)
    arguments = eval(arguments)
    level = eval(level)

    watcher = LogWatcher()
    logger = context.log.logger
    oldlevel = logger.level
    logger.level = logging.DEBUG
    logger.addHandler(watcher)
    try:
        with folded.logger.collect() as diagnostics:
            {
                logging.DEBUG: context.log.debug,
                logging.INFO: context.log.info,
                logging.WARNING: context.log.warning,
                logging.ERROR: context.log.error,
                logging.CRITICAL: context.log.critical,
            }[level](message, *arguments)
    finally:
        logger.removeHandler(watcher)
        logger.level = oldlevel

    context.diagnostics = diagnostics
    context.records = watcher.records


@when(u'the folded logger logs {message} with collection overridden while collecting')
def step_impl(context, message):
    message = eval(message)
    with folded.logger.collect() as diagnostics:
        with context.log.override(collect=False):
            test.assert_false(context.log.collect)
            context.log.warning(message)
    context.diagnostics = diagnostics


@when(u'approximating the distance while collecting')
def step_impl(context):
    with folded.logger.collect() as diagnostics:
        folded.approx.approx_compute(*context.surfaces)
    context.diagnostics = diagnostics


@then(u'the diagnostics should be {diagnostics}')
def step_impl(context, diagnostics):
    diagnostics = eval(diagnostics)
    test.assert_equal(context.diagnostics, diagnostics)


@then(u'the Python logger should have received {message} with arguments {arguments}')
def step_impl(context, message, arguments):
    message = eval(message)
    arguments = eval(arguments)
    test.assert_equal(len(context.records), 1)
    test.assert_equal(context.records[0].getMessage(), message % arguments if arguments else message)
