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
import argparse
import doctest
import importlib
import os
import pkgutil
import re

from behave import *

import folded

import test


root_dir = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", ".."))
docs_dir = os.path.join(root_dir, "docs")


@given(u'all public modules')
def step_impl(context):
    modules = ["folded"]
    for module in pkgutil.walk_packages(folded.__path__, prefix="folded."):
        modules.append(module.name)
    context.modules = sorted(modules)


@given(u'the reference documentation')
def step_impl(context):
    context.references = sorted(os.path.splitext(filename)[0] for filename in os.listdir(docs_dir) if re.fullmatch(r"folded(\.\w+)*\.rst", filename))


@then(u'every module must have a section in the reference documentation')
def step_impl(context):
    missing = sorted(set(context.modules) - set(context.references))
    if missing:
        raise AssertionError(f"No reference documentation for {', '.join(missing)}.")


@then(u'every section in the reference documentation must match a module')
def step_impl(context):
    orphans = sorted(set(context.references) - set(context.modules))
    if orphans:
        raise AssertionError(f"No module matches the reference documentation for {', '.join(orphans)}.")


@given(u'the document {name}')
def step_impl(context, name):
    with open(os.path.join(docs_dir, name)) as stream:
        context.document = stream.read()
    context.document_name = name


@then(u'every example in the document runs without error')
def step_impl(context):
    examples = doctest.DocTestParser().get_examples(context.document, context.document_name)
    test.assert_greater(len(examples), 0)
    namespace = {}
    for example in examples:
        try:
            exec(compile(example.source, context.document_name, "exec"), namespace)
        except Exception as e:
            raise AssertionError(f"{context.document_name} line {example.lineno + 1} failed: {e!r}") from e


@then(u'every command in the document matches an installed script')
def step_impl(context):
    directives = re.findall(r"\.\. argparse::\n\s+:module: (\S+)\n\s+:func: (\S+)\n\s+:prog: (\S+)", context.document)
    with open(os.path.join(root_dir, "pyproject.toml")) as stream:
        scripts = dict(re.findall(r'^([\w-]+) = "([\w.]+):main"$', stream.read(), flags=re.MULTILINE))
    test.assert_equal(sorted(prog for module, func, prog in directives), sorted(scripts))
    for module, func, prog in directives:
        test.assert_equal(scripts[prog], module)
        test.assert_is_instance(getattr(importlib.import_module(module), func), argparse.ArgumentParser)
