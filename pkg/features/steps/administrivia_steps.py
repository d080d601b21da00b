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
import ast
import glob
import os
import re

from behave import *

import test


root_dir = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", ".."))


def manifest_list(text, name):
    match = re.search(rf"^{name} = \[\n(.*?)^\]", text, flags=re.MULTILINE | re.DOTALL)
    return sorted(re.findall(r'"([^"]+)"', match.group(1)))


@given(u'all Folded sources.')
def step_impl(context):
    context.sources = [os.path.join(root_dir, "regression.py")]
    for pattern in ["docs/*.py", "features/**/*.py", "folded/**/*.py"]:
        context.sources += glob.glob(os.path.join(root_dir, pattern), recursive=True)
    context.sources = sorted(context.sources)


@then(u'every Python source must contain a copyright notice.')
def step_impl(context):
    with open(__file__) as stream:
        copyright_notice = "".join(stream.readlines()[:15])
    missing = []
    for source in context.sources:
        with open(source) as stream:
            if not stream.read().startswith(copyright_notice):
                missing.append(os.path.relpath(source, root_dir))
    if missing:
        raise AssertionError("Missing copyright notices:\n\n%s" % "\n".join(missing))


@then(u'every package module must have a docstring.')
def step_impl(context):
    undocumented = []
    for source in context.sources:
        if os.path.relpath(source, root_dir).startswith("folded"):
            with open(source) as stream:
                if ast.get_docstring(ast.parse(stream.read())) is None:
                    undocumented.append(os.path.relpath(source, root_dir))
    if undocumented:
        raise AssertionError("Missing module docstrings:\n\n%s" % "\n".join(undocumented))


@then(u'the documentation requirements must match the package dependencies.')
def step_impl(context):
    with open(os.path.join(root_dir, "pyproject.toml")) as stream:
        manifest = stream.read()
    with open(os.path.join(root_dir, "docs", "requirements.txt")) as stream:
        requirements = sorted(line.strip() for line in stream if line.strip())
    test.assert_equal(requirements, sorted(manifest_list(manifest, "dependencies") + manifest_list(manifest, "doc")))
