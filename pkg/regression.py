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
"""Run the behave suite under coverage.

Use ``--fast`` to skip scenarios tagged ``@slow``; remaining arguments are
passed to behave unchanged.
"""

import argparse
import glob
import os
import shutil
import subprocess
import sys

parser = argparse.ArgumentParser(description="Run the folded regression suite with coverage.")
parser.add_argument("--fast", action="store_true", help="Skip the randomized cross-checks tagged @slow.")
parser.add_argument("--no-html", action="store_true", help="Don't write the HTML coverage report.")
arguments, behave_arguments = parser.parse_known_args()

for path in glob.glob(".coverage*"):
    os.remove(path)
if os.path.exists(".cover"):
    shutil.rmtree(".cover")

if arguments.fast:
    behave_arguments = ["--tags", "~@slow"] + behave_arguments

coverage = [sys.executable, "-m", "coverage"]
status = subprocess.call(coverage + ["run", "-m", "behave"] + behave_arguments)
subprocess.call(coverage + ["combine"])
subprocess.call(coverage + ["report", "--show-missing", "--skip-covered"])
if not arguments.no_html:
    subprocess.call(coverage + ["html", "--directory", ".cover"])
sys.exit(status)
