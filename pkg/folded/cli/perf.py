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

"""Provides a command line interface for running performance benchmarks.
"""

import argparse
import logging
import os
import sys
import time

import numpy

import folded
import folded.pool
from folded.approx import approx_tightness_report
from folded.decide import diagonal_monotonicity_test
from folded.fixtures import random_pair
from folded.untangle import BoundaryIndeterminate, fpt_decide


class Timer(object):
    def __init__(self):
        self._start = time.time()

    def elapsed(self):
        return time.time() - self._start


def print_times(case, times):
    if not times:
        print(f"{case}: no completed runs")
        return
    print(f"{case} min: {numpy.min(times):.3f}s mean: {numpy.mean(times):.3f}s max: {numpy.max(times):.3f}s stddev: {numpy.std(times):.3f}s")


def positive_integer(string):
    value = int(string)
    if value < 1:
        raise ValueError("A positive integer is required.")
    return value


def nonnegative_float(string):
    value = float(string)
    if value < 0:
        raise ValueError("A nonnegative number is required.")
    return value


def completed(results):
    """Drop worker failures, which the pool has already logged."""
    return [result for result in results if not isinstance(result, (folded.pool.Failed, folded.pool.Terminated))]


parser = argparse.ArgumentParser(description="Folded polygon performance tests.")
subparsers = parser.add_subparsers(title="commands (choose one)", dest="command")

# decide
decide_subparser = subparsers.add_parser("decide", help="Time the diagonal monotonicity test on random pairs.")
decide_subparser.add_argument("--count", default=10, type=positive_integer, help="Number of random pairs. Default: %(default)s")
decide_subparser.add_argument("--epsilon", default=1.0, type=nonnegative_float, help="Decision threshold. Default: %(default)s")
decide_subparser.add_argument("--faces", default=3, type=positive_integer, help="Faces per polygon. Default: %(default)s")
decide_subparser.add_argument("--metric", default="l2", choices=["l2", "linf"], help="Distance metric. Default: %(default)s")
decide_subparser.add_argument("--seed", default=1234, type=positive_integer, help="Random seed. Default: %(default)s")
decide_subparser.add_argument("--workers", default=None, type=positive_integer, help="Worker processes. Default: FOLDED_WORKERS or 1.")

# fpt
fpt_subparser = subparsers.add_parser("fpt", help="Time the exact decision on random pairs.")
fpt_subparser.add_argument("--count", default=5, type=positive_integer, help="Number of random pairs. Default: %(default)s")
fpt_subparser.add_argument("--epsilon", default=1.0, type=nonnegative_float, help="Decision threshold. Default: %(default)s")
fpt_subparser.add_argument("--faces", default=3, type=positive_integer, help="Faces per polygon. Default: %(default)s")
fpt_subparser.add_argument("--metric", default="l2", choices=["l2", "linf"], help="Distance metric. Default: %(default)s")
fpt_subparser.add_argument("--seed", default=1234, type=positive_integer, help="Random seed. Default: %(default)s")
fpt_subparser.add_argument("--tolerance", default=None, type=float, help="Feasibility tolerance. Default: FOLDED_FEASIBILITY_TOLERANCE or 1e-6.")
fpt_subparser.add_argument("--workers", default=None, type=positive_integer, help="Worker processes. Default: FOLDED_WORKERS or 1.")

# tightness
tightness_subparser = subparsers.add_parser("tightness", help="Compare the approximation with the exact distance on random pairs.")
tightness_subparser.add_argument("--count", default=5, type=positive_integer, help="Number of random pairs. Default: %(default)s")
tightness_subparser.add_argument("--faces", default=2, type=positive_integer, help="Faces per polygon. Default: %(default)s")
tightness_subparser.add_argument("--metric", default="l2", choices=["l2", "linf"], help="Distance metric. Default: %(default)s")
tightness_subparser.add_argument("--seed", default=1234, type=positive_integer, help="Random seed. Default: %(default)s")
tightness_subparser.add_argument("--tolerance", default=None, type=float, help="Feasibility tolerance. Default: FOLDED_FEASIBILITY_TOLERANCE or 1e-6.")

# version
version_subparser = subparsers.add_parser("version", help="Print the folded version.")


def main():
    arguments = parser.parse_args()

    if arguments.command is None:
        parser.print_help()

    logging.basicConfig(level=logging.INFO)
    log = logging.getLogger()
    log.name = os.path.basename(sys.argv[0])

    # decide
    if arguments.command == "decide":

        def implementation(seed):
            P, Q = random_pair(seed, arguments.faces)
            timer = Timer()
            diagonal_monotonicity_test(P, Q, arguments.epsilon, arguments.metric)
            return timer.elapsed()

        case = f"monotonicity test on {arguments.count} pairs of {arguments.faces} faces at eps={arguments.epsilon}"
        seeds = [arguments.seed + index for index in range(arguments.count)]
        times = completed(folded.pool.run(implementation, seeds, workers=arguments.workers))
        print_times(case, times)

    # fpt
    if arguments.command == "fpt":

        def implementation(seed):
            P, Q = random_pair(seed, arguments.faces)
            timer = Timer()
            try:
                fpt_decide(P, Q, arguments.epsilon, arguments.metric, arguments.tolerance)
            except BoundaryIndeterminate:
                log.warning(f"Pair {seed} is indeterminate at eps={arguments.epsilon}.")
            return timer.elapsed()

        case = f"exact decision on {arguments.count} pairs of {arguments.faces} faces at eps={arguments.epsilon}"
        seeds = [arguments.seed + index for index in range(arguments.count)]
        times = completed(folded.pool.run(implementation, seeds, workers=arguments.workers))
        print_times(case, times)

    # tightness
    if arguments.command == "tightness":
        instances = [random_pair(arguments.seed + index, arguments.faces) for index in range(arguments.count)]
        timer = Timer()
        report = approx_tightness_report(instances, arguments.metric, arguments.tolerance)
        elapsed = timer.elapsed()

        print(f"tightness on {arguments.count} pairs of {arguments.faces} faces took {elapsed:.3f}s")
        scored = [index for index in range(arguments.count) if index not in report.indeterminate]
        for index, entry in zip(scored, report.entries):
            print(f"  pair {arguments.seed + index} eps*: {entry.eps_star:.9g} exact: {entry.exact:.9g} ratio: {entry.ratio:.6f}")
        for index in report.indeterminate:
            print(f"  pair {arguments.seed + index} indeterminate")
        if report.entries:
            print(f"ratio max: {report.maximum:.6f} mean: {report.mean:.6f} within [1, 9]: {report.within_bounds}")

    # version
    if arguments.command == "version":
        print(folded.__version__)
