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

"""Provides a command line interface for computing Fréchet distances.
"""

import argparse
import contextlib
import functools
import logging
import os
import sys

import numpy

import folded
import folded.document
import folded.fixtures
import folded.logger
import folded.render
import folded.transcript
from folded.approx import approx_compute
from folded.axis import CertificateError, exact_axis_parallel
from folded.cli.perf import Timer
from folded.curves import frechet_compute, frechet_decide
from folded.decide import diagonal_monotonicity_test, proper_intersection_order, verify_mapping
from folded.document import ParseError, RunReport, witness_document
from folded.geometry import Metric
from folded.surface import InvalidSurface, validate
from folded.untangle import BoundaryIndeterminate, DistanceIndeterminate, convexity_probe, fpt_compute, fpt_decide, propagate_edge_tree, untangle_certificate

ACCEPTED = 0
REJECTED = 1
INVALID = 2
UNPARSEABLE = 3

RAW_FIXTURES = {
    "annulus": folded.fixtures.annulus,
    "interiorVertex": folded.fixtures.interior_vertex,
}


@functools.lru_cache(maxsize=None)
def read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r") as stream:
            return stream.read()
    except OSError as e:
        raise ParseError(f"Expected a readable file, got {path!r} instead: {e.strerror}.")


def write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w") as stream:
        stream.write(text)


def load_surfaces(arguments):
    """Surfaces named by the inputs: fixture names, optionally with a ":index" suffix, or document files."""
    surfaces = []
    for item in arguments.inputs:
        name, _, index = item.partition(":")
        if name in folded.fixtures.FIXTURES:
            generated = folded.fixtures.generate(name, seed=arguments.seed, faces=arguments.faces)
            surfaces.extend([generated[int(index)]] if index else generated)
        elif name in RAW_FIXTURES:
            surfaces.append(validate(RAW_FIXTURES[name]()))
        else:
            surfaces.append(folded.document.parse_surface(read(item)))
    return surfaces


def load_pair(subparser, arguments):
    surfaces = load_surfaces(arguments)
    if len(surfaces) != 2:
        subparser.error(f"Expected two surfaces, got {len(surfaces)} instead.")
    return surfaces


def load_curves(subparser, arguments):
    """Curves named by the inputs; fixtures contribute their boundary curves."""
    curves = []
    for item in arguments.inputs:
        name = item.partition(":")[0]
        if name in folded.fixtures.FIXTURES:
            curves.extend(surface.boundary_curve() for surface in load_surfaces(argparse.Namespace(inputs=[item], seed=arguments.seed, faces=arguments.faces)))
        else:
            curves.append(folded.document.parse_curve(read(item)))
    if len(curves) != 2:
        subparser.error(f"Expected two curves, got {len(curves)} instead.")
    return curves


def require_epsilon(subparser, arguments):
    if arguments.epsilon is None:
        subparser.error("--epsilon is required.")
    if arguments.epsilon < 0:
        subparser.error(f"--epsilon must be nonnegative, got {arguments.epsilon} instead.")
    return arguments.epsilon


def decision(accepted):
    return ACCEPTED if accepted else REJECTED


def add_common_arguments(subparser, inputs=True, epsilon=False, tolerance=False):
    if inputs:
        subparser.add_argument("inputs", nargs="+", help="Document files, '-' for standard input, or fixture names such as cubePair or randomFolded:0.")
        subparser.add_argument("--faces", default=3, type=int, help="Face count for generated fixtures. Default: %(default)s")
        subparser.add_argument("--seed", default=0, type=int, help="Seed for generated fixtures. Default: %(default)s")
    if epsilon:
        subparser.add_argument("--epsilon", "-e", default=None, type=float, help="Distance threshold.")
    if tolerance:
        subparser.add_argument("--tolerance", default=None, type=float, help="Feasibility tolerance. Default: FOLDED_FEASIBILITY_TOLERANCE or 1e-6.")
    subparser.add_argument("--metric", "-m", default="l2", choices=["l2", "linf"], help="Distance metric. Default: %(default)s")
    subparser.add_argument("--no-timing", action="store_true", help="Omit timing from the report, so identical runs produce identical output.")
    subparser.add_argument("--output", "-o", default=None, help="Output file. Default: standard output.")
    subparser.add_argument("--trace", action="store_true", help="Log calls and returns of pipeline operations.")


parser = argparse.ArgumentParser(description="Fréchet distance tools for curves and folded polygons.")
subparsers = parser.add_subparsers(title="commands (choose one)", dest="command")

# approx
approx_subparser = subparsers.add_parser("approx", help="Bound the distance between two folded polygons within a factor of nine.")
add_common_arguments(approx_subparser)
approx_subparser.add_argument("--one-orientation", action="store_true", help="Only match the diagonals of the polygon with fewer diagonals.")

# axis
axis_subparser = subparsers.add_parser("axis", help="Exact maximum norm distance between axis-parallel folded polygons.")
add_common_arguments(axis_subparser)

# curves
curves_subparser = subparsers.add_parser("curves", help="Distance between two curves, or a decision with --epsilon.")
add_common_arguments(curves_subparser, epsilon=True)

# decide
decide_subparser = subparsers.add_parser("decide", help="Run the diagonal monotonicity test on two folded polygons.")
add_common_arguments(decide_subparser, epsilon=True)
decide_subparser.add_argument("--workers", default=None, type=int, help="Worker processes for class evaluation. Default: FOLDED_WORKERS or 1.")

# fixtures
fixtures_subparser = subparsers.add_parser("fixtures", help="Write surface documents for a named fixture.")
fixtures_subparser.add_argument("name", choices=sorted(list(folded.fixtures.FIXTURES) + list(RAW_FIXTURES)), help="Fixture name.")
fixtures_subparser.add_argument("--faces", default=3, type=int, help="Face count for generated fixtures. Default: %(default)s")
fixtures_subparser.add_argument("--output", "-o", default="{name}.json", help="Output file pattern; '-' writes to standard output. Default: %(default)s")
fixtures_subparser.add_argument("--seed", default=0, type=int, help="Seed for generated fixtures. Default: %(default)s")

# fpt
fpt_subparser = subparsers.add_parser("fpt", help="Exact distance between two folded polygons, or a decision with --epsilon.")
add_common_arguments(fpt_subparser, epsilon=True, tolerance=True)
fpt_subparser.add_argument("--resolution", default=1e-9, type=float, help="Search resolution. Default: %(default)s")

# render
render_subparser = subparsers.add_parser("render", help="Draw free space and crossing order diagrams as SVG.")
add_common_arguments(render_subparser, epsilon=True)

# untangle
untangle_subparser = subparsers.add_parser("untangle", help="Check whether the diagonal images of a witness can be untangled.")
add_common_arguments(untangle_subparser, epsilon=True, tolerance=True)
untangle_subparser.add_argument("--trials", default=0, type=int, help="Convexity probe trials per interior edge. Default: %(default)s")

# validate
validate_subparser = subparsers.add_parser("validate", help="Check that surfaces are valid folded polygons.")
add_common_arguments(validate_subparser)

# verify
verify_subparser = subparsers.add_parser("verify", help="Re-check the witness of a report against two folded polygons.")
verify_subparser.add_argument("report", help="Report file produced by decide or approx.")
add_common_arguments(verify_subparser)

# version
version_subparser = subparsers.add_parser("version", help="Print the folded version.")


def run(arguments, log):
    """Execute one command, returning its report and exit status."""
    metric = Metric.parse(arguments.metric)
    report = RunReport(arguments.command, arguments.inputs, metric.value)
    timer = Timer()

    # approx
    if arguments.command == "approx":
        P, Q = load_pair(approx_subparser, arguments)
        result = approx_compute(P, Q, metric, both=not arguments.one_orientation)
        report.result = {"eps_star": result.eps_star, "lower": result.lower, "upper": result.upper, "swapped": result.swapped}
        if result.witness is not None:
            report.result["witness"] = witness_document(result.witness)
        if result.alternate is not None:
            report.result["alternate"] = {"eps_star": result.alternate.eps_star, "swapped": result.alternate.swapped}
        status = ACCEPTED

    # axis
    if arguments.command == "axis":
        P, Q = load_pair(axis_subparser, arguments)
        if metric is not Metric.LINF:
            log.warning("Axis-parallel distances are exact under the maximum norm only; using linf.")
            report.metric = Metric.LINF.value
        report.result = {"distance": exact_axis_parallel(P, Q)}
        status = ACCEPTED

    # curves
    if arguments.command == "curves":
        f, g = load_curves(curves_subparser, arguments)
        if arguments.epsilon is None:
            report.result = {"distance": frechet_compute(f, g, metric)}
            status = ACCEPTED
        else:
            eps = require_epsilon(curves_subparser, arguments)
            accepted = frechet_decide(f, g, eps, metric)
            report.result = {"eps": eps, "accepted": accepted}
            status = decision(accepted)

    # decide
    if arguments.command == "decide":
        P, Q = load_pair(decide_subparser, arguments)
        eps = require_epsilon(decide_subparser, arguments)
        mapping = diagonal_monotonicity_test(P, Q, eps, metric, workers=arguments.workers)
        report.result = {"eps": eps, "accepted": mapping is not None}
        if mapping is not None:
            report.result["witness"] = witness_document(mapping)
            problems = verify_mapping(mapping)
            if problems:
                log.error(f"Witness fails re-verification: {problems}")
        status = decision(mapping is not None)

    # fpt
    if arguments.command == "fpt":
        P, Q = load_pair(fpt_subparser, arguments)
        if arguments.epsilon is None:
            try:
                report.result = {"distance": fpt_compute(P, Q, metric, arguments.tolerance, arguments.resolution), "status": "exact"}
                status = ACCEPTED
            except DistanceIndeterminate as e:
                log.warning(str(e))
                report.result = {"distance": None, "status": "indeterminate", "eps": e.eps, "bracket": [e.lower, e.upper], "gap": e.certificate.gap}
                status = REJECTED
        else:
            eps = require_epsilon(fpt_subparser, arguments)
            try:
                accepted = fpt_decide(P, Q, eps, metric, arguments.tolerance)
                report.result = {"eps": eps, "accepted": accepted, "status": "accepted" if accepted else "rejected"}
                status = decision(accepted)
            except BoundaryIndeterminate as e:
                report.result = {"eps": eps, "accepted": None, "status": "indeterminate", "gap": e.certificate.gap}
                status = REJECTED

    # untangle
    if arguments.command == "untangle":
        P, Q = load_pair(untangle_subparser, arguments)
        eps = require_epsilon(untangle_subparser, arguments)
        mapping = diagonal_monotonicity_test(P, Q, eps, metric)
        if mapping is None:
            report.result = {"eps": eps, "status": "rejected", "accepted": False}
            status = REJECTED
        else:
            certificate = untangle_certificate(Q, mapping, eps, metric, arguments.tolerance)
            try:
                propagated = "feasible" if propagate_edge_tree(Q, mapping, eps, metric, tolerance=arguments.tolerance) else "infeasible"
            except BoundaryIndeterminate:
                propagated = "indeterminate"
            if certificate.status != "indeterminate" and propagated != "indeterminate" and propagated != certificate.status:
                log.warning(f"Global solve ({certificate.status}) and edge tree propagation ({propagated}) disagree.")
            report.result = {
                "eps": eps,
                "status": certificate.status,
                "accepted": certificate.feasible,
                "gap": certificate.gap,
                "binding": certificate.binding,
                "propagation": propagated,
                "class": [list(pair) for pair in mapping.klass.hosts],
                }
            if arguments.trials:
                generator = numpy.random.default_rng(seed=arguments.seed)
                probes = {}
                for edge in Q.interior_edges:
                    order = proper_intersection_order(mapping, edge.index)
                    diagonals = [P.edge_segment(mapping.placements[index].diagonal) for index in order]
                    probe = convexity_probe(Q.edge_segment(edge.index), diagonals, eps, metric, arguments.trials, generator)
                    probes[str(edge.index)] = {"trials": probe.trials, "pairs": probe.pairs, "violations": len(probe.violations)}
                report.result["convexity"] = probes
            status = decision(certificate.feasible)

    # validate
    if arguments.command == "validate":
        surfaces = load_surfaces(arguments)
        report.result = {"valid": True, "surfaces": [{"name": surface.name, "faces": len(surface.faces), "interior_edges": len(surface.interior_edges)} for surface in surfaces]}
        status = ACCEPTED

    # verify
    if arguments.command == "verify":
        P, Q = load_pair(verify_subparser, arguments)
        original = RunReport.from_document(folded.document.loads(read(arguments.report)))
        if "witness" not in original.result:
            raise ParseError(f"Expected a report with a witness, got a {original.command} report without one instead.")
        if original.result.get("swapped"):
            P, Q = Q, P
        problems = folded.document.verify(original.result["witness"], P, Q)
        report.result = {"valid": not problems, "problems": problems}
        status = decision(not problems)

    report.timing = {"total": timer.elapsed()}
    return report, status


def main():
    arguments = parser.parse_args()
    read.cache_clear()

    if arguments.command is None:
        parser.print_help()

    logging.basicConfig(level=logging.INFO)
    log = logging.getLogger()
    log.name = os.path.basename(sys.argv[0])
    log = folded.logger.Logger(log)

    # fixtures
    if arguments.command == "fixtures":
        if arguments.name in RAW_FIXTURES:
            documents = [RAW_FIXTURES[arguments.name]()]
        else:
            documents = [surface.to_document() for surface in folded.fixtures.generate(arguments.name, seed=arguments.seed, faces=arguments.faces)]
        for index, document in enumerate(documents):
            name = document.get("name") or f"{arguments.name}-{index}"
            path = arguments.output.format(name=name, index=index)
            write(path, folded.document.dumps(document))
            if path != "-":
                log.info(f"Wrote {path}")
        return

    # render
    if arguments.command == "render":
        eps = require_epsilon(render_subparser, arguments)
        metric = Metric.parse(arguments.metric)
        try:
            if all(item.partition(":")[0] in folded.fixtures.FIXTURES or "faces" in folded.document.loads(read(item)) for item in arguments.inputs):
                P, Q = load_pair(render_subparser, arguments)
                mapping = diagonal_monotonicity_test(P, Q, eps, metric)
                drawing = folded.render.render_surfaces(P, Q, eps, metric, mapping)
            else:
                f, g = load_curves(render_subparser, arguments)
                drawing = folded.render.render_free_space(f, g, eps, metric)
        except ParseError as e:
            log.error(str(e))
            sys.exit(UNPARSEABLE)
        except ValueError as e:
            log.error(str(e))
            sys.exit(INVALID)
        write(arguments.output, drawing.as_svg())
        return

    # version
    if arguments.command == "version":
        print(folded.__version__)
        return

    if arguments.command is None:
        return

    if arguments.trace:
        folded.transcript.set_handler(folded.transcript.logger, folded.transcript.trace_handler())
        tracing = folded.transcript.record()
    else:
        tracing = contextlib.nullcontext()

    with folded.logger.collect() as diagnostics:
        try:
            with tracing:
                report, status = run(arguments, log)
        except ParseError as e:
            log.error(str(e))
            report, status = RunReport(arguments.command, arguments.inputs, arguments.metric, {"error": str(e)}), UNPARSEABLE
        except InvalidSurface as e:
            log.error(str(e))
            report, status = RunReport(arguments.command, arguments.inputs, arguments.metric, {"valid": False, "violations": e.violations}), INVALID
        except CertificateError as e:
            log.error(str(e))
            failures = [[surface, edge] for surface, edge in e.certificate.failures]
            report, status = RunReport(arguments.command, arguments.inputs, arguments.metric, {"error": str(e), "failures": failures}), INVALID
        except ValueError as e:
            log.error(str(e))
            report, status = RunReport(arguments.command, arguments.inputs, arguments.metric, {"error": str(e)}), INVALID
    report.diagnostics = diagnostics

    write(arguments.output, report.dumps(timing=not arguments.no_timing))
    sys.exit(status)
