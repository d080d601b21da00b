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

"""Reading and writing surface, curve and report documents.

Documents are JSON text.  Numbers are written with 17 significant digits and
keys are sorted, so identical results always produce identical bytes.
"""

import json
import logging
import math

import numpy

from folded.curves import BoundaryMatching, PolyCurve
from folded.geometry import TOLERANCE, Metric
from folded.decide import witness_consistency
from folded.segmatch import Placement, frechet_segment_to_path
from folded.surface import BoundaryPoint, validate

log = logging.getLogger(__name__)


class ParseError(ValueError):
    """Raised when a document can't be read."""
    pass


def _format(value, indent, level):
    pad = " " * (indent * (level + 1))
    closing = " " * (indent * level)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(str(key))}: {_format(value[key], indent, level + 1)}" for key in sorted(value, key=str)]
        return "{\n" + ",\n".join(items) + "\n" + closing + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        if all(isinstance(item, (int, float, bool, type(None), numpy.number)) for item in value):
            return "[" + ", ".join(_format(item, indent, level + 1) for item in value) + "]"
        items = [pad + _format(item, indent, level + 1) for item in value]
        return "[\n" + ",\n".join(items) + "\n" + closing + "]"
    if isinstance(value, numpy.ndarray):
        return _format(value.tolist(), indent, level)
    if isinstance(value, (bool, numpy.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, numpy.integer)):
        return str(int(value))
    if isinstance(value, (float, numpy.floating)):
        value = float(value)
        if math.isnan(value):
            return "NaN"
        if math.isinf(value):
            return "Infinity" if value > 0 else "-Infinity"
        return format(value, ".17g")
    if value is None:
        return "null"
    return json.dumps(str(value))


def dumps(document, indent=2):
    """Serialize `document` with sorted keys and 17 significant digits."""
    return _format(document, indent, 0) + "\n"


def loads(text):
    """Parse document text.

    Raises
    ------
    ParseError: if `text` isn't a JSON object.
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"Expected a JSON document, got a syntax error instead: {e}")
    if not isinstance(document, dict):
        raise ParseError(f"Expected a JSON object, got {type(document).__name__} instead.")
    return document


def _require(document, fields):
    missing = [field for field in fields if field not in document]
    if missing:
        raise ParseError(f"Expected fields {fields}, got a document without {missing} instead.")


def parse_surface(text):
    """Parse a surface document and validate it.

    Raises
    ------
    ParseError: if the document is malformed.
    folded.surface.InvalidSurface: if it describes an invalid surface.
    """
    document = loads(text)
    _require(document, ["vertices", "faces", "boundary"])
    if not all(isinstance(vertex, list) and all(isinstance(value, (int, float)) for value in vertex) for vertex in document["vertices"]):
        raise ParseError("Expected vertices as lists of numbers, got something else instead.")
    if not all(isinstance(face, list) and all(isinstance(index, int) for index in face) for face in document["faces"]):
        raise ParseError("Expected faces as lists of vertex indices, got something else instead.")
    if not all(isinstance(index, int) for index in document["boundary"]):
        raise ParseError("Expected the boundary as a list of vertex indices, got something else instead.")
    return validate(document)


def surface_document(surface):
    return surface.to_document()


def parse_curve(text):
    """Parse a curve document with `vertices` and an optional `closed` flag."""
    document = loads(text)
    _require(document, ["vertices"])
    try:
        return PolyCurve(document["vertices"], closed=bool(document.get("closed", False)))
    except ValueError as e:
        raise ParseError(str(e))


def curve_document(curve):
    return {"vertices": curve.vertices.tolist(), "closed": curve.closed}


def witness_document(mapping):
    """Machine readable summary of a :class:`folded.decide.MonotoneDiagonalMapping`."""
    return {
        "eps": mapping.eps,
        "metric": mapping.metric.value,
        "class": [list(pair) for pair in mapping.klass.hosts],
        "matching": {"offset": mapping.matching.offset, "points": mapping.matching.points.tolist()},
        "placements": [{"diagonal": placement.diagonal, "u": list(placement.u), "v": list(placement.v)} for placement in mapping.placements],
        "paths": [{"sequence": list(path.sequence), "t": path.t.tolist(), "s": path.s.tolist(), "points": path.points.tolist()} for path in mapping.paths],
        }


def verify(witness, P, Q):
    """Re-check every eps constraint of a witness summary from raw geometry.

    Parameters
    ----------
    witness: :class:`dict`, required
        Produced by :func:`witness_document`.
    P, Q: :class:`folded.surface.FoldedPolygon`, required

    Returns
    -------
    problems: :class:`list` of :class:`str`
        Empty if the witness is valid.
    """
    try:
        eps = float(witness["eps"])
        metric = Metric.parse(witness["metric"])
        matching = BoundaryMatching(witness["matching"]["points"], witness["matching"]["offset"])
        placements = witness["placements"]
        paths = witness["paths"]
    except (KeyError, TypeError) as e:
        raise ParseError(f"Expected a witness summary, got a document without {e} instead.")

    problems = []
    f, g = P.boundary_curve(), Q.boundary_curve()
    if numpy.any(numpy.diff(matching.points, axis=0) < -TOLERANCE):
        problems.append("boundary matching isn't monotone")
    for (x, y), gap in matching.violations(f, g, eps, metric):
        problems.append(f"boundary pair ({x}, {y}) is {gap} apart")

    if len(placements) != len(P.interior_edges) or len(paths) != len(placements):
        problems.append("expected one placement and one path per diagonal")
        return problems

    try:
        records = [Placement(placement["diagonal"], BoundaryPoint(*placement["u"]), BoundaryPoint(*placement["v"])) for placement in placements]
        sequences = [path["sequence"] for path in paths]
    except (KeyError, TypeError) as e:
        raise ParseError(f"Expected placements and paths, got a witness without {e} instead.")
    problems.extend(witness_consistency(P, Q, matching, records, sequences))

    for placement, path in zip(placements, paths):
        diagonal = placement["diagonal"]
        segment = P.edge_segment(diagonal)
        points = numpy.array(path["points"], dtype=float)
        u = Q.point(BoundaryPoint(*placement["u"]))
        v = Q.point(BoundaryPoint(*placement["v"]))
        if not numpy.allclose(points[0], u) or not numpy.allclose(points[-1], v):
            problems.append(f"diagonal {diagonal} path doesn't join its placement")
        for edge, s, crossing in zip(path["sequence"], path["s"], points[1:-1]):
            if not numpy.allclose(Q.edge_segment(edge)(s), crossing):
                problems.append(f"diagonal {diagonal} path misses edge {edge}")
        if len(path["sequence"]) != len(points) - 2:
            problems.append(f"diagonal {diagonal} path has the wrong number of crossings")
        if numpy.any(numpy.diff(path["t"]) < -TOLERANCE):
            problems.append(f"diagonal {diagonal} crossings are not monotone")
        value = frechet_segment_to_path(segment, points, metric)
        if value > eps + TOLERANCE:
            problems.append(f"diagonal {diagonal} path is {value} from the diagonal")
    return problems


class RunReport(object):
    """Machine readable record of one command line run.

    Parameters
    ----------
    command: :class:`str`, required
    inputs: :class:`list` of :class:`str`, required
        Input file names or fixture names.
    metric: :class:`str`, optional
    result: :class:`dict`, optional
        Command specific payload: values, intervals, decisions and witness summaries.
    timing: :class:`dict`, optional
        Elapsed seconds per phase.
    diagnostics: :class:`list`, optional
        Collected warnings, see :func:`folded.logger.collect`.
    """
    def __init__(self, command, inputs, metric=None, result=None, timing=None, diagnostics=None):
        self.command = command
        self.inputs = list(inputs)
        self.metric = metric
        self.result = {} if result is None else result
        self.timing = {} if timing is None else timing
        self.diagnostics = [] if diagnostics is None else diagnostics

    def __repr__(self):
        return f"RunReport(command={self.command!r}, result={self.result!r})"

    def dumps(self, timing=True):
        """Serialize the report; without `timing` the output only depends on the inputs."""
        document = self.to_document()
        if not timing:
            document.pop("timing")
        return dumps(document)

    @classmethod
    def from_document(cls, document):
        _require(document, ["command", "inputs", "result"])
        return cls(document["command"], document["inputs"], document.get("metric"), document["result"], document.get("timing"), document.get("diagnostics"))

    def to_document(self):
        return {
            "command": self.command,
            "inputs": self.inputs,
            "metric": self.metric,
            "result": self.result,
            "timing": self.timing,
            "diagnostics": self.diagnostics,
            }
