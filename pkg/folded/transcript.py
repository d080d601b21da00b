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

"""Functionality for generating transcripts of pipeline activity.

Transcripts trace the public operations of the decision and optimization
pipelines, and can also turn calls of pure geometric primitives into
executable consistency checks, which is useful when reproducing numerical
problems outside the pipeline.
"""

import copy
import logging
import types

import hunter
import numpy

from folded.geometry import Interval, Metric, Segment
from folded.surface import BoundaryPoint, FoldedPolygon


class _CallLogger(hunter.actions.Action):
    def __init__(self):
        self.depth = 0

        self.display_whitelist = set([
            "folded.approx.approx_compute",
            "folded.approx.approx_tightness_report",
            "folded.axis.exact_axis_parallel",
            "folded.axis.halfspace_restriction_check",
            "folded.axis.shortest_vs_sequence_equivalence",
            "folded.curves.frechet_compute",
            "folded.curves.frechet_decide",
            "folded.decide.diagonal_monotonicity_test",
            "folded.decide.minimize_monotonicity_eps",
            "folded.segmatch.match_segment_to_sequence",
            "folded.untangle.fpt_compute",
            "folded.untangle.fpt_decide",
            "folded.untangle.global_untangle_feasible",
            "folded.untangle.propagate_edge_tree",
            ])

        self.test_whitelist = set([
            "folded.geometry.closest_parameter",
            "folded.geometry.point_segment_distance",
            "folded.geometry.segment_distance",
            "folded.geometry.segment_point_interval",
            "folded.geometry.segment_projection_interval",
            ])

        self.stack = []


    def __call__(self, event):
        if not hasattr(event.function_object, "__qualname__"):
            return

        fqname = event.module + "." + event.function_object.__qualname__
        name = event.function_object.__name__

        # Hide private functions.
        if name.startswith("_"):
            return

        if fqname in self.display_whitelist:
            call = Call()
            call.function = fqname
            call.depth = self.depth
            if event.kind == "call":
                call.kind = "call"
                call.arguments = ", ".join(f"{key}={self.repr(value)}" for key, value in event.locals.items())
                call.result = None
                self.depth += 1
                logger.info(f"call {fqname}", extra={"call": call})
            else:
                self.depth = max(0, self.depth - 1)
                call.depth = self.depth
                call.kind = "return"
                call.arguments = None
                call.result = self.repr(event.arg)
                logger.info(f"return {fqname}", extra={"call": call})
            return

        if fqname not in self.test_whitelist:
            return

        # Copy arguments, in case they're modified in-place.
        if event.kind == "call":
            self.stack.append({key: copy.deepcopy(value) for key, value in event.locals.items()})
            return

        if event.kind == "return" and self.stack:
            args = self.stack.pop()
            signature = ", ".join(f"{key}={self.repr(value)}" for key, value in args.items())
            _log_code(event, f"folded.transcript.assert_equal({event.module}.{name}({signature}), {self.repr(event.arg)})", first=True, last=True)


    def repr(self, o):
        if isinstance(o, (list, tuple)) and not isinstance(o, BoundaryPoint):
            items = ", ".join(self.repr(item) for item in o)
            return f"[{items}]" if isinstance(o, list) else f"({items}{',' if len(o) == 1 else ''})"
        if isinstance(o, BoundaryPoint):
            return f"folded.surface.BoundaryPoint({o.edge!r}, {o.param!r})"
        if isinstance(o, FoldedPolygon):
            return f"<FoldedPolygon {o.name!r}>"
        if isinstance(o, Interval):
            if o.empty:
                return "folded.geometry.Interval.empty_interval()"
            return f"folded.geometry.Interval({o.lo!r}, {o.hi!r})"
        if isinstance(o, Metric):
            return f"folded.geometry.Metric.{o.name}"
        if isinstance(o, Segment):
            return f"folded.geometry.Segment({self.repr(o.a)}, {self.repr(o.b)})"
        if isinstance(o, numpy.ndarray):
            return f"numpy.array({self.repr(o.tolist())}, dtype='{o.dtype}')"
        if isinstance(o, numpy.floating):
            return repr(float(o))
        return repr(o)


class Call(types.SimpleNamespace):
    """Stores call-related metadata for use in :class:`Formatter`."""
    pass


class Code(types.SimpleNamespace):
    """Stores code-related metadata for use in :class:`Formatter`."""
    pass


class Formatter(object):
    """Custom log formatter for transcription messages.

    Unlike the generic :class:`logging.Formatter` objects provided with Python, this
    class is configured with more than one format string, to handle each type of
    event that can be logged.  In addition to the standard format fields provided
    by :ref:`logrecord-attributes`, the format strings can use the following.

    For call and return events:

    * call.kind - "call" or "return".
    * call.function - fully qualified name of the operation.
    * call.depth - nesting depth of traced operations.
    * call.indent - two spaces per nesting level.
    * call.arguments - argument list, for calls.
    * call.result - return value, for returns.

    For code events:

    * code.filename - the full path to the file containing the original statement.
    * code.first - this is the first line of generated code associated with the original statement.
    * code.last - this is the last line of generated code associated with the original statement.
    * code.lineno - line number of the file containing the original statement.

    Parameters
    ----------
    fmt: :class:`str`, optional
        Format string for context records.
    callfmt: :class:`str`, optional
        Format string for call records.
    returnfmt: :class:`str`, optional
        Format string for return records.
    codefmt: :class:`str`, optional
        Format string for consistency verification records.
    """
    def __init__(self, fmt, callfmt, returnfmt, codefmt, codepre=None, codepost=None):
        self._fmt = fmt
        self._callfmt = callfmt
        self._returnfmt = returnfmt
        self._codefmt = codefmt
        self._codepre = codepre
        self._codepost = codepost


    def format(self, record):
        """Formats a log record for display."""

        # Format traced operations.
        if hasattr(record, "call"):
            record.call.indent = "  " * record.call.depth
            if record.call.kind == "call":
                return self._callfmt.format_map(record.__dict__)
            return self._returnfmt.format_map(record.__dict__)

        # Format code.
        if hasattr(record, "code"):
            msg = self._codefmt.format_map(record.__dict__)
            if self._codepre and record.code.first:
                msg = self._codepre.format_map(record.__dict__) + msg
            if self._codepost and record.code.last:
                msg = msg + self._codepost.format_map(record.__dict__)
            return msg

        # Format generic messages.
        return self._fmt.format_map(record.__dict__)


class HideCalls(object):
    """Log filter that hides call and return records."""
    def filter(self, record):
        return not hasattr(record, "call")


class HideCode(object):
    """Log filter that hides code records."""
    def filter(self, record):
        return not hasattr(record, "code")


class HideContextMessages(object):
    """Log filter that hides context message records."""
    def filter(self, record):
        return hasattr(record, "code") or hasattr(record, "call")


def _log_code(event, message, first=False, last=False):
    code = Code()
    code.filename = event.filename
    code.lineno = event.lineno
    code.first = first
    code.last = last

    logger.info(message, extra={"code": code})


def assert_equal(lhs, rhs):
    """Test two objects for equality.

    Seamlessly handles special types such as numpy.ndarray and intervals; floats
    are compared to the last few units in the last place.
    """
    if isinstance(lhs, numpy.ndarray) or isinstance(rhs, numpy.ndarray):
        if not numpy.allclose(lhs, rhs, rtol=1e-12, atol=1e-12):
            raise AssertionError(f"{lhs} != {rhs}")
        return

    if isinstance(lhs, float) and isinstance(rhs, float):
        if not numpy.isclose(lhs, rhs, rtol=1e-12, atol=1e-12):
            raise AssertionError(f"{lhs} != {rhs}")
        return

    if not lhs == rhs:
        raise AssertionError(f"{lhs} != {rhs}")


def code_handler(handler=None, fmt=None, codefmt=None, codepre=None, codepost=None, calls=False):
    """Create a :class:`logging.Handler`, configured to display consistency verification code records.

    Parameters
    ----------
    handler: :class:`logging.Handler`, optional
        The handler to be configured. Defaults to a new instance of
        :class:`logging.StreamHandler` if :any:`None`.
    fmt: :class:`str`, optional
        Format string for context records.
    codefmt: :class:`str`, optional
        Format string for consistency verification records.
    codepre: :class:`str`, optional
        Format string displayed before each group of consistency verification code records.
    codepost: :class:`str`, optional
        Format string displayed after each group of consistency verification code records.
    calls: :any:`bool`, optional
        Enable displaying call and return records if :any:`True`.
    """
    if handler is None:
        handler = logging.StreamHandler()

    if fmt is None:
        fmt = "# {msg}"
    if codefmt is None:
        codefmt = "{msg}"
    if codepost is None:
        codepost = "\n"

    if not calls:
        handler.addFilter(HideCalls())
    handler.setFormatter(Formatter(
        fmt=fmt,
        callfmt="# {call.indent}{call.function}({call.arguments})",
        returnfmt="# {call.indent}-> {call.result}",
        codefmt=codefmt,
        codepre=codepre,
        codepost=codepost,
        ))

    return handler


def trace_handler(handler=None, fmt=None, callfmt=None, returnfmt=None, code=False):
    """Create a :class:`logging.Handler`, configured to display call and return records.

    Parameters
    ----------
    handler: :class:`logging.Handler`, optional
        The handler to be configured. Defaults to a new instance of
        :class:`logging.StreamHandler` if :any:`None`.
    fmt: :class:`str`, optional
        Format string for context records.
    callfmt: :class:`str`, optional
        Format string for call records.
    returnfmt: :class:`str`, optional
        Format string for return records.
    code: :any:`bool`, optional
        Display consistency verification code records if :any:`True`.
    """
    if handler is None:
        handler = logging.StreamHandler()

    if fmt is None:
        fmt = "{processName}: {msg}"
    if callfmt is None:
        callfmt = "{processName}: {call.indent}{call.function}({call.arguments})"
    if returnfmt is None:
        returnfmt = "{processName}: {call.indent}-> {call.result}"

    if not code:
        handler.addFilter(HideCode())
    handler.setFormatter(Formatter(fmt=fmt, callfmt=callfmt, returnfmt=returnfmt, codefmt="{processName}: {msg}"))

    return handler


def set_handler(logger, handler):
    """Set the handler for a logger, removing any other handlers.

    Parameters
    ----------
    logger: :class:`logging.Logger`, required
        The logger to be modified.
    handler: :class:`logging.Handler`, required
        The handler to be assigned to `logger`.
    """
    logger.level = logging.INFO
    while logger.handlers:
        logger.removeHandler(logger.handlers[0])
    logger.addHandler(handler)


def log(message=None):
    """Log general-purpose events into the transcription.

    Application code should use this to incorporate high-level context
    alongside the traced operations.
    """
    logger.info(message)


def record():
    """Enable transcription.

    All transcription functionality depends on tracing function calls, so this must
    be called to begin transcription.  The result is a context manager that can be
    used in with-statements.
    """
    return hunter.trace(module_startswith="folded", kind_in=("call", "return"), action=_CallLogger())


logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)
