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

"""Functionality to collect log messages as run diagnostics."""

import contextlib
import logging

_collectors = []


class Logger(object):
    """Wrap a normal Python logger, copying important messages into run diagnostics.

    Messages at or above `threshold` are appended to every list opened with
    :func:`collect`, in addition to being passed to the wrapped logger.  The
    command line tools use this to fill the diagnostics of their reports.

    Parameters
    ----------
    logger: :class:`logging.Logger`, required.
        The Python logger to be used for output.
    threshold: :class:`int`, optional
        Minimum level of collected messages.  Defaults to :data:`logging.WARNING`.
    collect: :class:`bool`, optional
        Used to control collection, which is enabled by default.
    """
    def __init__(self, logger, threshold=logging.WARNING, collect=True):
        self._logger = logger
        self._threshold = threshold
        self._collect = collect


    @property
    def collect(self):
        """True if messages are being collected."""
        return self._collect


    def critical(self, msg, *args, **kwargs):
        """Log a critical message.

        The arguments match those of :meth:`logging.Logger.critical`.
        """
        self.log(logging.CRITICAL, msg, *args, **kwargs)


    def debug(self, msg, *args, **kwargs):
        """Log a debug message.

        The arguments match those of :meth:`logging.Logger.debug`.
        """
        self.log(logging.DEBUG, msg, *args, **kwargs)


    def error(self, msg, *args, **kwargs):
        """Log an error message.

        The arguments match those of :meth:`logging.Logger.error`.
        """
        self.log(logging.ERROR, msg, *args, **kwargs)


    def info(self, msg, *args, **kwargs):
        """Log an info message.

        The arguments match those of :meth:`logging.Logger.info`.
        """
        self.log(logging.INFO, msg, *args, **kwargs)


    def log(self, level, msg, *args, **kwargs):
        """Log a message, collecting it when it is important enough.

        The arguments match those of :meth:`logging.Logger.log`.
        """
        self._logger.log(level, msg, *args, **kwargs)
        if self._collect and level >= self._threshold:
            message = msg % args if args else msg
            for collector in _collectors:
                collector.append({"level": logging.getLevelName(level), "source": self._logger.name, "message": message})


    def warning(self, msg, *args, **kwargs):
        """Log a warning message.

        The arguments match those of :meth:`logging.Logger.warning`.
        """
        self.log(logging.WARNING, msg, *args, **kwargs)


    @property
    def logger(self):
        """Returns the underlying Python :class:`logging.Logger`."""
        return self._logger


    @contextlib.contextmanager
    def override(self, *, collect=None):
        """Temporarily change logging behavior.

        Use :meth:`override` to temporarily modify logger behavior in a with statement::

            with log.override(collect=False):
                # Messages here don't become diagnostics.
            # Go back to collecting here.

        Parameters
        ----------
        collect: :class:`bool`, optional
            If specified, override the logger collect property.
        """
        original_collect = self._collect
        if collect is not None:
            self._collect = collect
        try:
            yield
        finally:
            self._collect = original_collect


@contextlib.contextmanager
def collect():
    """Gather diagnostics from every :class:`Logger` for the duration of a with statement::

        with folded.logger.collect() as diagnostics:
            ...
        # diagnostics is a list of dicts with level, source and message.
    """
    diagnostics = []
    _collectors.append(diagnostics)
    try:
        yield diagnostics
    finally:
        _collectors.remove(diagnostics)
