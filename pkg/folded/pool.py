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

"""Run independent tasks in worker processes, returning results in task order."""

import logging
import math
import multiprocessing
import os
import queue
import time
import traceback

log = logging.getLogger(__name__)


class Failed(Exception):
    """Used to indicate that a task raised an exception."""
    def __init__(self, exception, traceback):
        self.exception = exception
        self.traceback = traceback

    def __repr__(self):
        return f"Failed(exception={self.exception!r})" # pragma: no cover


class Terminated(Exception):
    """Used to indicate that a worker process terminated unexpectedly without output."""
    def __init__(self, exitcode):
        self.exitcode = exitcode

    def __repr__(self):
        return f"Terminated(exitcode={self.exitcode!r})" # pragma: no cover


def worker_count(workers=None):
    """Number of worker processes to use.

    Falls back to the FOLDED_WORKERS environment variable, then to one.
    """
    if workers is None:
        workers = int(os.environ.get("FOLDED_WORKERS", 1))
    if workers < 1:
        raise ValueError(f"Expected a positive worker count, got {workers} instead.")
    return workers


def run(fn, tasks, workers=None, show_traceback=False):
    """Call `fn` once per task, using worker processes when more than one is requested.

    Parameters
    ----------
    fn: :func:`callable`, required
        Called with each task as its only argument.
    tasks: sequence, required
        Arguments for `fn`.
    workers: :class:`int`, optional
        Number of processes; see :func:`worker_count`.
    show_traceback: :class:`bool`, optional
        If :any:`True`, a traceback is logged for every failed task.

    Returns
    -------
    results: :class:`list`
        One value per task, in task order.  Tasks whose process exits without
        output are represented by :class:`Terminated`, tasks that raise an
        exception by :class:`Failed`.
    """
    tasks = list(tasks)
    workers = min(worker_count(workers), max(1, len(tasks)))

    if workers == 1:
        results = []
        for task in tasks:
            try:
                results.append(fn(task))
            except Exception as e:
                results.append(Failed(e, traceback.format_exc()))
        _report(results, show_traceback)
        return results

    def launch(*, parent_queue, indices):
        for index in indices:
            try:
                result = fn(tasks[index])
            except Exception as e: # pragma: no cover
                result = Failed(e, traceback.format_exc())
            parent_queue.put((index, result))

    context = multiprocessing.get_context(method="fork")
    parent_queue = context.Queue()

    chunk = math.ceil(len(tasks) / workers)
    processes = []
    for rank in range(workers):
        indices = list(range(rank * chunk, min(len(tasks), (rank + 1) * chunk)))
        processes.append((indices, context.Process(
            name=f"Worker {rank}",
            target=launch,
            kwargs=dict(parent_queue=parent_queue, indices=indices),
            )))

    for indices, process in processes:
        process.daemon = True
        process.start()

    # Drain the queue while waiting, so workers never block on a full pipe.
    collected = []
    while any([process.is_alive() for indices, process in processes]):
        while True:
            try:
                collected.append(parent_queue.get(block=False))
            except queue.Empty:
                break
        time.sleep(0.01)

    for indices, process in processes:
        process.join()

    # Results can still be in flight after a worker exits.
    while len(collected) < len(tasks):
        try:
            collected.append(parent_queue.get(timeout=1.0))
        except queue.Empty:
            break

    results = [None] * len(tasks)
    for indices, process in processes:
        for index in indices:
            results[index] = Terminated(process.exitcode)
    for index, result in collected:
        results[index] = result

    _report(results, show_traceback)
    return results


def _report(results, show_traceback):
    for index, result in enumerate(results):
        if isinstance(result, Failed):
            log.error(f"Task {index} failed: {result.exception!r}")
            if show_traceback: # pragma: no cover
                log.error(result.traceback)
        elif isinstance(result, Terminated):
            log.error(f"Task {index} terminated: {result!r}")
