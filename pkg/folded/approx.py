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

"""Constant factor approximation of the Fréchet distance between folded polygons.

The smallest eps passing the diagonal monotonicity test, eps*, is a lower
bound on the Fréchet distance, and the distance never exceeds 9 eps*.
"""

import collections
import logging

import numpy

import folded.logger
from folded.decide import diagonal_monotonicity_test, minimize_monotonicity_eps
from folded.geometry import TOLERANCE, Metric
from folded.untangle import DistanceIndeterminate, fpt_compute

log = folded.logger.Logger(logging.getLogger(__name__))

FACTOR = 9


class ApproxResult(object):
    """Interval containing the Fréchet distance of a pair of folded polygons.

    Attributes
    ----------
    eps_star: :class:`float`
        Smallest eps accepted by the monotonicity test.
    lower: :class:`float`
        Equal to `eps_star`.
    upper: :class:`float`
        Equal to nine times `eps_star`.
    witness: :class:`folded.decide.MonotoneDiagonalMapping`
        Witness of the test at `eps_star`.
    swapped: :class:`bool`
        True if the diagonals come from the second polygon.
    alternate: :class:`ApproxResult` or :any:`None`
        The other orientation, when its eps* differs by more than tolerance.
    """
    def __init__(self, eps_star, witness, swapped=False, alternate=None):
        self.eps_star = eps_star
        self.lower = eps_star
        self.upper = FACTOR * eps_star
        self.witness = witness
        self.swapped = swapped
        self.alternate = alternate

    def __repr__(self):
        return f"ApproxResult(eps_star={self.eps_star}, lower={self.lower}, upper={self.upper}, swapped={self.swapped})"

    def contains(self, value, tolerance=1e-6):
        """True if `value` lies in the interval, within `tolerance`."""
        return self.lower - tolerance <= value <= self.upper + tolerance


def _orientation(P, Q, metric, swapped):
    first, second = (Q, P) if swapped else (P, Q)
    eps_star = minimize_monotonicity_eps(first, second, metric)
    witness = diagonal_monotonicity_test(first, second, eps_star + TOLERANCE, metric)
    if witness is None: # pragma: no cover
        log.warning(f"No witness at the optimum {eps_star}.")
    return ApproxResult(eps_star, witness, swapped)


def approx_compute(P, Q, metric=Metric.L2, both=True):
    """Approximate the Fréchet distance between `P` and `Q`.

    The polygon with fewer diagonals supplies them.  Unless `both` is
    :any:`False` the other orientation is computed too, and attached as
    :attr:`ApproxResult.alternate` when the two differ by more than
    :data:`folded.geometry.TOLERANCE`.

    Returns
    -------
    result: :class:`ApproxResult`
    """
    metric = Metric.parse(metric)
    swapped = len(P.interior_edges) > len(Q.interior_edges)
    result = _orientation(P, Q, metric, swapped)
    log.info(f"eps* = {result.eps_star}, interval [{result.lower}, {result.upper}]")
    if both:
        other = _orientation(P, Q, metric, not swapped)
        if abs(other.eps_star - result.eps_star) > TOLERANCE:
            log.warning(f"Monotonicity test optimum depends on orientation: {result.eps_star} versus {other.eps_star}.")
            result.alternate = other
    return result


TightnessEntry = collections.namedtuple("TightnessEntry", ["eps_star", "exact", "ratio"])
TightnessEntry.__doc__ = """Approximation and exact value for one instance, with their ratio."""


class TightnessReport(object):
    """Empirical ratios between the exact distance and the approximation lower bound.

    Attributes
    ----------
    entries: :class:`list` of :class:`TightnessEntry`
    indeterminate: :class:`list` of :class:`int`
        Indices of instances whose exact distance couldn't be decided.
    """
    def __init__(self, entries, indeterminate=None):
        self.entries = list(entries)
        self.indeterminate = [] if indeterminate is None else list(indeterminate)

    def __repr__(self):
        return f"TightnessReport(count={len(self.entries)}, indeterminate={len(self.indeterminate)}, maximum={self.maximum}, mean={self.mean})"

    @property
    def maximum(self):
        return max((entry.ratio for entry in self.entries), default=None)

    @property
    def mean(self):
        return float(numpy.mean([entry.ratio for entry in self.entries])) if self.entries else None

    @property
    def ratios(self):
        return [entry.ratio for entry in self.entries]

    @property
    def within_bounds(self):
        """True if every ratio lies in [1, 9], within tolerance."""
        return all(1 - 1e-6 <= entry.ratio <= FACTOR + 1e-6 for entry in self.entries)


def ratio(exact, eps_star):
    """exact / eps_star, with 0 / 0 reported as 1."""
    if eps_star <= TOLERANCE:
        return 1.0 if exact <= TOLERANCE else float("inf")
    return exact / eps_star


def approx_tightness_report(instances, metric=Metric.L2, tolerance=None):
    """Compare :func:`approx_compute` with :func:`folded.untangle.fpt_compute` on small instances.

    Parameters
    ----------
    instances: sequence of (P, Q) pairs, required
    metric: :class:`folded.geometry.Metric`, optional
    tolerance: :class:`float`, optional
        Feasibility tolerance for the exact computation.

    Returns
    -------
    report: :class:`TightnessReport`
        Instances with an indeterminate exact distance are listed, not scored.
    """
    metric = Metric.parse(metric)
    entries = []
    indeterminate = []
    for index, (P, Q) in enumerate(instances):
        approximation = approx_compute(P, Q, metric, both=False)
        first, second = (Q, P) if approximation.swapped else (P, Q)
        try:
            exact = fpt_compute(first, second, metric, tolerance, lower=approximation.eps_star)
        except DistanceIndeterminate as e:
            log.warning(f"Instance {index}: {e}")
            indeterminate.append(index)
            continue
        entry = TightnessEntry(approximation.eps_star, exact, ratio(exact, approximation.eps_star))
        if not approximation.contains(exact):
            log.error(f"Exact value {exact} lies outside [{approximation.lower}, {approximation.upper}].")
        entries.append(entry)
    return TightnessReport(entries, indeterminate)
