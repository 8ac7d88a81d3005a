# The MIT License (MIT)
#
# Copyright (c) 2025 ThermalCat Authors
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in
# all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN
# THE SOFTWARE.
"""Evaluation of density maps and visibility series over time grids, in
this interpreter or distributed over worker interpreters."""

import logging

import numpy as np

from thermalcat.conf import tcat
from thermalcat.ensemble import ThermalEnsemble, VisibilityEvaluator
from thermalcat.exceptions import UndefinedVisibilityError

logger = logging.getLogger(__name__)


def density_map(scenario, x, t, *, components=False):
    """Density P(x, t) with one row per time.

    Args
    ----
    scenario: Scenario
        The scenario to evaluate.
    x, t: array
        Positions and absolute times.
    components: bool
        If true, the thermally weighted densities of the single states are
        returned with shape (len(t), cutoff + 1, len(x)) instead.
    """

    ensemble = ThermalEnsemble(scenario)
    if components:
        return np.array([ensemble.components(x, t_i) for t_i in t])
    return np.array([ensemble.density(x, t_i) for t_i in t])


def visibility_series(scenario, t):
    """Visibility at the times t, NaN where it is undefined."""

    evaluator = VisibilityEvaluator(scenario)
    values = np.zeros(len(t))
    for i, t_i in enumerate(t):
        try:
            values[i] = evaluator(t_i)
        except UndefinedVisibilityError as exception:
            logger.debug("Undefined visibility: %s", exception)
            values[i] = np.nan
    return values


def run_density_map(scenario, x, t, *, components=False, threads=None):
    """Density map, distributed over worker interpreters if more than one
    thread is requested."""

    threads = tcat.get_threads(threads)
    if threads == 1 or len(t) < 2:
        return density_map(scenario, x, t, components=components)

    # Set up the states here, so invalid scenarios fail before workers start.
    ThermalEnsemble(scenario)

    from thermalcat.sweep_wrapper.sweep_wrapper_host import SweepPool

    with SweepPool(min(threads, len(t))) as pool:
        return pool.density_map(scenario, x, t, components=components)


def run_visibility_series(scenario, t, *, threads=None):
    """Visibility series, distributed over worker interpreters if more than
    one thread is requested."""

    threads = tcat.get_threads(threads)
    if threads == 1 or len(t) < 2:
        return visibility_series(scenario, t)

    VisibilityEvaluator(scenario)

    from thermalcat.sweep_wrapper.sweep_wrapper_host import SweepPool

    with SweepPool(min(threads, len(t))) as pool:
        return pool.visibility_series(scenario, t)
