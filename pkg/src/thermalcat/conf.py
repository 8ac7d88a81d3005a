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
"""This module defines a global object that manages all kind of options
regarding thermalcat."""

import os
import sys

from thermalcat.thermalcat_types import (
    KickMode,
    OutputFormat,
    ResolutionTier,
    UnitSystem,
)


def get_env(environment_variable, convert, *, default=None, throw_error=False):
    """Check if the environment variable is set and can be converted."""
    if environment_variable in os.environ.keys():
        try:
            return convert(os.environ[environment_variable])
        except ValueError:
            if throw_error:
                raise ValueError(
                    "Value {} of {} is not valid!".format(
                        os.environ[environment_variable], environment_variable
                    )
                )

    # No valid value found or given.
    if throw_error and default is None:
        raise ValueError("Value for {} not found!".format(environment_variable))
    return default


class ThermalCatOptions(object):
    """Object for options and types in thermalcat."""

    def __init__(self):
        # Unit systems.
        self.units = UnitSystem

        # Kick modes.
        self.kick_mode = KickMode

        # Output formats.
        self.output_format = OutputFormat

        # Resolution tiers of the grid oracle.
        self.tier = ResolutionTier

        # Guard for the Hermite recurrence.
        self.hermite_max_order = 64

        # Amplitudes beyond this many widths are exactly zero.
        self.tail_guard = 40.0

        # Squared norms below this value are a null function.
        self.degenerate_norm_tol = 1e-12

        # Smallest accepted denominator of the visibility.
        self.visibility_denominator_tol = 1e-300

        # Above this argument the displacement overlap is zero.
        self.laguerre_argument_limit = 700.0

        # Number of thermal states taken into account.
        self.default_cutoff = 13

        # The x-grid has to span this many widths of the state.
        self.coverage_factor = 8.0

        # The oracle grid spans this many widths of the state.
        self.oracle_span_factor = 12.0

        # Boundary amplitude of the oracle grid.
        self.oracle_boundary_tol = 1e-8

        # Tolerance for the closed form versus the oracle.
        self.validation_tolerance = 1e-6

        # Largest K0 / k the oracle is used for.
        self.max_stiffness_ratio = 1e4

        # Largest state index validated for thermal mixtures.
        self.oracle_max_n = 5

        # Schema version of scenario files.
        self.schema_version = 1

    @staticmethod
    def get_threads(threads=None):
        """Get the number of worker interpreters for parameter sweeps."""
        if threads is None:
            threads = get_env("THERMALCAT_THREADS", int, default=1)
        if threads < 1:
            raise ValueError("The number of threads has to be positive!")
        return threads

    @staticmethod
    def get_worker_interpreter():
        """Get the python interpreter used for the worker gateways."""
        return get_env("THERMALCAT_PYTHON", str, default=sys.executable)


# Global object with options for thermalcat.
tcat = ThermalCatOptions()
