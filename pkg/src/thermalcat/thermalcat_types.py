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
"""This module contains ENums for types used in thermalcat as well as
functions to convert them to and from the strings used in scenario files and
on the command line."""

from enum import Enum, auto

import scipy.constants


class UnitSystem(Enum):
    """Enum for the unit system of a scenario."""

    natural = auto()
    SI = auto()

    def get_file_string(self):
        """Return the string that represents this item in a scenario file."""

        if self == self.natural:
            return "natural"
        elif self == self.SI:
            return "SI"
        else:
            raise ValueError("Got unexpected type {}!".format(self))

    def get_constants(self):
        """Return the constants (hbar, kB) of this unit system."""

        if self == self.natural:
            return 1.0, 1.0
        elif self == self.SI:
            return scipy.constants.hbar, scipy.constants.k
        else:
            raise ValueError("Got unexpected type {}!".format(self))

    @classmethod
    def from_file_string(cls, string):
        """Return the unit system for a scenario file string."""
        for item in cls:
            if item.get_file_string() == string:
                return item
        raise ValueError('Got unexpected unit system "{}"!'.format(string))


class KickMode(Enum):
    """Enum for the way the photon momentum is transferred at t=0."""

    # A single momentum boost, no superposition.
    boost = auto()
    # The two-branch momentum superposition.
    superposition = auto()

    def get_file_string(self):
        """Return the string that represents this item in a scenario file."""

        if self == self.boost:
            return "boost"
        elif self == self.superposition:
            return "superposition"
        else:
            raise ValueError("Got unexpected type {}!".format(self))

    @classmethod
    def from_file_string(cls, string):
        """Return the kick mode for a scenario file string."""
        for item in cls:
            if item.get_file_string() == string:
                return item
        raise ValueError('Got unexpected kick mode "{}"!'.format(string))


class OutputFormat(Enum):
    """Enum for output formats."""

    csv = auto()
    json = auto()
    nc = auto()

    def get_suffix(self):
        """Return the file suffix for this format."""

        if self == self.csv:
            return ".csv"
        elif self == self.json:
            return ".json"
        elif self == self.nc:
            return ".nc"
        else:
            raise ValueError("Got unexpected type {}!".format(self))


class ResolutionTier(Enum):
    """Enum for the resolution of the grid oracle."""

    fast = auto()
    accurate = auto()

    def get_grid_parameters(self):
        """Return the number of grid points and the number of time steps per
        period of the stiff trap."""

        if self == self.fast:
            return 2048, 512
        elif self == self.accurate:
            return 4096, 4096
        else:
            raise ValueError("Got unexpected type {}!".format(self))
