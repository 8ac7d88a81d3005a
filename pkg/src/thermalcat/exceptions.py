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
"""Exceptions raised by thermalcat.

Every exception derived from ThermalCatError carries the exit code that
the command line tool returns when the exception reaches it.
"""


class ThermalCatError(Exception):
    """Base class for all errors with a defined exit code."""

    exit_code = 3


class ScenarioParseError(ThermalCatError, ValueError):
    """A scenario file or one of its fields could not be parsed."""

    exit_code = 1

    def __init__(self, message, *, field=None, line=None):
        self.field = field
        self.line = line
        location = []
        if line is not None:
            location.append("line {}".format(line))
        if field is not None:
            location.append('field "{}"'.format(field))
        if location:
            message = "{} ({})".format(message, ", ".join(location))
        super().__init__(message)


class ContractViolationError(ThermalCatError, ValueError):
    """An operation was evaluated outside of its precondition."""

    exit_code = 3


class HermiteDomainError(ContractViolationError):
    """The requested Hermite order is above the overflow guard."""


class DegenerateSuperpositionError(ThermalCatError, ValueError):
    """The two kicked branches cancel each other (null function)."""

    exit_code = 2


class UndefinedVisibilityError(ThermalCatError, ValueError):
    """The denominator of the visibility vanishes."""

    exit_code = 2


class GridTooSmallError(ThermalCatError):
    """A grid does not cover the state, or the state reaches the grid
    boundary."""

    exit_code = 3


class NumericalFailureError(ThermalCatError):
    """A numerical validation did not reach the requested tolerance."""

    exit_code = 3
