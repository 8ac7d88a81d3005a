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
"""Scenario files: JSON documents describing one experiment.

Times in a scenario file are given in periods of the weak trap when
natural units are used and k > 0, in natural time units when natural units
are used and k = 0, and in seconds for SI units. The conversion to the
internal absolute times is done in ScenarioFile.time_scale only.
"""

import dataclasses
import json
from dataclasses import dataclass

import numpy as np

from thermalcat.conf import tcat
from thermalcat.ensemble import Grid, Scenario
from thermalcat.exceptions import ScenarioParseError
from thermalcat.oscillator import OscillatorParams, derive_scales
from thermalcat.superposition import KickSpec
from thermalcat.thermalcat_types import KickMode, OutputFormat, UnitSystem

# Order of the fields in a serialized scenario file.
FIELD_ORDER = [
    "schema",
    "units",
    "M",
    "K0",
    "k",
    "theta_in_ThetaE",
    "p_gamma",
    "tau_in_T",
    "phi",
    "cutoff_N",
    "kick_mode",
    "pure_state",
    "theta_list",
    "switches",
    "x_grid",
    "t_grid",
    "output",
    "caption_inferred",
]

REQUIRED_FIELDS = ["units", "M", "K0", "k", "theta_in_ThetaE", "p_gamma", "tau_in_T"]


@dataclass(frozen=True)
class OutputSpec:
    """Where and in which format the results of a scenario are written."""

    path: str
    format: OutputFormat = OutputFormat.csv

    def to_dict(self):
        """Return the output specification as it appears in the file."""
        return {"path": self.path, "format": self.format.name}


@dataclass(frozen=True)
class ScenarioFile:
    """Contents of a scenario file, all times in file units.

    Args
    ----
    units: UnitSystem
        Natural (hbar = kB = 1) or SI units.
    M, K0, k: float
        Mass, stiff and weak spring constant.
    theta_in_ThetaE: float
        Temperature in units of the Einstein temperature.
    p_gamma: float
        Momentum of each kicked branch.
    tau_in_T: float
        Release time, negative, in file time units.
    phi: float
        Relative phase of the kicked branches.
    cutoff_N: int
        Highest eigenstate in the thermal mixture.
    kick_mode: KickMode
        Superposition or single boost.
    pure_state: int
        If not None, only this eigenstate is populated.
    theta_list: tuple
        Temperatures (in units of ThetaE) for visibility sweeps.
    switches: tuple
        Pairs (t_i, k_i) of later trap changes, t_i in file time units.
    x_grid, t_grid: Grid
        Evaluation grids, t_grid in file time units.
    output: OutputSpec
        Default output of the scenario.
    caption_inferred: tuple
        Names of fields whose values are not stated explicitly by the
        source of a preset.
    """

    units: UnitSystem
    M: float
    K0: float
    k: float
    theta_in_ThetaE: float
    p_gamma: float
    tau_in_T: float
    phi: float = np.pi
    cutoff_N: int = tcat.default_cutoff
    kick_mode: KickMode = KickMode.superposition
    pure_state: int = None
    theta_list: tuple = None
    switches: tuple = ()
    x_grid: Grid = None
    t_grid: Grid = None
    output: OutputSpec = None
    caption_inferred: tuple = ()

    def params(self):
        """Physical parameters of this scenario."""
        hbar, kB = self.units.get_constants()
        return OscillatorParams(hbar=hbar, kB=kB, M=self.M, K0=self.K0, k=self.k)

    def time_scale(self):
        """Factor from file time units to absolute times."""
        if self.units == UnitSystem.natural and self.k > 0:
            return derive_scales(self.params()).T_weak
        return 1.0

    def to_scenario(self, theta_in_ThetaE=None):
        """Create the internal scenario, optionally at another temperature."""

        if theta_in_ThetaE is None:
            theta_in_ThetaE = self.theta_in_ThetaE
        params = self.params()
        scale = self.time_scale()
        return Scenario(
            params=params,
            theta=theta_in_ThetaE * derive_scales(params).ThetaE,
            kick=KickSpec(p_gamma=self.p_gamma, phi=self.phi),
            tau=self.tau_in_T * scale,
            cutoff=self.cutoff_N,
            x_grid=self.x_grid,
            t_grid=None if self.t_grid is None else self.t_grid.scaled(scale),
            kick_mode=self.kick_mode,
            pure_state=self.pure_state,
            switches=tuple(
                (switch_time * scale, spring) for switch_time, spring in self.switches
            ),
        )

    def with_updates(self, **kwargs):
        """Return a copy with some fields replaced."""
        return dataclasses.replace(self, **kwargs)

    def to_dict(self):
        """Return the file contents as a dictionary of base types."""

        data = {
            "schema": tcat.schema_version,
            "units": self.units.get_file_string(),
            "M": self.M,
            "K0": self.K0,
            "k": self.k,
            "theta_in_ThetaE": self.theta_in_ThetaE,
            "p_gamma": self.p_gamma,
            "tau_in_T": self.tau_in_T,
            "phi": self.phi,
            "cutoff_N": self.cutoff_N,
            "kick_mode": self.kick_mode.get_file_string(),
            "pure_state": self.pure_state,
            "theta_list": None if self.theta_list is None else list(self.theta_list),
            "switches": [list(switch) for switch in self.switches],
            "x_grid": _grid_to_dict(self.x_grid),
            "t_grid": _grid_to_dict(self.t_grid),
            "output": None if self.output is None else self.output.to_dict(),
            "caption_inferred": list(self.caption_inferred),
        }
        return {key: data[key] for key in FIELD_ORDER}


def _grid_to_dict(grid):
    """Grid as it appears in a scenario file."""
    if grid is None:
        return None
    return {"start": grid.start, "stop": grid.stop, "count": grid.count}


def serialize(scenario_file):
    """Return the scenario file as JSON text."""
    return json.dumps(scenario_file.to_dict(), indent=2) + "\n"


def write_scenario(scenario_file, path):
    """Write a scenario file to disk."""
    with open(path, "w") as file:
        file.write(serialize(scenario_file))


def _line_of_field(text, name):
    """Line number of the first occurrence of a field in the JSON text."""
    key = '"{}"'.format(name)
    for i, line in enumerate(text.splitlines()):
        if key in line:
            return i + 1
    return None


class _FieldReader(object):
    """Reads typed fields from the decoded JSON and reports the location of
    invalid entries."""

    def __init__(self, data, text):
        self.data = data
        self.text = text

    def error(self, name, message):
        """Return a parse error located at the field."""
        return ScenarioParseError(
            message, field=name, line=_line_of_field(self.text, name)
        )

    def number(self, name, default=None, *, allow_none=False):
        """Read a real number."""
        value = self.data.get(name, default)
        if value is None and allow_none:
            return None
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise self.error(name, "Expected a number, got {!r}".format(value))
        if not np.isfinite(value):
            raise self.error(name, "Expected a finite number, got {!r}".format(value))
        return value

    def integer(self, name, default=None, *, allow_none=False):
        """Read a nonnegative integer."""
        value = self.data.get(name, default)
        if value is None and allow_none:
            return None
        if isinstance(value, bool) or not isinstance(value, int) or value < 0:
            raise self.error(
                name, "Expected a nonnegative integer, got {!r}".format(value)
            )
        return value

    def enum(self, name, converter, default=None):
        """Read an enum from its file string."""
        value = self.data.get(name, default)
        try:
            return converter(value)
        except ValueError as exception:
            raise self.error(name, str(exception))

    def grid(self, name):
        """Read a grid given as {"start", "stop", "count"}."""
        value = self.data.get(name)
        if value is None:
            return None
        if not isinstance(value, dict) or set(value.keys()) != {
            "start",
            "stop",
            "count",
        }:
            raise self.error(
                name, "A grid needs exactly the entries start, stop and count"
            )
        reader = _FieldReader(value, self.text)
        try:
            return Grid(
                start=reader.number("start"),
                stop=reader.number("stop"),
                count=reader.integer("count"),
            )
        except ValueError as exception:
            raise self.error(name, str(exception))

    def number_list(self, name):
        """Read a list of numbers."""
        value = self.data.get(name)
        if value is None:
            return None
        if not isinstance(value, list) or len(value) == 0:
            raise self.error(name, "Expected a non-empty list of numbers")
        reader = _FieldReader(dict(enumerate(value)), self.text)
        try:
            return tuple(reader.number(i) for i in range(len(value)))
        except ScenarioParseError:
            raise self.error(name, "Expected a list of numbers, got {!r}".format(value))

    def switches(self, name):
        """Read the list of trap switches [[t_i, k_i], ...]."""
        value = self.data.get(name, [])
        if not isinstance(value, list):
            raise self.error(name, "Expected a list of [time, spring constant] pairs")
        switches = []
        for item in value:
            if (
                not isinstance(item, list)
                or len(item) != 2
                or any(
                    isinstance(entry, bool) or not isinstance(entry, (int, float))
                    for entry in item
                )
            ):
                raise self.error(
                    name, "Expected a [time, spring constant] pair, got {!r}".format(item)
                )
            switches.append(tuple(item))
        return tuple(switches)

    def output(self, name):
        """Read the output specification."""
        value = self.data.get(name)
        if value is None:
            return None
        if not isinstance(value, dict) or not isinstance(value.get("path"), str):
            raise self.error(name, 'The output needs a "path" entry')
        output_format = value.get("format", "csv")
        if not isinstance(output_format, str) or (
            output_format not in OutputFormat.__members__
        ):
            raise self.error(
                name, "Unknown output format {!r}".format(output_format)
            )
        return OutputSpec(path=value["path"], format=OutputFormat[output_format])


def parse(text):
    """Parse the JSON text of a scenario file.

    Raises a ScenarioParseError with the line and field of the first
    problem found.
    """

    try:
        data = json.loads(text)
    except json.JSONDecodeError as exception:
        raise ScenarioParseError(
            "Invalid JSON: {}".format(exception.msg), line=exception.lineno
        )
    if not isinstance(data, dict):
        raise ScenarioParseError("A scenario file has to contain a JSON object")

    reader = _FieldReader(data, text)
    unknown = [key for key in data.keys() if key not in FIELD_ORDER]
    if unknown:
        raise reader.error(unknown[0], "Unknown field")
    for name in REQUIRED_FIELDS:
        if name not in data:
            raise ScenarioParseError("Missing required field", field=name)

    schema = data.get("schema", tcat.schema_version)
    if schema != tcat.schema_version:
        raise reader.error(
            "schema",
            "Unsupported schema {!r}, expected {}".format(schema, tcat.schema_version),
        )

    theta_in_ThetaE = reader.number("theta_in_ThetaE")
    if theta_in_ThetaE < 0:
        raise reader.error("theta_in_ThetaE", "The temperature can not be negative")
    tau_in_T = reader.number("tau_in_T")
    if not tau_in_T < 0:
        raise reader.error(
            "tau_in_T", "The release has to happen before the kick, tau_in_T < 0"
        )

    t_grid = reader.grid("t_grid")
    if t_grid is not None and t_grid.start < tau_in_T:
        raise reader.error(
            "t_grid", "The t-grid has to start at or after the release time tau_in_T"
        )

    caption_inferred = data.get("caption_inferred", [])
    if not isinstance(caption_inferred, list) or not all(
        name in FIELD_ORDER for name in caption_inferred
    ):
        raise reader.error(
            "caption_inferred", "Expected a list of field names of this file"
        )

    scenario_file = ScenarioFile(
        units=reader.enum("units", UnitSystem.from_file_string),
        M=reader.number("M"),
        K0=reader.number("K0"),
        k=reader.number("k"),
        theta_in_ThetaE=theta_in_ThetaE,
        p_gamma=reader.number("p_gamma"),
        tau_in_T=tau_in_T,
        phi=reader.number("phi", np.pi),
        cutoff_N=reader.integer("cutoff_N", tcat.default_cutoff),
        kick_mode=reader.enum(
            "kick_mode", KickMode.from_file_string, "superposition"
        ),
        pure_state=reader.integer("pure_state", allow_none=True),
        theta_list=reader.number_list("theta_list"),
        switches=reader.switches("switches"),
        x_grid=reader.grid("x_grid"),
        t_grid=t_grid,
        output=reader.output("output"),
        caption_inferred=tuple(caption_inferred),
    )

    # Build the internal objects once, so physically invalid values are
    # reported as parse errors.
    try:
        scenario_file.to_scenario()
    except ValueError as exception:
        raise ScenarioParseError(str(exception))
    return scenario_file


def read_scenario(path):
    """Read and parse a scenario file."""
    with open(path, "r") as file:
        return parse(file.read())
