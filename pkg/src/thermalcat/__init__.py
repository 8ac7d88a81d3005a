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
"""This module simulates a harmonically trapped quantum mirror that is released,
kicked into a momentum superposition and thermally mixed."""

from thermalcat.conf import tcat
from thermalcat.dynamics import ReleasedState, TrapSchedule, released_amplitude
from thermalcat.ensemble import (
    Grid,
    Scenario,
    benchmark_A,
    heat_capacity_ratio,
    thermal_density,
    thermal_weights,
    visibility,
)
from thermalcat.oscillator import OscillatorParams, derive_scales
from thermalcat.scenario_file import ScenarioFile, read_scenario
from thermalcat.superposition import KickedState, KickSpec, kicked_amplitude

# Define the items that will be exported by default.
__all__ = [
    # thermalcat options.
    "tcat",
    # Physical parameters and states.
    "OscillatorParams",
    "derive_scales",
    "TrapSchedule",
    "ReleasedState",
    "released_amplitude",
    "KickSpec",
    "KickedState",
    "kicked_amplitude",
    # Thermal observables.
    "Grid",
    "Scenario",
    "thermal_weights",
    "thermal_density",
    "visibility",
    "benchmark_A",
    "heat_capacity_ratio",
    # Scenario files.
    "ScenarioFile",
    "read_scenario",
]
