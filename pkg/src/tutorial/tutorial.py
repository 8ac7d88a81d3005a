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
"""This file contains a tutorial for thermalcat, following a mirror that is
cooled in a stiff trap, released into a weak trap, kicked into a momentum
superposition and observed while its interference pattern dephases and
revives.

Most basic functionality is covered by this tutorial. For more
information have a closer look at the test cases, as they cover all
relevant functionality.
"""

import numpy as np

from thermalcat import tcat
from thermalcat.ensemble import (
    Grid,
    VisibilityEvaluator,
    benchmark_A,
    check_coverage,
    thermal_density,
)
from thermalcat.scenario_file import ScenarioFile, write_scenario
from thermalcat.superposition import KickedState


def thermal_mirror_tutorial(scenario_file_path, *, verbose=True):
    """Walk through the physics of a kicked thermal mirror and write the
    scenario to a file.

    Args
    ----
    scenario_file_path: str
        Path of the scenario file written by the tutorial.
    verbose: bool
        Print the intermediate results.

    Returns
    -------
    results: dict
        Some of the computed quantities.
    """

    def out(*args):
        """Print only in verbose mode."""
        if verbose:
            print(*args)

    # A scenario file describes one experiment. We use natural units
    # (hbar = kB = 1), a mirror of mass 1 in a stiff trap with spring
    # constant 64 that is released a quarter period before the kick into a
    # weak trap with spring constant 4. Times are given in periods of the
    # weak trap, the temperature in units of the Einstein temperature.
    scenario_file = ScenarioFile(
        units=tcat.units.natural,
        M=1,
        K0=64,
        k=4,
        theta_in_ThetaE=3,
        p_gamma=2,
        tau_in_T=-0.25,
        phi=np.pi,
        kick_mode=tcat.kick_mode.superposition,
        x_grid=Grid(-16, 16, 801),
        t_grid=Grid(0, 1, 201),
    )

    # The scenario file is converted to the internal scenario, where all
    # times are absolute.
    scenario = scenario_file.to_scenario()
    scales = scenario.scales
    out("Ground state width sigma0 = {:.6f}".format(scales.sigma0))
    out("Einstein temperature ThetaE = {:.6f}".format(scales.ThetaE))
    out("Period of the weak trap T = {:.6f}".format(scales.T_weak))

    # The thermal state is truncated at the cutoff (default 13). The
    # probability that is lost by the truncation is the tail mass.
    weights = scenario.get_weights()
    out("Probability beyond the cutoff: {:.4f}".format(weights.tail_mass))

    # The grids have to cover the released state at all times.
    check_coverage(scenario)

    # Each eigenstate of the stiff trap is kicked into a superposition of
    # two momentum branches. Its normalization depends on the overlap of
    # the branches.
    ground_state = KickedState(
        0, scenario.params, scenario.tau, scenario.kick, switches=scenario.switches
    )
    out("Normalization of the kicked ground state: {:.6f}".format(ground_state.norm_const))

    # The density of the thermal mixture at the time of the kick and after
    # half a period of the weak trap are mirror images of each other.
    x = scenario.x_grid.values()
    density_kick = thermal_density(scenario, x, 0.0)
    density_half_period = thermal_density(scenario, x, 0.5 * scales.T_weak)
    out(
        "Largest difference between P(x, 0) and P(-x, T/2): {:.3e}".format(
            np.max(np.abs(density_kick - density_half_period[::-1]))
        )
    )

    # The visibility compares the density at the origin for the phases 0
    # and pi. It dephases after the kick and revives after half a period.
    evaluator = VisibilityEvaluator(scenario)
    times = [0.0, 0.125 * scales.T_weak, 0.5 * scales.T_weak]
    values = [evaluator(t) for t in times]
    benchmark = benchmark_A(scenario.theta, scales.ThetaE, scales.omega, times)
    for t, value, value_benchmark in zip(times, values, benchmark):
        out(
            "t = {:.4f}: visibility {:.6f}, benchmark {:.6f}".format(
                t, value, value_benchmark
            )
        )

    # Finally the scenario is written to a file, it can be evaluated with
    # the command line tool, e.g. `thermalcat density --scenario <file>`.
    write_scenario(scenario_file, scenario_file_path)

    return {
        "tail_mass": weights.tail_mass,
        "density_kick": density_kick,
        "density_half_period": density_half_period,
        "visibility": values,
        "benchmark": list(benchmark),
    }


if __name__ == "__main__":
    """Execution part of script."""

    thermal_mirror_tutorial("thermalcat_tutorial.json")
