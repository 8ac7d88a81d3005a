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
"""Command line interface of thermalcat.

All commands read a scenario file (or a baked preset) and write their
results as CSV, JSON or netCDF files. The exit code is 0 on success, 1 for
usage and parse errors, 2 for degenerate physics and 3 for numerical
failures.
"""

import json
import logging
import sys
import warnings

import click
import numpy as np

from thermalcat.dynamics import time_to_width
from thermalcat.ensemble import benchmark_A, check_coverage
from thermalcat.exceptions import (
    NumericalFailureError,
    ScenarioParseError,
    ThermalCatError,
)
from thermalcat.oracle import OracleValidation
from thermalcat.oscillator import OscillatorParams, derive_scales
from thermalcat.output import (
    create_metadata,
    write_density,
    write_visibility,
)
from thermalcat.presets import FIG_PRESETS, get_preset
from thermalcat.scenario_file import read_scenario, serialize
from thermalcat.sweeps import run_density_map, run_visibility_series
from thermalcat.thermalcat_types import OutputFormat, ResolutionTier, UnitSystem

logger = logging.getLogger(__name__)


def _configure_logging(verbose):
    """Set up the root logger and route library warnings through it."""
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger().setLevel(level)
    logging.captureWarnings(True)


def _output_target(scenario_file, out, output_format):
    """Resolve the output path and format from the options and the file.

    Without an explicit format the suffix of the output path decides, CSV
    is the fallback.
    """
    if out is None and scenario_file.output is not None:
        out = scenario_file.output.path
    if output_format is not None:
        return out, OutputFormat[output_format]
    if scenario_file.output is not None:
        return out, scenario_file.output.format
    if out is not None:
        for candidate in OutputFormat:
            if out.endswith(candidate.get_suffix()):
                return out, candidate
    return out, OutputFormat.csv


def _require_grids(scenario_file, names):
    """Raise a parse error if one of the grids is missing."""
    for name in names:
        if getattr(scenario_file, name) is None:
            raise ScenarioParseError("The command needs this grid", field=name)


def _warn_caption_inferred(scenario_file):
    """Warn about preset fields that are not stated explicitly."""
    if scenario_file.caption_inferred:
        warnings.warn(
            "The fields {} of this scenario are inferred from the figure context.".format(
                ", ".join(scenario_file.caption_inferred)
            )
        )


def run_density(scenario_file, *, out=None, output_format=None, threads=None, components=False):
    """Evaluate and write the density map of a scenario, returns the
    metadata hash."""

    _require_grids(scenario_file, ["x_grid", "t_grid"])
    out, output_format = _output_target(scenario_file, out, output_format)
    scenario = scenario_file.to_scenario()
    check_coverage(scenario)

    x = scenario.x_grid.values()
    density = run_density_map(
        scenario, x, scenario.t_grid.values(), components=components, threads=threads
    )
    metadata = create_metadata(
        "density", scenario_file, scenario, components=components
    )
    return write_density(
        out, output_format, metadata, x, scenario_file.t_grid.values(), density
    )


def _benchmark_row(theta_in_ThetaE, scales, t):
    """Benchmark of the visibility at the times t, one for a pure ground
    state or without weak trap."""
    if theta_in_ThetaE == 0 or scales.omega == 0:
        return np.ones(len(t))
    return benchmark_A(theta_in_ThetaE * scales.ThetaE, scales.ThetaE, scales.omega, t)


def run_visibility(scenario_file, *, thetas=None, out=None, output_format=None, threads=None):
    """Evaluate and write the visibility surface of a scenario, returns the
    metadata hash."""

    _require_grids(scenario_file, ["t_grid"])
    out, output_format = _output_target(scenario_file, out, output_format)
    if not thetas:
        if scenario_file.theta_list is not None:
            thetas = scenario_file.theta_list
        else:
            thetas = (scenario_file.theta_in_ThetaE,)
    thetas = tuple(thetas)
    if any(theta < 0 for theta in thetas):
        raise click.BadParameter("Temperatures can not be negative.", param_hint="--theta")
    if scenario_file.t_grid.start < 0:
        raise ScenarioParseError(
            "The visibility is defined after the kick, the grid has to start at t >= 0",
            field="t_grid",
        )
    if scenario_file.k == 0:
        warnings.warn("Without weak trap (k=0) the visibility does not revive.")

    scenario = scenario_file.to_scenario()
    t = scenario.t_grid.values()
    values = np.array(
        [
            run_visibility_series(
                scenario_file.to_scenario(theta), t, threads=threads
            )
            for theta in thetas
        ]
    )
    benchmark = np.array([_benchmark_row(theta, scenario.scales, t) for theta in thetas])

    undefined = int(np.sum(np.isnan(values)))
    if undefined > 0:
        warnings.warn("The visibility is undefined in {} rows.".format(undefined))

    metadata = create_metadata(
        "visibility",
        scenario_file,
        scenario,
        theta_list=list(thetas),
        undefined_visibility_count=undefined,
    )
    return write_visibility(
        out,
        output_format,
        metadata,
        thetas,
        scenario_file.t_grid.values(),
        values,
        benchmark,
    )


def params_report(params, target_width):
    """Derived scales and the expansion time to the target width."""
    scales = derive_scales(params)
    return {
        "M": params.M,
        "K0": params.K0,
        "k": params.k,
        "Omega0": scales.Omega0,
        "ThetaE": scales.ThetaE,
        "sigma0": scales.sigma0,
        "v_expand": scales.v_expand,
        "target_width": target_width,
        "time_to_width": time_to_width(params, target_width),
    }


def _echo_json(data, out):
    """Write a dictionary as JSON to a file or the standard output."""
    text = json.dumps(data, indent=2, sort_keys=True)
    if out is None:
        click.echo(text)
    else:
        with open(out, "w") as file:
            file.write(text + "\n")


def _common_output_options(function):
    """Options shared by all commands that write a result."""
    function = click.option(
        "--threads",
        type=int,
        default=None,
        envvar="THERMALCAT_THREADS",
        help="Number of worker interpreters.",
    )(function)
    function = click.option(
        "--format",
        "output_format",
        type=click.Choice([item.name for item in OutputFormat]),
        default=None,
        help="Output format, default from the suffix of --out or csv.",
    )(function)
    function = click.option(
        "--out", type=click.Path(dir_okay=False), default=None, help="Output file."
    )(function)
    return function


def _scenario_option(function):
    """Required scenario file option."""
    return click.option(
        "--scenario",
        "scenario_path",
        required=True,
        type=click.Path(exists=True, dir_okay=False),
        help="Scenario JSON file.",
    )(function)


@click.group()
@click.option("-v", "--verbose", count=True, help="Increase the log level.")
def cli(verbose):
    """Released, kicked and thermally mixed quantum mirror."""
    _configure_logging(verbose)


@cli.command()
@_scenario_option
@_common_output_options
@click.option(
    "--components", is_flag=True, help="Add the weighted densities of the states."
)
def density(scenario_path, out, output_format, threads, components):
    """Probability density P(x, t) on the grids of the scenario."""
    run_density(
        read_scenario(scenario_path),
        out=out,
        output_format=output_format,
        threads=threads,
        components=components,
    )


@cli.command()
@_scenario_option
@_common_output_options
@click.option(
    "--theta",
    "thetas",
    type=float,
    multiple=True,
    help="Temperature in units of ThetaE, can be repeated.",
)
def visibility(scenario_path, out, output_format, threads, thetas):
    """Visibility and benchmark over temperature and time."""
    run_visibility(
        read_scenario(scenario_path),
        thetas=thetas,
        out=out,
        output_format=output_format,
        threads=threads,
    )


@cli.command("params-report")
@click.option(
    "--scenario",
    "scenario_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Scenario JSON file in SI units.",
)
@click.option("--mass", "M", type=float, default=None, help="Mass in kg.")
@click.option("--K0", "K0", type=float, default=None, help="Stiff spring constant in N/m.")
@click.option("--k", "k", type=float, default=0.0, help="Weak spring constant in N/m.")
@click.option(
    "--units",
    type=click.Choice([item.get_file_string() for item in UnitSystem]),
    default="SI",
)
@click.option(
    "--width", type=float, default=500e-9, help="Target width in m.", show_default=True
)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def params_report_command(scenario_path, M, K0, k, units, width, out):
    """Derived scales and expansion time of a mirror in SI units."""

    if scenario_path is not None:
        scenario_file = read_scenario(scenario_path)
        units = scenario_file.units.get_file_string()
        M, K0, k = scenario_file.M, scenario_file.K0, scenario_file.k
    if UnitSystem.from_file_string(units) != UnitSystem.SI:
        raise click.UsageError(
            "The parameter report works in SI units, natural units are "
            "dimensionless and are evaluated with the other commands."
        )
    if M is None or K0 is None:
        raise click.UsageError("Give a scenario file or both --mass and --K0.")
    _echo_json(params_report(OscillatorParams.si(M, K0, k), width), out)


@cli.command()
@_scenario_option
@click.option(
    "--tier",
    type=click.Choice([item.name for item in ResolutionTier]),
    default="accurate",
    show_default=True,
)
@click.option(
    "--max-n",
    type=int,
    default=None,
    help="Largest state index validated for thermal mixtures, default 5.",
)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def validate(scenario_path, tier, max_n, out):
    """Compare the closed forms with the grid propagator."""

    scenario = read_scenario(scenario_path).to_scenario()
    oracle = OracleValidation(scenario, tier=ResolutionTier[tier], max_n=max_n)
    report = oracle.validate()
    _echo_json(report, out)
    if not report["passed"]:
        raise NumericalFailureError(
            "Validation failed at tolerance {}. {}".format(
                report["tolerance"], report["suggestion"]
            )
        )


@cli.command()
@click.argument("name", type=click.Choice(list(FIG_PRESETS.keys())))
@_common_output_options
@click.option(
    "--dump-scenario", is_flag=True, help="Write the scenario file of the preset."
)
def preset(name, out, output_format, threads, dump_scenario):
    """Reproduce one of the baked figure scenarios."""

    fig_preset = get_preset(name)
    scenario_file = fig_preset.scenario_file
    if dump_scenario:
        if out is None:
            click.echo(serialize(scenario_file), nl=False)
        else:
            with open(out, "w") as file:
                file.write(serialize(scenario_file))
        return

    _warn_caption_inferred(scenario_file)
    if fig_preset.command == "visibility":
        run_visibility(
            scenario_file, out=out, output_format=output_format, threads=threads
        )
    else:
        run_density(scenario_file, out=out, output_format=output_format, threads=threads)


def main(argv=None):
    """Run the command line tool and return its exit code."""

    try:
        cli.main(args=argv, prog_name="thermalcat", standalone_mode=False)
    except click.exceptions.Exit as exception:
        return exception.exit_code
    except (click.ClickException, click.exceptions.Abort) as exception:
        if isinstance(exception, click.ClickException):
            exception.show()
        return 1
    except ThermalCatError as exception:
        logger.debug("Command failed", exc_info=True)
        click.echo("Error: {}".format(exception), err=True)
        return exception.exit_code
    except ValueError as exception:
        click.echo("Error: {}".format(exception), err=True)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
