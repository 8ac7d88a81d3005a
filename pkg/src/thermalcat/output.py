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
"""Write density maps and visibility surfaces as CSV, JSON or netCDF files,
together with a JSON metadata sidecar."""

import datetime
import hashlib
import json
import logging
import sys
from importlib.metadata import PackageNotFoundError, version

import netCDF4
import numpy as np

from thermalcat.thermalcat_types import OutputFormat, UnitSystem

logger = logging.getLogger(__name__)

SIDECAR_SUFFIX = ".meta.json"


def get_version():
    """Return the installed version of thermalcat."""
    try:
        return version("thermalcat")
    except PackageNotFoundError:
        return "unknown"


def _finite_or_none(value):
    """Map values JSON can not represent to None."""
    if isinstance(value, float) and not np.isfinite(value):
        return None
    return value


def _clean(item):
    """Recursively convert an item to strict JSON types."""
    if isinstance(item, dict):
        return {key: _clean(value) for key, value in item.items()}
    elif isinstance(item, (list, tuple)):
        return [_clean(value) for value in item]
    elif isinstance(item, np.generic):
        return _finite_or_none(item.item())
    return _finite_or_none(item)


def time_unit_name(scenario_file):
    """Name of the time unit used in the scenario file."""
    if scenario_file.units == UnitSystem.SI:
        return "s"
    if scenario_file.time_scale() != 1.0:
        return "T"
    return "natural"


def create_metadata(command, scenario_file, scenario, **kwargs):
    """Collect everything needed to reproduce an output file.

    Args
    ----
    command: str
        Name of the command that created the output.
    scenario_file: ScenarioFile
        The scenario as given by the user.
    scenario: Scenario
        The internal scenario, used for derived quantities.
    kwargs:
        Additional entries, e.g. the temperatures of a visibility sweep.
    """

    metadata = {
        "tool": "thermalcat",
        "version": get_version(),
        "command": command,
        "scenario": scenario_file.to_dict(),
        "derived_scales": scenario.scales.to_dict(),
        "time_unit": time_unit_name(scenario_file),
        "time_scale": scenario_file.time_scale(),
        "tail_mass": scenario.get_weights().tail_mass,
        "caption_inferred": list(scenario_file.caption_inferred),
    }
    metadata.update(kwargs)
    metadata = _clean(metadata)
    metadata["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return metadata


def metadata_hash(metadata):
    """SHA-256 of the metadata without the timestamp."""
    hashed = {key: value for key, value in metadata.items() if key != "timestamp"}
    text = json.dumps(hashed, sort_keys=True)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def density_table(x, t, density):
    """Columns and rows (t outer, x inner) of a density map.

    Args
    ----
    x, t: array
        Positions and times (in file units).
    density: array
        Shape (len(t), len(x)), or (len(t), N + 1, len(x)) for the
        weighted densities of the single states.
    """

    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    density = np.asarray(density, dtype=float)

    columns = ["x", "t", "P"]
    data = [np.tile(x, len(t)), np.repeat(t, len(x))]
    if density.ndim == 3:
        data.append(np.sum(density, axis=1).ravel())
        for n in range(density.shape[1]):
            columns.append("P_{}".format(n))
            data.append(density[:, n, :].ravel())
    else:
        data.append(density.ravel())
    return columns, np.column_stack(data)


def visibility_table(thetas, t, values, benchmark):
    """Columns and rows (theta outer, t inner) of a visibility surface.

    Args
    ----
    thetas, t: array
        Temperatures (in units of ThetaE) and times (in file units).
    values, benchmark: array
        Visibility and benchmark, shape (len(thetas), len(t)).
    """

    thetas = np.asarray(thetas, dtype=float)
    t = np.asarray(t, dtype=float)
    values = np.asarray(values, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_values = np.log10(values)
    columns = ["theta", "t", "V", "A", "log10V"]
    data = [
        np.repeat(thetas, len(t)),
        np.tile(t, len(thetas)),
        values.ravel(),
        np.asarray(benchmark, dtype=float).ravel(),
        log_values.ravel(),
    ]
    return columns, np.column_stack(data)


def write_csv(stream, command, hash_value, columns, rows):
    """Write a table with the metadata hash as a comment line."""
    stream.write("# thermalcat {} metadata-sha256={}\n".format(command, hash_value))
    stream.write(",".join(columns) + "\n")
    np.savetxt(stream, rows, fmt="%.17g", delimiter=",")


def write_json(stream, hash_value, columns, rows):
    """Write a table as JSON, undefined values are written as null."""
    data = {
        "metadata_sha256": hash_value,
        "columns": columns,
        "rows": [[_finite_or_none(float(value)) for value in row] for row in rows],
    }
    json.dump(data, stream)
    stream.write("\n")


def write_netcdf(path, hash_value, metadata, dimensions, variables):
    """Write arrays on a tensor product grid to a netCDF4 file.

    Args
    ----
    path: str
        Output file.
    hash_value: str
        Hash of the metadata.
    metadata: dict
        Stored as JSON text in a global attribute.
    dimensions: dict
        Name and coordinate values of each dimension, in order.
    variables: dict
        Name, dimension names and values of each data variable.
    """

    with netCDF4.Dataset(path, "w", format="NETCDF4") as dataset:
        dataset.metadata_sha256 = hash_value
        dataset.metadata = json.dumps(metadata, sort_keys=True)
        for name, values in dimensions.items():
            dataset.createDimension(name, len(values))
            coordinate = dataset.createVariable(name, "f8", (name,))
            coordinate[:] = values
        for name, (dimension_names, values) in variables.items():
            variable = dataset.createVariable(name, "f8", dimension_names)
            variable[:] = values


def write_sidecar(path, metadata):
    """Write the metadata next to the output file."""
    with open(path + SIDECAR_SUFFIX, "w") as file:
        json.dump(metadata, file, indent=2, sort_keys=True)
        file.write("\n")


def write_result(path, output_format, command, metadata, columns, rows, netcdf_data):
    """Write a result in the requested format.

    Args
    ----
    path: str
        Output file, None writes CSV or JSON to the standard output.
    output_format: OutputFormat
        Format of the output file.
    command: str
        Name of the command that created the result.
    metadata: dict
        Metadata of the result.
    columns, rows:
        The result as a table.
    netcdf_data: (dict, dict)
        Dimensions and variables of the result on its grid.
    """

    hash_value = metadata_hash(metadata)
    if output_format == OutputFormat.nc:
        if path is None:
            raise ValueError("netCDF output needs an output path!")
        write_netcdf(path, hash_value, metadata, *netcdf_data)
    elif path is None:
        _write_table(sys.stdout, output_format, command, hash_value, columns, rows)
    else:
        with open(path, "w") as stream:
            _write_table(stream, output_format, command, hash_value, columns, rows)

    if path is not None:
        write_sidecar(path, metadata)
        logger.info("Wrote %d rows to %s", len(rows), path)
    return hash_value


def _write_table(stream, output_format, command, hash_value, columns, rows):
    """Write a table in CSV or JSON format."""
    if output_format == OutputFormat.csv:
        write_csv(stream, command, hash_value, columns, rows)
    elif output_format == OutputFormat.json:
        write_json(stream, hash_value, columns, rows)
    else:
        raise ValueError("Got unexpected format {}!".format(output_format))


def write_density(path, output_format, metadata, x, t, density):
    """Write a density map, see density_table for the arguments."""

    columns, rows = density_table(x, t, density)
    density = np.asarray(density, dtype=float)
    variables = {}
    if density.ndim == 3:
        variables["P"] = (("t", "x"), np.sum(density, axis=1))
        variables["P_n"] = (("t", "n", "x"), density)
        dimensions = {"t": t, "n": np.arange(density.shape[1]), "x": x}
    else:
        variables["P"] = (("t", "x"), density)
        dimensions = {"t": t, "x": x}
    return write_result(
        path,
        output_format,
        "density",
        metadata,
        columns,
        rows,
        (dimensions, variables),
    )


def write_visibility(path, output_format, metadata, thetas, t, values, benchmark):
    """Write a visibility surface, see visibility_table for the arguments."""

    columns, rows = visibility_table(thetas, t, values, benchmark)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_values = np.log10(np.asarray(values, dtype=float))
    variables = {
        "V": (("theta", "t"), values),
        "A": (("theta", "t"), benchmark),
        "log10V": (("theta", "t"), log_values),
    }
    return write_result(
        path,
        output_format,
        "visibility",
        metadata,
        columns,
        rows,
        ({"theta": thetas, "t": t}, variables),
    )
