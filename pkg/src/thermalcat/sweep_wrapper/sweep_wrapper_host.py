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
"""This module creates the objects that connect the main python interpreter
with worker interpreters evaluating parts of a sweep."""

import atexit
import logging
import os
import sys

import execnet
import numpy as np

from thermalcat.conf import tcat
from thermalcat.sweep_wrapper.sweep_wrapper_utility import (
    split_contiguous,
    to_channel_item,
)

logger = logging.getLogger(__name__)


class SweepConnect(object):
    """This class holds a connection to a worker python interpreter with
    thermalcat loaded.

    Tasks are sent to that interpreter and the results can be received
    later, so several workers can evaluate at the same time.
    """

    def __init__(self, *, interpreter=None):
        """Initialize the connection between the worker python interpreter
        and this one.

        Args
        ----
        interpreter: str
            Python executable of the worker, per default the one given by
            the environment variable THERMALCAT_PYTHON.
        """

        if interpreter is None:
            interpreter = tcat.get_worker_interpreter()

        # Set up the worker python interpreter
        self.gw = execnet.makegateway("popen//python={}".format(interpreter))

        # Load the main code in the worker python interpreter
        client_python_file = os.path.join(
            os.path.dirname(__file__), "sweep_wrapper_client.py"
        )
        with open(client_python_file, "r") as myfile:
            data = myfile.read()

        # Set up the connection channel
        self.channel = self.gw.remote_exec(data)

        # Send parameters to the worker interpreter, it has to be able to
        # import this version of thermalcat
        parameters = {}
        parameters["sys_path"] = [path for path in sys.path if path]
        self.send_and_return(parameters)

        def cleanup_execnet_gateway():
            """We need to register a function called at interpreter shutdown
            that ensures that the execnet connection is closed first,
            otherwise, we get a runtime error during shutdown."""
            self.gw.exit()

        self._cleanup = cleanup_execnet_gateway
        atexit.register(cleanup_execnet_gateway)

    def send(self, task):
        """Send a task to the worker without waiting for the result."""
        self.channel.send(to_channel_item(task))

    def receive(self):
        """Wait for and return the result of the last task."""
        return self.channel.receive()

    def send_and_return(self, task):
        """Send a task to the worker and collect the return value."""
        self.send(task)
        return self.receive()

    def close(self):
        """Stop the worker loop and close the gateway."""
        if self.channel.isclosed():
            return
        self.channel.send(None)
        self.channel.waitclose()
        self.gw.exit()
        atexit.unregister(self._cleanup)


class SweepPool(object):
    """A fixed number of workers that evaluate contiguous chunks of a time
    grid. The results are gathered in the order of the time grid."""

    def __init__(self, workers, *, interpreter=None):
        """Start the workers.

        Args
        ----
        workers: int
            Number of worker interpreters.
        interpreter: str
            Python executable of the workers.
        """

        if workers < 1:
            raise ValueError("Need at least one worker, got {}!".format(workers))
        logger.debug("Start %d worker interpreters", workers)
        self.connections = [
            SweepConnect(interpreter=interpreter) for _i in range(workers)
        ]

    def __enter__(self):
        return self

    def __exit__(self, *args):
        self.close()

    def close(self):
        """Close all worker connections."""
        for connection in self.connections:
            connection.close()
        logger.debug("Closed %d worker interpreters", len(self.connections))

    def _map_chunks(self, make_task, t):
        """Send one task per contiguous chunk of t and gather the results
        in order."""

        chunks = split_contiguous(len(t), len(self.connections))
        for connection, (start, stop) in zip(self.connections, chunks):
            connection.send(make_task(t[start:stop]))
        return [
            np.array(connection.receive(), dtype=float)
            for connection, _chunk in zip(self.connections, chunks)
        ]

    def density_map(self, scenario, x, t, *, components=False):
        """Distributed version of thermalcat.sweeps.density_map."""
        scenario_dict = scenario.to_dict()
        x = np.asarray(x, dtype=float)
        results = self._map_chunks(
            lambda t_chunk: ["density", scenario_dict, x, t_chunk, components],
            np.asarray(t, dtype=float),
        )
        return np.concatenate(results, axis=0)

    def visibility_series(self, scenario, t):
        """Distributed version of thermalcat.sweeps.visibility_series."""
        scenario_dict = scenario.to_dict()
        results = self._map_chunks(
            lambda t_chunk: ["visibility", scenario_dict, t_chunk],
            np.asarray(t, dtype=float),
        )
        return np.concatenate(results)
