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
# type: ignore
"""This script gets executed in a worker python interpreter.

With the package execnet in the host python interpreter a connection is
established between the two interpreters. The first item sent is a
dictionary with the search paths needed to import thermalcat. Afterwards
tasks are received and the results are sent back, until None is sent.
A task is a list [name, scenario dictionary, arguments...].
"""

import sys

# The first call are parameters needed in this script
parameters = channel.receive()
channel.send(None)
if not isinstance(parameters, dict):
    raise TypeError(
        "The first item should be a dictionary. Got {}!\nparameters={}".format(
            type(parameters), parameters
        )
    )

for path in parameters["sys_path"]:
    if path not in sys.path:
        sys.path.append(path)

from thermalcat.ensemble import Scenario
from thermalcat.sweep_wrapper.sweep_wrapper_utility import to_channel_item
from thermalcat.sweeps import density_map, visibility_series

# Now start an endless loop (until None is sent) and evaluate the tasks
while 1:
    receive = channel.receive()

    # If None is sent, break the connection and exit
    if receive is None:
        break

    # 'density': [name, scenario, x, t, components]
    # 'visibility': [name, scenario, t]
    scenario = Scenario.from_dict(receive[1])
    if receive[0] == "density":
        result = density_map(scenario, receive[2], receive[3], components=receive[4])
    elif receive[0] == "visibility":
        result = visibility_series(scenario, receive[2])
    else:
        raise ValueError("Got unexpected task {}!".format(receive[0]))

    channel.send(to_channel_item(result))
