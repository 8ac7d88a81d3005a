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
"""Utility functions for the sweep wrapper."""


def is_base_type(obj):
    """Check if the object is of a base type that does not need conversion for
    the connection between the different python interpreters."""
    if (
        isinstance(obj, str)
        or isinstance(obj, int)
        or isinstance(obj, float)
        or isinstance(obj, type(None))
    ):
        return True
    else:
        return False


def to_channel_item(item):
    """Convert nested tuples, lists, dictionaries and numpy arrays to base
    types that can be sent over an execnet channel."""

    if hasattr(item, "tolist"):
        return item.tolist()
    elif isinstance(item, tuple) or isinstance(item, list):
        return [to_channel_item(sub_item) for sub_item in item]
    elif isinstance(item, dict):
        return {key: to_channel_item(value) for key, value in item.items()}
    elif isinstance(item, bool) or is_base_type(item):
        return item
    else:
        raise TypeError("Can not send item of type {}!".format(type(item)))


def split_contiguous(count, n_chunks):
    """Split range(count) into n_chunks contiguous (start, stop) pairs whose
    sizes differ by at most one."""

    if n_chunks < 1:
        raise ValueError("Need at least one chunk, got {}!".format(n_chunks))
    n_chunks = min(n_chunks, count)
    base, remainder = divmod(count, n_chunks)
    chunks = []
    start = 0
    for i in range(n_chunks):
        stop = start + base + (1 if i < remainder else 0)
        chunks.append((start, stop))
        start = stop
    return chunks
