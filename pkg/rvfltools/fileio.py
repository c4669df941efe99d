#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# Copyright 2024 The rvfl-tools authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
Reading and writing CSV tables and serialized networks.

CSV files use '.' as decimal separator and RFC-4180 quoting. Point files
hold one point per row (header optional); sample files append the target
value as last column.

Networks are JSON documents whose arrays are base64 strings of
little-endian float64 data, so a write/read cycle is bit-exact.
"""

import base64
import csv
import json

import numpy as np

from .errors import NetworkFormatError, RvflError

__author__ = "The rvfl-tools authors"

NETWORK_FORMAT = 'rvfl-network'
NETWORK_VERSION = 1


def _is_number(text):
    try:
        float(text)
    except ValueError:
        return False
    return True


def read_table_csv(path):
    """Numeric table from CSV, skipping a non-numeric header row."""
    with open(path, 'r', newline='') as handle:
        rows = [row for row in csv.reader(handle) if row and any(c.strip() for c in row)]
    if rows and not all(_is_number(c) for c in rows[0]):
        rows = rows[1:]
    if not rows:
        raise RvflError('no numeric rows in \'{}\''.format(path))
    width = len(rows[0])
    for lineno, row in enumerate(rows, start=1):
        if len(row) != width:
            raise RvflError('row {} of \'{}\' has {} columns, expected {}'.format(
                lineno, path, len(row), width))
    try:
        return np.array([[float(c) for c in row] for row in rows])
    except ValueError as err:
        raise RvflError('non-numeric entry in \'{}\': {}'.format(path, err))


def read_points_csv(path):
    """(N, m) array of points."""
    return read_table_csv(path)


def read_samples_csv(path):
    """(points, values): every column but the last, and the last one."""
    table = read_table_csv(path)
    if table.shape[1] < 2:
        raise RvflError('sample file needs coordinates and a value column')
    return table[:, :-1], table[:, -1]


def format_value(value):
    """Shortest round-tripping text of a number."""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_table_csv(handle, header, rows):
    """Writes `header` and `rows` to an open text handle."""
    writer = csv.writer(handle)
    if header:
        writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(v) for v in row])


def encode_array(arr):
    data = np.ascontiguousarray(arr, dtype='<f8').tobytes()
    return base64.b64encode(data).decode('ascii')


def decode_array(text, shape=None):
    try:
        raw = base64.b64decode(text.encode('ascii'), validate=True)
    except (ValueError, AttributeError) as err:
        raise NetworkFormatError('bad array encoding: {}'.format(err))
    if len(raw) % 8:
        raise NetworkFormatError('array byte length is not a multiple of 8')
    arr = np.frombuffer(raw, dtype='<f8').astype(float)
    if shape is not None:
        if arr.size != int(np.prod(shape)):
            raise NetworkFormatError('array of {} values cannot take shape {}'.format(
                arr.size, shape))
        arr = arr.reshape(shape)
    return arr


def network_to_dict(net):
    """JSON-ready document of an `RvflNetwork`."""
    return {
        'format': NETWORK_FORMAT,
        'version': NETWORK_VERSION,
        'm': int(net.m),
        'n': int(net.n),
        'sigma': float(net.sigma),
        'R': float(net.R),
        'seed': net.seed,
        'zeta': float(net.zeta),
        'provenance': net.provenance,
        'center': encode_array(net.center),
        'w': encode_array(net.weights),
        'b': encode_array(net.biases),
        'a': encode_array(net.outer),
    }


def network_from_dict(doc):
    """Inverse of `network_to_dict`."""
    from .rvfl import RvflNetwork

    if doc.get('format') != NETWORK_FORMAT:
        raise NetworkFormatError('not an rvfl network document')
    try:
        m, n = int(doc['m']), int(doc['n'])
        return RvflNetwork(
            weights=decode_array(doc['w'], (n, m)),
            biases=decode_array(doc['b'], (n,)),
            outer=decode_array(doc['a'], (n,)),
            zeta=float(doc['zeta']),
            sigma=float(doc['sigma']),
            R=float(doc['R']),
            center=decode_array(doc['center'], (m,)),
            provenance=doc['provenance'],
            seed=doc.get('seed'))
    except KeyError as err:
        raise NetworkFormatError('missing field {}'.format(err))


def write_network(net, handle):
    json.dump(network_to_dict(net), handle, indent=2, sort_keys=True)
    handle.write('\n')


def read_network(handle):
    try:
        doc = json.load(handle)
    except ValueError as err:
        raise NetworkFormatError('invalid JSON: {}'.format(err))
    return network_from_dict(doc)
