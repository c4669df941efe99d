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
Evaluates a serialized RVFL network on the points of a CSV file.

Points are read one per row in original coordinates (header optional).
The output CSV repeats the coordinates and appends the network value.

Usage:
    rvfl_eval <network.json> <points.csv>

Example:
    rvfl_eval net.json grid.csv > values.csv

This program is part of the `rvfl-tools` suite of utilities and should not be
distributed isolatedly.
"""

import os
import sys

from .cli import ToolParser, fail, setup_logging
from .errors import RvflError
from .fileio import read_network, read_points_csv, write_table_csv

__author__ = "The rvfl-tools authors"


def check_input(args):
    """Checks that both input files exist; returns the option namespace."""
    parser = ToolParser('rvfl_eval', __doc__)
    parser.add_argument('network')
    parser.add_argument('points')
    options = parser.parse_args(args)

    for path in (options.network, options.points):
        if not os.path.isfile(path):
            fail('File not found or not readable: \'{}\''.format(path), __doc__)
    setup_logging(options.verbose)
    return options


def run(network_path, points_path):
    """
    Evaluates a stored network.

    Parameters
    ----------
    network_path : str
        JSON document written by `rvfl_build`.

    points_path : str
        CSV file with one point per row.

    Yields
    ------
    list
        Coordinates of each point followed by the network value.
    """
    with open(network_path, 'r') as handle:
        net = read_network(handle)
    points = read_points_csv(points_path)
    if points.shape[1] != net.m:
        raise RvflError('points have dimension {}, network expects {}'.format(
            points.shape[1], net.m))
    values = net(points)
    for point, value in zip(points, values):
        yield list(point) + [value]


evaluate_network = run


def main():
    options = check_input(sys.argv[1:])
    try:
        rows = list(run(options.network, options.points))
    except RvflError as err:
        fail(err)

    m = len(rows[0]) - 1
    header = ['x{}'.format(i + 1) for i in range(m)] + ['value']
    try:
        write_table_csv(sys.stdout, header, rows)
        sys.stdout.flush()
    except IOError:
        pass

    sys.exit(0)


if __name__ == '__main__':
    main()
