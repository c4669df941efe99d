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
Dumps the tabulated smoothing kernel Psi (or, for m = 1, its density psi).

Psi is radial and supported on |x| <= sqrt(m); the table lists Psi at
equally spaced radii from 0 to sqrt(m). With --pdf the tool prints the
one-dimensional density psi with its cumulative distribution instead.

Usage:
    rvfl_psitable [--m <int>] [--resolution <int>] [--pdf]

Example:
    rvfl_psitable --m 2 > psi_m2.csv
    rvfl_psitable --m 1 --pdf > psi_pdf.csv

This program is part of the `rvfl-tools` suite of utilities and should not be
distributed isolatedly.
"""

import sys

from .cli import ToolParser, fail, positive_int, setup_logging
from .errors import RvflError
from .fileio import write_table_csv
from .kernel import TABLE_RESOLUTION, SmoothingKernel, get_kernel

__author__ = "The rvfl-tools authors"


def check_input(args):
    """Parses and validates the command line; returns the option namespace."""
    parser = ToolParser('rvfl_psitable', __doc__)
    parser.add_argument('--m', type=positive_int, default=1)
    parser.add_argument('--resolution', type=positive_int, default=TABLE_RESOLUTION)
    parser.add_argument('--pdf', action='store_true')
    options = parser.parse_args(args)

    if options.resolution < 2:
        parser.error('resolution must be >= 2')
    if options.pdf and options.m != 1:
        parser.error('the density psi is only tabulated for m = 1')
    setup_logging(options.verbose)
    return options


def run(m=1, resolution=TABLE_RESOLUTION, pdf=False):
    """
    Rows of the kernel table.

    Parameters
    ----------
    m : int
        Ambient dimension.

    resolution : int
        Number of tabulated radii.

    pdf : bool
        Emit (x, psi, cdf) rows of the one-dimensional density instead.

    Returns
    -------
    (list of str, iterable of list)
        Header and rows.
    """
    if resolution == TABLE_RESOLUTION:
        kernel = get_kernel(m)
    else:
        kernel = SmoothingKernel(m, resolution)

    if pdf:
        xs, density, cdf = kernel.psi_1d_table()
        return ['x', 'psi', 'cdf'], zip(xs.tolist(), density.tolist(), cdf.tolist())
    return ['radius', 'Psi'], kernel.table_rows()


psi_table = run


def main():
    options = check_input(sys.argv[1:])
    try:
        header, rows = run(options.m, options.resolution, options.pdf)
    except RvflError as err:
        fail(err)

    try:
        write_table_csv(sys.stdout, header, rows)
        sys.stdout.flush()
    except IOError:
        pass

    sys.exit(0)


if __name__ == '__main__':
    main()
