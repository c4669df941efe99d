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
Exports the surrogate chain of a target on a grid: f, f~, g and h.

f~ is the Lipschitz extension of the samples, g its smoothed version
computed through the spectral representation, and h the truncated
spectral expectation that the constructive network estimates. Values are
shifted back by the removed offset zeta, so all columns are comparable to f.

Usage:
    rvfl_surrogate --lambda <float> [options]

Options:
    --target <name|csv>   built-in target or sample CSV (default tent)
    --m <int>             dimension of built-in targets (default 1)
    --grid <int>          grid nodes per axis of built-in targets (default 101)
    --ell <float>         Lipschitz constant override
    --lambda <float>      frequency scale
    --theta <float>       truncation parameter (default 0.05)
    --points <csv>        evaluate here instead of on the target samples
    --method <name>       quadrature (m <= 3) or montecarlo
    --samples <int>       Monte Carlo samples (default 100000)
    --seed <int>          Monte Carlo seed (default 0)
    --workers <int>       worker threads (default 1)

Example:
    rvfl_surrogate --target tent --lambda 20 --theta 0.05 > chain.csv

This program is part of the `rvfl-tools` suite of utilities and should not be
distributed isolatedly.
"""

import os
import sys

import numpy as np

from .cli import ToolParser, fail, positive_float, positive_int, setup_logging
from .errors import RvflError
from .fileio import read_points_csv, write_table_csv
from .kernel import get_kernel
from .lipschitz import extend, recenter
from .spectral import SpectralSurrogate, g_spectral, h_truncated
from .targets import load_target

__author__ = "The rvfl-tools authors"


def check_input(args):
    """Parses and validates the command line; returns the option namespace."""
    parser = ToolParser('rvfl_surrogate', __doc__)
    parser.add_argument('--target', default='tent')
    parser.add_argument('--m', type=positive_int, default=1)
    parser.add_argument('--grid', type=positive_int, default=101)
    parser.add_argument('--ell', type=positive_float, default=None)
    parser.add_argument('--lambda', dest='lam', type=positive_float, required=True)
    parser.add_argument('--theta', type=float, default=0.05)
    parser.add_argument('--points', default=None)
    parser.add_argument('--method', choices=('quadrature', 'montecarlo'), default=None)
    parser.add_argument('--samples', type=positive_int, default=10 ** 5)
    parser.add_argument('--seed', type=int, default=0)
    parser.add_argument('--workers', type=positive_int, default=1)
    options = parser.parse_args(args)

    if options.theta < 0:
        parser.error('theta must be >= 0: {}'.format(options.theta))
    if options.points is not None and not os.path.isfile(options.points):
        fail('File not found or not readable: \'{}\''.format(options.points), __doc__)
    setup_logging(options.verbose)
    return options


def run(target='tent', m=1, grid=101, ell=None, lam=1.0, theta=0.05, points=None,
        method=None, mc_samples=10 ** 5, seed=0, workers=1):
    """
    Surrogate chain on a set of points.

    Parameters
    ----------
    target : str
        Built-in target name or sample CSV.

    lam, theta : float
        Frequency scale and truncation parameter.

    points : array_like, optional
        (N, m) evaluation points in original coordinates; the target's
        sample points by default, in which case f is reported too.

    method : str, optional
        'quadrature' or 'montecarlo'; quadrature by default for m <= 3.

    Returns
    -------
    (list of str, list of list)
        Header and rows.
    """
    original = load_target(target, m, grid, ell)
    samples = recenter(original)
    ext = extend(samples)
    surrogate = SpectralSurrogate(ext, get_kernel(samples.m), lam, theta)

    if points is None:
        pts, f_values = original.domain.points, original.values
    else:
        pts = np.asarray(points, dtype=float).reshape(-1, samples.m)
        f_values = None
    local = pts - samples.center
    zeta = samples.zeta

    f_ext = ext(local) + zeta
    g = g_spectral(surrogate, local, method, mc_samples, seed, workers)
    h = h_truncated(surrogate, local, mc_samples, seed, method, workers)

    header = ['x{}'.format(k + 1) for k in range(samples.m)]
    header += ['f', 'f_ext', 'g', 'g_err', 'h', 'h_err']
    g_val, g_err = np.broadcast_to(g.value, f_ext.shape), np.broadcast_to(g.stderr, f_ext.shape)
    h_val, h_err = np.broadcast_to(h.value, f_ext.shape), np.broadcast_to(h.stderr, f_ext.shape)
    rows = []
    for i, point in enumerate(pts):
        f_i = '' if f_values is None else f_values[i]
        rows.append(list(point) + [f_i, f_ext[i], g_val[i] + zeta, g_err[i],
                                   h_val[i] + zeta, h_err[i]])
    return header, rows


surrogate_chain = run


def main():
    options = check_input(sys.argv[1:])
    try:
        points = None if options.points is None else read_points_csv(options.points)
        header, rows = run(options.target, options.m, options.grid, options.ell,
                           options.lam, options.theta, points, options.method,
                           options.samples, options.seed, options.workers)
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
