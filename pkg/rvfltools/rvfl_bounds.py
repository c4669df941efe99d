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
Prints the parameter schedule and the width bounds for a range of dimensions.

For every m the tool reports the budget split (alpha, beta, gamma), lambda,
Lambda = lambda/sigma, theta and log10 of the main-theorem width together
with its large-m approximation. Output is CSV (default) or JSON.

Usage:
    rvfl_bounds --m <range> --eps <float> --eta <float> [options]

Options:
    --ell <float>      Lipschitz constant (default 1, or the target's)
    --R <float>        circumradius (default 1, or the target's)
    --sigma <float>    hidden-weight scale (default 1)
    --dK auto|<float>  effective dimension; 'auto' uses the Euclidean ball
                       value d = m, or the Monte Carlo estimate for --target
    --target <name>    built-in target or sample CSV defining K
    --grid <int>       grid nodes per axis for built-in targets (default 21)
    --samples <int>    Monte Carlo samples for --dK auto (default 1000000)
    --json / --csv     output format (default CSV)

Example:
    rvfl_bounds --m 1..5 --eps 0.1 --eta 0.1 --ell 1 --R 1 --dK auto
    rvfl_bounds --m 2 --eps 0.05 --eta 0.01 --target tent --json

This program is part of the `rvfl-tools` suite of utilities and should not be
distributed isolatedly.
"""

import json
import logging
import sys

from .bounds import LN10, n_approx, n_main, schedule
from .cli import (ToolParser, fail, positive_float, positive_int, range_type, setup_logging,
                  unit_interval)
from .errors import RvflError
from .fileio import write_table_csv
from .targets import load_target

__author__ = "The rvfl-tools authors"

log = logging.getLogger(__name__)

CSV_COLUMNS = ['m', 'epsilon', 'eta', 'ell', 'R', 'sigma', 'dK', 'dK_stderr',
               'alpha', 'beta', 'gamma', 'lambda', 'Lambda', 'theta',
               'log10_inv_theta', 'log10_n_main', 'log10_n_approx', 'n_main']


def _dk_type(text):
    if text == 'auto':
        return text
    return positive_float(text)


def check_input(args):
    """Parses and validates the command line; returns the option namespace."""
    parser = ToolParser('rvfl_bounds', __doc__)
    parser.add_argument('--m', type=range_type, required=True)
    parser.add_argument('--eps', type=positive_float, required=True)
    parser.add_argument('--eta', type=unit_interval, required=True)
    parser.add_argument('--ell', type=positive_float, default=None)
    parser.add_argument('--R', type=positive_float, default=None)
    parser.add_argument('--sigma', type=positive_float, default=1.0)
    parser.add_argument('--dK', type=_dk_type, default='auto')
    parser.add_argument('--target', default=None)
    parser.add_argument('--grid', type=positive_int, default=21)
    parser.add_argument('--samples', type=positive_int, default=10 ** 6)
    parser.add_argument('--seed', type=int, default=0)
    fmt = parser.add_mutually_exclusive_group()
    fmt.add_argument('--json', dest='fmt', action='store_const', const='json')
    fmt.add_argument('--csv', dest='fmt', action='store_const', const='csv')
    parser.set_defaults(fmt='csv')

    options = parser.parse_args(args)
    if any(m < 1 for m in options.m):
        parser.error('dimensions must be >= 1: {}'.format(options.m))
    setup_logging(options.verbose)
    return options


def _geometry(m, ell, R, dK, target, grid, samples, seed):
    """(ell, R, dK, dK_stderr) for one dimension."""
    if target is None:
        dk = float(m) if dK == 'auto' else dK
        return (1.0 if ell is None else ell, 1.0 if R is None else R, dk, 0.0)

    sampled = load_target(target, m, grid, ell)
    if sampled.m != m:
        raise RvflError('target \'{}\' lives in dimension {}, not {}'.format(
            target, sampled.m, m))
    stderr = 0.0
    if dK == 'auto':
        estimate = sampled.domain.effective_dimension(samples, seed)
        dk, stderr = estimate.value, estimate.stderr
        log.info('m=%d: d(K)=%.4f +- %.2g', m, dk, stderr)
    else:
        dk = dK
    return (sampled.ell, sampled.R if R is None else R, dk, stderr)


def run(ms, epsilon, eta, ell=None, R=None, sigma=1.0, dK='auto', target=None,
        grid=21, samples=10 ** 6, seed=0):
    """
    Schedules and width bounds for every dimension in `ms`.

    Parameters
    ----------
    ms : list of int
        Dimensions.

    epsilon : float
        Target accuracy.

    eta : float
        Failure probability, in (0, 1).

    ell, R : float, optional
        Lipschitz constant and circumradius. Default to 1 without a target,
        and to the target's own values with one.

    sigma : float
        Hidden-weight scale.

    dK : 'auto' or float
        Effective dimension.

    target : str, optional
        Built-in target name or sample CSV whose domain defines K.

    grid, samples, seed : int
        Grid resolution of built-in targets, and Monte Carlo settings of
        the effective-dimension estimate.

    Returns
    -------
    list of dict
        One record per m with keys params, schedule, log10_n_main,
        log10_n_approx and n_main (None when above 2^63).
    """
    records = []
    for m in ms:
        m_ell, m_R, dk, dk_err = _geometry(m, ell, R, dK, target, grid, samples, seed)
        sched = schedule(m, epsilon, m_ell, m_R, sigma)
        main = n_main(sched, eta, dk)
        approx = n_approx(m, epsilon, eta, m_ell, m_R, dk)
        records.append({
            'params': {'m': m, 'epsilon': epsilon, 'eta': eta, 'ell': m_ell, 'R': m_R,
                       'sigma': sigma, 'dK': dk, 'dK_stderr': dk_err},
            'schedule': {'alpha': float(sched.alpha), 'beta': float(sched.beta),
                         'gamma': float(sched.gamma), 'lambda': sched.lam,
                         'Lambda': sched.Lambda, 'theta': sched.theta,
                         'log10_inv_theta': sched.log_inv_theta / LN10},
            'log10_n_main': main.log10,
            'log10_n_approx': approx.log10,
            'n_main': main.n,
        })
    return records


width_bounds = run


def _csv_row(record):
    p, s = record['params'], record['schedule']
    return [p['m'], p['epsilon'], p['eta'], p['ell'], p['R'], p['sigma'], p['dK'],
            p['dK_stderr'], s['alpha'], s['beta'], s['gamma'], s['lambda'], s['Lambda'],
            s['theta'], s['log10_inv_theta'], record['log10_n_main'],
            record['log10_n_approx'], '' if record['n_main'] is None else record['n_main']]


def main():
    options = check_input(sys.argv[1:])
    try:
        records = run(options.m, options.eps, options.eta, options.ell, options.R,
                      options.sigma, options.dK, options.target, options.grid,
                      options.samples, options.seed)
    except RvflError as err:
        fail(err, __doc__)

    try:
        if options.fmt == 'json':
            json.dump(records, sys.stdout, indent=2, sort_keys=True)
            sys.stdout.write('\n')
        else:
            write_table_csv(sys.stdout, CSV_COLUMNS, [_csv_row(r) for r in records])
        sys.stdout.flush()
    except IOError:
        # This is here to catch Broken Pipes
        # for example to use 'head' or 'tail' without
        # the error message showing up
        pass

    sys.exit(0)


if __name__ == '__main__':
    main()
