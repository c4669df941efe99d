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
Runs the numerical checks of the approximation chain and prints a JSON report.

Every check compares an observed quantity with the bound it must respect.
Checks that do not apply to the requested dimension are reported as
skipped. The exit code is 1 if any check fails.

Usage:
    rvfl_validate [--m <range>] [--target <name|csv>] [options]

Options:
    --m <range>            dimensions to check (default 1)
    --target <name|csv>    built-in target or sample CSV (default tent)
    --grid <int>           grid nodes per axis of built-in targets
    --ell <float>          Lipschitz constant override
    --lambda <floats>      comma-separated frequency scales (default 5,10,20)
    --theta <floats>       comma-separated truncation parameters (default 0.02,0.05)
    --check <ids>          comma-separated check ids; repeatable (default: all)
    --list                 print the available check ids and exit
    --quick                reduced Monte Carlo sizes
    --seed <int>           master seed (default 0)
    --workers <int>        worker threads (default $RVFL_WORKERS or 1)
    --corrupt-psi <float>  scale the Psi table by this factor (negative control)

Example:
    rvfl_validate --m 1 --target tent > report.json
    rvfl_validate --m 1..2 --quick --check kernel_psi_at_zero,smoothing_envelope

This program is part of the `rvfl-tools` suite of utilities and should not be
distributed isolatedly.
"""

import argparse
import json
import sys

from . import __version__
from .cli import ToolParser, fail, positive_float, positive_int, range_type, setup_logging
from .config import default_workers
from .errors import RvflError
from .validation import ValidationContext, available_checks, result_to_dict, run_checks

__author__ = "The rvfl-tools authors"


def _float_list(text):
    values = []
    for item in text.split(','):
        if item.strip():
            values.append(positive_float(item.strip()))
    if not values:
        raise argparse.ArgumentTypeError('empty list: \'{}\''.format(text))
    return values


def check_input(args):
    """Parses and validates the command line; returns the option namespace."""
    parser = ToolParser('rvfl_validate', __doc__)
    parser.add_argument('--m', type=range_type, default=[1])
    parser.add_argument('--target', default='tent')
    parser.add_argument('--grid', type=positive_int, default=None)
    parser.add_argument('--ell', type=positive_float, default=None)
    parser.add_argument('--lambda', dest='lambdas', type=_float_list, default=[5.0, 10.0, 20.0])
    parser.add_argument('--theta', dest='thetas', type=_float_list, default=[0.02, 0.05])
    parser.add_argument('--check', dest='checks', action='append', default=None)
    parser.add_argument('--list', action='store_true')
    parser.add_argument('--quick', action='store_true')
    parser.add_argument('--seed', type=int, default=0)
    parser.add_argument('--workers', type=positive_int, default=None)
    parser.add_argument('--corrupt-psi', dest='psi_scale', type=float, default=1.0)

    options = parser.parse_args(args)
    if any(m < 1 for m in options.m):
        parser.error('dimensions must be >= 1: {}'.format(options.m))

    if options.checks is not None:
        selected = [c.strip() for item in options.checks for c in item.split(',') if c.strip()]
        unknown = [c for c in selected if c not in available_checks()]
        if unknown:
            parser.error('unknown check(s): {}'.format(', '.join(unknown)))
        options.checks = selected

    if options.workers is None:
        try:
            options.workers = default_workers()
        except RvflError as err:
            parser.error(str(err))
    setup_logging(options.verbose)
    return options


def run(ms, target='tent', grid=None, ell=None, lambdas=(5.0, 10.0, 20.0),
        thetas=(0.02, 0.05), checks=None, quick=False, seed=0, workers=1, psi_scale=1.0):
    """
    Runs the selected checks for every dimension.

    Parameters
    ----------
    ms : list of int
        Dimensions.

    target : str
        Built-in target name or sample CSV.

    checks : list of str, optional
        Check ids; all registered checks by default.

    psi_scale : float
        Factor applied to the Psi table. Anything but 1 corrupts the
        kernel and must make the kernel checks fail.

    The remaining parameters are passed to `ValidationContext`.

    Returns
    -------
    dict
        Report with the package version, the settings, one result record
        per check and dimension, and the number of failures.
    """
    records = []
    for m in ms:
        ctx = ValidationContext(m=m, target=target, grid=grid, ell=ell, lambdas=lambdas,
                                thetas=thetas, seed=seed, workers=workers, quick=quick,
                                psi_scale=psi_scale)
        for result in run_checks(ctx, checks):
            record = result_to_dict(result)
            record['m'] = m
            records.append(record)

    failed = [r['check_id'] for r in records if not r['pass']]
    return {
        'version': __version__,
        'target': target,
        'm': list(ms),
        'quick': bool(quick),
        'seed': seed,
        'psi_scale': psi_scale,
        'results': records,
        'failed': len(failed),
        'failed_checks': failed,
    }


validate_lemmas = run


def main():
    options = check_input(sys.argv[1:])
    if options.list:
        sys.stdout.write('\n'.join(available_checks()) + '\n')
        sys.exit(0)

    try:
        report = run(options.m, options.target, options.grid, options.ell, options.lambdas,
                     options.thetas, options.checks, options.quick, options.seed,
                     options.workers, options.psi_scale)
    except RvflError as err:
        fail(err, __doc__)

    try:
        json.dump(report, sys.stdout, indent=2)
        sys.stdout.write('\n')
        sys.stdout.flush()
    except IOError:
        pass

    if report['failed']:
        fail('{} check(s) failed: {}'.format(report['failed'],
                                              ', '.join(report['failed_checks'])))
    sys.exit(0)


if __name__ == '__main__':
    main()
