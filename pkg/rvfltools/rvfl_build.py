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
Builds one RVFL network for a target and writes it as JSON.

The hidden layer is drawn from seed; the outer weights come from the
weight density of the spectral surrogate (constructive, default), from the
same density without the boundary correction (raw), or from a
least-squares fit on the target samples.

Usage:
    rvfl_build -n <width> (--lambda <float> | --eps <float>) [options]

Options:
    --target <name|csv>   built-in target or sample CSV (default tent)
    --m <int>             dimension of built-in targets (default 1)
    --grid <int>          grid nodes per axis of built-in targets (default 101)
    --ell <float>         Lipschitz constant override
    --sigma <float>       hidden-weight scale (default 1)
    --lambda <float>      frequency scale
    --eps <float>         target accuracy; lambda and theta from the schedule
    --theta <float>       truncation parameter (default 0.05)
    --seed <int>          seed of the hidden layer (default 0)
    --fit <mode>          constructive, raw or least-squares (default constructive)
    --ridge <float>       ridge penalty of the least-squares fit (default 0)
    --output <file>       write the network here instead of stdout

Example:
    rvfl_build --target tent --lambda 20 --theta 0.05 -n 10000 > net.json
    rvfl_build --target sin3 --lambda 10 -n 500 --fit least-squares --output ls.json

This program is part of the `rvfl-tools` suite of utilities and should not be
distributed isolatedly.
"""

import logging
import sys

from .bounds import schedule
from .cli import ToolParser, fail, positive_float, positive_int, setup_logging
from .errors import RvflError
from .fileio import write_network
from .kernel import get_kernel
from .lipschitz import extend, recenter
from .rvfl import WeightDensity, build_constructive, fit_least_squares, sample_hidden
from .spectral import SpectralSurrogate
from .targets import load_target

__author__ = "The rvfl-tools authors"

log = logging.getLogger(__name__)

FIT_MODES = ('constructive', 'raw', 'least-squares')


def check_input(args):
    """Parses and validates the command line; returns the option namespace."""
    parser = ToolParser('rvfl_build', __doc__)
    parser.add_argument('-n', '--width', dest='n', type=positive_int, required=True)
    parser.add_argument('--target', default='tent')
    parser.add_argument('--m', type=positive_int, default=1)
    parser.add_argument('--grid', type=positive_int, default=101)
    parser.add_argument('--ell', type=positive_float, default=None)
    parser.add_argument('--sigma', type=positive_float, default=1.0)
    scale = parser.add_mutually_exclusive_group(required=True)
    scale.add_argument('--lambda', dest='lam', type=positive_float)
    scale.add_argument('--eps', dest='epsilon', type=positive_float)
    parser.add_argument('--theta', type=positive_float, default=0.05)
    parser.add_argument('--seed', type=int, default=0)
    parser.add_argument('--fit', choices=FIT_MODES, default='constructive')
    parser.add_argument('--ridge', type=float, default=0.0)
    parser.add_argument('--output', default=None)

    options = parser.parse_args(args)
    if options.ridge < 0:
        parser.error('ridge must be >= 0: {}'.format(options.ridge))
    if options.grid < 2:
        parser.error('grid needs at least 2 nodes per axis')
    setup_logging(options.verbose)
    return options


def run(n, target='tent', m=1, grid=101, ell=None, sigma=1.0, lam=None, epsilon=None,
        theta=0.05, seed=0, fit='constructive', ridge=0.0):
    """
    Builds a network for a target.

    Parameters
    ----------
    n : int
        Width.

    target : str
        Built-in target name or sample CSV.

    lam, epsilon : float
        Exactly one is given. With `epsilon`, lambda and theta come from
        the parameter schedule.

    fit : str
        'constructive', 'raw' or 'least-squares'.

    Returns
    -------
    RvflNetwork
        Network in original coordinates (output N(x - p) + zeta).
    """
    if (lam is None) == (epsilon is None):
        raise RvflError('give exactly one of lambda and epsilon')
    if fit not in FIT_MODES:
        raise RvflError('unknown fit mode: \'{}\''.format(fit))

    original = load_target(target, m, grid, ell)
    samples = recenter(original)
    layer = sample_hidden(n, samples.m, sigma, samples.R, seed, center=samples.center)

    if fit == 'least-squares':
        return fit_least_squares(layer, original.domain.points, original.values, ridge)

    if epsilon is not None:
        sched = schedule(samples.m, epsilon, samples.ell, samples.R, sigma)
        lam, theta = sched.lam, sched.theta
    log.info('building: lambda=%.6g theta=%.6g n=%d', lam, theta, n)
    surrogate = SpectralSurrogate(extend(samples), get_kernel(samples.m), lam, theta)
    density = WeightDensity(surrogate, sigma)
    return build_constructive(layer, density, corrected=None if fit == 'constructive' else False)


build_network = run


def main():
    options = check_input(sys.argv[1:])
    try:
        net = run(options.n, options.target, options.m, options.grid, options.ell,
                  options.sigma, options.lam, options.epsilon, options.theta,
                  options.seed, options.fit, options.ridge)
    except RvflError as err:
        fail(err, __doc__)

    try:
        if options.output is None:
            write_network(net, sys.stdout)
            sys.stdout.flush()
        else:
            with open(options.output, 'w') as handle:
                write_network(net, handle)
    except BrokenPipeError:
        pass
    except OSError as err:
        fail('cannot write network: {}'.format(err))

    sys.exit(0)


if __name__ == '__main__':
    main()
