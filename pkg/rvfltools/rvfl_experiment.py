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
Runs a width sweep of constructive and least-squares RVFL networks.

For every (n, seed) cell the tool draws a hidden layer, builds the
constructive network and the least-squares network on that same layer, and
records their grid errors. Results go to <output-dir>/experiment.csv, one
flushed row per cell, with a JSON manifest (configuration, config hash,
version, master seed, lambda, theta, d(K)) in <output-dir>/manifest.json.

Usage:
    rvfl_experiment [--config <file.json>] [overrides]

Overrides (take precedence over the configuration file):
    --target <name|csv>     --m <int>           --grid <int>
    --ell <float>           --sigma <float>     --ridge <float>
    --lambda <float>        --eps <float>       --theta <float>
    --n <range>             --seeds <range>     --seed <int> (master seed)
    --samples <int>         --volume-samples <int>
    --output-dir <dir>      --workers <int>

Environment:
    RVFL_OUTPUT_DIR, RVFL_WORKERS set the defaults of --output-dir and --workers.

Example:
    rvfl_experiment --target tent --lambda 20 --theta 0.05 --n 100,1000,10000 --seeds 0..19
    rvfl_experiment --config sweep.json --output-dir results/run1

This program is part of the `rvfl-tools` suite of utilities and should not be
distributed isolatedly.
"""

import json
import sys

from .cli import (EXIT_USAGE, ToolParser, fail, positive_float, positive_int, range_type,
                  setup_logging)
from .config import config_from_dict, load_config
from .errors import ConfigError, RvflError
from .experiment import run_experiment

__author__ = "The rvfl-tools authors"

OVERRIDES = ['target', 'm', 'grid', 'ell', 'sigma', 'ridge', 'lam', 'epsilon', 'theta',
             'n_list', 'seeds', 'master_seed', 'mc_samples', 'volume_samples',
             'output_dir', 'workers']


def check_input(args):
    """Parses the command line and builds the `ExperimentConfig`."""
    parser = ToolParser('rvfl_experiment', __doc__)
    parser.add_argument('--config', default=None)
    parser.add_argument('--target', default=None)
    parser.add_argument('--m', type=positive_int, default=None)
    parser.add_argument('--grid', type=positive_int, default=None)
    parser.add_argument('--ell', type=positive_float, default=None)
    parser.add_argument('--sigma', type=positive_float, default=None)
    parser.add_argument('--ridge', type=float, default=None)
    parser.add_argument('--lambda', dest='lam', type=positive_float, default=None)
    parser.add_argument('--eps', dest='epsilon', type=positive_float, default=None)
    parser.add_argument('--theta', type=positive_float, default=None)
    parser.add_argument('--n', dest='n_list', type=range_type, default=None)
    parser.add_argument('--seeds', type=range_type, default=None)
    parser.add_argument('--seed', dest='master_seed', type=int, default=None)
    parser.add_argument('--samples', dest='mc_samples', type=positive_int, default=None)
    parser.add_argument('--volume-samples', dest='volume_samples', type=positive_int,
                        default=None)
    parser.add_argument('--output-dir', dest='output_dir', default=None)
    parser.add_argument('--workers', type=positive_int, default=None)

    options = parser.parse_args(args)
    setup_logging(options.verbose)

    overrides = {key: getattr(options, key) for key in OVERRIDES}
    try:
        if options.config is not None:
            config = load_config(options.config, overrides)
        else:
            config = config_from_dict({}, overrides)
    except ConfigError as err:
        fail(err, __doc__, EXIT_USAGE)
    return config


def run(config, output_dir=None):
    """
    Runs the sweep described by `config`.

    Parameters
    ----------
    config : ExperimentConfig

    output_dir : str, optional
        Overrides `config.output_dir`.

    Returns
    -------
    dict
        The manifest written next to the results.
    """
    return run_experiment(config, output_dir)


width_sweep = run


def main():
    config = check_input(sys.argv[1:])
    try:
        manifest = run(config)
    except RvflError as err:
        fail(err)
    except OSError as err:
        fail('cannot write results: {}'.format(err))

    summary = {'output_dir': config.output_dir, 'rows': manifest['rows'],
               'config_hash': manifest['config_hash']}
    try:
        json.dump(summary, sys.stdout, sort_keys=True)
        sys.stdout.write('\n')
        sys.stdout.flush()
    except IOError:
        pass

    sys.exit(0)


if __name__ == '__main__':
    main()
