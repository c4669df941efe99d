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
Width sweeps: constructive and least-squares networks on shared hidden layers.

For every (n, seed) cell a hidden layer is drawn, the constructive network
and the least-squares network on that layer are built, and their grid
errors against the target f and the truncated surrogate h are recorded.
Rows are written in cell order and flushed one by one; a JSON manifest
records the configuration, its hash and the package version.
"""

import json
import logging
import os
import subprocess
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .bounds import schedule
from .fileio import write_table_csv
from .geometry import effective_dimension
from .kernel import get_kernel
from .lipschitz import extend, recenter
from .rvfl import (WeightDensity, build_constructive, fit_least_squares, grid_spacing,
                   lipschitz_inflation, sample_hidden, sup_error)
from .spectral import QUADRATURE_MAX_DIM, SpectralSurrogate, h_truncated
from .targets import load_target

__author__ = "The rvfl-tools authors"

log = logging.getLogger(__name__)

COLUMNS = ['n', 'seed', 'sup_f_constructive', 'sup_h_constructive',
           'sup_f_least_squares', 'rms_f_constructive', 'rms_f_least_squares',
           'lipschitz_inflation', 'grid_spacing', 'wall_time']
RESULTS_FILE = 'experiment.csv'
MANIFEST_FILE = 'manifest.json'


def describe_version():
    """Package version, with `git describe` appended inside a checkout."""
    here = os.path.dirname(os.path.abspath(__file__))
    try:
        proc = subprocess.run(['git', 'describe', '--always', '--dirty', '--tags'],
                              cwd=here, capture_output=True, text=True, timeout=10)
    except (OSError, subprocess.SubprocessError):
        return __version__
    described = proc.stdout.strip()
    if proc.returncode != 0 or not described:
        return __version__
    return '{}+{}'.format(__version__, described)


class Experiment(object):
    """
    Everything a sweep cell needs, prepared once.

    Parameters
    ----------
    config : ExperimentConfig
    """

    def __init__(self, config):
        self.config = config
        original = load_target(config.target, config.m, config.grid, config.ell)
        self.samples = recenter(original)
        self.ext = extend(self.samples)
        self.points = original.domain.points
        self.values = original.values

        if config.lam is not None:
            self.lam, self.theta = float(config.lam), float(config.theta)
        else:
            sched = schedule(config.m, config.epsilon, self.samples.ell, self.samples.R,
                             config.sigma)
            self.lam, self.theta = sched.lam, sched.theta
        log.info('experiment: lambda=%.6g theta=%.6g R=%.6g', self.lam, self.theta,
                 self.samples.R)

        surrogate = SpectralSurrogate(self.ext, get_kernel(config.m), self.lam, self.theta)
        self.density = WeightDensity(surrogate, config.sigma)

        recentered = self.points - self.samples.center
        if config.m <= QUADRATURE_MAX_DIM:
            h = h_truncated(surrogate, recentered, method='quadrature')
        else:
            h = h_truncated(surrogate, recentered, config.mc_samples, config.master_seed,
                            workers=config.workers)
        self.h_values = np.asarray(h.value) + self.samples.zeta
        self.spacing = grid_spacing(self.points)

    def cell(self, job):
        """One result row for a (n, seed) pair."""
        n, seed = job
        start = time.perf_counter()
        layer = sample_hidden(n, self.config.m, self.config.sigma, self.samples.R, seed,
                              center=self.samples.center)
        constructive = build_constructive(layer, self.density)
        fitted = fit_least_squares(layer, self.points, self.values, self.config.ridge)

        out_c = constructive(self.points)
        out_ls = fitted(self.points)
        row = [
            n, seed,
            sup_error(constructive, self.values, self.points),
            sup_error(constructive, self.h_values, self.points),
            sup_error(fitted, self.values, self.points),
            float(np.sqrt(np.mean((out_c - self.values) ** 2))),
            float(np.sqrt(np.mean((out_ls - self.values) ** 2))),
            lipschitz_inflation(constructive, self.points),
            self.spacing,
            time.perf_counter() - start,
        ]
        log.info('cell n=%d seed=%d: sup_f=%.4g sup_h=%.4g ls=%.4g', n, seed,
                 row[2], row[3], row[4])
        return row

    def cells(self):
        return [(n, seed) for n in self.config.n_list for seed in self.config.seeds]


def run_experiment(config, output_dir=None):
    """
    Runs a width sweep and writes its result files.

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
    output_dir = config.output_dir if output_dir is None else output_dir
    os.makedirs(output_dir, exist_ok=True)
    experiment = Experiment(config)

    dK = effective_dimension(experiment.samples.domain, config.volume_samples,
                             config.master_seed, config.workers)

    csv_path = os.path.join(output_dir, RESULTS_FILE)
    rows = 0
    with open(csv_path, 'w', newline='') as handle:
        write_table_csv(handle, COLUMNS, [])
        handle.flush()
        if config.workers > 1:
            pool = ThreadPoolExecutor(max_workers=config.workers)
            results = pool.map(experiment.cell, experiment.cells())
        else:
            pool = None
            results = map(experiment.cell, experiment.cells())
        try:
            for row in results:
                write_table_csv(handle, None, [row])
                handle.flush()
                rows += 1
        finally:
            if pool is not None:
                pool.shutdown(wait=True)

    manifest = {
        'version': describe_version(),
        'config': config.to_dict(),
        'config_hash': config.config_hash(),
        'master_seed': config.master_seed,
        'lambda': experiment.lam,
        'theta': experiment.theta,
        'R': experiment.samples.R,
        'ell': experiment.samples.ell,
        'zeta': experiment.samples.zeta,
        'dK': dK.value,
        'dK_stderr': dK.stderr,
        'rows': rows,
        'results': RESULTS_FILE,
        'columns': COLUMNS,
    }
    with open(os.path.join(output_dir, MANIFEST_FILE), 'w') as handle:
        json.dump(manifest, handle, indent=2, sort_keys=True)
        handle.write('\n')
    log.info('experiment: %d rows written to %s', rows, csv_path)
    return manifest
