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
Experiment configuration.

A configuration is a JSON document; nested sections are flattened, so

    {"target": {"name": "tent", "m": 1, "grid": 101},
     "schedule": {"lambda": 20, "theta": 0.05},
     "mc": {"samples": 100000},
     "n_list": [100, 1000], "seeds": "0..19"}

and the flat form {"target": "tent", "lam": 20, ...} are equivalent.
Command-line flags override file values.

Environment:
    RVFL_OUTPUT_DIR   default output directory (./rvfl_results)
    RVFL_WORKERS      default number of worker threads (1)
"""

import hashlib
import json
import os
from dataclasses import asdict, dataclass, field, fields
from typing import List, Optional

from .errors import ConfigError

__author__ = "The rvfl-tools authors"

ALIASES = {
    'lambda': 'lam',
    'eps': 'epsilon',
    'n': 'n_list',
    'samples': 'mc_samples',
    'mc_samples': 'mc_samples',
    'seed': 'master_seed',
    'name': 'target',
}

_UNHASHED = ('output_dir', 'workers')


def default_output_dir():
    return os.environ.get('RVFL_OUTPUT_DIR', os.path.join('.', 'rvfl_results'))


def default_workers():
    value = os.environ.get('RVFL_WORKERS', '1')
    try:
        workers = int(value)
    except ValueError:
        raise ConfigError('RVFL_WORKERS must be an integer: \'{}\''.format(value))
    return max(workers, 1)


def parse_range(text):
    """
    Integer list from '3', '1..5', '1,2,8' or a mix such as '1..3,10'.

    Returns
    -------
    list of int
    """
    if isinstance(text, int):
        return [text]
    if isinstance(text, (list, tuple)):
        return [int(v) for v in text]
    values = []
    for item in str(text).split(','):
        item = item.strip()
        if not item:
            continue
        try:
            if '..' in item:
                lo, hi = item.split('..', 1)
                lo, hi = int(lo), int(hi)
                if hi < lo:
                    raise ConfigError('empty range: \'{}\''.format(item))
                values.extend(range(lo, hi + 1))
            else:
                values.append(int(item))
        except ValueError:
            raise ConfigError('not an integer range: \'{}\''.format(item))
    if not values:
        raise ConfigError('empty integer list: \'{}\''.format(text))
    return values


@dataclass
class ExperimentConfig(object):
    """
    Parameters of a width sweep.

    Exactly one of `lam` and `epsilon` is set. With `epsilon` both lambda
    and theta come from the parameter schedule and `theta` is ignored.
    """

    target: str = 'tent'
    m: int = 1
    grid: int = 101
    ell: Optional[float] = None
    sigma: float = 1.0
    lam: Optional[float] = None
    epsilon: Optional[float] = None
    theta: float = 0.05
    ridge: float = 0.0
    n_list: List[int] = field(default_factory=lambda: [100, 1000, 10000, 100000])
    seeds: List[int] = field(default_factory=lambda: list(range(20)))
    master_seed: int = 0
    mc_samples: int = 10 ** 5
    volume_samples: int = 10 ** 6
    output_dir: str = field(default_factory=default_output_dir)
    workers: int = field(default_factory=default_workers)

    def __post_init__(self):
        self.n_list = parse_range(self.n_list)
        self.seeds = parse_range(self.seeds)
        self.validate()

    def validate(self):
        if (self.lam is None) == (self.epsilon is None):
            raise ConfigError('set exactly one of lambda and epsilon')
        if self.lam is not None and not self.lam > 0:
            raise ConfigError('lambda must be positive: {}'.format(self.lam))
        if self.epsilon is not None and not self.epsilon > 0:
            raise ConfigError('epsilon must be positive: {}'.format(self.epsilon))
        if not self.seeds:
            raise ConfigError('seed list is empty')
        if any(n < 1 for n in self.n_list):
            raise ConfigError('widths must be >= 1: {}'.format(self.n_list))
        if not self.theta > 0:
            raise ConfigError('theta must be positive: {}'.format(self.theta))
        if not self.sigma > 0:
            raise ConfigError('sigma must be positive: {}'.format(self.sigma))
        if self.m < 1 or self.grid < 2:
            raise ConfigError('need m >= 1 and grid >= 2')
        if self.ell is not None and not self.ell > 0:
            raise ConfigError('Lipschitz constant must be positive: {}'.format(self.ell))
        if self.ridge < 0:
            raise ConfigError('ridge must be >= 0: {}'.format(self.ridge))
        if self.workers < 1:
            raise ConfigError('workers must be >= 1: {}'.format(self.workers))

    def to_dict(self):
        return asdict(self)

    def config_hash(self):
        """SHA-256 of the canonical JSON, without output directory and workers."""
        doc = {k: v for k, v in self.to_dict().items() if k not in _UNHASHED}
        text = json.dumps(doc, sort_keys=True, separators=(',', ':'))
        return hashlib.sha256(text.encode('utf-8')).hexdigest()


def _flatten(doc, out, path=''):
    for key, value in doc.items():
        name = ALIASES.get(key, key)
        if isinstance(value, dict):
            _flatten(value, out, path + key + '.')
            continue
        if name in out:
            raise ConfigError('parameter set twice: \'{}{}\''.format(path, key))
        out[name] = value
    return out


def config_from_dict(doc, overrides=None):
    """
    Builds an `ExperimentConfig` from a (nested) mapping.

    Parameters
    ----------
    doc : dict
        File contents.

    overrides : dict, optional
        Flat values taking precedence; None values are ignored.
    """
    known = {f.name for f in fields(ExperimentConfig)}
    values = _flatten(doc, {})
    for key, value in (overrides or {}).items():
        if value is not None:
            values[ALIASES.get(key, key)] = value
    if overrides and overrides.get('lam') is not None:
        values.pop('epsilon', None)
    if overrides and overrides.get('epsilon') is not None:
        values.pop('lam', None)
    unknown = sorted(set(values) - known)
    if unknown:
        raise ConfigError('unknown configuration key(s): {}'.format(', '.join(unknown)))
    try:
        return ExperimentConfig(**values)
    except TypeError as err:
        raise ConfigError(str(err))


def load_config(path, overrides=None):
    """Reads a JSON configuration file; see `config_from_dict`."""
    try:
        with open(path, 'r') as handle:
            doc = json.load(handle)
    except (OSError, ValueError) as err:
        raise ConfigError('cannot read configuration \'{}\': {}'.format(path, err))
    if not isinstance(doc, dict):
        raise ConfigError('configuration must be a JSON object')
    return config_from_dict(doc, overrides)
