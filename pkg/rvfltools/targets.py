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
Built-in target functions sampled on a regular grid of [-1, 1]^m.

    tent          relu(1 - |x|)          l = 1
    sin3          sin(3 x_1)             l = 3
    radial-bump   cos^2(pi |x| / 2)      l = pi/2   (zero for |x| > 1)
    linear        x_1                    l = 1

Anything that is not a built-in name is read as a CSV file whose last
column holds the target values.
"""

import math
import os

import numpy as np

from .errors import ConfigError
from .geometry import Compactum
from .lipschitz import SampledFunction, load_samples

__author__ = "The rvfl-tools authors"


def _tent(x):
    return np.maximum(1.0 - np.linalg.norm(x, axis=1), 0.0)


def _sin3(x):
    return np.sin(3.0 * x[:, 0])


def _radial_bump(x):
    r = np.linalg.norm(x, axis=1)
    return np.where(r <= 1.0, np.cos(0.5 * math.pi * r) ** 2, 0.0)


def _linear(x):
    return x[:, 0].copy()


BUILTINS = {
    'tent': (_tent, 1.0),
    'sin3': (_sin3, 3.0),
    'radial-bump': (_radial_bump, 0.5 * math.pi),
    'linear': (_linear, 1.0),
}


def grid_points(m, per_axis, lo=-1.0, hi=1.0):
    """Regular tensor grid with `per_axis` nodes per coordinate."""
    if m < 1 or per_axis < 2:
        raise ConfigError('grid needs m >= 1 and at least 2 nodes per axis')
    axis = np.linspace(lo, hi, per_axis)
    mesh = np.meshgrid(*([axis] * m), indexing='ij')
    return np.stack(mesh, axis=-1).reshape(-1, m)


def builtin(name, m=1, grid=101, ell=None):
    """
    Samples a built-in target.

    Parameters
    ----------
    name : str
        One of `BUILTINS`.

    m : int
        Ambient dimension.

    grid : int
        Nodes per axis on [-1, 1].

    ell : float, optional
        Lipschitz constant override; defaults to the analytic constant.

    Returns
    -------
    SampledFunction
    """
    try:
        func, analytic_ell = BUILTINS[name]
    except KeyError:
        raise ConfigError('unknown built-in target: \'{}\''.format(name))
    points = grid_points(m, grid)
    return SampledFunction(Compactum(points), func(points),
                           ell=analytic_ell if ell is None else ell)


def load_target(target, m=1, grid=101, ell=None):
    """Built-in name or CSV path to a `SampledFunction`."""
    if target in BUILTINS:
        return builtin(target, m, grid, ell)
    if not os.path.isfile(target):
        raise ConfigError(
            'target is neither a built-in ({}) nor a readable file: \'{}\''.format(
                ', '.join(sorted(BUILTINS)), target))
    return load_samples(target, ell=ell)
