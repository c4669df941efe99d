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
Small helpers shared by the Monte Carlo estimators.

Every estimator splits its sample budget into fixed-size chunks and gives
each chunk its own generator spawned from a single `SeedSequence`. The
result of an estimate therefore depends on (seed, samples) only, never on
how many worker threads processed the chunks.
"""

from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .errors import RvflError

__author__ = "The rvfl-tools authors"

CHUNK_SIZE = 1 << 14

Estimate = namedtuple('Estimate', ['value', 'stderr'])
Estimate.__doc__ = """Monte Carlo or quadrature value with its error estimate."""


def chunk_sizes(samples, chunk=CHUNK_SIZE):
    """Splits `samples` into full chunks plus one remainder chunk."""
    samples = int(samples)
    sizes = [chunk] * (samples // chunk)
    if samples % chunk:
        sizes.append(samples % chunk)
    return sizes


def chunk_generators(seed, nchunks):
    """One independent `numpy.random.Generator` per chunk."""
    children = np.random.SeedSequence(seed).spawn(nchunks)
    return [np.random.default_rng(child) for child in children]


def parallel_map(func, items, workers=1):
    """Ordered map over `items`, threaded when `workers` > 1."""
    items = list(items)
    if workers is None or workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def as_points(x, m=None):
    """Coerces `x` into a float array of shape (N, m).

    Returns the array and a flag telling whether `x` was a single point.
    """
    arr = np.asarray(x, dtype=float)
    single = False
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
        single = True
    elif arr.ndim == 1:
        if m is not None and m == 1 and arr.shape[0] != 1:
            arr = arr.reshape(-1, 1)
        else:
            arr = arr.reshape(1, -1)
            single = True
    if m is not None and arr.shape[1] != m:
        raise RvflError(
            'expected points of dimension {}, got {}'.format(m, arr.shape[1]))
    return arr, single
