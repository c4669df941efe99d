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
Geometry of compact sets given as finite point clouds.

A `Compactum` wraps the points and caches the circumcenter p, the
circumradius R (minimum enclosing ball), the diameter and the effective
dimension

    d(K) = lg( |K + R B| / (V_m R^m) ),

where |K + R B| is the volume of the set inflated by the closed ball of
radius R, estimated by Monte Carlo.

Minimum enclosing balls are exact for m <= 3 (pivoting with a Welzl
solver on the support set) and certified to a relative radius error of
1e-7 above that (Frank-Wolfe with away steps on the dual problem).
"""

import functools
import logging
import math
import threading
import warnings

import numpy as np
from scipy.spatial import cKDTree
from scipy.spatial.distance import cdist

from .errors import AccuracyWarning, GeometryError
from .specfun import log_unit_ball_volume
from .utils import Estimate, chunk_generators, chunk_sizes, parallel_map

__author__ = "The rvfl-tools authors"

log = logging.getLogger(__name__)

EXACT_MAX_DIM = 3
MAX_DIM = 16
RADIUS_TOLERANCE = 1e-7
MIN_VOLUME_SAMPLES = 10 ** 4

_CONTAIN_SLACK = 1e-12
_PAIR_BLOCK = 2048
_VOLUME_CHUNK = 1 << 16


def _as_cloud(points):
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts.reshape(-1, 1)
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise GeometryError('points must be a non-empty (N, m) array')
    if not np.all(np.isfinite(pts)):
        raise GeometryError('points must be finite')
    return pts


def _require_distinct(pts):
    if pts.shape[0] < 2 or np.all(pts == pts[0]):
        raise GeometryError('need at least two distinct points')


def _circumball(pts, idx):
    """Smallest ball with all points of `idx` on its boundary."""
    if not idx:
        return None, -np.inf
    base = pts[idx[0]]
    if len(idx) == 1:
        return base.copy(), 0.0
    q = pts[list(idx[1:])] - base
    gram = 2.0 * q @ q.T
    rhs = np.einsum('ij,ij->i', q, q)
    coef = np.linalg.lstsq(gram, rhs, rcond=None)[0]
    center = base + coef @ q
    radius = float(np.max(np.linalg.norm(pts[list(idx)] - center, axis=1)))
    return center, radius


def _contains(center, radius, point):
    if center is None:
        return False
    dist = np.linalg.norm(point - center)
    return dist <= radius * (1.0 + _CONTAIN_SLACK) + 1e-300


def _welzl(pts, order, boundary):
    """Welzl recursion over a handful of candidate indices.

    Returns (center, radius, support) with support the defining indices.
    """
    dim = pts.shape[1]
    if not order or len(boundary) == dim + 1:
        center, radius = _circumball(pts, boundary)
        return center, radius, list(boundary)
    first, rest = order[0], order[1:]
    center, radius, support = _welzl(pts, rest, boundary)
    if _contains(center, radius, pts[first]):
        return center, radius, support
    return _welzl(pts, rest, boundary + [first])


def _exact_ball(pts):
    """Pivoting minimum enclosing ball, exact for low dimension."""
    dist = np.linalg.norm(pts - pts[0], axis=1)
    far = int(np.argmax(dist))
    support = sorted({0, far})
    center, radius, support = _welzl(pts, support, [])

    for _ in range(10000):
        dist = np.linalg.norm(pts - center, axis=1)
        pivot = int(np.argmax(dist))
        if dist[pivot] <= radius * (1.0 + _CONTAIN_SLACK):
            break
        order = [pivot] + sorted(i for i in support if i != pivot)
        center, radius, support = _welzl(pts, order, [])
        support = sorted(support)
    else:
        raise GeometryError('minimum enclosing ball did not converge')

    radius = float(np.max(np.linalg.norm(pts - center, axis=1)))
    return center, radius


def _iterative_ball(pts, tolerance=RADIUS_TOLERANCE, max_iter=10 ** 6):
    """Frank-Wolfe with away steps on the dual of the enclosing-ball QP."""
    npts = pts.shape[0]
    sq = np.einsum('ij,ij->i', pts, pts)

    a = int(np.argmax(np.linalg.norm(pts - pts[0], axis=1)))
    b = int(np.argmax(np.linalg.norm(pts - pts[a], axis=1)))
    u = np.zeros(npts)
    u[a] += 0.5
    u[b] += 0.5
    center = u @ pts

    gap = np.inf
    for it in range(max_iter):
        d2 = sq - 2.0 * pts @ center + center @ center
        phi = float(u @ d2)
        j = int(np.argmax(d2))
        gap = math.sqrt(d2[j] / phi) - 1.0
        if gap <= tolerance:
            break

        active = np.flatnonzero(u > 0.0)
        k = int(active[np.argmin(d2[active])])
        eps_plus = d2[j] / phi - 1.0
        eps_minus = 1.0 - d2[k] / phi

        if eps_plus >= eps_minus:
            step = eps_plus / (2.0 * (1.0 + eps_plus))
            u *= 1.0 - step
            u[j] += step
            center = (1.0 - step) * center + step * pts[j]
        else:
            step = min(eps_minus / (2.0 * (1.0 - eps_minus)), u[k] / (1.0 - u[k]))
            u *= 1.0 + step
            u[k] -= step
            u[k] = max(u[k], 0.0)
            center = (1.0 + step) * center - step * pts[k]
    else:
        warnings.warn(
            'enclosing ball certificate {:.3g} above tolerance after {} '
            'iterations'.format(gap, max_iter), AccuracyWarning)

    log.debug('iterative enclosing ball: %d iterations, gap %.3g', it, gap)
    radius = float(np.sqrt(np.max(np.einsum('ij,ij->i', pts - center, pts - center))))
    return center, radius


def min_enclosing_ball(points):
    """
    Minimum enclosing ball of a point cloud.

    Parameters
    ----------
    points : array_like
        (N, m) coordinates, at least two distinct points, m <= 16.

    Returns
    -------
    tuple
        (center, radius). Exact for m <= 3, relative radius error below
        1e-7 otherwise. The radius always covers every point.
    """
    pts = _as_cloud(points)
    _require_distinct(pts)
    if pts.shape[1] > MAX_DIM:
        raise GeometryError('enclosing ball supports m <= {}'.format(MAX_DIM))

    if pts.shape[1] <= EXACT_MAX_DIM:
        return _exact_ball(pts)
    return _iterative_ball(pts)


def diameter(points):
    """Largest pairwise distance, computed exactly in blocks."""
    pts = _as_cloud(points)
    if pts.shape[0] < 2:
        raise GeometryError('diameter needs at least two points')
    best = 0.0
    for start in range(0, pts.shape[0], _PAIR_BLOCK):
        block = cdist(pts[start:start + _PAIR_BLOCK], pts[start:])
        best = max(best, float(block.max()))
    return best


def minkowski_ball_volume(points, r, samples=10 ** 6, seed=0, workers=1):
    """
    Monte Carlo volume of the inflation K + rB of a point cloud.

    Points are drawn uniformly in the bounding box of K grown by r and
    counted when their nearest cloud point lies within r.

    Parameters
    ----------
    points : array_like
        (N, m) point cloud.

    r : float
        Inflation radius, r > 0.

    samples : int
        Number of uniform draws, at least 1e4.

    seed : int
        Master seed. Chunks use independent spawned generators, so the
        estimate does not depend on `workers`.

    workers : int
        Threads used for the chunks.

    Returns
    -------
    Estimate
        (volume, standard error).
    """
    pts = _as_cloud(points)
    if not (r > 0) or not math.isfinite(r):
        raise GeometryError('inflation radius must be positive: {}'.format(r))
    if samples < MIN_VOLUME_SAMPLES:
        raise GeometryError(
            'volume estimate needs at least {} samples'.format(MIN_VOLUME_SAMPLES))

    lo = pts.min(axis=0) - r
    hi = pts.max(axis=0) + r
    sides = hi - lo
    if np.any(sides <= 0) or not np.all(np.isfinite(sides)):
        raise GeometryError('degenerate bounding box')
    box = float(np.prod(sides))

    tree = cKDTree(pts)
    sizes = chunk_sizes(samples, _VOLUME_CHUNK)
    rngs = chunk_generators(seed, len(sizes))

    def _count(job):
        size, rng = job
        x = lo + sides * rng.random((size, pts.shape[1]))
        dist, _ = tree.query(x, k=1)
        return int(np.count_nonzero(dist <= r))

    hits = sum(parallel_map(_count, zip(sizes, rngs), workers))
    frac = hits / float(samples)
    stderr = box * math.sqrt(frac * (1.0 - frac) / samples)
    return Estimate(box * frac, stderr)


def effective_dimension(compactum, samples=10 ** 6, seed=0, workers=1):
    """
    Effective dimension d(K) of a compactum.

    Uses the compactum's own circumradius as inflation radius. Values that
    Monte Carlo noise pushes outside [1, m] are clamped with an
    `AccuracyWarning`.

    Returns
    -------
    Estimate
        (d(K), standard error propagated through the logarithm).
    """
    radius = compactum.radius
    m = compactum.m
    volume, stderr = minkowski_ball_volume(compactum.points, radius, samples,
                                           seed, workers)
    if volume <= 0:
        raise GeometryError('inflated volume estimate is zero')
    log_ball = log_unit_ball_volume(m) + m * math.log(radius)
    value = (math.log(volume) - log_ball) / math.log(2.0)
    value_err = stderr / (volume * math.log(2.0))

    if value < 1.0 or value > m:
        clamped = min(max(value, 1.0), float(m))
        warnings.warn(
            'effective dimension {:.4f} outside [1, {}], clamped to {:.4f}'.format(
                value, m, clamped), AccuracyWarning)
        value = clamped
    return Estimate(value, value_err)


class Compactum(object):
    """
    Finite point cloud standing in for a compact set K of R^m.

    The circumcenter and circumradius are computed on construction; the
    diameter and effective dimension on first use. Instances are immutable.
    """

    def __init__(self, points):
        pts = _as_cloud(points)
        _require_distinct(pts)
        pts.setflags(write=False)
        self._points = pts

        center, radius = min_enclosing_ball(pts)
        if not radius > 0:
            raise GeometryError('circumradius must be positive')
        spread = np.linalg.norm(pts - center, axis=1).max()
        if spread > radius + 1e-9:
            raise GeometryError(
                'enclosing ball misses a point by {:.3g}'.format(spread - radius))
        center.setflags(write=False)
        self._center = center
        self._radius = float(radius)

        self._dimension_cache = {}
        self._lock = threading.Lock()

    @classmethod
    def from_csv(cls, path):
        """Builds a compactum from a CSV file with one point per row."""
        from .fileio import read_points_csv
        return cls(read_points_csv(path))

    @property
    def points(self):
        return self._points

    @property
    def m(self):
        return self._points.shape[1]

    @property
    def size(self):
        return self._points.shape[0]

    @property
    def center(self):
        return self._center

    @property
    def radius(self):
        return self._radius

    @functools.cached_property
    def diameter(self):
        return diameter(self._points)

    @functools.cached_property
    def bounding_box(self):
        return self._points.min(axis=0), self._points.max(axis=0)

    def translated(self, shift):
        """New compactum with every point moved by `shift`."""
        return Compactum(self._points + np.asarray(shift, dtype=float))

    def effective_dimension(self, samples=10 ** 6, seed=0, workers=1):
        """Cached `effective_dimension` estimate for (samples, seed)."""
        key = (int(samples), seed)
        with self._lock:
            if key in self._dimension_cache:
                return self._dimension_cache[key]
        estimate = effective_dimension(self, samples, seed, workers)
        with self._lock:
            self._dimension_cache[key] = estimate
        return estimate

    def inflated_volume(self, r, samples=10 ** 6, seed=0, workers=1):
        """Monte Carlo volume of K + rB."""
        return minkowski_ball_volume(self._points, r, samples, seed, workers)

    def __repr__(self):
        return 'Compactum(m={}, points={}, R={:.6g})'.format(
            self.m, self.size, self._radius)
