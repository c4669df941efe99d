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
Sampled Lipschitz targets and their compactly supported extension.

A `SampledFunction` holds the values of an l-Lipschitz target on the points
of a `Compactum`. `recenter` moves the circumcenter to the origin and the
value range to [-M, M], remembering the shift (p, zeta). `extend` returns
the extension

    f~(x) = relu(|f(a)| - l |x - a|) * sign f(a),
    a = argmax_u |f(u)| - l |x - u|   (lowest index on ties),

which agrees with f on the samples, is l-Lipschitz, is bounded by M and
vanishes outside K + (M/l)B.
"""

import logging

import numpy as np
from scipy.spatial.distance import cdist

from .errors import LipschitzError
from .geometry import Compactum
from .utils import as_points

__author__ = "The rvfl-tools authors"

log = logging.getLogger(__name__)

_BLOCK = 1 << 22  # distance-matrix entries per evaluation block
_REL_SLACK = 1e-9


def _pair_blocks(npts, ncols):
    rows = max(1, _BLOCK // max(ncols, 1))
    for start in range(0, npts, rows):
        yield slice(start, min(npts, start + rows))


def estimate_lipschitz(domain, values):
    """
    Smallest Lipschitz constant consistent with the samples.

    Parameters
    ----------
    domain : Compactum or array_like
        Sample locations.

    values : array_like
        Target values, one per point.

    Returns
    -------
    float
        max over pairs of |f(x_i) - f(x_j)| / |x_i - x_j|.
    """
    pts = domain.points if isinstance(domain, Compactum) else np.asarray(domain, float)
    if pts.ndim == 1:
        pts = pts.reshape(-1, 1)
    vals = np.asarray(values, dtype=float).ravel()
    if vals.shape[0] != pts.shape[0]:
        raise LipschitzError('got {} values for {} points'.format(
            vals.shape[0], pts.shape[0]))
    if not np.all(np.isfinite(vals)):
        raise LipschitzError('target values must be finite')

    best = 0.0
    for rows in _pair_blocks(pts.shape[0], pts.shape[0]):
        dist = cdist(pts[rows], pts)
        diff = np.abs(vals[rows, None] - vals[None, :])
        clash = (dist == 0.0) & (diff > 0.0)
        if np.any(clash):
            i, j = np.argwhere(clash)[0]
            raise LipschitzError(
                'coincident points {} and {} carry different values'.format(
                    rows.start + i, j))
        with np.errstate(divide='ignore', invalid='ignore'):
            ratio = np.where(dist > 0.0, diff / dist, 0.0)
        best = max(best, float(ratio.max()))
    return best


class SampledFunction(object):
    """
    Values of a Lipschitz target on a compactum.

    Parameters
    ----------
    domain : Compactum
        Sample locations.

    values : array_like
        Target values.

    ell : float, optional
        Lipschitz constant. Estimated from the samples when omitted; a
        given value below the sample estimate is rejected.

    center : array_like, optional
        Translation p already removed from the domain (recentered samples).

    zeta : float
        Value offset already removed from `values`.
    """

    def __init__(self, domain, values, ell=None, center=None, zeta=0.0):
        if not isinstance(domain, Compactum):
            domain = Compactum(domain)
        vals = np.array(values, dtype=float).ravel()

        estimate = estimate_lipschitz(domain, vals)
        if ell is None:
            ell = estimate
        elif ell < 0 or not np.isfinite(ell):
            raise LipschitzError('Lipschitz constant must be >= 0: {}'.format(ell))
        elif estimate > ell * (1.0 + _REL_SLACK) + 1e-12:
            raise LipschitzError(
                'samples need a Lipschitz constant of at least {:.6g} > {:.6g}'.format(
                    estimate, ell))

        vals.setflags(write=False)
        self.domain = domain
        self.values = vals
        self.ell = float(ell)
        self.ell_estimate = estimate
        self.M = 0.5 * float(vals.max() - vals.min())
        self.zeta = float(zeta)
        if center is None:
            center = np.zeros(domain.m)
        self.center = np.asarray(center, dtype=float).reshape(domain.m)

        if self.M > self.ell * domain.radius * (1.0 + _REL_SLACK) + 1e-12:
            raise LipschitzError('half-range M={:.6g} exceeds l R={:.6g}'.format(
                self.M, self.ell * domain.radius))

    @property
    def m(self):
        return self.domain.m

    @property
    def R(self):
        return self.domain.radius

    def __repr__(self):
        return 'SampledFunction(m={}, points={}, ell={:.6g}, M={:.6g})'.format(
            self.m, self.domain.size, self.ell, self.M)


def load_samples(path, ell=None):
    """Reads a target from CSV: coordinate columns followed by the value."""
    from .fileio import read_samples_csv
    points, values = read_samples_csv(path)
    return SampledFunction(Compactum(points), values, ell=ell)


def recenter(samples):
    """
    Moves the circumcenter to the origin and the value range to [-M, M].

    Returns
    -------
    SampledFunction
        Recentered copy; `center` and `zeta` record the removed shifts so
        network outputs read N(x - p) + zeta in original coordinates.
    """
    p = samples.domain.center
    lo, hi = samples.values.min(), samples.values.max()
    zeta = 0.5 * (hi - lo) + lo
    domain = samples.domain.translated(-p)
    values = samples.values - zeta

    out = SampledFunction(domain, values, ell=samples.ell,
                          center=samples.center + p, zeta=samples.zeta + zeta)
    log.debug('recentered target: p=%s zeta=%.6g M=%.6g', p, zeta, out.M)
    return out


class ExtendedFunction(object):
    """
    Compactly supported l-Lipschitz extension of recentered samples.

    Evaluation is O(#points) per query and pure; instances are immutable.
    """

    def __init__(self, base):
        if not base.ell > 0:
            raise LipschitzError('extension needs a Lipschitz constant > 0')
        self.base = base
        self.ell = base.ell
        self.M = base.M
        self._points = base.domain.points
        self._abs = np.abs(base.values)
        self._sign = np.sign(base.values)

        reach = float(self._abs.max()) / self.ell
        lo, hi = base.domain.bounding_box
        self.support_box = (lo - reach, hi + reach)

    @property
    def m(self):
        return self.base.m

    def argmax(self, x):
        """Index of the maximizer a for each query point."""
        pts, _ = as_points(x, self.m)
        out = np.empty(pts.shape[0], dtype=int)
        for rows in _pair_blocks(pts.shape[0], self._points.shape[0]):
            score = self._abs[None, :] - self.ell * cdist(pts[rows], self._points)
            out[rows] = np.argmax(score, axis=1)
        return out

    def __call__(self, x):
        pts, single = as_points(x, self.m)
        out = np.empty(pts.shape[0])
        for rows in _pair_blocks(pts.shape[0], self._points.shape[0]):
            score = self._abs[None, :] - self.ell * cdist(pts[rows], self._points)
            best = np.argmax(score, axis=1)
            peak = score[np.arange(best.shape[0]), best]
            out[rows] = np.maximum(peak, 0.0) * self._sign[best]
        return float(out[0]) if single else out

    def grid(self, nodes):
        """Per-axis nodes over the support box and f~ on the tensor grid."""
        lo, hi = self.support_box
        axes = [np.linspace(lo[k], hi[k], nodes) for k in range(self.m)]
        mesh = np.stack(np.meshgrid(*axes, indexing='ij'), axis=-1)
        values = self(mesh.reshape(-1, self.m)).reshape((nodes,) * self.m)
        return axes, values

    def __repr__(self):
        return 'ExtendedFunction(m={}, ell={:.6g}, M={:.6g})'.format(
            self.m, self.ell, self.M)


def extend(recentered):
    """
    Compactly supported extension of recentered samples.

    Parameters
    ----------
    recentered : SampledFunction
        Output of `recenter`; ell must be positive.

    Returns
    -------
    ExtendedFunction
    """
    return ExtendedFunction(recentered)


def gradient_sup_check(ext, trials=10 ** 4, seed=0, delta=1e-5):
    """
    Largest finite-difference slope of f~ over random points and directions.

    Returns
    -------
    float
        max |f~(x + delta u) - f~(x)| / delta; at most l(1 + 1e-3) for a
        valid extension.
    """
    rng = np.random.default_rng(seed)
    lo, hi = ext.support_box
    x = lo + (hi - lo) * rng.random((int(trials), ext.m))
    u = rng.standard_normal((int(trials), ext.m))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    slope = np.abs(ext(x + delta * u) - ext(x)) / delta
    return float(slope.max())


def lipschitz_violation(ext, pairs=10 ** 4, seed=0):
    """max |f~(x) - f~(y)| - l |x - y| over random pairs in the support box."""
    rng = np.random.default_rng(seed)
    lo, hi = ext.support_box
    x = lo + (hi - lo) * rng.random((int(pairs), ext.m))
    y = lo + (hi - lo) * rng.random((int(pairs), ext.m))
    gap = np.abs(ext(x) - ext(y)) - ext.ell * np.linalg.norm(x - y, axis=1)
    return float(gap.max())


def l1_norm(ext, nodes=None):
    """Tensor trapezoid estimate of the L1 norm of f~ over its support box."""
    if nodes is None:
        nodes = {1: 4097, 2: 257, 3: 65}.get(ext.m, 33)
    axes, values = ext.grid(nodes)
    cell = np.prod([ax[1] - ax[0] for ax in axes])
    return float(cell * np.abs(values).sum())
