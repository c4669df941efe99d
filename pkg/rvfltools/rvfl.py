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
Random-feature ReLU networks.

    N(x) = sum_j a_j relu(<w_j, x - p> + b_j) + zeta

Hidden weights w_j have i.i.d. N(0, sigma^2) coordinates and biases are
uniform on [-sigma R sqrt(m), sigma R sqrt(m)]. Only the outer weights a_j
are chosen, either constructively as G(w_j, b_j)/n from the spectral
surrogate, or by least squares on data.

Networks take points in the original coordinates of the target; p is the
circumcenter removed by `lipschitz.recenter` and zeta the value offset.
"""

import logging
import math

import numpy as np
from scipy import linalg
from scipy.spatial import cKDTree

from .bounds import hoeffding_log_tail
from .errors import DensityOverflowError, FitError, RvflError
from .specfun import regularized_lower_gamma
from .spectral import h_gradient, h_truncated
from .utils import as_points, parallel_map

__author__ = "The rvfl-tools authors"

log = logging.getLogger(__name__)

BLOCK_UNITS = 4096
PHASE_CUTOFF = 1e-12
_EVAL_BLOCK = 1 << 22
_LOG_MAX = math.log(np.finfo(float).max)


def _relu(t):
    return np.maximum(t, 0.0)


class HiddenLayer(object):
    """
    Sampled hidden weights and biases.

    Parameters
    ----------
    weights : numpy.ndarray
        (n, m) hidden weights.

    biases : numpy.ndarray
        (n,) biases.

    sigma, R : float
        Scale parameters the layer was drawn with.

    seed : int or None
        Master seed.

    center : array_like, optional
        Circumcenter p of the target domain, zero by default.
    """

    def __init__(self, weights, biases, sigma, R, seed=None, center=None):
        self.weights = np.asarray(weights, dtype=float)
        self.biases = np.asarray(biases, dtype=float)
        self.sigma = float(sigma)
        self.R = float(R)
        self.seed = seed
        if center is None:
            center = np.zeros(self.weights.shape[1])
        self.center = np.asarray(center, dtype=float).reshape(self.weights.shape[1])

    @property
    def n(self):
        return self.weights.shape[0]

    @property
    def m(self):
        return self.weights.shape[1]

    @property
    def bias_range(self):
        return self.sigma * self.R * math.sqrt(self.m)

    def features(self, x):
        """Design matrix relu(<w_j, x - p> + b_j), points in original coordinates."""
        pts, _ = as_points(x, self.m)
        return _relu((pts - self.center) @ self.weights.T + self.biases)

    def __repr__(self):
        return 'HiddenLayer(n={}, m={}, sigma={:.6g}, R={:.6g}, seed={})'.format(
            self.n, self.m, self.sigma, self.R, self.seed)


def sample_hidden(n, m, sigma, R, seed=0, center=None, workers=1):
    """
    Draws a hidden layer.

    Units come in blocks of 4096, each block from its own generator spawned
    from `seed`, so the first k units of a layer of width n >= k equal the
    layer of width k, and the result does not depend on `workers`.

    Parameters
    ----------
    n : int
        Width, >= 1.

    m : int
        Input dimension.

    sigma : float
        Standard deviation of the weight coordinates, > 0.

    R : float
        Circumradius of the domain, > 0.

    seed : int
        Master seed.

    Returns
    -------
    HiddenLayer
    """
    if int(n) != n or n < 1:
        raise RvflError('width must be a positive integer: {}'.format(n))
    if not (sigma > 0) or not (R > 0):
        raise RvflError('sigma and R must be positive: {}, {}'.format(sigma, R))
    n, m = int(n), int(m)
    limit = sigma * R * math.sqrt(m)
    nblocks = -(-n // BLOCK_UNITS)
    children = np.random.SeedSequence(seed).spawn(nblocks)

    def _block(child):
        rng = np.random.default_rng(child)
        w = sigma * rng.standard_normal((BLOCK_UNITS, m))
        b = rng.uniform(-limit, limit, BLOCK_UNITS)
        return w, b

    blocks = parallel_map(_block, children, workers)
    weights = np.concatenate([w for w, _ in blocks])[:n]
    biases = np.concatenate([b for _, b in blocks])[:n]
    return HiddenLayer(weights, biases, sigma, R, seed, center)


class RvflNetwork(object):
    """One-hidden-layer ReLU network with fixed hidden parameters."""

    def __init__(self, weights, biases, outer, zeta=0.0, sigma=1.0, R=1.0,
                 center=None, provenance='constructive', seed=None):
        self.weights = np.asarray(weights, dtype=float)
        if self.weights.ndim != 2:
            raise RvflError('hidden weights must be an (n, m) array')
        n, m = self.weights.shape
        self.biases = np.asarray(biases, dtype=float).reshape(n)
        self.outer = np.asarray(outer, dtype=float).reshape(n)
        self.zeta = float(zeta)
        self.sigma = float(sigma)
        self.R = float(R)
        if center is None:
            center = np.zeros(m)
        self.center = np.asarray(center, dtype=float).reshape(m)
        self.provenance = provenance
        self.seed = seed

        limit = self.sigma * self.R * math.sqrt(m) * (1.0 + 1e-12)
        if n and np.max(np.abs(self.biases)) > limit:
            raise RvflError('bias outside [-sigma R sqrt(m), sigma R sqrt(m)]')

    @property
    def n(self):
        return self.weights.shape[0]

    @property
    def m(self):
        return self.weights.shape[1]

    def __call__(self, x):
        pts, single = as_points(x, self.m)
        out = np.empty(pts.shape[0])
        rows = max(1, _EVAL_BLOCK // max(self.n, 1))
        for start in range(0, pts.shape[0], rows):
            block = pts[start:start + rows] - self.center
            out[start:start + rows] = _relu(block @ self.weights.T + self.biases) @ self.outer
        out += self.zeta
        return float(out[0]) if single else out

    def __repr__(self):
        return 'RvflNetwork(n={}, m={}, provenance={})'.format(
            self.n, self.m, self.provenance)


class WeightDensity(object):
    """
    The outer-weight density G(w, b) of a spectral surrogate.

        G(w, b) = -2 sigma R sqrt(m) Lambda^2 (2 pi)^(-m/2) lambda^m |F(Lambda w)|
                  Psi(w / sigma) [|w| >= theta sigma sqrt(m)] cos(Lambda b - arg F(Lambda w))

    with Lambda = lambda / sigma. The magnitude is assembled as a sum of
    logarithms.

    Parameters
    ----------
    surrogate : SpectralSurrogate

    sigma : float
        Weight scale, > 0.

    R : float, optional
        Circumradius; defaults to the radius of the surrogate's domain.
    """

    def __init__(self, surrogate, sigma=1.0, R=None):
        if not (sigma > 0):
            raise RvflError('sigma must be positive: {}'.format(sigma))
        self.surrogate = surrogate
        self.m = surrogate.m
        self.sigma = float(sigma)
        self.lam = surrogate.lam
        self.Lambda = self.lam / self.sigma
        self.theta = surrogate.theta
        if not self.theta > 0:
            raise RvflError('the weight density needs theta > 0')
        base = surrogate.ext.base
        self.R = base.R if R is None else float(R)
        self.ell = base.ell
        self.M = base.M
        self.zeta = base.zeta
        self.center = base.center
        self.log_scale = (math.log(2.0) + math.log(self.sigma) + math.log(self.R)
                          + 0.5 * math.log(self.m) + 2.0 * math.log(self.Lambda)
                          - 0.5 * self.m * math.log(2.0 * math.pi)
                          + self.m * math.log(self.lam))
        self._volume = None

    def __call__(self, w, b):
        """G at one (w, b) pair or at arrays w (k, m), b (k,)."""
        W, single = as_points(w, self.m)
        B = np.asarray(b, dtype=float).reshape(W.shape[0])
        out = np.zeros(W.shape[0])

        norm = np.linalg.norm(W, axis=1)
        psi = self.surrogate.kernel.psi_radial(norm / self.sigma)
        active = np.flatnonzero((norm >= self.theta * self.sigma * math.sqrt(self.m))
                                & (psi > 0.0))
        if active.size:
            F = self.surrogate.F(self.Lambda * W[active])
            mag = np.abs(F)
            phase = np.where(mag < PHASE_CUTOFF * self.surrogate.transform.l1,
                             0.0, np.angle(F))
            with np.errstate(divide='ignore'):
                logmag = self.log_scale + np.log(mag) + np.log(psi[active])
            if np.any(logmag > _LOG_MAX):
                raise DensityOverflowError(
                    'G(w, b) overflows: log|G| = {:.6g}'.format(float(logmag.max())))
            out[active] = -np.exp(logmag) * np.cos(self.Lambda * B[active] - phase)
        return float(out[0]) if single else out

    def volume(self, samples=10 ** 6, seed=0, workers=1):
        """Monte Carlo volume of the extension support K + (M/l)B."""
        if self._volume is None:
            if self.M <= 0:
                self._volume = (0.0, 0.0)
            else:
                domain = self.surrogate.ext.base.domain
                self._volume = tuple(domain.inflated_volume(
                    self.M / self.ell, samples, seed, workers))
        return self._volume[0]

    def log_bound(self, volume=None):
        """
        ln B, with B the almost-sure bound of |G(w,b) relu(<w,x> + b)| on K.

            B = 2 R^2 sqrt(m) (2 pi)^(-m/2) lambda^(m+1) (1 + 1/theta) l |K~|
        """
        if volume is None:
            volume = self.volume()
        if volume <= 0 or self.ell <= 0:
            return -math.inf
        return (math.log(2.0) + 2.0 * math.log(self.R) + 0.5 * math.log(self.m)
                - 0.5 * self.m * math.log(2.0 * math.pi)
                + (self.m + 1) * math.log(self.lam)
                + math.log1p(1.0 / self.theta) + math.log(self.ell) + math.log(volume))

    def bound(self, volume=None):
        return math.exp(self.log_bound(volume))

    def __repr__(self):
        return 'WeightDensity(m={}, sigma={:.6g}, Lambda={:.6g}, theta={:.6g})'.format(
            self.m, self.sigma, self.Lambda, self.theta)


def weight_density(density, w, b):
    """G(w, b); see `WeightDensity`."""
    return density(w, b)


def boundary_correction(density):
    """
    Affine terms left by integrating over the truncated bias range.

    For |x| <= R the expectation of G(w,b) relu(<w,x> + b) equals
    h(x) - q0 - <q1, x> with T = lambda R sqrt(m),

        q0 = (cos T + T sin T) h(0),   q1 = cos T grad h(0).

    Returns
    -------
    tuple
        (q0, q1) as (float, numpy.ndarray).
    """
    surrogate = density.surrogate
    origin = np.zeros(density.m)
    T = density.lam * density.R * math.sqrt(density.m)
    h0 = h_truncated(surrogate, origin, method='quadrature').value
    grad = np.asarray(h_gradient(surrogate, origin), dtype=float)
    q0 = (math.cos(T) + T * math.sin(T)) * h0
    q1 = math.cos(T) * grad
    log.debug('boundary correction: T=%.6g q0=%.6g |q1|=%.6g', T, q0,
              float(np.linalg.norm(q1)))
    return q0, q1


def build_constructive(layer, density, corrected=None):
    """
    Network with outer weights from the weight density.

    Parameters
    ----------
    layer : HiddenLayer
        Hidden layer drawn with the density's sigma and R.

    density : WeightDensity

    corrected : bool, optional
        Add the boundary correction so that the network is an unbiased
        estimate of h + zeta on K. Defaults to True for m <= 3, where h and
        its gradient at the origin have deterministic quadratures.

    Returns
    -------
    RvflNetwork
        Provenance 'constructive' or 'constructive-raw'.
    """
    if layer.m != density.m:
        raise RvflError('layer dimension {} does not match density m={}'.format(
            layer.m, density.m))
    if (not math.isclose(layer.sigma, density.sigma, rel_tol=1e-12)
            or not math.isclose(layer.R, density.R, rel_tol=1e-12)):
        raise RvflError('layer and density disagree on sigma or R')
    if corrected is None:
        corrected = density.m <= 3

    n = layer.n
    outer = density(layer.weights, layer.biases) / n
    zeta = density.zeta
    if corrected:
        q0, q1 = boundary_correction(density)
        mass = regularized_lower_gamma(0.5 * density.m + 1.0, 0.5 * density.m)
        c = 2.0 * q1 / (density.sigma ** 2 * mass)
        inside = np.linalg.norm(layer.weights, axis=1) <= density.sigma * math.sqrt(density.m)
        outer = outer + (layer.weights @ c) * inside / n
        zeta += q0
    return RvflNetwork(layer.weights, layer.biases, outer, zeta=zeta,
                       sigma=layer.sigma, R=layer.R, center=density.center,
                       provenance='constructive' if corrected else 'constructive-raw',
                       seed=layer.seed)


def fit_least_squares(layer, X, y, ridge=0.0, fit_intercept=True):
    """
    Least-squares outer weights on a fixed hidden layer.

    Minimizes |Phi a + zeta - y|^2 + ridge |a|^2 with a pivoted QR
    factorization (LAPACK gelsy); rank-deficient systems get the
    minimum-norm solution.

    Parameters
    ----------
    layer : HiddenLayer

    X : array_like
        (N, m) training points in original coordinates, N >= 1.

    y : array_like
        (N,) targets.

    ridge : float
        Ridge penalty on the outer weights, >= 0.

    fit_intercept : bool
        Fit the output bias zeta as a free, unpenalized parameter.

    Returns
    -------
    RvflNetwork
        Provenance 'least-squares'.
    """
    pts, _ = as_points(X, layer.m)
    target = np.asarray(y, dtype=float).ravel()
    if pts.shape[0] < 1 or target.shape[0] != pts.shape[0]:
        raise FitError('need one target value per training point ({} vs {})'.format(
            target.shape[0], pts.shape[0]))
    if not (ridge >= 0):
        raise FitError('ridge must be >= 0: {}'.format(ridge))

    design = layer.features(pts)
    if fit_intercept:
        design = np.hstack([design, np.ones((pts.shape[0], 1))])
    if not np.all(np.isfinite(design)) or not np.all(np.isfinite(target)):
        raise FitError('design matrix or targets contain non-finite values')
    rhs = target
    if ridge > 0:
        penalty = math.sqrt(ridge) * np.eye(layer.n, design.shape[1])
        design = np.vstack([design, penalty])
        rhs = np.concatenate([target, np.zeros(layer.n)])

    coef, _, rank, _ = linalg.lstsq(design, rhs, lapack_driver='gelsy')
    log.debug('least squares: %d x %d, rank %d', design.shape[0], design.shape[1], rank)
    zeta = float(coef[-1]) if fit_intercept else 0.0
    outer = coef[:layer.n]
    return RvflNetwork(layer.weights, layer.biases, outer, zeta=zeta, sigma=layer.sigma,
                       R=layer.R, center=layer.center, provenance='least-squares',
                       seed=layer.seed)


def sup_error(net, reference, grid):
    """
    max over the grid of |reference(x) - net(x)|.

    Parameters
    ----------
    net : callable
        Network (or any evaluator) taking (N, m) points.

    reference : callable or array_like
        Reference evaluator, or its values on the grid.

    grid : array_like
        (N, m) evaluation points, N >= 1.

    Returns
    -------
    float
    """
    pts = np.asarray(grid, dtype=float)
    if pts.size == 0:
        raise RvflError('sup error needs a non-empty grid')
    if pts.ndim == 1:
        pts = pts.reshape(-1, 1)
    ref = reference(pts) if callable(reference) else np.asarray(reference, dtype=float)
    return float(np.max(np.abs(np.ravel(ref) - np.ravel(net(pts)))))


def grid_spacing(grid):
    """Largest nearest-neighbour distance within a grid."""
    pts = np.asarray(grid, dtype=float)
    if pts.ndim == 1:
        pts = pts.reshape(-1, 1)
    if pts.shape[0] < 2:
        return 0.0
    dist, _ = cKDTree(pts).query(pts, k=2)
    return float(dist[:, 1].max())


def network_lipschitz(net):
    """sum_j |a_j| |w_j|, a Lipschitz constant of the network."""
    return float(np.abs(net.outer) @ np.linalg.norm(net.weights, axis=1))


def lipschitz_inflation(net, grid):
    """Network Lipschitz constant times the grid spacing."""
    return network_lipschitz(net) * grid_spacing(grid)


def kinks_on_segment(net, x0, x1):
    """Sorted parameters t in (0, 1) where a unit with a_j != 0 switches on x0 + t(x1 - x0)."""
    x0 = np.asarray(x0, dtype=float).reshape(net.m)
    x1 = np.asarray(x1, dtype=float).reshape(net.m)
    slope = net.weights @ (x1 - x0)
    offset = net.weights @ (x0 - net.center) + net.biases
    live = (net.outer != 0.0) & (slope != 0.0)
    t = -offset[live] / slope[live]
    return np.sort(t[(t > 0.0) & (t < 1.0)])


def breakpoint_count(net, x0, x1, samples=10 ** 4, rtol=1e-9):
    """
    Breakpoints of the network along a segment, from second differences.

    Samples N at `samples` + 1 equally spaced points and counts the runs of
    second differences above rtol times the value scale. Kinks closer than
    the sampling step merge, so the count never exceeds the true number.
    """
    x0 = np.asarray(x0, dtype=float).reshape(net.m)
    x1 = np.asarray(x1, dtype=float).reshape(net.m)
    t = np.linspace(0.0, 1.0, int(samples) + 1)
    values = net(x0[None, :] + t[:, None] * (x1 - x0)[None, :])
    second = np.abs(values[2:] - 2.0 * values[1:-1] + values[:-2])
    scale = rtol * (np.max(np.abs(values)) + 1.0)
    flagged = second > scale
    starts = flagged & ~np.concatenate([[False], flagged[:-1]])
    return int(np.count_nonzero(starts))


def hoeffding_envelope(density, n, t, volume=None):
    """
    Tail bound 2 exp(-n/2 (t/B)^2) of the sup deviation |N_n - h|.

    Parameters
    ----------
    density : WeightDensity

    n : int
        Width, >= 0.

    t : float
        Deviation, > 0.

    volume : float, optional
        |K~|; estimated by Monte Carlo when omitted.

    Returns
    -------
    float
    """
    if not (t > 0):
        raise RvflError('deviation must be positive: {}'.format(t))
    return math.exp(hoeffding_log_tail(n, t, density.log_bound(volume)))
