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
Fourier transform of the extended target and the spectral surrogates.

With F the transform of f~ and n a standard normal vector of R^m,

    g(x) = (2 pi)^-m lambda^m int F(lambda n) Psi(n) exp(i lambda <n,x> - |n|^2/2) dn
    h(x) = the same integral restricted to |n| > theta sqrt(m)

g is f~ smoothed by a Gaussian and by psi; h drops the low frequencies and
is what the random network reproduces in expectation.

For m <= 3 both are integrated deterministically with polar/spherical
Gauss-Legendre rules over the support of Psi (method 'quadrature'), and
the error is estimated against a rule with half the nodes. Any m can use
the Gaussian-expectation form (method 'montecarlo'); g and h evaluated
with the same seed share their draws, so their difference is a paired
estimate. In one dimension g also has the convolution form
E f~(x - (Z + X)/lambda), Z standard normal and X drawn from psi.
"""

import functools
import logging
import math
import threading
import warnings
from collections import OrderedDict

import numpy as np

from .errors import AccuracyWarning, QuadratureError, RvflError
from .kernel import get_kernel, psi_sample_1d
from .utils import Estimate, as_points, chunk_generators, chunk_sizes, parallel_map

__author__ = "The rvfl-tools authors"

log = logging.getLogger(__name__)

DEFAULT_NODES = {1: 4097, 2: 257, 3: 65}
MAX_NODES = {1: 16385, 2: 513, 3: 129}
QUADRATURE_MAX_DIM = 3

_FREQ_CHUNK = 256
_MC_FREQ_CHUNK = 32
_X_CHUNK = 256
_RULE_CAP = {1: 2048, 2: 512, 3: 96}


def _trapezoid_weights(axis):
    w = np.full(axis.shape[0], axis[1] - axis[0])
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


class FourierTransform(object):
    """
    F(v) = int f~(u) exp(-i <v, u>) du for an extended target.

    Parameters
    ----------
    ext : ExtendedFunction
        The compactly supported extension.

    nodes : int, optional
        Initial tensor-grid nodes per axis (quadrature mode).

    method : str, optional
        'quadrature' (m <= 3, the default there) or 'montecarlo'.

    vmax : float, optional
        Largest frequency norm the caller will query; the quadrature grid is
        refined until the Richardson error estimate at |v| = vmax is below
        tol * ||f~||_1.

    tol : float
        Relative accuracy target.

    samples : int
        Uniform draws over the support box (Monte Carlo mode).

    seed : int
        Seed of the Monte Carlo draws.

    cache_size : int
        Number of frequencies kept in the LRU cache.
    """

    def __init__(self, ext, nodes=None, method=None, vmax=None, tol=1e-6,
                 samples=10 ** 5, seed=0, cache_size=1 << 16):
        self.ext = ext
        self.m = ext.m
        if method is None:
            method = 'quadrature' if self.m <= QUADRATURE_MAX_DIM else 'montecarlo'
        if method not in ('quadrature', 'montecarlo'):
            raise RvflError('unknown Fourier method: \'{}\''.format(method))
        if method == 'quadrature' and self.m > QUADRATURE_MAX_DIM:
            raise QuadratureError(
                'tensor quadrature of F is limited to m <= {}, got m={}'.format(
                    QUADRATURE_MAX_DIM, self.m))
        self.method = method
        self.tol = tol
        self.vmax = 20.0 if vmax is None else float(vmax)

        self._cache = OrderedDict()
        self._cache_size = int(cache_size)
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

        if method == 'quadrature':
            self._setup_quadrature(nodes)
        else:
            self._setup_montecarlo(samples, seed)

    # quadrature mode
    def _setup_quadrature(self, nodes):
        nodes = DEFAULT_NODES[self.m] if nodes is None else int(nodes)
        if nodes < 3 or nodes % 2 == 0:
            raise QuadratureError('nodes per axis must be odd and >= 3: {}'.format(nodes))
        limit = max(MAX_NODES[self.m], nodes)
        while True:
            axes, values = self.ext.grid(nodes)
            self._set_grid(axes, values)
            self.error = self._richardson_error(axes, values)
            if self.error <= self.tol * self.l1 or nodes >= limit:
                break
            log.debug('F grid: %d nodes/axis error %.3g, refining', nodes, self.error)
            nodes = 2 * nodes - 1
        self.nodes = nodes
        if self.error > self.tol * self.l1:
            warnings.warn(
                'Fourier quadrature error {:.3g} exceeds {:.1g} ||f~||_1 at |v|={:.4g} '
                'with {} nodes per axis'.format(self.error, self.tol, self.vmax, nodes),
                AccuracyWarning)
        log.info('F grid: m=%d nodes/axis=%d l1=%.6g error=%.3g',
                 self.m, nodes, self.l1, self.error)

    def _set_grid(self, axes, values):
        self._axes = axes
        self._weighted = self._weigh(axes, values)
        self.l1 = float(np.abs(self._weighted).sum())

    def _weigh(self, axes, values):
        out = values.astype(float)
        for k, ax in enumerate(axes):
            shape = [1] * self.m
            shape[k] = ax.shape[0]
            out = out * _trapezoid_weights(ax).reshape(shape)
        return out

    def _tensor_sum(self, V, axes, weighted):
        factors = [np.exp(-1j * np.outer(V[:, k], axes[k])) for k in range(self.m)]
        if self.m == 1:
            return factors[0] @ weighted
        if self.m == 2:
            return np.sum((factors[0] @ weighted) * factors[1], axis=1)
        partial = np.einsum('na,abc->nbc', factors[0], weighted)
        return np.einsum('nbc,nb,nc->n', partial, factors[1], factors[2])

    def _probes(self):
        eye = np.eye(self.m)
        diag = np.ones((1, self.m)) / math.sqrt(self.m)
        return self.vmax * np.vstack([eye, diag, 0.5 * eye[:1]])

    def _richardson_error(self, axes, values):
        probes = self._probes()
        full = self._tensor_sum(probes, axes, self._weigh(axes, values))
        half_axes = [ax[::2] for ax in axes]
        half_values = values[(slice(None, None, 2),) * self.m]
        half = self._tensor_sum(probes, half_axes, self._weigh(half_axes, half_values))
        return float(np.max(np.abs(full - half)) / 3.0)

    # Monte Carlo mode
    def _setup_montecarlo(self, samples, seed):
        lo, hi = self.ext.support_box
        rng = np.random.default_rng(seed)
        self._points = lo + (hi - lo) * rng.random((int(samples), self.m))
        self._volume = float(np.prod(hi - lo))
        self._values = self.ext(self._points)
        self.samples = int(samples)
        self.l1 = self._volume * float(np.abs(self._values).mean())
        self.nodes = None
        self.error = float(np.max(self.stderr(self._probes())))
        log.info('F Monte Carlo: m=%d samples=%d l1=%.6g stderr=%.3g',
                 self.m, self.samples, self.l1, self.error)

    def _mc_terms(self, V):
        return self._values[None, :] * np.exp(-1j * (V @ self._points.T))

    def stderr(self, v):
        """Standard error of F at `v` (zero in quadrature mode)."""
        V, single = as_points(v, self.m)
        if self.method == 'quadrature':
            out = np.zeros(V.shape[0])
        else:
            out = np.empty(V.shape[0])
            for start in range(0, V.shape[0], _MC_FREQ_CHUNK):
                terms = self._mc_terms(V[start:start + _MC_FREQ_CHUNK])
                var = terms.real.var(axis=1, ddof=1) + terms.imag.var(axis=1, ddof=1)
                out[start:start + _MC_FREQ_CHUNK] = self._volume * np.sqrt(var / self.samples)
        return float(out[0]) if single else out

    def _compute(self, V):
        out = np.empty(V.shape[0], dtype=complex)
        if self.method == 'quadrature':
            for start in range(0, V.shape[0], _FREQ_CHUNK):
                out[start:start + _FREQ_CHUNK] = self._tensor_sum(
                    V[start:start + _FREQ_CHUNK], self._axes, self._weighted)
        else:
            for start in range(0, V.shape[0], _MC_FREQ_CHUNK):
                terms = self._mc_terms(V[start:start + _MC_FREQ_CHUNK])
                out[start:start + _MC_FREQ_CHUNK] = self._volume * terms.mean(axis=1)
        return out

    def __call__(self, v):
        V, single = as_points(v, self.m)
        V = np.ascontiguousarray(V)
        keys = [row.tobytes() for row in V]
        out = np.empty(V.shape[0], dtype=complex)
        missing = []
        with self._lock:
            for i, key in enumerate(keys):
                hit = self._cache.get(key)
                if hit is None:
                    missing.append(i)
                else:
                    self._cache.move_to_end(key)
                    out[i] = hit
            self.hits += V.shape[0] - len(missing)
            self.misses += len(missing)
        if missing:
            fresh = self._compute(V[missing])
            out[missing] = fresh
            with self._lock:
                for i, value in zip(missing, fresh):
                    self._cache[keys[i]] = value
                    self._cache.move_to_end(keys[i])
                while len(self._cache) > self._cache_size:
                    self._cache.popitem(last=False)
        return complex(out[0]) if single else out

    def __repr__(self):
        return 'FourierTransform(m={}, method={}, nodes={}, l1={:.6g})'.format(
            self.m, self.method, self.nodes, self.l1)


@functools.lru_cache(maxsize=8)
def _shared_transform(ext):
    return FourierTransform(ext)


def fourier(ext, v):
    """
    F(v) for one frequency (shape (m,)) or many (shape (N, m)).

    The transform object is built once per extension and reused.
    """
    return _shared_transform(ext)(v)


def _gauss_legendre(n, a, b):
    x, w = np.polynomial.legendre.leggauss(int(n))
    return 0.5 * (b - a) * x + 0.5 * (b + a), 0.5 * (b - a) * w


def _node_count(osc, length, floor=24, cap=512):
    return int(min(cap, max(floor, math.ceil(0.75 * osc * length) + floor)))


def _shell_rule(m, r0, r1, osc, half=False):
    """Nodes and weights over {r0 <= |n| <= r1} in R^m, m <= 3."""
    div = 2 if half else 1
    cap = _RULE_CAP[m]
    nr = max(8, _node_count(osc, r1 - r0, cap=cap) // div)
    r, wr = _gauss_legendre(nr, r0, r1)
    if m == 1:
        nodes = np.concatenate([r, -r])[:, None]
        weights = np.concatenate([wr, wr])
        return nodes, weights
    nphi = max(8, _node_count(osc, 2.0 * r1, cap=2 * cap) // div)
    phi = 2.0 * math.pi * np.arange(nphi) / nphi
    wphi = np.full(nphi, 2.0 * math.pi / nphi)
    if m == 2:
        rr, pp = np.meshgrid(r, phi, indexing='ij')
        nodes = np.stack([rr * np.cos(pp), rr * np.sin(pp)], axis=-1).reshape(-1, 2)
        weights = np.outer(wr * r, wphi).ravel()
        return nodes, weights
    nmu = max(8, _node_count(osc, 2.0 * r1, cap=cap) // div)
    mu, wmu = _gauss_legendre(nmu, -1.0, 1.0)
    rr, mm, pp = np.meshgrid(r, mu, phi, indexing='ij')
    sin_t = np.sqrt(1.0 - mm * mm)
    nodes = np.stack([rr * sin_t * np.cos(pp), rr * sin_t * np.sin(pp), rr * mm],
                     axis=-1).reshape(-1, 3)
    weights = (wr * r * r)[:, None, None] * wmu[None, :, None] * wphi[None, None, :]
    return nodes, weights.ravel()


class SpectralSurrogate(object):
    """
    g and h for one extension, kernel and frequency scale.

    Parameters
    ----------
    ext : ExtendedFunction

    kernel : SmoothingKernel, optional
        Defaults to the shared kernel of dimension ext.m.

    lam : float
        Frequency scale lambda = sigma Lambda, > 0.

    theta : float
        Truncation parameter, >= 0. h keeps the frequencies with
        |n| > theta sqrt(m).

    transform : FourierTransform, optional
        Prebuilt F; by default one is built with vmax = lambda sqrt(m).
    """

    def __init__(self, ext, kernel=None, lam=1.0, theta=0.05, transform=None,
                 nodes=None):
        if not (lam > 0) or not math.isfinite(lam):
            raise RvflError('lambda must be positive: {}'.format(lam))
        if not (theta >= 0) or not math.isfinite(theta):
            raise RvflError('theta must be >= 0: {}'.format(theta))
        self.ext = ext
        self.m = ext.m
        self.kernel = get_kernel(self.m) if kernel is None else kernel
        if self.kernel.m != self.m:
            raise RvflError('kernel dimension {} does not match m={}'.format(
                self.kernel.m, self.m))
        self.lam = float(lam)
        self.theta = float(theta)
        self.inner_radius = self.theta * math.sqrt(self.m)
        self.outer_radius = math.sqrt(self.m)
        if transform is None:
            transform = FourierTransform(ext, nodes=nodes, vmax=self.lam * self.outer_radius)
        self.transform = transform

        lo, hi = ext.support_box
        self.reach = float(np.max(np.linalg.norm(
            np.stack(np.meshgrid(*zip(lo, hi), indexing='ij'), -1).reshape(-1, self.m),
            axis=1)))
        self.log_prefactor = self.m * (math.log(self.lam) - math.log(2.0 * math.pi))
        self._rules = {}
        self._rules_lock = threading.Lock()

    def F(self, v):
        return self.transform(v)

    def _rule(self, r0, r1, half):
        key = (r0, r1, half)
        with self._rules_lock:
            rule = self._rules.get(key)
        if rule is not None:
            return rule
        if self.m > QUADRATURE_MAX_DIM:
            raise QuadratureError('quadrature surrogates are limited to m <= {}'.format(
                QUADRATURE_MAX_DIM))
        if r1 <= r0:
            rule = (np.zeros((0, self.m)), np.zeros(0, dtype=complex))
        else:
            osc = 2.0 * self.lam * self.reach
            nodes, weights = _shell_rule(self.m, r0, r1, osc, half)
            radius2 = np.einsum('ij,ij->i', nodes, nodes)
            scale = (weights * np.exp(self.log_prefactor - 0.5 * radius2)
                     * self.kernel.psi_radial(np.sqrt(radius2)))
            rule = (nodes, scale * self.F(self.lam * nodes))
            log.debug('rule [%.4g, %.4g] half=%s: %d nodes', r0, r1, half, nodes.shape[0])
        with self._rules_lock:
            self._rules[key] = rule
        return rule

    def _integrate(self, pts, r0, r1, half=False):
        nodes, amp = self._rule(r0, r1, half)
        out = np.zeros(pts.shape[0], dtype=complex)
        if nodes.shape[0] == 0:
            return out
        for start in range(0, pts.shape[0], _X_CHUNK):
            phase = self.lam * (pts[start:start + _X_CHUNK] @ nodes.T)
            out[start:start + _X_CHUNK] = np.exp(1j * phase) @ amp
        return out

    def quadrature(self, x, r0, r1):
        """Estimate of the shell integral at x, error from the half rule."""
        pts, single = as_points(x, self.m)
        full = self._integrate(pts, r0, r1)
        coarse = self._integrate(pts, r0, r1, half=True)
        value, err = full.real, np.abs(full.real - coarse.real)
        if single:
            return Estimate(float(value[0]), float(err[0]))
        return Estimate(value, err)

    def imag_residue(self, x):
        """Largest |Im| of the inverse-transform form of g at the points x."""
        pts, _ = as_points(x, self.m)
        return float(np.max(np.abs(self._integrate(pts, 0.0, self.outer_radius).imag)))

    def h_gradient(self, x):
        """Gradient of h at one point or a batch of points (m <= 3)."""
        pts, single = as_points(x, self.m)
        nodes, amp = self._rule(self.inner_radius, self.outer_radius, False)
        out = np.zeros((pts.shape[0], self.m))
        if nodes.shape[0]:
            for start in range(0, pts.shape[0], _X_CHUNK):
                phase = self.lam * (pts[start:start + _X_CHUNK] @ nodes.T)
                terms = (np.exp(1j * phase) * amp[None, :]).imag
                out[start:start + _X_CHUNK] = -self.lam * (terms @ nodes)
        return out[0] if single else out

    def mc_pair(self, x, samples=10 ** 5, seed=0, workers=1):
        """
        Paired Monte Carlo estimates of g, h and g - h at the points x.

        All three use the same standard normal draws, spread over chunks
        with independently spawned generators.

        Returns
        -------
        tuple of Estimate
            (g, h, g - h).
        """
        pts, single = as_points(x, self.m)
        sizes = chunk_sizes(samples)
        rngs = chunk_generators(seed, len(sizes))
        scale = math.exp(self.m * (math.log(self.lam) - 0.5 * math.log(2.0 * math.pi)))

        def _chunk(job):
            size, rng = job
            n = rng.standard_normal((size, self.m))
            radius = np.linalg.norm(n, axis=1)
            keep = radius <= self.outer_radius
            inner = radius[keep] <= self.inner_radius
            n = n[keep]
            weight = scale * self.kernel.psi_radial(radius[keep]) * self.F(self.lam * n)
            sums = np.zeros((4, pts.shape[0]))
            for start in range(0, pts.shape[0], _X_CHUNK):
                block = slice(start, start + _X_CHUNK)
                val = (np.exp(1j * self.lam * (pts[block] @ n.T)) * weight[None, :]).real
                low = np.where(inner[None, :], val, 0.0)
                sums[0, block] = val.sum(axis=1)
                sums[1, block] = (val * val).sum(axis=1)
                sums[2, block] = low.sum(axis=1)
                sums[3, block] = (low * low).sum(axis=1)
            return sums

        total = sum(parallel_map(_chunk, zip(sizes, rngs), workers))
        nsamp = float(samples)

        def _estimate(s1, s2):
            mean = s1 / nsamp
            var = np.maximum(s2 / nsamp - mean * mean, 0.0) * nsamp / max(nsamp - 1.0, 1.0)
            err = np.sqrt(var / nsamp)
            if single:
                return Estimate(float(mean[0]), float(err[0]))
            return Estimate(mean, err)

        # h integrand is g's minus the low-frequency part; both sums are paired
        high1 = total[0] - total[2]
        high2 = total[1] - total[3]
        return (_estimate(total[0], total[1]), _estimate(high1, high2),
                _estimate(total[2], total[3]))

    def __repr__(self):
        return 'SpectralSurrogate(m={}, lambda={:.6g}, theta={:.6g})'.format(
            self.m, self.lam, self.theta)


def _default_method(surrogate, method):
    if method is None:
        return 'quadrature' if surrogate.m <= QUADRATURE_MAX_DIM else 'montecarlo'
    if method not in ('quadrature', 'montecarlo'):
        raise RvflError('unknown method: \'{}\''.format(method))
    return method


def g_spectral(surrogate, x, method=None, mc_samples=10 ** 5, seed=0, workers=1):
    """
    Smoothed extension g through its spectral representation.

    Parameters
    ----------
    surrogate : SpectralSurrogate

    x : array_like
        One point (m,) or points (N, m), recentered coordinates.

    method : str, optional
        'quadrature' (default for m <= 3) or 'montecarlo'.

    Returns
    -------
    Estimate
        Value and error estimate (quadrature: half-rule difference,
        Monte Carlo: standard error).
    """
    method = _default_method(surrogate, method)
    if method == 'quadrature':
        return surrogate.quadrature(x, 0.0, surrogate.outer_radius)
    return surrogate.mc_pair(x, mc_samples, seed, workers)[0]


def h_truncated(surrogate, x, mc_samples=10 ** 5, seed=0, method='montecarlo',
                workers=1):
    """
    Truncated expectation h at the points x.

    The Monte Carlo mode draws the same normals as `g_spectral` for equal
    seeds and sample counts.

    Returns
    -------
    Estimate
    """
    method = _default_method(surrogate, method)
    if method == 'quadrature':
        return surrogate.quadrature(x, surrogate.inner_radius, surrogate.outer_radius)
    return surrogate.mc_pair(x, mc_samples, seed, workers)[1]


def truncation_gap(surrogate, x, method=None, mc_samples=10 ** 5, seed=0, workers=1):
    """g - h, integrated directly over the inner ball |n| <= theta sqrt(m)."""
    method = _default_method(surrogate, method)
    if method == 'quadrature':
        return surrogate.quadrature(x, 0.0, min(surrogate.inner_radius,
                                                surrogate.outer_radius))
    return surrogate.mc_pair(x, mc_samples, seed, workers)[2]


def h_gradient(surrogate, x):
    """Gradient of h (quadrature, m <= 3)."""
    return surrogate.h_gradient(x)


def g_convolution(surrogate, x, mc_samples=10 ** 5, seed=0, workers=1):
    """
    Convolution form of g in one dimension.

    Averages f~(x - (z + xi)/lambda) with z standard normal and xi drawn
    from psi.

    Returns
    -------
    Estimate
    """
    if surrogate.m != 1:
        raise RvflError('the convolution form of g is only available for m = 1')
    pts, single = as_points(x, 1)
    sizes = chunk_sizes(mc_samples)
    rngs = chunk_generators(seed, len(sizes))
    kernel, lam, ext = surrogate.kernel, surrogate.lam, surrogate.ext

    def _chunk(job):
        size, rng = job
        shift = (rng.standard_normal(size) + psi_sample_1d(kernel, size, rng)) / lam
        sums = np.zeros((2, pts.shape[0]))
        for i, xi in enumerate(pts[:, 0]):
            val = ext((xi - shift)[:, None])
            sums[0, i] = val.sum()
            sums[1, i] = (val * val).sum()
        return sums

    total = sum(parallel_map(_chunk, zip(sizes, rngs), workers))
    nsamp = float(mc_samples)
    mean = total[0] / nsamp
    var = np.maximum(total[1] / nsamp - mean * mean, 0.0) * nsamp / max(nsamp - 1.0, 1.0)
    err = np.sqrt(var / nsamp)
    if single:
        return Estimate(float(mean[0]), float(err[0]))
    return Estimate(mean, err)
