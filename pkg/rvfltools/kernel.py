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
The Bessel-window smoothing kernel.

    omega(x) = c [|x| <= 1/2] J_nu(2 j_nu |x|) / |x|^nu,   nu = m/2 - 1,
    Psi(x)   = (omega * omega)(x / sqrt(m)),
    psi      = inverse Fourier transform of Psi (a probability density).

c is fixed by the L2 normalization of omega, so Psi(0) = 1 and Psi vanishes
outside the ball of radius sqrt(m). The Fourier convention is
F{phi}(v) = int phi(u) exp(-i<v,u>) du, with (2 pi)^-m on the inverse.

The radial profile of omega is an entire function of |x|^2 and is evaluated
through its power series. Psi is tabulated once per dimension on 4096 radii
and interpolated with a clamped cubic spline. Each table entry is the
autoconvolution of two radial functions, integrated over the half-lens

    y_1 in [s/2, 1/2],  |y'| <= sqrt(1/4 - y_1^2),

with the substitutions y_1 = 1/2 - L u^2 and |y'| = h t. This makes the
integrand smooth, so tensor Gauss-Legendre converges fast in every
dimension. `convolution_mc` is an independent stratified Monte Carlo
estimate of the same quantity.

psi itself is only needed in one dimension, to check the second-moment
identity and to sample the convolution form of the smoothed target.
"""

import copy
import functools
import logging
import math
import threading

import numpy as np
from scipy.integrate import cumulative_trapezoid, simpson
from scipy.interpolate import CubicSpline

from .errors import KernelError
from .specfun import (AIRY_A, bessel_j, chi_mean, first_bessel_zero, log_gamma,
                      log_sphere_area)

__author__ = "The rvfl-tools authors"

log = logging.getLogger(__name__)

TABLE_RESOLUTION = 4096
NORMALIZATION_TOLERANCE = 1e-12
PSI_ZERO_TOLERANCE = 1e-6

PSI_1D_HALF_WIDTH = 200.0
PSI_1D_STEP = 0.05
MOMENT_HALF_WIDTH = 400.0
MOMENT_STEP = 0.1

_PSI_1D_NODES = 768
_OMEGA_LIMIT_RADIUS = 1e-8
_LENS_CHUNK = 256


def _gauss_legendre(n, a=0.0, b=1.0):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (b - a) * x + 0.5 * (b + a), 0.5 * (b - a) * w


def _raw_coefficients(nu, j_nu):
    """Power-series coefficients of J_nu(2 j r) / r^nu in the variable r^2."""
    nterms = 20 + int(3 * j_nu)
    k = np.arange(nterms)
    logmag = (nu * math.log(j_nu) + 2.0 * k * math.log(j_nu)
              - log_gamma(k + 1.0) - log_gamma(k + nu + 1.0))
    return np.where(k % 2 == 0, 1.0, -1.0) * np.exp(logmag)


def _radial_l2(m, coeffs, nodes):
    r, w = _gauss_legendre(nodes, 0.0, 0.5)
    prof = np.polynomial.polynomial.polyval(r * r, coeffs)
    return math.exp(log_sphere_area(m)) * float(np.sum(w * prof * prof * r ** (m - 1)))


def _normalization(m, coeffs):
    coarse = _radial_l2(m, coeffs, 64)
    fine = _radial_l2(m, coeffs, 128)
    if not (fine > 0) or abs(coarse - fine) > NORMALIZATION_TOLERANCE * fine:
        raise KernelError(
            'radial normalization quadrature did not converge for m={}'.format(m),
            {'m': m, 'l2_64': coarse, 'l2_128': fine})
    return 1.0 / math.sqrt(fine)


def normalize(m):
    """
    Normalization constant c of omega for dimension m.

    Parameters
    ----------
    m : int
        Ambient dimension.

    Returns
    -------
    float
        c such that the integral of omega^2 over R^m equals 1.
    """
    if int(m) != m or m < 1:
        raise KernelError('dimension must be a positive integer: {}'.format(m))
    nu = 0.5 * m - 1.0
    return _normalization(m, _raw_coefficients(nu, first_bessel_zero(nu)))


def smoothing_constant(m):
    """(2 - 2^(1/3) a m^(-2/3)) sqrt(m), the smoothing error factor."""
    return (2.0 - 2.0 ** (1.0 / 3.0) * AIRY_A * m ** (-2.0 / 3.0)) * math.sqrt(m)


def bessel_zero_ratio_margin(m):
    """sqrt(m) - 2^(1/3) a m^(-1/6) - 2 j_nu / sqrt(m); positive for every m."""
    j_nu = first_bessel_zero(0.5 * m - 1.0)
    return (math.sqrt(m) - 2.0 ** (1.0 / 3.0) * AIRY_A * m ** (-1.0 / 6.0)
            - 2.0 * j_nu / math.sqrt(m))


def smoothing_moment_sum(m):
    """E|Z| + sqrt(E|X|^2), Z standard normal and X distributed as psi."""
    j_nu = first_bessel_zero(0.5 * m - 1.0)
    return chi_mean(m) + 2.0 * j_nu / math.sqrt(m)


class SmoothingKernel(object):
    """
    omega, Psi and (for m = 1) psi for one ambient dimension.

    Parameters
    ----------
    m : int
        Ambient dimension.

    resolution : int
        Number of tabulated radii of Psi on [0, sqrt(m)].

    nodes : int, optional
        Gauss-Legendre nodes per lens coordinate.
    """

    def __init__(self, m, resolution=TABLE_RESOLUTION, nodes=None):
        if int(m) != m or m < 1:
            raise KernelError('dimension must be a positive integer: {}'.format(m))
        self.m = int(m)
        self.nu = 0.5 * self.m - 1.0
        self.j_nu = first_bessel_zero(self.nu)
        self.resolution = int(resolution)

        raw = _raw_coefficients(self.nu, self.j_nu)
        self.c_norm = _normalization(self.m, raw)
        self._coeffs = self.c_norm * raw

        if nodes is None:
            nodes = 96 if self.m == 1 else 48
        self._u, self._wu = _gauss_legendre(nodes)
        self._t, self._wt = _gauss_legendre(nodes)
        self._log_shell = log_sphere_area(self.m - 1) if self.m > 1 else 0.0

        self.radii = np.linspace(0.0, math.sqrt(self.m), self.resolution)
        table = self.autoconvolution(self.radii / math.sqrt(self.m))
        if abs(table[0] - 1.0) > PSI_ZERO_TOLERANCE:
            raise KernelError(
                'Psi(0) = {!r} is not 1 for m={}'.format(table[0], self.m),
                {'m': self.m, 'psi0': table[0], 'nodes': nodes})
        table[-1] = 0.0
        self._set_table(table)

        self._lock = threading.Lock()
        self._psi_nodes = None
        self._psi_1d = None
        log.debug('kernel m=%d: j_nu=%.12g c=%.12g Psi(0)-1=%.3g',
                  self.m, self.j_nu, self.c_norm, table[0] - 1.0)

    def _set_table(self, table):
        table = np.asarray(table, dtype=float)
        table.setflags(write=False)
        self.table = table
        self._spline = CubicSpline(self.radii, table, bc_type=((1, 0.0), (1, 0.0)))

    def scaled(self, factor):
        """Copy whose Psi table is multiplied by `factor`."""
        other = copy.copy(self)
        other._set_table(self.table * factor)
        other._lock = threading.Lock()
        other._psi_nodes = None
        other._psi_1d = None
        return other

    def omega_profile(self, r2):
        """omega as a function of |x|^2, without the support indicator."""
        return np.polynomial.polynomial.polyval(np.asarray(r2, dtype=float),
                                                self._coeffs)

    def autoconvolution(self, s):
        """(omega * omega)(s e_1) by lens quadrature, for s >= 0."""
        s = np.atleast_1d(np.asarray(s, dtype=float)).ravel()
        out = np.zeros_like(s)
        inside = np.flatnonzero(s < 1.0)
        for start in range(0, inside.shape[0], _LENS_CHUNK):
            idx = inside[start:start + _LENS_CHUNK]
            out[idx] = self._lens(s[idx])
        return out

    def _lens(self, s):
        half_len = 0.5 * (1.0 - s)[:, None]
        u = self._u[None, :]
        y1 = 0.5 - half_len * u * u
        jac = 2.0 * half_len * u * self._wu[None, :]

        if self.m == 1:
            prod = self.omega_profile(y1 * y1) * self.omega_profile((s[:, None] - y1) ** 2)
            return 2.0 * np.sum(prod * jac, axis=1)

        h = np.sqrt(np.maximum(0.25 - y1 * y1, 0.0))[:, :, None]
        rho = h * self._t[None, None, :]
        rho2 = rho * rho
        y1 = y1[:, :, None]
        prod = (self.omega_profile(y1 * y1 + rho2)
                * self.omega_profile((s[:, None, None] - y1) ** 2 + rho2))
        shell = math.exp(self._log_shell) * rho ** (self.m - 2) * h
        inner = np.sum(prod * shell * self._wt[None, None, :], axis=2)
        return 2.0 * np.sum(inner * jac, axis=1)

    def psi_radial(self, r):
        """Psi at radii `r` (spline lookup, exact zero beyond sqrt(m))."""
        r = np.asarray(r, dtype=float)
        out = np.zeros_like(r)
        inside = r <= self.radii[-1]
        out[inside] = self._spline(r[inside])
        return out

    def table_rows(self):
        """(radius, Psi) pairs of the table."""
        return zip(self.radii.tolist(), self.table.tolist())

    def _psi_node_values(self):
        with self._lock:
            if self._psi_nodes is None:
                v, w = _gauss_legendre(_PSI_1D_NODES)
                self._psi_nodes = (v, w * self.autoconvolution(v))
            return self._psi_nodes

    def psi_1d_table(self):
        """(x, psi, cdf) on the sampling grid, m = 1 only."""
        _require_1d(self)
        with self._lock:
            table = self._psi_1d
        if table is None:
            xs = np.arange(-PSI_1D_HALF_WIDTH, PSI_1D_HALF_WIDTH + 0.5 * PSI_1D_STEP,
                           PSI_1D_STEP)
            pdf = psi_pdf_1d(self, xs)
            cdf = cumulative_trapezoid(np.maximum(pdf, 0.0), xs, initial=0.0)
            cdf /= cdf[-1]
            table = (xs, pdf, cdf)
            with self._lock:
                self._psi_1d = table
        return table

    def __repr__(self):
        return 'SmoothingKernel(m={}, nu={:g}, j_nu={:.10g})'.format(
            self.m, self.nu, self.j_nu)


@functools.lru_cache(maxsize=None)
def get_kernel(m):
    """Shared `SmoothingKernel` for dimension m."""
    return SmoothingKernel(m)


def _require_1d(kernel):
    if kernel.m != 1:
        raise KernelError('psi is only implemented for m = 1, got m={}'.format(kernel.m))


def omega(kernel, x):
    """
    omega at one point or a batch of points.

    Parameters
    ----------
    kernel : SmoothingKernel

    x : array_like
        Point of shape (m,) or points of shape (N, m).

    Returns
    -------
    float or numpy.ndarray
    """
    pts = np.asarray(x, dtype=float)
    single = pts.ndim == 0 or (pts.ndim == 1 and pts.shape[0] == kernel.m)
    pts = pts.reshape(-1, kernel.m)
    r = np.linalg.norm(pts, axis=1)

    out = np.zeros_like(r)
    small = r < _OMEGA_LIMIT_RADIUS
    out[small] = kernel.c_norm * math.exp(kernel.nu * math.log(kernel.j_nu)
                                          - log_gamma(kernel.nu + 1.0))
    mid = (~small) & (r <= 0.5)
    if np.any(mid):
        out[mid] = (kernel.c_norm * bessel_j(kernel.nu, 2.0 * kernel.j_nu * r[mid])
                    / r[mid] ** kernel.nu)
    return float(out[0]) if single else out


def psi_cap(kernel, x):
    """Psi at one point (shape (m,)) or a batch of points (shape (N, m))."""
    pts = np.asarray(x, dtype=float)
    single = pts.ndim == 0 or (pts.ndim == 1 and pts.shape[0] == kernel.m)
    r = np.linalg.norm(pts.reshape(-1, kernel.m), axis=1)
    out = kernel.psi_radial(r)
    return float(out[0]) if single else out


def psi_pdf_1d(kernel, x):
    """
    psi = inverse Fourier transform of Psi, one dimension only.

    Psi is even, so the inverse transform reduces to a cosine transform over
    [0, 1], evaluated by Gauss-Legendre quadrature of the exact
    autoconvolution.
    """
    _require_1d(kernel)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    v, wpsi = kernel._psi_node_values()
    out = (np.cos(np.outer(xs.ravel(), v)) @ wpsi) / math.pi
    out = out.reshape(xs.shape)
    return float(out[0]) if np.ndim(x) == 0 else out


def psi_mass_1d(kernel):
    """Integral of psi over the tabulated window [-200, 200]."""
    xs, pdf, _ = kernel.psi_1d_table()
    return float(simpson(pdf, x=xs))


def second_moment_1d(kernel):
    """Integral of x^2 psi(x) over [-400, 400]."""
    _require_1d(kernel)
    xs = np.arange(-MOMENT_HALF_WIDTH, MOMENT_HALF_WIDTH + 0.5 * MOMENT_STEP, MOMENT_STEP)
    return float(simpson(xs * xs * psi_pdf_1d(kernel, xs), x=xs))


def psi_sample_1d(kernel, size, rng):
    """Draws from psi by inverse-CDF interpolation of its table."""
    xs, _, cdf = kernel.psi_1d_table()
    return np.interp(rng.random(size), cdf, xs)


def convolution_mc(kernel, s, samples=10 ** 5, seed=0, strata=64):
    """
    Stratified Monte Carlo estimate of (omega * omega)(s e_1).

    The first coordinate of y is stratified into equal slabs of
    [-1/2, 1/2]; the others are uniform on the same interval.

    Returns
    -------
    tuple
        (estimate, standard error).
    """
    rng = np.random.default_rng(seed)
    per = max(2, int(samples) // strata)
    target = np.zeros(kernel.m)
    target[0] = s

    means = np.empty(strata)
    variances = np.empty(strata)
    for k in range(strata):
        y = rng.random((per, kernel.m)) - 0.5
        y[:, 0] = (k + rng.random(per)) / strata - 0.5
        r1 = np.einsum('ij,ij->i', y, y)
        r2 = np.einsum('ij,ij->i', y - target, y - target)
        val = np.where((r1 <= 0.25) & (r2 <= 0.25),
                       kernel.omega_profile(r1) * kernel.omega_profile(r2), 0.0)
        means[k] = val.mean()
        variances[k] = val.var(ddof=1) / per
    return float(means.mean()), float(math.sqrt(variances.sum()) / strata)
