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
Numerical checks of every inequality the approximation chain relies on.

Each check is a function registered with `@check(check_id, claim)`. It
receives a `ValidationContext` and returns one or more `CheckResult`
records: the observed quantity, the bound it must respect, their margin
and a pass flag. Checks that do not apply to the context (wrong
dimension for a quadrature, one-dimensional identities) come back as
skipped rather than failed.
"""

import logging
import math
from collections import OrderedDict, namedtuple

import numpy as np

from . import bounds
from .errors import RvflError
from .kernel import (bessel_zero_ratio_margin, get_kernel, omega, psi_cap, psi_mass_1d,
                     second_moment_1d, smoothing_constant, smoothing_moment_sum)
from .lipschitz import extend, gradient_sup_check, lipschitz_violation, recenter
from .rvfl import (WeightDensity, boundary_correction, build_constructive,
                   hoeffding_envelope, sample_hidden)
from .specfun import (bessel_zero_upper_bound, chi_mean, first_bessel_zero,
                      log_unit_ball_volume, regularized_lower_gamma,
                      incomplete_gamma_upper_bound)
from .spectral import (FourierTransform, SpectralSurrogate, g_convolution, g_spectral,
                       h_truncated, truncation_gap)
from .targets import load_target
from .utils import chunk_generators, chunk_sizes, parallel_map

__author__ = "The rvfl-tools authors"

log = logging.getLogger(__name__)

CheckResult = namedtuple('CheckResult', ['check_id', 'claim', 'observed', 'bound',
                                         'margin', 'passed', 'skipped'])

_CHECKS = OrderedDict()


def check(check_id, claim):
    """Registers a check function under `check_id`."""
    def _register(func):
        func.check_id = check_id
        func.claim = claim
        _CHECKS[check_id] = func
        return func
    return _register


def available_checks():
    return list(_CHECKS)


def _result(func, observed, bound, passed=None, suffix=''):
    observed = float(observed)
    bound = float(bound)
    if passed is None:
        passed = observed <= bound
    return CheckResult(func.check_id + suffix, func.claim, observed, bound,
                       bound - observed, bool(passed), False)


def _skipped(func, reason):
    log.info('%s skipped: %s', func.check_id, reason)
    return CheckResult(func.check_id, '{} [skipped: {}]'.format(func.claim, reason),
                       None, None, None, True, True)


def result_to_dict(result):
    """JSON-ready record of a `CheckResult`."""
    return {
        'check_id': result.check_id,
        'claim': result.claim,
        'observed': result.observed,
        'bound': result.bound,
        'margin': result.margin,
        'pass': result.passed,
        'skipped': result.skipped,
    }


class ValidationContext(object):
    """
    Target, kernel and sample sizes shared by the checks.

    Parameters
    ----------
    m : int
        Dimension of the target.

    target : str
        Built-in target name or CSV path.

    grid : int, optional
        Grid nodes per axis of a built-in target.

    ell : float, optional
        Lipschitz constant override.

    lambdas, thetas : sequence of float
        Frequency scales and truncation parameters swept by the envelope
        checks.

    mc_samples : int
        Samples of the Monte Carlo estimators of g and h.

    density_samples : int
        Draws of (w, b) in the unbiasedness checks.

    seeds : int
        Networks drawn by the concentration check.

    width : int
        Width of those networks.

    psi_scale : float
        Multiplies the Psi table; any value other than 1 corrupts the kernel.

    quick : bool
        Use the reduced sample sizes of `QUICK`.
    """

    QUICK = {'mc_samples': 2 * 10 ** 4, 'density_samples': 2 * 10 ** 5,
             'seeds': 40, 'width': 1000, 'variance_seeds': 4000,
             'volume_samples': 10 ** 5}
    FULL = {'mc_samples': 10 ** 5, 'density_samples': 10 ** 6,
            'seeds': 200, 'width': 10 ** 4, 'variance_seeds': 8000,
            'volume_samples': 10 ** 6}

    def __init__(self, m=1, target='tent', grid=None, ell=None, lambdas=(5.0, 10.0, 20.0),
                 thetas=(0.02, 0.05), sigma=1.0, seed=0, workers=1, quick=False,
                 psi_scale=1.0, **sizes):
        self.m = int(m)
        self.target = target
        self.grid = grid if grid is not None else (101 if self.m == 1 else 21)
        self.ell = ell
        self.lambdas = tuple(float(v) for v in lambdas)
        self.thetas = tuple(float(v) for v in thetas)
        self.sigma = float(sigma)
        self.seed = int(seed)
        self.workers = workers
        self.quick = quick
        self.psi_scale = float(psi_scale)
        params = dict(self.QUICK if quick else self.FULL)
        for key, value in sizes.items():
            if key not in params:
                raise RvflError('unknown validation parameter: \'{}\''.format(key))
            if value is not None:
                params[key] = int(value)
        self.__dict__.update(params)

        self._kernels = {}
        self._samples = None
        self._ext = None
        self._transform = None
        self._surrogates = {}
        self._volume = None

    def kernel(self, m):
        if m not in self._kernels:
            kernel = get_kernel(m)
            if self.psi_scale != 1.0:
                kernel = kernel.scaled(self.psi_scale)
            self._kernels[m] = kernel
        return self._kernels[m]

    @property
    def samples(self):
        if self._samples is None:
            self._samples = recenter(load_target(self.target, self.m, self.grid, self.ell))
        return self._samples

    @property
    def ext(self):
        if self._ext is None:
            self._ext = extend(self.samples)
        return self._ext

    @property
    def transform(self):
        if self._transform is None:
            vmax = max(self.lambdas) * math.sqrt(self.m)
            self._transform = FourierTransform(self.ext, vmax=vmax)
        return self._transform

    def surrogate(self, lam, theta):
        key = (lam, theta)
        if key not in self._surrogates:
            self._surrogates[key] = SpectralSurrogate(
                self.ext, self.kernel(self.m), lam, theta, transform=self.transform)
        return self._surrogates[key]

    def volume(self):
        """Monte Carlo estimate of |K~| with its standard error."""
        if self._volume is None:
            samples = self.samples
            self._volume = tuple(samples.domain.inflated_volume(
                samples.M / samples.ell, self.volume_samples, self.seed, self.workers))
        return self._volume

    def eval_grid(self, count=11):
        """`count` points of K, recentered coordinates."""
        points = self.samples.domain.points
        if self.m == 1:
            lo, hi = points.min(), points.max()
            return np.linspace(lo, hi, count)[:, None]
        idx = np.unique(np.linspace(0, points.shape[0] - 1, count).astype(int))
        return points[idx]

    def dense_grid(self):
        points = self.samples.domain.points
        if points.shape[0] <= 121:
            return points
        idx = np.unique(np.linspace(0, points.shape[0] - 1, 121).astype(int))
        return points[idx]


# special functions
@check('bessel_zero_half_integer', 'j_{-1/2} = pi/2 and j_{1/2} = pi to 1e-10')
def _bessel_zero_half_integer(ctx):
    err = max(abs(first_bessel_zero(-0.5) - 0.5 * math.pi),
              abs(first_bessel_zero(0.5) - math.pi))
    return _result(_bessel_zero_half_integer, err, 1e-10)


@check('bessel_zero_upper_bound',
       'j_nu < nu - a (nu/2)^(1/3) + (3/20) a^2 (nu/2)^(-1/3) for nu = m/2 - 1, m = 3..30')
def _bessel_zero_upper_bound(ctx):
    gap = max(first_bessel_zero(0.5 * m - 1.0) - bessel_zero_upper_bound(0.5 * m - 1.0)
              for m in range(3, 31))
    return _result(_bessel_zero_upper_bound, gap, 0.0, gap < 0.0)


@check('incomplete_gamma_power_bound',
       'P(m/2, x) <= x^(m/2) / ((m/2) Gamma(m/2)) for m = 1..30, x in [1e-3, 10]')
def _incomplete_gamma_power_bound(ctx):
    worst = -math.inf
    for a in 0.5 * np.arange(1, 31):
        for x in np.logspace(-3.0, 1.0, 81):
            ratio = regularized_lower_gamma(a, x) / incomplete_gamma_upper_bound(a, x)
            worst = max(worst, ratio)
    return _result(_incomplete_gamma_power_bound, worst, 1.0 + 1e-12)


@check('wendel_chi_mean', 'E|Z| = sqrt(2) Gamma((m+1)/2) / Gamma(m/2) <= sqrt(m), m <= 50')
def _wendel_chi_mean(ctx):
    worst = max(chi_mean(m) / math.sqrt(m) for m in range(1, 51))
    return _result(_wendel_chi_mean, worst, 1.0)


@check('unit_ball_volume_stirling', 'V_m^(1/m) / sqrt(2 pi e / m) = 1 +- 0.02 at m = 200')
def _unit_ball_volume_stirling(ctx):
    m = 200
    ratio = math.exp(log_unit_ball_volume(m) / m - 0.5 * math.log(2.0 * math.pi * math.e / m))
    return _result(_unit_ball_volume_stirling, abs(ratio - 1.0), 0.02)


# kernel
@check('kernel_omega_closed_form', 'omega = sqrt(2) cos(pi x) on [-1/2, 1/2] for m = 1')
def _kernel_omega_closed_form(ctx):
    x = np.linspace(-0.5, 0.5, 201)[:, None]
    err = np.max(np.abs(omega(get_kernel(1), x) - math.sqrt(2.0) * np.cos(math.pi * x[:, 0])))
    return _result(_kernel_omega_closed_form, err, 1e-8)


@check('kernel_psi_at_zero', 'Psi(0) = 1 within 1e-6')
def _kernel_psi_at_zero(ctx):
    out = []
    for m in sorted({1, ctx.m}):
        value = psi_cap(ctx.kernel(m), np.zeros(m))
        out.append(_result(_kernel_psi_at_zero, abs(value - 1.0), 1e-6,
                           suffix='[m={}]'.format(m)))
    return out


@check('kernel_psi_support_and_bound', '|Psi| <= 1 and Psi(x) = 0 for |x| > sqrt(m)')
def _kernel_psi_support_and_bound(ctx):
    kernel = ctx.kernel(ctx.m)
    peak = float(np.max(np.abs(kernel.table)))
    root = math.sqrt(ctx.m)
    outside = kernel.psi_radial(np.array([root * (1.0 + 1e-9), 1.5 * root, 2.0 * root]))
    return _result(_kernel_psi_support_and_bound, peak, 1.0 + 1e-6,
                   peak <= 1.0 + 1e-6 and not np.any(outside))


@check('kernel_bessel_zero_ratio', '2 j_nu / sqrt(m) < sqrt(m) - 2^(1/3) a m^(-1/6), m = 1..50')
def _kernel_bessel_zero_ratio(ctx):
    worst = min(bessel_zero_ratio_margin(m) for m in range(1, 51))
    return _result(_kernel_bessel_zero_ratio, -worst, 0.0, worst > 0.0)


@check('kernel_psi_pdf_mass', 'psi is a pdf: mass 1 +- 1e-4 on [-200, 200], psi >= -1e-9')
def _kernel_psi_pdf_mass(ctx):
    kernel = ctx.kernel(1)
    _, pdf, _ = kernel.psi_1d_table()
    mass = _result(_kernel_psi_pdf_mass, abs(psi_mass_1d(kernel) - 1.0), 1e-4,
                   suffix='[mass]')
    floor = _result(_kernel_psi_pdf_mass, -float(pdf.min()), 1e-9, suffix='[nonnegative]')
    return [mass, floor]


@check('kernel_psi_second_moment', 'int x^2 psi = 4 j_nu^2 / m = pi^2 within 1%, m = 1')
def _kernel_psi_second_moment(ctx):
    kernel = ctx.kernel(1)
    exact = 4.0 * kernel.j_nu ** 2
    rel = abs(second_moment_1d(kernel) - exact) / exact
    return _result(_kernel_psi_second_moment, rel, 0.01)


@check('kernel_smoothing_constant',
       'E|Z| + E|X| <= (2 - 2^(1/3) a m^(-2/3)) sqrt(m), m = 1, 2, 3')
def _kernel_smoothing_constant(ctx):
    worst = max(smoothing_moment_sum(m) / smoothing_constant(m) for m in (1, 2, 3))
    return _result(_kernel_smoothing_constant, worst, 1.0)


# extension
@check('extension_agrees_on_domain', 'f~ = f on the samples')
def _extension_agrees_on_domain(ctx):
    samples = ctx.samples
    err = np.max(np.abs(ctx.ext(samples.domain.points) - samples.values))
    return _result(_extension_agrees_on_domain, err, 1e-12)


@check('extension_lipschitz', '|f~(x) - f~(y)| <= l |x - y| on random pairs')
def _extension_lipschitz(ctx):
    gap = lipschitz_violation(ctx.ext, seed=ctx.seed)
    return _result(_extension_lipschitz, gap, 1e-9)


@check('extension_gradient', 'finite-difference slopes of f~ stay below l (1 + 1e-3)')
def _extension_gradient(ctx):
    slope = gradient_sup_check(ctx.ext, seed=ctx.seed)
    return _result(_extension_gradient, slope, ctx.ext.ell * (1.0 + 1e-3))


@check('extension_l1_bound', '||f~||_1 <= M |K~|')
def _extension_l1_bound(ctx):
    volume, stderr = ctx.volume()
    return _result(_extension_l1_bound, ctx.transform.l1,
                   ctx.ext.M * (volume + 3.0 * stderr))


# Fourier transform
def _random_frequencies(ctx, count=100):
    rng = np.random.default_rng(ctx.seed)
    direction = rng.standard_normal((count, ctx.m))
    direction /= np.linalg.norm(direction, axis=1, keepdims=True)
    scale = max(ctx.lambdas) * math.sqrt(ctx.m) * rng.random((count, 1))
    return direction * scale


@check('fourier_sup_bound', '|F(v)| <= ||f~||_1')
def _fourier_sup_bound(ctx):
    if ctx.m > 3:
        return _skipped(_fourier_sup_bound, 'tensor quadrature needs m <= 3')
    F = np.abs(ctx.transform(_random_frequencies(ctx)))
    return _result(_fourier_sup_bound, float(F.max()), ctx.transform.l1 * (1.0 + 1e-9))


@check('fourier_gradient_bound', '|v| |F(v)| <= l |K~|')
def _fourier_gradient_bound(ctx):
    if ctx.m > 3:
        return _skipped(_fourier_gradient_bound, 'tensor quadrature needs m <= 3')
    v = _random_frequencies(ctx)
    observed = float(np.max(np.linalg.norm(v, axis=1) * np.abs(ctx.transform(v))))
    volume, stderr = ctx.volume()
    return _result(_fourier_gradient_bound, observed, ctx.ext.ell * (volume + 3.0 * stderr))


# approximation chain
@check('dual_representation',
       '|g_spectral - g_convolution| <= 3 stderr + 1e-3 on 11 points, m = 1')
def _dual_representation(ctx):
    if ctx.m != 1:
        return _skipped(_dual_representation, 'the convolution form needs m = 1')
    grid = ctx.eval_grid()
    out = []
    for lam in sorted({min(ctx.lambdas), max(ctx.lambdas)}):
        surrogate = ctx.surrogate(lam, ctx.thetas[-1])
        spectral = g_spectral(surrogate, grid, method='quadrature')
        conv = g_convolution(surrogate, grid, ctx.mc_samples, ctx.seed, ctx.workers)
        excess = np.abs(spectral.value - conv.value) - 3.0 * conv.stderr - spectral.stderr
        out.append(_result(_dual_representation, float(excess.max()), 1e-3,
                           suffix='[lambda={:g}]'.format(lam)))
    return out


@check('smoothing_envelope', 'max_K |f~ - g| <= (l/lambda)(2 - 2^(1/3) a m^(-2/3)) sqrt(m)')
def _smoothing_envelope(ctx):
    if ctx.m > 2:
        return _skipped(_smoothing_envelope, 'quadrature sweep runs for m <= 2')
    grid = ctx.dense_grid()
    reference = ctx.ext(grid)
    out = []
    for lam in ctx.lambdas:
        g = g_spectral(ctx.surrogate(lam, ctx.thetas[-1]), grid, method='quadrature')
        err = float(np.max(np.abs(reference - g.value) + g.stderr))
        out.append(_result(_smoothing_envelope, err,
                           bounds.smoothing_bound(ctx.ext.ell, lam, ctx.m),
                           suffix='[lambda={:g}]'.format(lam)))
    return out


@check('truncation_envelope',
       'max_K |g - h| <= (2 l R / sqrt(pi m)) V_m (R theta lambda / sqrt(2 pi / e))^m')
def _truncation_envelope(ctx):
    if ctx.m > 2:
        return _skipped(_truncation_envelope, 'quadrature sweep runs for m <= 2')
    grid = ctx.dense_grid()
    R = ctx.samples.R
    out = []
    for lam in ctx.lambdas:
        for theta in ctx.thetas:
            gap = truncation_gap(ctx.surrogate(lam, theta), grid, method='quadrature')
            err = float(np.max(np.abs(gap.value) + gap.stderr))
            bound = bounds.truncation_bound(ctx.ext.ell, R, theta, lam, ctx.m)
            out.append(_result(_truncation_envelope, err, bound,
                               suffix='[lambda={:g},theta={:g}]'.format(lam, theta)))
    return out


# network
def _density_moments(density, grid, samples, seed, workers, correction=None):
    """Mean and standard error of the (corrected) outer-weight term at each grid point."""
    sizes = chunk_sizes(samples)
    rngs = chunk_generators(seed, len(sizes))
    m, sigma = density.m, density.sigma
    limit = sigma * density.R * math.sqrt(m)

    def _chunk(job):
        size, rng = job
        w = sigma * rng.standard_normal((size, m))
        b = rng.uniform(-limit, limit, size)
        weight = density(w, b)
        if correction is not None:
            c, _ = correction
            inside = np.linalg.norm(w, axis=1) <= sigma * math.sqrt(m)
            weight = weight + (w @ c) * inside
        act = np.maximum(grid @ w.T + b, 0.0) * weight
        return np.stack([act.sum(axis=1), (act * act).sum(axis=1)])

    total = sum(parallel_map(_chunk, zip(sizes, rngs), workers))
    mean = total[0] / samples
    var = np.maximum(total[1] / samples - mean * mean, 0.0) * samples / (samples - 1.0)
    if correction is not None:
        mean = mean + correction[1]
    return mean, np.sqrt(var / samples)


def _unbiasedness(ctx, func, corrected):
    if ctx.m > 2:
        return _skipped(func, 'quadrature of h runs for m <= 2')
    lam = min(ctx.lambdas)
    density = WeightDensity(ctx.surrogate(lam, ctx.thetas[-1]), ctx.sigma)
    grid = ctx.eval_grid()
    h = h_truncated(density.surrogate, grid, method='quadrature')
    q0, q1 = boundary_correction(density)
    if corrected:
        mass = regularized_lower_gamma(0.5 * ctx.m + 1.0, 0.5 * ctx.m)
        c = 2.0 * q1 / (ctx.sigma ** 2 * mass)
        mean, err = _density_moments(density, grid, ctx.density_samples, ctx.seed,
                                     ctx.workers, correction=(c, q0))
        expected = h.value
    else:
        mean, err = _density_moments(density, grid, ctx.density_samples, ctx.seed,
                                     ctx.workers)
        expected = h.value - q0 - grid @ q1
    combined = np.sqrt(err ** 2 + h.stderr ** 2)
    score = float(np.max(np.abs(mean - expected) / np.maximum(combined, 1e-300)))
    return _result(func, score, 3.0)


@check('unbiased_raw_density',
       'E G(w,b) relu(<w,x> + b) = h(x) - q0 - <q1, x> within 3 stderr on 11 points')
def _unbiased_raw_density(ctx):
    return _unbiasedness(ctx, _unbiased_raw_density, corrected=False)


@check('unbiased_corrected_density',
       'corrected outer weights average to h(x) within 3 stderr on 11 points')
def _unbiased_corrected_density(ctx):
    return _unbiasedness(ctx, _unbiased_corrected_density, corrected=True)


@check('density_boundedness', '|G(w,b) relu(<w,x> + b)| <= B on K')
def _density_boundedness(ctx):
    lam = max(ctx.lambdas)
    density = WeightDensity(ctx.surrogate(lam, ctx.thetas[-1]), ctx.sigma)
    grid = ctx.eval_grid()
    rng = np.random.default_rng(ctx.seed)
    limit = ctx.sigma * density.R * math.sqrt(ctx.m)
    draws = min(ctx.density_samples, 10 ** 5)
    w = ctx.sigma * rng.standard_normal((draws, ctx.m))
    b = rng.uniform(-limit, limit, draws)
    G = density(w, b)
    peak = float(np.max(np.abs(np.maximum(grid @ w.T + b, 0.0) * G)))
    volume, stderr = ctx.volume()
    return _result(_density_boundedness, peak, density.bound(max(volume - 3.0 * stderr,
                                                                 1e-300)))


@check('concentration',
       'P(sup_K |N_n - E N_n| > t) <= Hoeffding envelope + 3 binomial sigma (raw weights); '
       'Var N_n halves when n doubles (ratio 2 +- 0.2)')
def _concentration(ctx):
    if ctx.m != 1:
        return _skipped(_concentration, 'network sweep runs for m = 1')
    lam = min(ctx.lambdas)
    density = WeightDensity(ctx.surrogate(lam, ctx.thetas[-1]), ctx.sigma)
    grid = ctx.eval_grid()
    center = density.center
    # B bounds the raw summands G relu, whose mean on K is h - q0 - <q1, x>
    q0, q1 = boundary_correction(density)
    h = h_truncated(density.surrogate, grid, method='quadrature').value
    expected = h - q0 - grid @ q1 + density.zeta
    volume, _ = ctx.volume()

    envelope_target = 0.25
    t = density.bound(volume) * math.sqrt(2.0 * math.log(2.0 / envelope_target) / ctx.width)
    envelope = hoeffding_envelope(density, ctx.width, t, volume)

    def _deviation(seed):
        layer = sample_hidden(ctx.width, ctx.m, ctx.sigma, density.R, seed, center)
        net = build_constructive(layer, density, corrected=False)
        return float(np.max(np.abs(net(grid + center) - expected)))

    seeds = [ctx.seed + k for k in range(ctx.seeds)]
    deviations = np.array(parallel_map(_deviation, seeds, ctx.workers))
    freq = float(np.mean(deviations > t))
    slack = 3.0 * math.sqrt(envelope * (1.0 - envelope) / len(seeds))
    tail = _result(_concentration, freq, envelope + slack, suffix='[tail]')

    width = 16
    origin = np.zeros((1, ctx.m))

    def _terms(seed):
        layer = sample_hidden(2 * width, ctx.m, ctx.sigma, density.R, seed)
        act = np.maximum(origin @ layer.weights.T + layer.biases, 0.0)[0]
        return density(layer.weights, layer.biases) * act

    var_seeds = [ctx.seed + 10 ** 6 + k for k in range(ctx.variance_seeds)]
    terms = np.array(parallel_map(_terms, var_seeds, ctx.workers))
    small = terms[:, :width].mean(axis=1)
    large = terms.mean(axis=1)
    ratio = float(np.var(small, ddof=1) / np.var(large, ddof=1))
    halving = _result(_concentration, abs(ratio - 2.0), 0.2, suffix='[variance]')
    return [tail, halving]


# bounds
@check('main_theorem_budget',
       'schedule gives smoothing error alpha eps, truncation error beta eps and a '
       'Hoeffding tail <= eta at n = n_main')
def _main_theorem_budget(ctx):
    rng = np.random.default_rng(ctx.seed)
    worst_budget = 0.0
    worst_tail = -math.inf
    for _ in range(20):
        m = int(rng.integers(1, 11))
        eps = float(rng.uniform(0.05, 0.5))
        ell = float(rng.uniform(0.5, 2.0))
        R = float(rng.uniform(0.5, 2.0))
        eta = float(rng.uniform(0.01, 0.5))
        dK = float(rng.uniform(1.0, m))
        sched = bounds.schedule(m, eps, ell, R)
        smooth = bounds.smoothing_bound(ell, sched.lam, m) / (float(sched.alpha) * eps)
        trunc = math.exp(bounds.log_truncation_bound(ell, R, sched.theta, sched.lam, m)
                         - math.log(float(sched.beta) * eps))
        worst_budget = max(worst_budget, abs(smooth - 1.0), abs(trunc - 1.0))
        tail = bounds.end_to_end_log_tail(sched, eta, dK) - math.log(eta)
        worst_tail = max(worst_tail, tail)
    return [_result(_main_theorem_budget, worst_budget, 1e-10, suffix='[budget]'),
            _result(_main_theorem_budget, worst_tail, 1e-6, suffix='[tail]')]


def run_checks(ctx, select=None):
    """
    Runs the registered checks.

    Parameters
    ----------
    ctx : ValidationContext

    select : iterable of str, optional
        Check ids to run; all of them by default.

    Returns
    -------
    list of CheckResult
    """
    names = available_checks() if select is None else list(select)
    unknown = [name for name in names if name not in _CHECKS]
    if unknown:
        raise RvflError('unknown check(s): {}'.format(', '.join(unknown)))

    results = []
    for name in names:
        func = _CHECKS[name]
        log.info('running %s', name)
        try:
            out = func(ctx)
        except Exception as err:
            log.info('%s raised %s: %s', name, type(err).__name__, err)
            claim = '{} [error: {}: {}]'.format(func.claim, type(err).__name__, err)
            out = CheckResult(name, claim, None, None, None, False, False)
        results.extend(out if isinstance(out, list) else [out])
    return results


