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
Special functions and constants used by the rest of the package.

Bessel functions of the first kind J_nu for nu >= -1/2, their first positive
zero, the regularized lower incomplete gamma function, chi distribution
helpers and the unit-ball volume. Everything Gamma-heavy is evaluated in the
log domain so that the bound calculators survive m = 200.

J_nu uses its power series for t <= 12. Above that it uses Miller's
backward recurrence normalized with the Neumann-type sum

    (t/2)^nu = sum_k (nu + 2k) Gamma(nu + k) / k! * J_{nu+2k}(t),

which is stable for every order the kernels need.

All functions are pure and safe to call from any thread.
"""

import functools
import math

import numpy as np
from scipy.optimize import brentq
from scipy.special import gammaln

from .errors import SpecfunError

__author__ = "The rvfl-tools authors"

# First negative zero of the Airy function Ai.
AIRY_A = -2.338107410459767

SERIES_LIMIT = 12.0
ZERO_TOLERANCE = 1e-12

_SERIES_TERMS = 60


def log_gamma(x):
    """ln|Gamma(x)|, vectorized."""
    out = gammaln(x)
    return float(out) if np.ndim(out) == 0 else out


def log_unit_ball_volume(m):
    """ln V_m, with V_m the volume of the unit ball of R^m."""
    if int(m) != m or m < 1:
        raise SpecfunError('dimension must be a positive integer: {}'.format(m))
    return 0.5 * m * math.log(math.pi) - log_gamma(0.5 * m + 1.0)


def unit_ball_volume(m):
    """
    Volume of the unit ball of R^m.

    Parameters
    ----------
    m : int
        Ambient dimension, m >= 1.

    Returns
    -------
    float
        pi^(m/2) / Gamma(m/2 + 1).
    """
    return math.exp(log_unit_ball_volume(m))


def log_sphere_area(m):
    """ln of the surface area of the unit sphere S^(m-1), i.e. ln(m V_m)."""
    return math.log(m) + log_unit_ball_volume(m)


def _check_order(nu):
    if not np.isfinite(nu) or nu < -0.5:
        raise SpecfunError('Bessel order must be >= -1/2: {}'.format(nu))


def _bessel_series(nu, t):
    """Power series of J_nu, accurate for 0 < t <= 12."""
    half = 0.5 * t
    term = np.exp(nu * np.log(half) - log_gamma(nu + 1.0))
    total = term.copy()
    minus_half_sq = -half * half
    for k in range(1, _SERIES_TERMS):
        term = term * minus_half_sq / (k * (k + nu))
        total += term
    return total


def _bessel_miller(nu, t):
    """Miller backward recurrence for J_nu, used for t > 12."""
    tmax = float(np.max(t))
    top = int(tmax + 10.0 * tmax ** (1.0 / 3.0) + 40.0)
    top += top % 2

    y_next = np.zeros_like(t)
    y = np.full_like(t, 1e-30)
    norm = np.zeros_like(t)
    for k in range(top, 0, -1):
        if k % 2 == 0:
            j = k // 2
            log_c = (math.log(nu + 2 * j) + log_gamma(nu + j)
                     - log_gamma(j + 1.0))
            norm += math.exp(log_c) * y
        y_prev = (2.0 * (nu + k) / t) * y - y_next
        y_next, y = y, y_prev

        big = np.abs(y) > 1e250
        if np.any(big):
            y[big] *= 1e-250
            y_next[big] *= 1e-250
            norm[big] *= 1e-250

    norm += math.exp(log_gamma(nu + 1.0)) * y
    return np.exp(nu * np.log(0.5 * t)) * y / norm


def bessel_j(nu, t):
    """
    Bessel function of the first kind J_nu(t).

    Parameters
    ----------
    nu : float
        Order, nu >= -1/2.

    t : float or array_like
        Non-negative argument(s).

    Returns
    -------
    float or numpy.ndarray
        J_nu(t); `inf` at t = 0 when nu < 0.
    """
    _check_order(nu)
    arr = np.asarray(t, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0):
        raise SpecfunError('Bessel argument must be finite and >= 0')

    flat = np.atleast_1d(arr).ravel()
    out = np.empty_like(flat)

    zero = flat == 0.0
    if nu == 0.0:
        out[zero] = 1.0
    elif nu > 0.0:
        out[zero] = 0.0
    else:
        out[zero] = np.inf

    low = (~zero) & (flat <= SERIES_LIMIT)
    if np.any(low):
        out[low] = _bessel_series(nu, flat[low])

    high = flat > SERIES_LIMIT
    if np.any(high):
        out[high] = _bessel_miller(nu, flat[high])

    if arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)


@functools.lru_cache(maxsize=None)
def _first_zero(nu):
    func = functools.partial(bessel_j, nu)
    lo = max(nu, 0.0) + 0.5
    hi = lo + 0.5
    # zeros of J_nu are more than pi apart, so the first sign change is j_nu
    while func(hi) > 0.0:
        lo, hi = hi, hi + 0.5
    if func(hi) == 0.0:
        return hi
    return brentq(func, lo, hi, xtol=ZERO_TOLERANCE, rtol=4 * np.finfo(float).eps,
                  maxiter=200)


def first_bessel_zero(nu):
    """
    First positive zero j_nu of J_nu.

    Parameters
    ----------
    nu : float
        Order, nu >= -1/2.

    Returns
    -------
    float
        The zero, bracketed and refined to a 1e-12 bracket width.
    """
    _check_order(nu)
    return _first_zero(float(nu))


def bessel_zero_upper_bound(nu):
    """Upper bound nu - a(nu/2)^(1/3) + (3/20)a^2(nu/2)^(-1/3), nu > 0."""
    if nu <= 0:
        raise SpecfunError('bound requires nu > 0: {}'.format(nu))
    a = AIRY_A
    return (nu - a * (nu / 2.0) ** (1.0 / 3.0)
            + 0.15 * a * a * (nu / 2.0) ** (-1.0 / 3.0))


def _gamma_series(a, x):
    total = term = 1.0 / a
    ap = a
    for _ in range(10000):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * 1e-17:
            break
    return total * math.exp(-x + a * math.log(x) - log_gamma(a))


def _gamma_continued_fraction(a, x):
    # modified Lentz evaluation of Q(a, x)
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 10000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-17:
            break
    return math.exp(-x + a * math.log(x) - log_gamma(a)) * h


def regularized_lower_gamma(a, x):
    """
    Regularized lower incomplete gamma function P(a, x).

    Parameters
    ----------
    a : float
        Shape, a > 0.

    x : float
        Upper integration limit, x >= 0.

    Returns
    -------
    float
        P(a, x) in [0, 1].
    """
    if not (a > 0) or not math.isfinite(a):
        raise SpecfunError('P(a, x) requires a > 0: {}'.format(a))
    if not (x >= 0) or math.isnan(x):
        raise SpecfunError('P(a, x) requires x >= 0: {}'.format(x))
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return 1.0
    if x < a + 1.0:
        value = _gamma_series(a, x)
    else:
        value = 1.0 - _gamma_continued_fraction(a, x)
    return min(max(value, 0.0), 1.0)


def incomplete_gamma_upper_bound(a, x):
    """x^a / (a Gamma(a)), an upper bound of P(a, x)."""
    return math.exp(a * math.log(x) - math.log(a) - log_gamma(a))


def chi_cdf(m, r):
    """CDF of the chi distribution with m degrees of freedom."""
    if int(m) != m or m < 1:
        raise SpecfunError('degrees of freedom must be >= 1: {}'.format(m))
    if not (r >= 0):
        raise SpecfunError('chi CDF requires r >= 0: {}'.format(r))
    return regularized_lower_gamma(0.5 * m, 0.5 * r * r)


def chi_mean(m):
    """Mean of the chi distribution, sqrt(2) Gamma((m+1)/2) / Gamma(m/2)."""
    if int(m) != m or m < 1:
        raise SpecfunError('degrees of freedom must be >= 1: {}'.format(m))
    return math.sqrt(2.0) * math.exp(log_gamma(0.5 * (m + 1)) - log_gamma(0.5 * m))
