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
Width bounds and the parameter schedule behind them.

The accuracy budget epsilon is split as alpha + beta + gamma = 1 between
smoothing, truncation and sampling. The schedule fixes lambda so the
smoothing error is alpha epsilon and theta so the truncation error is
beta epsilon; the width n then makes the Hoeffding tail of the sampling
error at t = gamma epsilon at most eta.

All widths are astronomically large, so every product is a `math.fsum` of
logarithms and widths are reported as log10 n.
"""

import math
from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction

from .errors import RvflError
from .kernel import smoothing_constant
from .specfun import AIRY_A, log_unit_ball_volume

__author__ = "The rvfl-tools authors"

LN10 = math.log(10.0)
INT_LIMIT_LOG10 = 63 * math.log10(2.0)
CBRT2 = 2.0 ** (1.0 / 3.0)

WidthBound = namedtuple('WidthBound', ['log10', 'n'])
WidthBound.__doc__ = """log10 of a width bound, and the integer width when below 2^63."""


def _positive(**kwargs):
    for name, value in kwargs.items():
        if not (value > 0) or not math.isfinite(value):
            raise RvflError('{} must be positive and finite: {}'.format(name, value))


def _check_dimension(m):
    if int(m) != m or m < 1:
        raise RvflError('dimension must be a positive integer: {}'.format(m))


def _check_eta_dk(eta, dK, m):
    if not (0 < eta < 1):
        raise RvflError('eta must lie in (0, 1): {}'.format(eta))
    if not (1 <= dK <= m):
        raise RvflError('d(K) must lie in [1, {}]: {}'.format(m, dK))


def budget_split(m):
    """(alpha, beta, gamma) as exact fractions summing to one."""
    _check_dimension(m)
    denom = m * m + 3 * m + 1
    return (Fraction(m * (m + 2), denom), Fraction(1, denom), Fraction(m, denom))


@dataclass(frozen=True)
class ParameterSchedule(object):
    """Schedule for one (m, epsilon, ell, R, sigma) tuple; see `schedule`."""

    m: int
    epsilon: float
    ell: float
    R: float
    sigma: float
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    Lambda: float
    lam: float
    log_inv_theta: float

    @property
    def theta(self):
        return math.exp(-self.log_inv_theta)

    @property
    def inv_theta(self):
        return math.exp(self.log_inv_theta)


def schedule(m, epsilon, ell=1.0, R=1.0, sigma=1.0):
    """
    Parameter schedule of the width theorem.

    Parameters
    ----------
    m : int
        Ambient dimension.

    epsilon : float
        Target sup-norm accuracy, > 0.

    ell : float
        Lipschitz constant, > 0.

    R : float
        Circumradius of K, > 0.

    sigma : float
        Hidden-weight scale, > 0. Only Lambda depends on it.

    Returns
    -------
    ParameterSchedule
        lambda = (l / (alpha epsilon)) (2 - 2^(1/3) a m^(-2/3)) sqrt(m),
        Lambda = lambda / sigma and
        1/theta = (2 l R V_m / (beta epsilon sqrt(pi m)))^(1/m) R lambda / sqrt(2 pi / e).
    """
    _check_dimension(m)
    _positive(epsilon=epsilon, ell=ell, R=R, sigma=sigma)
    alpha, beta, gamma = budget_split(m)
    lam = ell / (float(alpha) * epsilon) * smoothing_constant(m)

    log_inner = math.fsum([
        math.log(2.0 * ell * R), log_unit_ball_volume(m),
        -math.log(float(beta) * epsilon), -0.5 * math.log(math.pi * m)])
    log_inv_theta = math.fsum([
        log_inner / m, math.log(R), math.log(lam),
        -0.5 * (math.log(2.0 * math.pi) - 1.0)])
    return ParameterSchedule(m=int(m), epsilon=float(epsilon), ell=float(ell), R=float(R),
                             sigma=float(sigma), alpha=alpha, beta=beta, gamma=gamma,
                             Lambda=lam / sigma, lam=lam, log_inv_theta=log_inv_theta)


def _width(log_n):
    log10 = log_n / LN10
    n = int(math.ceil(math.exp(log_n))) if log10 < INT_LIMIT_LOG10 else None
    return WidthBound(log10, n)


def log_n_main(sched, eta, dK):
    """Natural log of the width bound of the main theorem."""
    _check_eta_dk(eta, dK, sched.m)
    m = sched.m
    terms = [
        -math.log(8.0 * math.pi * math.e),
        math.log(math.log(2.0 / eta)),
        2.0 * math.log1p(sched.theta),
        2.0 * (m + 2) * math.log1p((m + 1.0) / (m * (m + 2.0))),
        4.0 * math.log(2.0 - CBRT2 * AIRY_A * m ** (-2.0 / 3.0)),
        (2.0 + 2.0 / m) * math.log(m * m + 3.0 * m + 1.0),
        2.0 * dK * math.log(2.0),
        -CBRT2 * AIRY_A * m ** (1.0 / 3.0),
        -math.log(m),
        (2.0 * m + 6.0 + 2.0 / m) * math.log(
            2.0 * sched.ell * sched.R * math.sqrt(math.e) / sched.epsilon),
    ]
    return math.fsum(terms)


def n_main(sched, eta, dK):
    """
    Width of the main theorem.

    Parameters
    ----------
    sched : ParameterSchedule

    eta : float
        Failure probability, in (0, 1).

    dK : float
        Effective dimension of K, in [1, m].

    Returns
    -------
    WidthBound
    """
    return _width(log_n_main(sched, eta, dK))


def log_n_approx(m, epsilon, eta, ell, R, dK):
    """Natural log of the large-m, small-epsilon width approximation."""
    _check_dimension(m)
    _positive(epsilon=epsilon, ell=ell, R=R)
    _check_eta_dk(eta, dK, m)
    terms = [
        math.log(2.0 * math.e / math.pi),
        math.log(math.log(2.0 / eta)),
        (2.0 * m + 6.0) * math.log(2.0 * ell * R * math.sqrt(math.e) / epsilon),
        2.0 * dK * math.log(2.0),
        -CBRT2 * AIRY_A * m ** (1.0 / 3.0),
        3.0 * math.log(m),
    ]
    return math.fsum(terms)


def n_approx(m, epsilon, eta, ell, R, dK):
    """Approximate width (2e/pi) ln(2/eta) (2 l R sqrt(e)/epsilon)^(2m+6) ..."""
    return _width(log_n_approx(m, epsilon, eta, ell, R, dK))


def smoothing_bound(ell, lam, m):
    """Smoothing error bound (l / lambda)(2 - 2^(1/3) a m^(-2/3)) sqrt(m)."""
    return ell / lam * smoothing_constant(m)


def log_truncation_bound(ell, R, theta, lam, m):
    return math.fsum([
        math.log(2.0 * ell * R), -0.5 * math.log(math.pi * m), log_unit_ball_volume(m),
        m * (math.log(R * theta * lam) - 0.5 * (math.log(2.0 * math.pi) - 1.0))])


def truncation_bound(ell, R, theta, lam, m):
    """Truncation error bound (2 l R / sqrt(pi m)) V_m (R theta lambda / sqrt(2 pi/e))^m."""
    if theta == 0:
        return 0.0
    return math.exp(log_truncation_bound(ell, R, theta, lam, m))


def hoeffding_log_tail(n, t, log_bound):
    """
    ln of 2 exp(-(n/2)(t/B)^2) with B = exp(log_bound).

    `n` may be an int, a float, or a `WidthBound`.
    """
    if isinstance(n, WidthBound):
        log_n = n.log10 * LN10
    elif n < 0:
        raise RvflError('width must be >= 0: {}'.format(n))
    elif n == 0:
        return math.log(2.0)
    else:
        log_n = math.log(n)
    if log_bound == -math.inf:
        return -math.inf
    exponent = math.fsum([log_n, -math.log(2.0), 2.0 * math.log(t), -2.0 * log_bound])
    return math.log(2.0) - math.exp(min(exponent, 700.0))


def log_inflation_volume_bound(m, R, dK):
    """ln(V_m R^m 2^d(K)), the volume bound of K + (M/l)B."""
    return log_unit_ball_volume(m) + m * math.log(R) + dK * math.log(2.0)


def log_density_bound(sched, log_volume):
    """ln of 2 R^2 sqrt(m) (2 pi)^(-m/2) lambda^(m+1) (1 + 1/theta) l |K~|."""
    m = sched.m
    return math.fsum([
        math.log(2.0), 2.0 * math.log(sched.R), 0.5 * math.log(m),
        -0.5 * m * math.log(2.0 * math.pi), (m + 1) * math.log(sched.lam),
        math.log1p(sched.inv_theta), math.log(sched.ell), log_volume])


def end_to_end_log_tail(sched, eta, dK):
    """
    Hoeffding tail at t = gamma epsilon and n = n_main.

    |K~| is replaced by its volume bound V_m R^m 2^d(K). The theorem holds
    when the returned log tail is at most ln(eta).
    """
    width = n_main(sched, eta, dK)
    log_bound = log_density_bound(sched, log_inflation_volume_bound(sched.m, sched.R, dK))
    return hoeffding_log_tail(width, float(sched.gamma) * sched.epsilon, log_bound)


def theta_regime_report(sched):
    """
    Large-m diagnostics of the schedule.

    Returns
    -------
    dict
        inv_theta, its approximation 2 l R e / epsilon, their ratio, the
        Stirling ratio V_m^(1/m) / sqrt(2 pi e / m), and whether the
        large-m regime applies (m >= 10).
    """
    approx = 2.0 * sched.ell * sched.R * math.e / sched.epsilon
    stirling = math.exp(log_unit_ball_volume(sched.m) / sched.m
                        - 0.5 * math.log(2.0 * math.pi * math.e / sched.m))
    return {
        'm': sched.m,
        'inv_theta': sched.inv_theta,
        'inv_theta_approx': approx,
        'ratio': sched.inv_theta / approx,
        'stirling_ratio': stirling,
        'large_m': sched.m >= 10,
    }
