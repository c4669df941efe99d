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
Unit Tests for `rvfltools.specfun`.
"""

import math
import os
import sys
import unittest

import mpmath
import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from rvfltools import specfun
from rvfltools.errors import SpecfunError


class TestBessel(unittest.TestCase):
    """J_nu against scipy and its first zeros against mpmath."""

    def test_half_integer_zeros(self):
        self.assertAlmostEqual(specfun.first_bessel_zero(-0.5), math.pi / 2, delta=1e-10)
        self.assertAlmostEqual(specfun.first_bessel_zero(0.5), math.pi, delta=1e-10)

    def test_zero_order_zero(self):
        self.assertAlmostEqual(specfun.first_bessel_zero(0.0), 2.404825557695773,
                               delta=1e-10)

    def test_zeros_match_mpmath(self):
        for m in (1, 2, 3, 4, 7, 12, 30):
            nu = 0.5 * m - 1.0
            expected = float(mpmath.besseljzero(mpmath.mpf(nu), 1))
            self.assertAlmostEqual(specfun.first_bessel_zero(nu), expected, delta=1e-9)

    def test_values_match_scipy(self):
        t = np.concatenate([np.linspace(0.01, 12.0, 50), np.linspace(12.5, 80.0, 40)])
        for nu in (-0.5, 0.0, 0.5, 1.0, 2.5, 14.0):
            np.testing.assert_allclose(specfun.bessel_j(nu, t), special.jv(nu, t),
                                       rtol=1e-8, atol=1e-10)

    def test_value_at_zero(self):
        self.assertEqual(specfun.bessel_j(0.0, 0.0), 1.0)
        self.assertEqual(specfun.bessel_j(1.5, 0.0), 0.0)
        self.assertTrue(math.isinf(specfun.bessel_j(-0.5, 0.0)))

    def test_scalar_and_array(self):
        self.assertIsInstance(specfun.bessel_j(0.5, 1.0), float)
        self.assertEqual(specfun.bessel_j(0.5, np.ones((2, 3))).shape, (2, 3))

    def test_invalid_arguments(self):
        with self.assertRaises(SpecfunError):
            specfun.bessel_j(-1.0, 1.0)
        with self.assertRaises(SpecfunError):
            specfun.bessel_j(0.0, -1.0)
        with self.assertRaises(SpecfunError):
            specfun.bessel_j(0.0, float('nan'))
        with self.assertRaises(SpecfunError):
            specfun.first_bessel_zero(-0.75)

    def test_zero_upper_bound(self):
        for m in range(3, 31):
            nu = 0.5 * m - 1.0
            self.assertLess(specfun.first_bessel_zero(nu),
                            specfun.bessel_zero_upper_bound(nu))

    def test_zero_upper_bound_needs_positive_order(self):
        with self.assertRaises(SpecfunError):
            specfun.bessel_zero_upper_bound(0.0)


class TestGamma(unittest.TestCase):

    def test_incomplete_gamma_matches_scipy(self):
        for a in (0.5, 1.0, 2.5, 10.0, 50.0):
            for x in (1e-3, 0.5, 3.0, 12.0, 80.0):
                self.assertAlmostEqual(specfun.regularized_lower_gamma(a, x),
                                       special.gammainc(a, x), delta=1e-12)

    def test_incomplete_gamma_limits(self):
        self.assertEqual(specfun.regularized_lower_gamma(2.0, 0.0), 0.0)
        self.assertEqual(specfun.regularized_lower_gamma(2.0, float('inf')), 1.0)

    def test_incomplete_gamma_domain(self):
        with self.assertRaises(SpecfunError):
            specfun.regularized_lower_gamma(0.0, 1.0)
        with self.assertRaises(SpecfunError):
            specfun.regularized_lower_gamma(1.0, -1.0)
        with self.assertRaises(SpecfunError):
            specfun.regularized_lower_gamma(1.0, float('nan'))

    @settings(max_examples=200, deadline=None)
    @given(st.floats(min_value=0.5, max_value=40.0),
           st.floats(min_value=1e-4, max_value=10.0))
    def test_power_bound(self, a, x):
        bound = specfun.incomplete_gamma_upper_bound(a, x)
        self.assertLessEqual(specfun.regularized_lower_gamma(a, x), bound * (1 + 1e-12))

    def test_log_gamma_vectorized(self):
        np.testing.assert_allclose(specfun.log_gamma(np.array([0.5, 3.0, 100.0])),
                                   special.gammaln([0.5, 3.0, 100.0]))


class TestBallAndChi(unittest.TestCase):

    def test_unit_ball_volume(self):
        self.assertAlmostEqual(specfun.unit_ball_volume(1), 2.0, places=14)
        self.assertAlmostEqual(specfun.unit_ball_volume(2), math.pi, places=14)
        self.assertAlmostEqual(specfun.unit_ball_volume(3), 4.0 * math.pi / 3.0, places=14)

    def test_unit_ball_volume_large_m(self):
        expected = float(mpmath.log(mpmath.pi ** 100 / mpmath.gamma(101)))
        self.assertAlmostEqual(specfun.log_unit_ball_volume(200), expected, places=9)

    def test_stirling_ratio(self):
        m = 200
        ratio = math.exp(specfun.log_unit_ball_volume(m) / m
                         - 0.5 * math.log(2.0 * math.pi * math.e / m))
        self.assertAlmostEqual(ratio, 0.98402, delta=1e-4)

    def test_sphere_area(self):
        self.assertAlmostEqual(math.exp(specfun.log_sphere_area(2)), 2.0 * math.pi,
                               places=12)
        self.assertAlmostEqual(math.exp(specfun.log_sphere_area(3)), 4.0 * math.pi,
                               places=12)

    def test_invalid_dimension(self):
        for m in (0, -1, 1.5):
            with self.assertRaises(SpecfunError):
                specfun.log_unit_ball_volume(m)
            with self.assertRaises(SpecfunError):
                specfun.chi_mean(m)

    def test_chi_mean(self):
        self.assertAlmostEqual(specfun.chi_mean(1), math.sqrt(2.0 / math.pi), places=14)
        self.assertAlmostEqual(specfun.chi_mean(2), math.sqrt(math.pi / 2.0), places=14)
        for m in range(1, 51):
            self.assertLessEqual(specfun.chi_mean(m), math.sqrt(m))

    def test_chi_cdf(self):
        # chi with 1 degree of freedom is |Z|
        self.assertAlmostEqual(specfun.chi_cdf(1, 1.0), math.erf(1.0 / math.sqrt(2.0)),
                               places=12)
        self.assertAlmostEqual(specfun.chi_cdf(2, 1.0), 1.0 - math.exp(-0.5), places=12)
        with self.assertRaises(SpecfunError):
            specfun.chi_cdf(2, -1.0)


if __name__ == '__main__':
    from config import test_dir

    mpath = os.path.abspath(os.path.join(test_dir, '..'))
    sys.path.insert(0, mpath)  # so we load dev files before  any installation

    unittest.main()
