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
Unit Tests for `rvfltools.kernel`.
"""

import math
import os
import sys
import unittest

import numpy as np
from scipy.integrate import trapezoid

from rvfltools.errors import KernelError
from rvfltools.kernel import (bessel_zero_ratio_margin, convolution_mc, get_kernel,
                              normalize, omega, psi_cap, psi_mass_1d, psi_pdf_1d,
                              psi_sample_1d, second_moment_1d, smoothing_constant,
                              smoothing_moment_sum)


def psi_closed_form(s):
    """Autoconvolution of sqrt(2) cos(pi x) on [-1/2, 1/2]."""
    return (1.0 - s) * np.cos(np.pi * s) + np.sin(np.pi * s) / np.pi


def pdf_closed_form(x):
    return 4.0 * np.pi * np.cos(0.5 * x) ** 2 / (np.pi ** 2 - x ** 2) ** 2


class TestOneDimensionalKernel(unittest.TestCase):

    def setUp(self):
        self.kernel = get_kernel(1)

    def test_normalization(self):
        self.assertAlmostEqual(normalize(1), math.pi, delta=1e-10)
        self.assertAlmostEqual(self.kernel.c_norm, math.pi, delta=1e-10)

    def test_omega_is_cosine_window(self):
        x = np.linspace(-0.5, 0.5, 101)
        np.testing.assert_allclose(omega(self.kernel, x),
                                   math.sqrt(2.0) * np.cos(math.pi * x), atol=1e-10)
        self.assertAlmostEqual(omega(self.kernel, [0.0]), math.sqrt(2.0), places=12)
        self.assertEqual(omega(self.kernel, [0.75]), 0.0)

    def test_psi_table(self):
        r = np.linspace(0.0, 1.0, 37)
        np.testing.assert_allclose(self.kernel.psi_radial(r), psi_closed_form(r), atol=1e-8)
        self.assertAlmostEqual(psi_cap(self.kernel, [0.5]), 1.0 / math.pi, delta=1e-8)
        self.assertAlmostEqual(psi_cap(self.kernel, [0.0]), 1.0, delta=1e-6)
        self.assertEqual(psi_cap(self.kernel, [1.5]), 0.0)

    def test_table_is_immutable(self):
        with self.assertRaises(ValueError):
            self.kernel.table[0] = 2.0
        self.assertIs(get_kernel(1), self.kernel)

    def test_density_closed_form(self):
        x = np.array([0.0, 1.0, 2.5, 7.0, 20.0])
        np.testing.assert_allclose(psi_pdf_1d(self.kernel, x), pdf_closed_form(x),
                                   atol=1e-10)
        self.assertAlmostEqual(psi_pdf_1d(self.kernel, 0.0), 4.0 / math.pi ** 3, places=10)

    def test_density_mass_and_moment(self):
        self.assertAlmostEqual(psi_mass_1d(self.kernel), 1.0, delta=1e-4)
        self.assertAlmostEqual(second_moment_1d(self.kernel) / math.pi ** 2, 1.0, delta=0.01)

    def test_cdf_table(self):
        xs, pdf, cdf = self.kernel.psi_1d_table()
        self.assertEqual(cdf[0], 0.0)
        self.assertAlmostEqual(cdf[-1], 1.0)
        self.assertTrue(np.all(np.diff(cdf) >= 0.0))
        self.assertGreater(np.min(pdf), -1e-9)

    def test_sampling(self):
        draws = psi_sample_1d(self.kernel, 20000, np.random.default_rng(0))
        self.assertEqual(draws.shape, (20000,))
        self.assertLess(abs(np.median(draws)), 0.15)
        # P(|X| <= pi) from the tabulated density
        xs, pdf, _ = self.kernel.psi_1d_table()
        inside = np.abs(xs) <= math.pi
        mass = trapezoid(pdf[inside], xs[inside])
        self.assertLess(abs(np.mean(np.abs(draws) <= math.pi) - mass), 0.02)

    def test_scaled_copy(self):
        broken = self.kernel.scaled(1.01)
        self.assertAlmostEqual(psi_cap(broken, [0.0]), 1.01, delta=1e-5)
        self.assertAlmostEqual(psi_cap(self.kernel, [0.0]), 1.0, delta=1e-6)


class TestHigherDimensions(unittest.TestCase):

    def test_psi_at_zero_and_support(self):
        for m in (2, 3):
            kernel = get_kernel(m)
            self.assertAlmostEqual(kernel.table[0], 1.0, delta=1e-6)
            self.assertEqual(kernel.table[-1], 0.0)
            self.assertLessEqual(np.max(np.abs(kernel.table)), 1.0 + 1e-6)
            self.assertEqual(psi_cap(kernel, np.full(m, 1.01)), 0.0)

    def test_batch_evaluation(self):
        kernel = get_kernel(2)
        pts = np.array([[0.0, 0.0], [0.3, 0.4], [1.0, 1.0]])
        values = psi_cap(kernel, pts)
        self.assertEqual(values.shape, (3,))
        self.assertAlmostEqual(values[1], float(kernel.psi_radial(np.array([0.5]))[0]))

    def test_lens_quadrature_against_monte_carlo(self):
        kernel = get_kernel(2)
        for s in (0.1, 0.4, 0.7):
            exact = float(kernel.autoconvolution([s])[0])
            value, stderr = convolution_mc(kernel, s, samples=2 * 10 ** 5, seed=7)
            self.assertLess(abs(value - exact), 4.0 * stderr + 1e-3)

    def test_density_only_in_one_dimension(self):
        with self.assertRaises(KernelError):
            psi_pdf_1d(get_kernel(2), 0.0)

    def test_invalid_dimension(self):
        with self.assertRaises(KernelError):
            normalize(0)


class TestConstants(unittest.TestCase):

    def test_smoothing_constant(self):
        self.assertAlmostEqual(smoothing_constant(1), 2.0 + 2.0 ** (1.0 / 3.0) * 2.338107410459767,
                               places=12)

    def test_bessel_zero_ratio(self):
        for m in range(1, 51):
            self.assertGreater(bessel_zero_ratio_margin(m), 0.0)

    def test_moment_sum_below_smoothing_constant(self):
        self.assertAlmostEqual(smoothing_moment_sum(1), math.sqrt(2.0 / math.pi) + math.pi,
                               places=10)
        for m in range(1, 51):
            self.assertLessEqual(smoothing_moment_sum(m), smoothing_constant(m))


if __name__ == '__main__':
    from config import test_dir

    mpath = os.path.abspath(os.path.join(test_dir, '..'))
    sys.path.insert(0, mpath)  # so we load dev files before  any installation

    unittest.main()
