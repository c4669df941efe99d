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
Unit Tests for `rvfltools.spectral`.
"""

import math
import os
import sys
import unittest
import warnings

import numpy as np

from rvfltools.bounds import smoothing_bound, truncation_bound
from rvfltools.errors import QuadratureError, RvflError
from rvfltools.kernel import get_kernel
from rvfltools.lipschitz import extend, recenter
from rvfltools.spectral import (FourierTransform, SpectralSurrogate, fourier, g_convolution,
                                g_spectral, h_gradient, h_truncated, truncation_gap)
from rvfltools.targets import builtin


def tent_transform(v):
    v = np.asarray(v, dtype=float)
    return 2.0 * (1.0 - np.cos(v)) / (v * v)


class TestFourierTransform(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        # the raw tent (values in [0, 1]) extends to itself
        cls.ext = extend(builtin('tent', 1, 101))
        cls.transform = FourierTransform(cls.ext, vmax=20.0)

    def test_closed_form(self):
        v = np.array([0.5, 1.0, math.pi, 7.0, 19.0])
        values = self.transform(v)
        np.testing.assert_allclose(values.real, tent_transform(v), atol=1e-5)
        np.testing.assert_allclose(values.imag, 0.0, atol=1e-9)
        self.assertAlmostEqual(self.transform(math.pi).real, 4.0 / math.pi ** 2, delta=1e-5)

    def test_zero_frequency_is_l1_norm(self):
        self.assertAlmostEqual(self.transform(0.0).real, 1.0, delta=1e-6)
        self.assertAlmostEqual(self.transform.l1, 1.0, delta=1e-6)

    def test_bounded_by_l1(self):
        v = np.linspace(-30.0, 30.0, 301)
        self.assertLessEqual(np.max(np.abs(self.transform(v))), self.transform.l1 + 1e-12)

    def test_cache(self):
        transform = FourierTransform(self.ext, nodes=1025, vmax=5.0)
        first = transform(np.array([1.0, 2.0]))
        before = transform.hits
        again = transform(np.array([2.0, 1.0]))
        self.assertEqual(transform.hits - before, 2)
        self.assertEqual(again[0], first[1])

    def test_shared_transform(self):
        self.assertAlmostEqual(abs(fourier(self.ext, 2.0)), tent_transform(2.0), delta=1e-5)

    def test_monte_carlo_mode(self):
        transform = FourierTransform(self.ext, method='montecarlo', samples=10 ** 5, seed=3)
        for v in (0.5, 2.0, 5.0):
            err = transform.stderr(v)
            self.assertGreater(err, 0.0)
            self.assertLess(abs(transform(v) - tent_transform(v)), 5.0 * err)

    def test_quadrature_limits(self):
        ext4 = extend(recenter(builtin('tent', 4, 3)))
        with self.assertRaises(QuadratureError):
            FourierTransform(ext4, method='quadrature')
        with self.assertRaises(QuadratureError):
            FourierTransform(self.ext, nodes=100)
        with self.assertRaises(RvflError):
            FourierTransform(self.ext, method='fft')


class TestOneDimensionalSurrogate(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.samples = recenter(builtin('tent', 1, 101))
        cls.ext = extend(cls.samples)
        cls.surrogate = SpectralSurrogate(cls.ext, get_kernel(1), lam=20.0, theta=0.05)
        cls.x = np.linspace(-1.0, 1.0, 21)[:, None]

    def test_smoothing_envelope(self):
        g = g_spectral(self.surrogate, self.x)
        bound = smoothing_bound(1.0, 20.0, 1)
        self.assertLessEqual(np.max(np.abs(g.value - self.ext(self.x))), bound)

    def test_real_valued(self):
        self.assertLess(self.surrogate.imag_residue(self.x), 1e-8)

    def test_truncation_gap(self):
        g = g_spectral(self.surrogate, self.x)
        h = h_truncated(self.surrogate, self.x, method='quadrature')
        gap = truncation_gap(self.surrogate, self.x)
        np.testing.assert_allclose(g.value - h.value, gap.value, atol=1e-6)
        bound = truncation_bound(1.0, self.samples.R, 0.05, 20.0, 1)
        self.assertLessEqual(np.max(np.abs(gap.value)), bound)

    def test_theta_zero_keeps_every_frequency(self):
        full = SpectralSurrogate(self.ext, lam=20.0, theta=0.0,
                                 transform=self.surrogate.transform)
        g = g_spectral(full, self.x)
        h = h_truncated(full, self.x, method='quadrature')
        np.testing.assert_array_equal(g.value, h.value)

    def test_theta_one_removes_every_frequency(self):
        for theta in (1.0, 1.5):
            empty = SpectralSurrogate(self.ext, lam=20.0, theta=theta,
                                      transform=self.surrogate.transform)
            h = h_truncated(empty, self.x, method='quadrature')
            np.testing.assert_array_equal(h.value, np.zeros(self.x.shape[0]))
            g = g_spectral(empty, self.x)
            np.testing.assert_array_equal(truncation_gap(empty, self.x).value, g.value)
            h_mc = h_truncated(empty, self.x[::5], mc_samples=10 ** 4, seed=2)
            np.testing.assert_array_equal(h_mc.value, np.zeros(5))
            np.testing.assert_array_equal(h_mc.stderr, np.zeros(5))

    def test_paired_monte_carlo(self):
        pts = self.x[::5]
        g_mc = g_spectral(self.surrogate, pts, method='montecarlo', mc_samples=4 * 10 ** 4,
                          seed=5)
        h_mc = h_truncated(self.surrogate, pts, mc_samples=4 * 10 ** 4, seed=5)
        gap_mc = truncation_gap(self.surrogate, pts, method='montecarlo',
                                mc_samples=4 * 10 ** 4, seed=5)
        g_q = g_spectral(self.surrogate, pts)
        h_q = h_truncated(self.surrogate, pts, method='quadrature')
        self.assertTrue(np.all(np.abs(g_mc.value - g_q.value) <= 5.0 * g_mc.stderr + 1e-9))
        self.assertTrue(np.all(np.abs(h_mc.value - h_q.value) <= 5.0 * h_mc.stderr + 1e-9))
        np.testing.assert_allclose(g_mc.value - h_mc.value, gap_mc.value, atol=1e-12)

    def test_monte_carlo_ignores_worker_count(self):
        pts = self.x[::10]
        one = h_truncated(self.surrogate, pts, mc_samples=3 * 10 ** 4, seed=2, workers=1)
        three = h_truncated(self.surrogate, pts, mc_samples=3 * 10 ** 4, seed=2, workers=3)
        np.testing.assert_allclose(one.value, three.value, rtol=1e-12, atol=1e-14)

    def test_convolution_form(self):
        surrogate = SpectralSurrogate(self.ext, lam=5.0, theta=0.05)
        pts = np.linspace(-1.0, 1.0, 5)[:, None]
        g = g_spectral(surrogate, pts)
        conv = g_convolution(surrogate, pts, mc_samples=5 * 10 ** 4, seed=1)
        self.assertTrue(np.all(np.abs(g.value - conv.value) <= 4.0 * conv.stderr + 1e-3))

    def test_gradient_matches_finite_differences(self):
        surrogate = SpectralSurrogate(self.ext, lam=5.0, theta=0.05)
        x, d = 0.3, 1e-4
        up = h_truncated(surrogate, [x + d], method='quadrature').value
        down = h_truncated(surrogate, [x - d], method='quadrature').value
        grad = h_gradient(surrogate, [x])
        self.assertEqual(grad.shape, (1,))
        self.assertAlmostEqual(grad[0], (up - down) / (2.0 * d), delta=1e-4)

    def test_single_point_returns_scalars(self):
        g = g_spectral(self.surrogate, [0.0])
        self.assertIsInstance(g.value, float)
        self.assertIsInstance(g.stderr, float)

    def test_invalid_parameters(self):
        with self.assertRaises(RvflError):
            SpectralSurrogate(self.ext, lam=0.0)
        with self.assertRaises(RvflError):
            SpectralSurrogate(self.ext, lam=1.0, theta=-0.1)
        with self.assertRaises(RvflError):
            SpectralSurrogate(self.ext, kernel=get_kernel(2), lam=1.0)
        with self.assertRaises(RvflError):
            g_spectral(self.surrogate, [0.0], method='exact')


class TestHigherDimensions(unittest.TestCase):

    def test_planar_smoothing_envelope(self):
        ext = extend(recenter(builtin('radial-bump', 2, 7)))
        with warnings.catch_warnings():
            warnings.simplefilter('ignore')
            surrogate = SpectralSurrogate(ext, lam=5.0, theta=0.05)
        pts = np.array([[0.0, 0.0], [0.5, 0.0], [-0.5, 0.5], [1.0, 1.0]])
        g = g_spectral(surrogate, pts)
        self.assertLessEqual(np.max(np.abs(g.value - ext(pts))),
                             smoothing_bound(ext.ell, 5.0, 2))
        self.assertLess(surrogate.imag_residue(pts), 1e-6)
        with self.assertRaises(RvflError):
            g_convolution(surrogate, pts)

    def test_monte_carlo_only_above_three(self):
        ext = extend(recenter(builtin('tent', 4, 3)))
        transform = FourierTransform(ext, method='montecarlo', samples=2 * 10 ** 4, seed=0)
        surrogate = SpectralSurrogate(ext, lam=2.0, theta=0.05, transform=transform)
        h = h_truncated(surrogate, np.zeros((2, 4)), mc_samples=2000, seed=0)
        self.assertTrue(np.all(np.isfinite(h.value)))
        self.assertTrue(np.all(h.stderr > 0.0))
        with self.assertRaises(QuadratureError):
            h_truncated(surrogate, np.zeros(4), method='quadrature')


if __name__ == '__main__':
    from config import test_dir

    mpath = os.path.abspath(os.path.join(test_dir, '..'))
    sys.path.insert(0, mpath)  # so we load dev files before  any installation

    unittest.main()
