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
Unit Tests for `rvfltools.rvfl`.
"""

import math
import os
import sys
import unittest

import mpmath
import numpy as np

from rvfltools.errors import FitError, RvflError
from rvfltools.lipschitz import extend, recenter
from rvfltools.rvfl import (HiddenLayer, RvflNetwork, WeightDensity, boundary_correction,
                            breakpoint_count, build_constructive, fit_least_squares, grid_spacing,
                            hoeffding_envelope, kinks_on_segment, lipschitz_inflation,
                            network_lipschitz, sample_hidden, sup_error, weight_density)
from rvfltools.spectral import SpectralSurrogate, h_truncated
from rvfltools.targets import builtin


def tent_extension_mp(u):
    """f~ of the recentered tent: 1/2 - |u| on [-1, 1], |u| - 3/2 out to 3/2."""
    u = abs(u)
    if u <= 1:
        return mpmath.mpf(1) / 2 - u
    if u <= mpmath.mpf(3) / 2:
        return u - mpmath.mpf(3) / 2
    return mpmath.mpf(0)


def tent_density_mp(w, b, lam=5, sigma=1, R=1):
    """G(w, b) of the recentered tent (m = 1) at 50 digits."""
    with mpmath.workdps(50):
        w, b = mpmath.mpf(w), mpmath.mpf(b)
        Lambda = mpmath.mpf(lam) / sigma
        v = Lambda * w
        F = 2 * mpmath.quad(lambda u: tent_extension_mp(u) * mpmath.cos(v * u),
                            [0, 1, mpmath.mpf(3) / 2])
        s = abs(w) / sigma
        psi = (1 - s) * mpmath.cos(mpmath.pi * s) + mpmath.sin(mpmath.pi * s) / mpmath.pi
        scale = 2 * sigma * R * Lambda ** 2 * lam / mpmath.sqrt(2 * mpmath.pi)
        return float(-scale * psi * F * mpmath.cos(Lambda * b))


def absolute_value_network(zeta=0.0):
    """|x| + zeta as a two-unit network."""
    return RvflNetwork([[1.0], [-1.0]], [0.0, 0.0], [1.0, 1.0], zeta=zeta)


class TestHiddenLayer(unittest.TestCase):

    def test_shapes_and_bias_range(self):
        layer = sample_hidden(500, 3, sigma=2.0, R=0.5, seed=1)
        self.assertEqual(layer.weights.shape, (500, 3))
        self.assertEqual(layer.biases.shape, (500,))
        self.assertAlmostEqual(layer.bias_range, 2.0 * 0.5 * math.sqrt(3))
        self.assertLessEqual(np.max(np.abs(layer.biases)), layer.bias_range)

    def test_weight_scale(self):
        layer = sample_hidden(20000, 2, sigma=3.0, R=1.0, seed=2)
        self.assertAlmostEqual(float(layer.weights.std()), 3.0, delta=0.1)

    def test_prefix_consistency(self):
        small = sample_hidden(10, 2, 1.0, 1.0, seed=4)
        large = sample_hidden(5000, 2, 1.0, 1.0, seed=4)
        np.testing.assert_array_equal(small.weights, large.weights[:10])
        np.testing.assert_array_equal(small.biases, large.biases[:10])

    def test_workers_do_not_change_the_draw(self):
        one = sample_hidden(9000, 1, 1.0, 1.0, seed=7, workers=1)
        three = sample_hidden(9000, 1, 1.0, 1.0, seed=7, workers=3)
        np.testing.assert_array_equal(one.weights, three.weights)
        np.testing.assert_array_equal(one.biases, three.biases)

    def test_seeds_differ(self):
        a = sample_hidden(10, 1, 1.0, 1.0, seed=0)
        b = sample_hidden(10, 1, 1.0, 1.0, seed=1)
        self.assertFalse(np.array_equal(a.weights, b.weights))

    def test_features_use_center(self):
        layer = sample_hidden(4, 2, 1.0, 1.0, seed=0, center=[1.0, -1.0])
        feats = layer.features(np.array([[1.0, -1.0]]))
        np.testing.assert_allclose(feats[0], np.maximum(layer.biases, 0.0))

    def test_invalid(self):
        with self.assertRaises(RvflError):
            sample_hidden(0, 1, 1.0, 1.0)
        with self.assertRaises(RvflError):
            sample_hidden(2.5, 1, 1.0, 1.0)
        with self.assertRaises(RvflError):
            sample_hidden(10, 1, 0.0, 1.0)
        with self.assertRaises(RvflError):
            sample_hidden(10, 1, 1.0, -1.0)


class TestNetwork(unittest.TestCase):

    def test_evaluation(self):
        net = absolute_value_network(zeta=0.5)
        self.assertAlmostEqual(net([-0.3]), 0.8)
        np.testing.assert_allclose(net(np.array([-1.0, 0.0, 2.0])), [1.5, 0.5, 2.5])

    def test_center_shift(self):
        net = RvflNetwork([[1.0], [-1.0]], [0.0, 0.0], [1.0, 1.0], center=[0.5], R=2.0)
        self.assertAlmostEqual(net([0.5]), 0.0)
        self.assertAlmostEqual(net([1.5]), 1.0)

    def test_bias_out_of_range(self):
        with self.assertRaises(RvflError):
            RvflNetwork([[1.0]], [2.0], [1.0], sigma=1.0, R=1.0)
        with self.assertRaises(RvflError):
            RvflNetwork([1.0, 2.0], [0.0], [1.0])

    def test_dimension_mismatch(self):
        with self.assertRaises(RvflError):
            absolute_value_network()(np.zeros((3, 2)))

    def test_lipschitz_constant(self):
        net = absolute_value_network()
        self.assertEqual(network_lipschitz(net), 2.0)
        grid = np.linspace(-1.0, 1.0, 11)[:, None]
        self.assertAlmostEqual(grid_spacing(grid), 0.2)
        self.assertAlmostEqual(lipschitz_inflation(net, grid), 0.4)
        self.assertEqual(grid_spacing(np.zeros((1, 1))), 0.0)

    def test_sup_error(self):
        net = absolute_value_network()
        grid = np.linspace(-1.0, 1.0, 21)
        self.assertAlmostEqual(sup_error(net, lambda x: np.abs(x[:, 0]), grid), 0.0)
        shifted = np.abs(grid) + 0.25
        self.assertAlmostEqual(sup_error(net, shifted, grid), 0.25)
        with self.assertRaises(RvflError):
            sup_error(net, np.abs, np.zeros((0, 1)))

    def test_kinks(self):
        net = absolute_value_network()
        np.testing.assert_allclose(kinks_on_segment(net, [-1.0], [1.0]), [0.5, 0.5])
        self.assertEqual(kinks_on_segment(net, [0.5], [1.0]).size, 0)
        self.assertEqual(breakpoint_count(net, [-1.0], [1.0]), 1)

    def test_breakpoints_bounded_by_units(self):
        layer = sample_hidden(40, 1, 1.0, 1.0, seed=3)
        rng = np.random.default_rng(3)
        net = RvflNetwork(layer.weights, layer.biases, rng.standard_normal(40))
        count = breakpoint_count(net, [-1.0], [1.0])
        self.assertLessEqual(count, kinks_on_segment(net, [-1.0], [1.0]).size)
        self.assertLessEqual(count, net.n)


class TestWeightDensity(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.samples = recenter(builtin('tent', 1, 101))
        cls.surrogate = SpectralSurrogate(extend(cls.samples), lam=5.0, theta=0.05)
        cls.density = WeightDensity(cls.surrogate, sigma=1.0)

    def test_attributes(self):
        self.assertEqual(self.density.R, 1.0)
        self.assertEqual(self.density.Lambda, 5.0)
        self.assertAlmostEqual(self.density.zeta, 0.5)
        self.assertEqual(self.density.m, 1)

    def test_support(self):
        w = np.array([[0.01], [0.5], [1.5], [-3.0]])
        G = self.density(w, np.zeros(4))
        self.assertEqual(G[0], 0.0)
        self.assertNotEqual(G[1], 0.0)
        self.assertEqual(G[2], 0.0)
        self.assertEqual(G[3], 0.0)
        self.assertEqual(weight_density(self.density, [0.5], 0.0), G[1])

    def test_bias_dependence_is_a_cosine(self):
        b = np.linspace(-1.0, 1.0, 9)
        w = np.full((9, 1), 0.4)
        G = self.density(w, b)
        amplitude = np.max(np.abs(G))
        self.assertGreater(amplitude, 0.0)
        # G(w, b + 2 pi / Lambda) == G(w, b)
        period = 2.0 * math.pi / self.density.Lambda
        np.testing.assert_allclose(self.density(w, b + period), G, atol=1e-12 * amplitude)

    def test_theta_must_be_positive(self):
        with self.assertRaises(RvflError):
            WeightDensity(SpectralSurrogate(self.surrogate.ext, lam=5.0, theta=0.0,
                                            transform=self.surrogate.transform))
        with self.assertRaises(RvflError):
            WeightDensity(self.surrogate, sigma=0.0)

    def test_log_bound(self):
        expected = (2.0 * 5.0 ** 2 / math.sqrt(2.0 * math.pi) * (1.0 + 1.0 / 0.05) * 3.0)
        self.assertAlmostEqual(self.density.bound(3.0), expected, delta=1e-9 * expected)

    def test_volume(self):
        # [-1, 1] widened by M / l = 0.5 on both sides
        self.assertAlmostEqual(self.density.volume(samples=2 * 10 ** 5), 3.0, delta=0.05)

    def test_volume_inflates_the_domain(self):
        density = WeightDensity(self.surrogate, sigma=1.0)
        est = self.samples.domain.inflated_volume(0.5, samples=5 * 10 ** 4, seed=4)
        self.assertEqual(density.volume(samples=5 * 10 ** 4, seed=4), est.value)

    def test_hoeffding_envelope(self):
        self.assertAlmostEqual(hoeffding_envelope(self.density, 0, 0.1, volume=3.0), 2.0)
        small = hoeffding_envelope(self.density, 10 ** 6, 0.5, volume=3.0)
        large = hoeffding_envelope(self.density, 10 ** 8, 0.5, volume=3.0)
        self.assertLess(large, small)
        with self.assertRaises(RvflError):
            hoeffding_envelope(self.density, 10, 0.0, volume=3.0)

    def test_hoeffding_envelope_value(self):
        B = self.density.bound(3.0)
        with mpmath.workdps(50):
            expected = float(2 * mpmath.exp(-50))
        self.assertAlmostEqual(hoeffding_envelope(self.density, 10 ** 4, B / 10.0, volume=3.0),
                               expected, delta=1e-10 * expected)

    def test_density_against_closed_transform(self):
        for w, b in [(0.5, 0.0), (0.5, 0.1), (-0.8, 0.3), (0.3, -0.45)]:
            expected = tent_density_mp(w, b)
            self.assertAlmostEqual(self.density([w], b), expected,
                                   delta=2e-5 * abs(expected))
        # |F(2.5)| Psi(1/2) = 0.570150 / pi
        self.assertAlmostEqual(self.density([0.5], 0.0), -18.10, delta=0.01)

    def test_raw_network_averages_to_corrected_target(self):
        center = self.samples.center
        layer = sample_hidden(5 * 10 ** 4, 1, 1.0, 1.0, seed=11, center=center)
        net = build_constructive(layer, self.density, corrected=False)
        self.assertEqual(net.provenance, 'constructive-raw')

        x = np.array([[-0.8], [0.0], [0.6]])
        terms = self.density(layer.weights, layer.biases)[None, :] * layer.features(x + center)
        stderr = terms.std(axis=1, ddof=1) / math.sqrt(layer.n)
        np.testing.assert_allclose(net(x + center) - net.zeta, terms.mean(axis=1),
                                   rtol=1e-9, atol=1e-12)

        h = h_truncated(self.surrogate, x, method='quadrature').value
        q0, q1 = boundary_correction(self.density)
        expected = h - q0 - x @ q1
        self.assertTrue(np.all(np.abs(terms.mean(axis=1) - expected) <= 4.0 * stderr))

    def test_corrected_network(self):
        layer = sample_hidden(100, 1, 1.0, 1.0, seed=0, center=self.samples.center)
        raw = build_constructive(layer, self.density, corrected=False)
        net = build_constructive(layer, self.density)
        self.assertEqual(net.provenance, 'constructive')
        q0, _ = boundary_correction(self.density)
        self.assertAlmostEqual(net.zeta - raw.zeta, q0)
        outside = np.abs(layer.weights[:, 0]) > 1.0
        np.testing.assert_array_equal(net.outer[outside], raw.outer[outside])

    def test_layer_must_match_density(self):
        with self.assertRaises(RvflError):
            build_constructive(sample_hidden(10, 1, 2.0, 1.0), self.density)
        with self.assertRaises(RvflError):
            build_constructive(sample_hidden(10, 2, 1.0, 1.0), self.density)


class TestLeastSquares(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.samples = recenter(builtin('tent', 1, 101))
        cls.X = cls.samples.domain.points + cls.samples.center
        cls.y = cls.samples.values + cls.samples.zeta
        cls.layer = sample_hidden(200, 1, 1.0, 1.0, seed=5, center=cls.samples.center)

    def test_beats_constructive_weights(self):
        surrogate = SpectralSurrogate(extend(self.samples), lam=5.0, theta=0.05)
        constructive = build_constructive(self.layer, WeightDensity(surrogate))
        fitted = fit_least_squares(self.layer, self.X, self.y)
        self.assertEqual(fitted.provenance, 'least-squares')
        ls_error = sup_error(fitted, self.y, self.X)
        self.assertLess(ls_error, 0.1)
        self.assertLess(ls_error, sup_error(constructive, self.y, self.X))

    def test_heavy_ridge_leaves_the_intercept(self):
        fitted = fit_least_squares(self.layer, self.X, self.y, ridge=1e12)
        self.assertLess(np.max(np.abs(fitted.outer)), 1e-6)
        self.assertAlmostEqual(fitted.zeta, float(self.y.mean()), delta=1e-4)

    def test_without_intercept(self):
        fitted = fit_least_squares(self.layer, self.X, self.y, fit_intercept=False)
        self.assertEqual(fitted.zeta, 0.0)

    def test_zero_targets_give_zero_weights(self):
        X = np.linspace(-0.9, 0.9, 10)
        fitted = fit_least_squares(self.layer, X, np.zeros(10), ridge=1.0)
        self.assertEqual(float(np.max(np.abs(fitted.outer))), 0.0)
        self.assertEqual(fitted.zeta, 0.0)

    def test_interpolates_when_wider_than_the_data(self):
        X = np.linspace(-0.9, 0.9, 10)
        y = np.sin(3.0 * X) + 0.2
        fitted = fit_least_squares(sample_hidden(200, 1, 1.0, 1.0, seed=13), X, y)
        self.assertLessEqual(np.linalg.norm(fitted(X) - y), 1e-8 * np.linalg.norm(y))

    def test_ridge_matches_normal_equations(self):
        layer = sample_hidden(20, 1, 1.0, 1.0, seed=8)
        X = np.linspace(-1.0, 1.0, 50)
        y = np.abs(X) + 0.1 * np.cos(5.0 * X)
        phi = layer.features(X)
        for ridge in (1e-3, 0.1, 10.0):
            fitted = fit_least_squares(layer, X, y, ridge=ridge, fit_intercept=False)
            expected = np.linalg.solve(phi.T @ phi + ridge * np.eye(20), phi.T @ y)
            np.testing.assert_allclose(fitted.outer, expected, rtol=1e-7, atol=1e-10)

    def test_full_rank_matches_pseudoinverse(self):
        # one kink per gap of the data grid, so the design has full column rank
        kinks = np.linspace(-0.95, 0.95, 20)
        layer = HiddenLayer(np.ones((20, 1)), -kinks, 1.0, 1.0)
        X = np.linspace(-1.0, 1.0, 50)
        y = np.abs(X) + 0.1 * np.cos(5.0 * X)
        fitted = fit_least_squares(layer, X, y, fit_intercept=False)
        expected = np.linalg.pinv(layer.features(X)) @ y
        np.testing.assert_allclose(fitted.outer, expected, rtol=1e-6, atol=1e-8)
        np.testing.assert_allclose(fitted(X), layer.features(X) @ expected, atol=1e-9)

    def test_invalid(self):
        with self.assertRaises(FitError):
            fit_least_squares(self.layer, self.X, self.y[:-1])
        with self.assertRaises(FitError):
            fit_least_squares(self.layer, self.X, self.y, ridge=-1.0)
        bad = self.y.copy()
        bad[3] = np.nan
        with self.assertRaises(FitError):
            fit_least_squares(self.layer, self.X, bad)


if __name__ == '__main__':
    from config import test_dir

    mpath = os.path.abspath(os.path.join(test_dir, '..'))
    sys.path.insert(0, mpath)  # so we load dev files before  any installation

    unittest.main()
