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
Unit Tests for `rvfl_surrogate`.
"""

import os
import sys
import unittest

from config import data_dir, data_file
from utils import OutputCapture

from rvfltools.bounds import smoothing_bound


class TestTool(unittest.TestCase):
    """
    Generic class for testing tools.
    """

    def setUp(self):
        # Dynamically import the module
        name = 'rvfltools.rvfl_surrogate'
        self.module = __import__(name, fromlist=[''])

    def exec_module(self):
        """
        Execs module.
        """

        with OutputCapture() as output:
            try:
                self.module.main()
            except SystemExit as e:
                self.retcode = e.code

        self.stdout = output.stdout
        self.stderr = output.stderr

        return

    def rows(self):
        return [line.split(',') for line in self.stdout[1:]]

    def test_chain_on_samples(self):
        """$ rvfl_surrogate --lambda 5 --grid 21"""

        sys.argv = ['', '--lambda', '5', '--grid', '21']

        self.exec_module()

        self.assertEqual(self.retcode, 0)
        self.assertEqual(self.stdout[0], 'x1,f,f_ext,g,g_err,h,h_err')
        self.assertEqual(len(self.stdout), 22)
        bound = smoothing_bound(1.0, 5.0, 1)
        for x, f, f_ext, g, g_err, h, h_err in self.rows():
            self.assertAlmostEqual(float(f), float(f_ext), delta=1e-12)
            self.assertLessEqual(abs(float(g) - float(f_ext)), bound)
            self.assertLess(float(g_err), 1e-6)

    def test_custom_points(self):
        """$ rvfl_surrogate --lambda 5 --points data/points_1d.csv"""

        sys.argv = ['', '--lambda', '5', '--grid', '21', '--points',
                    data_file('points_1d.csv')]

        self.exec_module()

        self.assertEqual(self.retcode, 0)
        rows = self.rows()
        self.assertEqual([r[0] for r in rows], ['-1.0', '-0.5', '0.0', '0.25', '1.0'])
        self.assertTrue(all(r[1] == '' for r in rows))
        # tent extension in original coordinates
        for row, expected in zip(rows, [0.0, 0.5, 1.0, 0.75, 0.0]):
            self.assertAlmostEqual(float(row[2]), expected, delta=1e-12)

    def test_monte_carlo(self):
        """$ rvfl_surrogate --lambda 5 --method montecarlo --samples 20000"""

        sys.argv = ['', '--lambda', '5', '--grid', '11', '--method', 'montecarlo',
                    '--samples', '20000', '--seed', '4']

        self.exec_module()

        self.assertEqual(self.retcode, 0)
        self.assertTrue(all(float(r[4]) > 0.0 and float(r[6]) > 0.0 for r in self.rows()))

    def test_negative_theta(self):
        """$ rvfl_surrogate --lambda 5 --theta -0.1"""

        sys.argv = ['', '--lambda', '5', '--theta', '-0.1']

        self.exec_module()

        self.assertEqual(self.retcode, 2)
        self.assertEqual(self.stderr[0], "ERROR!! theta must be >= 0: -0.1")

    def test_missing_lambda(self):
        """$ rvfl_surrogate"""

        sys.argv = ['']

        self.exec_module()

        self.assertEqual(self.retcode, 2)
        self.assertEqual(self.stderr[0][:46],
                         "ERROR!! the following arguments are required: ")

    def test_file_not_found(self):
        """$ rvfl_surrogate --lambda 5 --points not_existing.csv"""

        sys.argv = ['', '--lambda', '5', '--points', os.path.join(data_dir, 'not_existing.csv')]

        self.exec_module()

        self.assertEqual(self.retcode, 1)
        self.assertEqual(len(self.stdout), 0)
        self.assertEqual(self.stderr[0][:22], "ERROR!! File not found")


if __name__ == '__main__':
    from config import test_dir

    mpath = os.path.abspath(os.path.join(test_dir, '..'))
    sys.path.insert(0, mpath)  # so we load dev files before  any installation

    unittest.main()
