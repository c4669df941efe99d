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
Unit Tests for `rvfl_experiment`.
"""

import json
import os
import shutil
import sys
import tempfile
import unittest

from config import data_file
from utils import OutputCapture


class TestTool(unittest.TestCase):
    """
    Generic class for testing tools.
    """

    def setUp(self):
        # Dynamically import the module
        name = 'rvfltools.rvfl_experiment'
        self.module = __import__(name, fromlist=[''])
        self.tempdir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tempdir)

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

    def test_config_with_overrides(self):
        """$ rvfl_experiment --config data/experiment.json --n 20 --seeds 0 --output-dir out"""

        out = os.path.join(self.tempdir, 'out')
        sys.argv = ['', '--config', data_file('experiment.json'), '--n', '20', '--seeds', '0',
                    '--output-dir', out]

        self.exec_module()

        self.assertEqual(self.retcode, 0)
        summary = json.loads(self.stdout[0])
        self.assertEqual(summary['rows'], 1)
        self.assertEqual(summary['output_dir'], out)
        self.assertEqual(len(summary['config_hash']), 64)
        self.assertTrue(os.path.isfile(os.path.join(out, 'experiment.csv')))
        with open(os.path.join(out, 'manifest.json')) as handle:
            manifest = json.load(handle)
        self.assertEqual(manifest['config']['n_list'], [20])
        self.assertEqual(manifest['config_hash'], summary['config_hash'])

    def test_flags_only(self):
        """$ rvfl_experiment --lambda 4 --grid 11 --n 10 --seeds 0..1 --output-dir out"""

        out = os.path.join(self.tempdir, 'flags')
        sys.argv = ['', '--lambda', '4', '--grid', '11', '--n', '10', '--seeds', '0..1',
                    '--samples', '1000', '--volume-samples', '10000', '--output-dir', out]

        self.exec_module()

        self.assertEqual(self.retcode, 0)
        self.assertEqual(json.loads(self.stdout[0])['rows'], 2)

    def test_lambda_and_epsilon(self):
        """$ rvfl_experiment --config data/bad_experiment.json"""

        sys.argv = ['', '--config', data_file('bad_experiment.json')]

        self.exec_module()

        self.assertEqual(self.retcode, 2)
        self.assertEqual(len(self.stdout), 0)
        self.assertEqual(self.stderr[0], "ERROR!! set exactly one of lambda and epsilon")

    def test_no_scale(self):
        """$ rvfl_experiment --n 10"""

        sys.argv = ['', '--n', '10']

        self.exec_module()

        self.assertEqual(self.retcode, 2)
        self.assertEqual(self.stderr[0], "ERROR!! set exactly one of lambda and epsilon")

    def test_missing_config(self):
        """$ rvfl_experiment --config not_existing.json"""

        sys.argv = ['', '--config', os.path.join(self.tempdir, 'not_existing.json')]

        self.exec_module()

        self.assertEqual(self.retcode, 2)
        self.assertEqual(self.stderr[0][:33], "ERROR!! cannot read configuration")

    def test_unknown_target(self):
        """$ rvfl_experiment --lambda 4 --target not_existing.csv"""

        sys.argv = ['', '--lambda', '4', '--target', 'not_existing.csv',
                    '--output-dir', os.path.join(self.tempdir, 'bad')]

        self.exec_module()

        self.assertEqual(self.retcode, 1)
        self.assertEqual(self.stderr[0][:35], "ERROR!! target is neither a built-i")


if __name__ == '__main__':
    from config import test_dir

    mpath = os.path.abspath(os.path.join(test_dir, '..'))
    sys.path.insert(0, mpath)  # so we load dev files before  any installation

    unittest.main()
