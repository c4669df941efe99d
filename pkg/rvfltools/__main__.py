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
Runs an rvfl-tools command by subcommand name.

Usage:
    python -m rvfltools <subcommand> [arguments]

Subcommands:
    bounds            parameter schedule and width bounds (rvfl_bounds)
    validate-lemmas   numerical checks of the approximation chain (rvfl_validate)
    experiment        width sweep with result files (rvfl_experiment)
    build             construct and serialize one network (rvfl_build)
    eval              evaluate a serialized network on CSV points (rvfl_eval)
    psi-table         dump the smoothing kernel table (rvfl_psitable)
    surrogate         export f, f~, g and h on a grid (rvfl_surrogate)

Example:
    python -m rvfltools bounds --m 1..5 --eps 0.1 --eta 0.1
"""

import importlib
import sys

from .cli import EXIT_USAGE, fail

__author__ = "The rvfl-tools authors"

SUBCOMMANDS = {
    'bounds': 'rvfl_bounds',
    'validate-lemmas': 'rvfl_validate',
    'experiment': 'rvfl_experiment',
    'build': 'rvfl_build',
    'eval': 'rvfl_eval',
    'psi-table': 'rvfl_psitable',
    'surrogate': 'rvfl_surrogate',
}


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv or argv[0] in ('-h', '--help'):
        sys.stderr.write(__doc__)
        sys.exit(EXIT_USAGE if not argv else 0)

    name = argv[0]
    if name not in SUBCOMMANDS:
        fail('unknown subcommand: \'{}\''.format(name), __doc__, EXIT_USAGE)

    module = importlib.import_module('.' + SUBCOMMANDS[name], __package__)
    sys.argv = [SUBCOMMANDS[name]] + argv[1:]
    module.main()


if __name__ == '__main__':
    main()
