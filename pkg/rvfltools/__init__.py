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
"""The rvfl-tools library.

Constructive random vector functional link (RVFL) networks with ReLU
activations, and the numerical machinery that certifies them: a Lipschitz
extension of sampled data, a Bessel-window smoothing kernel, the spectral
surrogate of the smoothed target, and the width bounds that make a finite
random network uniformly accurate.

You can use rvfl-tools as a library or as a series of command-line
applications.

Examples at the command-line
----------------------------

$ rvfl_bounds --m 1..5 --eps 0.1 --eta 0.1 --ell 1 --R 1 --dK auto
$ rvfl_validate --m 1 --target tent --quick > report.json
$ rvfl_build --target tent --lambda 20 --theta 0.05 -n 10000 > net.json
$ rvfl_eval net.json points.csv > values.csv
$ python -m rvfltools experiment --config sweep.json

Examples using rvfl-tools as library
------------------------------------

>>> from rvfltools.targets import load_target
>>> from rvfltools.lipschitz import recenter, extend
>>> from rvfltools.kernel import get_kernel
>>> from rvfltools.spectral import SpectralSurrogate
>>> from rvfltools.rvfl import WeightDensity, sample_hidden, build_constructive
>>> samples = recenter(load_target('tent', 1, 101))
>>> surrogate = SpectralSurrogate(extend(samples), get_kernel(1), 20.0, 0.05)
>>> density = WeightDensity(surrogate, sigma=1.0)
>>> layer = sample_hidden(10000, 1, 1.0, samples.R, seed=0, center=samples.center)
>>> net = build_constructive(layer, density)

All command-line modules have three functions: `check_input`, `main`, and
`run`. `check_input` parses and validates the arguments, `run` does the
work, and `main` is used solely by the command-line interface.

>>> help(MODULE)
>>> help(MODULE.run)
"""

__version__ = '1.0.0'

from .errors import (AccuracyWarning, ConfigError, DensityOverflowError, FitError,  # noqa: E402
                     GeometryError, KernelError, LipschitzError, NetworkFormatError,
                     QuadratureError, RvflError, SpecfunError)

__all__ = [
    'AccuracyWarning',
    'ConfigError',
    'DensityOverflowError',
    'FitError',
    'GeometryError',
    'KernelError',
    'LipschitzError',
    'NetworkFormatError',
    'QuadratureError',
    'RvflError',
    'SpecfunError',
    'rvfl_bounds',
    'rvfl_build',
    'rvfl_eval',
    'rvfl_experiment',
    'rvfl_psitable',
    'rvfl_surrogate',
    'rvfl_validate',
]
