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
Exception and warning classes shared by the `rvfltools` library.

Command-line tools catch `RvflError` and report it as an `ERROR!!` line on
stderr; library users can catch the specific subclasses.
"""

__author__ = "The rvfl-tools authors"


class RvflError(ValueError):
    """Base class of every error raised by the library."""


class SpecfunError(RvflError):
    """Argument outside the domain of a special function."""


class GeometryError(RvflError):
    """Invalid point cloud or Monte Carlo volume request."""


class LipschitzError(RvflError):
    """Samples inconsistent with the Lipschitz model."""


class KernelError(RvflError):
    """Smoothing kernel construction failed.

    The `diagnostics` attribute holds the quadrature values that triggered
    the failure.
    """

    def __init__(self, message, diagnostics=None):
        super(KernelError, self).__init__(message)
        self.diagnostics = dict(diagnostics or {})


class QuadratureError(RvflError):
    """Quadrature mode requested outside its supported dimensions."""


class DensityOverflowError(RvflError):
    """An outer-weight magnitude does not fit in double precision."""


class FitError(RvflError):
    """Least-squares problem with invalid entries."""


class ConfigError(RvflError):
    """Inconsistent experiment or tool configuration."""


class NetworkFormatError(RvflError):
    """Malformed serialized network document."""


class AccuracyWarning(RuntimeWarning):
    """A numerical tolerance was not met within the allowed budget."""
