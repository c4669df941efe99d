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
Command-line plumbing shared by the rvfl_* tools.

Every tool reports user errors as a single `ERROR!!` line followed by its
usage text on stderr. Exit codes: 0 success, 1 failed check or runtime
error, 2 usage error.
"""

import argparse
import logging
import sys

from .config import parse_range
from .errors import RvflError

__author__ = "The rvfl-tools authors"

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


class ToolParser(argparse.ArgumentParser):
    """ArgumentParser that prints the tool docstring on usage errors.

    Parameters
    ----------
    doc : str
        Usage text of the tool, written after the error line.
    """

    def __init__(self, prog, doc, **kwargs):
        kwargs.setdefault('formatter_class', argparse.RawDescriptionHelpFormatter)
        super(ToolParser, self).__init__(prog=prog, description=doc, **kwargs)
        self.doc = doc
        self.add_argument('-v', '--verbose', action='count', default=0,
                          help='log progress to stderr (-vv for debug output)')

    def error(self, message):
        sys.stderr.write('ERROR!! {}\n'.format(message))
        sys.stderr.write(self.doc)
        sys.exit(EXIT_USAGE)


def setup_logging(verbosity):
    """Routes library logging to stderr: 0 warnings, 1 info, 2+ debug."""
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)
    logging.captureWarnings(True)


def fail(message, doc=None, code=EXIT_FAILURE):
    """Writes an ERROR!! line (and optionally the usage text) and exits."""
    sys.stderr.write('ERROR!! {}\n'.format(message))
    if doc:
        sys.stderr.write(doc)
    sys.exit(code)


def range_type(text):
    """argparse type for integer lists such as '1..5' or '1,2,4'."""
    try:
        return parse_range(text)
    except RvflError as err:
        raise argparse.ArgumentTypeError(str(err))


def positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError('not a number: \'{}\''.format(text))
    if not value > 0:
        raise argparse.ArgumentTypeError('must be positive: \'{}\''.format(text))
    return value


def positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError('not an integer: \'{}\''.format(text))
    if value < 1:
        raise argparse.ArgumentTypeError('must be >= 1: \'{}\''.format(text))
    return value


def unit_interval(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError('not a number: \'{}\''.format(text))
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError('must lie in (0, 1): \'{}\''.format(text))
    return value
