# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Configuration and initialization of the specedge package.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
# The config object is created in config.py and needs to be populated
# when using specedge from command line, this is done by the configure()
# function in se_setup.py
from .config import config, Config  # noqa
from .se_setup import se_exit  # noqa
from .generic_printer import generic_printer  # noqa
from .utils import ConfigError  # noqa
