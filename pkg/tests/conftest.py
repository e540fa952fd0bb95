# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Shared fixtures for the specedge test suite.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import pytest
from specedge.config import config
from specedge.config.utils import parse_configspec
from specedge.commands.experiment import load_experiment_config


@pytest.fixture(autouse=True)
def clean_config():
    """Every test starts and ends with an empty global config."""
    config.reset()
    yield
    config.reset()


@pytest.fixture(scope='session')
def configspec():
    return parse_configspec()


@pytest.fixture
def experiment_config(configspec, tmp_path):
    """
    Populate the global config from a raw JSON config, with the output
    directory in a temporary folder.
    """
    def _populate(raw_config, command='edge'):
        loaded = load_experiment_config(raw_config, configspec)
        config.populate(loaded)
        config.command = command
        config.threads = 1
        config.progress = False
        config.outdir = str(tmp_path)
        return config
    return _populate
