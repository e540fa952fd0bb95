# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Write configuration file documentation page.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import os


def write_configfile(_app):
    """Write configuration file documentation page."""
    with open('configuration_file.rst', 'w', encoding='utf-8') as fp:
        fp.write('''.. _configuration_file:

##################
Configuration File
##################

An experiment config (default name: ``specedge.json``) is a JSON object.
The ``profile``, ``distribution`` and ``partition`` objects describe the
variance profile, the entry distribution and, optionally, the partition
used by the audit. All the other keys are listed below, with their
default values. A complete sample is written by ``specedge sample_config``.

Scalar keys::

''')
        configspec = os.path.join(
            '..', 'specedge', 'config', 'configspec.conf')
        with open(configspec, encoding='utf-8') as spec:
            for line in spec:
                if '=' in line and line[0] != '#':
                    key, val = line.split(' = ', maxsplit=1)
                    val = val.split('default=')[1].rstrip()[:-1]
                    val = val.replace('list', '').replace("'", '')
                    line = f'{key} = {val}\n'
                fp.write(f'  {line}')
