# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Version information for specedge.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
VERSION = '0.1.0'


def get_versions():
    """
    Return version information.

    :return: dictionary with the "version" key
    :rtype: dict
    """
    return {'version': VERSION}
