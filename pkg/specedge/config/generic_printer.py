# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Generic printer functions for specedge.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import sys
import os
import csv
import contextlib
from tabulate import tabulate


def generic_printer(rows, headers_fmt, tablefmt='simple', title=None):
    """
    Print a table to screen.

    :param rows: Rows to print.
    :type rows: list of rows
    :param headers_fmt: Headers and float format strings.
    :type headers_fmt: list of tuples of str
    :param tablefmt: one of "simple", "markdown" or "csv"
    :type tablefmt: str
    :param title: optional title printed above the table
    :type title: str
    """
    headers = [h[0] for h in headers_fmt]
    floatfmt = [h[1] for h in headers_fmt]
    if tablefmt == 'csv':
        writer = csv.writer(sys.stdout)
        try:
            writer.writerow(headers)
            writer.writerows(rows)
        except BrokenPipeError:
            # Redirect remaining output to devnull to avoid another
            # BrokenPipeError at shutdown
            devnull = os.open(os.devnull, os.O_WRONLY)
            os.dup2(devnull, sys.stdout.fileno())
        return
    format_dict = {
        'simple': 'simple',
        'markdown': 'github'
    }
    with contextlib.suppress(BrokenPipeError):
        if title is not None:
            print(f'\n{title}')
        print(tabulate(
            rows, headers=headers, floatfmt=floatfmt,
            tablefmt=format_dict[tablefmt]
        ))
