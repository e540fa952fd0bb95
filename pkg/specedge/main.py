#!/usr/bin/env python
# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Main script for specedge.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
# Note: modules are lazily imported to speed up the startup time.
# pylint: disable=relative-beyond-top-level,import-outside-toplevel


def run():
    """Run specedge."""
    from .config.parse_arguments import parse_arguments
    args = parse_arguments()
    from .config.se_setup import configure, se_exit
    configure(args)
    if args.action == 'edge':
        from .commands import cmd_edge
        cmd_edge()
    if args.action == 'converge':
        from .commands import cmd_converge
        cmd_converge()
    if args.action == 'audit':
        from .commands import cmd_audit
        cmd_audit()
    if args.action == 'oracle':
        from .commands import cmd_oracle
        cmd_oracle()
    if args.action == 'negative-control':
        from .commands import cmd_negative_control
        cmd_negative_control()
    if args.action == 'print_report':
        from .commands import print_report
        print_report()
    se_exit(0)


def main():
    """Main entry point for specedge."""
    try:
        run()
    # pylint: disable=broad-except
    except Exception as err:
        from .config.utils import manage_uncaught_exception
        manage_uncaught_exception(err)
