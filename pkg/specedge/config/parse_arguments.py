# PYTHON_ARGCOMPLETE_OK
# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Argument parser for specedge.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import sys
import argparse
import argcomplete
from .._version import get_versions


class SubcommandHelpFormatter(argparse.RawDescriptionHelpFormatter):
    """
    Custom help formatter that removes the list of subcommands from the help
    message.

    See: https://stackoverflow.com/a/13429281/2021880
    """
    def _format_action(self, action):
        parts = super(
            argparse.RawDescriptionHelpFormatter, self
        )._format_action(action)
        if action.nargs == argparse.PARSER:
            parts = '\n'.join(parts.split('\n')[1:])
        return parts


def _positive_int(value):
    """Argparse type for strictly positive integers."""
    try:
        ivalue = int(value)
    except ValueError as err:
        raise argparse.ArgumentTypeError(
            f'invalid integer value: {value!r}') from err
    if ivalue < 1:
        raise argparse.ArgumentTypeError(f'must be at least 1: {value!r}')
    return ivalue


def parse_arguments(progname='specedge', argv=None):
    """
    Parse command line arguments.

    :param progname: Program name (default: "specedge").
    :type progname: str
    :param argv: argument list (default: ``sys.argv[1:]``)
    :type argv: list of str
    :return: Parsed arguments.
    :rtype: argparse.Namespace
    """
    parser = argparse.ArgumentParser(
        prog=progname,
        description=f'{progname}: spectral edge prediction and verification '
                    'for random matrices with a variance profile.',
        epilog='Use "%(prog)s <command> -h" for help on a specific command\n'
               '(example: "%(prog)s edge -h").',
        formatter_class=SubcommandHelpFormatter
    )
    subparser = parser.add_subparsers(dest='action', title='commands')
    subparser.metavar = '<command> [options]'
    parser.add_argument(
        '-v',
        '--version',
        action='version',
        version=f"%(prog)s {get_versions()['version']}",
    )
    # --- experiment
    #     a parent parser for the options shared by experiment commands
    experiment = argparse.ArgumentParser(add_help=False)
    experiment.add_argument(
        '-c',
        '--config',
        dest='configfile',
        type=str,
        default=f'{progname}.json',
        help=f'JSON config file (default: {progname}.json)',
    )
    experiment.add_argument(
        '-o',
        '--out',
        dest='outdir',
        type=str,
        default=None,
        help=f'save output to OUTDIR (default: the "outdir" config key, '
             f'or {progname}_out)',
    )
    experiment.add_argument(
        '-t',
        '--threads',
        type=_positive_int,
        default=1,
        help='number of worker threads (default: %(default)s)',
    )
    # ---
    # --- sample_config
    subparser.add_parser(
        'sample_config',
        help='write sample config file to current directory and exit'
    )
    # ---
    # --- edge
    subparser.add_parser(
        'edge',
        parents=[experiment],
        help='predict the spectral edge from the limiting even moments'
    )
    # ---
    # --- converge
    subparser.add_parser(
        'converge',
        parents=[experiment],
        help='sample matrices and compare rescaled norms to the prediction'
    )
    # ---
    # --- audit
    subparser.add_parser(
        'audit',
        parents=[experiment],
        help='check the profile and the entry distribution against the '
             'convergence assumptions'
    )
    # ---
    # --- oracle
    subparser.add_parser(
        'oracle',
        parents=[experiment],
        help='run the exact toy-scale oracle suite'
    )
    # ---
    # --- negative-control
    subparser.add_parser(
        'negative-control',
        parents=[experiment],
        help='run the convergence sweep expecting divergence for '
             'heavy-tailed entries'
    )
    # ---
    # --- print_report
    print_report = subparser.add_parser(
        'print_report',
        help='print a JSON report to screen'
    )
    print_report.add_argument('report_file', help='JSON report file')
    print_report.add_argument(
        '-f', '--format', type=str, default='simple',
        choices=['simple', 'markdown', 'csv'],
        help='format for the output table (default: %(default)s)'
    )
    # ---
    argcomplete.autocomplete(parser)
    args = parser.parse_args(argv)
    if args.action is None:
        parser.print_usage(sys.stderr)
        sys.stderr.write(
            f'{progname}: '
            'error: at least one positional argument is required\n'
        )
        sys.exit(2)
    return args
