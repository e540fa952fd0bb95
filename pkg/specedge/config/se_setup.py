# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Setup functions for specedge.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import sys
import os
import json
import logging
import signal
import tqdm
from .._version import get_versions
from .config import config
from .utils import (
    ConfigError, parse_configspec, read_json_config, write_sample_config,
    err_exit
)
# pylint: disable=global-statement,import-outside-toplevel

logger = None  # pylint: disable=invalid-name
# Filled by _check_library_versions(), in banner order
LIBRARY_VERSIONS = {}

# Actions that run an experiment from a JSON config
EXPERIMENT_ACTIONS = (
    'edge', 'converge', 'audit', 'oracle', 'negative-control'
)

# ANSI colors for console log levels, from the highest level down
LEVEL_COLORS = (
    (logging.ERROR, '\x1b[31;1m'),    # red
    (logging.WARNING, '\x1b[33;1m'),  # yellow
    (logging.INFO, '\x1b[0m'),
    (logging.DEBUG, '\x1b[35;1m'),    # purple
)


def _check_library_versions():
    import numpy
    import scipy
    LIBRARY_VERSIONS.clear()
    LIBRARY_VERSIONS['Python'] = '.'.join(map(str, sys.version_info[:3]))
    LIBRARY_VERSIONS['NumPy'] = numpy.__version__
    LIBRARY_VERSIONS['SciPy'] = scipy.__version__


def _make_outdir(outdir):
    """Create the output directory and its README, if missing."""
    os.makedirs(outdir, exist_ok=True)
    readme = os.path.join(outdir, 'README.txt')
    if os.path.exists(readme):
        return
    with open(readme, 'w', encoding='utf8') as fp:
        fp.write(
            'This is the specedge output directory.\n\n'
            'Every CSV row and JSON report carries the hash of the config '
            'that\nproduced it. Re-running the same config reproduces the '
            'same outputs.\n')


def _level_color(levelno):
    for level, color in LEVEL_COLORS:
        if levelno >= level:
            return color
    return '\x1b[0m'


def _colorize(emit):
    """
    Wrap a handler emitter to color-code messages by level.

    Source: https://stackoverflow.com/a/20707569/2021880
    """
    def _emit(record):
        record.msg = f'{_level_color(record.levelno)}{record.msg}\x1b[0m'
        return emit(record)
    return _emit


class TqdmLoggingHandler(logging.Handler):
    """A logging handler that writes through ``tqdm.write``."""

    def emit(self, record):
        try:
            tqdm.tqdm.write(self.format(record))
            self.flush()
        except (ValueError, TypeError, OSError):
            self.handleError(record)


def _setup_logging(progname, action_name):
    """
    Log DEBUG and above to a file in the output directory, for experiment
    actions, and INFO and above to the console.
    """
    global logger
    root = logging.getLogger()
    root.setLevel(logging.DEBUG)
    logging.captureWarnings(True)

    if action_name in EXPERIMENT_ACTIONS:
        _make_outdir(config.outdir)
        logfile = os.path.join(config.outdir, f'{progname}.{action_name}.log')
        filehand = logging.FileHandler(filename=logfile, mode='a')
        filehand.setLevel(logging.DEBUG)
        filehand.setFormatter(logging.Formatter(
            '%(asctime)s %(name)-20s %(levelname)-8s %(message)s'))
        root.addHandler(filehand)

    console = TqdmLoggingHandler()
    console.setLevel(logging.INFO)
    if sys.platform != 'win32' and sys.stdout.isatty():
        console.emit = _colorize(console.emit)
    root.addHandler(console)

    logger = logging.getLogger(progname)
    logger.debug(f'{progname} START')
    logger.debug(f"{progname} version: {get_versions()['version']}")
    for library, version in LIBRARY_VERSIONS.items():
        logger.debug(f'{library} version: {version}')
    logger.debug(f'Command line: {" ".join(sys.argv)}')


def _save_config_copy(raw_config):
    """Save the raw config, with its hash, to the output directory."""
    outfile = os.path.join(config.outdir, 'specedge.config.json')
    with open(outfile, 'w', encoding='utf8') as fp:
        json.dump(
            {'config_hash': config.config_hash, 'config': raw_config},
            fp, indent=2, sort_keys=True
        )
        fp.write('\n')


def configure(args):
    """
    Configure specedge.

    This function is called by the main script to set up the configuration
    object and the logging infrastructure.

    :param args: The parsed command-line arguments.
    :type args: argparse.Namespace
    """
    try:
        configspec = parse_configspec()
    except ConfigError as msg:
        err_exit(msg)
    if args.action == 'sample_config':
        write_sample_config(configspec, 'specedge')
        sys.exit(0)
    if args.action not in EXPERIMENT_ACTIONS:
        config.populate({'args': args, 'progress': sys.stderr.isatty()})
        _check_library_versions()
        _setup_logging('specedge', args.action)
        return
    from ..commands.experiment import load_experiment_config
    try:
        raw_config = read_json_config(args.configfile)
        loaded = load_experiment_config(raw_config, configspec)
    except (ConfigError, ValueError, TypeError) as msg:
        err_exit(msg)
    config.populate(loaded)
    config.args = args
    config.command = args.action
    config.threads = max(1, args.threads)
    config.progress = sys.stderr.isatty()
    if args.outdir is not None:
        config.outdir = args.outdir
    if config.outdir is None:
        config.outdir = 'specedge_out'
    _check_library_versions()
    _setup_logging('specedge', args.action)
    _save_config_copy(raw_config)
    logger.info(f'Config hash: {config.config_hash}')


def se_exit(retval=0, abort=False, progname='specedge'):
    """Exit as gracefully as possible."""
    if abort:
        print('\nAborting.')
        if logger is not None:
            logger.debug(f'{progname} ABORTED\n\n')
    elif logger is not None:
        logger.debug(f'{progname} END\n\n')
    logging.shutdown()
    sys.exit(retval)


def sigint_handler(_sig, _frame):
    """Abort gracefully."""
    se_exit(1, abort=True)


signal.signal(signal.SIGINT, sigint_handler)
