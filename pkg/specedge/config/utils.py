# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Utility functions for specedge.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import os
import sys
import json
import hashlib
from configobj import ConfigObj, ParseError, flatten_errors
from configobj.validate import Validator

# Keys of an experiment config that are not validated by the configspec
NESTED_KEYS = ('profile', 'distribution', 'partition')


class ConfigError(Exception):
    """Exception raised for invalid experiment configurations."""


def err_exit(msg):
    """
    Exit with error message.

    :param msg: Error message.
    :type msg: str
    """
    msg = str(msg)
    sys.stderr.write(msg + '\n')
    sys.exit(1)


def parse_configspec():
    """
    Parse configuration specification file.

    :return: Configuration specification object.
    :rtype: configobj.ConfigObj
    """
    curdir = os.path.dirname(__file__)
    configspec_file = os.path.join(curdir, 'configspec.conf')
    try:
        return ConfigObj(
            configspec_file, interpolation=False, list_values=False,
            _inspec=True, file_error=True, default_encoding='utf8'
        )
    except (IOError, ParseError) as err:
        raise ConfigError(f'Unable to read configspec: {err}') from err


def read_json_config(config_file):
    """
    Read a JSON experiment config.

    :param config_file: path to the JSON file
    :type config_file: str
    :return: raw config
    :rtype: dict
    :raises ConfigError: if the file cannot be read or is not a JSON object
    """
    try:
        with open(config_file, 'r', encoding='utf8') as fp:
            raw = json.load(fp)
    except OSError as err:
        raise ConfigError(err) from err
    except json.JSONDecodeError as err:
        raise ConfigError(f'Unable to read "{config_file}": {err}') from err
    if not isinstance(raw, dict):
        raise ConfigError(f'"{config_file}" must contain a JSON object')
    return raw


def validate_config(flat_config, configspec):
    """
    Validate the scalar keys of an experiment config.

    Missing keys take the configspec default.

    :param flat_config: config keys, without the nested objects
    :type flat_config: dict
    :param configspec: configuration specification
    :type configspec: configobj.ConfigObj
    :return: validated values
    :rtype: dict
    :raises ConfigError: on unknown keys or invalid values
    """
    unknown = sorted(set(flat_config) - set(configspec.keys()))
    if unknown:
        raise ConfigError(f'Unknown config keys: {", ".join(unknown)}')
    config_obj = ConfigObj(flat_config, configspec=configspec)
    test = config_obj.validate(Validator(), preserve_errors=True)
    if test is not True:
        messages = []
        for _section, key, error in flatten_errors(config_obj, test):
            value = flat_config.get(key, '<missing>')
            reason = error if error else 'missing value'
            messages.append(f'Invalid value for "{key}": "{value}" ({reason})')
        raise ConfigError('\n'.join(messages))
    validated = config_obj.dict()
    # Set to None all the 'None' strings
    for key, value in validated.items():
        if value == 'None':
            validated[key] = None
    return validated


def config_hash(raw_config):
    """
    Hash of a raw experiment config.

    The hash is computed on the canonical JSON form, so key order and
    whitespace do not matter.

    :param raw_config: raw config
    :type raw_config: dict
    :return: first 16 hex digits of the SHA-256 digest
    :rtype: str
    """
    canonical = json.dumps(raw_config, sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(canonical.encode('utf8')).hexdigest()[:16]


def sample_config(configspec):
    """
    Build a sample experiment config with default values.

    :param configspec: configuration specification
    :type configspec: configobj.ConfigObj
    :return: sample config
    :rtype: dict
    """
    defaults = validate_config({}, configspec)
    sample = {
        'profile': {'variant': 'band', 'p': 0.5},
        'distribution': {'name': 'gaussian'},
    }
    sample.update(defaults)
    return sample


def write_sample_config(configspec, progname):
    """
    Write a sample configuration file.

    :param configspec: Configuration specification file.
    :type configspec: configobj.ConfigObj
    :param progname: Program name.
    :type progname: str
    """
    configfile = f'{progname}.json'
    with open(configfile, 'w', encoding='utf8') as fp:
        json.dump(sample_config(configspec), fp, indent=2)
        fp.write('\n')
    print(f'Sample config file written to: "{configfile}"')


def manage_uncaught_exception(exception):
    """
    Manage an uncaught exception.

    :param exception: Exception object.
    :type exception: Exception
    """
    # pylint: disable=import-outside-toplevel
    from .. import __version__
    import traceback
    import numpy as np
    import scipy as sp
    sys.stderr.write("""
# BEGIN TRACEBACK #############################################################
""")
    sys.stderr.write('\n')
    traceback.print_exc()
    sys.stderr.write("""
# END TRACEBACK ###############################################################
""")
    sys.stderr.write("""

Congratulations, you've found a bug in specedge! 🐞

Please report it on the project issue tracker.

Include the following information in your report:

""")
    sys.stderr.write(f'  specedge version: {__version__}\n')
    sys.stderr.write(f'  Python version: {sys.version}\n')
    sys.stderr.write(f'  NumPy version: {np.__version__}\n')
    sys.stderr.write(f'  SciPy version: {sp.__version__}\n')
    sys.stderr.write(f'  Platform: {sys.platform}\n')
    sys.stderr.write(f'  Command line: {" ".join(sys.argv)}\n')
    sys.stderr.write(f'  Error message: {str(exception)}\n')
    sys.stderr.write('\n')
    sys.stderr.write(
        'Also, please copy and paste the traceback above in your '
        'report.\n\n')
    sys.stderr.write('Thank you for your help!\n\n')
    sys.exit(1)
