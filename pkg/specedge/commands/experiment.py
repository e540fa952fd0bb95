# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Experiment configuration, edge prediction and result writers shared by
the specedge commands.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import os
import csv
import json
import logging
import numpy as np
from .._version import get_versions
from ..config import config
from ..config.utils import ConfigError, NESTED_KEYS, validate_config, \
    config_hash
from ..profiles import (
    ProfileError, profile_from_dict, graphon_of, limit_graphon)
from ..sampler import distribution_from_dict
from ..checkers import PartitionError, partition_from_dict
from ..moments import moment_report, gram_edge
logger = logging.getLogger(__name__.rsplit('.', maxsplit=1)[-1])

SCHEMA_VERSION = 1
DEFAULT_OUTDIR = 'specedge_out'
# report keys holding lists of result rows
ROW_KEYS = ('rows', 'summary', 'truncation')


def _check_ascending(values, key):
    if not values:
        raise ConfigError(f'"{key}" must not be empty')
    if any(b <= a for a, b in zip(values[:-1], values[1:])):
        raise ConfigError(f'"{key}" must be strictly ascending: {values}')
    if values[0] < 1:
        raise ConfigError(f'"{key}" values must be positive: {values}')


def load_experiment_config(raw_config, configspec):
    """
    Validate a raw JSON experiment config.

    :param raw_config: the JSON object of the config file
    :type raw_config: dict
    :param configspec: configuration specification
    :type configspec: configobj.ConfigObj
    :return: validated config, with the parsed profile, distribution and
        partition, and the config hash
    :rtype: dict
    :raises ConfigError: if the config is invalid
    """
    if not isinstance(raw_config, dict):
        raise ConfigError('The experiment config must be a JSON object')
    flat = {
        key: value for key, value in raw_config.items()
        if key not in NESTED_KEYS}
    loaded = validate_config(flat, configspec)
    if 'profile' not in raw_config:
        raise ConfigError('The experiment config has no "profile" object')
    try:
        loaded['profile'] = profile_from_dict(raw_config['profile'])
    except ProfileError as err:
        raise ConfigError(f'Invalid "profile": {err}') from err
    try:
        loaded['distribution'] = distribution_from_dict(
            raw_config.get('distribution', 'gaussian'))
    except ValueError as err:
        raise ConfigError(f'Invalid "distribution": {err}') from err
    partition = raw_config.get('partition')
    try:
        loaded['partition'] = (
            None if partition is None else partition_from_dict(partition))
    except (ValueError, PartitionError) as err:
        raise ConfigError(f'Invalid "partition": {err}') from err
    for key in ('N_list', 'audit_N_list', 'oracle_N_list'):
        _check_ascending(loaded[key], key)
    if not loaded['seeds']:
        raise ConfigError('"seeds" must not be empty')
    if len(set(loaded['seeds'])) != len(loaded['seeds']):
        raise ConfigError(f'"seeds" must be distinct: {loaded["seeds"]}')
    if len(loaded['richardson_K']) < 2:
        raise ConfigError('"richardson_K" needs at least two orders')
    loaded['config_hash'] = config_hash(raw_config)
    return loaded


def prediction_graphon(profile, N_list=None):
    """
    Graphon used to predict the edge of a profile.

    This is the limit graphon when the profile declares one, otherwise
    the graphon induced by the largest size of N_list.

    :param profile: variance profile
    :type profile: ProfileSpec
    :param N_list: matrix sizes (None: configured sizes)
    :type N_list: list of int
    :return: the graphon and a description of its source
    :rtype: tuple
    :raises ProfileError: if the profile cannot be evaluated
    """
    try:
        return limit_graphon(profile), 'limit'
    except ProfileError:
        if N_list is None:
            N_list = config.get('N_list', [256, 512, 1024])
        N = max(N_list)
        logger.warning(
            f'The {profile} profile has no limit graphon: predicting the '
            f'edge from the graphon induced at N={N}')
        return graphon_of(profile, N), f'N={N}'


def predict_edge(profile, k_max=None, method=None):
    """
    Moment report of the graphon of a profile.

    For rectangular profiles, the metadata also carries the edge of the
    spectral distribution of ``A A^T / N`` for the headline and root
    estimates.

    :param profile: variance profile
    :type profile: ProfileSpec
    :return: the report
    :rtype: MomentReport
    """
    g, source = prediction_graphon(profile)
    report = moment_report(g, k_max, method)
    report.metadata['graphon_source'] = source
    if profile.is_rectangular:
        report.metadata['c'] = profile.c
        report.metadata['gram_edge'] = gram_edge(
            report.headline.value, profile.c)
        report.metadata['gram_edge_root'] = gram_edge(
            report.estimates['root'].value, profile.c)
    return report


class ExperimentResult():
    """
    Outcome of a sampling experiment.

    :param command: command name
    :type command: str
    :param rows: per (N, seed) rows
    :type rows: list of dict
    :param prediction: predicted edge with method metadata
    :type prediction: dict
    :param diagnostics: convergence diagnostics
    :type diagnostics: dict
    :param checks: checker summaries
    :type checks: dict
    """
    def __init__(self, command, rows, prediction, diagnostics, checks=None):
        self.command = command
        self.rows = rows
        self.prediction = prediction
        self.diagnostics = diagnostics
        self.checks = {} if checks is None else checks

    def __repr__(self):
        return (
            f'ExperimentResult({self.command}, rows={len(self.rows)}, '
            f'passed={self.passed})')

    @property
    def passed(self):
        """True if every recorded check passed."""
        return all(
            check.get('passed', True) for check in self.checks.values())

    def to_dict(self):
        """Serialize to a JSON-compatible dict."""
        return {
            'command': self.command,
            'prediction': self.prediction,
            'diagnostics': self.diagnostics,
            'checks': self.checks,
            'rows': self.rows
        }


def output_path(filename):
    """Path of an output file, in the configured output directory."""
    outdir = config.get('outdir') or DEFAULT_OUTDIR
    os.makedirs(outdir, exist_ok=True)
    return os.path.join(outdir, filename)


def _json_default(obj):
    """Convert numpy scalars and arrays for the JSON encoder."""
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, tuple):
        return list(obj)
    raise TypeError(f'Object of type {type(obj).__name__} is not JSON '
                    'serializable')


def write_csv(filename, fieldnames, rows):
    """
    Write rows to a CSV file in the output directory.

    Every row starts with the config hash.

    :param filename: file name
    :type filename: str
    :param fieldnames: column names
    :type fieldnames: list of str
    :param rows: rows, as sequences matching fieldnames
    :type rows: iterable
    :return: the file path
    :rtype: str
    """
    path = output_path(filename)
    digest = config.get('config_hash', '')
    with open(path, 'w', encoding='utf8', newline='') as fp:
        writer = csv.writer(fp)
        writer.writerow(['config_hash'] + list(fieldnames))
        for row in rows:
            writer.writerow([digest] + [
                v.item() if isinstance(v, np.generic) else v for v in row])
    logger.info(f'Output written to {path}')
    return path


def stamp_rows(payload, digest):
    """
    Copy of a report where every result row carries the config hash.

    Result rows are the dicts listed under one of ROW_KEYS, at any depth.

    :param payload: report content
    :type payload: dict
    :param digest: config hash
    :type digest: str
    :return: the stamped copy
    :rtype: dict
    """
    if not isinstance(payload, dict):
        return payload
    stamped = {}
    for key, value in payload.items():
        if (key in ROW_KEYS and isinstance(value, list) and
                all(isinstance(row, dict) for row in value)):
            stamped[key] = [{'config_hash': digest, **row} for row in value]
        else:
            stamped[key] = stamp_rows(value, digest)
    return stamped


def write_json(filename, payload):
    """
    Write a JSON report to the output directory.

    Result rows are stamped with the config hash, as CSV rows are.

    :param filename: file name
    :type filename: str
    :param payload: report content
    :type payload: dict
    :return: the file path
    :rtype: str
    """
    path = output_path(filename)
    digest = config.get('config_hash')
    report = {
        'schema_version': SCHEMA_VERSION,
        'config_hash': digest,
        'command': config.get('command'),
        'specedge_version': get_versions()['version'],
        **stamp_rows(payload, digest)
    }
    with open(path, 'w', encoding='utf8') as fp:
        json.dump(report, fp, indent=2, default=_json_default)
        fp.write('\n')
    logger.info(f'Output written to {path}')
    return path
