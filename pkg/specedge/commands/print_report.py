# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Print JSON reports to screen.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import json
import logging
from ..config import config, generic_printer, se_exit
logger = logging.getLogger(__name__.rsplit('.', maxsplit=1)[-1])


def read_report(report_file):
    """
    Read a JSON report.

    :raises ValueError: if the file is not a specedge report
    """
    try:
        with open(report_file, 'r', encoding='utf8') as fp:
            report = json.load(fp)
    except json.JSONDecodeError as err:
        raise ValueError(f'Unable to read "{report_file}": {err}') from err
    if not isinstance(report, dict) or 'schema_version' not in report:
        raise ValueError(f'"{report_file}" is not a specedge report')
    return report


def _edge_tables(report):
    moments = report['moments']
    rows = [
        (k, m, root, ratio) for k, m, root, ratio in zip(
            range(1, moments['k_max'] + 1), moments['m_even'][1:],
            moments['edge_root'], moments['edge_ratio'])]
    headers_fmt = [
        ('k', None), ('m_2k', '.8g'), ('edge\nroot', '.6f'),
        ('edge\nratio', '.6f')]
    estimates = [
        (est['method'], est['K'], est['value'], est['lower'], est['upper'])
        for est in moments['estimates'].values()]
    estimate_fmt = [
        ('method', None), ('K', None), ('edge', '.6f'), ('lower', '.6f'),
        ('upper', '.6f')]
    return [
        ('Even moments', rows, headers_fmt),
        ('Edge estimates', estimates, estimate_fmt)]


def _converge_tables(report):
    summary = report['diagnostics']['summary']
    rows = [
        (row['N'], row['median'], row['iqr'], row['predicted'], row['gap'])
        for row in summary]
    headers_fmt = [
        ('N', None), ('median', '.6f'), ('IQR', '.2e'),
        ('predicted', '.6f'), ('gap', '.2e')]
    tables = [('Rescaled norms', rows, headers_fmt)]
    truncation = report['diagnostics'].get('truncation')
    if truncation:
        trunc_rows = [
            (row['N'], row['n_truncated'], row['gt_norm'],
             row['mean_shift_norm']) for row in truncation]
        trunc_fmt = [
            ('N', None), ('truncated\nentries', '.1f'),
            ('|A_gt|/sqrt(N)', '.4f'), ('mean shift', '.2e')]
        tables.append(('Truncation', trunc_rows, trunc_fmt))
    return tables


def _audit_tables(report):
    checks = [
        (name, check.get('applicable', True), check['passed'])
        for name, check in report['checks'].items()]
    routes = [
        (name, route['qualifies'], route['almost_sure'])
        for name, route in report['qualifies'].items()]
    return [
        ('Checks', checks,
         [('check', None), ('applicable', None), ('passed', None)]),
        ('Qualifies for', routes,
         [('result', None), ('qualifies', None), ('almost sure', None)])]


def _oracle_tables(report):
    rows = [
        (row['profile'], row['N'], row['k'], row['check'], row['value'],
         row['reference'], row['passed'])
        for row in report['rows']]
    headers_fmt = [
        ('profile', None), ('N', None), ('k', None), ('check', None),
        ('value', '.8g'), ('reference', '.8g'), ('passed', None)]
    return [('Oracle checks', rows, headers_fmt)]


TABLES = {
    'edge': _edge_tables,
    'converge': _converge_tables,
    'negative-control': _converge_tables,
    'audit': _audit_tables,
    'oracle': _oracle_tables,
}


def print_report():
    """Print a JSON report produced by another command."""
    args = config.args
    try:
        report = read_report(args.report_file)
    except (OSError, ValueError) as msg:
        logger.error(msg)
        se_exit(1)
    command = report.get('command')
    try:
        tables = TABLES[command](report)
    except KeyError as err:
        logger.error(
            f'Unsupported report (command "{command}", missing {err})')
        se_exit(1)
    for title, rows, headers_fmt in tables:
        generic_printer(rows, headers_fmt, args.format, title=title)
