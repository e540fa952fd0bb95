# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Negative control: the convergence sweep with heavy-tailed entries.

Without a finite fourth moment the rescaled norm is expected to grow
with N. The truncation diagnostics show where the growth comes from:
the few entries above ``N**(1/2 - eta)``.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import logging
import numpy as np
from ..config import config, se_exit
from ..config.utils import ConfigError
from ..profiles import ProfileError
from ..spectra import PowerIterationError
from ..trees import TreeCapExceededError
from .experiment import ExperimentResult, predict_edge, write_csv, write_json
from .converge import (
    SAMPLE_FIELDS, TRUNCATION_FIELDS, run_sweep, summarize,
    convergence_diagnostics, prediction_dict, check_memory_guard)
logger = logging.getLogger(__name__.rsplit('.', maxsplit=1)[-1])


def strictly_increasing(values):
    """True if every value is larger than the previous one."""
    return bool(np.all(np.diff(values) > 0))


def truncation_summary(rows, N_list):
    """Per-size means of the truncation diagnostics."""
    summary = []
    for N in N_list:
        sel = [row for row in rows if row['N'] == N]
        summary.append({
            'N': N,
            **{field: float(np.mean([row[field] for row in sel]))
               for field in TRUNCATION_FIELDS}
        })
    return summary


def divergence_verdict(dist, medians, gap_nonincreasing):
    """
    Compare the observed behaviour with the moment conditions of the
    entries.

    :return: expected and observed behaviour
    :rtype: dict
    """
    expect_divergence = not dist.has_4_plus_delta_moment
    diverging = strictly_increasing(medians)
    observed = 'diverging' if diverging else 'stable'
    if not expect_divergence:
        consistent = gap_nonincreasing or not diverging
    else:
        consistent = diverging
    return {
        'expected': 'diverging' if expect_divergence else 'stable',
        'observed': observed,
        'medians_strictly_increasing': diverging,
        'consistent': consistent
    }


def cmd_negative_control():
    """
    Run the convergence sweep and report the growth of the rescaled
    norms, with truncation diagnostics.

    :return: the experiment result
    :rtype: ExperimentResult
    """
    profile = config.profile
    dist = config.distribution
    N_list = config.N_list
    seeds = config.seeds
    try:
        if profile.is_rectangular:
            raise ConfigError(
                'The negative control needs a symmetric profile, '
                f'got {profile}')
        check_memory_guard(profile, N_list)
        report = predict_edge(profile)
    except (ConfigError, ValueError, ProfileError,
            TreeCapExceededError) as msg:
        logger.error(msg)
        se_exit(1)
    prediction = prediction_dict(report, profile)
    logger.info(
        f'Negative control with {dist} entries '
        f'(finite moments below order {dist.max_finite_moment:g})')
    try:
        rows = run_sweep(profile, dist, N_list, seeds, truncation=True)
    except PowerIterationError as msg:
        logger.error(msg)
        se_exit(1)
    summary = summarize(
        rows, N_list, prediction['edge'], prediction['edge_root'])
    diagnostics = convergence_diagnostics(summary)
    verdict = divergence_verdict(
        dist, diagnostics['medians'], diagnostics['gap_nonincreasing'])
    truncation = truncation_summary(rows, N_list)
    fields = SAMPLE_FIELDS + TRUNCATION_FIELDS
    write_csv(
        'negative_control_samples.csv', fields,
        ([row[f] for f in fields] for row in rows))
    result = ExperimentResult(
        'negative-control', rows, prediction,
        {**diagnostics, 'summary': summary, 'truncation': truncation},
        {'divergence': {**verdict, 'passed': verdict['consistent']}})
    write_json('negative_control.json', result.to_dict())
    for row, trunc in zip(summary, truncation):
        logger.info(
            f'N={row["N"]}: median {row["median"]:.6f}, '
            f'{trunc["n_truncated"]:.1f} truncated entries, '
            f'|A_gt|/sqrt(N) {trunc["gt_norm"]:.4f}')
    logger.info(
        f'Expected {verdict["expected"]}, observed {verdict["observed"]}')
    if not verdict['consistent']:
        logger.warning(
            'The observed behaviour does not match the moment conditions '
            'of the entries')
    return result
