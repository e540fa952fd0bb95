# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Assumption audit: run every applicable checker on the configured
profile and entry distribution, and report which convergence results
the configuration qualifies for.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import logging
import numpy as np
from ..config import config, se_exit
from ..profiles import (
    ProfileError, StepProfile, ContinuousProfile, RectStep, limit_graphon)
from ..sampler import SampleBatch, symmetrize
from ..spectra import operator_norm
from ..moments import check_sigma_R
from ..trees import TreeCapExceededError
from ..checkers import (
    PartitionError, lindeberg_trend, check_max_to_zero, check_doubling,
    check_l1_rate, validate_partition, split_interior, loglog_slope,
    partition_for_profile, partition_size, partition_variances)
from .experiment import predict_edge, write_csv, write_json
logger = logging.getLogger(__name__.rsplit('.', maxsplit=1)[-1])

EXPECTED_ERRORS = (ValueError, ProfileError, PartitionError)


def _not_applicable(name, err):
    logger.info(f'Check "{name}" not applicable: {err}')
    return {
        'check': name, 'applicable': False, 'reason': str(err),
        'passed': False}


def check_entry_moments(dist):
    """Moment conditions on the entry distribution."""
    return {
        'check': 'entry_moments',
        'distribution': dist.to_dict(),
        'finite_fourth_moment': dist.max_finite_moment > 4,
        'finite_4_plus_delta_moment': dist.has_4_plus_delta_moment,
        'passed': dist.max_finite_moment > 4
    }


def check_doubling_grid(profile, N_grid, diagonal_only=False):
    """Doubling inequality at every size of the grid."""
    name = 'diagonal_doubling' if diagonal_only else 'doubling'
    try:
        reports = [
            check_doubling(profile, N, diagonal_only=diagonal_only)
            for N in N_grid]
    except EXPECTED_ERRORS as err:
        return _not_applicable(name, err)
    return {
        'check': name,
        'applicable': True,
        'passed': all(reports),
        'equality': all(r.equality for r in reports),
        'reports': [r.to_dict() for r in reports]
    }


def _matrix_for_partition(profile, dist, N, seed):
    A = SampleBatch(profile, N, dist, [seed]).sample(seed)
    return symmetrize(A) if profile.is_rectangular else A


def check_partition(profile, dist, ps, N_grid, seed):
    """
    Validate the partition at every size of the grid, and measure the
    boundary part of one sample per size.

    ``boundary_norms`` are ``|A2|_op / sqrt(n)`` for the boundary part
    A2 of an n x n sample; they must decrease along the grid.
    """
    if ps is None:
        return _not_applicable(
            'partition', f'no partition for the {profile} profile')
    sizes = [partition_size(profile, N) for N in N_grid]
    try:
        reports = [
            validate_partition(
                ps, n, n_list=sizes, variances=partition_variances(profile, N))
            for N, n in zip(N_grid, sizes)]
    except EXPECTED_ERRORS as err:
        return _not_applicable('partition', err)
    boundary_norms = []
    for N, n in zip(N_grid, sizes):
        _A1, A2 = split_interior(
            _matrix_for_partition(profile, dist, N, seed), ps)
        boundary_norms.append(operator_norm(A2) / np.sqrt(n))
    slope, _stderr = loglog_slope(sizes, boundary_norms)
    boundary_decays = slope is None or slope < 0
    return {
        'check': 'partition',
        'applicable': True,
        'partition': ps.name,
        'passed': all(reports),
        'd': [r.ncells for r in reports],
        'reports': [r.to_dict() for r in reports],
        'boundary_norms': boundary_norms,
        'boundary_slope': slope,
        'boundary_decays': boundary_decays
    }


def check_growth(profile, N_grid):
    """Growth condition at the configured radius, or past the edge."""
    R = config.get('sigma_R')
    try:
        if R is None:
            edge = predict_edge(profile).headline.value
            R = edge + config.get('sigma_R_margin', 0.05)
        report = check_sigma_R(profile, R, N_list=N_grid)
    except EXPECTED_ERRORS + (TreeCapExceededError, ) as err:
        return _not_applicable('sigma_R', err)
    return {
        'check': 'sigma_R', 'applicable': True, 'passed': report.holds,
        **report.to_dict()}


def qualification(profile, checks):
    """
    Convergence results the configuration qualifies for.

    :param profile: variance profile
    :type profile: ProfileSpec
    :param checks: checker summaries, by name
    :type checks: dict
    :return: one entry per result, with its qualifying path
    :rtype: dict
    """
    def passed(name):
        return bool(checks[name].get('passed', False))

    entries = (
        passed('entry_moments') and passed('lindeberg') and
        passed('max_to_zero'))
    almost_sure = checks['entry_moments']['finite_4_plus_delta_moment']
    has_limit = checks['limit_graphon']['passed']
    via = []
    if has_limit and passed('doubling'):
        via.append('doubling')
    if passed('l1_rate'):
        via.append('graphon_rate')
    general = entries and bool(via)
    step_like = (
        entries and has_limit and passed('partition') and
        passed('diagonal_doubling'))
    rect = profile.is_rectangular
    gram = rect and almost_sure and (
        isinstance(profile.rect, RectStep) or has_limit)
    return {
        'norm_convergence': {
            'qualifies': general,
            'via': via,
            'almost_sure': general and almost_sure
        },
        'generalized_step_profile': {
            'qualifies': step_like,
            'almost_sure': step_like and almost_sure
        },
        'step_profile': {
            'qualifies': (
                isinstance(profile, StepProfile) and almost_sure),
            'almost_sure': isinstance(profile, StepProfile) and almost_sure
        },
        'continuous_profile': {
            'qualifies': (
                isinstance(profile, ContinuousProfile) and almost_sure),
            'almost_sure': (
                isinstance(profile, ContinuousProfile) and almost_sure)
        },
        'gram_symmetrized': {
            'qualifies': gram,
            'almost_sure': gram
        }
    }


def run_audit(profile, dist, partition=None, N_grid=None, seed=None):
    """
    Run all applicable checkers.

    :param profile: variance profile
    :type profile: ProfileSpec
    :param dist: entry distribution
    :type dist: EntryDistribution
    :param partition: partition (None: the natural partition of the
        profile)
    :type partition: PartitionSpec
    :param N_grid: sizes (None: configured audit sizes)
    :type N_grid: list of int
    :param seed: seed of the boundary samples (None: first configured)
    :type seed: int
    :return: checker summaries and qualification
    :rtype: dict
    """
    if N_grid is None:
        N_grid = config.get('audit_N_list', [48, 96, 192])
    if seed is None:
        seed = config.get('seeds', [0])[0]
    checks = {'entry_moments': check_entry_moments(dist)}
    checks['lindeberg'] = lindeberg_trend(dist, profile, N_grid).to_dict()
    checks['max_to_zero'] = check_max_to_zero(
        dist, N_grid, profile=profile).to_dict()
    try:
        limit_graphon(profile)
        checks['limit_graphon'] = {'check': 'limit_graphon', 'passed': True}
    except ProfileError as err:
        checks['limit_graphon'] = _not_applicable('limit_graphon', err)
    checks['doubling'] = check_doubling_grid(profile, N_grid)
    checks['diagonal_doubling'] = check_doubling_grid(
        profile, N_grid, diagonal_only=True)
    try:
        checks['l1_rate'] = check_l1_rate(profile, N_grid).to_dict()
    except EXPECTED_ERRORS as err:
        checks['l1_rate'] = _not_applicable('l1_rate', err)
    if partition is None:
        partition = partition_for_profile(profile)
    checks['partition'] = check_partition(
        profile, dist, partition, N_grid, seed)
    checks['sigma_R'] = check_growth(profile, N_grid)
    return {
        'profile': profile.to_dict(),
        'distribution': dist.to_dict(),
        'N': list(N_grid),
        'checks': checks,
        'qualifies': qualification(profile, checks)
    }


def cmd_audit():
    """
    Audit the configured profile and distribution.

    :return: checker summaries and qualification
    :rtype: dict
    """
    try:
        audit = run_audit(
            config.profile, config.distribution, config.get('partition'))
    except TreeCapExceededError as msg:
        logger.error(msg)
        se_exit(1)
    write_json('audit.json', audit)
    write_csv(
        'audit_checks.csv', ['check', 'applicable', 'passed'],
        ((name, check.get('applicable', True), check['passed'])
         for name, check in audit['checks'].items()))
    for name, check in audit['checks'].items():
        status = 'pass' if check['passed'] else 'FAIL'
        if not check.get('applicable', True):
            status = 'n/a'
        logger.info(f'{name:20s} {status}')
    qualified = [
        name for name, route in audit['qualifies'].items()
        if route['qualifies']]
    logger.info(
        'Qualifies for: '
        f'{", ".join(qualified) if qualified else "no convergence result"}')
    return audit
