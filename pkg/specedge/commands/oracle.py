# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Toy-scale oracle suite: exact identities of the trace expansion checked
by enumeration, rational arithmetic and Monte Carlo.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import math
import logging
import numpy as np
from tqdm import tqdm
from ..config import config, se_exit
from ..profiles import (
    ProfileError, StepProfile, graphon_of, wigner_profile)
from ..moments import (
    GuardExceededError, bad_cycle_sum, check_bad_cycle_bound,
    trace_monte_carlo, xi_bound, m_even, m_even_sequence)
from ..moments.trace import CYCLE_MAX_N, CYCLE_MAX_K
from ..trees import TreeCapExceededError, catalan, enumerate_trees
from .experiment import write_csv, write_json
logger = logging.getLogger(__name__.rsplit('.', maxsplit=1)[-1])

ORACLE_FIELDS = [
    'profile', 'N', 'k', 'check', 'value', 'reference', 'passed']
# relative tolerance between the two tree sum methods
METHOD_REL_TOL = 1e-9
MAX_RANDOM_INTERVALS = 3


class OracleRow():
    """One oracle comparison."""
    def __init__(self, profile, N, k, check, value, reference, passed):
        self.profile = profile
        self.N = N
        self.k = k
        self.check = check
        self.value = float(value)
        self.reference = None if reference is None else float(reference)
        self.passed = bool(passed)

    def __repr__(self):
        return (
            f'OracleRow({self.check}, profile={self.profile}, N={self.N}, '
            f'k={self.k}, passed={self.passed})')

    def to_dict(self):
        """Serialize to a JSON-compatible dict."""
        return {field: getattr(self, field) for field in ORACLE_FIELDS}


def random_step_profile(rng, max_intervals=MAX_RANDOM_INTERVALS):
    """
    Random symmetric step profile, with breakpoints on a 0.1 grid.

    :param rng: random generator
    :type rng: numpy.random.Generator
    :param max_intervals: largest number of intervals
    :type max_intervals: int
    :rtype: StepProfile
    """
    m = int(rng.integers(1, max_intervals + 1))
    inner = np.sort(rng.choice(np.arange(1, 10), size=m - 1, replace=False))
    breakpoints = np.concatenate([[0.], inner / 10, [1.]])
    sigma = np.round(rng.uniform(0, 1, (m, m)), 3)
    sigma = np.triu(sigma) + np.triu(sigma, 1).T
    return StepProfile(breakpoints, sigma)


def oracle_profiles(profile, n_random, seed):
    """
    The configured profile followed by n_random random step profiles.

    :raises ValueError: for rectangular profiles
    """
    if profile.is_rectangular:
        raise ValueError(
            f'The oracle needs a symmetric profile, got {profile}')
    rng = np.random.default_rng(seed)
    return [profile] + [random_step_profile(rng) for _ in range(n_random)]


def _variance_matrix(profile, N):
    S = profile.variance_matrix(N)
    if not np.array_equal(S, S.T):
        raise ValueError(
            f'Variance matrix of {profile} at N={N} is not symmetric')
    return S


def _check_guards(N_list, k_list):
    if max(N_list) > CYCLE_MAX_N or max(k_list) > CYCLE_MAX_K \
            or min(k_list) < 1:
        raise GuardExceededError(
            f'Oracle sizes must satisfy N <= {CYCLE_MAX_N} and '
            f'1 <= k <= {CYCLE_MAX_K}, got N={N_list}, k={k_list}')


def _entry_moments(dist, q_max):
    moments = dist.moments(q_max)
    if not all(math.isfinite(m) for m in moments):
        raise ValueError(
            f'The oracle needs finite entry moments up to order {q_max}; '
            f'{dist} has finite moments below order '
            f'{dist.max_finite_moment:g}')
    return moments


def configuration_oracles(name, profile, N, k, dist, moments, mc_seed):
    """
    Oracles of one (profile, N, k) configuration.

    :return: oracle rows
    :rtype: list of OracleRow
    """
    S = _variance_matrix(profile, N)
    exact = all(m == 0 for m in moments[1::2])
    decomposition = bad_cycle_sum(k, N, S, moments, exact=exact)
    M = decomposition.M_exact
    rows = [OracleRow(
        name, N, k, 'labeling_vs_walks', decomposition.good_sum, M,
        decomposition.good_sum == M if exact
        else math.isclose(decomposition.good_sum, M, rel_tol=1e-12))]
    estimate = trace_monte_carlo(
        k, S, dist, config.get('oracle_mc_samples', 100000), mc_seed)
    rows.append(OracleRow(
        name, N, k, 'trace_monte_carlo', estimate.mean,
        decomposition.trace_expectation,
        estimate.agrees_with(decomposition.trace_expectation)))
    support_C = config.get('oracle_support_C', 1.)
    if dist.bound <= support_C:
        bound = check_bad_cycle_bound(
            k, N, S, support_C, config.get('oracle_epsilon', 0.5), moments)
        rows.append(OracleRow(
            name, N, k, 'bad_cycle_bound', bound.lhs, bound.rhs, bound.holds))
    g = graphon_of(profile, N)
    xi = xi_bound(k, N, profile)
    normalized = float(M) / N**(k + 1)
    rows.append(OracleRow(
        name, N, k, 'graphon_inequality', normalized, xi,
        normalized <= xi * (1 + 1e-12)))
    # recorded, not a pass/fail condition
    rows.append(OracleRow(
        name, N, k, 'graphon_gap', xi - normalized, 3 * k**2 / N, True))
    by_trees = m_even(k, g, method='trees')
    by_recursion = float(m_even_sequence(k, g, 'recursion')[k])
    rows.append(OracleRow(
        name, N, k, 'recursion_vs_trees', by_recursion, by_trees,
        math.isclose(by_recursion, by_trees, rel_tol=METHOD_REL_TOL)))
    return rows


def catalan_oracles(tree_k_max=None, moment_k_max=None):
    """
    Tree counts and moments of the constant graphon against the Catalan
    numbers.

    :return: oracle rows
    :rtype: list of OracleRow
    """
    if tree_k_max is None:
        tree_k_max = config.get('oracle_tree_k_max', 12)
    if moment_k_max is None:
        moment_k_max = config.get('oracle_catalan_k_max', 10)
    rows = []
    for k in range(tree_k_max + 1):
        count = sum(1 for _ in enumerate_trees(k))
        rows.append(OracleRow(
            'catalan', None, k, 'tree_count', count, catalan(k),
            count == catalan(k)))
    g = wigner_profile().limit_graphon()
    moments = m_even_sequence(moment_k_max, g, 'recursion')
    for k in range(moment_k_max + 1):
        by_trees = m_even(k, g, method='trees')
        for check, value in (
                ('wigner_moment_recursion', moments[k]),
                ('wigner_moment_trees', by_trees)):
            rows.append(OracleRow(
                'catalan', None, k, check, value, catalan(k),
                round(value) == catalan(k) and
                abs(value - catalan(k)) <= 1e-9 * catalan(k)))
    return rows


def run_oracle_suite(profile, dist, N_list=None, k_list=None,
                     n_random=None, seed=None):
    """
    Run the oracle suite.

    :param profile: symmetric variance profile
    :type profile: ProfileSpec
    :param dist: entry distribution with finite moments
    :type dist: EntryDistribution
    :return: oracle rows
    :rtype: list of OracleRow
    :raises GuardExceededError: if sizes are beyond the enumeration guards
    :raises ValueError: for rectangular or asymmetric profiles, or
        entries with infinite moments
    """
    if N_list is None:
        N_list = config.get('oracle_N_list', [4, 5, 6])
    if k_list is None:
        k_list = config.get('oracle_k_list', [1, 2, 3])
    if n_random is None:
        n_random = config.get('oracle_n_profiles', 3)
    if seed is None:
        seed = config.get('oracle_seed', 12345)
    _check_guards(N_list, k_list)
    moments = _entry_moments(dist, 2 * max(k_list))
    profiles = oracle_profiles(profile, n_random, seed)
    # reject asymmetric inputs before any oracle runs
    for p in profiles:
        for N in N_list:
            _variance_matrix(p, N)
    configurations = [
        (index, p, N, k) for index, p in enumerate(profiles)
        for N in N_list for k in k_list]
    rows = []
    for position, (index, p, N, k) in enumerate(tqdm(
            configurations, unit='configurations',
            disable=not config.get('progress', False))):
        name = 'configured' if index == 0 else f'random-{index}'
        rows.extend(configuration_oracles(
            name, p, N, k, dist, moments, seed + position + 1))
    rows.extend(catalan_oracles())
    return rows


def cmd_oracle():
    """
    Run the oracle suite and exit with code 2 on any failure.

    :return: oracle rows
    :rtype: list of OracleRow
    """
    try:
        rows = run_oracle_suite(config.profile, config.distribution)
    except (GuardExceededError, ValueError, ProfileError,
            TreeCapExceededError) as msg:
        logger.error(msg)
        se_exit(1)
    failed = [row for row in rows if not row.passed]
    write_csv(
        'oracle.csv', ORACLE_FIELDS,
        ([getattr(row, f) for f in ORACLE_FIELDS] for row in rows))
    write_json('oracle.json', {
        'passed': not failed,
        'n_checks': len(rows),
        'n_failed': len(failed),
        'rows': [row.to_dict() for row in rows]
    })
    logger.info(f'{len(rows) - len(failed)}/{len(rows)} oracle checks passed')
    for row in failed:
        logger.error(
            f'Oracle failed: {row.check} (profile {row.profile}, '
            f'N={row.N}, k={row.k}): {row.value:.10g} vs '
            f'{row.reference:.10g}')
    if failed:
        se_exit(2)
    return rows
