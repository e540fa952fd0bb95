# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Large-entry checks: the Lindeberg term and the probability of entries
above ``epsilon sqrt(N)``.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import logging
import numpy as np
from scipy import stats
from ..config import config
logger = logging.getLogger(__name__.rsplit('.', maxsplit=1)[-1])

LINDEBERG_THRESHOLD = 1e-3
LINDEBERG_MIN_DECAY = 1.
TAIL_MC_DRAWS = 1000000
# two-sided 99% normal quantile
CI_99_Z = float(stats.norm.ppf(0.995))


class TailEstimate():
    """A tail quantity with the upper end of its confidence interval."""
    def __init__(self, value, upper=None):
        self.value = float(value)
        self.upper = self.value if upper is None else float(upper)

    def __repr__(self):
        return f'TailEstimate({self.value:.6g}, upper={self.upper:.6g})'


def monte_carlo_tail(dist, c, draws=None, seed=0):
    """
    Monte Carlo estimates of ``P(|X| >= c)`` and ``E[X**2; |X| >= c]``.

    :param dist: entry distribution
    :type dist: EntryDistribution
    :param c: level
    :type c: float
    :param draws: number of draws (None: configured value)
    :type draws: int
    :param seed: random seed
    :type seed: int
    :return: probability and truncated second moment, with 99% upper
        confidence bounds
    :rtype: tuple of TailEstimate
    """
    if draws is None:
        draws = config.get('tail_mc_draws', TAIL_MC_DRAWS)
    rng = np.random.Generator(np.random.Philox(key=seed))
    x = dist.sample(rng, draws)
    above = np.abs(x) >= c
    estimates = []
    for values in (above.astype(float), np.where(above, x**2, 0.)):
        mean = values.mean()
        sem = values.std(ddof=1) / np.sqrt(draws)
        estimates.append(TailEstimate(mean, mean + CI_99_Z * sem))
    return tuple(estimates)


def _tail(dist, c, which):
    """Tail probability (which=0) or truncated second moment (which=1)."""
    if config.get('tail_method', 'analytic') == 'montecarlo':
        return monte_carlo_tail(dist, c)[which]
    if which == 0:
        return TailEstimate(dist.tail_probability(c))
    return TailEstimate(dist.tail_second_moment(c))


def _profile_sum(dist, S, level, which):
    """
    Sum over entries of a tail quantity of ``sigma_ij x``, at the given
    level, grouping equal variances.
    """
    S = np.asarray(S, dtype=float)
    values, counts = np.unique(S[S > 0], return_counts=True)
    total = TailEstimate(0.)
    for s, count in zip(values, counts):
        est = _tail(dist, level / np.sqrt(s), which)
        scale = count * (s if which == 1 else 1.)
        total = TailEstimate(
            total.value + scale * est.value, total.upper + scale * est.upper)
    return total


class TrendReport():
    """
    Values of a check along a grid of sizes, with the fitted log-log
    slope.
    """
    def __init__(self, name, N_grid, values, passed, slope=None, **details):
        self.name = name
        self.N_grid = list(N_grid)
        self.values = [float(v) for v in values]
        self.passed = bool(passed)
        self.slope = slope
        self.details = details

    def __repr__(self):
        return f'TrendReport({self.name}, passed={self.passed})'

    def __bool__(self):
        return self.passed

    def to_dict(self):
        """Serialize to a JSON-compatible dict."""
        return {
            'check': self.name,
            'N': self.N_grid,
            'values': self.values,
            'slope': self.slope,
            'passed': self.passed,
            **self.details
        }


def loglog_slope(N_grid, values):
    """
    Least squares slope of ``log(values)`` against ``log(N)``, with its
    standard error. Only positive values are fitted.

    :return: slope and standard error, or (None, None) if fewer than two
        values are positive
    :rtype: tuple
    """
    N_grid = np.asarray(N_grid, dtype=float)
    values = np.asarray(values, dtype=float)
    positive = values > 0
    if positive.sum() < 2:
        return None, None
    fit = stats.linregress(np.log(N_grid[positive]), np.log(values[positive]))
    return float(fit.slope), float(fit.stderr)


def check_lindeberg(dist, profile, N, epsilon=None, threshold=None):
    """
    Lindeberg term ``N**-2 sum_ij E[a_ij**2; |a_ij| >= epsilon sqrt(N)]``.

    :param dist: entry distribution
    :type dist: EntryDistribution
    :param profile: variance profile
    :type profile: ProfileSpec
    :param N: matrix size
    :type N: int
    :param epsilon: level (None: configured value)
    :type epsilon: float
    :param threshold: pass threshold (None: configured value)
    :type threshold: float
    :return: value, upper confidence bound and pass flag
    :rtype: dict
    """
    if epsilon is None:
        epsilon = config.get('epsilon', 1.)
    if threshold is None:
        threshold = config.get('lindeberg_threshold', LINDEBERG_THRESHOLD)
    total = _profile_sum(
        dist, profile.variance_matrix(N), epsilon * np.sqrt(N), 1)
    value = total.value / N**2
    upper = total.upper / N**2
    return {
        'N': N,
        'epsilon': epsilon,
        'value': value,
        'upper': upper,
        'threshold': threshold,
        'passed': bool(upper <= threshold)
    }


def _decays(N_grid, values, min_decay):
    """Decay test: nonincreasing and fitted slope below ``-min_decay``."""
    values = np.asarray(values, dtype=float)
    if np.all(values == 0):
        return True, None
    slope, stderr = loglog_slope(N_grid, values)
    nonincreasing = bool(np.all(np.diff(values) <= 0))
    if slope is None:
        # a single positive value followed by zeros
        return nonincreasing and values[-1] == 0, None
    return nonincreasing and slope < -min_decay, slope


def lindeberg_trend(dist, profile, N_grid=None, epsilon=None,
                    threshold=None, min_decay=None):
    """
    Lindeberg term along a grid of sizes.

    The check passes if the term is below the threshold at the largest
    size and decays at least like ``N**-min_decay``. Slower decay is
    flagged.

    :return: the trend report
    :rtype: TrendReport
    """
    if N_grid is None:
        N_grid = config.get('audit_N_list', [48, 96, 192])
    if min_decay is None:
        min_decay = config.get('lindeberg_min_decay', LINDEBERG_MIN_DECAY)
    checks = [
        check_lindeberg(dist, profile, N, epsilon, threshold)
        for N in N_grid]
    values = [check['value'] for check in checks]
    decays, slope = _decays(N_grid, values, min_decay)
    below = checks[-1]['passed']
    if not decays:
        logger.info(
            f'Lindeberg term for {dist} decays slower than N^-{min_decay:g}'
            f' (slope {slope})')
    return TrendReport(
        'lindeberg', N_grid, values, decays and below, slope,
        flagged=not decays, below_threshold=below,
        upper=[check['upper'] for check in checks])


def check_max_to_zero(dist, N_grid=None, epsilon=None, profile=None):
    """
    Expected number of entries above ``epsilon sqrt(N)``, along a grid
    of sizes.

    The check passes if the values are all zero, or nonincreasing with a
    negative fitted slope.

    :param dist: entry distribution
    :type dist: EntryDistribution
    :param N_grid: sizes (None: configured audit sizes)
    :type N_grid: list of int
    :param epsilon: level (None: configured value)
    :type epsilon: float
    :param profile: variance profile (None: unit variances)
    :type profile: ProfileSpec
    :return: the trend report
    :rtype: TrendReport
    """
    if N_grid is None:
        N_grid = config.get('audit_N_list', [48, 96, 192])
    if epsilon is None:
        epsilon = config.get('epsilon', 1.)
    values = []
    for N in N_grid:
        S = np.ones((N, N)) if profile is None else profile.variance_matrix(N)
        values.append(_profile_sum(dist, S, epsilon * np.sqrt(N), 0).value)
    passed, slope = _decays(N_grid, values, 0.)
    return TrendReport('max_to_zero', N_grid, values, passed, slope,
                       epsilon=epsilon)
