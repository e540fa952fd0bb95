# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Doubling inequality and graphon convergence rate of variance profiles.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import logging
import numpy as np
from ..config import config
from ..profiles import graphon_of, limit_graphon, l1_distance
from .tails import TrendReport, loglog_slope, CI_99_Z
logger = logging.getLogger(__name__.rsplit('.', maxsplit=1)[-1])

DOUBLING_TOL = 1e-12
MAX_WITNESSES = 10
# distances below this value count as exactly zero
ZERO_DISTANCE = 1e-15
L1_RATE_SLACK = 0.05


class DoublingReport():
    """Result of the doubling inequality check at one size."""
    def __init__(self, N, violations, n_violations, equality,
                 diagonal_only=False):
        self.N = N
        self.diagonal_only = diagonal_only
        self.violations = violations
        self.n_violations = n_violations
        self.passed = n_violations == 0
        self.equality = equality

    def __repr__(self):
        return (
            f'DoublingReport(N={self.N}, passed={self.passed}, '
            f'equality={self.equality})')

    def __bool__(self):
        return self.passed

    def to_dict(self):
        """Serialize to a JSON-compatible dict."""
        return {
            'check': 'doubling',
            'N': self.N,
            'diagonal_only': self.diagonal_only,
            'passed': self.passed,
            'equality': self.equality,
            'n_violations': self.n_violations,
            'violations': self.violations
        }


def check_doubling(profile, N, tol=DOUBLING_TOL, diagonal_only=False):
    """
    Check ``s_ij(N) <= min(s_2i,2j(2N), s_2i-1,2j(2N), s_2i-1,2j-1(2N))``
    for all entries.

    With ``diagonal_only``, only ``s_ij(N) <= s_2i,2j(2N)`` is checked,
    as needed for generalized step profiles.

    :param profile: variance profile
    :type profile: ProfileSpec
    :param N: size
    :type N: int
    :param tol: tolerance on the inequality
    :type tol: float
    :param diagonal_only: compare with ``s_2i,2j(2N)`` only
    :type diagonal_only: bool
    :return: the report, with the first violations as 1-based indices
    :rtype: DoublingReport
    """
    S = profile.variance_matrix(N)
    S2 = profile.variance_matrix(2 * N)
    if S2.shape != (2 * S.shape[0], 2 * S.shape[1]):
        raise ValueError(
            f'Profile shapes {S.shape} and {S2.shape} are not related by '
            'doubling')
    # 0-based slices of the 1-based indices (2i, 2j), (2i-1, 2j), ...
    if diagonal_only:
        bound = S2[1::2, 1::2]
    else:
        bound = np.minimum.reduce(
            [S2[1::2, 1::2], S2[0::2, 1::2], S2[0::2, 0::2]])
    bad = np.argwhere(S > bound + tol)
    violations = [(int(i) + 1, int(j) + 1) for i, j in bad[:MAX_WITNESSES]]
    equality = bool(np.allclose(S, bound, rtol=0, atol=tol))
    return DoublingReport(N, violations, len(bad), equality, diagonal_only)


def check_l1_rate(profile, N_grid=None, D=None, slack=None):
    """
    Check that the induced graphons converge in L1 at rate ``N**-D``.

    The check passes if all distances vanish, or if the fitted log-log
    slope is at most ``-D``, within its 99% confidence margin plus a
    fixed slack.

    :param profile: variance profile with a limit graphon
    :type profile: ProfileSpec
    :param N_grid: sizes (None: configured audit sizes)
    :type N_grid: list of int
    :param D: demanded rate exponent (None: configured value)
    :type D: float
    :param slack: slope slack (None: configured value)
    :type slack: float
    :return: trend report; ``C`` is the smallest constant with
        ``distance <= C N**-D`` on the grid
    :rtype: TrendReport
    """
    if N_grid is None:
        N_grid = config.get('audit_N_list', [48, 96, 192])
    if D is None:
        D = config.get('l1_rate_D', 1.)
    if slack is None:
        slack = config.get('l1_rate_slack', L1_RATE_SLACK)
    W = limit_graphon(profile)
    distances = [l1_distance(graphon_of(profile, N), W) for N in N_grid]
    C = float(max(d * N**D for d, N in zip(distances, N_grid)))
    if all(d <= ZERO_DISTANCE for d in distances):
        return TrendReport(
            'l1_rate', N_grid, distances, True, None, D=D, C=0., exact=True)
    slope, stderr = loglog_slope(
        N_grid, [d if d > ZERO_DISTANCE else 0. for d in distances])
    if slope is None:
        passed = distances[-1] <= ZERO_DISTANCE
    else:
        passed = slope <= -D + CI_99_Z * stderr + slack
    return TrendReport(
        'l1_rate', N_grid, distances, passed, slope, D=D, C=C,
        stderr=stderr, exact=False)
