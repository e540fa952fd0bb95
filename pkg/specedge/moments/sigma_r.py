# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Growth condition on the tree labeling sums.

The condition holds on a grid of sizes if there is a constant C_2 with
``M_N(k) <= C_2 N**(k+1) R**(2k)`` for all ``k <= C1 log N``.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import math
import logging
from ..config import config
from ..profiles import graphon_of
from ..trees import tree_cap
from .hom_density import m_even_sequence
from .trace import M_exact, LABELING_MAX_N, LABELING_MAX_K
logger = logging.getLogger(__name__.rsplit('.', maxsplit=1)[-1])

SIGMA_R_C2_MAX = 10.


class SigmaRReport():
    """
    Result of the growth condition check.

    ``C2`` is the smallest constant valid on the tested grid, ``witness``
    the ``(N, k, ratio)`` where it is attained.
    """
    def __init__(self, R, C1, rows, c2_max):
        self.R = R
        self.C1 = C1
        self.rows = rows
        best = max(rows, key=lambda row: row[3])
        self.C2 = best[3]
        self.witness = (best[0], best[1], best[3])
        self.c2_max = c2_max
        self.holds = self.C2 <= c2_max

    def __repr__(self):
        return (
            f'SigmaRReport(R={self.R:.6g}, C2={self.C2:.6g}, '
            f'holds={self.holds})')

    def to_dict(self):
        """Serialize to a JSON-compatible dict."""
        report = {
            'R': self.R,
            'C1': self.C1,
            'C2': self.C2,
            'C2_max': self.c2_max,
            'holds': self.holds,
            'grid': [
                {'N': N, 'k': k, 'source': source, 'ratio': ratio}
                for N, k, source, ratio in self.rows]
        }
        if not self.holds:
            N, k, ratio = self.witness
            report['violation'] = {'N': N, 'k': k, 'ratio': ratio}
        return report


def check_sigma_R(profile, R, C1=None, N_list=None, c2_max=None):
    """
    Check the growth condition with radius R.

    Exact labeling sums are used at toy sizes; larger sizes use the
    homomorphism relaxation ``N**(k+1) Xi_N(k)``, which bounds the
    labeling sum from above.

    :param profile: symmetric variance profile
    :type profile: ProfileSpec
    :param R: radius
    :type R: float
    :param C1: the largest order is ``floor(C1 log N)``, capped by the
        tree cap (None: configured value)
    :type C1: float
    :param N_list: sizes to test (None: configured audit sizes)
    :type N_list: list of int
    :param c2_max: largest accepted C_2 (None: configured value)
    :type c2_max: float
    :return: the report
    :rtype: SigmaRReport
    """
    if R <= 0:
        raise ValueError(f'R must be positive: {R}')
    if profile.is_rectangular:
        raise ValueError(
            f'The growth condition needs a symmetric profile, got {profile}')
    if C1 is None:
        C1 = config.get('sigma_C1', 1.5)
    if N_list is None:
        N_list = config.get('audit_N_list', [48, 96, 192])
    if c2_max is None:
        c2_max = config.get('sigma_r_c2_max', SIGMA_R_C2_MAX)
    rows = []
    for N in N_list:
        k_max = min(int(math.floor(C1 * math.log(N))), tree_cap())
        if N <= LABELING_MAX_N:
            S = profile.variance_matrix(N)
            k_exact = min(k_max, LABELING_MAX_K)
            rows.extend(
                (N, k, 'exact', M_exact(k, N, S) / (N**(k + 1) * R**(2 * k)))
                for k in range(k_exact + 1))
            k_start = k_exact + 1
        else:
            k_start = 0
        if k_start > k_max:
            continue
        xi = m_even_sequence(k_max, graphon_of(profile, N))
        rows.extend(
            (N, k, 'graphon', float(xi[k]) / R**(2 * k))
            for k in range(k_start, k_max + 1))
    report = SigmaRReport(R, C1, rows, c2_max)
    logger.debug(repr(report))
    return report
