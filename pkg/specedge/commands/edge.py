# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Edge prediction from the even moments of the limit graphon.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import logging
from ..config import config, se_exit
from ..profiles import ProfileError, CallableGraphon
from ..moments import gram_moments, discretization_sweep
from ..trees import TreeCapExceededError
from .experiment import (
    predict_edge, prediction_graphon, write_csv, write_json)
logger = logging.getLogger(__name__.rsplit('.', maxsplit=1)[-1])


def cmd_edge():
    """
    Compute the even moments of the limit graphon and all edge
    estimates.

    Rectangular profiles also get the moments and the edge of the
    spectral distribution of ``A A^T / N``. Callable limits also get the
    edges of their step approximations.

    :return: the moment report
    :rtype: MomentReport
    """
    profile = config.profile
    try:
        report = predict_edge(profile)
        g, _source = prediction_graphon(profile)
    except (ProfileError, TreeCapExceededError, ValueError) as msg:
        logger.error(msg)
        se_exit(1)
    payload = {
        'profile': profile.to_dict(),
        'moments': report.to_dict()
    }
    if profile.is_rectangular:
        payload['gram'] = {
            'c': profile.c,
            'edge': report.metadata['gram_edge'],
            'edge_root': report.metadata['gram_edge_root'],
            'moments': gram_moments(g, profile.c, report.k_max).tolist()
        }
    if isinstance(g, CallableGraphon):
        sweep = discretization_sweep(g)
        payload['discretization'] = [
            {'n': n, **estimate.to_dict()} for n, estimate in sweep]
        write_csv(
            'edge_discretization.csv', ['n', 'edge', 'method', 'K'],
            ((n, est.value, est.method, est.K) for n, est in sweep))
    write_csv(
        'edge_moments.csv', ['k', 'm_2k', 'edge_root', 'edge_ratio'],
        report.rows())
    write_json('edge.json', payload)
    headline = report.headline
    logger.info(
        f'Predicted edge: {headline.value:.6f} '
        f'({headline.method}, K={headline.K})')
    logger.info(
        f'Bracket: [{headline.lower:.6f}, {headline.upper:.6f}] '
        '(root lower bound, 2 sqrt(sup))')
    if profile.is_rectangular:
        logger.info(
            f'Gram edge (c={profile.c:g}): '
            f'{report.metadata["gram_edge"]:.6f}')
    if report.low_confidence:
        logger.warning('Quadrature not converged: low confidence estimate')
    return report
