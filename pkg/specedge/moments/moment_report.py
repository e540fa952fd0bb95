# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Edge estimates from even moments, and moment reports.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import math
import logging
import numpy as np
from ..config import config
from ..profiles import CallableGraphon, discretize, quadrature_resolution
from ..trees import tree_cap
from .hom_density import m_even_sequence, quadrature_gap
logger = logging.getLogger(__name__.rsplit('.', maxsplit=1)[-1])

EDGE_K = 12
EDGE_METHODS = ('root', 'ratio', 'richardson')
RICHARDSON_K = (8, 10, 12)
QUADRATURE_REL_TOL = 1e-3


class EdgeEstimate():
    """
    An estimate of the right edge of the limit spectral distribution.

    ``lower`` is the certified lower bound ``m_2K**(1/2K)``, ``upper``
    the bracket ``2 sqrt(V_0)`` with ``V_0`` the sup of the graphon.
    """
    def __init__(self, value, method, K, lower, upper, degenerate=False):
        self.value = value
        self.method = method
        self.K = K
        self.lower = lower
        self.upper = upper
        self.degenerate = degenerate

    def __repr__(self):
        return (
            f'EdgeEstimate({self.method}: {self.value:.6g}, K={self.K}, '
            f'bracket=[{self.lower:.6g}, {self.upper:.6g}]'
            f'{", degenerate" if self.degenerate else ""})')

    def __float__(self):
        return float(self.value)

    def to_dict(self):
        """Serialize to a JSON-compatible dict."""
        return {
            'value': self.value,
            'method': self.method,
            'K': self.K,
            'lower': self.lower,
            'upper': self.upper,
            'degenerate': self.degenerate
        }


def _ratio(moments, K):
    return math.sqrt(moments[K] / moments[K - 1])


def richardson_nodes(K):
    """
    Moment orders used by Richardson extrapolation at order K.

    The configured orders are shifted so that the largest one is K.
    """
    nodes = config.get('richardson_K', RICHARDSON_K)
    shift = K - max(nodes)
    nodes = sorted({n + shift for n in nodes if n + shift >= 2})
    return nodes if len(nodes) >= 2 else [K - 1, K] if K >= 3 else [K]


def _richardson(moments, K):
    """Polynomial extrapolation of the ratio sequence to 1/K = 0."""
    nodes = richardson_nodes(K)
    h = [1 / n for n in nodes]
    value = 0.
    for i, n in enumerate(nodes):
        weight = 1.
        for j, hj in enumerate(h):
            if j != i:
                weight *= -hj / (h[i] - hj)
        value += weight * _ratio(moments, n)
    return value


def edge_estimate(g, K=None, method=None, moments=None):
    """
    Estimate the edge of the limit spectral distribution of a graphon.

    :param g: graphon
    :type g: Graphon
    :param K: moment order (None: configured value)
    :type K: int
    :param method: "root", "ratio" or "richardson"
        (None: configured value)
    :type method: str
    :param moments: precomputed even moments ``m_0..m_2K``, or None
    :type moments: sequence of float
    :return: the estimate, with its bracket
    :rtype: EdgeEstimate
    """
    if K is None:
        K = config.get('edge_K', EDGE_K)
    if method is None:
        method = config.get('edge_method', 'richardson')
    if method not in EDGE_METHODS:
        raise ValueError(f'Unknown edge method: {method}')
    if K < 1 or (method != 'root' and K < 2):
        raise ValueError(f'K={K} is too small for the {method} method')
    if moments is None:
        moments = m_even_sequence(K, g)
    upper = 2 * math.sqrt(g.sup)
    lower = float(moments[K])**(1 / (2 * K))
    if method == 'root':
        return EdgeEstimate(lower, method, K, lower, upper)
    nodes = richardson_nodes(K) if method == 'richardson' else [K]
    if any(moments[n - 1] <= 0 for n in nodes):
        logger.debug('Vanishing moments: degenerate edge estimate')
        return EdgeEstimate(0., method, K, 0., upper, degenerate=True)
    if method == 'ratio':
        value = _ratio(moments, K)
    else:
        value = min(max(_richardson(moments, K), lower), upper)
    return EdgeEstimate(value, method, K, lower, upper)


class MomentReport():
    """
    Even moments of a graphon with their edge estimates.

    :param m_even: moments ``m_0..m_2k_max``
    :type m_even: sequence of float
    :param estimates: edge estimates by method
    :type estimates: dict
    :param metadata: method metadata
    :type metadata: dict
    """
    def __init__(self, m_even, estimates, metadata):
        self.m_even = [float(m) for m in m_even]
        self.estimates = estimates
        self.metadata = metadata

    def __repr__(self):
        return (
            f'MomentReport(k_max={self.k_max}, '
            f'edge={self.headline.value:.6g} ({self.headline.method}))')

    @property
    def k_max(self):
        return len(self.m_even) - 1

    @property
    def edge_root(self):
        """``m_2k**(1/2k)`` for k = 1..k_max."""
        return [m**(1 / (2 * k)) for k, m in enumerate(self.m_even) if k]

    @property
    def edge_ratio(self):
        """``sqrt(m_2k / m_2k-2)`` for k = 1..k_max (nan if undefined)."""
        return [
            math.sqrt(m / self.m_even[k - 1]) if self.m_even[k - 1] > 0
            else math.nan
            for k, m in enumerate(self.m_even) if k]

    @property
    def headline(self):
        """The estimate of the configured headline method."""
        return self.estimates[self.metadata['edge_method']]

    @property
    def low_confidence(self):
        return self.metadata.get('low_confidence', False)

    def rows(self):
        """CSV rows ``(k, m_2k, edge_root, edge_ratio)``."""
        return [
            (k, self.m_even[k], root, ratio)
            for k, root, ratio in zip(
                range(1, self.k_max + 1), self.edge_root, self.edge_ratio)
        ]

    def to_dict(self):
        """Serialize to a JSON-compatible dict."""
        return {
            'k_max': self.k_max,
            'm_even': self.m_even,
            'edge_root': self.edge_root,
            'edge_ratio': [
                None if math.isnan(r) else r for r in self.edge_ratio],
            'estimates': {
                method: est.to_dict()
                for method, est in self.estimates.items()},
            'metadata': self.metadata
        }


def moment_report(g, k_max=None, method=None):
    """
    Compute the moments of a graphon and all edge estimates at order
    k_max.

    Callable graphons are checked for quadrature convergence: the report
    is flagged as low confidence if ``m_2k_max`` moves by more than the
    configured relative tolerance between the two quadrature grids.

    :param g: graphon
    :type g: Graphon
    :param k_max: largest order (None: configured edge_K)
    :type k_max: int
    :param method: moment method (None: configured value)
    :type method: str
    :return: the report
    :rtype: MomentReport
    """
    if k_max is None:
        k_max = config.get('edge_K', EDGE_K)
    moments = m_even_sequence(k_max, g, method)
    estimates = {
        m: edge_estimate(g, k_max, m, moments) for m in EDGE_METHODS}
    metadata = {
        'representation': g.representation,
        'moment_method': method or config.get('moment_method', 'recursion'),
        'edge_method': config.get('edge_method', 'richardson'),
        'richardson_K': richardson_nodes(k_max),
        'tree_cap': tree_cap(),
        'sup': g.sup,
    }
    if isinstance(g, CallableGraphon):
        gap = quadrature_gap(g, k_max)
        tol = config.get('quadrature_rel_tol', QUADRATURE_REL_TOL)
        metadata.update({
            'quadrature_resolution': g.resolution or quadrature_resolution(),
            'quadrature_check_resolution': config.get(
                'quadrature_check_resolution', 256),
            'exact_cells': g.cell_integral is not None,
            'quadrature_gap': gap,
            'low_confidence': bool(gap >= tol)
        })
        if gap >= tol:
            logger.warning(
                f'Quadrature not converged for {g.name}: relative gap '
                f'{gap:.2e} >= {tol:g}. The report is low confidence')
    return MomentReport(moments, estimates, metadata)


def gram_moments(g, c, k_max):
    """
    Moments of the limit spectral distribution of ``A A^T / N``.

    :param g: symmetrized graphon of a rectangular profile
    :type g: Graphon
    :param c: aspect ratio ``M / N``
    :type c: float
    :param k_max: largest moment order
    :type k_max: int
    :return: moments of order ``0..k_max``
    :rtype: numpy.ndarray
    """
    m = m_even_sequence(k_max, g)
    k = np.arange(k_max + 1)
    moments = (1 + c)**(k + 1) / (2 * c) * m
    moments[0] = 1.
    return moments


def gram_edge(edge, c):
    """
    Edge of the limit spectral distribution of ``A A^T / N`` from the
    edge of the symmetrized graphon.
    """
    return (1 + c) * float(edge)**2


def discretization_sweep(g, n_list=None, K=None, method=None):
    """
    Edge estimates of the step approximations of a graphon.

    :param g: graphon
    :type g: Graphon
    :param n_list: grid sizes (None: configured value)
    :type n_list: list of int
    :return: ``(n, estimate)`` pairs
    :rtype: list of tuple
    """
    if n_list is None:
        n_list = config.get('discretization_n', [4, 8, 16, 32, 64])
    return [
        (n, edge_estimate(discretize(g, n), K, method)) for n in n_list]
