# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Tree homomorphism densities and even moments of graphons.

Densities are computed on cell space: a step grid contributes its cell
widths and values, a callable graphon is first averaged on the uniform
quadrature grid.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from itertools import islice
import numpy as np
from tqdm import tqdm
from ..config import config
from ..profiles import (
    StepGrid, CallableGraphon, discretize, graphon_of, quadrature_resolution)
from ..trees import enumerate_trees, catalan, tree_cap, TreeCapExceededError
logger = logging.getLogger(__name__.rsplit('.', maxsplit=1)[-1])

TREE_BATCH_SIZE = 4096


def cell_space(g, resolution=None):
    """
    Cell weights and cell values of a graphon.

    :param g: graphon
    :type g: Graphon
    :param resolution: quadrature resolution for callables
        (None: configured value)
    :type resolution: int
    :return: weights (summing to 1) and the symmetric value matrix
    :rtype: tuple of numpy.ndarray
    """
    if isinstance(g, CallableGraphon):
        if resolution is None:
            resolution = g.resolution or quadrature_resolution()
        g = discretize(g, resolution)
    if not isinstance(g, StepGrid):
        raise TypeError(f'Unsupported graphon type: {type(g).__name__}')
    return g.widths, g.values


def _tree_density(parent, w, V):
    f = np.ones((len(parent), len(w)))
    for v in range(len(parent) - 1, 0, -1):
        f[parent[v]] *= V @ (w * f[v])
    return w @ f[0]


def hom_density(tree, g, resolution=None):
    """
    Homomorphism density of an ordered tree in a graphon.

    Bottom-up dynamic programming: leaves carry the constant 1, each
    vertex multiplies the kernel transforms of its children, and the
    result is the integral of the root function.

    :param tree: ordered tree
    :type tree: OrderedTree
    :param g: graphon
    :type g: Graphon
    :param resolution: quadrature resolution for callables
    :type resolution: int
    :return: the density
    :rtype: float
    """
    w, V = cell_space(g, resolution)
    return float(_tree_density(tree.parent, w, V))


def _check_k(k):
    if k < 0:
        raise ValueError(f'k must be nonnegative: {k}')
    cap = tree_cap()
    if k > cap:
        raise TreeCapExceededError(f'k={k} exceeds the tree cap ({cap})')


def _moments_recursion(k_max, w, V):
    """
    Even moments from the plane tree recursion.

    ``F_0 = 1``, ``F_k = sum_j (V (w F_j)) F_(k-1-j)``, ``m_2k = w . F_k``.
    """
    F = [np.ones(len(w))]
    G = []
    for k in range(1, k_max + 1):
        G.append(V @ (w * F[k - 1]))
        F.append(sum(G[j] * F[k - 1 - j] for j in range(k)))
    return np.array([w @ f for f in F])


def _batch_densities(batch, w, V):
    return np.array([_tree_density(tree.parent, w, V) for tree in batch])


def _moment_trees(k, w, V, threads=None, batch_size=None):
    """Sum of tree densities, reduced in enumeration order."""
    if threads is None:
        threads = config.get('threads', 1)
    if batch_size is None:
        batch_size = config.get('tree_batch_size', TREE_BATCH_SIZE)
    trees = enumerate_trees(k)
    batches = iter(lambda: list(islice(trees, batch_size)), [])
    nbatches = -(-catalan(k) // batch_size)
    densities = []
    # submit a few batches at a time, so that trees are never all in memory
    with ThreadPoolExecutor(max_workers=threads) as executor, tqdm(
        total=nbatches, desc=f'trees k={k}', unit='batch',
        disable=not config.get('progress', False) or nbatches < 2
    ) as pbar:
        while window := list(islice(batches, 2 * threads)):
            densities.extend(executor.map(
                lambda b: _batch_densities(b, w, V), window))
            pbar.update(len(window))
    return float(np.sum(np.concatenate(densities)))


def m_even_sequence(k_max, g, method=None, resolution=None):
    """
    Even moments ``m_0, m_2, ..., m_2k_max`` of a graphon.

    :param k_max: largest moment order divided by two
    :type k_max: int
    :param g: graphon
    :type g: Graphon
    :param method: "recursion" or "trees" (None: configured value)
    :type method: str
    :param resolution: quadrature resolution for callables
    :type resolution: int
    :return: the moments, indexed by k
    :rtype: numpy.ndarray
    :raises TreeCapExceededError: if k_max exceeds the tree cap
    """
    _check_k(k_max)
    if method is None:
        method = config.get('moment_method', 'recursion')
    w, V = cell_space(g, resolution)
    if method == 'recursion':
        return _moments_recursion(k_max, w, V)
    if method == 'trees':
        return np.array(
            [1.] + [_moment_trees(k, w, V) for k in range(1, k_max + 1)])
    raise ValueError(f'Unknown moment method: {method}')


def m_even(k, g, method=None, resolution=None):
    """
    Even moment ``m_2k``: the sum of the homomorphism densities of all
    ordered trees with k edges.

    :param k: number of tree edges
    :type k: int
    :param g: graphon
    :type g: Graphon
    :param method: "recursion" or "trees" (None: configured value)
    :type method: str
    :param resolution: quadrature resolution for callables
    :type resolution: int
    :return: the moment
    :rtype: float
    :raises TreeCapExceededError: if k exceeds the tree cap
    """
    _check_k(k)
    if method is None:
        method = config.get('moment_method', 'recursion')
    if method == 'trees':
        w, V = cell_space(g, resolution)
        return 1. if k == 0 else _moment_trees(k, w, V)
    return float(m_even_sequence(k, g, method, resolution)[k])


def xi_bound(k, N, profile, method=None):
    """
    Sum over trees with k edges of the densities in the graphon induced
    by the variances of size N.

    This bounds the normalized sum over injective labelings from above.

    :param k: number of tree edges
    :type k: int
    :param N: matrix size
    :type N: int
    :param profile: variance profile
    :type profile: ProfileSpec
    :return: the bound
    :rtype: float
    """
    return m_even(k, graphon_of(profile, N), method)


def quadrature_gap(g, k_max, resolution=None, check_resolution=None):
    """
    Relative gap of ``m_2k_max`` between two quadrature resolutions.

    Step grids are exact and return 0.

    :return: the relative gap
    :rtype: float
    """
    if not isinstance(g, CallableGraphon):
        return 0.
    if resolution is None:
        resolution = g.resolution or quadrature_resolution()
    if check_resolution is None:
        check_resolution = config.get('quadrature_check_resolution', 256)
    fine = m_even_sequence(k_max, g, 'recursion', resolution)[k_max]
    coarse = m_even_sequence(k_max, g, 'recursion', check_resolution)[k_max]
    if fine == 0:
        return 0. if coarse == 0 else np.inf
    return float(abs(fine - coarse) / fine)
