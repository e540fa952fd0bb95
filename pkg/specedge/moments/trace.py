# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Exact trace expansion at toy scale.

The expected trace ``E tr(A**2k)`` is a sum over closed walks of length
2k. Walks whose graph is a tree traversed twice per edge ("good" walks)
add up to the sum over injective tree labelings; all other walks form
the bad-cycle remainder.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import logging
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
import numpy as np
from tqdm import tqdm
from ..config import config
from ..trees import enumerate_trees, cycle_to_graph
from ..sampler import sample_batch
logger = logging.getLogger(__name__.rsplit('.', maxsplit=1)[-1])

# Enumeration guards
LABELING_MAX_N = 8
LABELING_MAX_K = 4
CYCLE_MAX_N = 6
CYCLE_MAX_K = 3
# Monte Carlo tolerance, in standard errors
MC_N_SE = 4


class GuardExceededError(Exception):
    """Exception raised when an exact enumeration would be too large."""


def _check_variance_matrix(S, N):
    S = np.asarray(S, dtype=float)
    if S.shape != (N, N):
        raise ValueError(f'S must have shape ({N}, {N}), got {S.shape}')
    return S


def _as_fractions(S):
    return np.vectorize(Fraction, otypes=[object])(S)


def M_exact(k, N, S, exact=False):
    """
    Sum over ordered trees with k edges of the products of the variances
    along their edges, over all injective labelings in ``[N]``.

    :param k: number of tree edges
    :type k: int
    :param N: matrix size
    :type N: int
    :param S: N x N variance matrix
    :type S: array_like
    :param exact: use rational arithmetic
    :type exact: bool
    :return: the labeling sum
    :rtype: float or fractions.Fraction
    :raises GuardExceededError: if N > 8 or k > 4
    """
    if N > LABELING_MAX_N or k > LABELING_MAX_K:
        raise GuardExceededError(
            f'Exact labeling sum needs N <= {LABELING_MAX_N} and '
            f'k <= {LABELING_MAX_K}, got N={N}, k={k}')
    S = _check_variance_matrix(S, N)
    if k == 0:
        return Fraction(N) if exact else float(N)
    if exact:
        S = _as_fractions(S)
    labels = np.array(list(permutations(range(N), k + 1)))
    if len(labels) == 0:
        return Fraction(0) if exact else 0.
    total = Fraction(0) if exact else 0.
    for tree in enumerate_trees(k):
        weights = np.ones(len(labels), dtype=object if exact else float)
        for parent, child in tree.edges_dfs():
            weights = weights * S[labels[:, parent], labels[:, child]]
        total += sum(weights) if exact else float(np.sum(weights))
    return total


@lru_cache(maxsize=None)
def _classify_cycles(N, k):
    """
    Edge lists and multiplicities of all walks of length 2k in [N].

    :return: good and bad walks, as tuples of (edges, multiplicities)
        with 0-based edge endpoints
    """
    good = []
    bad = []
    for cycle in product(range(1, N + 1), repeat=2 * k):
        graph = cycle_to_graph(cycle)
        edges = tuple((a - 1, b - 1) for a, b in graph.edges)
        entry = (edges, tuple(graph.multiplicities))
        (good if graph.is_good else bad).append(entry)
    return tuple(good), tuple(bad)


class TraceDecomposition():
    """
    Decomposition ``E tr(A**2k) = M_exact + B_exact``.

    ``good_sum`` is the good-walk sum, equal to ``M_exact``.
    """
    def __init__(self, N, k, M_exact, B_exact, good_sum):
        self.N = N
        self.k = k
        self.M_exact = M_exact
        self.B_exact = B_exact
        self.good_sum = good_sum
        self.trace_expectation = M_exact + B_exact

    def __repr__(self):
        return (
            f'TraceDecomposition(N={self.N}, k={self.k}, '
            f'M_exact={float(self.M_exact):.10g}, '
            f'B_exact={float(self.B_exact):.10g}, '
            f'trace_expectation={float(self.trace_expectation):.10g})')

    def to_dict(self):
        """Serialize to a JSON-compatible dict."""
        return {
            'N': self.N,
            'k': self.k,
            'M_exact': float(self.M_exact),
            'B_exact': float(self.B_exact),
            'good_sum': float(self.good_sum),
            'trace_expectation': float(self.trace_expectation)
        }


def _entry_moment(s, q, moments, exact):
    """``E[a**q]`` for an entry of variance s."""
    m_q = moments[q]
    if m_q == 0:
        return Fraction(0) if exact else 0.
    if q % 2 == 0:
        return s**(q // 2) * m_q
    if exact:
        raise ValueError(
            'Exact arithmetic needs vanishing odd entry moments')
    return s**(q / 2) * m_q


def bad_cycle_sum(k, N, S, entry_moments, exact=False):
    """
    Exact trace decomposition by enumeration of all walks in ``[N]**2k``.

    The expectation of a walk is the product over its edges of the entry
    moments ``E[a_e**m_e]``, with ``E[a**q] = s**(q/2) E[x**q]``.

    :param k: half the walk length
    :type k: int
    :param N: matrix size
    :type N: int
    :param S: N x N variance matrix
    :type S: array_like
    :param entry_moments: raw moments ``E[x**q]`` of the unit variance
        entry distribution, for ``q = 0..2k``
    :type entry_moments: sequence of float
    :param exact: use rational arithmetic
    :type exact: bool
    :return: the decomposition
    :rtype: TraceDecomposition
    :raises GuardExceededError: if N > 6 or k > 3
    :raises ValueError: if moments are missing or not centered
    """
    if N > CYCLE_MAX_N or k > CYCLE_MAX_K or k < 1:
        raise GuardExceededError(
            f'Walk enumeration needs N <= {CYCLE_MAX_N} and '
            f'1 <= k <= {CYCLE_MAX_K}, got N={N}, k={k}')
    S = _check_variance_matrix(S, N)
    if len(entry_moments) < 2 * k + 1:
        raise ValueError(
            f'Entry moments up to order {2 * k} are needed, '
            f'got {len(entry_moments)} values')
    if entry_moments[0] != 1 or entry_moments[1] != 0:
        raise ValueError('Entry moments must start with m_0 = 1, m_1 = 0')
    if exact:
        S = _as_fractions(S)
        moments = [Fraction(m) for m in entry_moments]
        zero = Fraction(0)
    else:
        moments = [float(m) for m in entry_moments]
        zero = 0.
    good, bad = _classify_cycles(N, k)
    good_sum = zero
    for edges, _mults in good:
        term = Fraction(1) if exact else 1.
        for a, b in edges:
            term *= S[a, b]
        good_sum += term
    B = zero
    for edges, mults in tqdm(
            bad, desc=f'bad walks N={N} k={k}', unit='walk',
            disable=not config.get('progress', False)):
        if 1 in mults:
            continue
        term = Fraction(1) if exact else 1.
        for (a, b), m in zip(edges, mults):
            term *= _entry_moment(S[a, b], m, moments, exact)
        B += term
    return TraceDecomposition(N, k, M_exact(k, N, S, exact), B, good_sum)


class BoundCheck():
    """Result of an inequality check ``lhs <= rhs``."""
    def __init__(self, lhs, rhs):
        self.lhs = lhs
        self.rhs = rhs
        self.holds = lhs <= rhs
        self.slack = rhs - lhs

    def __repr__(self):
        return (
            f'BoundCheck(lhs={float(self.lhs):.6g}, '
            f'rhs={float(self.rhs):.6g}, holds={self.holds})')

    def __bool__(self):
        return bool(self.holds)

    def to_dict(self):
        """Serialize to a JSON-compatible dict."""
        return {
            'lhs': float(self.lhs),
            'rhs': float(self.rhs),
            'slack': float(self.slack),
            'holds': bool(self.holds)
        }


def bad_cycle_bound(k, N, S, support_bound, epsilon, exact=False):
    """
    Upper bound of the bad-cycle sum for entries bounded by
    ``support_bound * N**(1/2 - epsilon)``.

    :return: the bound
    :rtype: float or fractions.Fraction
    """
    if exact:
        entry_bound = Fraction(support_bound)
    else:
        entry_bound = support_bound * N**(0.5 - epsilon)
    labeling = [M_exact(t, N, S, exact) for t in range(k)]
    total = 0
    for s in range(1, k + 1):
        inner = sum(
            (4 * k**4)**(4 * (s + 1 - t)) * labeling[t - 1]
            for t in range(1, min(s + 1, k) + 1))
        total += (4 * k**5)**(2 * k - 2 * s) * \
            entry_bound**(2 * k - 2 * s) * inner
    return total


def check_bad_cycle_bound(k, N, S, support_bound, epsilon,
                          entry_moments=None):
    """
    Check that the bad-cycle sum is below its combinatorial bound.

    Arithmetic is exact when ``epsilon == 1/2`` and the entries have
    vanishing odd moments.

    :param k: half the walk length
    :type k: int
    :param N: matrix size
    :type N: int
    :param S: N x N variance matrix
    :type S: array_like
    :param support_bound: constant C of the entry bound
    :type support_bound: float
    :param epsilon: exponent of the entry bound
    :type epsilon: float
    :param entry_moments: raw entry moments (None: Rademacher)
    :type entry_moments: sequence of float
    :return: the check, with ``lhs = |B|``
    :rtype: BoundCheck
    """
    if entry_moments is None:
        entry_moments = [0. if q % 2 else 1. for q in range(2 * k + 1)]
    exact = (
        Fraction(epsilon) == Fraction(1, 2) and
        all(m == 0 for m in entry_moments[1::2]))
    decomposition = bad_cycle_sum(k, N, S, entry_moments, exact)
    rhs = bad_cycle_bound(k, N, S, support_bound, epsilon, exact)
    return BoundCheck(abs(decomposition.B_exact), rhs)


class MonteCarloEstimate():
    """Sample mean and standard error."""
    def __init__(self, mean, stderr, n_samples):
        self.mean = mean
        self.stderr = stderr
        self.n_samples = n_samples

    def __repr__(self):
        return (
            f'MonteCarloEstimate(mean={self.mean:.8g}, '
            f'stderr={self.stderr:.3g}, n_samples={self.n_samples})')

    def agrees_with(self, value, n_se=MC_N_SE):
        """True if value is within n_se standard errors of the mean."""
        tol = max(n_se * self.stderr, 1e-9 * (1 + abs(float(value))))
        return abs(self.mean - float(value)) <= tol

    def to_dict(self):
        """Serialize to a JSON-compatible dict."""
        return {
            'mean': self.mean,
            'stderr': self.stderr,
            'n_samples': self.n_samples
        }


def trace_monte_carlo(k, S, dist, n_samples, seed, batch_size=None):
    """
    Monte Carlo estimate of ``E tr(A**2k)``.

    :param k: half the power
    :type k: int
    :param S: N x N variance matrix
    :type S: array_like
    :param dist: entry distribution
    :type dist: EntryDistribution
    :param n_samples: number of sampled matrices
    :type n_samples: int
    :param seed: random seed
    :type seed: int
    :param batch_size: matrices per batch (None: configured value)
    :type batch_size: int
    :return: the estimate
    :rtype: MonteCarloEstimate
    """
    if batch_size is None:
        batch_size = config.get('oracle_mc_batch', 10000)
    S = np.asarray(S, dtype=float)
    traces = []
    for batch, start in enumerate(range(0, n_samples, batch_size)):
        size = min(batch_size, n_samples - start)
        A = sample_batch(S, dist, seed, size, stream=batch)
        Ak = np.linalg.matrix_power(A, k)
        # tr(A**2k) = ||A**k||_F**2 for symmetric A
        traces.append(np.sum(Ak * Ak, axis=(1, 2)))
    traces = np.concatenate(traces)
    stderr = traces.std(ddof=1) / np.sqrt(n_samples) if n_samples > 1 else 0.
    return MonteCarloEstimate(float(traces.mean()), float(stderr), n_samples)
