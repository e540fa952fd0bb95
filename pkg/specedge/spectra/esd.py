# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Empirical spectral distributions and reference laws.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import logging
import numpy as np
from scipy import stats
from scipy.integrate import quad
from ..config import config
from ..sampler import symmetrize
from .norms import check_symmetric
logger = logging.getLogger(__name__.rsplit('.', maxsplit=1)[-1])

HISTOGRAM_BINS = 100
PUSHFORWARD_TOL = 1e-8
SCALINGS = ('sqrtN', 'N-gram')


class EsdSummary():
    """
    Sorted rescaled eigenvalues and their histogram.

    :param eigenvalues: rescaled eigenvalues
    :type eigenvalues: numpy.ndarray
    :param bins: number of bins or bin edges
    :type bins: int or numpy.ndarray
    :param scaling: scaling mode
    :type scaling: str
    """
    def __init__(self, eigenvalues, bins=None, scaling=None):
        self.eigenvalues = np.sort(np.asarray(eigenvalues, dtype=float))
        self.scaling = scaling
        if bins is None:
            bins = config.get('histogram_bins', HISTOGRAM_BINS)
        lo, hi = self.eigenvalues[0], self.eigenvalues[-1]
        if np.ndim(bins) == 0 and lo == hi:
            lo, hi = lo - 0.5, hi + 0.5
        counts, self.edges = np.histogram(
            self.eigenvalues, bins=bins, range=(lo, hi))
        self.masses = counts / len(self.eigenvalues)

    def __repr__(self):
        return (
            f'EsdSummary(n={len(self.eigenvalues)}, '
            f'largest_abs={self.largest_abs:.6g}, scaling={self.scaling})')

    @property
    def largest_abs(self):
        """Largest eigenvalue modulus."""
        return float(max(abs(self.eigenvalues[0]), abs(self.eigenvalues[-1])))

    def to_dict(self):
        """Serialize the histogram to a JSON-compatible dict."""
        return {
            'scaling': self.scaling,
            'n': len(self.eigenvalues),
            'largest_abs': self.largest_abs,
            'edges': self.edges.tolist(),
            'masses': self.masses.tolist()
        }


def esd(A, scaling='sqrtN', bins=None):
    """
    Empirical spectral distribution of a matrix.

    "sqrtN" gives the eigenvalues of ``A / sqrt(N)`` for a symmetric A;
    "N-gram" gives the eigenvalues of ``A A^T / N`` for an M x N matrix.

    :param A: matrix
    :type A: numpy.ndarray
    :param scaling: "sqrtN" or "N-gram"
    :type scaling: str
    :param bins: number of bins, or fixed bin edges
        (None: configured value)
    :type bins: int or numpy.ndarray
    :return: the summary
    :rtype: EsdSummary
    """
    if scaling == 'sqrtN':
        A = check_symmetric(A)
        eigenvalues = np.linalg.eigvalsh(A) / np.sqrt(A.shape[0])
    elif scaling == 'N-gram':
        A = np.atleast_2d(np.asarray(A, dtype=float))
        eigenvalues = np.linalg.eigvalsh(A @ A.T) / A.shape[1]
    else:
        raise ValueError(
            f'Unknown scaling "{scaling}", use one of {", ".join(SCALINGS)}')
    return EsdSummary(eigenvalues, bins, scaling)


def ks_distance(e1, e2):
    """
    Kolmogorov distance between two empirical spectral distributions.

    :type e1: EsdSummary
    :type e2: EsdSummary
    :rtype: float
    """
    return float(stats.ks_2samp(e1.eigenvalues, e2.eigenvalues).statistic)


def semicircle_cdf(x):
    """Distribution function of the semicircle law on [-2, 2]."""
    x = np.clip(np.asarray(x, dtype=float), -2, 2)
    return 0.5 + x * np.sqrt(4 - x**2) / (4 * np.pi) + np.arcsin(x / 2) / np.pi


def semicircle_masses(edges):
    """Semicircle masses of the bins delimited by edges."""
    return np.diff(semicircle_cdf(edges))


def marchenko_pastur_density(x, c):
    """
    Marchenko-Pastur density of the spectrum of ``A A^T / N`` for an
    M x N matrix with unit variance entries and ``M / N = c <= 1``.
    """
    a, b = (1 - np.sqrt(c))**2, (1 + np.sqrt(c))**2
    x = np.asarray(x, dtype=float)
    inside = (x > a) & (x < b)
    density = np.zeros_like(x)
    xi = x[inside]
    density[inside] = np.sqrt((b - xi) * (xi - a)) / (2 * np.pi * c * xi)
    return density


def marchenko_pastur_masses(edges, c):
    """Marchenko-Pastur masses of the bins delimited by edges."""
    if not 0 < c <= 1:
        raise ValueError(f'Aspect ratio must be in (0, 1]: {c}')
    a, b = (1 - np.sqrt(c))**2, (1 + np.sqrt(c))**2
    masses = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        lo, hi = max(lo, a), min(hi, b)
        masses.append(
            quad(lambda x: float(marchenko_pastur_density(x, c)), lo, hi)[0]
            if hi > lo else 0.)
    return np.array(masses)


def histogram_l1(summary, reference_masses):
    """L1 distance between a histogram and reference bin masses."""
    return float(np.sum(np.abs(summary.masses - reference_masses)))


class PushforwardCheck():
    """
    Comparison of the squared spectrum of a symmetrization with two
    copies of the Gram spectrum plus ``N - M`` zeros.
    """
    def __init__(self, M, N, max_deviation, tol):
        self.M = M
        self.N = N
        self.max_deviation = max_deviation
        self.tol = tol
        self.passed = max_deviation <= tol

    def __repr__(self):
        return (
            f'PushforwardCheck({self.M}x{self.N}, '
            f'max_deviation={self.max_deviation:.3g}, passed={self.passed})')

    def __bool__(self):
        return bool(self.passed)

    def to_dict(self):
        """Serialize to a JSON-compatible dict."""
        return {
            'M': self.M,
            'N': self.N,
            'n_zeros': self.N - self.M,
            'max_deviation': self.max_deviation,
            'tol': self.tol,
            'passed': bool(self.passed)
        }


def esd_pushforward_check(A, tol=PUSHFORWARD_TOL):
    """
    Check the spectrum of the symmetrization of A against ``A A^T``.

    :param A: M x N matrix, with M <= N
    :type A: numpy.ndarray
    :param tol: tolerance, relative to the largest Gram eigenvalue
        (absolute below 1)
    :type tol: float
    :return: the check
    :rtype: PushforwardCheck
    :raises ValueError: if M > N
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    M, N = A.shape
    if M > N:
        raise ValueError(f'Pushforward check needs M <= N, got {M}x{N}')
    squared = np.sort(np.linalg.eigvalsh(symmetrize(A))**2)
    gram = np.linalg.eigvalsh(A @ A.T)
    expected = np.sort(np.concatenate([gram, gram, np.zeros(N - M)]))
    scale = max(1., float(expected[-1]))
    deviation = float(np.max(np.abs(squared - expected))) / scale
    return PushforwardCheck(M, N, deviation, tol)
