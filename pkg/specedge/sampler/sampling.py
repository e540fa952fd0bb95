# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Sampling of random matrices with a variance profile.

Each row of a sample is drawn from its own counter-based stream
(``Philox`` keyed by the seed, with the row number in the counter), so a
sample does not depend on drawing order or on the number of threads.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import logging
import numpy as np
from ..config import config
from ..profiles import GramRectProfile
logger = logging.getLogger(__name__.rsplit('.', maxsplit=1)[-1])

# Stream tags, stored in the second counter word
SYMMETRIC_STREAM = 0
RECTANGULAR_STREAM = 1
BATCH_STREAM = 2


def row_generator(seed, row, tag=SYMMETRIC_STREAM):
    """
    Random generator of one matrix row.

    :param seed: experiment seed
    :type seed: int
    :param row: row number, 0-based
    :type row: int
    :param tag: stream tag
    :type tag: int
    :return: the generator
    :rtype: numpy.random.Generator
    """
    return np.random.Generator(
        np.random.Philox(key=int(seed), counter=[0, tag, int(row), 0]))


def _raw_rows(nrows, ncols, dist, seed, tag):
    X = np.empty((nrows, ncols))
    for row in range(nrows):
        X[row] = dist.sample(row_generator(seed, row, tag), ncols)
    return X


def mirror_upper(X):
    """Symmetric matrix with the upper triangle of X."""
    return np.triu(X) + np.triu(X, 1).T


def sample_symmetric(profile, N, dist, seed):
    """
    Sample a symmetric matrix with the variances of a profile.

    Entry ``(i, j)``, ``i <= j``, is ``sigma_ij * x_ij`` with ``x_ij``
    drawn from dist; the lower triangle mirrors the upper one.

    :param profile: symmetric variance profile
    :type profile: ProfileSpec
    :param N: matrix size
    :type N: int
    :param dist: entry distribution
    :type dist: EntryDistribution
    :param seed: random seed
    :type seed: int
    :return: N x N symmetric matrix
    :rtype: numpy.ndarray
    :raises ValueError: if the profile is rectangular
    """
    if profile.is_rectangular:
        raise ValueError(
            f'Cannot sample a symmetric matrix from the rectangular '
            f'profile {profile}: use sample_rectangular()')
    X = mirror_upper(_raw_rows(N, N, dist, seed, SYMMETRIC_STREAM))
    return profile.sigma_matrix(N) * X


def sample_rectangular(gram_profile, M, N, dist, seed):
    """
    Sample an M x N matrix with independent profile-scaled entries.

    :param gram_profile: rectangular profile
    :type gram_profile: GramRectProfile
    :param M: number of rows (None: ``ceil(c N)``)
    :type M: int
    :param N: number of columns
    :type N: int
    :param dist: entry distribution
    :type dist: EntryDistribution
    :param seed: random seed
    :type seed: int
    :return: M x N matrix
    :rtype: numpy.ndarray
    """
    if not isinstance(gram_profile, GramRectProfile):
        raise TypeError('gram_profile must be a GramRectProfile')
    if M is None:
        M = gram_profile.rows(N)
    X = _raw_rows(M, N, dist, seed, RECTANGULAR_STREAM)
    return np.sqrt(gram_profile.rect_variance(M, N)) * X


def symmetrize(A):
    """
    Symmetrization ``[[0, A], [A.T, 0]]`` of a rectangular matrix.

    :param A: M x N matrix
    :type A: numpy.ndarray
    :return: (M+N) x (M+N) symmetric matrix
    :rtype: numpy.ndarray
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    M, N = A.shape
    H = np.zeros((M + N, M + N))
    H[:M, M:] = A
    H[M:, :M] = A.T
    return H


def sample_batch(S, dist, seed, size, stream=0):
    """
    A batch of small symmetric matrices from a single stream.

    :param S: N x N variance matrix
    :type S: numpy.ndarray
    :param dist: entry distribution
    :type dist: EntryDistribution
    :param seed: random seed
    :type seed: int
    :param size: number of matrices
    :type size: int
    :param stream: batch number, so that batches of one seed differ
    :type stream: int
    :return: array of shape (size, N, N)
    :rtype: numpy.ndarray
    """
    S = np.asarray(S, dtype=float)
    rng = row_generator(seed, stream, BATCH_STREAM)
    X = dist.sample(rng, (size, ) + S.shape)
    return np.sqrt(S) * (np.triu(X) + np.swapaxes(np.triu(X, 1), -1, -2))


class SampleBatch():
    """
    The samples of a profile for one size and a list of seeds.

    :param profile: variance profile
    :type profile: ProfileSpec
    :param N: matrix size (number of columns for rectangular profiles)
    :type N: int
    :param dist: entry distribution
    :type dist: EntryDistribution
    :param seeds: random seeds
    :type seeds: list of int
    """
    def __init__(self, profile, N, dist, seeds):
        self.profile = profile
        self.N = int(N)
        self.M = profile.rows(N) if profile.is_rectangular else None
        self.dist = dist
        self.seeds = list(seeds)

    def __repr__(self):
        shape = f'{self.M}x{self.N}' if self.M else f'{self.N}x{self.N}'
        return (
            f'SampleBatch({self.profile}, {shape}, {self.dist}, '
            f'seeds={self.seeds})')

    def __len__(self):
        return len(self.seeds)

    def sample(self, seed):
        """Matrix for one seed."""
        if self.profile.is_rectangular:
            return sample_rectangular(
                self.profile, self.M, self.N, self.dist, seed)
        return sample_symmetric(self.profile, self.N, self.dist, seed)

    def __iter__(self):
        for seed in self.seeds:
            yield seed, self.sample(seed)


class TruncationSplit():
    """
    Split of a matrix into small and large entries.

    Iterating yields ``(a_le, a_gt, mean_shift_norm)``.
    """
    def __init__(self, threshold, a_le, a_le_uncentered, a_gt,
                 mean_shift_norm, centered):
        self.threshold = threshold
        self.a_le = a_le
        self.a_le_uncentered = a_le_uncentered
        self.a_gt = a_gt
        self.mean_shift_norm = mean_shift_norm
        self.centered = centered

    def __repr__(self):
        return (
            f'TruncationSplit(threshold={self.threshold:.6g}, '
            f'n_truncated={self.n_truncated}, centered={self.centered})')

    def __iter__(self):
        return iter((self.a_le, self.a_gt, self.mean_shift_norm))

    @property
    def n_truncated(self):
        """Number of nonzero entries of the large part."""
        return int(np.count_nonzero(self.a_gt))


def truncate_split(A, eta=None, dist=None, sigma=None, centering=None):
    """
    Split a symmetric matrix at the level ``N**(1/2 - eta)``.

    The small part is centered with the analytic truncated mean of the
    entries when the entry distribution is known. Otherwise it is left
    uncentered and the split is flagged as such.

    :param A: N x N symmetric matrix
    :type A: numpy.ndarray
    :param eta: truncation exponent, in (0, 1/8) (None: configured value)
    :type eta: float
    :param dist: entry distribution of the unscaled entries, or None
    :type dist: EntryDistribution
    :param sigma: matrix of entry standard deviations (None: all ones)
    :type sigma: numpy.ndarray
    :param centering: "analytic" or "none" (None: configured value)
    :type centering: str
    :return: the split
    :rtype: TruncationSplit
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f'A must be a square matrix, got shape {A.shape}')
    if not np.array_equal(A, A.T):
        raise ValueError('A must be symmetric')
    if eta is None:
        eta = config.get('eta', 0.1)
    if not 0 < eta < 1 / 8:
        raise ValueError(f'eta must be in (0, 1/8): {eta}')
    if centering is None:
        centering = config.get('centering', 'analytic')
    N = A.shape[0]
    threshold = N**(0.5 - eta)
    small = np.abs(A) <= threshold
    a_le_uncentered = np.where(small, A, 0.)
    a_gt = np.where(small, 0., A)
    centered = centering == 'analytic' and dist is not None
    shift = np.zeros_like(A)
    if centered:
        sigma = np.ones_like(A) if sigma is None else np.asarray(sigma)
        nonzero = sigma > 0
        shift[nonzero] = sigma[nonzero] * np.vectorize(dist.truncated_mean)(
            threshold / sigma[nonzero])
    mean_shift_norm = float(np.linalg.norm(shift, 2)) if shift.any() else 0.
    if not centered:
        logger.debug('Truncated part left uncentered')
    return TruncationSplit(
        threshold, a_le_uncentered - shift, a_le_uncentered, a_gt,
        mean_shift_norm, centered)
