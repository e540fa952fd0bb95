# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Operator norms of symmetric and rectangular matrices.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import logging
import numpy as np
from ..config import config
logger = logging.getLogger(__name__.rsplit('.', maxsplit=1)[-1])

DENSE_THRESHOLD = 2048
POWER_TOL = 1e-9
POWER_MAX_ITER = 10000
SYMMETRY_ATOL = 1e-10


class NonSymmetricMatrixError(Exception):
    """Exception raised when a symmetric matrix is expected."""


class PowerIterationError(Exception):
    """Exception raised when power iteration breaks down."""


def check_symmetric(A):
    """
    Return A as a float array, checking that it is square and symmetric.

    :raises NonSymmetricMatrixError: if A is not symmetric within 1e-10
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NonSymmetricMatrixError(
            f'Expected a square matrix, got shape {A.shape}')
    if not np.allclose(A, A.T, rtol=0, atol=SYMMETRY_ATOL):
        dev = np.max(np.abs(A - A.T))
        raise NonSymmetricMatrixError(
            f'Matrix is not symmetric (max deviation {dev:.3g})')
    return A


def power_iteration(matvec, n, tol=None, max_iter=None, seed=0):
    """
    Largest eigenvalue of a positive semidefinite operator.

    The iteration stops when the residual ``|B x - lambda x|`` falls below
    ``tol * lambda``, lambda being the Rayleigh quotient.

    :param matvec: function computing ``B x``
    :type matvec: callable
    :param n: dimension
    :type n: int
    :param tol: relative tolerance (None: configured value)
    :type tol: float
    :param max_iter: iteration budget (None: configured value)
    :type max_iter: int
    :param seed: seed of the starting vector
    :type seed: int
    :return: eigenvalue estimate and convergence flag
    :rtype: tuple of (float, bool)
    :raises PowerIterationError: on non-finite iterates
    """
    if tol is None:
        tol = config.get('power_tol', POWER_TOL)
    if max_iter is None:
        max_iter = config.get('power_max_iter', POWER_MAX_ITER)
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(n)
    x /= np.linalg.norm(x)
    lam = 0.
    for _ in range(max_iter):
        y = matvec(x)
        if not np.all(np.isfinite(y)):
            raise PowerIterationError('Non-finite values in power iteration')
        lam = float(x @ y)
        if np.linalg.norm(y - lam * x) <= tol * lam:
            return lam, True
        x = y / np.linalg.norm(y)
    logger.warning(
        f'Power iteration did not converge in {max_iter} iterations '
        f'(eigenvalue estimate {lam:.10g})')
    return lam, False


def operator_norm(A, full_output=False, dense_threshold=None):
    """
    Operator norm of a symmetric matrix: the largest eigenvalue modulus.

    Small matrices use a dense symmetric eigensolver, larger ones power
    iteration on ``A**2``.

    :param A: symmetric matrix
    :type A: numpy.ndarray
    :param full_output: also return convergence flag and method
    :type full_output: bool
    :param dense_threshold: largest size for the dense solver
        (None: configured value)
    :type dense_threshold: int
    :return: the norm, or ``(norm, converged, method)``
    :rtype: float or tuple
    :raises NonSymmetricMatrixError: if A is not symmetric
    """
    A = check_symmetric(A)
    if dense_threshold is None:
        dense_threshold = config.get('dense_threshold', DENSE_THRESHOLD)
    if A.shape[0] <= dense_threshold:
        norm = float(np.max(np.abs(np.linalg.eigvalsh(A))))
        converged, method = True, 'dense'
    else:
        lam, converged = power_iteration(lambda x: A @ (A @ x), A.shape[0])
        norm = float(np.sqrt(max(lam, 0.)))
        method = 'power'
    if full_output:
        return norm, converged, method
    return norm


def gram_norm(A, full_output=False, dense_threshold=None):
    """
    Operator norm of ``A A^T``: the squared largest singular value of A.

    :param A: M x N matrix
    :type A: numpy.ndarray
    :param full_output: also return convergence flag and method
    :type full_output: bool
    :param dense_threshold: largest Gram size for the dense solver
        (None: configured value)
    :type dense_threshold: int
    :return: the norm, or ``(norm, converged, method)``
    :rtype: float or tuple
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if dense_threshold is None:
        dense_threshold = config.get('dense_threshold', DENSE_THRESHOLD)
    M, N = A.shape
    if min(M, N) <= dense_threshold:
        gram = A @ A.T if M <= N else A.T @ A
        norm = float(max(np.linalg.eigvalsh(gram)[-1], 0.))
        converged, method = True, 'dense'
    else:
        norm, converged = power_iteration(lambda x: A @ (A.T @ x), M)
        method = 'power'
    if full_output:
        return norm, converged, method
    return norm
