# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Variance profile classes and functions.

A variance profile gives the variance ``s_ij`` of every entry of an
N x N symmetric matrix (or an M x N rectangular one), for any N.
Indices are 1-based in the public functions.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import math
import logging
import numpy as np
from .graphon import StepGrid, CallableGraphon
from .kernels import Kernel, kernel_from_dict, band_kernel, CATALOG
logger = logging.getLogger(__name__.rsplit('.', maxsplit=1)[-1])

# Slack on the band inequality, to absorb rounding of p*N
BAND_TOL = 1e-9


class ProfileError(Exception):
    """Exception raised for invalid or unsupported variance profiles."""


def _check_breakpoints(breakpoints, name='breakpoints'):
    """Validate and return a breakpoint array."""
    alpha = np.asarray(breakpoints, dtype=float)
    if alpha.ndim != 1 or len(alpha) < 2:
        raise ProfileError(f'{name} must contain at least two values')
    if alpha[0] != 0 or alpha[-1] != 1:
        raise ProfileError(f'{name} must start at 0 and end at 1')
    if np.any(np.diff(alpha) <= 0):
        raise ProfileError(f'{name} must be strictly increasing')
    return alpha


def _check_sigma(sigma, shape):
    """Validate and return a matrix of standard deviations."""
    sigma = np.atleast_2d(np.asarray(sigma, dtype=float))
    if sigma.shape != shape:
        raise ProfileError(
            f'sigma must have shape {shape}, got {sigma.shape}')
    if np.any(sigma < 0) or np.any(sigma > 1):
        raise ProfileError('sigma values must be in [0, 1]')
    return sigma


def interval_index(breakpoints, N):
    """
    Interval of each index 1..N for a list of breakpoints.

    Index i belongs to interval p iff ``R[p-1] < i <= R[p]``, with
    ``R[p] = round(breakpoints[p] * N)`` rounded half up.

    :param breakpoints: increasing values from 0 to 1
    :type breakpoints: array_like
    :param N: number of indices
    :type N: int
    :return: 0-based interval number of each index
    :rtype: numpy.ndarray
    """
    R = np.floor(np.asarray(breakpoints, dtype=float) * N + 0.5).astype(int)
    return np.searchsorted(R[1:], np.arange(1, N + 1), side='left')


def _check_N(N):
    if not isinstance(N, (int, np.integer)) or N < 1:
        raise ValueError(f'N must be a positive integer: {N!r}')
    return int(N)


class ProfileSpec():
    """
    Base class for variance profiles.

    Subclasses implement ``variance_matrix(N)`` and ``limit_graphon()``.
    """
    variant = None
    is_rectangular = False

    def __repr__(self):
        return f'{type(self).__name__}({self.to_dict()})'

    def __str__(self):
        return self.variant

    def variance_matrix(self, N):
        """
        Matrix of entry variances for size N.

        :param N: matrix size
        :type N: int
        :return: N x N variances
        :rtype: numpy.ndarray
        """
        raise NotImplementedError

    def sigma_matrix(self, N):
        """Matrix of entry standard deviations for size N."""
        return np.sqrt(self.variance_matrix(N))

    def limit_graphon(self):
        """Limit kernel of the induced graphons, as N goes to infinity."""
        raise ProfileError(
            f'The {self.variant} profile has no declared limit graphon')

    def to_dict(self):
        """Serialize to the profile JSON schema."""
        raise NotImplementedError


class StepProfile(ProfileSpec):
    """
    Step function profile.

    :param breakpoints: interval breakpoints, from 0 to 1
    :type breakpoints: array_like
    :param sigma: symmetric m x m matrix of standard deviations in [0, 1]
    :type sigma: array_like
    """
    variant = 'step'

    def __init__(self, breakpoints, sigma):
        self.breakpoints = _check_breakpoints(breakpoints)
        m = len(self.breakpoints) - 1
        self.sigma = _check_sigma(sigma, (m, m))
        if not np.array_equal(self.sigma, self.sigma.T):
            raise ProfileError('Step profile sigma must be symmetric')

    def variance_matrix(self, N):
        N = _check_N(N)
        idx = interval_index(self.breakpoints, N)
        return self.sigma[np.ix_(idx, idx)]**2

    def limit_graphon(self):
        return StepGrid(self.breakpoints, self.sigma**2)

    def to_dict(self):
        return {
            'variant': self.variant,
            'breakpoints': self.breakpoints.tolist(),
            'sigma': self.sigma.tolist()
        }


class ContinuousProfile(ProfileSpec):
    """
    Continuous profile: entry (i, j) has standard deviation
    ``kernel(i/N, j/N)``.

    :param kernel: symmetric catalog kernel
    :type kernel: Kernel
    """
    variant = 'continuous'

    def __init__(self, kernel):
        if not isinstance(kernel, Kernel):
            raise TypeError('kernel must be a Kernel')
        if not kernel.symmetric:
            raise ProfileError(
                f'Kernel "{kernel.name}" is not symmetric and cannot be '
                'used for a symmetric profile')
        self.kernel = kernel

    def __str__(self):
        return f'{self.variant}:{self.kernel}'

    def variance_matrix(self, N):
        N = _check_N(N)
        t = np.arange(1, N + 1) / N
        return np.clip(self.kernel(t[:, None], t[None, :]), 0, 1)**2

    def limit_graphon(self):
        kernel = self.kernel
        return CallableGraphon(
            lambda x, y: kernel(x, y)**2,
            name=str(kernel),
            cell_integral=kernel.square_integral,
            binary=kernel.binary,
            sup=kernel.sup**2
        )

    def to_dict(self):
        return {'variant': self.variant, 'kernel': self.kernel.to_dict()}


class BandProfile(ProfileSpec):
    """
    Band profile: ``s_ij = 1`` if ``|i - j| <= p N``, else 0.

    :param p: relative band half-width, in (0, 1]
    :type p: float
    """
    variant = 'band'

    def __init__(self, p):
        p = float(p)
        if not 0 < p <= 1:
            raise ProfileError(f'Band width p must be in (0, 1]: {p}')
        self.p = p

    def __str__(self):
        return f'{self.variant}(p={self.p})'

    def variance_matrix(self, N):
        N = _check_N(N)
        i = np.arange(1, N + 1)
        return (
            np.abs(i[:, None] - i[None, :]) <= self.p * N + BAND_TOL
        ).astype(float)

    def limit_graphon(self):
        kernel = band_kernel(self.p)
        return CallableGraphon(
            kernel, name=str(kernel), cell_integral=kernel.square_integral,
            binary=True, sup=1.)

    def to_dict(self):
        return {'variant': self.variant, 'p': self.p}


class CustomProfile(ProfileSpec):
    """
    Profile given by explicit variance matrices, one per size.

    :param matrices: mapping from N to an N x N symmetric variance matrix
    :type matrices: dict
    """
    variant = 'custom'

    def __init__(self, matrices):
        if not isinstance(matrices, dict) or not matrices:
            raise ProfileError('Custom profile needs at least one matrix')
        self.matrices = {}
        for N, matrix in matrices.items():
            N = int(N)
            S = np.asarray(matrix, dtype=float)
            if S.shape != (N, N):
                raise ProfileError(
                    f'Custom matrix for N={N} has shape {S.shape}')
            if np.any(S < 0) or np.any(S > 1):
                raise ProfileError(
                    f'Custom variances for N={N} must be in [0, 1]')
            if not np.array_equal(S, S.T):
                raise ProfileError(
                    f'Custom variance matrix for N={N} is not symmetric')
            self.matrices[N] = S

    def __str__(self):
        sizes = ','.join(str(N) for N in sorted(self.matrices))
        return f'{self.variant}(N={sizes})'

    def variance_matrix(self, N):
        N = _check_N(N)
        try:
            return self.matrices[N].copy()
        except KeyError as err:
            raise ProfileError(
                f'Custom profile has no variance matrix for N={N}') from err

    def to_dict(self):
        return {
            'variant': self.variant,
            'matrices': {
                str(N): S.tolist() for N, S in sorted(self.matrices.items())}
        }


class RectStep():
    """
    Rectangular step profile.

    :param row_breakpoints: row interval breakpoints, from 0 to 1
    :type row_breakpoints: array_like
    :param col_breakpoints: column interval breakpoints, from 0 to 1
    :type col_breakpoints: array_like
    :param sigma: m x n matrix of standard deviations in [0, 1]
    :type sigma: array_like
    """
    def __init__(self, row_breakpoints, col_breakpoints, sigma):
        self.row_breakpoints = _check_breakpoints(
            row_breakpoints, 'row_breakpoints')
        self.col_breakpoints = _check_breakpoints(
            col_breakpoints, 'col_breakpoints')
        self.sigma = _check_sigma(
            sigma,
            (len(self.row_breakpoints) - 1, len(self.col_breakpoints) - 1))

    def __repr__(self):
        return f'RectStep({self.to_dict()})'

    def variance(self, M, N):
        """M x N matrix of variances."""
        rows = interval_index(self.row_breakpoints, M)
        cols = interval_index(self.col_breakpoints, N)
        return self.sigma[np.ix_(rows, cols)]**2

    def to_dict(self):
        return {
            'variant': 'step',
            'row_breakpoints': self.row_breakpoints.tolist(),
            'col_breakpoints': self.col_breakpoints.tolist(),
            'sigma': self.sigma.tolist()
        }


def _symmetrized_kernel(kernel, s):
    """
    Symmetrization of a rectangular kernel, split at s.

    Returns the function and, when the kernel has exact square integrals,
    the exact cell integrator.
    """
    def func(x, y):
        x, y = np.broadcast_arrays(x, y)
        out = np.zeros(x.shape)
        upper = (x <= s) & (y > s)
        lower = (y <= s) & (x > s)
        out[upper] = kernel(x[upper] / s, (y[upper] - s) / (1 - s))**2
        out[lower] = kernel(y[lower] / s, (x[lower] - s) / (1 - s))**2
        return out

    if kernel.square_integral is None:
        return func, None

    def cell_integral(x0, x1, y0, y1):
        jac = s * (1 - s)
        upper = kernel.square_integral(
            np.minimum(x0, s) / s, np.minimum(x1, s) / s,
            (np.maximum(y0, s) - s) / (1 - s), (np.maximum(y1, s) - s) / (1 - s))
        lower = kernel.square_integral(
            np.minimum(y0, s) / s, np.minimum(y1, s) / s,
            (np.maximum(x0, s) - s) / (1 - s), (np.maximum(x1, s) - s) / (1 - s))
        return jac * (upper + lower)

    return func, cell_integral


class GramRectProfile(ProfileSpec):
    """
    Rectangular profile for M x N matrices, with ``M = ceil(c N)``.

    :param c: aspect ratio, in (0, 1]
    :type c: float
    :param rect: rectangular step profile, or a catalog kernel giving the
        standard deviation of entry (i, j) as ``kernel(i/M, j/N)``
    :type rect: RectStep or Kernel
    """
    variant = 'gram'
    is_rectangular = True

    def __init__(self, c, rect):
        c = float(c)
        if not 0 < c <= 1:
            raise ProfileError(f'Aspect ratio c must be in (0, 1]: {c}')
        if not isinstance(rect, (RectStep, Kernel)):
            raise TypeError('rect must be a RectStep or a Kernel')
        self.c = c
        self.rect = rect

    def __str__(self):
        return f'{self.variant}(c={self.c})'

    @property
    def split(self):
        """Split point of the symmetrized limit graphon."""
        return self.c / (1 + self.c)

    def rows(self, N):
        """Number of rows for N columns."""
        return math.ceil(round(self.c * _check_N(N), 9))

    def rect_variance(self, M, N):
        """
        M x N matrix of variances.

        :param M: number of rows
        :type M: int
        :param N: number of columns
        :type N: int
        :return: variances
        :rtype: numpy.ndarray
        """
        M = _check_N(M)
        N = _check_N(N)
        if isinstance(self.rect, RectStep):
            return self.rect.variance(M, N)
        u = np.arange(1, M + 1) / M
        v = np.arange(1, N + 1) / N
        return np.clip(self.rect(u[:, None], v[None, :]), 0, 1)**2

    def variance_matrix(self, N):
        return self.rect_variance(self.rows(N), N)

    def limit_graphon(self):
        s = self.split
        if isinstance(self.rect, RectStep):
            rows = s * self.rect.row_breakpoints
            cols = s + (1 - s) * self.rect.col_breakpoints
            bounds = np.union1d(rows, cols)
            mid = 0.5 * (bounds[:-1] + bounds[1:])
            row_idx = np.clip(
                np.searchsorted(rows, mid, side='left') - 1,
                0, len(rows) - 2)
            col_idx = np.clip(
                np.searchsorted(cols, mid, side='left') - 1,
                0, len(cols) - 2)
            values = np.zeros((len(mid), len(mid)))
            upper = (mid[:, None] <= s) & (mid[None, :] > s)
            block = self.rect.sigma[np.ix_(row_idx, col_idx)]**2
            values[upper] = block[upper]
            values = np.maximum(values, values.T)
            return StepGrid(bounds, values)
        func, cell_integral = _symmetrized_kernel(self.rect, s)
        return CallableGraphon(
            func, name=f'symmetrized {self.rect}',
            cell_integral=cell_integral, binary=self.rect.binary,
            sup=self.rect.sup**2)

    def to_dict(self):
        rect = (
            self.rect.to_dict() if isinstance(self.rect, RectStep)
            else {'variant': 'continuous', 'kernel': self.rect.to_dict()})
        return {'variant': self.variant, 'c': self.c, 'rect': rect}


class TriangularProfile(GramRectProfile):
    """
    Triangular profile: square N x N matrices with ``s_ij = 1`` if
    ``i <= j``, else 0.
    """
    variant = 'triangular'

    def __init__(self):
        super().__init__(1., kernel_from_dict('upper-triangular'))

    def __str__(self):
        return self.variant

    def to_dict(self):
        return {'variant': self.variant}


def wigner_profile():
    """Constant profile with all variances equal to 1."""
    return StepProfile([0, 1], [[1.]])


def zero_profile():
    """Constant profile with all variances equal to 0."""
    return StepProfile([0, 1], [[0.]])


def variance_at(profile, N, i, j):
    """
    Variance of entry (i, j) for size N.

    For rectangular profiles, i is a row index in ``1..M`` with
    ``M = ceil(c N)``.

    :param profile: variance profile
    :type profile: ProfileSpec
    :param N: matrix size
    :type N: int
    :param i: row index, 1-based
    :type i: int
    :param j: column index, 1-based
    :type j: int
    :return: the variance, in [0, 1]
    :rtype: float
    :raises IndexError: if an index is out of range
    """
    N = _check_N(N)
    nrows = profile.rows(N) if profile.is_rectangular else N
    if not 1 <= i <= nrows or not 1 <= j <= N:
        raise IndexError(
            f'Index ({i}, {j}) out of range for a {nrows}x{N} profile')
    return float(profile.variance_matrix(N)[i - 1, j - 1])


def graphon_of(profile, N):
    """
    Graphon induced by the variances of size N.

    Cell (i, j) of the N x N grid holds ``s_ij``. Rectangular profiles
    induce the graphon of their (M+N) x (M+N) symmetrization.

    :param profile: variance profile
    :type profile: ProfileSpec
    :param N: matrix size
    :type N: int
    :return: the induced graphon
    :rtype: StepGrid
    """
    N = _check_N(N)
    if profile.is_rectangular:
        M = profile.rows(N)
        S = symmetrize_profile(profile, M, N).variance_matrix(M + N)
    else:
        S = profile.variance_matrix(N)
    return StepGrid(np.linspace(0, 1, S.shape[0] + 1), S)


def limit_graphon(profile):
    """
    Limit of the induced graphons as N goes to infinity.

    :param profile: variance profile
    :type profile: ProfileSpec
    :return: the limit graphon
    :rtype: Graphon
    :raises ProfileError: if the profile has no declared limit
    """
    return profile.limit_graphon()


def symmetrize_profile(rect, M, N):
    """
    Variance profile of the symmetrization of an M x N matrix.

    The result has zero diagonal blocks and the rectangular variances,
    and their transpose, off the diagonal.

    :param rect: rectangular profile
    :type rect: GramRectProfile
    :param M: number of rows
    :type M: int
    :param N: number of columns
    :type N: int
    :return: custom profile of size M + N
    :rtype: CustomProfile
    :raises ProfileError: if M > N
    """
    if not isinstance(rect, GramRectProfile):
        raise TypeError('rect must be a GramRectProfile')
    if M > N:
        raise ProfileError(f'Symmetrization needs M <= N, got M={M}, N={N}')
    V = rect.rect_variance(M, N)
    S = np.zeros((M + N, M + N))
    S[:M, M:] = V
    S[M:, :M] = V.T
    return CustomProfile({M + N: S})


def _rect_from_dict(rect_dict):
    """Parse the "rect" object of a gram profile."""
    if not isinstance(rect_dict, dict):
        raise ProfileError('"rect" must be a JSON object')
    variant = rect_dict.get('variant', 'step')
    if variant == 'step':
        return RectStep(
            rect_dict.get('row_breakpoints', [0, 1]),
            rect_dict.get('col_breakpoints', [0, 1]),
            _required(rect_dict, 'sigma', 'rect'))
    if variant == 'continuous':
        return kernel_from_dict(_required(rect_dict, 'kernel', 'rect'))
    raise ProfileError(f'Unknown rect variant "{variant}"')


def _required(profile_dict, key, variant):
    try:
        return profile_dict[key]
    except KeyError as err:
        raise ProfileError(
            f'Missing key "{key}" for {variant} profile') from err


def profile_from_dict(profile_dict):
    """
    Build a profile from its JSON description.

    Accepted variants are "step", "continuous", "band", "triangular",
    "custom" and "gram", plus the shortcuts "wigner" and "zero".

    :param profile_dict: profile description
    :type profile_dict: dict
    :return: the profile
    :rtype: ProfileSpec
    :raises ProfileError: on invalid descriptions
    """
    if not isinstance(profile_dict, dict):
        raise ProfileError('The profile must be a JSON object')
    variant = profile_dict.get('variant')
    try:
        if variant == 'wigner':
            return wigner_profile()
        if variant == 'zero':
            return zero_profile()
        if variant == 'step':
            return StepProfile(
                profile_dict.get('breakpoints', [0, 1]),
                _required(profile_dict, 'sigma', variant))
        if variant == 'continuous':
            return ContinuousProfile(
                kernel_from_dict(_required(profile_dict, 'kernel', variant)))
        if variant == 'band':
            return BandProfile(_required(profile_dict, 'p', variant))
        if variant == 'triangular':
            return TriangularProfile()
        if variant == 'custom':
            return CustomProfile(_required(profile_dict, 'matrices', variant))
        if variant == 'gram':
            return GramRectProfile(
                _required(profile_dict, 'c', variant),
                _rect_from_dict(_required(profile_dict, 'rect', variant)))
    except (TypeError, ValueError) as err:
        raise ProfileError(f'Invalid {variant} profile: {err}') from err
    variants = (
        'step', 'continuous', 'band', 'triangular', 'custom', 'gram',
        'wigner', 'zero')
    raise ProfileError(
        f'Unknown profile variant "{variant}". '
        f'Available variants: {", ".join(variants)}. '
        f'Continuous kernels: {", ".join(sorted(CATALOG))}')
