# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Partitions of the index square into cells, for generalized step
profiles.

A partition is given by a builder which returns, for a matrix size n,
one boolean n x n mask per cell. Cells must cover the square without
overlapping.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import logging
import numpy as np
from ..profiles import (
    BandProfile, StepProfile, TriangularProfile, interval_index,
    symmetrize_profile)
logger = logging.getLogger(__name__.rsplit('.', maxsplit=1)[-1])

MAX_WITNESSES = 10
MAX_BOUNDARY_RUNS = 2


class PartitionError(Exception):
    """Exception raised for malformed partitions."""


class PartitionSpec():
    """
    A family of partitions of ``[n] x [n]``, one for each size n.

    :param name: partition name
    :type name: str
    :param builder: function returning the list of cell masks for a size
    :type builder: callable
    :param levels: function returning the variance level of each cell
        for a size, or None
    :type levels: callable
    """
    def __init__(self, name, builder, levels=None):
        if not callable(builder):
            raise TypeError('builder must be callable')
        self.name = name
        self.builder = builder
        self.levels = levels

    def __repr__(self):
        return f'PartitionSpec({self.name!r})'

    def labels(self, n):
        """
        Cell number of every index pair.

        :param n: matrix size
        :type n: int
        :return: n x n array of cell numbers
        :rtype: numpy.ndarray
        :raises PartitionError: if cells overlap or leave gaps
        """
        masks = [np.asarray(m, dtype=bool) for m in self.builder(n)]
        masks = [m for m in masks if m.any()]
        if not masks:
            raise PartitionError(f'{self.name}: no cells for n={n}')
        cover = np.sum(masks, axis=0)
        if np.any(cover > 1):
            i, j = np.argwhere(cover > 1)[0]
            raise PartitionError(
                f'{self.name}: cells overlap at ({i + 1}, {j + 1})')
        if np.any(cover == 0):
            i, j = np.argwhere(cover == 0)[0]
            raise PartitionError(
                f'{self.name}: ({i + 1}, {j + 1}) belongs to no cell')
        labels = np.zeros(masks[0].shape, dtype=int)
        for m, mask in enumerate(masks):
            labels[mask] = m
        return labels

    def ncells(self, n):
        """Number of cells for size n."""
        return int(self.labels(n).max()) + 1


def interior_mask(labels):
    """
    Points whose 3 x 3 neighbourhood lies in a single cell. Points on
    the border of the square are never interior.
    """
    n = labels.shape[0]
    padded = np.pad(labels, 1, constant_values=-1)
    interior = np.ones(labels.shape, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            interior &= padded[1 + di:1 + di + n, 1 + dj:1 + dj + n] == labels
    return interior


class InteriorPoints():
    """Interior points of a partition and their complement."""
    def __init__(self, mask, ncells):
        self.mask = mask
        self.complement = ~mask
        self.ncells = ncells

    def __repr__(self):
        return (
            f'InteriorPoints(n={self.mask.shape[0]}, interior={len(self)}, '
            f'boundary={int(self.complement.sum())})')

    def __len__(self):
        return int(self.mask.sum())

    def indices(self):
        """Interior points as 1-based ``(i, j)`` pairs."""
        return [(int(i) + 1, int(j) + 1) for i, j in np.argwhere(self.mask)]


def interior_points(ps, n):
    """
    Interior points of a partition.

    :param ps: partition
    :type ps: PartitionSpec
    :param n: matrix size
    :type n: int
    :return: interior points, with the complement mask
    :rtype: InteriorPoints
    """
    labels = ps.labels(n)
    return InteriorPoints(interior_mask(labels), int(labels.max()) + 1)


def split_interior(A, ps):
    """
    Split a matrix into its interior and boundary parts.

    :param A: n x n matrix
    :type A: numpy.ndarray
    :param ps: partition
    :type ps: PartitionSpec
    :return: ``(A1, A2)`` with ``A1 + A2 = A``
    :rtype: tuple of numpy.ndarray
    """
    A = np.asarray(A, dtype=float)
    mask = interior_points(ps, A.shape[0]).mask
    return np.where(mask, A, 0.), np.where(mask, 0., A)


def _runs(line):
    """Number of maximal runs of True in a boolean array."""
    line = np.asarray(line, dtype=int)
    return int(line[0] + np.sum(np.diff(line) == 1)) if line.size else 0


def _max_runs(mask):
    """Largest number of runs of a mask along any row or column."""
    rows = max(_runs(row) for row in mask)
    cols = max(_runs(col) for col in mask.T)
    return max(rows, cols)


class PartitionReport():
    """Result of the partition validation."""
    def __init__(self, name, n, ncells, checks, witnesses):
        self.name = name
        self.n = n
        self.ncells = ncells
        self.checks = checks
        self.witnesses = witnesses
        self.passed = all(checks.values())

    def __repr__(self):
        failed = [name for name, ok in self.checks.items() if not ok]
        return (
            f'PartitionReport({self.name}, n={self.n}, d={self.ncells}, '
            f'failed={failed})')

    def __bool__(self):
        return self.passed

    def to_dict(self):
        """Serialize to a JSON-compatible dict."""
        return {
            'check': 'partition',
            'partition': self.name,
            'n': self.n,
            'd': self.ncells,
            'passed': self.passed,
            'checks': self.checks,
            'witnesses': self.witnesses
        }


def validate_partition(ps, n, n_list=None, variances=None):
    """
    Validate a partition at size n.

    Checks: (a) the transpose of every cell is a cell with the same
    level; (b) every cell at size n, doubled, lies in one cell at size
    2n; (c) every row and column meets the boundary of each cell in at
    most two runs; every cell is axially convex. Optionally, the ratio
    ``d_n / n`` must decrease along n_list, and the variances must be
    constant on every cell.

    :param ps: partition
    :type ps: PartitionSpec
    :param n: matrix size
    :type n: int
    :param n_list: sizes for the cell count ratio, or None
    :type n_list: list of int
    :param variances: n x n variance matrix, or None
    :type variances: numpy.ndarray
    :return: the report
    :rtype: PartitionReport
    :raises PartitionError: if the partition is malformed
    """
    labels = ps.labels(n)
    ncells = int(labels.max()) + 1
    checks = {}
    witnesses = {}
    # (a) reflection
    perm = np.full(ncells, -1)
    perm[labels] = labels.T
    reflected = bool(np.array_equal(labels.T, perm[labels]))
    if reflected and ps.levels is not None:
        levels = np.asarray(ps.levels(n), dtype=float)
        reflected = bool(np.allclose(levels, levels[perm]))
    checks['reflection'] = reflected
    # (b) doubling containment
    doubled = ps.labels(2 * n)[1::2, 1::2]
    bad_cells = [
        m for m in range(ncells) if len(np.unique(doubled[labels == m])) > 1]
    checks['doubling_containment'] = not bad_cells
    if bad_cells:
        witnesses['doubling_containment'] = bad_cells[:MAX_WITNESSES]
    # (c) boundary crossings and axial convexity
    boundary = ~interior_mask(labels)
    crossings = [
        m for m in range(ncells)
        if _max_runs((labels == m) & boundary) > MAX_BOUNDARY_RUNS]
    convex = [m for m in range(ncells) if _max_runs(labels == m) > 1]
    checks['boundary_crossings'] = not crossings
    checks['axial_convexity'] = not convex
    if crossings:
        witnesses['boundary_crossings'] = crossings[:MAX_WITNESSES]
    if convex:
        witnesses['axial_convexity'] = convex[:MAX_WITNESSES]
    if n_list is not None:
        ratios = [ps.ncells(size) / size for size in n_list]
        checks['cell_ratio_decreasing'] = bool(np.all(np.diff(ratios) < 0))
        witnesses['cell_ratios'] = ratios
    if variances is not None:
        variances = np.asarray(variances, dtype=float)
        nonconstant = [
            m for m in range(ncells)
            if np.ptp(variances[labels == m]) > 0]
        checks['constant_levels'] = not nonconstant
        if nonconstant:
            witnesses['constant_levels'] = nonconstant[:MAX_WITNESSES]
    report = PartitionReport(ps.name, n, ncells, checks, witnesses)
    logger.debug(repr(report))
    return report


def band_partition(p):
    """Band ``|i - j| <= p n`` and the two triangles off the band."""
    def builder(n):
        i = np.arange(1, n + 1)
        diff = i[:, None] - i[None, :]
        width = p * n + 1e-9
        return [np.abs(diff) <= width, diff > width, -diff > width]
    return PartitionSpec(
        f'band(p={p:g})', builder, levels=lambda n: [1., 0., 0.])


def triangular_partition():
    """
    Cells of the symmetrization of an upper triangular matrix: the
    support of the triangular block, its transpose, and the rest.
    Defined for even sizes ``n = 2N``.
    """
    def builder(n):
        if n % 2:
            raise PartitionError(
                f'The triangular partition needs an even size, got {n}')
        N = n // 2
        i = np.arange(1, n + 1)[:, None]
        j = np.arange(1, n + 1)[None, :]
        upper = (i <= N) & (j > N) & (j - N >= i)
        lower = upper.T
        return [upper, lower, ~(upper | lower)]
    return PartitionSpec(
        'triangular', builder, levels=lambda n: [1., 1., 0.])


def single_cell_partition():
    """The whole square as one cell."""
    return PartitionSpec(
        'single-cell', lambda n: [np.ones((n, n), dtype=bool)])


def step_partition(breakpoints):
    """Products of the intervals of a step profile."""
    breakpoints = np.asarray(breakpoints, dtype=float)

    def builder(n):
        idx = interval_index(breakpoints, n)
        m = len(breakpoints) - 1
        return [
            (idx[:, None] == p) & (idx[None, :] == q)
            for p in range(m) for q in range(m)]
    return PartitionSpec(f'step({len(breakpoints) - 1} intervals)', builder)


def checkerboard_partition():
    """The two colours of a checkerboard: not a valid partition."""
    def builder(n):
        i = np.arange(n)
        parity = (i[:, None] + i[None, :]) % 2
        return [parity == 0, parity == 1]
    return PartitionSpec('checkerboard', builder)


def partition_from_dict(partition_dict):
    """
    Build a partition from its JSON description.

    :param partition_dict: ``{"name": ..., parameters...}``
    :type partition_dict: dict or str
    :return: the partition
    :rtype: PartitionSpec
    :raises ValueError: for unknown names or invalid parameters
    """
    if isinstance(partition_dict, str):
        partition_dict = {'name': partition_dict}
    if not isinstance(partition_dict, dict) or 'name' not in partition_dict:
        raise ValueError(
            f'Invalid partition description: {partition_dict!r}')
    name = partition_dict['name']
    try:
        if name == 'band':
            return band_partition(float(partition_dict['p']))
        if name == 'triangular':
            return triangular_partition()
        if name == 'single-cell':
            return single_cell_partition()
        if name == 'step':
            return step_partition(partition_dict['breakpoints'])
        if name == 'checkerboard':
            return checkerboard_partition()
    except KeyError as err:
        raise ValueError(
            f'Missing parameter {err} for partition "{name}"') from err
    raise ValueError(
        f'Unknown partition "{name}". Available partitions: band, '
        'triangular, single-cell, step, checkerboard')


def partition_for_profile(profile):
    """
    Natural partition of a profile, or None if it has none.

    Rectangular profiles are partitioned through their symmetrization.

    :param profile: variance profile
    :type profile: ProfileSpec
    :rtype: PartitionSpec
    """
    if isinstance(profile, BandProfile):
        return band_partition(profile.p)
    if isinstance(profile, TriangularProfile):
        return triangular_partition()
    if isinstance(profile, StepProfile):
        if len(profile.breakpoints) == 2:
            return single_cell_partition()
        return step_partition(profile.breakpoints)
    return None


def partition_size(profile, N):
    """Size of the square matrix partitioned for a profile at size N."""
    if profile.is_rectangular:
        return profile.rows(N) + N
    return N


def partition_variances(profile, N):
    """Variances matching the partitioned matrix of a profile."""
    if profile.is_rectangular:
        M = profile.rows(N)
        return symmetrize_profile(profile, M, N).variance_matrix(M + N)
    return profile.variance_matrix(N)
