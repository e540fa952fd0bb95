# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Graphon classes and functions.

A graphon is a symmetric kernel on the unit square with values in [0, 1].
It is represented exactly, as a step grid, or by a vectorized callable
evaluated on a quadrature grid.

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

QUADRATURE_RESOLUTION = 512
# Largest uniform grid used for quadrature of L1 distances
MAX_L1_GRID = 2048
# Tolerance on symmetry and range checks of cell values
VALUE_TOL = 1e-12


def quadrature_resolution():
    """Return the configured quadrature resolution."""
    return config.get('quadrature_resolution', QUADRATURE_RESOLUTION)


class Graphon():
    """Base class for graphons."""
    representation = None

    @property
    def sup(self):
        """Upper bound of the graphon values."""
        raise NotImplementedError


class StepGrid(Graphon):
    """
    A graphon which is constant on the cells of a rectangular grid.

    :param boundaries: cell boundaries, strictly increasing from 0 to 1
    :type boundaries: array_like
    :param values: symmetric matrix of cell values in [0, 1]
    :type values: array_like
    """
    representation = 'step'

    def __init__(self, boundaries, values):
        boundaries = np.asarray(boundaries, dtype=float)
        values = np.atleast_2d(np.asarray(values, dtype=float))
        ncells = len(boundaries) - 1
        if ncells < 1:
            raise ValueError('A StepGrid needs at least one cell')
        if boundaries[0] != 0 or boundaries[-1] != 1:
            raise ValueError('Cell boundaries must start at 0 and end at 1')
        if np.any(np.diff(boundaries) <= 0):
            raise ValueError('Cell boundaries must be strictly increasing')
        if values.shape != (ncells, ncells):
            raise ValueError(
                f'Values must be a {ncells}x{ncells} matrix, '
                f'got shape {values.shape}')
        if np.any(values < -VALUE_TOL) or np.any(values > 1 + VALUE_TOL):
            raise ValueError('Graphon values must be in [0, 1]')
        if not np.allclose(values, values.T, rtol=0, atol=VALUE_TOL):
            raise ValueError('Graphon values must be symmetric')
        self.boundaries = boundaries
        self.values = np.clip(values, 0, 1)

    def __repr__(self):
        return (
            f'StepGrid(ncells={self.ncells}, '
            f'sup={self.sup:.6g}, mean={self.mean():.6g})'
        )

    @property
    def ncells(self):
        """Number of cells along each axis."""
        return len(self.boundaries) - 1

    @property
    def widths(self):
        """Cell widths."""
        return np.diff(self.boundaries)

    @property
    def sup(self):
        return float(self.values.max())

    def cell_index(self, t):
        """
        Index of the cell containing each point.

        Cells are right-closed; 0 belongs to the first cell.
        """
        idx = np.searchsorted(self.boundaries, t, side='left') - 1
        return np.clip(idx, 0, self.ncells - 1)

    def __call__(self, x, y):
        return self.values[self.cell_index(x), self.cell_index(y)]

    def mean(self):
        """Integral of the graphon over the unit square."""
        w = self.widths
        return float(w @ self.values @ w)

    def to_dict(self):
        """Serialize to a JSON-compatible dict."""
        return {
            'representation': self.representation,
            'boundaries': self.boundaries.tolist(),
            'values': self.values.tolist()
        }


class CallableGraphon(Graphon):
    """
    A graphon given by a vectorized function.

    :param func: function ``g(x, y)`` with values in [0, 1]
    :type func: callable
    :param name: descriptive name, used in reports
    :type name: str
    :param cell_integral: exact integral over a rectangle, as
        ``cell_integral(x0, x1, y0, y1)``, or None
    :type cell_integral: callable
    :param binary: True if the graphon only takes the values 0 and 1
    :type binary: bool
    :param sup: upper bound of the values (None: estimated on a grid)
    :type sup: float
    :param resolution: quadrature resolution (None: configured value)
    :type resolution: int
    """
    representation = 'callable'

    def __init__(self, func, name='callable', cell_integral=None,
                 binary=False, sup=None, resolution=None):
        if not callable(func):
            raise TypeError('func must be callable')
        self.func = func
        self.name = name
        self.cell_integral = cell_integral
        self.binary = binary
        self._sup = sup
        self.resolution = resolution

    def __repr__(self):
        return (
            f'CallableGraphon(name={self.name!r}, binary={self.binary}, '
            f'exact_cells={self.cell_integral is not None})'
        )

    def __call__(self, x, y):
        return self.func(np.asarray(x, dtype=float), np.asarray(y, dtype=float))

    @property
    def sup(self):
        if self._sup is None:
            t = (np.arange(QUADRATURE_RESOLUTION) + 0.5) / QUADRATURE_RESOLUTION
            self._sup = float(np.max(self(t[:, None], t[None, :])))
        return self._sup

    def to_dict(self):
        """Serialize to a JSON-compatible dict."""
        return {
            'representation': self.representation,
            'name': self.name,
            'resolution': self.resolution
        }


def _overlaps(src, dst):
    """Matrix of overlap lengths between two interval partitions of [0,1]."""
    lo = np.maximum(src[:-1, None], dst[None, :-1])
    hi = np.minimum(src[1:, None], dst[None, 1:])
    return np.clip(hi - lo, 0, None)


def discretize(g, n, resolution=None):
    """
    Average a graphon over the cells of the uniform n x n grid.

    Step grids and graphons with exact cell integrals are averaged
    exactly. Other callables use the midpoint rule with at least
    ``resolution`` points per axis.

    :param g: graphon
    :type g: Graphon
    :param n: number of cells per axis
    :type n: int
    :param resolution: quadrature resolution (None: graphon or config value)
    :type resolution: int
    :return: the n x n step grid of cell averages
    :rtype: StepGrid
    """
    n = int(n)
    if n < 1:
        raise ValueError(f'n must be positive: {n}')
    edges = np.linspace(0, 1, n + 1)
    if isinstance(g, StepGrid):
        overlap = _overlaps(g.boundaries, edges)
        values = n**2 * overlap.T @ g.values @ overlap
        return StepGrid(edges, 0.5 * (values + values.T))
    if not isinstance(g, CallableGraphon):
        raise TypeError(f'Cannot discretize {type(g).__name__}')
    if g.cell_integral is not None:
        values = n**2 * g.cell_integral(
            edges[:-1, None], edges[1:, None], edges[None, :-1],
            edges[None, 1:])
    else:
        if resolution is None:
            resolution = g.resolution or quadrature_resolution()
        sub = max(1, -(-int(resolution) // n))
        t = (np.arange(n * sub) + 0.5) / (n * sub)
        samples = g(t[:, None], t[None, :])
        values = samples.reshape(n, sub, n, sub).mean(axis=(1, 3))
    return StepGrid(edges, 0.5 * (values + values.T))


def _refine(g1, g2):
    """Common refinement of two step grids: widths and both value arrays."""
    bounds = np.union1d(g1.boundaries, g2.boundaries)
    mid = 0.5 * (bounds[:-1] + bounds[1:])
    i1 = g1.cell_index(mid)
    i2 = g2.cell_index(mid)
    return np.diff(bounds), g1.values[np.ix_(i1, i1)], g2.values[np.ix_(i2, i2)]


def _l1_step_binary(grid, g):
    """Exact L1 distance between a step grid and a 0/1 callable graphon."""
    b = grid.boundaries
    inside = g.cell_integral(
        b[:-1, None], b[1:, None], b[None, :-1], b[None, 1:])
    area = np.outer(grid.widths, grid.widths)
    v = grid.values
    return float(np.sum(np.abs(v - 1) * inside + v * (area - inside)))


def l1_distance(g1, g2, resolution=None):
    """
    L1 distance between two graphons on the unit square.

    The distance is exact for two step grids (common cell refinement) and
    for a step grid against a 0/1 graphon with exact cell integrals.
    Otherwise it uses the midpoint rule on a grid which refines the cells
    of any step grid involved.

    :param g1: first graphon
    :type g1: Graphon
    :param g2: second graphon
    :type g2: Graphon
    :param resolution: quadrature resolution (None: configured value)
    :type resolution: int
    :return: the distance
    :rtype: float
    """
    if isinstance(g1, StepGrid) and isinstance(g2, StepGrid):
        w, v1, v2 = _refine(g1, g2)
        return float(w @ np.abs(v1 - v2) @ w)
    if isinstance(g2, StepGrid) and not isinstance(g1, StepGrid):
        g1, g2 = g2, g1
    if (
        isinstance(g1, StepGrid) and g2.binary and
        g2.cell_integral is not None
    ):
        return _l1_step_binary(g1, g2)
    if resolution is None:
        resolution = quadrature_resolution()
    npoints = int(resolution)
    bounds = np.linspace(0, 1, npoints + 1)
    for g in (g1, g2):
        if isinstance(g, StepGrid):
            npoints = min(max(npoints, 2 * g.ncells), MAX_L1_GRID)
            bounds = np.union1d(np.linspace(0, 1, npoints + 1), g.boundaries)
    mid = 0.5 * (bounds[:-1] + bounds[1:])
    w = np.diff(bounds)
    diff = np.abs(g1(mid[:, None], mid[None, :]) - g2(mid[:, None], mid[None, :]))
    return float(w @ diff @ w)
