# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Catalog of named kernels on the unit square.

Catalog kernels are standard deviation profiles: the variance of an entry
is the square of the kernel value. Each kernel may provide the exact
integral of its square over an axis-aligned rectangle, which makes
discretization and L1 distances exact.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import logging
import numpy as np
logger = logging.getLogger(__name__.rsplit('.', maxsplit=1)[-1])


def strip_area(x0, x1, y0, y1, offset):
    """
    Area of ``{y >= x + offset}`` inside the rectangle ``[x0,x1]x[y0,y1]``.

    The integrand ``clip(y1 - x - offset, 0, y1 - y0)`` is linear between
    its two kinks, so the trapezoid rule on the kinks is exact.
    Works elementwise on arrays.
    """
    x0, x1, y0, y1 = np.broadcast_arrays(
        *(np.asarray(v, dtype=float) for v in (x0, x1, y0, y1)))
    height = y1 - y0
    knots = np.stack([
        x0, x1,
        np.clip(y0 - offset, x0, x1),
        np.clip(y1 - offset, x0, x1)
    ])
    knots.sort(axis=0)
    values = np.clip(y1[None] - knots - offset, 0, height[None])
    return np.sum(
        0.5 * (knots[1:] - knots[:-1]) * (values[1:] + values[:-1]), axis=0)


class Kernel():
    """
    A named function on the unit square, evaluated elementwise.

    :param name: catalog name
    :type name: str
    :param func: vectorized function ``f(x, y)``
    :type func: callable
    :param params: parameters used to build the kernel
    :type params: dict
    :param symmetric: True if ``f(x, y) == f(y, x)``
    :type symmetric: bool
    :param binary: True if the kernel only takes the values 0 and 1
    :type binary: bool
    :param square_integral: exact integral of ``f**2`` over a rectangle,
        as ``square_integral(x0, x1, y0, y1)``, or None
    :type square_integral: callable
    :param sup: upper bound of the kernel values
    :type sup: float
    """
    def __init__(self, name, func, params=None, symmetric=True,
                 binary=False, square_integral=None, sup=1.):
        if not callable(func):
            raise TypeError('func must be callable')
        self.name = name
        self.func = func
        self.params = {} if params is None else dict(params)
        self.symmetric = symmetric
        self.binary = binary
        self.square_integral = square_integral
        self.sup = float(sup)

    def __call__(self, x, y):
        return self.func(np.asarray(x, dtype=float), np.asarray(y, dtype=float))

    def __repr__(self):
        return f'Kernel(name={self.name!r}, params={self.params})'

    def __str__(self):
        params = ', '.join(f'{k}={v}' for k, v in self.params.items())
        return f'{self.name}({params})'

    def to_dict(self):
        """Serialize to the catalog JSON form."""
        return {'name': self.name, **self.params}


def _constant(value=1.):
    value = float(value)
    if not 0 <= value <= 1:
        raise ValueError(f'constant kernel value must be in [0, 1]: {value}')
    return Kernel(
        'constant',
        lambda x, y: np.full(np.broadcast(x, y).shape, value),
        params={'value': value},
        binary=value in (0., 1.),
        square_integral=lambda x0, x1, y0, y1: (
            value**2 * (np.asarray(x1) - x0) * (np.asarray(y1) - y0)),
        sup=value
    )


def _min():
    return Kernel('min', np.minimum)


def _max():
    return Kernel('max', np.maximum)


def _product():
    return Kernel(
        'product',
        lambda x, y: x * y,
        square_integral=lambda x0, x1, y0, y1: (
            (np.asarray(x1)**3 - np.asarray(x0)**3) / 3 *
            (np.asarray(y1)**3 - np.asarray(y0)**3) / 3)
    )


def _gaussian_bump(center=0.5, width=0.2):
    center = float(center)
    width = float(width)
    if width <= 0:
        raise ValueError(f'gaussian-bump width must be positive: {width}')
    return Kernel(
        'gaussian-bump',
        lambda x, y: np.exp(
            -((x - center)**2 + (y - center)**2) / (2 * width**2)),
        params={'center': center, 'width': width}
    )


def _decreasing(a=1.):
    a = float(a)
    if a < 0:
        raise ValueError(f'decreasing kernel rate must be nonnegative: {a}')
    return Kernel(
        'decreasing',
        lambda x, y: 1 / (1 + a * (x + y)),
        params={'a': a}
    )


def _linear_gradient(a=0.5):
    """Separately decreasing kernel ``1 - a (x + y) / 2``."""
    a = float(a)
    if not 0 <= a <= 1:
        raise ValueError(f'linear-gradient slope must be in [0, 1]: {a}')

    def _square_integral(x0, x1, y0, y1):
        # G(x + y) with G'' = (1 - a u / 2)**2
        def _antiderivative(x, y):
            u = np.asarray(x) + y
            return (1 - a * u / 2)**4 / (3 * a**2)
        if a == 0:
            return (np.asarray(x1) - x0) * (np.asarray(y1) - y0)
        return (
            _antiderivative(x1, y1) - _antiderivative(x0, y1) -
            _antiderivative(x1, y0) + _antiderivative(x0, y0))

    return Kernel(
        'linear-gradient',
        lambda x, y: 1 - a * (x + y) / 2,
        params={'a': a},
        square_integral=_square_integral
    )


def _step_function(values):
    """
    Piecewise constant kernel on an m x m uniform grid.

    Cell ``(p, q)`` covers ``((p-1)/m, p/m] x ((q-1)/m, q/m]``, with 0
    assigned to the first cell.
    """
    grid = np.asarray(values, dtype=float)
    if grid.ndim != 2 or grid.shape[0] != grid.shape[1] or grid.size == 0:
        raise ValueError('step-function values must be a square matrix')
    if np.any(grid < 0) or np.any(grid > 1):
        raise ValueError('step-function values must be in [0, 1]')
    m = grid.shape[0]

    def _cell(t):
        return np.clip(np.ceil(t * m - 1e-12).astype(int), 1, m) - 1

    return Kernel(
        'step-function',
        lambda x, y: grid[_cell(x), _cell(y)],
        params={'values': grid.tolist()},
        symmetric=bool(np.array_equal(grid, grid.T)),
        binary=bool(np.all(np.isin(grid, (0., 1.)))),
        sup=float(grid.max())
    )


def _upper_triangular():
    return Kernel(
        'upper-triangular',
        lambda x, y: (x <= y).astype(float),
        symmetric=False,
        binary=True,
        square_integral=lambda x0, x1, y0, y1: strip_area(x0, x1, y0, y1, 0.)
    )


def band_kernel(p):
    """
    Indicator kernel of the band ``|x - y| <= p``.

    :param p: band half-width, in (0, 1]
    :type p: float
    :return: the band kernel
    :rtype: Kernel
    """
    p = float(p)

    def _area(x0, x1, y0, y1):
        rect = (np.asarray(x1) - x0) * (np.asarray(y1) - y0)
        above = strip_area(x0, x1, y0, y1, p)
        below = strip_area(y0, y1, x0, x1, p)
        return rect - above - below

    return Kernel(
        'band',
        lambda x, y: (np.abs(x - y) <= p).astype(float),
        params={'p': p},
        binary=True,
        square_integral=_area
    )


CATALOG = {
    'constant': _constant,
    'min': _min,
    'max': _max,
    'product': _product,
    'gaussian-bump': _gaussian_bump,
    'decreasing': _decreasing,
    'linear-gradient': _linear_gradient,
    'step-function': _step_function,
    'upper-triangular': _upper_triangular,
    'band': band_kernel,
}


def kernel_from_dict(kernel_dict):
    """
    Build a catalog kernel from its JSON description.

    :param kernel_dict: ``{"name": ..., parameters...}``, or a bare name
    :type kernel_dict: dict or str
    :return: the kernel
    :rtype: Kernel
    :raises ValueError: if the name is unknown or parameters are invalid
    """
    if isinstance(kernel_dict, str):
        kernel_dict = {'name': kernel_dict}
    if not isinstance(kernel_dict, dict) or 'name' not in kernel_dict:
        raise ValueError(f'Invalid kernel description: {kernel_dict!r}')
    params = dict(kernel_dict)
    name = params.pop('name')
    try:
        factory = CATALOG[name]
    except KeyError as err:
        raise ValueError(
            f'Unknown kernel "{name}". '
            f'Available kernels: {", ".join(sorted(CATALOG))}') from err
    try:
        return factory(**params)
    except TypeError as err:
        raise ValueError(f'Invalid parameters for kernel "{name}": {err}') \
            from err
