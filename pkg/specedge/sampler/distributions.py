# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Entry distributions.

Every distribution is symmetric, with mean 0 and variance 1 where the
variance exists. Tail quantities are analytic.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import math
import logging
import numpy as np
from scipy import stats
from scipy.special import factorial2
logger = logging.getLogger(__name__.rsplit('.', maxsplit=1)[-1])


class EntryDistribution():
    """
    Base class for entry distributions.

    Subclasses implement ``sample``, ``raw_moment``, ``tail_probability``
    and ``tail_second_moment``.
    """
    name = None
    #: moments of order below this value are finite
    max_finite_moment = math.inf
    #: almost sure bound on |X| (inf if unbounded)
    bound = math.inf

    def __repr__(self):
        return f'{type(self).__name__}({self.to_dict()})'

    def __str__(self):
        return self.name

    def __eq__(self, other):
        return (
            isinstance(other, EntryDistribution) and
            self.to_dict() == other.to_dict())

    def __hash__(self):
        return hash(str(self.to_dict()))

    def sample(self, rng, size):
        """
        Draw independent values.

        :param rng: random generator
        :type rng: numpy.random.Generator
        :param size: output shape
        :type size: int or tuple of int
        :return: the draws
        :rtype: numpy.ndarray
        """
        raise NotImplementedError

    def raw_moment(self, q):
        """``E[X**q]``, or inf if the moment does not exist."""
        raise NotImplementedError

    def moments(self, q_max):
        """Raw moments of order ``0..q_max``."""
        return [self.raw_moment(q) for q in range(q_max + 1)]

    def tail_probability(self, c):
        """``P(|X| >= c)``."""
        raise NotImplementedError

    def tail_second_moment(self, c):
        """``E[X**2; |X| >= c]``."""
        raise NotImplementedError

    def truncated_mean(self, c):
        """``E[X; |X| <= c]``: zero for a symmetric distribution."""
        return 0.

    @property
    def has_4_plus_delta_moment(self):
        """True if ``E[|X|**(4 + delta)]`` is finite for some delta > 0."""
        return self.max_finite_moment > 4

    def to_dict(self):
        """Serialize to the distribution JSON form."""
        return {'name': self.name}


class Gaussian(EntryDistribution):
    """Standard normal distribution."""
    name = 'gaussian'

    def sample(self, rng, size):
        return rng.standard_normal(size)

    def raw_moment(self, q):
        if q == 0:
            return 1.
        if q % 2:
            return 0.
        return float(factorial2(q - 1, exact=True))

    def tail_probability(self, c):
        return float(2 * stats.norm.sf(c))

    def tail_second_moment(self, c):
        c = max(float(c), 0.)
        return float(2 * (c * stats.norm.pdf(c) + stats.norm.sf(c)))


class Rademacher(EntryDistribution):
    """Uniform distribution on {-1, 1}."""
    name = 'rademacher'
    bound = 1.

    def sample(self, rng, size):
        return 2. * rng.integers(0, 2, size=size) - 1

    def raw_moment(self, q):
        return 0. if q % 2 else 1.

    def tail_probability(self, c):
        return 1. if c <= 1 else 0.

    def tail_second_moment(self, c):
        return 1. if c <= 1 else 0.


class StudentT(EntryDistribution):
    """
    Student t distribution with ``df`` degrees of freedom, rescaled by
    ``sqrt((df - 2) / df)`` to unit variance.

    :param df: degrees of freedom, larger than 4
    :type df: float
    """
    name = 'student-t'

    def __init__(self, df=5.):
        df = float(df)
        if df <= 4:
            raise ValueError(f'Student t needs df > 4: {df}')
        self.df = df
        self.scale = math.sqrt((df - 2) / df)
        self.max_finite_moment = df

    def __str__(self):
        return f'{self.name}({self.df:g})'

    def sample(self, rng, size):
        return self.scale * rng.standard_t(self.df, size)

    def raw_moment(self, q):
        if q % 2:
            return 0.
        if q >= self.df:
            return math.inf
        return float(self.scale**q * stats.t.moment(q, self.df))

    def tail_probability(self, c):
        return float(2 * stats.t.sf(c / self.scale, self.df))

    def tail_second_moment(self, c):
        nu = self.df
        u = max(float(c), 0.) / self.scale
        # E[T**2; |T| >= u] for the unscaled t variable
        unscaled = (
            nu * (nu - 1) / (nu - 2) *
            2 * stats.t.sf(u * math.sqrt((nu - 2) / nu), nu - 2) -
            nu * 2 * stats.t.sf(u, nu)
        )
        return float(self.scale**2 * max(unscaled, 0.))

    def to_dict(self):
        return {'name': self.name, 'df': self.df}


class SymmetricPareto(EntryDistribution):
    """
    Symmetrized Pareto distribution with density proportional to
    ``|x|**(-alpha - 1)`` for ``|x| >= x_min``, with unit variance.

    :param alpha: tail exponent, larger than 2
    :type alpha: float
    """
    name = 'symmetric-pareto'

    def __init__(self, alpha=3.):
        alpha = float(alpha)
        if alpha <= 2:
            raise ValueError(
                f'Symmetric Pareto needs alpha > 2 for unit variance: {alpha}')
        self.alpha = alpha
        self.x_min = math.sqrt((alpha - 2) / alpha)
        self.max_finite_moment = alpha

    def __str__(self):
        return f'{self.name}({self.alpha:g})'

    def sample(self, rng, size):
        # 1 - U is in (0, 1]
        magnitude = self.x_min * (1 - rng.random(size))**(-1 / self.alpha)
        sign = 2. * rng.integers(0, 2, size=size) - 1
        return sign * magnitude

    def raw_moment(self, q):
        if q % 2:
            return 0.
        if q >= self.alpha:
            return math.inf
        return self.alpha * self.x_min**q / (self.alpha - q)

    def tail_probability(self, c):
        if c <= self.x_min:
            return 1.
        return (self.x_min / c)**self.alpha

    def tail_second_moment(self, c):
        c = max(float(c), self.x_min)
        return (
            self.alpha * self.x_min**self.alpha * c**(2 - self.alpha) /
            (self.alpha - 2))

    def to_dict(self):
        return {'name': self.name, 'alpha': self.alpha}


DISTRIBUTIONS = {
    'gaussian': Gaussian,
    'rademacher': Rademacher,
    'student-t': StudentT,
    'symmetric-pareto': SymmetricPareto,
}


def distribution_from_dict(dist_dict):
    """
    Build an entry distribution from its JSON description.

    :param dist_dict: ``{"name": ..., parameters...}``, or a bare name
    :type dist_dict: dict or str
    :return: the distribution
    :rtype: EntryDistribution
    :raises ValueError: for unknown names or invalid parameters
    """
    if isinstance(dist_dict, str):
        dist_dict = {'name': dist_dict}
    if not isinstance(dist_dict, dict) or 'name' not in dist_dict:
        raise ValueError(f'Invalid distribution description: {dist_dict!r}')
    params = dict(dist_dict)
    name = params.pop('name')
    try:
        cls = DISTRIBUTIONS[name]
    except KeyError as err:
        raise ValueError(
            f'Unknown distribution "{name}". '
            f'Available distributions: {", ".join(DISTRIBUTIONS)}') from err
    try:
        return cls(**params)
    except TypeError as err:
        raise ValueError(
            f'Invalid parameters for distribution "{name}": {err}') from err
