# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Tests for the exact trace expansion at toy sizes.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import math
from fractions import Fraction
import numpy as np
import pytest
from specedge.profiles import StepProfile, BandProfile, wigner_profile
from specedge.sampler import Gaussian, Rademacher, StudentT
from specedge.trees import catalan
from specedge.moments import (
    GuardExceededError, M_exact, bad_cycle_sum, bad_cycle_bound,
    check_bad_cycle_bound, trace_monte_carlo, xi_bound)

RADEMACHER_MOMENTS = Rademacher().moments(6)
GAUSSIAN_MOMENTS = Gaussian().moments(6)


@pytest.mark.parametrize('N, k', [(3, 1), (4, 2), (5, 2), (6, 3), (8, 4)])
def test_labeling_sum_of_constant_profile(N, k):
    S = np.ones((N, N))
    assert M_exact(k, N, S) == pytest.approx(catalan(k) * math.perm(N, k + 1))
    assert M_exact(k, N, S, exact=True) == catalan(k) * math.perm(N, k + 1)


def test_labeling_sum_edge_cases():
    assert M_exact(0, 5, np.ones((5, 5))) == 5
    assert M_exact(3, 3, np.ones((3, 3))) == 0
    with pytest.raises(GuardExceededError):
        M_exact(1, 9, np.ones((9, 9)))
    with pytest.raises(GuardExceededError):
        M_exact(5, 4, np.ones((4, 4)))
    with pytest.raises(ValueError):
        M_exact(1, 4, np.ones((3, 3)))


def test_labeling_sum_is_rational():
    S = StepProfile([0, 0.5, 1], [[1, 0.5], [0.5, 0.5]]).variance_matrix(4)
    value = M_exact(2, 4, S, exact=True)
    assert isinstance(value, Fraction)
    assert float(value) == pytest.approx(M_exact(2, 4, S))


def test_labeling_sum_below_graphon_bound():
    profile = BandProfile(0.4)
    for N in (4, 5, 6):
        S = profile.variance_matrix(N)
        for k in (1, 2, 3):
            assert M_exact(k, N, S) / N**(k + 1) <= xi_bound(k, N, profile)


@pytest.mark.parametrize('profile', [
    wigner_profile(), BandProfile(0.4),
    StepProfile([0, 0.3, 1], [[0.6, 0.2], [0.2, 0.9]])], ids=str)
def test_labeling_sum_below_sup_bound(profile):
    for N in (4, 5, 6):
        S = profile.variance_matrix(N)
        V0 = S.max()
        for k in (1, 2, 3):
            assert M_exact(k, N, S) <= N**(k + 1) * (4 * V0)**k


def test_second_moment_decomposition():
    decomposition = bad_cycle_sum(1, 2, np.ones((2, 2)), GAUSSIAN_MOMENTS)
    assert decomposition.M_exact == 2
    assert decomposition.B_exact == 2
    assert decomposition.trace_expectation == 4


def test_fourth_moment_of_small_matrices():
    # E tr(A^4) for 2 x 2 matrices with unit variances
    rademacher = bad_cycle_sum(
        2, 2, np.ones((2, 2)), RADEMACHER_MOMENTS, exact=True)
    assert rademacher.M_exact == 0
    assert rademacher.trace_expectation == 12
    gaussian = bad_cycle_sum(
        2, 2, np.ones((2, 2)), GAUSSIAN_MOMENTS, exact=True)
    assert gaussian.trace_expectation == 20


@pytest.mark.parametrize('N, k', [(4, 1), (5, 2), (6, 3)])
def test_good_walks_match_labelings(N, k):
    S = StepProfile([0, 0.5, 1], [[1, 0.3], [0.3, 0.7]]).variance_matrix(N)
    decomposition = bad_cycle_sum(k, N, S, GAUSSIAN_MOMENTS, exact=True)
    assert decomposition.good_sum == decomposition.M_exact
    assert decomposition.B_exact >= 0


def test_trace_decomposition_errors():
    S = np.ones((4, 4))
    with pytest.raises(GuardExceededError):
        bad_cycle_sum(4, 4, S, GAUSSIAN_MOMENTS)
    with pytest.raises(GuardExceededError):
        bad_cycle_sum(1, 7, np.ones((7, 7)), GAUSSIAN_MOMENTS)
    with pytest.raises(ValueError):
        bad_cycle_sum(3, 4, S, GAUSSIAN_MOMENTS[:4])
    with pytest.raises(ValueError):
        bad_cycle_sum(1, 4, S, [1., 0.5, 1.])
    with pytest.raises(ValueError):
        bad_cycle_sum(2, 4, S, [1., 0., 1., 0.2, 3.], exact=True)


def test_bad_cycle_bound_holds_for_bounded_entries():
    for N in (4, 5, 6):
        S = wigner_profile().variance_matrix(N)
        for k in (1, 2, 3):
            check = check_bad_cycle_bound(k, N, S, 1., 0.5, RADEMACHER_MOMENTS)
            assert check.holds
            assert isinstance(check.rhs, Fraction)


def test_bad_cycle_bound_with_float_arithmetic():
    S = np.ones((4, 4))
    bound = bad_cycle_bound(2, 4, S, 1., 0.25)
    assert isinstance(bound, float)
    assert check_bad_cycle_bound(2, 4, S, 1., 0.25, RADEMACHER_MOMENTS)


def test_monte_carlo_trace_of_rademacher_matrices():
    estimate = trace_monte_carlo(
        2, np.ones((2, 2)), Rademacher(), 20000, seed=1, batch_size=5000)
    assert estimate.n_samples == 20000
    assert estimate.agrees_with(12)


@pytest.mark.parametrize('dist', [Gaussian(), StudentT(9.)])
def test_monte_carlo_trace_agrees_with_enumeration(dist):
    S = StepProfile([0, 0.5, 1], [[1, 0.5], [0.5, 0.8]]).variance_matrix(3)
    exact = bad_cycle_sum(2, 3, S, dist.moments(4)).trace_expectation
    estimate = trace_monte_carlo(2, S, dist, 50000, seed=7)
    assert estimate.agrees_with(exact)


def test_monte_carlo_is_reproducible():
    S = np.ones((3, 3))
    first = trace_monte_carlo(1, S, Gaussian(), 1000, seed=3)
    second = trace_monte_carlo(1, S, Gaussian(), 1000, seed=3)
    other = trace_monte_carlo(1, S, Gaussian(), 1000, seed=4)
    assert first.mean == second.mean
    assert first.mean != other.mean
