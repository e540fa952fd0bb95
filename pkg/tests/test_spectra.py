# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Tests for operator norms and spectral distributions.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays
from scipy.stats import ortho_group
from specedge.profiles import wigner_profile
from specedge.sampler import Gaussian, sample_symmetric, symmetrize
from specedge.spectra import (
    operator_norm, gram_norm, power_iteration, check_symmetric,
    NonSymmetricMatrixError, PowerIterationError, esd, ks_distance,
    semicircle_cdf, semicircle_masses, marchenko_pastur_density,
    marchenko_pastur_masses, histogram_l1, esd_pushforward_check)


def _matrix_with_spectrum(eigenvalues, seed=0):
    Q = ortho_group.rvs(len(eigenvalues), random_state=seed)
    A = Q @ np.diag(eigenvalues) @ Q.T
    return (A + A.T) / 2


def test_dense_norm_is_largest_modulus():
    A = _matrix_with_spectrum([-7., 1., 2., 3., 5.])
    assert operator_norm(A) == pytest.approx(7.)
    norm, converged, method = operator_norm(A, full_output=True)
    assert converged
    assert method == 'dense'


def test_power_iteration_matches_dense_solver():
    A = _matrix_with_spectrum(np.arange(1., 31.) * (-1)**np.arange(30))
    norm, converged, method = operator_norm(
        A, full_output=True, dense_threshold=1)
    assert method == 'power'
    assert converged
    assert norm == pytest.approx(operator_norm(A), rel=1e-8)


def test_power_iteration_budget():
    A = _matrix_with_spectrum(np.linspace(1, 1.001, 20))
    lam, converged = power_iteration(lambda x: A @ x, 20, tol=1e-15,
                                     max_iter=3)
    assert not converged
    assert lam == pytest.approx(1., rel=1e-2)


def test_power_iteration_rejects_non_finite_values():
    with pytest.raises(PowerIterationError):
        power_iteration(lambda x: x * np.inf, 5)


def test_symmetry_check():
    with pytest.raises(NonSymmetricMatrixError):
        operator_norm(np.triu(np.ones((4, 4))))
    with pytest.raises(NonSymmetricMatrixError):
        check_symmetric(np.ones((2, 3)))
    A = np.ones((3, 3))
    A[0, 1] += 1e-12
    assert check_symmetric(A).shape == (3, 3)


@pytest.mark.parametrize('shape', [(3, 5), (5, 5), (6, 2)])
def test_gram_norm_is_squared_symmetrization_norm(shape):
    A = np.random.default_rng(1).standard_normal(shape)
    expected = operator_norm(symmetrize(A))**2
    assert gram_norm(A) == pytest.approx(expected)
    assert gram_norm(A, dense_threshold=1) == pytest.approx(expected, rel=1e-7)
    _norm, _converged, method = gram_norm(
        A, full_output=True, dense_threshold=1)
    assert method == 'power'


@st.composite
def symmetric_matrices(draw, max_size=8):
    n = draw(st.integers(1, max_size))
    X = draw(arrays(np.float64, (n, n), elements=st.floats(-10, 10)))
    return np.triu(X) + np.triu(X, 1).T


@given(A=symmetric_matrices(), data=st.data())
@settings(max_examples=50, deadline=None)
def test_norm_is_invariant_under_simultaneous_permutation(A, data):
    perm = np.array(data.draw(st.permutations(range(A.shape[0]))))
    P = A[np.ix_(perm, perm)]
    assert operator_norm(P) == pytest.approx(operator_norm(A), abs=1e-9)


@given(A=symmetric_matrices())
@settings(max_examples=50, deadline=None)
def test_norm_is_bounded_by_size_times_largest_entry(A):
    N = A.shape[0]
    assert operator_norm(A) <= N * np.max(np.abs(A)) * (1 + 1e-12) + 1e-12


def test_wigner_norm_near_two():
    N = 400
    A = sample_symmetric(wigner_profile(), N, Gaussian(), 0)
    assert operator_norm(A) / np.sqrt(N) == pytest.approx(2., abs=0.15)


def test_semicircle_law():
    assert semicircle_cdf(2.) == pytest.approx(1.)
    assert semicircle_cdf(-3.) == pytest.approx(0.)
    assert semicircle_cdf(0.) == pytest.approx(0.5)
    masses = semicircle_masses(np.linspace(-2, 2, 9))
    assert masses.sum() == pytest.approx(1.)
    np.testing.assert_allclose(masses, masses[::-1])


def test_marchenko_pastur_law():
    c = 0.5
    a, b = (1 - np.sqrt(c))**2, (1 + np.sqrt(c))**2
    edges = np.linspace(0, 3, 31)
    assert marchenko_pastur_masses(edges, c).sum() == pytest.approx(
        1., abs=1e-6)
    assert marchenko_pastur_density(np.array([a / 2, b + 0.1]), c).tolist() \
        == [0., 0.]
    with pytest.raises(ValueError):
        marchenko_pastur_masses(edges, 1.5)


def test_esd_of_wigner_matrix():
    N = 300
    A = sample_symmetric(wigner_profile(), N, Gaussian(), 3)
    summary = esd(A, bins=np.linspace(-2.5, 2.5, 11))
    assert summary.masses.sum() == pytest.approx(1.)
    assert histogram_l1(summary, semicircle_masses(summary.edges)) < 0.15
    assert summary.to_dict()['n'] == N
    assert ks_distance(summary, summary) == 0


def test_wigner_spectral_distributions_are_close_across_sizes():
    small = esd(sample_symmetric(wigner_profile(), 512, Gaussian(), 1))
    large = esd(sample_symmetric(wigner_profile(), 1024, Gaussian(), 2))
    assert ks_distance(small, large) < 0.2


def test_esd_of_constant_spectrum():
    summary = esd(np.sqrt(4) * 3 * np.eye(4), bins=5)
    np.testing.assert_allclose(summary.eigenvalues, 3.)
    assert summary.masses.sum() == pytest.approx(1.)
    assert summary.largest_abs == pytest.approx(3.)


def test_esd_gram_scaling():
    A = np.random.default_rng(2).standard_normal((100, 200))
    summary = esd(A, scaling='N-gram', bins=np.linspace(0, 3, 16))
    assert len(summary.eigenvalues) == 100
    reference = marchenko_pastur_masses(summary.edges, 0.5)
    assert histogram_l1(summary, reference) < 0.3
    with pytest.raises(ValueError):
        esd(A, scaling='N')


@given(A=arrays(
    np.float64, st.tuples(st.integers(1, 6), st.integers(1, 6)),
    elements=st.floats(-10, 10)))
@settings(max_examples=50, deadline=None)
def test_symmetrization_spectrum_pushes_forward_to_gram(A):
    if A.shape[0] > A.shape[1]:
        A = A.T
    check = esd_pushforward_check(A)
    assert check
    assert check.to_dict()['n_zeros'] == A.shape[1] - A.shape[0]


def test_pushforward_needs_wide_matrices():
    with pytest.raises(ValueError):
        esd_pushforward_check(np.ones((3, 2)))
