# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Tests for the tail, doubling, graphon rate and partition checks.

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
from scipy import stats
from specedge.config import config
from specedge.profiles import (
    BandProfile, StepProfile, ContinuousProfile, GramRectProfile, RectStep,
    TriangularProfile, wigner_profile, kernel_from_dict)
from specedge.sampler import Gaussian, Rademacher, SymmetricPareto
from specedge.checkers import (
    monte_carlo_tail, loglog_slope, check_lindeberg, lindeberg_trend,
    check_max_to_zero, check_doubling, check_l1_rate, PartitionError,
    PartitionSpec, interior_points, split_interior, validate_partition,
    band_partition, triangular_partition, single_cell_partition,
    step_partition, checkerboard_partition, partition_from_dict,
    partition_for_profile, partition_size, partition_variances)
from specedge.checkers import doubling, tails

N_GRID = [48, 96, 192]
VALID_PARTITIONS = [
    band_partition(0.25), band_partition(0.4), triangular_partition(),
    single_cell_partition(), step_partition([0, 0.5, 1])]


def test_gaussian_lindeberg_term():
    check = check_lindeberg(Gaussian(), wigner_profile(), 100, epsilon=1.)
    # E[X**2; |X| >= 10] for a standard normal X
    expected = 2 * (10 * stats.norm.pdf(10) + stats.norm.sf(10))
    assert check['value'] == pytest.approx(expected, rel=1e-9)
    assert check['value'] == pytest.approx(1.553e-21, rel=0.02)
    assert check['passed']


def test_bounded_entries_have_no_lindeberg_term():
    check = check_lindeberg(Rademacher(), wigner_profile(), 100, epsilon=1.)
    assert check['value'] == 0
    trend = lindeberg_trend(Rademacher(), wigner_profile(), N_GRID)
    assert trend.passed
    assert trend.slope is None


def test_lindeberg_trend_of_gaussian_entries():
    trend = lindeberg_trend(Gaussian(), BandProfile(0.3), N_GRID)
    assert trend
    assert not trend.details['flagged']
    assert trend.slope < -1


def test_heavy_tails_flag_slow_lindeberg_decay():
    trend = lindeberg_trend(SymmetricPareto(3.), wigner_profile(), N_GRID)
    assert not trend.passed
    assert trend.details['flagged']
    # E[X**2; |X| >= c] decays like 1/c
    assert trend.slope == pytest.approx(-0.5, abs=1e-6)
    assert trend.to_dict()['check'] == 'lindeberg'


def test_monte_carlo_tail_method():
    config.tail_method = 'montecarlo'
    config.tail_mc_draws = 200000
    check = check_lindeberg(Gaussian(), wigner_profile(), 16, epsilon=0.5)
    config.tail_method = 'analytic'
    exact = check_lindeberg(Gaussian(), wigner_profile(), 16, epsilon=0.5)
    assert check['value'] == pytest.approx(exact['value'], rel=0.05)
    assert check['upper'] >= check['value']


def test_monte_carlo_tail_estimates():
    prob, second = monte_carlo_tail(Gaussian(), 1., draws=100000, seed=3)
    assert prob.value == pytest.approx(Gaussian().tail_probability(1.),
                                       abs=0.01)
    assert second.value == pytest.approx(Gaussian().tail_second_moment(1.),
                                         abs=0.02)
    assert prob.upper > prob.value


def test_max_to_zero():
    assert check_max_to_zero(Gaussian(), N_GRID)
    assert check_max_to_zero(Rademacher(), N_GRID).values == [0., 0., 0.]
    # N**2 (x_min / sqrt(N))**3 grows like sqrt(N)
    heavy = check_max_to_zero(SymmetricPareto(3.), N_GRID)
    assert not heavy
    assert heavy.slope == pytest.approx(0.5, abs=1e-6)


def test_loglog_slope():
    assert loglog_slope([1, 2], [1., 0.]) == (None, None)
    assert loglog_slope([4], [2.]) == (None, None)
    slope, stderr = loglog_slope([1, 2, 4, 8], [1., 0.5, 0.25, 0.125])
    assert slope == pytest.approx(-1.)
    assert stderr == pytest.approx(0., abs=1e-12)


def test_rate_checks_share_the_99_percent_quantile():
    assert doubling.CI_99_Z is tails.CI_99_Z
    assert tails.CI_99_Z == pytest.approx(2.5758, abs=1e-4)


def test_band_fails_full_doubling():
    # p N = 2: entries with j - i = 2 lose their odd-row neighbours
    report = check_doubling(BandProfile(0.25), 8)
    assert not report
    assert report.n_violations > 0
    assert (1, 3) in report.violations
    diagonal = check_doubling(BandProfile(0.25), 8, diagonal_only=True)
    assert diagonal
    assert diagonal.equality


def test_wigner_doubling_holds_with_equality():
    report = check_doubling(wigner_profile(), 10)
    assert report.passed
    assert report.equality
    assert report.to_dict()['n_violations'] == 0


def test_step_doubling():
    step = StepProfile([0, 0.5, 1], [[1., 0.5], [0.5, 0.2]])
    assert check_doubling(step, 8, diagonal_only=True)


def _decreasing_grid(increments):
    """Symmetric grid in [0, 1], nonincreasing along rows and columns."""
    cumulative = np.cumsum(np.cumsum(increments, axis=0), axis=1)
    grid = 1 - cumulative / (cumulative.max() + 1)
    return (grid + grid.T) / 2


monotone_increments = st.integers(1, 5).flatmap(
    lambda m: arrays(np.float64, (m, m), elements=st.floats(0, 1)))


@settings(max_examples=100, deadline=None)
@given(increments=monotone_increments, N=st.integers(1, 24))
def test_decreasing_profiles_pass_doubling(increments, N):
    grid = _decreasing_grid(increments)
    kernel = kernel_from_dict({'name': 'step-function', 'values': grid})
    report = check_doubling(ContinuousProfile(kernel), N)
    assert report.passed, report.violations[:5]


@settings(max_examples=100, deadline=None)
@given(increments=monotone_increments, t=st.integers(1, 6))
def test_aligned_decreasing_steps_double_with_equality(increments, t):
    m = len(increments)
    step = StepProfile(np.linspace(0, 1, m + 1), _decreasing_grid(increments))
    report = check_doubling(step, m * t)
    assert report.passed
    assert report.equality


def test_l1_rate_of_aligned_steps_is_exact():
    step = StepProfile([0, 0.5, 1], [[1., 0.5], [0.5, 0.2]])
    report = check_l1_rate(step, N_GRID)
    assert report.passed
    assert report.details['exact']
    assert report.details['C'] == 0


def test_band_converges_at_rate_one():
    report = check_l1_rate(BandProfile(0.25), N_GRID)
    assert report.passed
    assert report.slope == pytest.approx(-1., abs=0.1)
    assert report.details['C'] > 0


def test_band_partition_is_valid():
    ps = band_partition(0.25)
    report = validate_partition(
        ps, 16, n_list=[16, 32, 64],
        variances=BandProfile(0.25).variance_matrix(16))
    assert report.passed
    assert report.ncells == 3
    assert report.to_dict()['d'] == 3


def test_triangular_partition():
    ps = triangular_partition()
    variances = partition_variances(TriangularProfile(), 4)
    assert variances.shape == (8, 8)
    report = validate_partition(ps, 8, variances=variances)
    assert report.passed
    with pytest.raises(PartitionError):
        validate_partition(ps, 7)


def test_checkerboard_is_not_a_valid_partition():
    report = validate_partition(checkerboard_partition(), 8)
    assert not report
    assert not report.checks['boundary_crossings']
    assert not report.checks['axial_convexity']
    assert 'boundary_crossings' in report.witnesses


def test_nonconstant_levels_are_reported():
    report = validate_partition(
        single_cell_partition(), 6,
        variances=BandProfile(0.25).variance_matrix(6))
    assert not report.checks['constant_levels']


def test_single_cell_interior():
    N = 10
    points = interior_points(single_cell_partition(), N)
    assert len(points) == (N - 2)**2
    indices = points.indices()
    assert min(min(p) for p in indices) == 2
    assert max(max(p) for p in indices) == N - 1
    assert int(points.complement.sum()) == N**2 - (N - 2)**2


@pytest.mark.parametrize('ps', VALID_PARTITIONS, ids=repr)
def test_boundary_is_thin(ps):
    for n in (32, 64, 128):
        points = interior_points(ps, n)
        assert int(points.complement.sum()) <= 6 * points.ncells * n


@pytest.mark.parametrize('ps', VALID_PARTITIONS[:3], ids=repr)
def test_interior_points_nest_under_doubling(ps):
    for n in (8, 16, 32):
        interior = interior_points(ps, n).mask
        doubled = interior_points(ps, 2 * n).mask[1::2, 1::2]
        assert np.all(doubled[interior])


def test_split_interior():
    A = np.random.default_rng(0).standard_normal((12, 12))
    A1, A2 = split_interior(A, band_partition(0.25))
    np.testing.assert_array_equal(A1 + A2, A)
    assert not np.any((A1 != 0) & (A2 != 0))


def test_malformed_partitions():
    overlap = PartitionSpec(
        'overlap', lambda n: [np.ones((n, n)), np.eye(n)])
    gap = PartitionSpec('gap', lambda n: [np.eye(n)])
    with pytest.raises(PartitionError):
        overlap.labels(4)
    with pytest.raises(PartitionError):
        gap.labels(4)
    with pytest.raises(PartitionError):
        PartitionSpec('empty', lambda n: []).labels(4)
    with pytest.raises(TypeError):
        PartitionSpec('bad', None)


def test_step_partition():
    ps = step_partition([0, 0.5, 1])
    assert ps.ncells(8) == 4
    assert validate_partition(ps, 8, n_list=[8, 16])


def test_partition_from_dict():
    assert partition_from_dict({'name': 'band', 'p': 0.2}).name == 'band(p=0.2)'
    assert partition_from_dict('triangular').name == 'triangular'
    assert partition_from_dict(
        {'name': 'step', 'breakpoints': [0, 0.5, 1]}).ncells(4) == 4
    for bad in ({'name': 'band'}, {'name': 'hexagons'}, {'p': 1}, [1]):
        with pytest.raises(ValueError):
            partition_from_dict(bad)


def test_partition_for_profile():
    assert partition_for_profile(BandProfile(0.3)).name == 'band(p=0.3)'
    assert partition_for_profile(wigner_profile()).name == 'single-cell'
    assert partition_for_profile(TriangularProfile()).name == 'triangular'
    step = StepProfile([0, 0.5, 1], [[1., 0.5], [0.5, 0.2]])
    assert partition_for_profile(step).ncells(4) == 4
    assert partition_for_profile(
        ContinuousProfile(kernel_from_dict('product'))) is None
    rect = GramRectProfile(0.5, RectStep([0, 1], [0, 1], [[1.]]))
    assert partition_for_profile(rect) is None
    assert partition_size(rect, 10) == 15
    assert partition_size(wigner_profile(), 10) == 10
    np.testing.assert_array_equal(
        partition_variances(wigner_profile(), 3), np.ones((3, 3)))
