# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Convergence sweep: sample matrices on a grid of sizes and seeds and
compare their rescaled operator norms with the predicted edge.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
import numpy as np
from tqdm import tqdm
from ..config import config, se_exit
from ..config.utils import ConfigError
from ..profiles import ProfileError, RectStep, wigner_profile
from ..sampler import (
    SampleBatch, truncate_split, write_matrix, read_matrix, MatrixFileError)
from ..spectra import (
    operator_norm, gram_norm, esd, semicircle_masses,
    marchenko_pastur_masses, histogram_l1, PowerIterationError,
    NonSymmetricMatrixError)
from ..checkers import loglog_slope
from ..trees import TreeCapExceededError
from .experiment import (
    ExperimentResult, predict_edge, output_path, write_csv, write_json)
logger = logging.getLogger(__name__.rsplit('.', maxsplit=1)[-1])

MEMORY_GUARD = 4096
MIN_SEEDS = 3
# number of increases of the gap allowed along the size grid
GAP_INCREASE_SLACK = 1

SAMPLE_FIELDS = [
    'N', 'M', 'seed', 'rescaled_norm', 'converged', 'method']
TRUNCATION_FIELDS = ['n_truncated', 'gt_norm', 'mean_shift_norm']
SUMMARY_FIELDS = [
    'N', 'median', 'q25', 'q75', 'iqr', 'predicted', 'predicted_root',
    'gap']


def check_memory_guard(profile, N_list, guard=None):
    """
    Reject sizes whose dense samples would be too large.

    Symmetric profiles allow ``N <= guard``, rectangular profiles
    ``M N <= guard**2``.

    :raises ValueError: for infeasible sizes
    """
    if guard is None:
        guard = config.get('memory_guard', MEMORY_GUARD)
    for N in N_list:
        if profile.is_rectangular:
            M = profile.rows(N)
            if M * N > guard**2:
                raise ValueError(
                    f'Sample size {M}x{N} exceeds the memory guard '
                    f'({guard}x{guard})')
        elif N > guard:
            raise ValueError(
                f'Sample size N={N} exceeds the memory guard ({guard})')


def rescaled_norm(profile, A, N):
    """
    ``|A|_op / sqrt(N)``, or ``|A A^T|_op / N`` for rectangular profiles.

    :return: the rescaled norm, the convergence flag and the solver
    :rtype: tuple
    """
    if profile.is_rectangular:
        norm, converged, method = gram_norm(A, full_output=True)
        return norm / N, converged, method
    norm, converged, method = operator_norm(A, full_output=True)
    return norm / np.sqrt(N), converged, method


def _sample_task(profile, dist, N, seed, truncation):
    """Sample one matrix and measure it."""
    A = SampleBatch(profile, N, dist, [seed]).sample(seed)
    value, converged, method = rescaled_norm(profile, A, N)
    row = {
        'N': N,
        'M': A.shape[0],
        'seed': seed,
        'rescaled_norm': value,
        'converged': converged,
        'method': method
    }
    if truncation:
        split = truncate_split(A, dist=dist, sigma=profile.sigma_matrix(N))
        row['n_truncated'] = split.n_truncated
        row['gt_norm'] = (
            operator_norm(split.a_gt) / np.sqrt(N) if split.n_truncated
            else 0.)
        row['mean_shift_norm'] = split.mean_shift_norm / np.sqrt(N)
    return row


def run_sweep(profile, dist, N_list=None, seeds=None, threads=None,
              truncation=False):
    """
    Sample and measure one matrix per (N, seed).

    Tasks run in a thread pool; results are stored by position, so they
    are ordered by (N, seed) whatever the completion order.

    :param profile: variance profile
    :type profile: ProfileSpec
    :param dist: entry distribution
    :type dist: EntryDistribution
    :param N_list: sizes (None: configured value)
    :type N_list: list of int
    :param seeds: seeds (None: configured value)
    :type seeds: list of int
    :param threads: number of worker threads (None: configured value)
    :type threads: int
    :param truncation: also split every sample at the truncation level
    :type truncation: bool
    :return: one row per (N, seed)
    :rtype: list of dict
    """
    if N_list is None:
        N_list = config.get('N_list', [256, 512, 1024])
    if seeds is None:
        seeds = config.get('seeds', [0, 1, 2, 3, 4])
    if threads is None:
        threads = config.get('threads', 1)
    tasks = [(N, seed) for N in N_list for seed in seeds]
    rows = [None] * len(tasks)
    with ThreadPoolExecutor(max_workers=threads) as executor:
        futures = {
            executor.submit(
                _sample_task, profile, dist, N, seed, truncation): pos
            for pos, (N, seed) in enumerate(tasks)}
        for future in tqdm(
                as_completed(futures), total=len(futures), unit='samples',
                disable=not config.get('progress', False)):
            rows[futures[future]] = future.result()
    for row in rows:
        if not row['converged']:
            logger.warning(
                f'Norm of sample N={row["N"]}, seed={row["seed"]} did not '
                'converge')
    return rows


def _gap_nonincreasing(gaps, slack=GAP_INCREASE_SLACK):
    """True if the gaps increase at most ``slack`` times along the grid."""
    return int(np.sum(np.diff(gaps) > 0)) <= slack


def summarize(rows, N_list, predicted, predicted_root):
    """
    Per-size medians and quartiles of the rescaled norms, with the gap
    to the prediction.

    :return: summary rows, as dicts
    :rtype: list of dict
    """
    summary = []
    for N in N_list:
        values = np.array(
            [row['rescaled_norm'] for row in rows if row['N'] == N])
        q25, median, q75 = np.percentile(values, [25, 50, 75])
        summary.append({
            'N': N,
            'median': float(median),
            'q25': float(q25),
            'q75': float(q75),
            'iqr': float(q75 - q25),
            'predicted': predicted,
            'predicted_root': predicted_root,
            'gap': abs(float(median) - predicted)
        })
    return summary


def convergence_diagnostics(summary):
    """Trend of the gap between medians and prediction."""
    N_list = [row['N'] for row in summary]
    gaps = [row['gap'] for row in summary]
    slope, stderr = loglog_slope(N_list, gaps)
    return {
        'medians': [row['median'] for row in summary],
        'gaps': gaps,
        'gap_slope': slope,
        'gap_slope_stderr': stderr,
        'gap_nonincreasing': _gap_nonincreasing(gaps)
    }


def _reference_masses(profile, summary):
    """Limit law of a constant unit profile on the histogram bins."""
    if profile.is_rectangular:
        rect = profile.rect
        if isinstance(rect, RectStep) and np.all(rect.sigma == 1):
            return 'marchenko-pastur', marchenko_pastur_masses(
                summary.edges, profile.c)
    elif profile.to_dict() == wigner_profile().to_dict():
        return 'semicircle', semicircle_masses(summary.edges)
    return None, None


def spectrum_report(profile, A):
    """
    Spectral histogram of one matrix, with the L1 distance to the limit
    law when it is known.

    :return: the histogram summary and its JSON form
    :rtype: tuple
    """
    summary = esd(A, 'N-gram' if profile.is_rectangular else 'sqrtN')
    result = summary.to_dict()
    law, masses = _reference_masses(profile, summary)
    if law is not None:
        result['reference'] = law
        result['histogram_l1'] = histogram_l1(summary, masses)
    return summary, result


def write_spectrum(profile, dist, N, seed):
    """
    Write the eigenvalues and the spectral histogram of one sample.

    :return: histogram summary, with the L1 distance to the limit law
        when it is known
    :rtype: dict
    """
    A = SampleBatch(profile, N, dist, [seed]).sample(seed)
    summary, result = spectrum_report(profile, A)
    write_csv(
        'converge_eigenvalues.csv', ['N', 'seed', 'eigenvalue'],
        ((N, seed, e) for e in summary.eigenvalues))
    return result


def dump_sample(profile, dist, N, seed):
    """
    Write one sample to a binary matrix file.

    :return: path of the file
    :rtype: str
    """
    A = SampleBatch(profile, N, dist, [seed]).sample(seed)
    path = output_path(f'converge_sample_N{N}_seed{seed}.bin')
    write_matrix(path, A)
    logger.info(f'Sample {A.shape[0]}x{A.shape[1]} written to {path}')
    return path


def prediction_dict(report, profile):
    """Predicted edge with method metadata."""
    if profile.is_rectangular:
        value = report.metadata['gram_edge']
        root = report.metadata['gram_edge_root']
    else:
        value = report.headline.value
        root = report.estimates['root'].value
    return {
        'mode': 'gram' if profile.is_rectangular else 'symmetric',
        'edge': value,
        'edge_root': root,
        'method': report.headline.method,
        'K': report.headline.K,
        'low_confidence': report.low_confidence,
        'moments': report.to_dict()
    }


def _check_sweep_config(profile, N_list, seeds):
    if len(seeds) < MIN_SEEDS:
        raise ConfigError(
            f'A convergence sweep needs at least {MIN_SEEDS} seeds, '
            f'got {len(seeds)}')
    check_memory_guard(profile, N_list)


def _acceptance_checks(summary, prediction):
    """Relative gap of the largest-N median, when a tolerance is set."""
    rel_tol = config.get('acceptance_rel_tol')
    if rel_tol is None:
        return {}
    gap = summary[-1]['gap']
    rel_gap = gap / prediction['edge'] if prediction['edge'] > 0 else gap
    return {'acceptance': {
        'rel_gap': rel_gap, 'rel_tol': rel_tol,
        'passed': bool(rel_gap <= rel_tol)}}


def measure_matrix_file(profile, path):
    """
    Rescaled norm and spectral histogram of a matrix read from a binary
    matrix file.

    Symmetric profiles expect a symmetric N x N matrix and measure
    ``|A|_op / sqrt(N)``; rectangular profiles measure ``|A A^T|_op / N``
    for an M x N matrix.

    :param profile: variance profile the matrix was sampled from
    :type profile: ProfileSpec
    :param path: matrix file
    :type path: str
    :return: the measurement row and the spectrum summary
    :rtype: tuple
    :raises MatrixFileError: if the file is malformed
    :raises NonSymmetricMatrixError: if a symmetric profile gets a
        non-symmetric matrix
    """
    A = read_matrix(path)
    N = A.shape[1]
    value, converged, method = rescaled_norm(profile, A, N)
    row = {
        'file': path,
        'N': N,
        'M': A.shape[0],
        'seed': None,
        'rescaled_norm': value,
        'converged': converged,
        'method': method
    }
    summary, spectrum = spectrum_report(profile, A)
    write_csv(
        'converge_matrix_file_eigenvalues.csv', ['N', 'eigenvalue'],
        ((N, e) for e in summary.eigenvalues))
    return row, spectrum


def _converge_from_file(profile, prediction, path):
    try:
        row, spectrum = measure_matrix_file(profile, path)
    except (OSError, MatrixFileError, NonSymmetricMatrixError,
            PowerIterationError) as msg:
        logger.error(msg)
        se_exit(1)
    summary = summarize(
        [row], [row['N']], prediction['edge'], prediction['edge_root'])
    checks = _acceptance_checks(summary, prediction)
    write_csv(
        'converge_matrix_file.csv', ['file'] + SAMPLE_FIELDS,
        ([row[f] for f in ['file'] + SAMPLE_FIELDS],))
    result = ExperimentResult(
        'converge', [row], prediction,
        {'matrix_file': path, 'spectrum': spectrum, 'summary': summary},
        checks)
    write_json('converge_matrix_file.json', result.to_dict())
    logger.info(
        f'{path} ({row["M"]}x{row["N"]}): rescaled norm '
        f'{row["rescaled_norm"]:.6f}, gap {summary[0]["gap"]:.2e}')
    return result


def _exit_if_failed(result):
    if not result.passed:
        logger.error(
            'Largest-N median is outside the acceptance tolerance: '
            f'relative gap {result.checks["acceptance"]["rel_gap"]:.3e}')
        se_exit(2)


def cmd_converge():
    """
    Sample matrices, compute rescaled norms and compare them with the
    predicted edge.

    When ``matrix_file`` is set, the matrix stored in that file is
    measured instead of sampling.

    :return: the experiment result
    :rtype: ExperimentResult
    """
    profile = config.profile
    dist = config.distribution
    N_list = config.N_list
    seeds = config.seeds
    matrix_file = config.get('matrix_file')
    try:
        if matrix_file is None:
            _check_sweep_config(profile, N_list, seeds)
        report = predict_edge(profile)
    except (ConfigError, ValueError, ProfileError,
            TreeCapExceededError) as msg:
        logger.error(msg)
        se_exit(1)
    prediction = prediction_dict(report, profile)
    logger.info(
        f'Predicted edge: {prediction["edge"]:.6f} '
        f'({prediction["method"]}, K={prediction["K"]}); '
        f'root lower bound: {prediction["edge_root"]:.6f}')
    if matrix_file is not None:
        result = _converge_from_file(profile, prediction, matrix_file)
        _exit_if_failed(result)
        return result
    logger.info(
        f'Sampling {len(N_list)} sizes x {len(seeds)} seeds '
        f'({dist} entries)')
    try:
        rows = run_sweep(profile, dist, N_list, seeds)
    except PowerIterationError as msg:
        logger.error(msg)
        se_exit(1)
    summary = summarize(
        rows, N_list, prediction['edge'], prediction['edge_root'])
    diagnostics = convergence_diagnostics(summary)
    checks = _acceptance_checks(summary, prediction)
    if config.get('write_eigenvalues', False):
        diagnostics['spectrum'] = write_spectrum(
            profile, dist, N_list[-1], seeds[0])
    if config.get('dump_matrix', False):
        diagnostics['matrix_file'] = dump_sample(
            profile, dist, N_list[-1], seeds[0])
    write_csv(
        'converge_samples.csv', SAMPLE_FIELDS,
        ([row[f] for f in SAMPLE_FIELDS] for row in rows))
    write_csv(
        'converge_summary.csv', SUMMARY_FIELDS,
        ([row[f] for f in SUMMARY_FIELDS] for row in summary))
    result = ExperimentResult(
        'converge', rows, prediction, {**diagnostics, 'summary': summary},
        checks)
    write_json('converge.json', result.to_dict())
    for row in summary:
        logger.info(
            f'N={row["N"]}: median {row["median"]:.6f} '
            f'(IQR {row["iqr"]:.2e}), gap {row["gap"]:.2e}')
    _exit_if_failed(result)
    return result
