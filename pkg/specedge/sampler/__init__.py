# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Entry distributions and matrix sampling.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
from .distributions import (  # noqa
    EntryDistribution, Gaussian, Rademacher, StudentT, SymmetricPareto,
    distribution_from_dict
)
from .sampling import (  # noqa
    sample_symmetric, sample_rectangular, symmetrize, sample_batch,
    truncate_split, mirror_upper, row_generator, SampleBatch, TruncationSplit
)
from .matrix_io import write_matrix, read_matrix, MatrixFileError  # noqa
