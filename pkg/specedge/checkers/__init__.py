# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Checks of profiles, partitions and entry distributions against the
convergence assumptions.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
from .tails import (  # noqa
    TailEstimate, TrendReport, monte_carlo_tail, loglog_slope,
    check_lindeberg, lindeberg_trend, check_max_to_zero)
from .doubling import DoublingReport, check_doubling, check_l1_rate  # noqa
from .partitions import (  # noqa
    PartitionError, PartitionSpec, PartitionReport, InteriorPoints,
    interior_mask, interior_points, split_interior, validate_partition,
    band_partition, triangular_partition, single_cell_partition,
    step_partition, checkerboard_partition, partition_from_dict,
    partition_for_profile, partition_size, partition_variances)
