# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Operator norms and spectral distributions.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
from .norms import (  # noqa
    operator_norm, gram_norm, power_iteration, check_symmetric,
    NonSymmetricMatrixError, PowerIterationError
)
from .esd import (  # noqa
    EsdSummary, esd, ks_distance, semicircle_cdf, semicircle_masses,
    marchenko_pastur_density, marchenko_pastur_masses, histogram_l1,
    esd_pushforward_check, PushforwardCheck
)
