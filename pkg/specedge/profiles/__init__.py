# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Variance profiles, graphons and kernels.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
from .kernels import Kernel, kernel_from_dict, band_kernel, CATALOG  # noqa
from .graphon import (  # noqa
    Graphon, StepGrid, CallableGraphon, discretize, l1_distance,
    quadrature_resolution
)
from .profile_spec import (  # noqa
    ProfileError, ProfileSpec, StepProfile, ContinuousProfile, BandProfile,
    CustomProfile, RectStep, GramRectProfile, TriangularProfile,
    wigner_profile, zero_profile, interval_index,
    variance_at, graphon_of, limit_graphon, symmetrize_profile,
    profile_from_dict
)
