# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Moment method: tree densities, even moments, edge estimates and the
exact trace expansion.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
from .hom_density import (  # noqa
    hom_density, m_even, m_even_sequence, xi_bound, cell_space,
    quadrature_gap
)
from .moment_report import (  # noqa
    EdgeEstimate, MomentReport, edge_estimate, moment_report,
    gram_moments, gram_edge, discretization_sweep, richardson_nodes,
    EDGE_METHODS
)
from .trace import (  # noqa
    GuardExceededError, TraceDecomposition, BoundCheck, MonteCarloEstimate,
    M_exact, bad_cycle_sum, bad_cycle_bound, check_bad_cycle_bound,
    trace_monte_carlo
)
from .sigma_r import SigmaRReport, check_sigma_R  # noqa
