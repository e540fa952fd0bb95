# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
specedge commands.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
from .experiment import (  # noqa
    ExperimentResult, load_experiment_config, predict_edge,
    prediction_graphon, write_csv, write_json, SCHEMA_VERSION)
from .edge import cmd_edge  # noqa
from .converge import cmd_converge, run_sweep  # noqa
from .negative_control import cmd_negative_control  # noqa
from .oracle import cmd_oracle, run_oracle_suite  # noqa
from .audit import cmd_audit, run_audit  # noqa
from .print_report import print_report  # noqa
