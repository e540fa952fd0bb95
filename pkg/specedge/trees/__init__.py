# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Ordered trees, Catalan enumeration and cycle graphs.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
from .ordered_tree import (  # noqa
    OrderedTree, TreeCapExceededError, InvalidTreeError,
    catalan, enumerate_trees, edges_dfs, successor, tree_cap,
    dyck_to_parent, parent_to_dyck
)
from .cycles import CycleGraph, cycle_to_graph  # noqa
