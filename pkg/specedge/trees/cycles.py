# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Graphs of closed index walks.

A cycle ``i = (i_1, ..., i_2k)`` with entries in ``[N]`` is the closed
walk ``i_1 -> i_2 -> ... -> i_2k -> i_1``. Its graph has the visited
indices as vertices and the traversed pairs as undirected edges.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import logging
from .ordered_tree import OrderedTree, InvalidTreeError
logger = logging.getLogger(__name__.rsplit('.', maxsplit=1)[-1])


class CycleGraph():
    """
    The multigraph of a closed walk.

    :param cycle: walk of even length, 1-based indices
    :type cycle: sequence of int
    """
    def __init__(self, cycle):
        cycle = tuple(int(i) for i in cycle)
        if len(cycle) < 2 or len(cycle) % 2:
            raise ValueError(
                f'A cycle must have a positive even length: {cycle}')
        if min(cycle) < 1:
            raise ValueError(f'Cycle indices must be >= 1: {cycle}')
        self.cycle = cycle
        self.vertices = list(dict.fromkeys(cycle))
        multiplicity = {}
        for a, b in self.steps():
            edge = (min(a, b), max(a, b))
            multiplicity[edge] = multiplicity.get(edge, 0) + 1
        # dicts keep first-appearance order
        self.edges = list(multiplicity)
        self.multiplicities = list(multiplicity.values())
        self.loops = sum(a == b for a, b in self.edges)

    def __repr__(self):
        return f'CycleGraph({self.cycle})'

    def __str__(self):
        edges = ' '.join(
            f'{a}-{b}x{m}' for (a, b), m in zip(self.edges,
                                                 self.multiplicities))
        return f'{self.cycle}: {edges} ({"good" if self.is_good else "bad"})'

    @property
    def k(self):
        """Half the walk length."""
        return len(self.cycle) // 2

    def steps(self):
        """Walk steps ``(i_t, i_t+1)``, closing back to ``i_1``."""
        cycle = self.cycle
        return list(zip(cycle, cycle[1:] + cycle[:1]))

    @property
    def is_good(self):
        """
        True if the graph is a tree with k+1 vertices and every edge is
        traversed exactly twice.
        """
        return (
            self.loops == 0 and
            len(self.vertices) == self.k + 1 and
            len(self.edges) == self.k and
            all(m == 2 for m in self.multiplicities)
        )

    @property
    def has_odd_edge(self):
        """True if some edge is traversed an odd number of times."""
        return any(m % 2 for m in self.multiplicities)

    def first_visit_tree(self):
        """
        Ordered tree of the steps which reach a new vertex.

        The root is ``i_1``; the children of a vertex are ordered by first
        appearance along the walk.

        :return: the tree and the index of each tree vertex, in
            depth-first order
        :rtype: tuple of (OrderedTree, list of int)
        """
        children = {v: [] for v in self.vertices}
        seen = {self.cycle[0]}
        for a, b in self.steps():
            if b not in seen:
                seen.add(b)
                children[a].append(b)
        order = []
        stack = [self.cycle[0]]
        while stack:
            v = stack.pop()
            order.append(v)
            stack.extend(reversed(children[v]))
        position = {v: n for n, v in enumerate(order)}
        parent = [-1] * len(order)
        for v, kids in children.items():
            for c in kids:
                parent[position[c]] = position[v]
        return OrderedTree.from_parent(parent), order

    def to_tree(self):
        """
        Ordered tree of a good cycle.

        :return: the tree traversed by the walk
        :rtype: OrderedTree
        :raises InvalidTreeError: if the cycle is not good
        """
        if not self.is_good:
            raise InvalidTreeError(f'Cycle {self.cycle} is not good')
        return self.first_visit_tree()[0]


def cycle_to_graph(cycle, N=None):
    """
    Graph of a closed walk.

    :param cycle: walk of even length, 1-based indices
    :type cycle: sequence of int
    :param N: largest allowed index (None: no check)
    :type N: int
    :return: the cycle graph
    :rtype: CycleGraph
    """
    if N is not None and max(cycle) > N:
        raise ValueError(f'Cycle {tuple(cycle)} has indices above N={N}')
    return CycleGraph(cycle)
