# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Ordered rooted (plane) trees and their enumeration.

A tree with k edges is encoded by a Dyck word of length 2k: "1" means
going down to a new child, "0" means going back up to the parent.
Vertices are numbered in depth-first order, the root being 0.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import math
import logging
from ..config import config
logger = logging.getLogger(__name__.rsplit('.', maxsplit=1)[-1])

TREE_CAP = 14
# Largest k for which catalan(k) fits in a signed 64-bit integer
CATALAN_EXACT_MAX = 33


class TreeCapExceededError(Exception):
    """Exception raised when the number of tree edges exceeds the cap."""


class InvalidTreeError(Exception):
    """Exception raised for an invalid tree encoding."""


def tree_cap():
    """Return the configured tree cap."""
    return config.get('tree_cap', TREE_CAP)


def catalan(k):
    """
    Number of ordered rooted trees with k edges.

    :param k: number of edges
    :type k: int
    :return: the k-th Catalan number
    :rtype: int
    :raises OverflowError: if k is beyond the 64-bit exact range
    """
    if k < 0:
        raise ValueError(f'k must be nonnegative: {k}')
    if k > CATALAN_EXACT_MAX:
        raise OverflowError(
            f'catalan({k}) exceeds the 64-bit exact range '
            f'(k <= {CATALAN_EXACT_MAX})')
    return math.comb(2 * k, k) // (k + 1)


def _check_dyck(word):
    if not isinstance(word, str) or set(word) - {'0', '1'}:
        raise InvalidTreeError(f'Not a binary word: {word!r}')
    height = 0
    for char in word:
        height += 1 if char == '1' else -1
        if height < 0:
            raise InvalidTreeError(f'Not a Dyck word: {word!r}')
    if height != 0:
        raise InvalidTreeError(f'Not a Dyck word: {word!r}')


def dyck_to_parent(word):
    """
    Parent array of a Dyck word.

    :param word: Dyck word
    :type word: str
    :return: parent of each vertex, with -1 for the root
    :rtype: tuple of int
    """
    _check_dyck(word)
    parent = [-1]
    stack = [0]
    for char in word:
        if char == '1':
            parent.append(stack[-1])
            stack.append(len(parent) - 1)
        else:
            stack.pop()
    return tuple(parent)


def parent_to_dyck(parent):
    """
    Dyck word of a parent array in depth-first order.

    :param parent: parent of each vertex, with -1 for the root
    :type parent: sequence of int
    :return: Dyck word
    :rtype: str
    :raises InvalidTreeError: if the vertices are not in depth-first order
    """
    parent = tuple(int(p) for p in parent)
    if not parent or parent[0] != -1:
        raise InvalidTreeError('parent[0] must be the root marker -1')
    children = [[] for _ in parent]
    for v, p in enumerate(parent[1:], start=1):
        if not 0 <= p < v:
            raise InvalidTreeError(
                f'Vertex {v} has invalid parent {p} (must satisfy 0 <= p < v)')
        children[p].append(v)
    word = []
    stack = [iter(children[0])]
    while stack:
        child = next(stack[-1], None)
        if child is None:
            stack.pop()
            if stack:
                word.append('0')
            continue
        word.append('1')
        stack.append(iter(children[child]))
    word = ''.join(word)
    if dyck_to_parent(word) != parent:
        raise InvalidTreeError(
            f'Vertices of {parent} are not numbered in depth-first order')
    return word


class OrderedTree():
    """
    An ordered rooted tree, in canonical depth-first encoding.

    :param dyck: Dyck word of length 2k
    :type dyck: str
    """
    def __init__(self, dyck):
        self.parent = dyck_to_parent(dyck)
        self.dyck = dyck

    @classmethod
    def from_parent(cls, parent):
        """Build a tree from a depth-first parent array."""
        return cls(parent_to_dyck(parent))

    def __repr__(self):
        return f'OrderedTree({self.dyck!r})'

    def __str__(self):
        return self.dyck or '.'

    def __eq__(self, other):
        return isinstance(other, OrderedTree) and self.dyck == other.dyck

    def __hash__(self):
        return hash(self.dyck)

    def __lt__(self, other):
        return self.dyck < other.dyck

    @property
    def k(self):
        """Number of edges."""
        return len(self.parent) - 1

    def children(self, v):
        """Children of vertex v, in order."""
        return [c for c in range(v + 1, len(self.parent))
                if self.parent[c] == v]

    def edges_dfs(self):
        """Edges ``(parent, child)`` in depth-first first-appearance order."""
        return [(self.parent[v], v) for v in range(1, len(self.parent))]


def edges_dfs(tree):
    """
    Edges of a tree, in depth-first first-appearance order.

    :param tree: ordered tree
    :type tree: OrderedTree
    :return: ``(parent, child)`` pairs
    :rtype: list of tuple
    """
    return tree.edges_dfs()


def successor(word):
    """
    Next Dyck word of the same length, in lexicographic order.

    :param word: Dyck word
    :type word: str
    :return: the next word, or None if word is the last one
    :rtype: str
    """
    k = len(word) // 2
    ones = word.count('1')
    for pos in range(len(word) - 1, -1, -1):
        if word[pos] == '1':
            ones -= 1
            continue
        # ones now counts the "1" in word[:pos]
        if ones <= k - 1:
            prefix = word[:pos] + '1'
            n_ones = ones + 1
            n_zeros = pos - ones
            tail = []
            for _ in range(len(word) - pos - 1):
                if n_zeros < n_ones:
                    tail.append('0')
                    n_zeros += 1
                else:
                    tail.append('1')
                    n_ones += 1
            return prefix + ''.join(tail)
    return None


def enumerate_trees(k, cap=None):
    """
    Stream all ordered rooted trees with k edges.

    Trees are generated in lexicographic order of their Dyck words,
    without storing them.

    :param k: number of edges
    :type k: int
    :param cap: largest allowed k (None: configured tree cap)
    :type cap: int
    :return: generator of trees
    :rtype: generator of OrderedTree
    :raises TreeCapExceededError: if k exceeds the cap
    """
    if k < 0:
        raise ValueError(f'k must be nonnegative: {k}')
    if cap is None:
        cap = tree_cap()
    if k > cap:
        raise TreeCapExceededError(
            f'k={k} exceeds the tree cap ({cap}): '
            f'{catalan(k)} trees would be enumerated')
    return _tree_stream(k)


def _tree_stream(k):
    word = '10' * k
    while word is not None:
        yield OrderedTree(word)
        word = successor(word)
