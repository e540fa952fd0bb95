# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Tests for ordered trees and cycle graphs.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
from itertools import product
import math
import pytest
from hypothesis import given, settings, strategies as st
from specedge.trees import (
    OrderedTree, TreeCapExceededError, InvalidTreeError, catalan,
    enumerate_trees, successor, dyck_to_parent, parent_to_dyck,
    CycleGraph, cycle_to_graph)

CATALAN = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012]


def test_catalan_numbers():
    assert [catalan(k) for k in range(13)] == CATALAN


def test_catalan_out_of_range():
    with pytest.raises(ValueError):
        catalan(-1)
    with pytest.raises(OverflowError):
        catalan(34)


@pytest.mark.parametrize('k', range(9))
def test_enumeration_count_and_order(k):
    words = [tree.dyck for tree in enumerate_trees(k)]
    assert len(words) == catalan(k)
    assert words == sorted(set(words))
    assert all(len(w) == 2 * k for w in words)


def test_enumeration_of_empty_tree():
    trees = list(enumerate_trees(0))
    assert len(trees) == 1
    assert trees[0].k == 0
    assert trees[0].parent == (-1, )


def test_enumeration_is_lazy():
    trees = enumerate_trees(12)
    first = next(trees)
    assert first.dyck == '10' * 12
    assert next(trees).dyck == '10' * 10 + '1100'


def test_tree_cap():
    with pytest.raises(TreeCapExceededError):
        enumerate_trees(5, cap=4)
    with pytest.raises(TreeCapExceededError):
        enumerate_trees(15)


def test_successor_of_last_word():
    assert successor('1' * 4 + '0' * 4) is None


@pytest.mark.parametrize('word', ['1', '01', '1001', '1102', '110'])
def test_invalid_dyck_words(word):
    with pytest.raises(InvalidTreeError):
        dyck_to_parent(word)


def test_parent_array():
    assert dyck_to_parent('110100') == (-1, 0, 1, 1)
    assert dyck_to_parent('101100') == (-1, 0, 0, 2)


def test_parent_not_depth_first():
    # vertex 2 is a child of 0 but comes before the child of vertex 1
    with pytest.raises(InvalidTreeError):
        parent_to_dyck((-1, 0, 0, 1))
    with pytest.raises(InvalidTreeError):
        parent_to_dyck((0, 0))


@pytest.mark.parametrize('k', range(1, 7))
def test_parent_encoding_is_canonical(k):
    for tree in enumerate_trees(k):
        assert OrderedTree.from_parent(tree.parent) == tree
        assert len(tree.edges_dfs()) == k


def test_children_order():
    tree = OrderedTree('10110100')
    assert tree.children(0) == [1, 2]
    assert tree.children(2) == [3, 4]
    assert tree.children(4) == []


def _contour(tree, labels):
    """Closed walk around a labelled tree, in depth-first order."""
    walk = [labels[0]]
    stack = [0]
    child = iter(range(1, tree.k + 1))
    for char in tree.dyck[:-1]:
        if char == '1':
            stack.append(next(child))
        else:
            stack.pop()
        walk.append(labels[stack[-1]])
    return walk


@settings(max_examples=50, deadline=None)
@given(
    st.integers(min_value=1, max_value=6).flatmap(
        lambda k: st.tuples(
            st.integers(min_value=0, max_value=catalan(k) - 1),
            st.permutations(range(1, k + 2)),
            st.just(k))))
def test_good_cycle_recovers_its_tree(case):
    index, labels, k = case
    tree = next(
        t for n, t in enumerate(enumerate_trees(k)) if n == index)
    graph = CycleGraph(_contour(tree, labels))
    assert graph.is_good
    assert not graph.has_odd_edge
    assert graph.to_tree() == tree


def test_good_cycles():
    graph = cycle_to_graph((1, 2, 1, 3))
    assert graph.is_good
    assert graph.edges == [(1, 2), (1, 3)]
    assert graph.multiplicities == [2, 2]
    assert graph.to_tree().dyck == '1010'
    assert cycle_to_graph((1, 2, 3, 2)).to_tree().dyck == '1100'


def test_bad_cycles():
    loop = cycle_to_graph((1, 1))
    assert loop.loops == 1
    assert not loop.is_good
    repeated = cycle_to_graph((1, 2, 1, 2))
    assert not repeated.is_good
    assert repeated.multiplicities == [4]
    assert repeated.first_visit_tree()[0].dyck == '10'
    odd = cycle_to_graph((1, 2, 3, 1))
    assert odd.has_odd_edge
    with pytest.raises(InvalidTreeError):
        odd.to_tree()


def test_first_visit_tree_vertex_order():
    tree, order = cycle_to_graph((3, 1, 3, 2, 4, 2)).first_visit_tree()
    assert order == [3, 1, 2, 4]
    assert tree.dyck == '101100'


@pytest.mark.parametrize('cycle', [(), (1, 2, 3), (0, 1)])
def test_invalid_cycles(cycle):
    with pytest.raises(ValueError):
        CycleGraph(cycle)


def test_cycle_index_above_N():
    with pytest.raises(ValueError):
        cycle_to_graph((1, 5), N=4)


@pytest.mark.parametrize('N, k', [(3, 1), (4, 2), (5, 2), (4, 3)])
def test_number_of_good_cycles(N, k):
    good = sum(
        CycleGraph(cycle).is_good
        for cycle in product(range(1, N + 1), repeat=2 * k))
    expected = catalan(k) * math.perm(N, k + 1)
    assert good == expected
