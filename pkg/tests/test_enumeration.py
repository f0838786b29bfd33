import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_graph
from ramsey_workbench.enumeration import (
    all_labeled_graphs,
    canonical_form,
    is_isomorphic,
    nonisomorphic_graphs,
)
from ramsey_workbench.graph import SimpleGraph, complete_bipartite, cycle_graph, petersen_graph, relabel

# number of graphs on n unlabeled vertices
CLASS_COUNTS = [1, 1, 2, 4, 11, 34, 156, 1044]


@pytest.mark.parametrize("n", range(8))
def test_class_counts(n):
    assert len(nonisomorphic_graphs(n)) == CLASS_COUNTS[n]


def test_class_count_n8(graphs_upto_8):
    assert sum(1 for g in graphs_upto_8 if g.n == 8) == 12346


def test_against_networkx_atlas():
    # the atlas lists every graph on at most 7 vertices exactly once up to isomorphism
    atlas = nx.graph_atlas_g()
    ours = {n: {canonical_form(g) for g in nonisomorphic_graphs(n)} for n in range(8)}
    found = {n: set() for n in range(8)}
    for h in atlas:
        n = h.number_of_nodes()
        g = SimpleGraph.from_edges(n, h.edges())
        found[n].add(canonical_form(g))
    assert found == ours


def test_labeled_counts():
    for n in range(5):
        assert sum(1 for _ in all_labeled_graphs(n)) == 2 ** (n * (n - 1) // 2)


def test_isomorphism_examples():
    assert is_isomorphic(complete_bipartite(2, 2), cycle_graph(4))
    assert not is_isomorphic(cycle_graph(6), complete_bipartite(3, 3))
    p = petersen_graph()
    assert is_isomorphic(p, relabel(p, [3, 1, 4, 0, 9, 2, 6, 5, 8, 7]))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10), st.floats(0, 1), st.randoms(use_true_random=False))
def test_canonical_form_is_invariant(n, p, r):
    g = random_graph(r, n, p)
    order = list(range(n))
    r.shuffle(order)
    assert canonical_form(relabel(g, order)) == canonical_form(g)
