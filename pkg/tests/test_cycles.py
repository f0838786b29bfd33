import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_graph
from oracles import bfs_girth, brute_two_connected, cycle_lengths
from ramsey_workbench.cycles import (
    SizeLimitError,
    _cycle_dp,
    _multipartite_spectrum,
    check_bondy,
    check_dirac,
    circumference,
    cycle_spectrum,
    girth,
    has_cycle_of_length,
    is_two_connected,
    is_weakly_pancyclic,
    multipartite_parts,
)
from ramsey_workbench.graph import (
    SimpleGraph,
    complete_bipartite,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    disjoint_union,
    empty_graph,
    path_graph,
    petersen_graph,
)


def test_petersen():
    p = petersen_graph()
    length, cyc = girth(p)
    assert length == 5
    cyc.validate(p)
    res = circumference(p)
    assert res.length == 9 and res.exact
    res.cycle.validate(p)
    assert cycle_spectrum(p) == {5, 6, 8, 9}
    assert has_cycle_of_length(p, 7) is None
    assert has_cycle_of_length(p, 10) is None


def test_small_examples():
    k33 = complete_bipartite(3, 3)
    assert circumference(k33).length == 6
    assert cycle_spectrum(k33) == {4, 6}
    assert circumference(path_graph(4)).length == 0
    assert circumference(path_graph(4)).cycle is None
    assert girth(path_graph(4)) is None
    assert cycle_spectrum(complete_graph(6)) == set(range(3, 7))
    with pytest.raises(ValueError):
        has_cycle_of_length(complete_graph(4), 2)


def test_two_connectivity_examples():
    assert is_two_connected(cycle_graph(5))
    assert is_two_connected(complete_graph(4))
    bowtie = SimpleGraph.from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])
    res = is_two_connected(bowtie)
    assert not res and res.cut_vertex == 2
    assert not is_two_connected(path_graph(3))
    assert not is_two_connected(complete_graph(2))
    assert not is_two_connected(disjoint_union(cycle_graph(3), cycle_graph(3)))


def test_spectrum_exhaustive(graphs_upto_7):
    for g in graphs_upto_7:
        expected = cycle_lengths(g.n, g.edges())
        assert cycle_spectrum(g) == expected
        res = circumference(g)
        assert res.length == max(expected, default=0)
        if res.cycle:
            res.cycle.validate(g)
        gr = girth(g)
        assert (gr[0] if gr else None) == bfs_girth(g.n, g.edges())
        assert bool(is_two_connected(g)) == brute_two_connected(g.n, g.edges())


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 9), st.floats(0, 1), st.randoms(use_true_random=False))
def test_spectrum_against_naive(n, p, r):
    g = random_graph(r, n, p)
    expected = cycle_lengths(n, g.edges())
    assert cycle_spectrum(g) == expected
    for k in range(3, n + 1):
        found = has_cycle_of_length(g, k)
        assert (found is not None) == (k in expected)
        if found:
            assert len(found) == k
            found.validate(g)


def test_numba_dp_matches_python_dp():
    rng = random.Random(7)
    for _ in range(20):
        g = random_graph(rng, rng.randint(3, 12), rng.uniform(0.2, 0.8))
        _, first_py = _cycle_dp(list(g.adj), force="python")
        _, first_nb = _cycle_dp(list(g.adj), force="numba")
        assert set(first_py) == set(first_nb)


@pytest.mark.parametrize("sizes", [[1, 1, 1], [2, 3], [3, 3], [1, 4], [2, 2, 2], [1, 1, 5], [4, 1, 1, 2]])
def test_multipartite_formula_against_dp(sizes):
    g = complete_multipartite(*sizes)
    assert multipartite_parts(g) is not None
    _, first = _cycle_dp(list(g.adj), force="python")
    assert _multipartite_spectrum(sizes) == set(first)


def test_large_multipartite_closed_form():
    g = complete_multipartite(20, 20)
    assert circumference(g).length == 40
    assert cycle_spectrum(g) == set(range(4, 41, 2))
    cyc = has_cycle_of_length(g, 30)
    cyc.validate(g)


def test_size_limit_and_heuristic():
    # a 30-vertex block that is neither multipartite nor easily Hamiltonian
    g = disjoint_union(petersen_graph(), petersen_graph(), petersen_graph())
    bridged = SimpleGraph.from_edges(30, g.edges() + [(0, 10), (1, 11), (10, 20), (11, 21)])
    with pytest.raises(SizeLimitError):
        circumference(bridged, exact_limit=12)
    res = circumference(bridged, heuristic=True, exact_limit=12)
    assert not res.exact and res.length >= 9
    res.cycle.validate(bridged)
    with pytest.raises(SizeLimitError):
        has_cycle_of_length(bridged, 9, exact_limit=12)
    # short lengths stay exact above the limit
    assert has_cycle_of_length(bridged, 5, exact_limit=12) is not None


def test_dirac_examples():
    rep = check_dirac(cycle_graph(5))
    assert rep.hypothesis_met and rep.bound == 4 and rep.circumference == 5 and rep.status == "ok"
    rep = check_dirac(petersen_graph())
    assert rep.bound == 6 and rep.circumference == 9 and rep.holds
    assert check_dirac(path_graph(4)).status == "hypothesis-not-met"


def test_bondy_examples():
    assert check_bondy(complete_bipartite(3, 3)).verdict == "exception-K_rr"
    assert check_bondy(complete_graph(5)).verdict == "pancyclic"
    assert check_bondy(cycle_graph(6)).verdict == "hypothesis-not-met"
    assert check_bondy(empty_graph(0)).verdict == "hypothesis-not-met"


def test_dirac_and_bondy_hold_up_to_7(graphs_upto_7):
    for g in graphs_upto_7:
        assert check_dirac(g).holds
        assert check_bondy(g).holds


def test_weak_pancyclicity():
    assert is_weakly_pancyclic(complete_graph(5))
    assert not is_weakly_pancyclic(petersen_graph())
    assert is_weakly_pancyclic(path_graph(3))
