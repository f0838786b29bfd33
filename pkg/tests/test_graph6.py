import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import graph6_reference
from helpers import random_graph
from ramsey_workbench.enumeration import all_labeled_graphs
from ramsey_workbench.graph import SimpleGraph, TwoColoring, complete_graph, cycle_graph, empty_graph, petersen_graph
from ramsey_workbench.graph6 import (
    COLORING_HEADER,
    Graph6Error,
    format_coloring,
    parse_coloring,
    parse_graph6,
    read_coloring,
    read_graph,
    write_coloring,
    write_graph6,
)

# produced by the bit-string reference encoder in oracles.py
FROZEN = {
    "empty5": "D??",
    "k5": "D~{",
    "petersen": "IheA@GUAo",
}


def test_reference_encoder_frozen_values():
    assert graph6_reference(5, []) == FROZEN["empty5"]
    assert graph6_reference(5, complete_graph(5).edges()) == FROZEN["k5"]
    assert graph6_reference(10, petersen_graph().edges()) == FROZEN["petersen"]


def test_examples():
    assert write_graph6(empty_graph(5)) == "D??"
    assert parse_graph6("D??") == empty_graph(5)
    assert write_graph6(complete_graph(5)) == "D~{"
    assert parse_graph6("D~{") == complete_graph(5)
    assert parse_graph6(write_graph6(cycle_graph(7))) == cycle_graph(7)
    assert write_graph6(petersen_graph()) == FROZEN["petersen"]


def test_exhaustive_roundtrip_small():
    for n in range(6):
        for g in all_labeled_graphs(n):
            s = write_graph6(g)
            assert s == graph6_reference(n, g.edges())
            assert parse_graph6(s) == g


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100), st.floats(0, 1), st.randoms(use_true_random=False))
def test_roundtrip_against_reference(n, p, r):
    g = random_graph(r, n, p)
    s = write_graph6(g)
    assert s == graph6_reference(n, g.edges())
    assert parse_graph6(s) == g


def test_long_form_header():
    g = empty_graph(63)
    s = write_graph6(g)
    assert s.startswith("~??~")
    assert parse_graph6(s) == g
    big = random_graph(random.Random(3), 300, 0.05)
    assert parse_graph6(write_graph6(big)) == big


def test_very_long_form_header_parses():
    # 258048 is the first order needing the six-byte header; check the header alone
    from ramsey_workbench.graph6 import _decode_n, _encode_n

    head = _encode_n(258048)
    assert head.startswith("~~") and len(head) == 8
    assert _decode_n(head.encode())[0] == 258048


def test_optional_header_and_whitespace():
    assert parse_graph6(">>graph6<<D~{\n") == complete_graph(5)


@pytest.mark.parametrize("bad", ["", "D~", "D~{?", "D~|", "D\x7f{", "~??D~{", "D é"])
def test_malformed(bad):
    with pytest.raises(Graph6Error):
        parse_graph6(bad)


def test_nonzero_padding_rejected():
    # n = 5 has 10 bits in two bytes; the last two bits are padding
    assert parse_graph6("D?C") == SimpleGraph.from_edges(5, [(3, 4)])
    for bad in ("D?@", "D?A", "D?D"):
        with pytest.raises(Graph6Error):
            parse_graph6(bad)


def test_coloring_format(tmp_path):
    c = TwoColoring(cycle_graph(5))
    text = format_coloring(c)
    assert text == f"{COLORING_HEADER}\n{write_graph6(cycle_graph(5))}\n"
    assert parse_coloring(text) == c
    path = tmp_path / "c5.coloring"
    write_coloring(path, c)
    assert path.read_bytes() == text.encode("utf-8")
    assert read_coloring(path) == c


@pytest.mark.parametrize("text", ["", "RAMSEY-COLORING v2\nD~{\n", "D~{\n", "RAMSEY-COLORING v1\nD~{\nD~{\n",
                                  "RAMSEY-COLORING v1\r\nD~{\r\n", "RAMSEY-COLORING v1\nD~\n"])
def test_coloring_malformed(text):
    with pytest.raises(Graph6Error):
        parse_coloring(text)


def test_read_graph(tmp_path):
    path = tmp_path / "g.g6"
    path.write_text("\n\nD~{\nD??\n")
    assert read_graph(path) == complete_graph(5)
    empty = tmp_path / "e.g6"
    empty.write_text("\n")
    with pytest.raises(Graph6Error):
        read_graph(empty)
