"""
Test suite for the defining-graph parser and graph helpers
"""

import sys
import os

import pytest

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.core.defining_graph import (
    DefiningGraph, parse_defining_graph, serialize_defining_graph,
    load_defining_graph, full_subgraph, maximal_cliques,
    induced_four_cycles, four_circuits,
)
from src.core.errors import ParseError

GRAPH_DIR = os.path.join(os.path.dirname(__file__), '..', 'graphs')


def test_parse_basic_document():
    """Test parsing of vertex, edge and comment statements"""
    print("\n=== Testing Basic Parsing ===")

    text = "# a triangle\nvertex c\nedge b a 3\n\nedge a c 2\n   # indented comment\n"
    graph = parse_defining_graph(text)

    print(f"✓ Vertices: {graph.vertices}")
    print(f"✓ Edges: {graph.edges}")

    assert graph.vertices == ('a', 'b', 'c'), "Vertices should be canonicalized"
    assert graph.edges == (('a', 'b', 3), ('a', 'c', 2)), "Edges should be sorted with a < b"
    assert graph.label('b', 'a') == 3, "Labels are symmetric"
    assert graph.label('b', 'c') is None, "Missing edges mean infinity"
    assert graph.has_edge('a', 'c')
    assert graph.neighbors('a') == ['b', 'c']
    assert not graph.is_right_angled()


def test_isolated_vertices_and_empty_graph():
    """Test vertex-only documents and the empty document"""
    print("\n=== Testing Isolated Vertices ===")

    free = parse_defining_graph("vertex a\nvertex b\n")
    assert free.vertices == ('a', 'b')
    assert free.edges == ()
    assert free.is_right_angled(), "Edgeless graphs are right-angled"
    print("✓ Edgeless graph parsed")

    empty = parse_defining_graph("# nothing here\n")
    assert empty.vertices == ()
    assert maximal_cliques(empty) == [()], "The empty graph has the empty clique"
    print("✓ Empty graph parsed")


def test_parse_error_positions():
    """Test that parse errors report line and column"""
    print("\n=== Testing Parse Error Positions ===")

    with pytest.raises(ParseError) as excinfo:
        parse_defining_graph("edge a b 1")
    assert excinfo.value.line == 1
    assert excinfo.value.column == 10, "Label column should be reported"
    assert str(excinfo.value).startswith("line 1, column 10:")
    print(f"✓ Label below 2: {excinfo.value}")

    with pytest.raises(ParseError) as excinfo:
        parse_defining_graph("vertex a\nedge a b 2", strict=True)
    assert (excinfo.value.line, excinfo.value.column) == (2, 8), "Undeclared vertex b"
    print(f"✓ Strict mode: {excinfo.value}")

    with pytest.raises(ParseError) as excinfo:
        parse_defining_graph("edge a b 2\nedge b a 3\n")
    assert (excinfo.value.line, excinfo.value.column) == (2, 1), "Duplicate edge at keyword"
    print(f"✓ Duplicate edge: {excinfo.value}")

    with pytest.raises(ParseError) as excinfo:
        parse_defining_graph("edge a a 2")
    assert excinfo.value.line == 1
    print(f"✓ Self-loop: {excinfo.value}")

    with pytest.raises(ParseError) as excinfo:
        parse_defining_graph("vertex a\nnode b\n")
    assert (excinfo.value.line, excinfo.value.column) == (2, 1)
    print(f"✓ Unknown statement: {excinfo.value}")

    for bad in ("edge a b x", "edge a b", "vertex a-b", "edge a b 2 extra"):
        with pytest.raises(ParseError):
            parse_defining_graph(bad)
    print("✓ Malformed statements rejected")


def test_strict_mode_accepts_declared_vertices():
    """Test strict mode with every vertex declared"""
    print("\n=== Testing Strict Mode ===")

    graph = parse_defining_graph("vertex a\nvertex b\nedge a b 4\n", strict=True)
    assert graph.edges == (('a', 'b', 4),)
    print("✓ Declared vertices accepted")


def test_serialize_is_canonical():
    """Test that serialization is canonical and parses back to the same graph"""
    print("\n=== Testing Canonical Serialization ===")

    first = parse_defining_graph("edge c a 2\nedge b a 5\n")
    second = parse_defining_graph("vertex a\nvertex b\nvertex c\nedge a b 5\nedge a c 2\n")
    text = serialize_defining_graph(first)

    print(text)
    assert text == serialize_defining_graph(second), "Equal graphs serialize identically"
    assert text == "vertex a\nvertex b\nvertex c\nedge a b 5\nedge a c 2\n"
    assert parse_defining_graph(text) == first
    print("✓ Serialization canonical")


def test_direct_construction_validates():
    """Test DefiningGraph validation outside the parser"""
    print("\n=== Testing Direct Construction ===")

    with pytest.raises(ValueError):
        DefiningGraph(('a', 'b'), (('a', 'b', 1),))
    with pytest.raises(ValueError):
        DefiningGraph(('a',), (('a', 'b', 2),))
    with pytest.raises(ValueError):
        DefiningGraph(('a', 'a'))
    with pytest.raises(ValueError):
        DefiningGraph(('a', 'b'), (('a', 'b', 2), ('b', 'a', 3)))
    print("✓ Invalid graphs rejected")


def test_load_fixture_and_missing_file(tmp_path):
    """Test loading a fixture and a missing path"""
    print("\n=== Testing File Loading ===")

    pentagon = load_defining_graph(os.path.join(GRAPH_DIR, 'pentagon.graph'))
    assert pentagon.vertices == ('a', 'b', 'c', 'd', 'e')
    assert len(pentagon.edges) == 5
    assert pentagon.is_right_angled()
    print("✓ Pentagon fixture loaded")

    with pytest.raises(OSError):
        load_defining_graph(tmp_path / 'missing.graph')
    print("✓ Missing file raises OSError")

    binary = tmp_path / 'binary.graph'
    binary.write_bytes(b"vertex a\nedge a \xff 2\n")
    with pytest.raises(ParseError) as excinfo:
        load_defining_graph(binary)
    assert (excinfo.value.line, excinfo.value.column) == (2, 8)
    print(f"✓ Invalid UTF-8: {excinfo.value}")


def test_subgraphs_cliques_and_squares():
    """Test full subgraphs, maximal cliques and square detection"""
    print("\n=== Testing Graph Helpers ===")

    kite = load_defining_graph(os.path.join(GRAPH_DIR, 'kite_all_fives.graph'))

    sub = full_subgraph(kite, ['e', 'a', 'b'])
    assert sub.vertices == ('a', 'b', 'e')
    assert len(sub.edges) == 3
    print("✓ Full subgraph keeps all induced edges")

    with pytest.raises(ValueError):
        full_subgraph(kite, ['a', 'z'])

    cliques = maximal_cliques(kite)
    print(f"✓ Maximal cliques: {cliques}")
    assert ('a', 'b', 'e') in cliques
    assert ('b', 'c') in cliques and ('c', 'd') in cliques and ('a', 'd') in cliques

    squares = induced_four_cycles(kite)
    assert squares == [('a', 'b', 'c', 'd')], "Square a-b-c-d is chordless"

    square = load_defining_graph(os.path.join(GRAPH_DIR, 'square.graph'))
    circuits = four_circuits(square)
    assert len(circuits) == 1
    assert circuits[0].chords == ()

    chorded = load_defining_graph(os.path.join(GRAPH_DIR, 'square_chord.graph'))
    assert induced_four_cycles(chorded) == [], "A chord kills the induced square"
    assert all(c.chords for c in four_circuits(chorded))
    print("✓ Squares and four-circuits detected")


def test_to_networkx_labels():
    """Test the networkx view"""
    print("\n=== Testing networkx Conversion ===")

    graph = parse_defining_graph("vertex z\nedge a b 7\n")
    nx_graph = graph.to_networkx()
    assert set(nx_graph.nodes()) == {'a', 'b', 'z'}
    assert nx_graph['a']['b']['label'] == 7
    print("✓ Labels carried as edge attributes")
