"""
Test suite for the spherical poset, order complex, nerve and link conditions
"""

import sys
import os

import pytest

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.core.complexes import (
    SimplicialComplex, spherical_poset, minimal_non_spherical_sets, order_complex,
    nerve, simplex_link, is_flag, find_missing_clique, satisfies_ntns,
    find_nonfull_link, links_are_full_subcomplexes, upward_link_model,
)
from src.core.defining_graph import load_defining_graph
from src.utils.graph_export import complex_to_dot, facet_list

GRAPH_DIR = os.path.join(os.path.dirname(__file__), '..', 'graphs')


def fixture(name):
    return load_defining_graph(os.path.join(GRAPH_DIR, f'{name}.graph'))


def test_simplicial_complex_closure():
    """Test downward closure, facets and Euler characteristic"""
    print("\n=== Testing SimplicialComplex ===")

    complex_ = SimplicialComplex(['a', 'b', 'c', 'd'], [('c', 'a', 'b')])
    assert ('a', 'b') in complex_ and ('b', 'c') in complex_, "Faces are added"
    assert ('a', 'd') not in complex_
    assert () in complex_, "The empty simplex is implicit"
    assert complex_.dimension == 2
    assert complex_.facets() == [('a', 'b', 'c'), ('d',)]
    assert complex_.euler_characteristic() == 2, "A triangle plus a point"
    print(f"✓ {complex_}")

    with pytest.raises(ValueError):
        SimplicialComplex(['a'], [('a', 'b')])

    assert SimplicialComplex.from_facets([('a', 'b')]) == SimplicialComplex(['b', 'a'], [('a', 'b')])
    assert SimplicialComplex([]).dimension == -1
    print("✓ Equality and empty complex")


def test_spherical_poset_of_pentagon():
    """Test the poset of spherical subsets"""
    print("\n=== Testing Spherical Poset ===")

    poset = spherical_poset(fixture('pentagon'))
    print(f"✓ {len(poset)} spherical subsets")

    assert len(poset) == 11, "Empty set, five vertices and five edges"
    assert poset.elements[0] == ()
    assert ('a', 'b') in poset and ('b', 'a') in poset
    assert ('a', 'c') not in poset
    assert poset.maximal_elements() == [('a', 'b'), ('a', 'e'), ('b', 'c'), ('c', 'd'), ('d', 'e')]
    assert poset.upper_set(('a',)) == [('a',), ('a', 'b'), ('a', 'e')]


def test_minimal_non_spherical_sets():
    """Test minimal non-spherical subsets"""
    print("\n=== Testing Minimal Non-spherical Sets ===")

    pentagon = minimal_non_spherical_sets(fixture('pentagon'))
    assert pentagon == [('a', 'c'), ('a', 'd'), ('b', 'd'), ('b', 'e'), ('c', 'e')], "Pairs are the non-edges"

    assert minimal_non_spherical_sets(fixture('triangle_236')) == [('a', 'b', 'c')]
    assert minimal_non_spherical_sets(fixture('triangle_235')) == [], "Finite groups have none"
    print("✓ Minimal non-spherical sets found")


def test_order_complex_is_a_cone():
    """Test the order complex with and without the empty set"""
    print("\n=== Testing Order Complex ===")

    poset = spherical_poset(fixture('pentagon'))
    with_empty = order_complex(poset)
    assert len(with_empty.vertices) == 11
    assert len(with_empty.facets()) == 10
    assert with_empty.dimension == 2
    assert with_empty.euler_characteristic() == 1, "The fundamental complex is a cone"

    without_empty = order_complex(poset, include_empty=False)
    assert len(without_empty.vertices) == 10
    assert without_empty.euler_characteristic() == 0, "Subdivided pentagon is a circle"

    chain = with_empty.facets()[0]
    assert with_empty.minimal_vertex(chain) == (), "min of a chain is its smallest element"
    print("✓ Order complex correct")


def test_nerve_flag_and_ntns():
    """Test flag and no-triangles-no-squares conditions on nerves"""
    print("\n=== Testing Nerve Conditions ===")

    pentagon = nerve(fixture('pentagon'))
    assert is_flag(pentagon)
    assert satisfies_ntns(pentagon)
    print("✓ Pentagon nerve is flag with no squares")

    square = nerve(fixture('square'))
    assert is_flag(square)
    assert not satisfies_ntns(square), "Square nerve has an induced 4-cycle"
    print("✓ Square nerve fails NTNS")

    hollow = nerve(fixture('triangle_555'))
    assert find_missing_clique(hollow) == ('a', 'b', 'c')
    assert not is_flag(hollow)
    print("✓ Hyperbolic triangle nerve is not flag")


def test_links_and_fullness():
    """Test simplex links and the full-subcomplex condition"""
    print("\n=== Testing Links ===")

    solid = nerve(fixture('triangle_233'))
    link = simplex_link(solid, ('a',))
    assert link == SimplicialComplex(['b', 'c'], [('b', 'c')])
    assert links_are_full_subcomplexes(solid)

    with pytest.raises(ValueError):
        simplex_link(nerve(fixture('pentagon')), ('a', 'c'))

    hollow = SimplicialComplex(['a', 'b', 'c'], [('a', 'b'), ('b', 'c'), ('a', 'c')])
    assert find_nonfull_link(hollow) == ('a',), "Link {b, c} misses the edge b-c"
    print("✓ Non-full link detected")

    upward = upward_link_model(fixture('pentagon'), ('a',))
    assert upward == SimplicialComplex(['b', 'e'])
    assert upward_link_model(fixture('pentagon'), ()) == nerve(fixture('pentagon'))
    print("✓ Upward link model")


def test_complex_rendering():
    """Test DOT and facet-list rendering"""
    print("\n=== Testing Complex Rendering ===")

    complex_ = nerve(fixture('single_edge_m3'))
    dot = complex_to_dot(complex_, name="nerve")
    assert dot.startswith("graph nerve {")
    assert '"a" -- "b";' in dot
    assert facet_list(complex_) == "a b\n"
    print(dot)
