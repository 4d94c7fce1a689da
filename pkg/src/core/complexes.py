"""Posets and abstract simplicial complexes.

Builds the poset of spherical subsets, its order complex K, the nerve L
and links, and decides the combinatorial conditions (flag,
no-triangles-no-squares, full-subcomplex links) used by the classifier and
the CAT(-1) certificate.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Tuple

import networkx as nx

from src.core.coxeter import is_spherical
from src.core.defining_graph import DefiningGraph, VertexSet
from src.utils.graph_search import induced_squares

logger = logging.getLogger(__name__)

Simplex = Tuple[Hashable, ...]

# A strictly increasing chain R0 < R1 < ... < Rk of spherical subsets
Chain = Tuple[VertexSet, ...]


def _vertex_key(vertex):
    # VertexSet vertices (poset elements) order by size first, names order plainly
    if isinstance(vertex, tuple):
        return (len(vertex), vertex)
    return (1, (vertex,))


def _canonical(simplex: Iterable[Hashable]) -> Simplex:
    return tuple(sorted(set(simplex), key=_vertex_key))


class SimplicialComplex:
    """Finite abstract simplicial complex.

    Simplices are stored as canonically sorted tuples and the set is kept
    downward closed. The empty simplex is implicit.

    Attributes:
        vertices: Declared vertices in canonical order (isolated ones allowed)
        simplices: Frozen set of non-empty simplices
        payload: Optional per-vertex labels
    """

    def __init__(self, vertices: Iterable[Hashable], simplices: Iterable[Iterable[Hashable]] = (),
                 payload: Optional[Dict[Hashable, object]] = None):
        self.vertices: Tuple[Hashable, ...] = _canonical(vertices)
        declared = set(self.vertices)
        closed = set()
        for simplex in simplices:
            face = _canonical(simplex)
            if not face or face in closed:
                continue
            missing = [v for v in face if v not in declared]
            if missing:
                raise ValueError(f"simplex {face} uses undeclared vertices {missing}")
            for size in range(1, len(face) + 1):
                closed.update(combinations(face, size))
        closed.update((v,) for v in self.vertices)
        self.simplices: FrozenSet[Simplex] = frozenset(closed)
        self.payload = dict(payload or {})

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[Hashable]], vertices: Iterable[Hashable] = (),
                    payload: Optional[Dict[Hashable, object]] = None) -> 'SimplicialComplex':
        facets = [tuple(f) for f in facets]
        all_vertices = set(vertices)
        for facet in facets:
            all_vertices.update(facet)
        return cls(all_vertices, facets, payload)

    def contains(self, simplex: Iterable[Hashable]) -> bool:
        face = _canonical(simplex)
        return not face or face in self.simplices

    def __contains__(self, simplex):
        return self.contains(simplex)

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.vertices == other.vertices and self.simplices == other.simplices

    def __hash__(self):
        return hash((self.vertices, self.simplices))

    def __len__(self):
        return len(self.simplices)

    def __repr__(self):
        return f"SimplicialComplex(vertices={len(self.vertices)}, simplices={len(self.simplices)})"

    @property
    def dimension(self) -> int:
        """Largest simplex dimension; -1 for the empty complex."""
        return max((len(s) for s in self.simplices), default=0) - 1

    @cached_property
    def _sorted_simplices(self) -> List[Simplex]:
        return sorted(self.simplices, key=lambda s: (len(s), [_vertex_key(v) for v in s]))

    def sorted_simplices(self) -> List[Simplex]:
        return list(self._sorted_simplices)

    def facets(self) -> List[Simplex]:
        """Maximal simplices, in canonical order."""
        by_size = sorted(self.simplices, key=len, reverse=True)
        maximal: List[Simplex] = []
        covered = set()
        for simplex in by_size:
            if simplex in covered:
                continue
            maximal.append(simplex)
            for size in range(1, len(simplex)):
                covered.update(combinations(simplex, size))
        return sorted(maximal, key=lambda s: [_vertex_key(v) for v in s])

    def one_skeleton(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(s for s in self.simplices if len(s) == 2)
        return graph

    def full_subcomplex(self, vertices: Iterable[Hashable]) -> 'SimplicialComplex':
        keep = set(vertices)
        unknown = keep - set(self.vertices)
        if unknown:
            raise ValueError(f"unknown vertices {sorted(unknown, key=_vertex_key)}")
        kept = [s for s in self.simplices if keep.issuperset(s)]
        return SimplicialComplex(keep, kept, {v: p for v, p in self.payload.items() if v in keep})

    def euler_characteristic(self) -> int:
        return sum((-1) ** (len(s) - 1) for s in self.simplices)

    def minimal_vertex(self, simplex: Iterable[Hashable]) -> Hashable:
        """min(σ): for order complexes, the smallest element of the chain."""
        face = _canonical(simplex)
        if not face:
            raise ValueError("the empty simplex has no minimal vertex")
        return face[0]


@dataclass(frozen=True)
class SphericalPoset:
    """The poset of spherical subsets of a defining graph under inclusion.

    Attributes:
        graph: The defining graph
        elements: Every spherical subset, the empty set included, ordered by
            size and then lexicographically
    """
    graph: DefiningGraph
    elements: Tuple[VertexSet, ...] = field(default=())

    @cached_property
    def _members(self) -> FrozenSet[VertexSet]:
        return frozenset(self.elements)

    def __contains__(self, subset) -> bool:
        return tuple(sorted(subset)) in self._members

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def nonempty(self) -> List[VertexSet]:
        return [e for e in self.elements if e]

    def maximal_elements(self) -> List[VertexSet]:
        members = self._members
        maximal = []
        for element in self.elements:
            extensions = (tuple(sorted(element + (v,))) for v in self.graph.vertices if v not in element)
            if not any(ext in members for ext in extensions):
                maximal.append(element)
        return maximal

    def upper_set(self, subset: VertexSet) -> List[VertexSet]:
        """Spherical supersets of ``subset`` (itself included)."""
        base = set(subset)
        return [e for e in self.elements if base.issubset(e)]


def spherical_poset(graph: DefiningGraph) -> SphericalPoset:
    """Enumerate the spherical subsets level by level.

    A k-subset is tested with the Gram criterion only when all of its
    (k-1)-subsets are already known to be spherical.
    """
    levels: List[List[VertexSet]] = [[()]]
    levels.append([(v,) for v in graph.vertices])
    known = set(levels[0]) | set(levels[1])

    while levels[-1]:
        previous = levels[-1]
        current = []
        for base in previous:
            for v in graph.vertices:
                if v <= base[-1]:
                    continue
                candidate = base + (v,)
                if not all(face in known for face in combinations(candidate, len(candidate) - 1)):
                    continue
                if is_spherical(graph, candidate):
                    current.append(candidate)
        known.update(current)
        levels.append(current)

    elements = tuple(e for level in levels for e in level)
    logger.debug(f"Spherical poset has {len(elements)} elements")
    return SphericalPoset(graph, elements)


def minimal_non_spherical_sets(graph: DefiningGraph, poset: Optional[SphericalPoset] = None) -> List[VertexSet]:
    """Non-spherical subsets whose proper subsets are all spherical.

    Listed by size, then lexicographically. Pairs are the non-edges.
    """
    poset = spherical_poset(graph) if poset is None else poset
    by_size: Dict[int, List[VertexSet]] = {}
    for element in poset.elements:
        by_size.setdefault(len(element), []).append(element)

    minimal = []
    for size in sorted(by_size):
        if size == 0:
            continue
        for base in by_size[size]:
            for v in graph.vertices:
                if v <= base[-1]:
                    continue
                candidate = base + (v,)
                if candidate in poset:
                    continue
                if all(face in poset for face in combinations(candidate, size)):
                    minimal.append(candidate)
    return sorted(set(minimal), key=lambda s: (len(s), s))


def order_complex(poset: SphericalPoset, include_empty: bool = True) -> SimplicialComplex:
    """Order (derived) complex: vertices are poset elements, simplices are chains.

    With ``include_empty`` this is the fundamental complex K. Each simplex
    is stored as its chain, smallest element first, so ``minimal_vertex``
    returns min(σ).
    """
    elements = [e for e in poset.elements if include_empty or e]
    facets = []
    for top in poset.maximal_elements():
        if not top and not include_empty:
            continue
        # a maximal chain adds one vertex at a time up to a maximal element
        for order in permutations(top):
            start = 0 if include_empty else 1
            chain = tuple(tuple(sorted(order[:i])) for i in range(start, len(top) + 1))
            facets.append(chain)
    payload = {e: e for e in elements}
    complex_ = SimplicialComplex(elements, facets, payload)
    logger.debug(f"Order complex has {len(complex_.vertices)} vertices, dimension {complex_.dimension}")
    return complex_


def nerve(graph: DefiningGraph, poset: Optional[SphericalPoset] = None) -> SimplicialComplex:
    """The nerve L: vertices V(Δ), simplices the non-empty spherical subsets."""
    poset = spherical_poset(graph) if poset is None else poset
    return SimplicialComplex(graph.vertices, poset.nonempty())


def simplex_link(complex_: SimplicialComplex, simplex: Iterable[Hashable]) -> SimplicialComplex:
    """Link of a simplex: faces disjoint from σ whose join with σ is a simplex."""
    face = _canonical(simplex)
    if not complex_.contains(face):
        error_msg = f"simplex {face} is not in the complex"
        logger.error(error_msg)
        raise ValueError(error_msg)
    base = set(face)
    link_simplices = []
    link_vertices = set()
    for other in complex_.simplices:
        if base.issubset(other) and len(other) > len(base):
            rest = tuple(v for v in other if v not in base)
            link_simplices.append(rest)
            link_vertices.update(rest)
    return SimplicialComplex(link_vertices, link_simplices)


def is_flag(complex_: SimplicialComplex) -> bool:
    """True iff every set of pairwise adjacent vertices spans a simplex."""
    return find_missing_clique(complex_) is None


def find_missing_clique(complex_: SimplicialComplex) -> Optional[Simplex]:
    """A clique of the 1-skeleton that spans no simplex, or None."""
    skeleton = complex_.one_skeleton()
    if skeleton.number_of_nodes() == 0:
        return None
    # maximal cliques suffice since the simplex set is downward closed
    for clique in sorted((_canonical(c) for c in nx.find_cliques(skeleton)),
                         key=lambda s: [_vertex_key(v) for v in s]):
        if clique not in complex_.simplices:
            return clique
    return None


def satisfies_ntns(complex_: SimplicialComplex) -> bool:
    """No triangles, no squares: flag and no induced 4-cycle in the 1-skeleton."""
    return is_flag(complex_) and not induced_squares(complex_.one_skeleton())


def find_nonfull_link(complex_: SimplicialComplex) -> Optional[Simplex]:
    """A simplex whose link is not the full subcomplex on its vertices, or None."""
    for simplex in complex_.sorted_simplices():
        link = simplex_link(complex_, simplex)
        if link != complex_.full_subcomplex(link.vertices):
            return simplex
    return None


def links_are_full_subcomplexes(complex_: SimplicialComplex) -> bool:
    return find_nonfull_link(complex_) is None


def upward_link_model(graph: DefiningGraph, subset: VertexSet,
                      poset: Optional[SphericalPoset] = None) -> SimplicialComplex:
    """The complex that the upward part of the link of a vertex G_T is modelled on.

    For ``T = ()`` this is the nerve L; otherwise it is the link of the
    simplex spanned by T in L.
    """
    lower = nerve(graph, poset)
    if not subset:
        return lower
    return simplex_link(lower, subset)
