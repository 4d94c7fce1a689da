"""Four-subset scans over networkx graphs (squares and four-circuits)."""

from itertools import combinations
from typing import Hashable, List, NamedTuple, Tuple

import networkx as nx


class FourCircuit(NamedTuple):
    """A 4-circuit a-b-c-d-a together with the diagonals present in the graph."""
    cycle: Tuple[Hashable, Hashable, Hashable, Hashable]
    chords: Tuple[Tuple[Hashable, Hashable], ...]


def _canonical_cycle(cycle):
    # start at the least vertex, then step towards its lesser neighbour
    start = cycle.index(min(cycle))
    rotated = cycle[start:] + cycle[:start]
    if rotated[3] < rotated[1]:
        rotated = (rotated[0], rotated[3], rotated[2], rotated[1])
    return tuple(rotated)


def four_circuits(graph: nx.Graph) -> List[FourCircuit]:
    """Every 4-circuit on distinct vertices, chorded or not.

    A 4-subset supports up to three distinct circuits; each is reported
    once in canonical orientation, sorted.

    >>> g = nx.cycle_graph(4)
    >>> four_circuits(g)
    [FourCircuit(cycle=(0, 1, 2, 3), chords=())]
    """
    found = set()
    nodes = sorted(graph.nodes())
    for a, b, c, d in combinations(nodes, 4):
        for cycle in ((a, b, c, d), (a, b, d, c), (a, c, b, d)):
            sides = zip(cycle, cycle[1:] + cycle[:1])
            if not all(graph.has_edge(u, v) for u, v in sides):
                continue
            w, x, y, z = cycle
            chords = tuple(
                tuple(sorted(pair)) for pair in ((w, y), (x, z))
                if graph.has_edge(*pair)
            )
            found.add(FourCircuit(_canonical_cycle(cycle), tuple(sorted(chords))))
    return sorted(found)


def induced_squares(graph: nx.Graph) -> List[Tuple[Hashable, ...]]:
    """4-subsets inducing a chordless 4-cycle, in canonical orientation."""
    squares = []
    nodes = sorted(graph.nodes())
    for quad in combinations(nodes, 4):
        sub = graph.subgraph(quad)
        if sub.number_of_edges() != 4 or any(deg != 2 for _, deg in sub.degree()):
            continue
        a = quad[0]
        first, second = sorted(sub.neighbors(a))
        opposite = next(v for v in quad if v not in (a, first, second))
        squares.append((a, first, opposite, second))
    return squares
