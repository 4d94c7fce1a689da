"""DOT and edge-list renderings of balls and simplicial complexes."""

from typing import Union

from src.core.complexes import SimplicialComplex
from src.core.orbit_graphs import CubicalBall, OrbitGraph, node_label, node_sort_key


def _quote(text: str) -> str:
    return '"' + text.replace('\\', '\\\\').replace('"', '\\"') + '"'


def _orbit_graph(ball: Union[OrbitGraph, CubicalBall]) -> OrbitGraph:
    return ball.skeleton() if isinstance(ball, CubicalBall) else ball


def _sorted_edges(graph):
    edges = []
    for u, v, weight in graph.edges(data='weight'):
        first, second = sorted((u, v), key=node_sort_key)
        edges.append((first, second, weight))
    return sorted(edges, key=lambda e: (node_sort_key(e[0]), node_sort_key(e[1])))


def to_dot(ball: Union[OrbitGraph, CubicalBall], name: str = "ball") -> str:
    """DOT graph labelled by canonical words; cone vertices are drawn as boxes."""
    orbit = _orbit_graph(ball)
    lines = [f"graph {name} {{"]
    for node in orbit.nodes():
        attributes = [f"label={_quote(node_label(node))}"]
        if isinstance(node, tuple) and node and node[0] == 'c':
            attributes.append("shape=box")
        lines.append(f"  {_quote(node_label(node))} [{', '.join(attributes)}];")
    for u, v, weight in _sorted_edges(orbit.graph):
        lines.append(f"  {_quote(node_label(u))} -- {_quote(node_label(v))} [weight={weight}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_edge_list(ball: Union[OrbitGraph, CubicalBall]) -> str:
    """One ``u v weight`` line per edge; labels contain no spaces."""
    orbit = _orbit_graph(ball)
    lines = []
    for u, v, weight in _sorted_edges(orbit.graph):
        lines.append(f"{node_label(u).replace(' ', '.')} {node_label(v).replace(' ', '.')} {weight}")
    return "\n".join(lines) + "\n"


def _simplex_label(vertex) -> str:
    if isinstance(vertex, tuple):
        return "{" + ",".join(vertex) + "}"
    return str(vertex)


def complex_to_dot(complex_: SimplicialComplex, name: str = "complex") -> str:
    """DOT of the 1-skeleton."""
    lines = [f"graph {name} {{"]
    for vertex in complex_.vertices:
        lines.append(f"  {_quote(_simplex_label(vertex))};")
    for simplex in complex_.sorted_simplices():
        if len(simplex) == 2:
            lines.append(f"  {_quote(_simplex_label(simplex[0]))} -- {_quote(_simplex_label(simplex[1]))};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def facet_list(complex_: SimplicialComplex) -> str:
    """One facet per line, vertices separated by spaces."""
    return "\n".join(" ".join(_simplex_label(v) for v in facet) for facet in complex_.facets()) + "\n"
