"""Labelled defining graphs of Artin and Coxeter groups.

A defining graph is a simple graph whose edges carry integer labels
``m >= 2``. An absent edge stands for ``m = infinity`` (no relation).
"""

import logging
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx

from src.core.errors import ParseError
from src.utils.graph_search import FourCircuit, four_circuits as _four_circuits
from src.utils.graph_search import induced_squares

logger = logging.getLogger(__name__)

VERTEX_NAME = re.compile(r"[A-Za-z0-9_]+\Z")

# A subset of the vertices of a specific graph, stored sorted. May be empty.
VertexSet = Tuple[str, ...]

Edge = Tuple[str, str, int]


@dataclass(frozen=True)
class DefiningGraph:
    """Immutable labelled defining graph.

    Attributes:
        vertices: Vertex names in canonical (lexicographic) order
        edges: Edges as ``(a, b, m)`` with ``a < b``, sorted
    """
    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...] = field(default=())

    def __post_init__(self):
        """Validate and canonicalize the graph."""
        if not isinstance(self.vertices, tuple):
            object.__setattr__(self, 'vertices', tuple(self.vertices))
        if not isinstance(self.edges, tuple):
            object.__setattr__(self, 'edges', tuple(self.edges))

        for name in self.vertices:
            if not isinstance(name, str) or not VERTEX_NAME.match(name):
                raise ValueError(f"vertex name must match [A-Za-z0-9_]+, got {name!r}")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex names must be unique")

        known = set(self.vertices)
        seen = set()
        canonical_edges = []
        for a, b, m in self.edges:
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            if a not in known or b not in known:
                raise ValueError(f"edge {a}-{b} uses an undeclared vertex")
            if not isinstance(m, int) or isinstance(m, bool) or m < 2:
                raise ValueError(f"edge {a}-{b} label must be an integer >= 2, got {m!r}")
            pair = frozenset((a, b))
            if pair in seen:
                raise ValueError(f"duplicate edge {a}-{b}")
            seen.add(pair)
            low, high = sorted((a, b))
            canonical_edges.append((low, high, m))

        object.__setattr__(self, 'vertices', tuple(sorted(self.vertices)))
        object.__setattr__(self, 'edges', tuple(sorted(canonical_edges)))

    @cached_property
    def _labels(self) -> Dict[FrozenSet[str], int]:
        return {frozenset((a, b)): m for a, b, m in self.edges}

    @cached_property
    def index(self) -> Dict[str, int]:
        """Position of each vertex in the canonical order."""
        return {name: i for i, name in enumerate(self.vertices)}

    def label(self, s: str, t: str) -> Optional[int]:
        """Label of the edge s-t, or None when the pair is not an edge (m = infinity)."""
        return self._labels.get(frozenset((s, t)))

    def has_edge(self, s: str, t: str) -> bool:
        return frozenset((s, t)) in self._labels

    def neighbors(self, v: str) -> List[str]:
        return [u for u in self.vertices if u != v and self.has_edge(u, v)]

    def is_right_angled(self) -> bool:
        return all(m == 2 for _, _, m in self.edges)

    def vertex_set(self, names: Iterable[str]) -> VertexSet:
        """Validate names against the graph and return them as a sorted VertexSet."""
        chosen = set(names)
        unknown = chosen - set(self.vertices)
        if unknown:
            error_msg = f"unknown vertices: {', '.join(sorted(unknown))}"
            logger.error(error_msg)
            raise ValueError(error_msg)
        return tuple(sorted(chosen))

    def to_networkx(self) -> nx.Graph:
        """Return an undirected networkx graph with a ``label`` edge attribute."""
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        for a, b, m in self.edges:
            graph.add_edge(a, b, label=m)
        return graph

    def __len__(self):
        return len(self.vertices)


def parse_defining_graph(text: str, strict: bool = False) -> DefiningGraph:
    """Parse the defining-graph DSL.

    Statements, one per line: ``# comment``, ``vertex <name>`` and
    ``edge <name> <name> <int>=2>``. Edges declare their endpoints unless
    ``strict`` is set.

    Args:
        text: Document contents
        strict: Reject edges whose endpoints were not declared by ``vertex``

    Returns:
        DefiningGraph: the canonicalized graph

    Raises:
        ParseError: On syntax errors, duplicate edges, self-loops, labels
            below 2 and (strict mode) undeclared vertices
    """
    declared: List[str] = []
    declared_set = set()
    implicit = set()
    edges: List[Edge] = []
    pairs = set()

    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith('#'):
            continue

        tokens = []
        for match in re.finditer(r"\S+", raw):
            tokens.append((match.group(), match.start() + 1))
        keyword, keyword_col = tokens[0]

        def check_name(token, column):
            if not VERTEX_NAME.match(token):
                raise ParseError(f"invalid vertex name {token!r}", line_no, column)

        if keyword == 'vertex':
            if len(tokens) != 2:
                column = tokens[2][1] if len(tokens) > 2 else len(raw) + 1
                raise ParseError("expected 'vertex <name>'", line_no, column)
            name, column = tokens[1]
            check_name(name, column)
            if name in declared_set:
                raise ParseError(f"duplicate vertex {name}", line_no, column)
            declared.append(name)
            declared_set.add(name)

        elif keyword == 'edge':
            if len(tokens) != 4:
                column = tokens[4][1] if len(tokens) > 4 else len(raw) + 1
                raise ParseError("expected 'edge <name> <name> <label>'", line_no, column)
            (a, col_a), (b, col_b), (label_text, col_m) = tokens[1:]
            check_name(a, col_a)
            check_name(b, col_b)
            if not re.fullmatch(r"[0-9]+", label_text):
                raise ParseError(f"label must be a decimal integer, got {label_text!r}", line_no, col_m)
            m = int(label_text)
            if m < 2:
                raise ParseError(f"label must be >= 2, got {m}", line_no, col_m)
            if a == b:
                raise ParseError(f"self-loop at vertex {a}", line_no, col_b)
            if strict:
                for name, column in ((a, col_a), (b, col_b)):
                    if name not in declared_set:
                        raise ParseError(f"undeclared vertex {name}", line_no, column)
            pair = frozenset((a, b))
            if pair in pairs:
                raise ParseError(f"duplicate edge {a}-{b}", line_no, keyword_col)
            pairs.add(pair)
            implicit.update((a, b))
            edges.append((a, b, m))

        else:
            raise ParseError(f"unknown statement {keyword!r}", line_no, keyword_col)

    vertices = declared + sorted(implicit - declared_set)
    graph = DefiningGraph(tuple(vertices), tuple(edges))
    logger.debug(f"Parsed defining graph with {len(graph.vertices)} vertices and {len(graph.edges)} edges")
    return graph


def serialize_defining_graph(graph: DefiningGraph) -> str:
    """Canonical DSL text: sorted ``vertex`` lines, then sorted ``edge`` lines."""
    lines = [f"vertex {name}" for name in graph.vertices]
    lines += [f"edge {a} {b} {m}" for a, b, m in graph.edges]
    return "\n".join(lines) + "\n"


def load_defining_graph(path, strict: bool = False) -> DefiningGraph:
    """Read and parse a UTF-8 defining-graph file."""
    file_path = Path(path)
    try:
        data = file_path.read_bytes()
    except OSError as e:
        error_msg = f"Failed to read defining graph {file_path}: {e}"
        logger.error(error_msg)
        raise OSError(error_msg) from e
    try:
        text = data.decode('utf-8')
    except UnicodeDecodeError as e:
        head = data[:e.start]
        line = head.count(b'\n') + 1
        column = e.start - (head.rfind(b'\n') + 1) + 1
        logger.error(f"Defining graph {file_path} is not valid UTF-8 at byte {e.start}")
        raise ParseError("invalid UTF-8 byte", line, column) from e
    logger.info(f"Loading defining graph from {file_path}")
    return parse_defining_graph(text, strict=strict)


def full_subgraph(graph: DefiningGraph, subset: Iterable[str]) -> DefiningGraph:
    """The full labelled subgraph spanned by ``subset``."""
    chosen = graph.vertex_set(subset)
    keep = set(chosen)
    edges = tuple(e for e in graph.edges if e[0] in keep and e[1] in keep)
    return DefiningGraph(chosen, edges)


def maximal_cliques(graph: DefiningGraph) -> List[VertexSet]:
    """Maximal cliques, each sorted, listed in sorted order.

    The graph with no vertices has the single maximal clique ``()``.
    """
    if not graph.vertices:
        return [()]
    cliques = [tuple(sorted(c)) for c in nx.find_cliques(graph.to_networkx())]
    return sorted(cliques, key=lambda c: (c, len(c)))


def induced_four_cycles(graph: DefiningGraph) -> List[Tuple[str, str, str, str]]:
    """Chordless 4-cycles a-b-c-d-a, once each, in canonical orientation."""
    return induced_squares(graph.to_networkx())


def four_circuits(graph: DefiningGraph) -> List[FourCircuit]:
    """All 4-circuits of the graph with their chords (chorded squares included)."""
    return _four_circuits(graph.to_networkx())
