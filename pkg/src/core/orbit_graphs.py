"""Finite balls in Cayley graphs, coned-off Cayley graphs and cubical complexes.

Edge weights are integers: a generator edge or a 1-cube weighs
LENGTH_UNIT = 2 and a cone half-edge weighs 1, so every true length is
``weight / LENGTH_UNIT`` and shortest paths stay exact.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from src.config import get_config
from src.core.complexes import spherical_poset
from src.core.coxeter import GroupWord, project_to_coxeter, tits_section
from src.core.defining_graph import DefiningGraph, VertexSet
from src.core.errors import CapExceededError
from src.core.hyperbolic_cube import FaceType, face_distance_matrix
from src.core.models import ProjectionReport
from src.core.word_oracles import CoxeterOracle, RightAngledArtinOracle, WordOracle

logger = logging.getLogger(__name__)

LENGTH_UNIT = 2
CONE_WEIGHT = 1

# (canonical coset representative, T) stands for the coset g G_T or g W_T
CosetVertex = Tuple[GroupWord, VertexSet]


def _word_key(word: GroupWord):
    return (len(word), tuple((name, -sign) for name, sign in word))


def node_label(node: Hashable) -> str:
    """Printable label: ``e`` for the identity, ``w|H0`` for cones, ``w*G_ab`` for cosets."""
    if isinstance(node, tuple) and node and node[0] == 'g':
        return str(node[1]) or 'e'
    if isinstance(node, tuple) and node and node[0] == 'c':
        return f"{str(node[1]) or 'e'}|H{node[2]}"
    if isinstance(node, tuple) and len(node) == 2 and isinstance(node[0], GroupWord):
        rep, subset = node
        return f"{str(rep) or 'e'}*G_{''.join(subset) or '0'}"
    return str(node)


def node_sort_key(node: Hashable):
    if isinstance(node, tuple) and node and node[0] in ('g', 'c'):
        return (0 if node[0] == 'g' else 1, _word_key(node[1]), node[2:] if node[0] == 'c' else ())
    if isinstance(node, tuple) and len(node) == 2 and isinstance(node[0], GroupWord):
        return (2, _word_key(node[0]), (len(node[1]), node[1]))
    return (3, str(node), ())


class OrbitGraph:
    """A weighted ball of a Cayley-type graph.

    Attributes:
        graph: The underlying ``networkx.Graph``; group nodes carry a
            ``depth`` attribute (word length) and edges a ``weight``
        radius: Word-length radius of the ball
        generators: The generating set S
        family: Standard parabolic generating sets coned off (possibly empty)
        kind: cayley, coned, deligne or davis
    """

    def __init__(self, graph: nx.Graph, radius: int, generators: Sequence[str],
                 family: Sequence[VertexSet] = (), kind: str = 'cayley'):
        self.graph = graph
        self.radius = radius
        self.generators = list(generators)
        self.family = [tuple(h) for h in family]
        self.kind = kind

    def __len__(self):
        return self.graph.number_of_nodes()

    def __repr__(self):
        return (f"OrbitGraph(kind={self.kind}, radius={self.radius}, "
                f"vertices={self.graph.number_of_nodes()}, edges={self.graph.number_of_edges()})")

    def nodes(self) -> List[Hashable]:
        return sorted(self.graph.nodes, key=node_sort_key)

    def group_nodes(self) -> List[Hashable]:
        return [n for n in self.nodes() if 'depth' in self.graph.nodes[n]]

    def cone_nodes(self) -> List[Hashable]:
        return [n for n in self.nodes() if isinstance(n, tuple) and n and n[0] == 'c']

    def distance(self, source: Hashable, target: Hashable) -> float:
        """True length of a shortest path (weights halved)."""
        return nx.dijkstra_path_length(self.graph, source, target, weight='weight') / LENGTH_UNIT

    def summary(self) -> Dict[str, object]:
        weights = [w for _, _, w in self.graph.edges(data='weight')]
        return {
            'kind': self.kind,
            'radius': self.radius,
            'vertices': self.graph.number_of_nodes(),
            'edges': self.graph.number_of_edges(),
            'group_vertices': len(self.group_nodes()),
            'cone_vertices': len(self.cone_nodes()),
            'generator_edges': sum(1 for w in weights if w == LENGTH_UNIT),
            'cone_edges': sum(1 for w in weights if w == CONE_WEIGHT),
            'family': [list(h) for h in self.family],
            'connected': bool(self.graph.number_of_nodes() == 0 or nx.is_connected(self.graph)),
        }


def _grow(oracle: WordOracle, radius: int, cap: int) -> Tuple[Dict[GroupWord, int], Dict[Tuple[GroupWord, tuple], GroupWord]]:
    """Breadth-first ball of canonical words; returns depths and the products seen."""
    if radius < 0:
        raise ValueError("radius must be a non-negative integer")
    identity = oracle.normal_form(GroupWord())
    depth = {identity: 0}
    products: Dict[Tuple[GroupWord, tuple], GroupWord] = {}
    frontier = [identity]
    for level in range(1, radius + 1):
        following = []
        for word in frontier:
            for letter in oracle.step_letters():
                image = oracle.multiply(word, letter)
                products[(word, letter)] = image
                if image in depth:
                    continue
                if len(depth) >= cap:
                    logger.error(f"Ball of radius {radius} exceeded {cap} vertices")
                    raise CapExceededError("ball vertex count", cap)
                depth[image] = level
                following.append(image)
        frontier = following
        logger.debug(f"Sphere of radius {level} has {len(following)} elements")
    return depth, products


def cayley_ball(oracle: WordOracle, radius: int, cap: Optional[int] = None) -> OrbitGraph:
    """Ball of the Cayley graph for the oracle's step letters.

    Raises:
        CapExceededError: If the ball has more than ``cap`` vertices
    """
    limit = get_config().BALL_CAP if cap is None else cap
    depth, products = _grow(oracle, radius, limit)

    graph = nx.Graph()
    for word, level in depth.items():
        graph.add_node(('g', word), depth=level)
    for word in depth:
        for letter in oracle.step_letters():
            image = products.get((word, letter))
            if image is None:
                image = oracle.multiply(word, letter)
            if image in depth and image != word:
                graph.add_edge(('g', word), ('g', image), weight=LENGTH_UNIT, generator=letter[0])

    logger.info(f"Cayley ball of radius {radius}: {graph.number_of_nodes()} vertices ({oracle.name} oracle)")
    return OrbitGraph(graph, radius, oracle.generators(), (), 'cayley')


def coned_off_cayley_ball(oracle: WordOracle, family: Iterable[Iterable[str]], radius: int,
                          cap: Optional[int] = None) -> OrbitGraph:
    """Cayley ball plus a cone vertex V_gH for every coset gH met by the ball.

    Cone vertices are keyed ``('c', coset representative, index of H)`` and
    joined by weight-1 edges to every included element of gH.
    """
    subsets = [oracle.graph.vertex_set(h) for h in family]
    ball = cayley_ball(oracle, radius, cap)
    limit = get_config().BALL_CAP if cap is None else cap

    graph = ball.graph
    for index, subset in enumerate(subsets):
        for node in ball.group_nodes():
            cone = ('c', oracle.coset_normal_form(node[1], subset), index)
            if cone not in graph:
                if graph.number_of_nodes() >= limit:
                    raise CapExceededError("ball vertex count", limit)
                graph.add_node(cone)
            graph.add_edge(cone, node, weight=CONE_WEIGHT)

    ball.family = subsets
    ball.kind = 'coned'
    logger.info(f"Coned-off ball of radius {radius}: {graph.number_of_nodes()} vertices, {len(subsets)} subgroups")
    return ball


@dataclass(frozen=True)
class BallCube:
    """The interval cube [gG_T, gG_R] of a cubical ball.

    Attributes:
        rep: Canonical representative of gG_T
        lower: T
        upper: R, a strict superset of T
        vertices: The cosets gG_T' for T ⊆ T' ⊆ R, in the sign-pattern order
            of the canonical face of type (|T|, |R|)
    """
    rep: GroupWord
    lower: VertexSet
    upper: VertexSet
    vertices: Tuple[CosetVertex, ...] = field(default=(), compare=False)

    @property
    def dimension(self) -> int:
        return len(self.upper) - len(self.lower)

    @property
    def face_type(self) -> FaceType:
        return FaceType(len(self.lower), len(self.upper))

    @property
    def bottom(self) -> CosetVertex:
        return (self.rep, self.lower)

    @property
    def top(self) -> CosetVertex:
        # the all-zero free pattern puts every generator of R into T'
        return self.vertices[0]


def _face_subsets(lower: VertexSet, upper: VertexSet) -> List[VertexSet]:
    # free coordinates are R \ T; a 0 bit puts the generator into T'
    free = [v for v in upper if v not in lower]
    subsets = []
    for bits in product((0, 1), repeat=len(free)):
        chosen = set(lower) | {v for v, bit in zip(free, bits) if bit == 0}
        subsets.append(tuple(sorted(chosen)))
    return subsets


class CubicalBall:
    """A finite piece of the cubical Deligne or Davis complex.

    Attributes:
        graph: The defining graph
        oracle: Word oracle whose cosets label the vertices
        radius: Word-length bound on the group elements that generated the ball
        kind: "deligne" or "davis"
        vertices: Coset vertices, sorted
        cubes: Interval cubes of dimension at least 1, sorted
        depth: Word length of each vertex representative
    """

    def __init__(self, graph: DefiningGraph, oracle: WordOracle, radius: int, kind: str,
                 vertices: Iterable[CosetVertex], cubes: Iterable[BallCube]):
        self.graph = graph
        self.oracle = oracle
        self.radius = radius
        self.kind = kind
        self.vertices: List[CosetVertex] = sorted(set(vertices), key=node_sort_key)
        self.cubes: List[BallCube] = sorted(
            cubes, key=lambda c: (_word_key(c.rep), len(c.lower), c.lower, len(c.upper), c.upper)
        )
        self.depth: Dict[CosetVertex, int] = {v: len(v[0]) for v in self.vertices}

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        return f"CubicalBall(kind={self.kind}, radius={self.radius}, vertices={len(self.vertices)}, cubes={len(self.cubes)})"

    def __contains__(self, vertex) -> bool:
        return vertex in self.depth

    @cached_property
    def _cube_index(self) -> Dict[frozenset, BallCube]:
        return {frozenset(cube.vertices): cube for cube in self.cubes}

    def find_cube(self, vertices: Iterable[CosetVertex]) -> Optional[BallCube]:
        return self._cube_index.get(frozenset(vertices))

    def edges(self) -> List[BallCube]:
        return [c for c in self.cubes if c.dimension == 1]

    def max_cube_dimension(self) -> int:
        return max((c.dimension for c in self.cubes), default=0)

    def cube_counts(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for cube in self.cubes:
            counts[cube.dimension] = counts.get(cube.dimension, 0) + 1
        return dict(sorted(counts.items()))

    @cached_property
    def _skeleton(self) -> OrbitGraph:
        skeleton = nx.Graph()
        for vertex in self.vertices:
            skeleton.add_node(vertex, depth=self.depth[vertex])
        for cube in self.edges():
            first, second = cube.vertices
            skeleton.add_edge(first, second, weight=LENGTH_UNIT)
        return OrbitGraph(skeleton, self.radius, self.graph.vertices, (), self.kind)

    def skeleton(self) -> OrbitGraph:
        """The 1-skeleton with unit edges (weight LENGTH_UNIT)."""
        return self._skeleton

    def cube_metric(self, cube: BallCube, epsilon: float) -> np.ndarray:
        """Distance matrix of the cube under d_eps, the type-(|T|, |R|) face metric."""
        return face_distance_matrix(len(cube.upper), epsilon, cube.face_type)

    def edge_lengths(self, epsilon: float) -> Dict[Tuple[CosetVertex, CosetVertex], float]:
        """d_eps length of every 1-cube, from the type-(t, t+1) face metric."""
        by_type: Dict[FaceType, float] = {}
        lengths = {}
        for cube in self.edges():
            kind = cube.face_type
            if kind not in by_type:
                by_type[kind] = float(self.cube_metric(cube, epsilon)[0, 1])
            lengths[cube.vertices] = by_type[kind]
        return lengths

    def summary(self) -> Dict[str, object]:
        skeleton = self.skeleton()
        return {
            'kind': self.kind,
            'radius': self.radius,
            'oracle': self.oracle.name,
            'vertices': len(self.vertices),
            'cubes': {str(k): v for k, v in self.cube_counts().items()},
            'max_cube_dimension': self.max_cube_dimension(),
            'edges': skeleton.graph.number_of_edges(),
            'connected': bool(nx.is_connected(skeleton.graph)) if self.vertices else True,
        }


def _cubical_ball(graph: DefiningGraph, oracle: WordOracle, radius: int,
                  cap: Optional[int], kind: str) -> CubicalBall:
    limit = get_config().BALL_CAP if cap is None else cap
    depth, _ = _grow(oracle, radius, limit)
    spherical = list(spherical_poset(graph))
    intervals = [(t, r) for t in spherical for r in spherical if len(r) > len(t) and set(t) < set(r)]

    vertices = set()
    cubes: Dict[Tuple[GroupWord, VertexSet, VertexSet], BallCube] = {}
    for element in sorted(depth, key=_word_key):
        reps = {t: oracle.coset_normal_form(element, t) for t in spherical}
        for t, rep in reps.items():
            vertices.add((rep, t))
            if len(vertices) > limit:
                logger.error(f"{kind} ball of radius {radius} exceeded {limit} vertices")
                raise CapExceededError("ball vertex count", limit)
        for lower, upper in intervals:
            key = (reps[lower], lower, upper)
            if key in cubes:
                continue
            # every T' between T and R contains T, so g and rep_T give the same coset
            corners = tuple((reps[s], s) for s in _face_subsets(lower, upper))
            cubes[key] = BallCube(reps[lower], lower, upper, corners)

    ball = CubicalBall(graph, oracle, radius, kind, vertices, cubes.values())
    logger.info(f"{kind.capitalize()} ball of radius {radius}: {len(ball.vertices)} vertices, "
                f"{len(ball.cubes)} cubes")
    return ball


def deligne_ball(graph: DefiningGraph, radius: int, cap: Optional[int] = None) -> CubicalBall:
    """Ball of the cubical Deligne complex on cosets gG_T, T spherical.

    Only right-angled graphs are supported.

    Raises:
        ValueError: If some edge label differs from 2
        CapExceededError: If the ball has more than ``cap`` vertices
    """
    return _cubical_ball(graph, RightAngledArtinOracle(graph), radius, cap, 'deligne')


def davis_ball(graph: DefiningGraph, radius: int, cap: Optional[int] = None,
               oracle: Optional[WordOracle] = None) -> CubicalBall:
    """Ball of the cubical Davis complex on cosets wW_T, T spherical."""
    oracle = CoxeterOracle(graph) if oracle is None else oracle
    return _cubical_ball(graph, oracle, radius, cap, 'davis')


def maximal_spherical_family(graph: DefiningGraph) -> List[VertexSet]:
    """The maximal spherical standard parabolics, as generating sets."""
    return [t for t in spherical_poset(graph).maximal_elements() if t]


def orbit_map(coned: OrbitGraph, deligne: CubicalBall) -> Dict[Hashable, CosetVertex]:
    """g -> gG_∅ on the group vertices that have an image in the Deligne ball."""
    mapping = {}
    for node in coned.group_nodes():
        image = (node[1], ())
        if image in deligne:
            mapping[node] = image
    return mapping


def _skeleton_distances(ball: CubicalBall, source: CosetVertex) -> Dict[CosetVertex, float]:
    lengths = nx.single_source_dijkstra_path_length(ball.skeleton().graph, source, weight='weight')
    return {v: d / LENGTH_UNIT for v, d in lengths.items()}


def projection_and_section(davis: CubicalBall, deligne: Optional[CubicalBall] = None):
    """Projection p: gG_T -> ρ(g)W_T and section s: wW_T -> lift(w)G_T.

    p∘s = id is verified on every Davis vertex at word level. When a Deligne
    ball is given, both maps are also checked to send cubes to cubes and
    1-skeleton distances are compared; equality is reported, not required.

    Returns:
        (projection, section, report): the projection on Deligne vertices
        whose representative fits in the Davis radius (empty without a
        Deligne ball), the section on Davis vertices, and a ProjectionReport

    Raises:
        ValueError: On balls of the wrong kind, different graphs, or a
            Deligne ball smaller than the Davis ball
    """
    if davis.kind != 'davis':
        raise ValueError("first ball must be a Davis ball")
    if deligne is not None:
        if deligne.kind != 'deligne':
            raise ValueError("second ball must be a Deligne ball")
        if deligne.graph != davis.graph:
            raise ValueError("balls must be built from the same defining graph")
        if deligne.radius < davis.radius:
            raise ValueError("Deligne radius must be at least the Davis radius")

    graph = davis.graph
    coxeter = davis.oracle
    failures: List[str] = []

    def project(vertex: CosetVertex) -> CosetVertex:
        rep, subset = vertex
        return (coxeter.coset_normal_form(project_to_coxeter(rep), subset), subset)

    def lift(vertex: CosetVertex) -> CosetVertex:
        rep, subset = vertex
        positive = tits_section(graph, rep)
        if deligne is not None:
            positive = deligne.oracle.coset_normal_form(positive, subset)
        return (positive, subset)

    section = {vertex: lift(vertex) for vertex in davis.vertices}
    for vertex, image in section.items():
        if project(image) != vertex:
            failures.append(f"p(s({node_label(vertex)})) = {node_label(project(image))}")

    projection: Dict[CosetVertex, CosetVertex] = {}
    cube_checks = None
    distances = None
    if deligne is not None:
        missing = [v for v, image in section.items() if image not in deligne]
        failures += [f"s({node_label(v)}) is outside the Deligne ball" for v in missing]

        section_cubes = sum(
            1 for cube in davis.cubes
            if deligne.find_cube(section[v] for v in cube.vertices) is not None
        )
        inner = [c for c in deligne.cubes if len(c.rep) <= davis.radius]
        projection = {v: project(v) for v in deligne.vertices if len(v[0]) <= davis.radius}
        projection_cubes = sum(
            1 for cube in inner
            if davis.find_cube(project(v) for v in cube.vertices) is not None
        )
        if section_cubes != len(davis.cubes):
            failures.append(f"section maps {len(davis.cubes) - section_cubes} cubes off cubes")
        if projection_cubes != len(inner):
            failures.append(f"projection maps {len(inner) - projection_cubes} cubes off cubes")
        cube_checks = {
            'section_cubes': len(davis.cubes),
            'section_cubes_ok': section_cubes,
            'projection_cubes': len(inner),
            'projection_cubes_ok': projection_cubes,
        }

        equal = shorter = longer = pairs = 0
        if not missing:
            davis_rows = {v: _skeleton_distances(davis, v) for v in davis.vertices}
            deligne_rows = {v: _skeleton_distances(deligne, section[v]) for v in davis.vertices}
            for first, second in combinations(davis.vertices, 2):
                d_davis = davis_rows[first].get(second)
                d_deligne = deligne_rows[first].get(section[second])
                if d_davis is None or d_deligne is None:
                    continue
                pairs += 1
                if d_deligne == d_davis:
                    equal += 1
                elif d_deligne < d_davis:
                    shorter += 1
                else:
                    longer += 1
        distances = {'pairs': pairs, 'equal': equal, 'deligne_shorter': shorter, 'deligne_longer': longer}

    report = ProjectionReport(
        section_is_right_inverse=not any(f.startswith('p(s(') for f in failures),
        davis_vertices=len(davis.vertices),
        section_injective=len(set(section.values())) == len(section),
        cube_checks=cube_checks,
        distances=distances,
        failures=failures,
    )
    logger.info(f"Projection/section check: {len(failures)} failures over {len(davis.vertices)} Davis vertices")
    return projection, section, report
