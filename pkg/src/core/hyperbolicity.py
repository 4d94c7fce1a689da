"""Gromov four-point delta and quasi-isometry fits on finite balls.

Distances are shortest paths over the integer ``weight`` edge attribute
(edges without one count as a unit edge) and are reported in true
lengths, i.e. divided by LENGTH_UNIT.
"""

import logging
import math
from typing import Callable, Dict, Hashable, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from src.config import get_config
from src.core.models import DeltaEstimate, QuasiIsometryFit
from src.core.orbit_graphs import LENGTH_UNIT, CubicalBall, OrbitGraph, node_label, node_sort_key

logger = logging.getLogger(__name__)

GraphLike = Union[OrbitGraph, CubicalBall, nx.Graph]


def _edge_weight(u, v, data) -> int:
    return data.get('weight', LENGTH_UNIT)


def as_networkx(graph: GraphLike) -> nx.Graph:
    if isinstance(graph, CubicalBall):
        return graph.skeleton().graph
    if isinstance(graph, OrbitGraph):
        return graph.graph
    if isinstance(graph, nx.Graph):
        return graph
    raise TypeError(f"expected an OrbitGraph, CubicalBall or networkx.Graph, got {type(graph).__name__}")


def _sorted_nodes(graph: nx.Graph) -> List[Hashable]:
    return sorted(graph.nodes, key=node_sort_key)


def _distance_row(graph: nx.Graph, source: Hashable, position: Mapping[Hashable, int]) -> np.ndarray:
    row = np.zeros(len(position), dtype=np.int64)
    for target, length in nx.single_source_dijkstra_path_length(graph, source, weight=_edge_weight).items():
        row[position[target]] = length
    return row


def _check_connected(graph: nx.Graph) -> None:
    if graph.number_of_nodes() and not nx.is_connected(graph):
        error_msg = "four-point delta needs a connected graph"
        logger.error(error_msg)
        raise ValueError(error_msg)


def _exact_scan(matrix: np.ndarray) -> Tuple[int, Tuple[int, int, int, int], int]:
    """Largest (S1 - S2) over all quadruples, S1 >= S2 >= S3 the pairing sums.

    The outer loop fixes the pair (i, j) with i < j; the pairs (k, l) with
    j < k < l are scanned as one array.
    """
    n = matrix.shape[0]
    best, witness, count = 0, (0, 1, 2, 3), 0
    for i in range(n - 3):
        for j in range(i + 1, n - 2):
            rest = np.arange(j + 1, n)
            block = matrix[np.ix_(rest, rest)]
            sums = np.stack([
                matrix[i, j] + block,
                matrix[i, rest][:, None] + matrix[j, rest][None, :],
                matrix[i, rest][None, :] + matrix[j, rest][:, None],
            ])
            sums.sort(axis=0)
            gaps = np.triu(sums[2] - sums[1], k=1)
            count += len(rest) * (len(rest) - 1) // 2
            k, l = np.unravel_index(int(np.argmax(gaps)), gaps.shape)
            if gaps[k, l] > best:
                best = int(gaps[k, l])
                witness = (i, j, int(rest[k]), int(rest[l]))
    return best, witness, count


def _landmarks(graph: nx.Graph, nodes: List[Hashable], count: int,
               position: Mapping[Hashable, int]) -> Tuple[List[int], Dict[int, np.ndarray]]:
    """Farthest-point landmarks from the first node; ties go to the earlier node."""
    chosen = [0]
    rows = {0: _distance_row(graph, nodes[0], position)}
    nearest = rows[0].astype(float)
    while len(chosen) < count:
        candidate = int(np.argmax(nearest))
        if nearest[candidate] <= 0:
            break
        chosen.append(candidate)
        rows[candidate] = _distance_row(graph, nodes[candidate], position)
        nearest = np.minimum(nearest, rows[candidate])
    return sorted(chosen), rows


def _landmark_count(budget: int) -> int:
    count = 4
    while math.comb(count + 1, 4) <= budget:
        count += 1
    return count


def _sampled_scan(network: nx.Graph, nodes: List[Hashable], position: Mapping[Hashable, int],
                  sample: int, seed: int) -> Tuple[int, Tuple[int, int, int, int]]:
    """Largest (S1 - S2) over ``sample`` uniform quadruples of distinct vertices."""
    rng = np.random.default_rng(seed)
    rows: Dict[int, np.ndarray] = {}

    def row(index: int) -> np.ndarray:
        if index not in rows:
            rows[index] = _distance_row(network, nodes[index], position)
        return rows[index]

    best, quad = 0, (0, 1, 2, 3)
    for _ in range(sample):
        w, x, y, z = (int(v) for v in rng.choice(len(nodes), size=4, replace=False))
        sums = sorted((row(w)[x] + row(y)[z], row(w)[y] + row(x)[z], row(w)[z] + row(x)[y]))
        if sums[2] - sums[1] > best:
            best, quad = int(sums[2] - sums[1]), (w, x, y, z)
    return best, quad


def _landmark_scan(network: nx.Graph, nodes: List[Hashable], position: Mapping[Hashable, int],
                   budget: int) -> Tuple[int, List[Hashable], int]:
    size = _landmark_count(budget)
    chosen, rows = _landmarks(network, nodes, size, position)
    if len(chosen) < 4:
        return 0, [], 0
    matrix = np.vstack([rows[c][chosen] for c in chosen])
    best, quad, count = _exact_scan(matrix)
    return best, [nodes[chosen[q]] for q in quad], count


def delta_four_point(graph: GraphLike, sample: Union[str, int] = 'all', seed: Optional[int] = None,
                     budget: Optional[int] = None) -> DeltaEstimate:
    """Four-point delta: max over quadruples of (largest - second largest pairing sum) / 2.

    ``sample="all"`` scans every quadruple when their number fits the
    budget and otherwise draws ``DELTA_SAMPLE`` seeded uniform quadruples.
    An integer ``sample`` draws that many. ``sample="landmarks"`` scans
    every quadruple of as many farthest-point landmarks as the budget
    allows. The returned ``method`` names the scan that ran.

    Raises:
        ValueError: If the graph is disconnected or ``sample`` is invalid
    """
    settings = get_config()
    if sample not in ('all', 'landmarks') and (
            not isinstance(sample, int) or isinstance(sample, bool) or sample <= 0):
        raise ValueError("sample must be 'all', 'landmarks' or a positive integer")

    network = as_networkx(graph)
    _check_connected(network)
    limit = settings.DELTA_BUDGET if budget is None else budget
    rng_seed = settings.SEED if seed is None else seed
    nodes = _sorted_nodes(network)
    n = len(nodes)
    position = {node: i for i, node in enumerate(nodes)}

    if n < 4:
        return DeltaEstimate(0.0, 'exact', 0, n, [])

    if sample == 'all' and math.comb(n, 4) > limit:
        logger.warning(f"{math.comb(n, 4)} quadruples exceed the budget {limit}; "
                       f"sampling {settings.DELTA_SAMPLE} quadruples with seed {rng_seed}")
        sample = settings.DELTA_SAMPLE

    if sample == 'all':
        matrix = np.vstack([_distance_row(network, node, position) for node in nodes])
        best, quad, count = _exact_scan(matrix)
        method, labels = 'exact', [nodes[q] for q in quad]
    elif sample == 'landmarks':
        best, labels, count = _landmark_scan(network, nodes, position, limit)
        method = 'landmarks'
        logger.info(f"Scanned {count} quadruples of farthest-point landmarks")
    else:
        best, quad = _sampled_scan(network, nodes, position, sample, rng_seed)
        count, method, labels = sample, 'sampled', [nodes[q] for q in quad]

    delta = best / (2 * LENGTH_UNIT)
    logger.info(f"Four-point delta {delta} ({method}, {count} quadruples, {n} vertices)")
    witness = [node_label(v) for v in labels] if best > 0 else []
    return DeltaEstimate(float(delta), method, int(count), n, witness)


def _interior(network: nx.Graph, interior_radius: int) -> List[Hashable]:
    nodes = _sorted_nodes(network)
    with_depth = [v for v in nodes if 'depth' in network.nodes[v]]
    if with_depth:
        return [v for v in with_depth if network.nodes[v]['depth'] <= interior_radius]
    # plain graphs: hop distance from the first node
    hops = nx.single_source_shortest_path_length(network, nodes[0], cutoff=interior_radius)
    return [v for v in nodes if v in hops]


def _constant(lam: float, d1: np.ndarray, d2: np.ndarray) -> float:
    if d1.size == 0:
        return 0.0
    return float(max(0.0, np.max(d2 - lam * d1), np.max(d1 / lam - d2)))


def _best_lambda(d1: np.ndarray, d2: np.ndarray) -> Tuple[float, float]:
    """Minimise lambda + C(lambda) over lambda >= 1, ties to the smaller C.

    C is convex and nonincreasing in lambda, so the objective is convex; a
    ternary search finds the basin and the pair ratios are tried as exact
    breakpoints.
    """
    positive = d1 > 0
    ratios = [1.0]
    if np.any(positive):
        ratios += list(d2[positive] / d1[positive])
        nonzero = positive & (d2 > 0)
        ratios += list(d1[nonzero] / d2[nonzero])
    collapsed = d1[positive & (d2 == 0)]
    upper = max(max(ratios), math.sqrt(float(np.max(collapsed))) if collapsed.size else 1.0, 1.0) + 1.0

    low, high = 1.0, upper
    for _ in range(200):
        first = low + (high - low) / 3
        second = high - (high - low) / 3
        if first + _constant(first, d1, d2) <= second + _constant(second, d1, d2):
            high = second
        else:
            low = first

    candidates = {round(r, 12) for r in ratios if 1.0 <= r <= upper} | {1.0, round(low, 12), upper}
    scored = []
    for lam in candidates:
        c = _constant(lam, d1, d2)
        scored.append((round(lam + c, 9), c, lam))
    _, constant, lam = min(scored)
    return float(lam), float(constant)


def qi_fit(source: GraphLike, target: GraphLike,
           mapping: Union[Mapping[Hashable, Hashable], Callable[[Hashable], Hashable]],
           interior_radius: int) -> QuasiIsometryFit:
    """Affine distortion of ``mapping`` on pairs of interior source vertices.

    Interior vertices are group vertices of word length at most
    ``interior_radius`` (hop distance from the first vertex for plain
    graphs). Finds λ >= 1 and C >= 0 with d1/λ - C <= d2 <= λ d1 + C.

    Raises:
        ValueError: If the map is undefined on an interior vertex
    """
    first, second = as_networkx(source), as_networkx(target)
    if interior_radius < 0:
        raise ValueError("interior_radius must be non-negative")
    lookup = mapping if callable(mapping) else mapping.get
    interior = _interior(first, interior_radius)

    images = {}
    for vertex in interior:
        image = lookup(vertex)
        if image is None or image not in second:
            error_msg = f"map is not defined on interior vertex {node_label(vertex)}"
            logger.error(error_msg)
            raise ValueError(error_msg)
        images[vertex] = image

    rows1, rows2 = [], []
    for i, u in enumerate(interior):
        lengths1 = nx.single_source_dijkstra_path_length(first, u, weight=_edge_weight)
        lengths2 = nx.single_source_dijkstra_path_length(second, images[u], weight=_edge_weight)
        for v in interior[i + 1:]:
            rows1.append(lengths1[v] / LENGTH_UNIT)
            rows2.append(lengths2[images[v]] / LENGTH_UNIT)

    d1, d2 = np.array(rows1, dtype=float), np.array(rows2, dtype=float)
    lam, constant = _best_lambda(d1, d2)
    table = sorted(zip(rows1, rows2))
    logger.info(f"QI fit over {len(rows1)} interior pairs: lambda={lam:.6g}, C={constant:.6g}")
    return QuasiIsometryFit(lam, constant, len(rows1), table)


def milnor_svarc_bound(coned: OrbitGraph, deligne: CubicalBall, family: Sequence[Sequence[str]],
                       mapping: Mapping[Hashable, Hashable], interior_radius: int) -> Dict[str, object]:
    """Proof constants for the relative Milnor-Svarc quasi-isometry on a finite ball.

    R is the larger of d(x0, s x0) over generators s and 2 d(x0, Fix(H)) over
    H in the family, measured in the Deligne 1-skeleton with x0 = G_∅;
    Fix(H) is approximated by the vertices G_T with H ⊆ T. Interior pairs
    are then tested against d_Γ <= 2 d_X + 4.
    """
    skeleton = deligne.skeleton()
    oracle = deligne.oracle
    base = (oracle.normal_form(coned.group_nodes()[0][1]), ())
    from_base = {v: d / LENGTH_UNIT for v, d in
                 nx.single_source_dijkstra_path_length(skeleton.graph, base, weight='weight').items()}

    generator_moves = []
    for name in deligne.graph.vertices:
        image = (oracle.multiply(base[0], (name, 1)), ())
        if image in from_base:
            generator_moves.append(from_base[image])
    fixed_moves = []
    for subset in family:
        members = set(subset)
        fixed = [d for (rep, t), d in from_base.items() if rep == base[0] and members <= set(t)]
        if fixed:
            fixed_moves.append(2 * min(fixed))
    bound_r = max(generator_moves + fixed_moves, default=0.0)

    interior = [v for v in _interior(coned.graph, interior_radius) if v in mapping]
    pairs = violations = 0
    for i, u in enumerate(interior):
        lengths_gamma = nx.single_source_dijkstra_path_length(coned.graph, u, weight=_edge_weight)
        lengths_x = nx.single_source_dijkstra_path_length(skeleton.graph, mapping[u], weight=_edge_weight)
        for v in interior[i + 1:]:
            pairs += 1
            if lengths_gamma[v] / LENGTH_UNIT > 2 * lengths_x[mapping[v]] / LENGTH_UNIT + 4:
                violations += 1

    return {
        'R': float(bound_r),
        'inequality': 'd_coned <= 2 * d_deligne + 4',
        'inequality_pairs': pairs,
        'inequality_violations': violations,
    }
