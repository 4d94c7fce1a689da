"""Graph-level hyperbolicity conditions and the cited verdict.

Each check returns a ConditionCheck carrying the lexicographically least
witness when the condition fails.
"""

import logging
from fractions import Fraction
from itertools import combinations
from typing import Any, Iterable, List, Optional

import numpy as np

from src.config import get_config
from src.core.complexes import SphericalPoset, minimal_non_spherical_sets, spherical_poset
from src.core.coxeter import affine_components, describe_type, enumerate_coxeter, gram_matrix, is_spherical
from src.core.defining_graph import DefiningGraph, four_circuits, full_subgraph, induced_four_cycles, maximal_cliques
from src.core.errors import CapExceededError, ConsistencyError
from src.core.models import ClassificationReport, ConditionCheck

logger = logging.getLogger(__name__)


def _triangles(graph: DefiningGraph):
    for a, b, c in combinations(graph.vertices, 3):
        labels = (graph.label(a, b), graph.label(b, c), graph.label(a, c))
        if None not in labels:
            yield (a, b, c), labels


def _angle_sum(labels) -> Fraction:
    return sum((Fraction(1, m) for m in labels), Fraction(0))


def is_two_dimensional(graph: DefiningGraph) -> ConditionCheck:
    """At least one edge, and 1/m + 1/n + 1/p <= 1 on every triangle."""
    if not graph.edges:
        return ConditionCheck('two_dimensional', False, [])
    for triangle, labels in _triangles(graph):
        if _angle_sum(labels) > 1:
            return ConditionCheck('two_dimensional', False, triangle)
    return ConditionCheck('two_dimensional', True)


def is_fc_type(graph: DefiningGraph) -> ConditionCheck:
    """Every clique spherical; checking maximal cliques suffices."""
    for clique in maximal_cliques(graph):
        if not is_spherical(graph, clique):
            return ConditionCheck('fc_type', False, clique)
    return ConditionCheck('fc_type', True)


def has_no_empty_squares(graph: DefiningGraph) -> ConditionCheck:
    squares = induced_four_cycles(graph)
    if squares:
        return ConditionCheck('no_empty_squares', False, squares[0])
    return ConditionCheck('no_empty_squares', True)


def moussong_m1(graph: DefiningGraph, poset: Optional[SphericalPoset] = None) -> ConditionCheck:
    """No subset with an irreducible affine component of rank >= 3.

    An irreducible affine subset has only spherical proper subsets, so the
    search runs over minimal non-spherical sets of size three or more.
    """
    poset = spherical_poset(graph) if poset is None else poset
    for candidate in minimal_non_spherical_sets(graph, poset):
        if len(candidate) < 3:
            continue
        if any(rank >= 3 for _, rank in affine_components(graph, candidate)):
            return ConditionCheck('m1', False, candidate)
    return ConditionCheck('m1', True)


def moussong_m2(graph: DefiningGraph, poset: Optional[SphericalPoset] = None,
                vertex_cap: Optional[int] = None) -> ConditionCheck:
    """No disjoint A, B of infinite type joined by label-2 edges throughout.

    Any such pair shrinks to a pair of minimal non-spherical sets, so only
    those are compared.

    Raises:
        CapExceededError: If the graph has more vertices than ``vertex_cap``
    """
    cap = get_config().M2_VERTEX_CAP if vertex_cap is None else vertex_cap
    if len(graph.vertices) > cap:
        logger.error(f"M2 search refused: {len(graph.vertices)} vertices")
        raise CapExceededError("M2 search vertex count", cap)

    poset = spherical_poset(graph) if poset is None else poset
    candidates = minimal_non_spherical_sets(graph, poset)
    for i, first in enumerate(candidates):
        for second in candidates[i + 1:]:
            if set(first) & set(second):
                continue
            if all(graph.label(a, b) == 2 for a in first for b in second):
                pair = sorted((first, second))
                return ConditionCheck('m2', False, (pair[0], pair[1]))
    return ConditionCheck('m2', True)


def prop31_cond3(graph: DefiningGraph) -> ConditionCheck:
    """No triangle with 1/m + 1/n + 1/p = 1 and no 4-circuit with four label-2 sides."""
    for triangle, labels in _triangles(graph):
        if _angle_sum(labels) == 1:
            return ConditionCheck('prop31_cond3', False, triangle)
    for circuit in four_circuits(graph):
        cycle = circuit.cycle
        sides = zip(cycle, cycle[1:] + cycle[:1])
        if all(graph.label(u, v) == 2 for u, v in sides):
            return ConditionCheck('prop31_cond3', False, cycle)
    return ConditionCheck('prop31_cond3', True)


def verdict(graph: DefiningGraph) -> ClassificationReport:
    """Run every condition and apply the decision tree.

    Raises:
        ConsistencyError: If a two-dimensional graph has prop31_cond3
            different from m1 and m2
    """
    poset = spherical_poset(graph)
    checks = {
        'two_dimensional': is_two_dimensional(graph),
        'fc_type': is_fc_type(graph),
        'no_empty_squares': has_no_empty_squares(graph),
        'm1': moussong_m1(graph, poset),
        'm2': moussong_m2(graph, poset),
        'prop31_cond3': prop31_cond3(graph),
    }
    witnesses = {name: check.witness for name, check in checks.items() if not check.holds}

    w_hyperbolic = checks['m1'].holds and checks['m2'].holds
    two_dimensional = checks['two_dimensional'].holds

    if two_dimensional and checks['prop31_cond3'].holds != w_hyperbolic:
        error_msg = (
            f"two-dimensional graph {list(graph.vertices)}: prop31_cond3="
            f"{checks['prop31_cond3'].holds} but m1 and m2={w_hyperbolic}"
        )
        logger.error(error_msg)
        raise ConsistencyError(error_msg)

    citations = [('w_hyperbolic', 'Moussong (M1)+(M2)')]
    if not w_hyperbolic:
        deligne = weak = 'no'
        citations += [('deligne_hyperbolic', 'Prop 3.2'), ('weakly_rel_hyperbolic', 'Thm 1.1')]
    elif two_dimensional:
        deligne = weak = 'yes'
        citations += [('deligne_hyperbolic', 'Prop 3.1'), ('weakly_rel_hyperbolic', 'Prop 3.1 / Thm 1.1')]
    elif checks['fc_type'].holds and checks['no_empty_squares'].holds:
        deligne = weak = 'yes'
        citations += [('deligne_hyperbolic', 'Thm 4.2'), ('weakly_rel_hyperbolic', 'Thm 4.2 / Cor 4.3')]
    else:
        deligne = weak = 'unknown'
        citations += [('deligne_hyperbolic', 'Conjecture 1.4'), ('weakly_rel_hyperbolic', 'Conjecture 1.4')]

    logger.info(f"Verdict for {len(graph.vertices)}-vertex graph: W={'yes' if w_hyperbolic else 'no'}, weak={weak}")
    return ClassificationReport(
        two_dimensional=two_dimensional,
        fc_type=checks['fc_type'].holds,
        no_empty_squares=checks['no_empty_squares'].holds,
        m1=checks['m1'].holds,
        m2=checks['m2'].holds,
        prop31_cond3=checks['prop31_cond3'].holds,
        w_hyperbolic='yes' if w_hyperbolic else 'no',
        deligne_hyperbolic=deligne,
        weakly_rel_hyperbolic=weak,
        citations=citations,
        witnesses=witnesses,
        type_name=describe_type(graph),
    )


def classify_many(graphs: Iterable[DefiningGraph]) -> List[ClassificationReport]:
    return [verdict(graph) for graph in graphs]


def _infinite_by_enumeration(graph: DefiningGraph, subset) -> bool:
    return enumerate_coxeter(full_subgraph(graph, subset)).exceeds_cap


def witness_violates(graph: DefiningGraph, condition: str, witness: Any) -> bool:
    """Re-check a witness without the code path that produced it.

    Sphericity is re-decided by group enumeration rather than the Gram test.
    """
    if condition == 'two_dimensional':
        if not witness:
            return not graph.edges
        labels = [graph.label(a, b) for a, b in combinations(witness, 2)]
        return None not in labels and sum(Fraction(1, m) for m in labels) > 1

    if condition == 'fc_type':
        pairwise = all(graph.has_edge(a, b) for a, b in combinations(witness, 2))
        return pairwise and _infinite_by_enumeration(graph, witness)

    if condition == 'no_empty_squares':
        a, b, c, d = witness
        sides = all(graph.has_edge(u, v) for u, v in ((a, b), (b, c), (c, d), (d, a)))
        return sides and not graph.has_edge(a, c) and not graph.has_edge(b, d)

    if condition == 'm1':
        if len(witness) < 3:
            return False
        eigenvalues = np.linalg.eigvalsh(gram_matrix(full_subgraph(graph, witness)))
        tol = get_config().TOLERANCE
        return bool(eigenvalues[0] > -tol and np.sum(np.abs(eigenvalues) <= tol) == 1)

    if condition == 'm2':
        first, second = witness
        if set(first) & set(second):
            return False
        joined = all(graph.label(a, b) == 2 for a in first for b in second)
        return joined and _infinite_by_enumeration(graph, first) and _infinite_by_enumeration(graph, second)

    if condition == 'prop31_cond3':
        if len(witness) == 3:
            labels = [graph.label(a, b) for a, b in combinations(witness, 2)]
            return None not in labels and sum(Fraction(1, m) for m in labels) == 1
        cycle = list(witness)
        return all(graph.label(u, v) == 2 for u, v in zip(cycle, cycle[1:] + cycle[:1]))

    raise ValueError(f"unknown condition {condition!r}")
