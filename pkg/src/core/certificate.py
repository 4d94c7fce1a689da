"""CAT(-1) checklist for the cubical Deligne complex with the d_eps metric.

Items (i) to (iv) are combinatorial and decide the outcome; item (v)
reports the metric margin pi/2 - theta(eps) and item (vi) spot-checks the
downward links on a finite Deligne ball for right-angled graphs.
"""

import logging
import math
from typing import Dict, List, Optional, Tuple

from src.config import get_config
from src.core.classifier import has_no_empty_squares, is_fc_type
from src.core.complexes import (
    SimplicialComplex,
    find_missing_clique,
    find_nonfull_link,
    nerve,
    simplex_link,
    spherical_poset,
)
from src.core.defining_graph import DefiningGraph
from src.core.errors import CapExceededError, ConsistencyError
from src.core.hyperbolic_cube import dihedral_angle, upward_angle_closed_form, vertex_link_angles
from src.core.models import Certificate, CertificateItem
from src.core.orbit_graphs import CubicalBall, deligne_ball, node_label
from src.utils.graph_search import induced_squares

logger = logging.getLogger(__name__)


def _ntns_failure(complex_: SimplicialComplex) -> Optional[Dict[str, list]]:
    missing = find_missing_clique(complex_)
    if missing is not None:
        return {'missing_simplex': list(missing)}
    squares = induced_squares(complex_.one_skeleton())
    if squares:
        return {'square': list(squares[0])}
    return None


def _ntns_item(lower: SimplicialComplex) -> CertificateItem:
    checked = 1
    failure = _ntns_failure(lower)
    if failure is not None:
        return CertificateItem('iii', "nerve and all of its links are flag with no induced squares",
                               False, {'simplex': [], **failure}, {'complexes_checked': checked})
    for simplex in lower.sorted_simplices():
        checked += 1
        failure = _ntns_failure(simplex_link(lower, simplex))
        if failure is not None:
            return CertificateItem('iii', "nerve and all of its links are flag with no induced squares",
                                   False, {'simplex': list(simplex), **failure}, {'complexes_checked': checked})
    return CertificateItem('iii', "nerve and all of its links are flag with no induced squares",
                           True, None, {'complexes_checked': checked})


def _margin_item(graph: DefiningGraph, lower: SimplicialComplex, epsilon: float) -> Tuple[CertificateItem, float]:
    """Largest |upward link angle - pi/2| at x_eps over the cube dimensions that occur."""
    theta = dihedral_angle(epsilon)
    top = max(2, lower.dimension + 1)
    margin = 0.0
    for n in range(2, top + 1):
        angles = vertex_link_angles(n, epsilon, (1,) * n)
        margin = max([margin] + [abs(a - math.pi / 2) for a in angles.upward_angles()])
    expected = math.pi / 2 - theta
    if abs(margin - expected) > get_config().TOLERANCE:
        error_msg = f"upward link margin {margin} disagrees with pi/2 - theta = {expected}"
        logger.error(error_msg)
        raise ConsistencyError(error_msg)
    detail = {
        'theta': theta,
        'closed_form_angle': upward_angle_closed_form(epsilon, 0),
        'max_cube_dimension': top,
        'upward_link_model': [list(f) for f in lower.facets()],
    }
    return CertificateItem('v', "upward link edge lengths are within the margin of pi/2",
                           True, None, detail), margin


def downward_link(ball: CubicalBall, top) -> SimplicialComplex:
    """Truncated downward link of ``top`` inside a Deligne ball.

    Link vertices are the lower ends of edges below ``top``, named by their
    node labels; a cube with top corner ``top`` contributes the simplex of
    its edges at that corner.
    Only link vertices whose representative exceeds the top's by at most
    ``(radius - |top rep|) // |T|`` letters are kept, so every simplex on
    the kept vertices lies inside the ball.
    """
    rep, subset = top
    allowance = (ball.radius - len(rep)) // max(len(subset), 1)
    kept = set()
    simplices: List[tuple] = []
    for cube in ball.cubes:
        if cube.top != top:
            continue
        below = [v for v in cube.vertices if len(v[1]) == len(subset) - 1]
        if all(len(v[0]) - len(rep) <= allowance for v in below):
            labels = tuple(node_label(v) for v in below)
            kept.update(labels)
            simplices.append(labels)
    return SimplicialComplex(kept, simplices)


def _downward_item(graph: DefiningGraph, radius: int) -> CertificateItem:
    description = "downward links on a Deligne ball are flag"
    if not graph.is_right_angled():
        return CertificateItem('vi', description, None, None,
                               {'reason': "Deligne balls are built for right-angled graphs only"})
    try:
        ball = deligne_ball(graph, radius)
    except CapExceededError as e:
        return CertificateItem('vi', description, None, None, {'reason': str(e)})

    checked = 0
    for vertex in ball.vertices:
        if len(vertex[1]) < 2 or len(vertex[0]) > radius:
            continue
        link = downward_link(ball, vertex)
        checked += 1
        missing = find_missing_clique(link)
        if missing is not None:
            return CertificateItem('vi', description, False,
                                   {'vertex': node_label(vertex), 'missing_simplex': list(missing)},
                                   {'radius': radius, 'links_checked': checked})
    return CertificateItem('vi', description, True, None, {'radius': radius, 'links_checked': checked})


def cat_certificate(graph: DefiningGraph, epsilon: float, radius: Optional[int] = None) -> Certificate:
    """Run the checklist; granted iff items (i) to (iv) pass.

    Every item is evaluated so that the report is complete even when an
    early item fails.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    epsilon = float(epsilon)
    settings = get_config()
    ball_radius = settings.CERTIFICATE_RADIUS if radius is None else radius

    poset = spherical_poset(graph)
    lower = nerve(graph, poset)

    fc = is_fc_type(graph)
    squares = has_no_empty_squares(graph)
    nonfull = find_nonfull_link(lower)
    margin_item, margin = _margin_item(graph, lower, epsilon)

    items = [
        CertificateItem('i', "every clique of the defining graph is spherical",
                        fc.holds, None if fc.holds else list(fc.witness)),
        CertificateItem('ii', "the defining graph has no empty squares",
                        squares.holds, None if squares.holds else list(squares.witness)),
        _ntns_item(lower),
        CertificateItem('iv', "links in the nerve are full subcomplexes",
                        nonfull is None, None if nonfull is None else list(nonfull)),
        margin_item,
        _downward_item(graph, ball_radius),
    ]
    granted = all(item.passed for item in items[:4])
    certificate = Certificate(granted, epsilon, margin, items)
    logger.info(f"Certificate {'granted' if granted else 'refused at ' + str(certificate.refused_at)} "
                f"for {len(graph.vertices)}-vertex graph, margin {margin:.3g}")
    return certificate
