"""Deformed hyperbolic cubes in the hyperboloid model.

Points of hyperbolic n-space are vectors of R^{n,1} with the time
coordinate last, ``<x, y> = x_1 y_1 + ... + x_n y_n - x_{n+1} y_{n+1}`` and
``<p, p> = -1``. The cube C^n_eps is the part of the convex hull of the
reflection orbit of x_eps lying in the positive orthant; its faces are flat
in the Klein model, so a vertex with k zero coordinates has every other
spatial coordinate equal to ``sinh(eps) / sqrt(1 + k sinh(eps)^2)``.
"""

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from src.config import get_config
from src.core.errors import ConsistencyError

logger = logging.getLogger(__name__)

Pattern = Tuple[int, ...]


def lorentz_inner(x: Sequence[float], y: Sequence[float]) -> float:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return float(np.dot(x[:-1], y[:-1]) - x[-1] * y[-1])


def on_hyperboloid(point: Sequence[float], tolerance: float = None) -> bool:
    tol = get_config().TOLERANCE if tolerance is None else tolerance
    point = np.asarray(point, dtype=float)
    return abs(lorentz_inner(point, point) + 1.0) <= tol and point[-1] > 0


def hyp_distance(p: Sequence[float], q: Sequence[float]) -> float:
    """Hyperbolic distance, ``arccosh(-<p, q>)``.

    Evaluated as ``2 asinh(|p - q| / 2)`` with the Lorentz norm of the
    chord, which equals the arccosh form and is exact at p = q.

    Raises:
        ValueError: If either point is off the hyperboloid
    """
    for point in (p, q):
        if not on_hyperboloid(point):
            error_msg = f"point {list(np.round(point, 12))} is not on the hyperboloid"
            logger.error(error_msg)
            raise ValueError(error_msg)
    chord = np.asarray(p, dtype=float) - np.asarray(q, dtype=float)
    squared = lorentz_inner(chord, chord)
    # cosh d = 1 + squared / 2, so squared in [-2e-12, 0] is the clamp window
    if squared < 0:
        if squared < -2e-12:
            raise ValueError("points do not form a valid hyperboloid pair")
        return 0.0
    return float(2.0 * math.asinh(math.sqrt(squared) / 2.0))


def distance_to_coordinate_hyperplane(point: Sequence[float], axis: int) -> float:
    """Distance from a hyperboloid point to the hyperplane ``x_axis = 0``."""
    return float(math.asinh(abs(point[axis])))


def tangent_direction(base: np.ndarray, target: np.ndarray) -> np.ndarray:
    """Initial direction of the geodesic from ``base`` to ``target``."""
    return target + lorentz_inner(target, base) * base


def angle_at(base: np.ndarray, first: np.ndarray, second: np.ndarray) -> float:
    """Angle at ``base`` between the geodesics towards ``first`` and ``second``."""
    u = tangent_direction(base, first)
    v = tangent_direction(base, second)
    cosine = lorentz_inner(u, v) / math.sqrt(lorentz_inner(u, u) * lorentz_inner(v, v))
    return float(np.arccos(np.clip(cosine, -1.0, 1.0)))


def _vertex_coordinates(n: int, epsilon: float, pattern: Pattern) -> np.ndarray:
    s = math.sinh(epsilon)
    zeros = pattern.count(0)
    value = s / math.sqrt(1.0 + zeros * s * s)
    spatial = [value if bit else 0.0 for bit in pattern]
    time = math.sqrt(1.0 + sum(c * c for c in spatial))
    return np.array(spatial + [time])


@dataclass(frozen=True)
class FaceType:
    """Face type (k, l): the minimal and maximal vertex types of a face."""
    k: int
    l: int

    def __post_init__(self):
        if not (isinstance(self.k, int) and isinstance(self.l, int)):
            raise TypeError("face type entries must be integers")
        if not 0 <= self.k <= self.l:
            raise ValueError(f"invalid face type ({self.k}, {self.l})")

    @property
    def dimension(self) -> int:
        return self.l - self.k

    def as_tuple(self) -> Tuple[int, int]:
        return (self.k, self.l)


@dataclass(frozen=True)
class HyperbolicCube:
    """The cube C^n_eps with vertices indexed by sign patterns in {0,1}^n.

    A 1 in position i means the vertex lies off the hyperplane ``x_i = 0``;
    the vertex type is the number of zeros. The all-ones vertex is x_eps and
    the all-zeros vertex is x_0.
    """
    n: int
    epsilon: float

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError("n must be a positive integer")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")

    @cached_property
    def _vertices(self) -> Dict[Pattern, np.ndarray]:
        return {
            pattern: _vertex_coordinates(self.n, self.epsilon, pattern)
            for pattern in product((0, 1), repeat=self.n)
        }

    def patterns(self) -> List[Pattern]:
        return list(self._vertices)

    def vertex(self, pattern: Iterable[int]) -> np.ndarray:
        key = tuple(pattern)
        if key not in self._vertices:
            raise ValueError(f"{key} is not a vertex of C^{self.n}")
        return self._vertices[key].copy()

    @staticmethod
    def vertex_type(pattern: Iterable[int]) -> int:
        return tuple(pattern).count(0)

    @property
    def apex(self) -> np.ndarray:
        return self.vertex((1,) * self.n)

    @property
    def base(self) -> np.ndarray:
        return self.vertex((0,) * self.n)


def hyperbolic_cube(n: int, epsilon: float) -> HyperbolicCube:
    return HyperbolicCube(n, float(epsilon))


def cube_apex(n: int, epsilon: float) -> np.ndarray:
    """x_eps = (sinh eps, ..., sinh eps, sqrt(1 + n sinh^2 eps))."""
    point = HyperbolicCube(n, float(epsilon)).apex
    tol = get_config().TOLERANCE
    for axis in range(n):
        gap = abs(distance_to_coordinate_hyperplane(point, axis) - epsilon)
        if gap > tol:
            raise ConsistencyError(f"apex is {gap} off the required distance to x_{axis + 1} = 0")
    return point


def dihedral_angle(epsilon: float) -> float:
    """theta(eps) = arccos(tanh^2 eps), the same in every dimension."""
    return float(math.acos(math.tanh(epsilon) ** 2))


def reflect(point: np.ndarray, axis: int) -> np.ndarray:
    mirrored = np.array(point, dtype=float)
    mirrored[axis] = -mirrored[axis]
    return mirrored


def dihedral_angle_oracle(n: int, epsilon: float, axes: Tuple[int, int] = (0, 1)) -> float:
    """Angle at x_eps between the edges of Y towards two reflected copies of x_eps."""
    if n < 2:
        raise ValueError("the dihedral angle needs n >= 2")
    apex = HyperbolicCube(n, float(epsilon)).apex
    i, j = axes
    return angle_at(apex, reflect(apex, i), reflect(apex, j))


def upward_angle_closed_form(epsilon: float, vertex_type: int) -> float:
    """Angle between two upward edges at a vertex of the given type."""
    s2 = math.sinh(epsilon) ** 2
    return float(math.acos(s2 / (1.0 + (vertex_type + 1) * s2)))


def angle_table(epsilons: Sequence[float]) -> List[Tuple[float, float, float]]:
    """Rows (eps, theta, pi/2 - theta) for a grid of deformation parameters.

    Raises:
        ValueError: On an empty grid or a non-positive value
    """
    if not epsilons:
        raise ValueError("epsilon grid cannot be empty")
    rows = []
    for epsilon in epsilons:
        if not math.isfinite(epsilon) or epsilon <= 0:
            raise ValueError(f"epsilon must be positive and finite, got {epsilon}")
        theta = dihedral_angle(epsilon)
        rows.append((float(epsilon), theta, math.pi / 2 - theta))
    return rows


def face_type(cube: HyperbolicCube, face: Iterable[Iterable[int]]) -> FaceType:
    """Type of a face given by its vertex patterns.

    Raises:
        ValueError: If the patterns do not form an interval of the cube
    """
    patterns = {tuple(p) for p in face}
    if not patterns:
        raise ValueError("a face needs at least one vertex")
    for pattern in patterns:
        if len(pattern) != cube.n or any(bit not in (0, 1) for bit in pattern):
            raise ValueError(f"{pattern} is not a vertex of C^{cube.n}")
    low = tuple(min(bits) for bits in zip(*patterns))
    high = tuple(max(bits) for bits in zip(*patterns))
    interval = {
        pattern for pattern in product((0, 1), repeat=cube.n)
        if all(lo <= bit <= hi for lo, bit, hi in zip(low, pattern, high))
    }
    if interval != patterns:
        error_msg = "vertex set is not a face of the cube"
        logger.error(error_msg)
        raise ValueError(error_msg)
    return FaceType(cube.vertex_type(high), cube.vertex_type(low))


def canonical_face(n: int, kind: FaceType) -> List[Pattern]:
    """Vertices of the canonical type-(k, l) face in sign-pattern order.

    The first n - l coordinates are fixed to 1, the last k to 0 and the
    middle l - k vary.
    """
    if kind.l > n:
        raise ValueError(f"face type ({kind.k}, {kind.l}) does not fit in dimension {n}")
    fixed_ones = (1,) * (n - kind.l)
    fixed_zeros = (0,) * kind.k
    return [fixed_ones + free + fixed_zeros for free in product((0, 1), repeat=kind.dimension)]


def face_distance_matrix(n: int, epsilon: float, kind) -> np.ndarray:
    """Pairwise distances between the vertices of the canonical face of a type."""
    kind = kind if isinstance(kind, FaceType) else FaceType(*kind)
    cube = HyperbolicCube(n, float(epsilon))
    points = [cube.vertex(p) for p in canonical_face(n, kind)]
    size = len(points)
    matrix = np.zeros((size, size))
    for i in range(size):
        for j in range(i + 1, size):
            matrix[i, j] = matrix[j, i] = hyp_distance(points[i], points[j])
    return matrix


def check_face_isometry(n: int, epsilon: float, kind) -> float:
    """Largest entry gap between a type-(k, l) face of C^n and the same face of C^l."""
    kind = kind if isinstance(kind, FaceType) else FaceType(*kind)
    here = face_distance_matrix(n, epsilon, kind)
    reference = face_distance_matrix(kind.l, epsilon, kind) if kind.l >= 1 else np.zeros((1, 1))
    return float(np.max(np.abs(here - reference)))


@dataclass
class LinkAngles:
    """Angles between the cube edges at one vertex.

    Attributes:
        vertex: Sign pattern of the vertex
        edges: Neighbouring patterns with direction "up" (towards x_0) or
            "down" (towards x_eps)
        angles: Symmetric matrix of pairwise angles, zero diagonal
    """
    vertex: Pattern
    edges: List[Tuple[Pattern, str]] = field(default_factory=list)
    angles: np.ndarray = field(default_factory=lambda: np.zeros((0, 0)))

    def pairs(self, first: str, second: str) -> List[float]:
        values = []
        for i in range(len(self.edges)):
            for j in range(i + 1, len(self.edges)):
                kinds = {self.edges[i][1], self.edges[j][1]}
                if kinds == {first, second}:
                    values.append(float(self.angles[i, j]))
        return values

    def upward_angles(self) -> List[float]:
        return self.pairs('up', 'up')

    def max_orthogonality_defect(self) -> float:
        """Largest |angle - pi/2| over up-down and down-down pairs."""
        values = self.pairs('up', 'down') + self.pairs('down', 'down')
        return max((abs(a - math.pi / 2) for a in values), default=0.0)


def vertex_link_angles(n: int, epsilon: float, vertex: Iterable[int]) -> LinkAngles:
    """Pairwise angles between the cube edges leaving a vertex.

    Raises:
        ValueError: If ``vertex`` is not a sign pattern of length n
    """
    cube = HyperbolicCube(n, float(epsilon))
    pattern = tuple(vertex)
    point = cube.vertex(pattern)

    edges = []
    for axis in range(n):
        neighbour = list(pattern)
        neighbour[axis] = 1 - neighbour[axis]
        direction = 'up' if pattern[axis] == 1 else 'down'
        edges.append((tuple(neighbour), direction))

    size = len(edges)
    angles = np.zeros((size, size))
    for i in range(size):
        for j in range(i + 1, size):
            angles[i, j] = angles[j, i] = angle_at(
                point, cube.vertex(edges[i][0]), cube.vertex(edges[j][0])
            )
    return LinkAngles(pattern, edges, angles)
