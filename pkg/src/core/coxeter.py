"""Coxeter groups of a defining graph.

Finite-type recognition through the cosine (Gram) matrix, the Coxeter word
problem via Tits' braid-move closure, and a breadth-first enumeration of
small groups through the geometric representation. The enumeration is an
independent oracle for both the Gram test and the word problem.
"""

import logging
import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

import networkx as nx
import numpy as np

from src.config import get_config
from src.core.defining_graph import DefiningGraph, VertexSet
from src.core.errors import CapExceededError, ConsistencyError

logger = logging.getLogger(__name__)

Letter = Tuple[str, int]

_TOKEN = re.compile(r"([A-Za-z0-9_]+)(\^-1)?\Z")


@dataclass(frozen=True)
class GroupWord:
    """A word in the standard generators.

    Attributes:
        letters: Sequence of ``(generator, sign)`` pairs with sign in {+1, -1}.
            Coxeter words ignore the sign; Artin words keep it.
    """
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        if not isinstance(self.letters, tuple):
            object.__setattr__(self, 'letters', tuple(tuple(x) for x in self.letters))
        for letter in self.letters:
            if len(letter) != 2:
                raise TypeError(f"letter must be a (generator, sign) pair, got {letter!r}")
            name, sign = letter
            if not isinstance(name, str) or not name:
                raise ValueError("generator must be a non-empty string")
            if sign not in (1, -1):
                raise ValueError(f"sign must be +1 or -1, got {sign!r}")

    @classmethod
    def parse(cls, text: str) -> 'GroupWord':
        """Parse whitespace-separated letters with an optional ``^-1`` suffix.

        >>> str(GroupWord.parse("a b^-1 a"))
        'a b^-1 a'
        """
        letters = []
        for token in text.split():
            match = _TOKEN.match(token)
            if not match:
                raise ValueError(f"invalid letter {token!r}")
            letters.append((match.group(1), -1 if match.group(2) else 1))
        return cls(tuple(letters))

    @classmethod
    def positive(cls, names: Iterable[str]) -> 'GroupWord':
        return cls(tuple((name, 1) for name in names))

    @property
    def generators(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.letters)

    def inverse(self) -> 'GroupWord':
        return GroupWord(tuple((name, -sign) for name, sign in reversed(self.letters)))

    def validate(self, graph: DefiningGraph) -> None:
        unknown = sorted(set(self.generators) - set(graph.vertices))
        if unknown:
            raise ValueError(f"word uses unknown generators: {', '.join(unknown)}")

    def shortlex_key(self, graph: DefiningGraph):
        order = graph.index
        return (len(self.letters),
                tuple((order[name], 0 if sign > 0 else 1) for name, sign in self.letters))

    def __add__(self, other: 'GroupWord') -> 'GroupWord':
        return GroupWord(self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self):
        return " ".join(name if sign > 0 else f"{name}^-1" for name, sign in self.letters)


_SPHERICAL_FAMILIES = {'A', 'B', 'D', 'E', 'F', 'H', 'I2'}


@dataclass(frozen=True)
class CoxeterTypeName:
    """Catalog name of an irreducible Coxeter system.

    Attributes:
        family: One of A, B, D, E, F, H, I2, affine, indefinite
        rank: Number of generators
        parameter: The label m for I2(m), otherwise None
    """
    family: str
    rank: int
    parameter: Optional[int] = None

    def __post_init__(self):
        if self.family not in _SPHERICAL_FAMILIES | {'affine', 'indefinite'}:
            raise ValueError(f"unknown Coxeter family {self.family!r}")
        if self.rank < 1:
            raise ValueError("rank must be positive")
        if self.family == 'I2' and (self.rank != 2 or self.parameter is None or self.parameter < 3):
            raise ValueError("I2(m) requires rank 2 and m >= 3")
        allowed_ranks = {'D': range(4, 10**6), 'E': (6, 7, 8), 'F': (4,), 'H': (3, 4), 'B': range(2, 10**6)}
        if self.family in allowed_ranks and self.rank not in allowed_ranks[self.family]:
            raise ValueError(f"{self.family} has no member of rank {self.rank}")

    @property
    def is_spherical(self) -> bool:
        return self.family in _SPHERICAL_FAMILIES

    def __str__(self):
        if self.family == 'I2':
            return f"I2({self.parameter})"
        if self.family == 'affine':
            return f"affine-irreducible({self.rank})"
        if self.family == 'indefinite':
            return f"indefinite({self.rank})"
        return f"{self.family}{self.rank}"


@lru_cache(maxsize=128)
def _full_gram(graph: DefiningGraph) -> np.ndarray:
    n = len(graph.vertices)
    matrix = -np.ones((n, n))
    np.fill_diagonal(matrix, 1.0)
    for a, b, m in graph.edges:
        i, j = graph.index[a], graph.index[b]
        value = 0.0 if m == 2 else -np.cos(np.pi / m)
        matrix[i, j] = matrix[j, i] = value
    matrix.setflags(write=False)
    return matrix


def gram_matrix(graph: DefiningGraph) -> np.ndarray:
    """Cosine matrix of the graph in canonical vertex order.

    Diagonal 1, ``-cos(pi/m)`` on edges and ``-1`` on non-edges.
    """
    return np.array(_full_gram(graph))


def _submatrix(graph: DefiningGraph, subset: VertexSet) -> np.ndarray:
    idx = [graph.index[v] for v in subset]
    return _full_gram(graph)[np.ix_(idx, idx)]


def _is_positive_definite(matrix: np.ndarray, tolerance: float) -> bool:
    if matrix.size == 0:
        return True
    try:
        lower = np.linalg.cholesky(matrix)
    except np.linalg.LinAlgError:
        return False
    # squared pivots are ratios of consecutive leading minors
    return bool(np.all(np.diag(lower) ** 2 > tolerance))


def _is_affine(matrix: np.ndarray, tolerance: float) -> bool:
    eigenvalues = np.linalg.eigvalsh(matrix)
    return bool(eigenvalues[0] > -tolerance and np.sum(np.abs(eigenvalues) <= tolerance) == 1)


def is_spherical(graph: DefiningGraph, subset: Iterable[str], tolerance: Optional[float] = None) -> bool:
    """True iff the parabolic subgroup W(Δ_T) is finite (Gram matrix positive definite)."""
    tol = get_config().TOLERANCE if tolerance is None else tolerance
    chosen = graph.vertex_set(subset)
    return _is_positive_definite(_submatrix(graph, chosen), tol)


def _noncommuting_components(graph: DefiningGraph, subset: VertexSet) -> List[VertexSet]:
    relation = nx.Graph()
    relation.add_nodes_from(subset)
    for s, t in combinations(subset, 2):
        if graph.label(s, t) != 2:
            relation.add_edge(s, t)
    return sorted(tuple(sorted(c)) for c in nx.connected_components(relation))


def affine_components(graph: DefiningGraph, subset: Iterable[str],
                      tolerance: Optional[float] = None) -> List[Tuple[VertexSet, int]]:
    """Irreducible components of Δ_T whose Gram matrix is PSD with corank 1.

    Components are taken in the graph joining pairs with ``m != 2``
    (labels >= 3 and non-edges).

    Returns:
        List of ``(component, rank)`` pairs in sorted order
    """
    tol = get_config().TOLERANCE if tolerance is None else tolerance
    chosen = graph.vertex_set(subset)
    return [
        (component, len(component))
        for component in _noncommuting_components(graph, chosen)
        if _is_affine(_submatrix(graph, component), tol)
    ]


def _arm_lengths(diagram: nx.Graph, centre: str) -> List[int]:
    rest = diagram.copy()
    rest.remove_node(centre)
    return sorted(len(c) for c in nx.connected_components(rest))


def _match_spherical(graph: DefiningGraph, component: VertexSet) -> CoxeterTypeName:
    rank = len(component)
    if rank == 1:
        return CoxeterTypeName('A', 1)

    diagram = nx.Graph()
    diagram.add_nodes_from(component)
    heavy = []
    for s, t in combinations(component, 2):
        m = graph.label(s, t)
        if m is not None and m >= 3:
            diagram.add_edge(s, t, label=m)
            if m > 3:
                heavy.append((s, t, m))

    if rank == 2:
        (s, t) = component
        m = graph.label(s, t)
        if m == 3:
            return CoxeterTypeName('A', 2)
        if m == 4:
            return CoxeterTypeName('B', 2)
        return CoxeterTypeName('I2', 2, m)

    if nx.is_tree(diagram):
        degrees = dict(diagram.degree())
        if not heavy:
            branches = [v for v, d in degrees.items() if d >= 3]
            if not branches:
                return CoxeterTypeName('A', rank)
            if len(branches) == 1 and degrees[branches[0]] == 3:
                arms = _arm_lengths(diagram, branches[0])
                if arms[:2] == [1, 1]:
                    return CoxeterTypeName('D', rank)
                if arms in ([1, 2, 2], [1, 2, 3], [1, 2, 4]):
                    return CoxeterTypeName('E', rank)
        elif len(heavy) == 1 and max(degrees.values()) <= 2:
            s, t, m = heavy[0]
            at_end = degrees[s] == 1 or degrees[t] == 1
            if m == 4 and at_end:
                return CoxeterTypeName('B', rank)
            if m == 4 and rank == 4:
                return CoxeterTypeName('F', 4)
            if m == 5 and at_end and rank in (3, 4):
                return CoxeterTypeName('H', rank)

    error_msg = f"positive definite component {component} matches no spherical type"
    logger.error(error_msg)
    raise ConsistencyError(error_msg)


def finite_type_name(graph: DefiningGraph, tolerance: Optional[float] = None) -> List[CoxeterTypeName]:
    """Catalog name of every irreducible component of the graph, in component order."""
    tol = get_config().TOLERANCE if tolerance is None else tolerance
    names = []
    for component in _noncommuting_components(graph, graph.vertices):
        matrix = _submatrix(graph, component)
        if _is_positive_definite(matrix, tol):
            names.append(_match_spherical(graph, component))
        elif _is_affine(matrix, tol):
            names.append(CoxeterTypeName('affine', len(component)))
        else:
            names.append(CoxeterTypeName('indefinite', len(component)))
    return names


def describe_type(graph: DefiningGraph) -> str:
    """Human-readable product of component types, e.g. ``A1 x I2(5)``."""
    names = finite_type_name(graph)
    return " x ".join(str(name) for name in names) if names else "trivial"


class _CoxeterSystem:
    """Index-level machinery for the word problem of one graph."""

    def __init__(self, graph: DefiningGraph):
        self.graph = graph
        self.orders: Dict[Tuple[int, int], int] = {}
        for a, b, m in graph.edges:
            i, j = graph.index[a], graph.index[b]
            self.orders[(i, j)] = self.orders[(j, i)] = m
        self._append_memo: Dict[Tuple[Tuple[int, ...], int], Tuple[int, ...]] = {}

    def encode(self, word: GroupWord) -> Tuple[int, ...]:
        word.validate(self.graph)
        return tuple(self.graph.index[name] for name in word.generators)

    def decode(self, indices: Tuple[int, ...]) -> GroupWord:
        return GroupWord.positive(self.graph.vertices[i] for i in indices)

    def braid_moves(self, word: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
        for i in range(len(word) - 1):
            s, t = word[i], word[i + 1]
            m = self.orders.get((s, t))
            if m is None or i + m > len(word):
                continue
            if all(word[i + j] == (s if j % 2 == 0 else t) for j in range(m)):
                swapped = tuple(t if j % 2 == 0 else s for j in range(m))
                yield word[:i] + swapped + word[i + m:]

    def explore(self, word: Tuple[int, ...], cap: int):
        """Breadth-first braid closure of ``word``.

        Returns ``(closure, None)`` when no word in the closure contains a
        square, else ``(None, shortened)`` with the first square deleted.
        """
        seen = {word}
        queue = deque([word])
        while queue:
            current = queue.popleft()
            for i in range(len(current) - 1):
                if current[i] == current[i + 1]:
                    return None, current[:i] + current[i + 2:]
            for moved in self.braid_moves(current):
                if moved not in seen:
                    seen.add(moved)
                    if len(seen) > cap:
                        raise CapExceededError("braid closure", cap)
                    queue.append(moved)
        return seen, None

    def canonical(self, reduced: Tuple[int, ...], cap: int) -> Tuple[int, ...]:
        closure, _ = self.explore(reduced, cap)
        if closure is None:
            raise ConsistencyError(f"word {reduced} was expected to be reduced")
        return min(closure)

    def append(self, reduced: Tuple[int, ...], s: int, cap: int) -> Tuple[int, ...]:
        """Normal form of (normal form) * s."""
        key = (reduced, s)
        cached = self._append_memo.get(key)
        if cached is not None:
            return cached
        closure, shortened = self.explore(reduced + (s,), cap)
        result = min(closure) if closure is not None else self.canonical(shortened, cap)
        self._append_memo[key] = result
        return result

    def reduce(self, word: Tuple[int, ...], cap: int) -> Tuple[int, ...]:
        current: Tuple[int, ...] = ()
        for s in word:
            current = self.append(current, s, cap)
        return current


@lru_cache(maxsize=64)
def _system(graph: DefiningGraph) -> _CoxeterSystem:
    return _CoxeterSystem(graph)


def coxeter_reduce(graph: DefiningGraph, word: GroupWord, cap: Optional[int] = None) -> GroupWord:
    """Reduced word for the element of W(Δ) represented by ``word``.

    Letters are folded in one at a time; each step explores the braid
    closure of (reduced prefix) * s and deletes a square when one appears.
    The result is the shortlex-least reduced expression in canonical vertex
    order, so it is also the normal form of the element.

    Raises:
        CapExceededError: If a braid closure grows beyond ``cap`` words
    """
    limit = get_config().CLOSURE_CAP if cap is None else cap
    system = _system(graph)
    return system.decode(system.reduce(system.encode(word), limit))


coxeter_normal_form = coxeter_reduce


def coxeter_equal(graph: DefiningGraph, first: GroupWord, second: GroupWord,
                  cap: Optional[int] = None) -> bool:
    """True iff both words represent the same element of W(Δ)."""
    # every generator is an involution, so the inverse is the reversed word
    return len(coxeter_reduce(graph, first + GroupWord(tuple(reversed(second.letters))), cap)) == 0


@dataclass
class EnumerationResult:
    """Outcome of a breadth-first enumeration of W(Δ).

    Attributes:
        graph: The defining graph
        closed: True when the group closed at or below the cap
        elements: Shortlex-least reduced words, in discovery (shortlex) order
        right_action: Maps ``(element index, generator index)`` to the index
            of the product; complete only when ``closed`` is True
        cap: The bound that was applied
    """
    graph: DefiningGraph
    closed: bool
    elements: List[GroupWord] = field(default_factory=list)
    right_action: Dict[Tuple[int, int], int] = field(default_factory=dict)
    cap: int = 0

    @property
    def exceeds_cap(self) -> bool:
        return not self.closed

    def __len__(self):
        return len(self.elements)


def _reflection_matrices(graph: DefiningGraph) -> List[np.ndarray]:
    form = _full_gram(graph)
    n = len(graph.vertices)
    matrices = []
    for s in range(n):
        reflection = np.eye(n)
        # sigma_s(v) = v - 2 B(alpha_s, v) alpha_s
        reflection[s, :] -= 2.0 * form[s, :]
        matrices.append(reflection)
    return matrices


def _matrix_key(matrix: np.ndarray) -> bytes:
    return (np.round(matrix, 6) + 0.0).tobytes()


def enumerate_coxeter(graph: DefiningGraph, cap: Optional[int] = None) -> EnumerationResult:
    """Enumerate W(Δ) by right multiplication in the geometric representation.

    Elements are identified by their (rounded) reflection-representation
    matrices, which makes this independent of the Tits reduction. Breadth
    first search with generators tried in canonical order discovers each
    element first through its shortlex-least word.
    """
    limit = get_config().ENUMERATION_CAP if cap is None else cap
    n = len(graph.vertices)
    generators = _reflection_matrices(graph)
    identity = np.eye(n)

    words: List[Tuple[int, ...]] = [()]
    matrices = [identity]
    keys = {_matrix_key(identity): 0}
    action: Dict[Tuple[int, int], int] = {}

    position = 0
    while position < len(words):
        for s in range(n):
            product = matrices[position] @ generators[s]
            key = _matrix_key(product)
            target = keys.get(key)
            if target is None:
                if len(words) >= limit:
                    logger.info(f"Enumeration of W exceeded cap {limit}")
                    return EnumerationResult(graph, False,
                                             [GroupWord.positive(graph.vertices[i] for i in w) for w in words],
                                             action, limit)
                target = len(words)
                words.append(words[position] + (s,))
                matrices.append(product)
                keys[key] = target
            action[(position, s)] = target
        position += 1

    logger.debug(f"Enumeration of W closed with {len(words)} elements")
    elements = [GroupWord.positive(graph.vertices[i] for i in w) for w in words]
    return EnumerationResult(graph, True, elements, action, limit)


def project_to_coxeter(word: GroupWord) -> GroupWord:
    """Image under the quotient map G(Δ) -> W(Δ): every sign becomes +1."""
    return GroupWord.positive(word.generators)


def tits_section(graph: DefiningGraph, word: GroupWord, cap: Optional[int] = None) -> GroupWord:
    """Positive Artin lift of a reduced Coxeter word.

    Raises:
        ValueError: If ``word`` is not reduced in W(Δ)
    """
    if len(coxeter_reduce(graph, word, cap)) != len(word):
        error_msg = f"word '{word}' is not reduced"
        logger.error(error_msg)
        raise ValueError(error_msg)
    return GroupWord.positive(word.generators)
