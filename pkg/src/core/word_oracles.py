"""Word-problem backends used to build finite balls.

Three oracles share one contract: a canonical normal form, equality,
and canonical representatives of cosets of standard parabolic subgroups.

- RightAngledArtinOracle: right-angled Artin groups through the piling
  normal form (letters are pushed onto per-generator piles that record
  which later letters block them).
- CoxeterOracle: W(Δ) through Tits reduction.
- FiniteGroupOracle: finite W(Δ) through the right-multiplication table
  of ``enumerate_coxeter``.
"""

import logging
from abc import ABC, abstractmethod
from collections import deque
from typing import Dict, Iterable, List, Optional, Tuple

from src.core.coxeter import GroupWord, Letter, coxeter_reduce, enumerate_coxeter
from src.core.defining_graph import DefiningGraph, VertexSet
from src.core.errors import CapExceededError

logger = logging.getLogger(__name__)


class WordOracle(ABC):
    """Normal forms and coset representatives for one group presentation.

    Attributes:
        graph: The defining graph
        name: Oracle identifier used in logs and ball metadata
    """

    name = 'abstract'

    def __init__(self, graph: DefiningGraph):
        self.graph = graph

    def generators(self) -> List[str]:
        return list(self.graph.vertices)

    @abstractmethod
    def step_letters(self) -> List[Letter]:
        """Letters a ball grows by, in canonical order."""

    @abstractmethod
    def normal_form(self, word: GroupWord) -> GroupWord:
        """Canonical word for the element represented by ``word``."""

    @abstractmethod
    def coset_normal_form(self, word: GroupWord, subset: Iterable[str]) -> GroupWord:
        """Canonical representative of the left coset ``word * <subset>``."""

    def equal(self, first: GroupWord, second: GroupWord) -> bool:
        return self.normal_form(first) == self.normal_form(second)

    def multiply(self, word: GroupWord, letter: Letter) -> GroupWord:
        return self.normal_form(word + GroupWord((letter,)))

    def word_length(self, word: GroupWord) -> int:
        return len(self.normal_form(word))

    def _subset(self, subset: Iterable[str]) -> VertexSet:
        return self.graph.vertex_set(subset)


class RightAngledArtinOracle(WordOracle):
    """Right-angled Artin group: every edge label is 2, non-edges are free.

    The normal form is the lexicographically least reduced word in
    canonical vertex order, read off the piles by repeatedly taking the
    first generator whose pile bottom holds a letter.
    """

    name = 'raag'

    def __init__(self, graph: DefiningGraph):
        if not graph.is_right_angled():
            error_msg = "right-angled oracle needs every edge label equal to 2"
            logger.error(error_msg)
            raise ValueError(error_msg)
        super().__init__(graph)
        n = len(graph.vertices)
        # blocked[i]: generators that do not commute with generator i
        self._blocked: List[List[int]] = [
            [j for j in range(n) if j != i and not graph.has_edge(graph.vertices[i], graph.vertices[j])]
            for i in range(n)
        ]
        self._blocked_and_self = [sorted(b + [i]) for i, b in enumerate(self._blocked)]
        self._cache: Dict[GroupWord, GroupWord] = {}

    def step_letters(self) -> List[Letter]:
        return [(name, sign) for name in self.graph.vertices for sign in (1, -1)]

    def _piles(self, word: GroupWord) -> List[deque]:
        word.validate(self.graph)
        piles = [deque() for _ in self.graph.vertices]
        for name, sign in word:
            i = self.graph.index[name]
            if piles[i] and piles[i][-1] == -sign:
                for j in self._blocked_and_self[i]:
                    piles[j].pop()
            else:
                piles[i].append(sign)
                for j in self._blocked[i]:
                    piles[j].append(0)
        return piles

    def _depile(self, piles: List[deque]) -> GroupWord:
        letters = []
        while True:
            for i, pile in enumerate(piles):
                if pile and pile[0] != 0:
                    break
            else:
                break
            letters.append((self.graph.vertices[i], piles[i][0]))
            for j in self._blocked_and_self[i]:
                piles[j].popleft()
        return GroupWord(tuple(letters))

    def normal_form(self, word: GroupWord) -> GroupWord:
        cached = self._cache.get(word)
        if cached is None:
            cached = self._depile(self._piles(word))
            self._cache[word] = cached
        return cached

    def _movable_to_end(self, letters: Tuple[Letter, ...], position: int) -> bool:
        name = letters[position][0]
        return all(
            other == name or self.graph.has_edge(name, other)
            for other, _ in letters[position + 1:]
        )

    def coset_normal_form(self, word: GroupWord, subset: Iterable[str]) -> GroupWord:
        """Delete trailing subset letters that commute to the end, to a fixed point."""
        members = set(self._subset(subset))
        letters = self.normal_form(word).letters
        changed = True
        while changed:
            changed = False
            for position in range(len(letters) - 1, -1, -1):
                if letters[position][0] in members and self._movable_to_end(letters, position):
                    letters = letters[:position] + letters[position + 1:]
                    changed = True
                    break
        return self.normal_form(GroupWord(letters))


class CoxeterOracle(WordOracle):
    """W(Δ) through Tits reduction; words are positive."""

    name = 'coxeter'

    def __init__(self, graph: DefiningGraph, cap: Optional[int] = None):
        super().__init__(graph)
        self.cap = cap
        self._cache: Dict[GroupWord, GroupWord] = {}

    def step_letters(self) -> List[Letter]:
        return [(name, 1) for name in self.graph.vertices]

    def normal_form(self, word: GroupWord) -> GroupWord:
        key = GroupWord.positive(word.generators)
        cached = self._cache.get(key)
        if cached is None:
            cached = coxeter_reduce(self.graph, key, self.cap)
            self._cache[key] = cached
        return cached

    def coset_normal_form(self, word: GroupWord, subset: Iterable[str]) -> GroupWord:
        """Strip right descents in the subset until the minimal coset representative remains."""
        members = self._subset(subset)
        current = self.normal_form(word)
        descended = True
        while descended:
            descended = False
            for name in members:
                shorter = self.multiply(current, (name, 1))
                if len(shorter) < len(current):
                    current = shorter
                    descended = True
                    break
        return current


class FiniteGroupOracle(WordOracle):
    """Finite W(Δ) through its right-multiplication table.

    Raises:
        CapExceededError: If the group does not close within ``cap`` elements
    """

    name = 'finite'

    def __init__(self, graph: DefiningGraph, cap: Optional[int] = None):
        super().__init__(graph)
        self.table = enumerate_coxeter(graph, cap)
        if self.table.exceeds_cap:
            logger.error(f"W is infinite or larger than {self.table.cap} elements")
            raise CapExceededError("finite group table", self.table.cap)
        logger.info(f"Finite oracle built with {len(self.table)} elements")

    def step_letters(self) -> List[Letter]:
        return [(name, 1) for name in self.graph.vertices]

    def element_index(self, word: GroupWord) -> int:
        word.validate(self.graph)
        position = 0
        for name in word.generators:
            position = self.table.right_action[(position, self.graph.index[name])]
        return position

    def normal_form(self, word: GroupWord) -> GroupWord:
        return self.table.elements[self.element_index(word)]

    def coset_normal_form(self, word: GroupWord, subset: Iterable[str]) -> GroupWord:
        """The coset member discovered first, i.e. the shortlex-least one."""
        generators = [self.graph.index[name] for name in self._subset(subset)]
        start = self.element_index(word)
        seen = {start}
        queue = deque([start])
        while queue:
            current = queue.popleft()
            for s in generators:
                nxt = self.table.right_action[(current, s)]
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return self.table.elements[min(seen)]


def make_oracle(graph: DefiningGraph, kind: str = 'auto', cap: Optional[int] = None) -> WordOracle:
    """Pick a backend; ``auto`` prefers the right-angled oracle when it applies."""
    if kind == 'auto':
        kind = 'raag' if graph.is_right_angled() else 'coxeter'
    if kind == 'raag':
        return RightAngledArtinOracle(graph)
    if kind == 'coxeter':
        return CoxeterOracle(graph, cap)
    if kind == 'finite':
        return FiniteGroupOracle(graph, cap)
    raise ValueError(f"oracle must be one of auto, raag, coxeter, finite; got {kind!r}")
