"""Data models for reports, certificates and run configuration."""

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

VERDICT_VALUES = ('yes', 'no', 'unknown')
OUTPUT_FORMATS = ('json', 'csv', 'dot')
COMMANDS = ('classify', 'cube-table', 'ball', 'delta', 'qi', 'certify')
BALL_KINDS = ('cayley', 'coned', 'deligne', 'davis')
ORACLE_KINDS = ('auto', 'raag', 'coxeter', 'finite')


def _plain(value):
    """Convert tuples and nested witnesses to JSON-friendly lists."""
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


@dataclass
class ConditionCheck:
    """Outcome of one graph-level condition.

    Attributes:
        name: Condition identifier (e.g. "fc_type")
        holds: Whether the condition is satisfied
        witness: Offending triangle, square or subset(s) when it fails
    """
    name: str
    holds: bool
    witness: Optional[Any] = None

    def __post_init__(self):
        """Validate ConditionCheck data integrity."""
        if not self.name or not isinstance(self.name, str):
            raise ValueError("name must be a non-empty string")

        if not isinstance(self.holds, bool):
            raise TypeError("holds must be a boolean")

        if not self.holds and self.witness is None:
            raise ValueError(f"failed condition {self.name} must carry a witness")

    def __bool__(self):
        return self.holds


@dataclass
class ClassificationReport:
    """Hyperbolicity verdicts for one defining graph.

    Attributes:
        two_dimensional, fc_type, no_empty_squares, m1, m2, prop31_cond3:
            Graph-level conditions
        w_hyperbolic: "yes" or "no"
        deligne_hyperbolic: "yes", "no" or "unknown"
        weakly_rel_hyperbolic: "yes", "no" or "unknown"
        citations: (claim, theorem tag) pairs backing the verdicts
        witnesses: Condition name -> witness for every failed condition
        type_name: Product of Coxeter component types of the whole graph
    """
    two_dimensional: bool
    fc_type: bool
    no_empty_squares: bool
    m1: bool
    m2: bool
    prop31_cond3: bool
    w_hyperbolic: str
    deligne_hyperbolic: str
    weakly_rel_hyperbolic: str
    citations: List[Tuple[str, str]] = field(default_factory=list)
    witnesses: Dict[str, Any] = field(default_factory=dict)
    type_name: str = ""

    def __post_init__(self):
        """Validate ClassificationReport data integrity."""
        if self.w_hyperbolic not in ('yes', 'no'):
            raise ValueError("w_hyperbolic must be 'yes' or 'no'")

        for name in ('deligne_hyperbolic', 'weakly_rel_hyperbolic'):
            if getattr(self, name) not in VERDICT_VALUES:
                raise ValueError(f"{name} must be one of {VERDICT_VALUES}")

        if self.w_hyperbolic == 'no' and self.deligne_hyperbolic == 'yes':
            raise ValueError("deligne_hyperbolic cannot be 'yes' when w_hyperbolic is 'no'")

        if not self.citations:
            raise ValueError("citations list cannot be empty")

        for name in ('two_dimensional', 'fc_type', 'no_empty_squares', 'm1', 'm2', 'prop31_cond3'):
            if not getattr(self, name) and name not in self.witnesses:
                raise ValueError(f"failed condition {name} must carry a witness")

    def to_dict(self) -> Dict[str, Any]:
        return {
            'two_dimensional': self.two_dimensional,
            'fc_type': self.fc_type,
            'no_empty_squares': self.no_empty_squares,
            'm1': self.m1,
            'm2': self.m2,
            'prop31_cond3': self.prop31_cond3,
            'w_hyperbolic': self.w_hyperbolic,
            'deligne_hyperbolic': self.deligne_hyperbolic,
            'weakly_rel_hyperbolic': self.weakly_rel_hyperbolic,
            'citations': [{'claim': claim, 'theorem': tag} for claim, tag in self.citations],
            'witnesses': {name: _plain(w) for name, w in sorted(self.witnesses.items())},
            'type': self.type_name,
        }


@dataclass
class CertificateItem:
    """One line of the CAT(-1) checklist.

    Attributes:
        key: Item label, "i" to "vi"
        description: What was checked
        passed: True/False, or None when the check was not available
        witness: Counterexample when the check failed
        detail: Free-form numbers backing the item
    """
    key: str
    description: str
    passed: Optional[bool]
    witness: Optional[Any] = None
    detail: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'key': self.key,
            'description': self.description,
            'passed': self.passed,
            'witness': _plain(self.witness),
            'detail': self.detail,
        }


@dataclass
class Certificate:
    """Result of running the CAT(-1) checklist on a defining graph.

    Attributes:
        granted: True iff items (i) to (iv) all pass
        epsilon: Cube deformation parameter
        margin: pi/2 - theta(epsilon), reported rather than thresholded
        items: The itemized checklist
    """
    granted: bool
    epsilon: float
    margin: float
    items: List[CertificateItem] = field(default_factory=list)

    def __post_init__(self):
        """Validate Certificate data integrity."""
        if not isinstance(self.epsilon, float) or self.epsilon <= 0:
            raise ValueError("epsilon must be a positive float")

    def item(self, key: str) -> CertificateItem:
        for entry in self.items:
            if entry.key == key:
                return entry
        raise KeyError(key)

    @property
    def refused_at(self) -> Optional[str]:
        """Key of the first failed mandatory item, if any."""
        for entry in self.items:
            if entry.key in ('i', 'ii', 'iii', 'iv') and entry.passed is False:
                return entry.key
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'granted': self.granted,
            'epsilon': self.epsilon,
            'margin': self.margin,
            'refused_at': self.refused_at,
            'items': [entry.to_dict() for entry in self.items],
        }


@dataclass
class DeltaEstimate:
    """Four-point hyperbolicity estimate of a finite weighted graph.

    Attributes:
        delta: Estimated delta in true lengths (weights halved)
        method: "exact", "landmarks" or "sampled"
        quadruples: Number of quadruples evaluated
        vertices: Vertex count of the graph
        witness: Labels of a quadruple achieving the estimate
    """
    delta: float
    method: str
    quadruples: int
    vertices: int
    witness: List[str] = field(default_factory=list)

    def __post_init__(self):
        """Validate DeltaEstimate data integrity."""
        if self.delta < 0:
            raise ValueError("delta must be non-negative")

        if self.method not in ('exact', 'landmarks', 'sampled'):
            raise ValueError("method must be 'exact', 'landmarks' or 'sampled'")

    def to_dict(self) -> Dict[str, Any]:
        return {
            'delta': self.delta,
            'method': self.method,
            'quadruples': self.quadruples,
            'vertices': self.vertices,
            'witness': list(self.witness),
        }


@dataclass
class QuasiIsometryFit:
    """Affine distortion bounds of a vertex map on interior pairs.

    Attributes:
        lam: Multiplicative constant, at least 1
        constant: Additive constant C, at least 0
        pairs: Number of interior pairs compared
        table: Scatter rows (d1, d2)
        extra: Supplementary proof constants when computed
    """
    lam: float
    constant: float
    pairs: int
    table: List[Tuple[float, float]] = field(default_factory=list)
    extra: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        """Validate QuasiIsometryFit data integrity."""
        if self.lam < 1:
            raise ValueError("lam must be at least 1")

        if self.constant < 0:
            raise ValueError("constant must be non-negative")

    def to_dict(self) -> Dict[str, Any]:
        return {
            'lambda': self.lam,
            'C': self.constant,
            'pairs': self.pairs,
            **self.extra,
        }


@dataclass
class ProjectionReport:
    """Checks on the projection from the Deligne ball to the Davis ball and its section.

    Attributes:
        section_is_right_inverse: p∘s = id on every Davis vertex
        davis_vertices: Number of Davis vertices checked
        section_injective: s takes distinct values on the Davis ball
        cube_checks: Cube-to-cube counts, or None without a Deligne ball
        distances: Pair counts comparing Deligne and Davis 1-skeleton
            distances, or None without a Deligne ball
        failures: Human-readable descriptions of every failed check
    """
    section_is_right_inverse: bool
    davis_vertices: int
    section_injective: bool
    cube_checks: Optional[Dict[str, int]] = None
    distances: Optional[Dict[str, int]] = None
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return {
            'section_is_right_inverse': self.section_is_right_inverse,
            'davis_vertices': self.davis_vertices,
            'section_injective': self.section_injective,
            'cube_checks': self.cube_checks,
            'distances': self.distances,
            'failures': list(self.failures),
        }


@dataclass
class RunConfig:
    """Validated options for one CLI command.

    Attributes:
        command: One of COMMANDS
        input_path: Defining-graph file (not needed by cube-table)
        epsilons: Epsilon grid for cube-table; a single value for certify
        radius: Ball radius (word-length bound)
        cap: Vertex cap for balls and enumerations
        sample: "all", "landmarks" or a positive number of quadruples
        seed: Random seed for sampled quadruples
        fmt: Output format
        out: Output file, or None for stdout
        kind: Ball kind for ball/delta
        oracle: Word oracle for ball/delta
        interior: Interior radius for qi
        strict: Strict DSL parsing
    """
    command: str
    input_path: Optional[Path] = None
    epsilons: Sequence[float] = (0.1,)
    radius: int = 3
    cap: Optional[int] = None
    sample: Union[str, int] = 'all'
    seed: int = 1729
    fmt: str = 'json'
    out: Optional[Path] = None
    kind: str = 'cayley'
    oracle: str = 'auto'
    interior: Optional[int] = None
    strict: bool = False

    def __post_init__(self):
        """Validate RunConfig before any computation."""
        if self.command not in COMMANDS:
            raise ValueError(f"command must be one of {COMMANDS}")

        if self.command != 'cube-table' and self.input_path is None:
            raise ValueError(f"{self.command} requires --input")

        if not self.epsilons:
            raise ValueError("epsilon grid cannot be empty")

        if any(not isinstance(e, (int, float)) or not math.isfinite(e) or e <= 0 for e in self.epsilons):
            raise ValueError("every epsilon must be a positive finite number")

        if self.command == 'certify' and len(self.epsilons) != 1:
            raise ValueError("certify takes a single epsilon")

        if not isinstance(self.radius, int) or self.radius < 0:
            raise ValueError("radius must be a non-negative integer")

        if self.cap is not None and (not isinstance(self.cap, int) or self.cap <= 0):
            raise ValueError("cap must be a positive integer")

        if self.sample not in ('all', 'landmarks') and (
                not isinstance(self.sample, int) or isinstance(self.sample, bool) or self.sample <= 0):
            raise ValueError("sample must be 'all', 'landmarks' or a positive integer")

        if self.fmt not in OUTPUT_FORMATS:
            raise ValueError(f"format must be one of {OUTPUT_FORMATS}")

        if self.kind not in BALL_KINDS:
            raise ValueError(f"kind must be one of {BALL_KINDS}")

        if self.oracle not in ORACLE_KINDS:
            raise ValueError(f"oracle must be one of {ORACLE_KINDS}")

        if self.interior is not None and (self.interior < 0 or self.interior >= self.radius):
            raise ValueError("interior must be non-negative and below the radius")

        if self.command == 'qi' and self.radius < 1:
            raise ValueError("qi needs a radius of at least 1")
