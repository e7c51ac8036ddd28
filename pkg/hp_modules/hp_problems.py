"""Problem instances, solutions and the feasibility checker shared by every solver."""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, FrozenSet, Iterable, Mapping, Optional, Tuple

from hp_modules.hp_config import LOG_LEVEL
from hp_modules.hp_errors import GraphInputError
from hp_modules.hp_graph import (
    Edge,
    Graph,
    VertexSet,
    check_vertices,
    connected_components,
    cycle_graph,
    delete_vertices,
    induced_subgraph,
    invert,
    is_connected_set,
    is_forest,
)
from hp_modules.hp_minors import MinorModel, minor_model_violation
from hp_modules.hp_utils import setup_colored_logger

logger = setup_colored_logger(__name__, LOG_LEVEL)


class ProblemKind(str, Enum):
    VC = "vc"
    FVS = "fvs"
    IS = "is"
    DS = "ds"
    BWDS = "bwds"
    SIVC = "sivc"
    CVC = "cvc"
    CYCLE_PACKING = "cycle-pack"
    MINOR_PACKING = "minor-pack"
    SUBGRAPH_PACKING = "subgraph-pack"

    @property
    def maximize(self) -> bool:
        return self in (ProblemKind.IS,) or self.is_packing

    @property
    def is_packing(self) -> bool:
        return self in (ProblemKind.CYCLE_PACKING, ProblemKind.MINOR_PACKING, ProblemKind.SUBGRAPH_PACKING)


TRIANGLE = cycle_graph(3)


# ─── SOLUTIONS ────────────────────────────────────────────────────────────────
@dataclass(frozen=True)
class ModelTuple:
    """One packed structure: subgraph H (vertices, edges), its pattern and phi.

    For minor packing phi maps pattern vertices to branch sets; for subgraph packing
    every branch set is a singleton and phi is an isomorphism onto H.
    """
    vertices: VertexSet
    edges: FrozenSet[Edge]
    pattern: Graph
    phi: Mapping[int, VertexSet]

    def relabeled(self, old_of_new: Mapping[int, int]) -> "ModelTuple":
        return ModelTuple(
            vertices=frozenset(old_of_new[v] for v in self.vertices),
            edges=frozenset(tuple(sorted((old_of_new[a], old_of_new[b]))) for a, b in self.edges),
            pattern=self.pattern,
            phi={u: frozenset(old_of_new[x] for x in branch) for u, branch in self.phi.items()},
        )


@dataclass(frozen=True)
class PackingSolution:
    tuples: Tuple[ModelTuple, ...] = ()

    @property
    def size(self) -> int:
        return len(self.tuples)

    @property
    def vertices(self) -> VertexSet:
        out = set()
        for t in self.tuples:
            out |= t.vertices
        return frozenset(out)

    def canonical(self) -> "PackingSolution":
        """Tuples ordered by their smallest vertex."""
        return PackingSolution(tuple(sorted(self.tuples, key=lambda t: min(t.vertices))))

    def relabeled(self, mapping: Mapping[int, int]) -> "PackingSolution":
        """Lifts a packing through an old->new mapping back to the old labels."""
        back = invert(mapping)
        return PackingSolution(tuple(t.relabeled(back) for t in self.tuples)).canonical()

    def __add__(self, other: "PackingSolution") -> "PackingSolution":
        return PackingSolution(self.tuples + other.tuples).canonical()


@dataclass(frozen=True)
class Solution:
    """Either a vertex set or a packing; size is the objective value."""
    vertices: Optional[VertexSet] = None
    packing: Optional[PackingSolution] = None

    @classmethod
    def of_vertices(cls, vertices: Iterable[int]) -> "Solution":
        return cls(vertices=frozenset(vertices))

    @classmethod
    def of_packing(cls, packing: PackingSolution) -> "Solution":
        return cls(packing=packing.canonical())

    @property
    def size(self) -> int:
        if self.packing is not None:
            return self.packing.size
        return len(self.vertices or ())

    @property
    def is_packing(self) -> bool:
        return self.packing is not None

    def lifted(self, mapping: Mapping[int, int]) -> "Solution":
        """Maps the solution of a derived graph back through its old->new mapping."""
        if self.packing is not None:
            return Solution.of_packing(self.packing.relabeled(mapping))
        back = invert(mapping)
        return Solution.of_vertices(back[v] for v in self.vertices)


# ─── INSTANCES ────────────────────────────────────────────────────────────────
@dataclass(frozen=True)
class ProblemInstance:
    """A graph plus the annotations its problem needs.

    dominated: DS vertices that need no domination (the set D).
    forced: vertices every solution must contain (BWDS blue set, DS forced set).
    terminals: the set X of SIVC.
    patterns: the family F (minor packing) or S (subgraph packing).
    """
    kind: ProblemKind
    graph: Graph
    dominated: VertexSet = frozenset()
    forced: VertexSet = frozenset()
    terminals: VertexSet = frozenset()
    patterns: Tuple[Graph, ...] = field(default=())

    def __post_init__(self):
        for name in ("dominated", "forced", "terminals"):
            object.__setattr__(self, name, check_vertices(self.graph, getattr(self, name)))
        if self.kind == ProblemKind.CYCLE_PACKING and not self.patterns:
            object.__setattr__(self, "patterns", (TRIANGLE,))
        if self.kind.is_packing:
            if not self.patterns:
                raise GraphInputError(f"{self.kind.value} needs at least one pattern")
            for pattern in self.patterns:
                if pattern.n == 0 or len(connected_components(pattern)) != 1:
                    raise GraphInputError("packing patterns must be nonempty and connected")
        if self.kind == ProblemKind.BWDS and self.dominated:
            raise GraphInputError("blue-white instances carry no dominated set")

    # ─── constructors ───
    @classmethod
    def vc(cls, G: Graph) -> "ProblemInstance":
        return cls(ProblemKind.VC, G)

    @classmethod
    def fvs(cls, G: Graph) -> "ProblemInstance":
        return cls(ProblemKind.FVS, G)

    @classmethod
    def independent_set(cls, G: Graph) -> "ProblemInstance":
        return cls(ProblemKind.IS, G)

    @classmethod
    def dominating_set(cls, G: Graph, dominated: Iterable[int] = (), forced: Iterable[int] = ()) -> "ProblemInstance":
        return cls(ProblemKind.DS, G, dominated=frozenset(dominated), forced=frozenset(forced))

    @classmethod
    def bwds(cls, G: Graph, blue: Iterable[int]) -> "ProblemInstance":
        return cls(ProblemKind.BWDS, G, forced=frozenset(blue))

    @classmethod
    def sivc(cls, G: Graph, terminals: Iterable[int]) -> "ProblemInstance":
        return cls(ProblemKind.SIVC, G, terminals=frozenset(terminals))

    @classmethod
    def cvc(cls, G: Graph) -> "ProblemInstance":
        return cls(ProblemKind.CVC, G)

    @classmethod
    def cycle_packing(cls, G: Graph) -> "ProblemInstance":
        return cls(ProblemKind.CYCLE_PACKING, G)

    @classmethod
    def minor_packing(cls, G: Graph, patterns: Iterable[Graph]) -> "ProblemInstance":
        return cls(ProblemKind.MINOR_PACKING, G, patterns=tuple(patterns))

    @classmethod
    def subgraph_packing(cls, G: Graph, patterns: Iterable[Graph]) -> "ProblemInstance":
        return cls(ProblemKind.SUBGRAPH_PACKING, G, patterns=tuple(patterns))

    # ─── derived instances ───
    def with_graph(self, G: Graph, mapping: Mapping[int, int]) -> "ProblemInstance":
        """Same problem on a derived graph; annotations follow the old->new mapping."""
        def carry(S: VertexSet) -> VertexSet:
            return frozenset(mapping[v] for v in S if v in mapping)
        return ProblemInstance(
            self.kind, G,
            dominated=carry(self.dominated),
            forced=carry(self.forced),
            terminals=carry(self.terminals),
            patterns=self.patterns,
        )

    def induced(self, S: Iterable[int]) -> Tuple["ProblemInstance", Dict[int, int]]:
        G2, mapping = induced_subgraph(self.graph, S)
        return self.with_graph(G2, mapping), mapping

    def without(self, S: Iterable[int]) -> Tuple["ProblemInstance", Dict[int, int]]:
        G2, mapping = delete_vertices(self.graph, S)
        return self.with_graph(G2, mapping), mapping


# ─── FEASIBILITY ──────────────────────────────────────────────────────────────
def is_vertex_cover(G: Graph, S: VertexSet) -> bool:
    return all(u in S or v in S for u, v in G.edges)


def is_dominating(G: Graph, S: VertexSet, dominated: VertexSet = frozenset(), forced: VertexSet = frozenset()) -> bool:
    if not forced <= S:
        return False
    return all(v in dominated or G.closed_neighbors(v) & S for v in G.vertices)


def _sivc_ok(G: Graph, S: VertexSet, terminals: VertexSet) -> bool:
    if not is_vertex_cover(G, S):
        return False
    sub, mapping = induced_subgraph(G, S)
    back = invert(mapping)
    for comp in connected_components(sub):
        if not any(back[v] in terminals for v in comp):
            return False
    return True


def _model_tuple_problem(inst: ProblemInstance, t: ModelTuple) -> Optional[str]:
    G = inst.graph
    check_vertices(G, t.vertices)
    for a, b in t.edges:
        if not G.has_edge(a, b):
            return f"({a}, {b}) is not an edge of the graph"
        if a not in t.vertices or b not in t.vertices:
            return f"edge ({a}, {b}) leaves its subgraph"
    if t.pattern not in inst.patterns:
        return "tuple uses a pattern outside the instance's family"
    if set(t.phi.keys()) != set(t.pattern.vertices):
        return "phi does not cover the pattern vertices"
    used = set()
    for branch in t.phi.values():
        used |= branch
    if not used <= t.vertices:
        return "phi leaves the tuple's subgraph"
    if inst.kind == ProblemKind.SUBGRAPH_PACKING:
        if any(len(branch) != 1 for branch in t.phi.values()) or used != t.vertices:
            return "phi is not a bijection onto the subgraph"
        image = {u: next(iter(branch)) for u, branch in t.phi.items()}
        mapped = {tuple(sorted((image[a], image[b]))) for a, b in t.pattern.edges}
        if mapped != set(t.edges):
            return "phi is not an isomorphism onto the subgraph"
        return None
    return minor_model_violation(MinorModel(Graph(G.n, t.edges), t.pattern, t.phi))


def verify_solution(inst: ProblemInstance, sol: Solution) -> bool:
    """True iff sol is feasible for inst.

    Raises GraphInputError when the witness is malformed (wrong shape or labels
    outside the graph), which is distinct from a well-formed infeasible witness.
    """
    G, kind = inst.graph, inst.kind
    if kind.is_packing:
        if sol.packing is None:
            raise GraphInputError(f"{kind.value} expects a packing witness")
        seen: set = set()
        for t in sol.packing.tuples:
            problem = _model_tuple_problem(inst, t)
            if problem is not None:
                logger.debug(f"Packing tuple rejected: {problem}")
                return False
            if seen & t.vertices:
                logger.debug("Packing tuples overlap")
                return False
            seen |= t.vertices
        return True

    if sol.vertices is None:
        raise GraphInputError(f"{kind.value} expects a vertex-set witness")
    S = check_vertices(G, sol.vertices)
    if kind == ProblemKind.VC:
        return is_vertex_cover(G, S)
    if kind == ProblemKind.FVS:
        rest, _ = delete_vertices(G, S)
        return is_forest(rest)
    if kind == ProblemKind.IS:
        return not any(u in S and v in S for u, v in G.edges)
    if kind in (ProblemKind.DS, ProblemKind.BWDS):
        return is_dominating(G, S, inst.dominated, inst.forced)
    if kind == ProblemKind.SIVC:
        return _sivc_ok(G, S, inst.terminals)
    if kind == ProblemKind.CVC:
        if not is_vertex_cover(G, S):
            return False
        return not S or is_connected_set(G, S)
    raise GraphInputError(f"unknown problem kind {kind}")


# ─── DECIDERS AND EXTRACTION RESULTS ──────────────────────────────────────────
Decider = Callable[[Graph, int], bool]


@dataclass
class ExtractionResult:
    """Witness (None on no-instances) plus oracle-call accounting per phase."""
    solution: Optional[Solution]
    calls: int = 0
    phase_calls: Dict[str, int] = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.solution is not None


class CountingDecider:
    """Wraps a decider and counts its calls per phase."""

    def __init__(self, decider: Callable[..., bool]):
        self.decider = decider
        self.calls = 0
        self.phase_calls: Dict[str, int] = {}

    def __call__(self, *args, phase: str = "initial") -> bool:
        self.calls += 1
        self.phase_calls[phase] = self.phase_calls.get(phase, 0) + 1
        return self.decider(*args)

    def result(self, solution: Optional[Solution]) -> ExtractionResult:
        return ExtractionResult(solution, self.calls, dict(self.phase_calls))


# ─── APPROXIMATION RESULTS ────────────────────────────────────────────────────
class Case(str, Enum):
    OCEAN = "OCEAN"
    BUCKET = "BUCKET"
    # Best candidate over all guesses of the solution inside M.
    GUESS = "GUESS"


@dataclass
class ApproxResult:
    solution: Solution
    case: Case
    eps_used: Fraction
    stats: Dict[str, Any] = field(default_factory=dict)

    @property
    def value(self) -> int:
        return self.solution.size
