"""Base families H: edgeless graphs, forests and graphs of treewidth at most w."""
from dataclasses import dataclass
from enum import Enum

from hp_modules.hp_config import LOG_LEVEL, TREEWIDTH_EXACT_CAP
from hp_modules.hp_errors import GraphInputError
from hp_modules.hp_graph import Graph, connected_components, induced_subgraph, is_forest
from hp_modules.hp_treewidth import treewidth_bounds, treewidth_exact
from hp_modules.hp_utils import setup_colored_logger

logger = setup_colored_logger(__name__, LOG_LEVEL)


class FamilyKind(str, Enum):
    EDGELESS = "EDGELESS"
    FORESTS = "FORESTS"
    TW = "TW"


class Membership(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class FamilyPredicate:
    """A well-behaved (hereditary, union-closed) family; w is only read for TW."""
    kind: FamilyKind
    w: int = 0

    def __post_init__(self):
        if self.kind == FamilyKind.TW and self.w < 0:
            raise GraphInputError(f"treewidth bound must be nonnegative, got {self.w}")

    @classmethod
    def edgeless(cls) -> "FamilyPredicate":
        return cls(FamilyKind.EDGELESS)

    @classmethod
    def forests(cls) -> "FamilyPredicate":
        return cls(FamilyKind.FORESTS)

    @classmethod
    def treewidth(cls, w: int) -> "FamilyPredicate":
        return cls(FamilyKind.TW, w)

    def contains(self, G: Graph) -> Membership:
        """Three-valued membership; UNKNOWN only for TW on large components."""
        if self.kind == FamilyKind.EDGELESS:
            return Membership.YES if G.m == 0 else Membership.NO
        if self.kind == FamilyKind.FORESTS:
            return Membership.YES if is_forest(G) else Membership.NO
        # Closed under disjoint union, so decide per component.
        verdict = Membership.YES
        for comp in connected_components(G):
            sub, _ = induced_subgraph(G, comp)
            answer = self._component_within_width(sub)
            if answer == Membership.NO:
                return Membership.NO
            if answer == Membership.UNKNOWN:
                verdict = Membership.UNKNOWN
        return verdict

    def _component_within_width(self, G: Graph) -> Membership:
        if G.n <= self.w + 1:
            return Membership.YES
        if G.n <= TREEWIDTH_EXACT_CAP:
            width, _ = treewidth_exact(G)
            return Membership.YES if width <= self.w else Membership.NO
        lower, upper = treewidth_bounds(G)
        if upper <= self.w:
            return Membership.YES
        if lower > self.w:
            return Membership.NO
        logger.info(f"Treewidth of a {G.n}-vertex component undecided: bounds [{lower}, {upper}] vs w={self.w}")
        return Membership.UNKNOWN

    def member(self, G: Graph) -> bool:
        """Strict membership: UNKNOWN counts as failure."""
        return self.contains(G) == Membership.YES

    @property
    def eta(self) -> int:
        """Treewidth bound of every member graph."""
        return {FamilyKind.EDGELESS: 0, FamilyKind.FORESTS: 1}.get(self.kind, self.w)

    def __str__(self) -> str:
        return f"TW {self.w}" if self.kind == FamilyKind.TW else self.kind.value
