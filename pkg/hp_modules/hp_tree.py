"""Rooted trees of bags, standard tree decompositions and the checks they share."""
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from hp_modules.hp_graph import Graph, VertexSet

TreeEdge = Tuple[int, int]


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a decomposition check; names the first violated condition."""
    ok: bool
    condition: Optional[str] = None
    node: Optional[int] = None
    vertex: Optional[int] = None
    message: str = ""

    @classmethod
    def passed(cls) -> "ValidationReport":
        return cls(True)

    @classmethod
    def failed(cls, condition: str, message: str, node: Optional[int] = None, vertex: Optional[int] = None) -> "ValidationReport":
        return cls(False, condition, node, vertex, message)

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        where = []
        if self.node is not None:
            where.append(f"node {self.node}")
        if self.vertex is not None:
            where.append(f"vertex {self.vertex}")
        suffix = f" ({', '.join(where)})" if where else ""
        return f"violation of condition {self.condition}{suffix}: {self.message}"


class RootedStructure:
    """Parent/children view of a rooted tree or forest given as undirected edges."""

    def __init__(self, nodes: Iterable[int], edges: Sequence[TreeEdge], roots: Sequence[int]):
        self.nodes = sorted(nodes)
        adj: Dict[int, List[int]] = {t: [] for t in self.nodes}
        for a, b in edges:
            adj[a].append(b)
            adj[b].append(a)
        self.parent: Dict[int, Optional[int]] = {}
        self.children: Dict[int, List[int]] = {t: [] for t in self.nodes}
        self.preorder: List[int] = []
        for root in roots:
            self.parent[root] = None
            queue = deque([root])
            while queue:
                t = queue.popleft()
                self.preorder.append(t)
                for c in sorted(adj[t]):
                    if c not in self.parent:
                        self.parent[c] = t
                        self.children[t].append(c)
                        queue.append(c)

    @property
    def postorder(self) -> List[int]:
        return list(reversed(self.preorder))

    @property
    def leaves(self) -> List[int]:
        return [t for t in self.preorder if not self.children[t]]

    def depth_of(self, t: int) -> int:
        d = 0
        while self.parent[t] is not None:
            t = self.parent[t]
            d += 1
        return d


def tree_shape_problem(nodes: Iterable[int], edges: Sequence[TreeEdge], root: int) -> Optional[str]:
    """None iff the edges form a tree on nodes."""
    node_set = set(nodes)
    if not node_set:
        return "decomposition has no nodes"
    if root not in node_set:
        return f"root {root} is not a node"
    for a, b in edges:
        if a not in node_set or b not in node_set:
            return f"tree edge ({a}, {b}) references an unknown node"
        if a == b:
            return f"tree edge ({a}, {b}) is a loop"
    if len(edges) != len(node_set) - 1:
        return f"{len(edges)} tree edges for {len(node_set)} nodes"
    reached = RootedStructure(node_set, edges, [root]).preorder
    if len(reached) != len(node_set):
        return "tree is disconnected"
    return None


def occurrence_problem(G: Graph, bags: Mapping[int, VertexSet], structure: RootedStructure) -> Optional[Tuple[int, str]]:
    """Checks that each vertex occupies a nonempty connected set of nodes.

    Returns (vertex, message) for the first offender.
    """
    heads: Dict[int, int] = {}
    for t in structure.preorder:
        p = structure.parent[t]
        for v in bags[t]:
            if p is None or v not in bags[p]:
                heads[v] = heads.get(v, 0) + 1
    for v in G.vertices:
        count = heads.get(v, 0)
        if count == 0:
            return v, "vertex appears in no bag"
        if count > 1:
            return v, "nodes containing the vertex are not connected"
    return None


def edge_cover_problem(G: Graph, bags: Mapping[int, VertexSet]) -> Optional[Tuple[int, int]]:
    covered = set()
    for bag in bags.values():
        for u in bag:
            for v in G.neighbors(u):
                if v in bag:
                    covered.add((min(u, v), max(u, v)))
    for e in G.sorted_edges():
        if e not in covered:
            return e
    return None


def label_problem(G: Graph, bags: Mapping[int, VertexSet]) -> Optional[Tuple[int, int]]:
    for t in sorted(bags):
        for v in sorted(bags[t]):
            if not (1 <= v <= G.n):
                return t, v
    return None


@dataclass(frozen=True)
class TreeDecomposition:
    """Standard tree decomposition; node ids are dense integers with root 1 by default."""
    bags: Mapping[int, VertexSet]
    edges: Tuple[TreeEdge, ...]
    root: int = 1

    @cached_property
    def structure(self) -> RootedStructure:
        return RootedStructure(self.bags.keys(), self.edges, [self.root])

    @property
    def nodes(self) -> List[int]:
        return sorted(self.bags)

    @property
    def width(self) -> int:
        return max([0] + [len(b) - 1 for b in self.bags.values()])


def validate_td(G: Graph, T: TreeDecomposition) -> ValidationReport:
    shape = tree_shape_problem(T.bags.keys(), T.edges, T.root)
    if shape is not None:
        return ValidationReport.failed("tree", shape)
    bad_label = label_problem(G, T.bags)
    if bad_label is not None:
        return ValidationReport.failed("labels", "bag holds a vertex outside the graph", *bad_label)
    occ = occurrence_problem(G, T.bags, T.structure)
    if occ is not None:
        return ValidationReport.failed("1", occ[1], vertex=occ[0])
    missing = edge_cover_problem(G, T.bags)
    if missing is not None:
        return ValidationReport.failed("2", f"edge {missing} is in no bag", vertex=missing[0])
    return ValidationReport.passed()


def relabel_nodes(bags: Mapping[int, VertexSet], edges: Iterable[TreeEdge], root: int) -> Tuple[Dict[int, VertexSet], Tuple[TreeEdge, ...]]:
    """Renumbers nodes 1..N in breadth-first order from root, so root becomes 1."""
    edges = tuple(edges)
    order = RootedStructure(bags.keys(), edges, [root]).preorder
    new_id = {t: i + 1 for i, t in enumerate(order)}
    new_bags = {new_id[t]: frozenset(bags[t]) for t in order}
    new_edges = tuple(sorted((min(new_id[a], new_id[b]), max(new_id[a], new_id[b])) for a, b in edges))
    return new_bags, new_edges
