"""Simple undirected graphs on dense labels 1..n and the basic graph operations.

Every derived graph comes back together with an explicit old->new label mapping so
that solutions computed on it can be lifted to the graph it was derived from.
"""
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple

import networkx as nx

from hp_modules.hp_config import ISO_CAP
from hp_modules.hp_errors import GraphInputError, UnsupportedError

VertexSet = FrozenSet[int]
Edge = Tuple[int, int]


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple undirected graph with vertices 1..n."""

    __slots__ = ("_n", "_adj", "_edges", "_masks")

    def __init__(self, n: int, edges: Iterable[Tuple[int, int]] = ()):
        if n < 0:
            raise GraphInputError(f"vertex count must be nonnegative, got {n}")
        adj = [set() for _ in range(n + 1)]
        normalized = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphInputError(f"edge ({u}, {v}) has a label outside 1..{n}")
            if u == v:
                raise GraphInputError(f"self-loop at vertex {u}")
            normalized.add(_norm_edge(u, v))
            adj[u].add(v)
            adj[v].add(u)
        self._n = n
        self._adj = tuple(frozenset(s) for s in adj)
        self._edges = frozenset(normalized)
        self._masks = None

    # ─── BASIC ACCESSORS ───
    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def vertices(self) -> range:
        return range(1, self._n + 1)

    @property
    def edges(self) -> FrozenSet[Edge]:
        return self._edges

    def sorted_edges(self) -> List[Edge]:
        return sorted(self._edges)

    def neighbors(self, v: int) -> VertexSet:
        self._check_vertex(v)
        return self._adj[v]

    def closed_neighbors(self, v: int) -> VertexSet:
        return self.neighbors(v) | {v}

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self._edges

    def adjacency_masks(self) -> Tuple[int, ...]:
        """Neighborhoods as bitmasks (bit v set for neighbor v); index 0 unused."""
        if self._masks is None:
            masks = [0] * (self._n + 1)
            for v in self.vertices:
                bits = 0
                for u in self._adj[v]:
                    bits |= 1 << u
                masks[v] = bits
            self._masks = tuple(masks)
        return self._masks

    def _check_vertex(self, v: int) -> None:
        if not (1 <= v <= self._n):
            raise GraphInputError(f"vertex {v} outside 1..{self._n}")

    # ─── BRIDGES ───
    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self._edges)
        return g

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> Tuple["Graph", Dict[int, int]]:
        """Relabels the nodes of g (in sorted order) to 1..n."""
        mapping = {node: i + 1 for i, node in enumerate(sorted(g.nodes))}
        return cls(len(mapping), ((mapping[a], mapping[b]) for a, b in g.edges)), mapping

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.m})"


# ─── LABEL PLUMBING ───────────────────────────────────────────────────────────
def check_vertices(G: Graph, S: Iterable[int]) -> VertexSet:
    """Returns S as a frozenset, raising GraphInputError on labels outside V(G)."""
    members = frozenset(int(v) for v in S)
    bad = sorted(v for v in members if not (1 <= v <= G.n))
    if bad:
        raise GraphInputError(f"vertices {bad} outside 1..{G.n}")
    return members


def label_map(S: Iterable[int]) -> Dict[int, int]:
    """Old->new map sending the members of S, in sorted order, to 1..|S|."""
    return {old: i + 1 for i, old in enumerate(sorted(S))}


def invert(mapping: Mapping[int, int]) -> Dict[int, int]:
    return {new: old for old, new in mapping.items()}


def lift(S: Iterable[int], mapping: Mapping[int, int]) -> VertexSet:
    """Maps a vertex set of a derived graph back through an old->new mapping."""
    back = invert(mapping)
    return frozenset(back[v] for v in S)


# ─── GRAPH OPERATIONS ─────────────────────────────────────────────────────────
def induced_subgraph(G: Graph, S: Iterable[int]) -> Tuple[Graph, Dict[int, int]]:
    """G[S] relabeled to 1..|S|, plus the old->new mapping."""
    members = check_vertices(G, S)
    mapping = label_map(members)
    edges = ((mapping[u], mapping[v]) for u, v in G.edges if u in members and v in members)
    return Graph(len(mapping), edges), mapping


def delete_vertices(G: Graph, S: Iterable[int]) -> Tuple[Graph, Dict[int, int]]:
    """G - S, plus the old->new mapping of the surviving vertices."""
    removed = check_vertices(G, S)
    return induced_subgraph(G, (v for v in G.vertices if v not in removed))


def delete_edge(G: Graph, u: int, v: int) -> Graph:
    if not G.has_edge(u, v):
        raise GraphInputError(f"({u}, {v}) is not an edge")
    e = _norm_edge(u, v)
    return Graph(G.n, (f for f in G.edges if f != e))


def contract_edge(G: Graph, u: int, v: int) -> Tuple[Graph, Dict[int, int]]:
    """Contracts uv into a single vertex and simplifies.

    The merged vertex keeps the smaller label; labels above the larger endpoint
    shift down by one. Both endpoints appear in the returned mapping.
    """
    if not G.has_edge(u, v):
        raise GraphInputError(f"cannot contract ({u}, {v}): not an edge")
    keep, drop = min(u, v), max(u, v)
    mapping = {}
    for x in G.vertices:
        if x == drop:
            mapping[x] = keep
        elif x > drop:
            mapping[x] = x - 1
        else:
            mapping[x] = x
    edges = set()
    for a, b in G.edges:
        a2, b2 = mapping[a], mapping[b]
        if a2 != b2:
            edges.add(_norm_edge(a2, b2))
    return Graph(G.n - 1, edges), mapping


def disjoint_union(G1: Graph, G2: Graph) -> Graph:
    shift = G1.n
    edges = list(G1.edges) + [(a + shift, b + shift) for a, b in G2.edges]
    return Graph(G1.n + G2.n, edges)


def connected_components(G: Graph) -> List[VertexSet]:
    """Components ordered by their smallest member."""
    comps = [frozenset(c) for c in nx.connected_components(G.to_networkx())]
    return sorted(comps, key=min)


def is_forest(G: Graph) -> bool:
    if G.n == 0:
        return True
    return nx.is_forest(G.to_networkx())


def neighborhood(G: Graph, S: Iterable[int]) -> VertexSet:
    """Open neighborhood N(S) minus S."""
    members = check_vertices(G, S)
    out = set()
    for v in members:
        out |= G.neighbors(v)
    return frozenset(out - members)


def is_connected_set(G: Graph, S: Iterable[int]) -> bool:
    """True iff S is nonempty and G[S] is connected."""
    members = check_vertices(G, S)
    if not members:
        return False
    sub, _ = induced_subgraph(G, members)
    return nx.is_connected(sub.to_networkx())


def is_independent(G: Graph, S: Iterable[int]) -> bool:
    members = check_vertices(G, S)
    return not any(u in members and v in members for u, v in G.edges)


def is_isomorphic(G1: Graph, G2: Graph) -> bool:
    if max(G1.n, G2.n) > ISO_CAP:
        raise UnsupportedError(f"isomorphism checks are limited to {ISO_CAP} vertices")
    if G1.n != G2.n or G1.m != G2.m:
        return False
    return nx.is_isomorphic(G1.to_networkx(), G2.to_networkx())


def find_isomorphism(pattern: Graph, host: Graph) -> Optional[Dict[int, int]]:
    """A pattern->host isomorphism, or None."""
    if pattern.n != host.n or pattern.m != host.m:
        return None
    matcher = nx.algorithms.isomorphism.GraphMatcher(host.to_networkx(), pattern.to_networkx())
    for host_to_pattern in matcher.isomorphisms_iter():
        return invert(host_to_pattern)
    return None


# ─── PATTERN LIBRARY ──────────────────────────────────────────────────────────
def path_graph(k: int) -> Graph:
    """P_k on k vertices 1-2-...-k."""
    return Graph(k, ((i, i + 1) for i in range(1, k)))


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise GraphInputError(f"a cycle needs at least 3 vertices, got {k}")
    return Graph(k, [(i, i + 1) for i in range(1, k)] + [(k, 1)])


def complete_graph(k: int) -> Graph:
    return Graph(k, ((i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with center 1."""
    return Graph(leaves + 1, ((1, i) for i in range(2, leaves + 2)))


def wheel_graph(k: int) -> Graph:
    """Hub k+1 joined to every vertex of the rim cycle 1..k."""
    rim = cycle_graph(k)
    return Graph(k + 1, list(rim.edges) + [(i, k + 1) for i in range(1, k + 1)])


def iter_subsets(items: List[int]) -> Iterator[VertexSet]:
    """All subsets of items, ordered by size then lexicographically."""
    for size in range(len(items) + 1):
        for combo in combinations(items, size):
            yield frozenset(combo)


# ─── BITMASK HELPERS ──────────────────────────────────────────────────────────
# Vertex v is bit (1 << v); bit 0 is never used.
def to_bits(S: Iterable[int]) -> int:
    bits = 0
    for v in S:
        bits |= 1 << v
    return bits


def from_bits(bits: int) -> VertexSet:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return frozenset(out)


def connected_bits(masks: Tuple[int, ...], bits: int) -> bool:
    """True iff the nonempty vertex bitmask induces a connected subgraph."""
    if not bits:
        return False
    seen = frontier = bits & -bits
    while frontier:
        v = frontier.bit_length() - 1
        frontier &= ~(1 << v)
        new = masks[v] & bits & ~seen
        seen |= new
        frontier |= new
    return seen == bits


def component_bits(masks: Tuple[int, ...], bits: int) -> List[int]:
    """Connected components of the subgraph induced by a bitmask, as bitmasks."""
    comps = []
    rest = bits
    while rest:
        seen = frontier = rest & -rest
        while frontier:
            v = frontier.bit_length() - 1
            frontier &= ~(1 << v)
            new = masks[v] & rest & ~seen
            seen |= new
            frontier |= new
        comps.append(seen)
        rest &= ~seen
    return comps
