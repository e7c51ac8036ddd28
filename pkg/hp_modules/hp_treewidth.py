"""Exact treewidth for small graphs, bounds for larger ones."""
from typing import Dict, List, Sequence, Tuple

import networkx as nx
from networkx.algorithms.approximation import treewidth_min_fill_in

from hp_modules.hp_config import LOG_LEVEL, TREEWIDTH_EXACT_CAP
from hp_modules.hp_errors import UnsupportedError
from hp_modules.hp_graph import Graph
from hp_modules.hp_tree import TreeDecomposition, relabel_nodes
from hp_modules.hp_utils import setup_colored_logger

logger = setup_colored_logger(__name__, LOG_LEVEL)


def _reach_outside(masks: Sequence[int], S: int, v: int) -> int:
    """Number of vertices outside S + v reachable from v through S."""
    seen = frontier = 1 << v
    out = 0
    while frontier:
        x = frontier.bit_length() - 1
        frontier &= ~(1 << x)
        nb = masks[x] & ~seen
        seen |= nb
        out |= nb & ~S
        frontier |= nb & S
    return bin(out).count("1")


def treewidth_exact(G: Graph) -> Tuple[int, TreeDecomposition]:
    """Exact treewidth by DP over vertex subsets (best elimination order of each prefix set)."""
    if G.n > TREEWIDTH_EXACT_CAP:
        raise UnsupportedError(f"exact treewidth is limited to {TREEWIDTH_EXACT_CAP} vertices, got {G.n}")
    if G.n == 0:
        return 0, TreeDecomposition({1: frozenset()}, ())
    masks = G.adjacency_masks()
    full = sum(1 << v for v in G.vertices)
    size = full + 1
    best = [0] * size
    choice = [0] * size
    best[0] = -1
    for S in range(2, size, 2):
        if S & ~full:
            continue
        value, pick = None, 0
        rest = S
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            cost = max(best[S ^ low], _reach_outside(masks, S ^ low, v))
            if value is None or cost < value:
                value, pick = cost, v
        best[S], choice[S] = value, pick
    order_rev: List[int] = []
    S = full
    while S:
        v = choice[S]
        order_rev.append(v)
        S ^= 1 << v
    width = max(0, best[full])
    T = td_from_elimination_order(G, list(reversed(order_rev)))
    logger.debug(f"Exact treewidth {width} for n={G.n}")
    return width, T


def td_from_elimination_order(G: Graph, order: Sequence[int]) -> TreeDecomposition:
    """Tree decomposition whose bags are each vertex plus its later neighbors in the fill graph."""
    adj: Dict[int, set] = {v: set(G.neighbors(v)) for v in G.vertices}
    position = {v: i for i, v in enumerate(order)}
    bags: Dict[int, frozenset] = {}
    parent: Dict[int, int] = {}
    for v in order:
        later = adj[v]
        bags[v] = frozenset(later | {v})
        if later:
            parent[v] = min(later, key=position.__getitem__)
        for a in later:
            adj[a] |= later - {a}
            adj[a].discard(v)
    root = order[-1]
    edges = []
    for v in order[:-1]:
        edges.append((v, parent.get(v, root)))
    new_bags, new_edges = relabel_nodes(bags, edges, root)
    return TreeDecomposition(new_bags, new_edges)


def treewidth_bounds(G: Graph) -> Tuple[int, int]:
    """(lower, upper): minor-min-width lower bound and min-fill-in upper bound."""
    if G.n == 0:
        return 0, 0
    upper, _ = treewidth_min_fill_in(G.to_networkx())
    g = G.to_networkx()
    lower = 0
    while g.number_of_nodes() > 1:
        v = min(g.nodes, key=lambda x: (g.degree(x), x))
        d = g.degree(v)
        lower = max(lower, d)
        if d == 0:
            g.remove_node(v)
            continue
        u = min(g.neighbors(v), key=lambda x: (g.degree(x), x))
        g = nx.contracted_nodes(g, u, v, self_loops=False)
    return lower, upper


def heuristic_tree_decomposition(G: Graph) -> TreeDecomposition:
    """Min-fill-in decomposition from networkx, renumbered with root 1."""
    if G.n == 0:
        return TreeDecomposition({1: frozenset()}, ())
    _, tree = treewidth_min_fill_in(G.to_networkx())
    ids = {node: i + 1 for i, node in enumerate(tree.nodes)}
    bags = {ids[node]: frozenset(node) for node in tree.nodes}
    edges = [(ids[a], ids[b]) for a, b in tree.edges]
    pieces = [min(ids[x] for x in comp) for comp in nx.connected_components(tree)]
    edges += [(pieces[0], other) for other in pieces[1:]]
    covered = set().union(*bags.values())
    for v in G.vertices:
        if v not in covered:
            t = len(bags) + 1
            bags[t] = frozenset({v})
            edges.append((pieces[0], t))
    new_bags, new_edges = relabel_nodes(bags, edges, pieces[0])
    return TreeDecomposition(new_bags, new_edges)


def build_tree_decomposition(G: Graph) -> TreeDecomposition:
    """Exact decomposition when affordable, min-fill-in heuristic otherwise."""
    if G.n <= TREEWIDTH_EXACT_CAP:
        return treewidth_exact(G)[1]
    logger.debug(f"n={G.n} above exact cap, using min-fill-in decomposition")
    return heuristic_tree_decomposition(G)
