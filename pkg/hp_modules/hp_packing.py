"""Packing problems: exhaustive maximum packings and decider-driven extraction."""
from itertools import combinations
from typing import Dict, List, Sequence, Set, Tuple

import networkx as nx

from hp_modules.hp_config import LOG_LEVEL
from hp_modules.hp_errors import OracleFaultError
from hp_modules.hp_graph import (
    Graph,
    connected_bits,
    connected_components,
    contract_edge,
    delete_edge,
    delete_vertices,
    find_isomorphism,
    induced_subgraph,
    invert,
    to_bits,
)
from hp_modules.hp_minors import find_minor_model
from hp_modules.hp_problems import (
    TRIANGLE,
    CountingDecider,
    Decider,
    ExtractionResult,
    ModelTuple,
    PackingSolution,
    ProblemInstance,
    ProblemKind,
    Solution,
)
from hp_modules.hp_utils import setup_colored_logger

logger = setup_colored_logger(__name__, LOG_LEVEL)

Candidate = Tuple[int, ModelTuple]


# ─── CANDIDATE STRUCTURES ─────────────────────────────────────────────────────
def _cycle_candidates(G: Graph) -> List[Candidate]:
    """Chordless cycles; any cycle packing can be shrunk to one made of them."""
    out = []
    for cycle in nx.chordless_cycles(G.to_networkx()):
        if len(cycle) < 3:
            continue
        edges = frozenset(tuple(sorted((cycle[i], cycle[(i + 1) % len(cycle)]))) for i in range(len(cycle)))
        phi = {1: frozenset({cycle[0]}), 2: frozenset({cycle[1]}), 3: frozenset(cycle[2:])}
        out.append((to_bits(cycle), ModelTuple(frozenset(cycle), edges, TRIANGLE, phi)))
    return out


def _minor_candidates(G: Graph, patterns: Sequence[Graph]) -> List[Candidate]:
    """Inclusion-minimal vertex sets whose induced subgraph has a pattern minor."""
    masks = G.adjacency_masks()
    found: List[Candidate] = []
    smallest = min(p.n for p in patterns)
    for size in range(smallest, G.n + 1):
        for combo in combinations(G.vertices, size):
            bits = to_bits(combo)
            if any(c & bits == c for c, _ in found) or not connected_bits(masks, bits):
                continue
            sub, mapping = induced_subgraph(G, combo)
            back = invert(mapping)
            for pattern in patterns:
                if pattern.n > size:
                    continue
                phi = find_minor_model(sub, pattern)
                if phi is None:
                    continue
                tuple_ = ModelTuple(
                    vertices=frozenset(combo),
                    edges=frozenset((back[a], back[b]) for a, b in sub.edges),
                    pattern=pattern,
                    phi={u: frozenset(back[x] for x in branch) for u, branch in phi.items()},
                )
                found.append((bits, tuple_))
                break
    return found


def _subgraph_candidates(G: Graph, patterns: Sequence[Graph]) -> List[Candidate]:
    """One copy per (vertex set, pattern); the edge set is the pattern's image."""
    host = G.to_networkx()
    best: Dict[Tuple[frozenset, int], ModelTuple] = {}
    for index, pattern in enumerate(patterns):
        matcher = nx.algorithms.isomorphism.GraphMatcher(host, pattern.to_networkx())
        for host_to_pattern in matcher.subgraph_monomorphisms_iter():
            image = invert(host_to_pattern)
            edges = frozenset(tuple(sorted((image[a], image[b]))) for a, b in pattern.edges)
            key = (frozenset(image.values()), index)
            current = best.get(key)
            if current is None or sorted(edges) < sorted(current.edges):
                best[key] = ModelTuple(key[0], edges, pattern, {u: frozenset({x}) for u, x in image.items()})
    return [(to_bits(t.vertices), t) for _, t in sorted(best.items(), key=lambda kv: (sorted(kv[0][0]), kv[0][1]))]


def packing_candidates(inst: ProblemInstance) -> List[Candidate]:
    if inst.kind == ProblemKind.CYCLE_PACKING:
        return _cycle_candidates(inst.graph)
    if inst.kind == ProblemKind.MINOR_PACKING:
        return _minor_candidates(inst.graph, inst.patterns)
    return _subgraph_candidates(inst.graph, inst.patterns)


# ─── EXHAUSTIVE MAXIMUM PACKING ───────────────────────────────────────────────
def brute_packing(inst: ProblemInstance) -> PackingSolution:
    """Maximum packing by search over the still-free vertex set."""
    G = inst.graph
    candidates = packing_candidates(inst)
    by_vertex: Dict[int, List[Candidate]] = {v: [] for v in G.vertices}
    for bits, tuple_ in candidates:
        by_vertex[min(tuple_.vertices)].append((bits, tuple_))
    memo: Dict[int, Tuple[ModelTuple, ...]] = {}

    def best(free: int) -> Tuple[ModelTuple, ...]:
        if free in memo:
            return memo[free]
        if not free:
            return ()
        low = free & -free
        v = low.bit_length() - 1
        # v is either unused or the smallest vertex of a packed structure.
        choice = best(free ^ low)
        for bits, tuple_ in by_vertex[v]:
            if bits & free == bits:
                taken = (tuple_,) + best(free & ~bits)
                if len(taken) > len(choice):
                    choice = taken
        memo[free] = choice
        return choice

    packing = PackingSolution(best(to_bits(G.vertices))).canonical()
    logger.debug(f"{inst.kind.value}: {len(candidates)} candidate structures, maximum packing {packing.size}")
    return packing


# ─── EXTRACTION FROM A DECIDER ────────────────────────────────────────────────
def extract_packing(decider: Decider, inst: ProblemInstance, k: int) -> ExtractionResult:
    """Packing of size k from a decider "G has a packing of size >= k".

    Deletes vertices, then edges, while the answer stays yes. What remains is k
    components; for minor packings single-pass contractions shrink each one to a
    pattern. Uses at most 1 + n + 2m decider calls.
    """
    ask = CountingDecider(decider)
    G = inst.graph
    if not ask(G, k):
        return ask.result(None)

    current = G
    position = {v: v for v in G.vertices}
    for v in G.vertices:
        candidate, mapping = delete_vertices(current, [position[v]])
        if ask(candidate, k, phase="vertex"):
            current = candidate
            position = {u: mapping[p] for u, p in position.items() if u != v}
    for a, b in current.sorted_edges():
        candidate = delete_edge(current, a, b)
        if ask(candidate, k, phase="edge"):
            current = candidate

    components = connected_components(current) if current.n else []
    if len(components) != k:
        raise OracleFaultError(f"minimal yes-instance has {len(components)} components, expected {k}")
    original = invert(position)
    minimal = current

    # members[c]: vertices of the minimal graph merged into current vertex c.
    members: Dict[int, Set[int]] = {v: {v} for v in minimal.vertices}
    if inst.kind != ProblemKind.SUBGRAPH_PACKING:
        group = {v: v for v in minimal.vertices}
        for x, y in minimal.sorted_edges():
            a, b = group[x], group[y]
            if a == b or not current.has_edge(a, b):
                continue
            candidate, mapping = contract_edge(current, a, b)
            if ask(candidate, k, phase="contract"):
                current = candidate
                merged: Dict[int, Set[int]] = {}
                for c, owned in members.items():
                    merged.setdefault(mapping[c], set()).update(owned)
                members = merged
                group = {v: mapping[g] for v, g in group.items()}

    tuples = []
    for comp in connected_components(current):
        sub, mapping = induced_subgraph(current, comp)
        back = invert(mapping)
        for pattern in inst.patterns:
            iso = find_isomorphism(pattern, sub)
            if iso is not None:
                break
        else:
            raise OracleFaultError(f"component on {len(comp)} vertices matches no pattern")
        phi = {u: frozenset(original[x] for x in members[back[iso[u]]]) for u in pattern.vertices}
        used = set()
        for branch in phi.values():
            used |= branch
        kept = {position[v] for v in used}
        edges = frozenset(
            tuple(sorted((original[a], original[b]))) for a, b in minimal.edges if a in kept and b in kept
        )
        tuples.append(ModelTuple(frozenset(used), edges, pattern, phi))
    logger.debug(f"Extracted packing of size {len(tuples)} with {ask.calls} decider calls")
    return ask.result(Solution.of_packing(PackingSolution(tuple(tuples))))
