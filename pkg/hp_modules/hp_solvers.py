"""Exact oracles: exhaustive search, edge-branching VC and self-reduction loops."""
from itertools import combinations
from typing import Callable, Optional, Tuple

from hp_modules.hp_config import BRUTE_PACKING_CAP, BRUTE_VERTEX_CAP, LOG_LEVEL
from hp_modules.hp_errors import InfeasibleInstanceError, OracleFaultError, UnsupportedError
from hp_modules.hp_graph import (
    Graph,
    component_bits,
    connected_bits,
    delete_vertices,
    from_bits,
    to_bits,
)
from hp_modules.hp_packing import brute_packing
from hp_modules.hp_problems import (
    CountingDecider,
    Decider,
    ExtractionResult,
    ProblemInstance,
    ProblemKind,
    Solution,
)
from hp_modules.hp_utils import setup_colored_logger

logger = setup_colored_logger(__name__, LOG_LEVEL)

def _popcount(bits: int) -> int:
    return bin(bits).count("1")


def _iter_bits(bits: int):
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


# ─── VERTEX COVER BY EDGE BRANCHING ───────────────────────────────────────────
def _vc_branch(masks, alive: int, k: int) -> bool:
    """Does the graph induced by `alive` have a vertex cover of size <= k?"""
    if k < 0:
        return False
    pivot, degree, edges2 = 0, 0, 0
    for v in _iter_bits(alive):
        d = _popcount(masks[v] & alive)
        edges2 += d
        if d > degree:
            pivot, degree = v, d
    if degree == 0:
        return True
    if k == 0 or edges2 // 2 > k * degree:
        return False
    if degree == 1:
        # Only disjoint edges remain.
        return edges2 // 2 <= k
    if _vc_branch(masks, alive & ~(1 << pivot), k - 1):
        return True
    nbrs = masks[pivot] & alive
    return _vc_branch(masks, alive & ~nbrs & ~(1 << pivot), k - _popcount(nbrs))


def _vc_constrained(G: Graph, k: int, chosen: int = 0, excluded: int = 0) -> bool:
    """VC of size <= k containing `chosen` and avoiding `excluded` (bitmasks)."""
    masks = G.adjacency_masks()
    for v in _iter_bits(excluded):
        if masks[v] & excluded:
            return False
        chosen |= masks[v]
    if chosen & excluded:
        return False
    alive = to_bits(G.vertices) & ~chosen & ~excluded
    return _vc_branch(masks, alive, k - _popcount(chosen))


def vc_decide_branch(G: Graph, k: int) -> bool:
    """True iff G has a vertex cover with at most k vertices."""
    return _vc_constrained(G, k)


def _min_vertex_cover(G: Graph) -> Tuple[int, int]:
    """(size, witness bitmask); witness is the lexicographically smallest optimum."""
    k = 0
    while not _vc_constrained(G, k):
        k += 1
    chosen, excluded = 0, 0
    for v in G.vertices:
        if _vc_constrained(G, k, chosen | (1 << v), excluded):
            chosen |= 1 << v
        else:
            excluded |= 1 << v
    return k, chosen


def _max_independent_set(G: Graph) -> Tuple[int, int]:
    """(size, witness bitmask) via the complement of a vertex cover."""
    k = 0
    while not _vc_constrained(G, k):
        k += 1
    alpha = G.n - k
    # Lexicographically smallest maximum independent set: greedily keep v in I,
    # i.e. keep v out of the cover, whenever an optimum still allows it.
    in_set, out_set = 0, 0
    for v in G.vertices:
        if _vc_constrained(G, k, chosen=out_set, excluded=in_set | (1 << v)):
            in_set |= 1 << v
        else:
            out_set |= 1 << v
    return alpha, in_set


# ─── EXHAUSTIVE SEARCH BY SOLUTION SIZE ───────────────────────────────────────
def _feasibility(inst: ProblemInstance) -> Callable[[int], bool]:
    G, kind = inst.graph, inst.kind
    masks = G.adjacency_masks()
    full = to_bits(G.vertices)

    def covers(S: int) -> bool:
        rest = full & ~S
        return not any(masks[v] & rest for v in _iter_bits(rest))

    if kind == ProblemKind.VC:
        return covers
    if kind == ProblemKind.FVS:
        def forest_after(S: int) -> bool:
            rest = full & ~S
            edges2 = sum(_popcount(masks[v] & rest) for v in _iter_bits(rest))
            return edges2 // 2 == _popcount(rest) - len(component_bits(masks, rest))
        return forest_after
    if kind in (ProblemKind.DS, ProblemKind.BWDS):
        need = full & ~to_bits(inst.dominated)
        closed = [masks[v] | (1 << v) for v in range(G.n + 1)]
        return lambda S: all(closed[v] & S for v in _iter_bits(need))
    if kind == ProblemKind.SIVC:
        terminals = to_bits(inst.terminals)
        return lambda S: covers(S) and all(c & terminals for c in component_bits(masks, S))
    if kind == ProblemKind.CVC:
        return lambda S: covers(S) and (S == 0 or connected_bits(masks, S))
    raise UnsupportedError(f"no exhaustive search for {kind.value}")


def _search_min(inst: ProblemInstance, limit: int) -> Optional[Tuple[int, int]]:
    """Smallest feasible set of size <= limit, lexicographically first; None if none."""
    G = inst.graph
    feasible = _feasibility(inst)
    forced = to_bits(inst.forced)
    free = [v for v in G.vertices if v not in inst.forced]
    for k in range(len(inst.forced), min(limit, G.n) + 1):
        for combo in combinations(free, k - len(inst.forced)):
            S = forced | to_bits(combo)
            if feasible(S):
                return k, S
    return None


def _check_cap(inst: ProblemInstance) -> None:
    cap = BRUTE_PACKING_CAP if inst.kind.is_packing else BRUTE_VERTEX_CAP
    if inst.graph.n > cap:
        raise UnsupportedError(f"exhaustive {inst.kind.value} is limited to {cap} vertices, got {inst.graph.n}")


def brute_opt(inst: ProblemInstance) -> Tuple[int, Solution]:
    """True optimum with the lexicographically smallest witness (canonical tuples for packings)."""
    _check_cap(inst)
    G, kind = inst.graph, inst.kind
    if kind.is_packing:
        packing = brute_packing(inst)
        return packing.size, Solution.of_packing(packing)
    if kind == ProblemKind.VC:
        value, bits = _min_vertex_cover(G)
        return value, Solution.of_vertices(from_bits(bits))
    if kind == ProblemKind.IS:
        value, bits = _max_independent_set(G)
        return value, Solution.of_vertices(from_bits(bits))
    if kind == ProblemKind.CVC:
        nontrivial = [c for c in component_bits(G.adjacency_masks(), to_bits(G.vertices)) if _popcount(c) > 1]
        if len(nontrivial) > 1:
            raise InfeasibleInstanceError("connected vertex cover needs all edges in one component")
    found = _search_min(inst, G.n)
    if found is None:
        raise InfeasibleInstanceError(f"{kind.value} instance has no feasible solution")
    value, bits = found
    return value, Solution.of_vertices(from_bits(bits))


def brute_decide(inst: ProblemInstance, k: int) -> bool:
    """Decision version: solution of size <= k (minimization) or >= k (maximization)."""
    _check_cap(inst)
    G, kind = inst.graph, inst.kind
    if kind == ProblemKind.VC:
        return vc_decide_branch(G, k)
    if kind == ProblemKind.IS:
        return k <= 0 or vc_decide_branch(G, G.n - k)
    if kind.maximize:
        return brute_packing(inst).size >= k
    if k < 0:
        return False
    try:
        return _search_min(inst, k) is not None
    except InfeasibleInstanceError:
        return False


def problem_decider(template: ProblemInstance) -> Decider:
    """Adapts brute_decide to a (graph, k) decider for the template's problem."""
    def decide(G: Graph, k: int) -> bool:
        return brute_decide(template.with_graph(G, {}), k)
    return decide


# ─── SELF-REDUCTION ───────────────────────────────────────────────────────────
def extract_vertex_deletion(decider: Decider, G: Graph, k: int) -> ExtractionResult:
    """Turns a decider for a hereditary vertex-deletion problem into a solver.

    One pass over the vertices: v joins the solution when (G - v, k - 1) is still a
    yes-instance. Uses at most n + 1 decider calls.
    """
    ask = CountingDecider(decider)
    if k < 0 or not ask(G, k):
        return ask.result(None)
    current = G
    position = {v: v for v in G.vertices}
    chosen = []
    budget = k
    for v in G.vertices:
        if current.n == 0 or budget == 0:
            break
        candidate, mapping = delete_vertices(current, [position[v]])
        if ask(candidate, budget - 1, phase="vertex"):
            chosen.append(v)
            current = candidate
            position = {u: mapping[p] for u, p in position.items() if u != v}
            budget -= 1
    if budget > 0 and current.n > 0:
        raise OracleFaultError("decider accepted the instance but rejected every single-vertex deletion")
    logger.debug(f"Extracted {len(chosen)} vertices with {ask.calls} decider calls")
    return ask.result(Solution.of_vertices(chosen))
