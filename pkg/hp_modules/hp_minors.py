"""Minor models: verification and small exhaustive search."""
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Mapping, Optional

from hp_modules.hp_config import LOG_LEVEL
from hp_modules.hp_graph import Graph, connected_bits, is_connected_set
from hp_modules.hp_utils import setup_colored_logger

logger = setup_colored_logger(__name__, LOG_LEVEL)


@dataclass(frozen=True)
class MinorModel:
    """phi maps every pattern vertex to its branch set in the host."""
    host: Graph
    pattern: Graph
    phi: Mapping[int, FrozenSet[int]]


def minor_model_violation(model: MinorModel) -> Optional[str]:
    """Describes the first broken minor-model condition, or None if the model is valid."""
    host, pattern, phi = model.host, model.pattern, model.phi
    if set(phi.keys()) != set(pattern.vertices):
        return f"branch sets given for {sorted(phi.keys())}, pattern has {list(pattern.vertices)}"
    owner: Dict[int, int] = {}
    for u in pattern.vertices:
        branch = phi[u]
        if not branch:
            return f"branch set of pattern vertex {u} is empty"
        outside = sorted(x for x in branch if not (1 <= x <= host.n))
        if outside:
            return f"branch set of {u} uses vertices {outside} outside the host"
        for x in branch:
            if x in owner:
                return f"host vertex {x} lies in the branch sets of {owner[x]} and {u}"
            owner[x] = u
        if not is_connected_set(host, branch):
            return f"branch set of {u} is not connected"
    for a, b in pattern.sorted_edges():
        if not any(host.has_edge(x, y) for x in phi[a] for y in phi[b]):
            return f"pattern edge ({a}, {b}) has no host edge between its branch sets"
    return None


def verify_minor_model(model: MinorModel) -> bool:
    problem = minor_model_violation(model)
    if problem is not None:
        logger.debug(f"Minor model rejected: {problem}")
        return False
    return True


def find_minor_model(host: Graph, pattern: Graph, spanning: bool = False) -> Optional[Dict[int, FrozenSet[int]]]:
    """Exhaustive search for a minor model of pattern in host.

    Host vertices are assigned one by one to a branch set (or left unused unless
    spanning is set). Only meant for hosts of a dozen vertices or so.
    """
    p, h = pattern.n, host.n
    if p == 0:
        return {}
    if p > h or pattern.m > host.m or (spanning and h == 0):
        return None
    order = list(host.vertices)
    masks = host.adjacency_masks()
    branches: List[set] = [set() for _ in range(p + 1)]
    empty = [p]

    def complete() -> Optional[Dict[int, FrozenSet[int]]]:
        bits = [0] * (p + 1)
        for u in pattern.vertices:
            for x in branches[u]:
                bits[u] |= 1 << x
        for a, b in pattern.edges:
            if not any(masks[x] & bits[b] for x in branches[a]):
                return None
        if not all(connected_bits(masks, bits[u]) for u in pattern.vertices):
            return None
        return {u: frozenset(branches[u]) for u in pattern.vertices}

    def place(i: int) -> Optional[Dict[int, FrozenSet[int]]]:
        if empty[0] > h - i:
            return None
        if i == h:
            return complete()
        v = order[i]
        for u in pattern.vertices:
            was_empty = not branches[u]
            branches[u].add(v)
            if was_empty:
                empty[0] -= 1
            found = place(i + 1)
            branches[u].discard(v)
            if was_empty:
                empty[0] += 1
            if found is not None:
                return found
        if not spanning:
            return place(i + 1)
        return None

    return place(0)
