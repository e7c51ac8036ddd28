"""Dynamic programming over nice tree decompositions for VC, IS and annotated DS.

One engine serves plain DS, annotated DS (vertices in `dominated` need no
domination) and blue-white DS (vertices in `forced` must be chosen).
"""
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from hp_modules.hp_config import LOG_LEVEL
from hp_modules.hp_errors import GraphInputError, UnsupportedError
from hp_modules.hp_graph import Graph, check_vertices
from hp_modules.hp_problems import ProblemKind, Solution
from hp_modules.hp_tree import TreeDecomposition, validate_td
from hp_modules.hp_utils import setup_colored_logger

logger = setup_colored_logger(__name__, LOG_LEVEL)

# Per-vertex state codes. VC and IS only use OUT and IN.
OUT = 0        # not chosen (and dominated, for DS)
IN = 1         # chosen
UNDOMINATED = 2  # DS only: not chosen, still waiting for a chosen neighbor


class NiceKind(Enum):
    LEAF = "leaf"
    INTRODUCE = "introduce"
    FORGET = "forget"
    JOIN = "join"


@dataclass(frozen=True)
class NiceNode:
    kind: NiceKind
    bag: Tuple[int, ...]
    vertex: Optional[int] = None
    children: Tuple[int, ...] = ()


def make_nice(T: TreeDecomposition) -> List[NiceNode]:
    """Nice decomposition as a list in which children precede parents.

    The last node is the root and has an empty bag.
    """
    nodes: List[NiceNode] = []

    def add(kind: NiceKind, bag, vertex=None, children=()) -> int:
        nodes.append(NiceNode(kind, tuple(sorted(bag)), vertex, tuple(children)))
        return len(nodes) - 1

    def walk(idx: int, cur: set, target: FrozenSet[int]) -> int:
        for v in sorted(cur - target):
            cur.discard(v)
            idx = add(NiceKind.FORGET, cur, v, (idx,))
        for v in sorted(target - cur):
            cur.add(v)
            idx = add(NiceKind.INTRODUCE, cur, v, (idx,))
        return idx

    structure = T.structure
    top: Dict[int, int] = {}
    for t in structure.postorder:
        target = frozenset(T.bags[t])
        kids = structure.children[t]
        if not kids:
            top[t] = walk(add(NiceKind.LEAF, ()), set(), target)
            continue
        tops = [walk(top[c], set(T.bags[c]), target) for c in kids]
        idx = tops[0]
        for other in tops[1:]:
            idx = add(NiceKind.JOIN, target, None, (idx, other))
        top[t] = idx
    root_bag = set(T.bags[T.root])
    walk(top[T.root], root_bag, frozenset())
    return nodes


Entry = Tuple[int, FrozenSet[int]]
Table = Dict[Tuple[int, ...], Entry]


def _better(candidate: Entry, incumbent: Optional[Entry], maximize: bool) -> bool:
    if incumbent is None:
        return True
    if candidate[0] != incumbent[0]:
        return candidate[0] > incumbent[0] if maximize else candidate[0] < incumbent[0]
    return sorted(candidate[1]) < sorted(incumbent[1])


def _offer(table: Table, state: Tuple[int, ...], entry: Entry, maximize: bool) -> None:
    if _better(entry, table.get(state), maximize):
        table[state] = entry


def td_dp_opt(
    kind: ProblemKind,
    G: Graph,
    T: TreeDecomposition,
    dominated: Iterable[int] = (),
    forced: Iterable[int] = (),
) -> Tuple[int, Solution]:
    """Exact optimum with witness for VC, IS or DS (dominated set D, forced set B)."""
    if kind == ProblemKind.BWDS:
        kind = ProblemKind.DS
    if kind not in (ProblemKind.VC, ProblemKind.IS, ProblemKind.DS):
        raise UnsupportedError(f"no tree-decomposition DP for {kind.value}")
    report = validate_td(G, T)
    if not report:
        raise GraphInputError(f"tree decomposition is invalid: {report}")
    dominated = check_vertices(G, dominated)
    forced = check_vertices(G, forced)
    maximize = kind == ProblemKind.IS
    nice = make_nice(T)
    tables: List[Optional[Table]] = [None] * len(nice)

    for i, node in enumerate(nice):
        if node.kind == NiceKind.LEAF:
            tables[i] = {(): (0, frozenset())}
            continue
        if node.kind == NiceKind.JOIN:
            left, right = (tables[c] for c in node.children)
            tables[i] = _join(kind, left, right, maximize)
        else:
            (c,) = node.children
            child_bag = nice[c].bag
            if node.kind == NiceKind.INTRODUCE:
                tables[i] = _introduce(kind, G, tables[c], child_bag, node.bag, node.vertex, dominated, forced, maximize)
            else:
                tables[i] = _forget(kind, tables[c], child_bag, node.vertex, maximize)
        for c in node.children:
            tables[c] = None

    value, witness = tables[-1][()]
    logger.debug(f"{kind.value} DP over {len(nice)} nice nodes: optimum {value}")
    return value, Solution.of_vertices(witness)


def _introduce(kind, G, child: Table, child_bag, bag, v, dominated, forced, maximize) -> Table:
    pos = bag.index(v)
    nbr_pos = [j for j, u in enumerate(child_bag) if G.has_edge(u, v)]
    out: Table = {}
    for state, (value, witness) in child.items():
        if kind == ProblemKind.VC:
            if v in forced or any(state[j] == OUT for j in nbr_pos):
                options = [IN]
            else:
                options = [OUT, IN]
            for code in options:
                new = state[:pos] + (code,) + state[pos:]
                _offer(out, new, (value + code, witness | {v} if code else witness), maximize)
        elif kind == ProblemKind.IS:
            new = state[:pos] + (OUT,) + state[pos:]
            _offer(out, new, (value, witness), maximize)
            if not any(state[j] == IN for j in nbr_pos):
                new = state[:pos] + (IN,) + state[pos:]
                _offer(out, new, (value + 1, witness | {v}), maximize)
        else:
            # v chosen: its bag neighbors become dominated.
            codes = list(state)
            for j in nbr_pos:
                if codes[j] == UNDOMINATED:
                    codes[j] = OUT
            new = tuple(codes[:pos]) + (IN,) + tuple(codes[pos:])
            _offer(out, new, (value + 1, witness | {v}), maximize)
            if v not in forced:
                seen = v in dominated or any(state[j] == IN for j in nbr_pos)
                code = OUT if seen else UNDOMINATED
                new = state[:pos] + (code,) + state[pos:]
                _offer(out, new, (value, witness), maximize)
    return out


def _forget(kind, child: Table, child_bag, v, maximize) -> Table:
    pos = child_bag.index(v)
    out: Table = {}
    for state, entry in child.items():
        if state[pos] == UNDOMINATED:
            continue
        _offer(out, state[:pos] + state[pos + 1:], entry, maximize)
    return out


def _join(kind, left: Table, right: Table, maximize) -> Table:
    out: Table = {}
    if kind != ProblemKind.DS:
        for state, (v1, w1) in left.items():
            other = right.get(state)
            if other is None:
                continue
            shared = sum(1 for code in state if code == IN)
            _offer(out, state, (v1 + other[0] - shared, w1 | other[1]), maximize)
        return out
    by_choice: Dict[Tuple[bool, ...], List[Tuple[Tuple[int, ...], Entry]]] = {}
    for state, entry in right.items():
        by_choice.setdefault(tuple(code == IN for code in state), []).append((state, entry))
    for s1, (v1, w1) in left.items():
        key = tuple(code == IN for code in s1)
        shared = sum(key)
        for s2, (v2, w2) in by_choice.get(key, ()):
            merged = tuple(
                IN if a == IN else (OUT if OUT in (a, b) else UNDOMINATED)
                for a, b in zip(s1, s2)
            )
            _offer(out, merged, (v1 + v2 - shared, w1 | w2), maximize)
    return out
