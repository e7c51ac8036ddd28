"""Dominating-set machinery: annotated and blue-white instances, gadgets, and the
H-treewidth scheme for DS."""
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterable, Optional, Tuple

from hp_modules.hp_base_solvers import ExactBaseSolver, checked
from hp_modules.hp_config import LOG_LEVEL
from hp_modules.hp_decomp import HTreeDecomposition, assemble_td
from hp_modules.hp_errors import GraphInputError, OracleFaultError, UnsupportedError
from hp_modules.hp_graph import Graph, VertexSet, check_vertices, contract_edge, induced_subgraph, invert
from hp_modules.hp_problems import (
    ApproxResult,
    Case,
    CountingDecider,
    ExtractionResult,
    ProblemInstance,
    ProblemKind,
    Solution,
    is_dominating,
)
from hp_modules.hp_td_dp import td_dp_opt
from hp_modules.hp_tree import TreeDecomposition, relabel_nodes
from hp_modules.hp_treewidth import build_tree_decomposition
from hp_modules.hp_utils import check_epsilon, setup_colored_logger

logger = setup_colored_logger(__name__, LOG_LEVEL)


# ─── ANNOTATED DOMINATING SET ─────────────────────────────────────────────────
@dataclass(frozen=True)
class AnnotatedDSInstance:
    """Vertices of `dominated` need no domination and form an independent set."""
    graph: Graph
    dominated: VertexSet

    def __post_init__(self):
        object.__setattr__(self, "dominated", check_vertices(self.graph, self.dominated))
        if any(u in self.dominated and v in self.dominated for u, v in self.graph.edges):
            raise GraphInputError("dominated vertices must be pairwise non-adjacent")

    def problem(self) -> ProblemInstance:
        return ProblemInstance.dominating_set(self.graph, self.dominated)


def annotate_normalize(G: Graph, D: Iterable[int]) -> AnnotatedDSInstance:
    """Drops the edges inside D; they never help dominate an undominated vertex."""
    D = check_vertices(G, D)
    kept = [(u, v) for u, v in G.edges if not (u in D and v in D)]
    return AnnotatedDSInstance(Graph(G.n, kept), D)


def contract_annotated(inst: AnnotatedDSInstance, u: int, v: int) -> AnnotatedDSInstance:
    """Contracts uv; the merged vertex needs domination again."""
    G2, mapping = contract_edge(inst.graph, u, v)
    dominated = frozenset(mapping[x] for x in inst.dominated if x not in (u, v))
    return AnnotatedDSInstance(G2, dominated)


# ─── GADGETS ──────────────────────────────────────────────────────────────────
def gamma_grid(k: int) -> Graph:
    """Triangulated k x k grid with corner (k, k) joined to every border vertex.

    Vertex (x, y) gets label (x - 1) * k + y.
    """
    if k < 2:
        raise UnsupportedError(f"the triangulated grid needs k >= 2, got {k}")

    def label(x: int, y: int) -> int:
        return (x - 1) * k + y

    edges = []
    for x in range(1, k + 1):
        for y in range(1, k + 1):
            if x < k:
                edges.append((label(x, y), label(x + 1, y)))
            if y < k:
                edges.append((label(x, y), label(x, y + 1)))
            if x < k and y < k:
                edges.append((label(x + 1, y), label(x, y + 1)))
    corner = label(k, k)
    for x in range(1, k + 1):
        for y in range(1, k + 1):
            on_border = x in (1, k) or y in (1, k)
            if on_border and label(x, y) != corner:
                edges.append((corner, label(x, y)))
    return Graph(k * k, edges)


def ds_gadget_graph(G: Graph, Vt: Iterable[int], Rt: Iterable[int]) -> Tuple[Graph, int, Dict[int, int]]:
    """G[Vt] plus a new vertex v* adjacent to exactly Rt.

    Returns the gadget, the label of v* (|Vt| + 1) and the old->new mapping of Vt.
    """
    Vt = check_vertices(G, Vt)
    Rt = check_vertices(G, Rt)
    if not Rt <= Vt:
        raise GraphInputError("R_t must be a subset of V_t")
    sub, mapping = induced_subgraph(G, Vt)
    v_star = sub.n + 1
    edges = list(sub.edges) + [(mapping[r], v_star) for r in Rt]
    return Graph(v_star, edges), v_star, mapping


# ─── BLUE-WHITE DOMINATING SET ────────────────────────────────────────────────
@dataclass(frozen=True)
class BWDSInstance:
    """Dominating set that must contain every blue vertex; k is the decision budget."""
    graph: Graph
    blue: VertexSet
    k: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "blue", check_vertices(self.graph, self.blue))

    @property
    def white(self) -> VertexSet:
        return frozenset(v for v in self.graph.vertices if v not in self.blue)

    def problem(self) -> ProblemInstance:
        return ProblemInstance.bwds(self.graph, self.blue)


def bwds_to_ds(inst: BWDSInstance) -> Tuple[Graph, int]:
    """Plain DS instance equivalent for budgets k <= n: n^2 pendants on each blue vertex."""
    G = inst.graph
    k = G.n if inst.k is None else inst.k
    if k > G.n:
        raise UnsupportedError(f"pendant reduction needs k <= n, got k={k} with n={G.n}")
    pendants = G.n * G.n
    edges = list(G.edges)
    label = G.n
    for b in sorted(inst.blue):
        for _ in range(pendants):
            label += 1
            edges.append((b, label))
    return Graph(label, edges), k


def pendant_tree_decomposition(T: TreeDecomposition, n: int, blue: Iterable[int]) -> TreeDecomposition:
    """Extends a decomposition of G to the graph built by bwds_to_ds.

    The pendants of each blue vertex b hang as a chain of bags {b, p} under the
    first node whose bag holds b. Width grows to at most max(width, 1).
    """
    bags: Dict[int, frozenset] = dict(T.bags)
    edges = list(T.edges)
    pendants = n * n
    label = n
    next_id = max(bags) + 1
    for b in sorted(blue):
        parent = min(t for t, bag in T.bags.items() if b in bag)
        for _ in range(pendants):
            label += 1
            bags[next_id] = frozenset({b, label})
            edges.append((parent, next_id))
            parent = next_id
            next_id += 1
    new_bags, new_edges = relabel_nodes(bags, edges, T.root)
    return TreeDecomposition(new_bags, new_edges)


def bwds_solve_exact(inst: BWDSInstance, T: Optional[TreeDecomposition] = None) -> Tuple[int, Solution]:
    """Minimum dominating set containing the blue vertices, by forced-set DP."""
    T = T or build_tree_decomposition(inst.graph)
    return td_dp_opt(ProblemKind.DS, inst.graph, T, forced=inst.blue)


BWDSDecider = Callable[[Graph, FrozenSet[int], int], bool]


def dp_bwds_decider(G: Graph, blue: FrozenSet[int], k: int) -> bool:
    value, _ = bwds_solve_exact(BWDSInstance(G, blue))
    return value <= k


def bwds_extract(decider: BWDSDecider, inst: BWDSInstance) -> ExtractionResult:
    """Smallest budget k* found from |B| upward, then vertices are forced blue one
    at a time while (G, B, k*) stays a yes-instance."""
    G = inst.graph
    ask = CountingDecider(decider)
    blue = set(inst.blue)
    k = len(blue)
    while not ask(G, frozenset(blue), k, phase="budget"):
        k += 1
        if k > G.n:
            raise OracleFaultError("decider rejects every budget up to n")
    for v in G.vertices:
        if len(blue) >= k:
            break
        if v not in blue and ask(G, frozenset(blue | {v}), k, phase="force"):
            blue.add(v)
    if not is_dominating(G, frozenset(blue)):
        raise OracleFaultError("forced set is not dominating although every extension was rejected")
    return ask.result(Solution.of_vertices(blue))


# ─── H-TREEWIDTH SCHEME ───────────────────────────────────────────────────────
def twh_fptas_ds(G: Graph, D: HTreeDecomposition, eps, mod_scheme: Callable, base=None) -> ApproxResult:
    """(1 + eps)-approximate dominating set from an H-tree decomposition.

    Each leaf t is solved on G[chi(t)] plus a vertex v* adjacent to R_t with
    mod_scheme at eps/4 and modulator R_t. A leaf is good when ell <= eps/29 * |S_t|.
    The rest, G[S2 + V_b] with S2 forced, is solved exactly as blue-white DS.
    mod_scheme(G, M, eps, base, family=...) must return an ApproxResult.
    """
    eps = check_epsilon(eps)
    base = base or ExactBaseSolver()
    ell = D.ell
    if ell == 0:
        value, sol = bwds_solve_exact(BWDSInstance(G, frozenset()))
        sol = checked(ProblemInstance.dominating_set(G), sol, "dominating set scheme")
        logger.info(f"Decomposition has no non-base vertices; exact dominating set {value}")
        return ApproxResult(sol, Case.OCEAN, eps, {"good": len(D.leaves), "bad": 0})

    S1, S2, covered = set(), set(), set()
    good = 0
    for t in D.leaves:
        if not D.base_part(t):
            continue
        R_t = D.rest_part(t)
        gadget, v_star, mapping = ds_gadget_graph(G, D.bags[t], R_t)
        result = mod_scheme(gadget, [mapping[r] for r in R_t], eps / 4, base, family=D.family)
        back = invert(mapping)
        S_t = frozenset(back[x] for x in result.solution.vertices if x != v_star)
        if ell <= eps / 29 * len(S_t):
            good += 1
            S1 |= S_t
            S2 |= R_t
            covered |= D.bags[t]
    V_b = frozenset(v for v in G.vertices if v not in covered)
    keep = V_b | S2
    F, mapping, T = assemble_td(G, D, keep)
    _, S_b = bwds_solve_exact(BWDSInstance(F, frozenset(mapping[v] for v in S2)), T)
    back = invert(mapping)
    solution = frozenset(S1) | frozenset(S2) | frozenset(back[x] for x in S_b.vertices)
    bad = len(D.leaves) - good
    logger.info(f"DS leaves: {good} good, {bad} bad; exact part on {F.n} vertices")
    case = Case.OCEAN if good else Case.BUCKET
    sol = checked(ProblemInstance.dominating_set(G), Solution.of_vertices(solution), "dominating set scheme")
    return ApproxResult(sol, case, eps, {"good": good, "bad": bad, "exact_vertices": F.n})
