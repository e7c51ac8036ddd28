"""Schemes parameterized by H-treewidth.

Leaves whose base component carries a large base solution compared to R_t are
good: their solution is kept and R_t is paid for. Everything else, the bad side
V_b, has bounded treewidth and is solved exactly.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, Optional, Tuple

from hp_modules.hp_base_solvers import BaseSolver, checked, exact_opt
from hp_modules.hp_config import LOG_LEVEL, TREEWIDTH_EXACT_CAP
from hp_modules.hp_decomp import HTreeDecomposition, assemble_td
from hp_modules.hp_errors import FrameworkError, UnsupportedError
from hp_modules.hp_graph import Graph, delete_vertices, invert, label_map
from hp_modules.hp_problems import (
    ApproxResult,
    Case,
    PackingSolution,
    ProblemInstance,
    ProblemKind,
    Solution,
)
from hp_modules.hp_solvers import brute_opt
from hp_modules.hp_td_dp import td_dp_opt
from hp_modules.hp_tree import TreeDecomposition, relabel_nodes
from hp_modules.hp_treewidth import build_tree_decomposition, treewidth_exact
from hp_modules.hp_utils import as_fraction, check_epsilon, setup_colored_logger

logger = setup_colored_logger(__name__, LOG_LEVEL)

ExactSolver = Callable[[ProblemInstance, TreeDecomposition], Tuple[int, Solution]]


@dataclass(frozen=True)
class LeafRecord:
    solution: Solution
    rest_size: int
    threshold: Fraction
    good: bool
    certificate: Optional[Fraction] = None


@dataclass(frozen=True)
class LeafClassification:
    good: FrozenSet[int]
    bad: FrozenSet[int]
    per_leaf: Dict[int, LeafRecord] = field(default_factory=dict)


def leaf_threshold(kind: ProblemKind, eps: Fraction, alpha=None) -> Fraction:
    """Factor c in the good-leaf test |R_t| <= c * |S_t|."""
    if alpha is not None:
        return eps / (2 * as_fraction(alpha))
    if kind in (ProblemKind.VC, ProblemKind.FVS):
        return eps / 3
    if kind == ProblemKind.IS or kind.is_packing:
        return eps / 2
    raise UnsupportedError(f"no leaf classification rule for {kind.value}")


def classify_leaves(
    G: Graph,
    D: HTreeDecomposition,
    eps,
    kind: ProblemKind,
    base: BaseSolver,
    alpha=None,
    patterns: Tuple[Graph, ...] = (),
) -> LeafClassification:
    """Runs the base solver at eps/2 on every base component and splits the leaves."""
    eps = check_epsilon(eps)
    threshold = leaf_threshold(kind, eps, alpha)
    template = ProblemInstance(kind, G, patterns=tuple(patterns))
    ell = D.width + 1
    per_leaf: Dict[int, LeafRecord] = {}
    good = set()
    for t in D.leaves:
        part = D.base_part(t)
        rest_size = len(D.rest_part(t))
        if not part:
            empty = Solution.of_packing(PackingSolution()) if kind.is_packing else Solution.of_vertices(())
            per_leaf[t] = LeafRecord(empty, rest_size, threshold, False)
            continue
        inst, mapping = template.induced(part)
        S_t = checked(inst, base.solve(inst, eps / 2), "base solver").lifted(mapping)
        is_good = rest_size <= threshold * S_t.size
        certificate = None
        if not is_good and kind in (ProblemKind.VC, ProblemKind.FVS) and alpha is None:
            certificate = 3 * ell / eps
        per_leaf[t] = LeafRecord(S_t, rest_size, threshold, is_good, certificate)
        if is_good:
            good.add(t)
    bad = frozenset(t for t in D.nodes if t not in good)
    logger.info(f"{kind.value}: {len(good)} good and {len(D.leaves) - len(good)} bad leaves (threshold {threshold})")
    return LeafClassification(frozenset(good), bad, per_leaf)


def _good_side(D: HTreeDecomposition, cls: LeafClassification):
    """(S1, S2, covered): good solutions, their R_t and every vertex of a good bag."""
    S1, S2, covered = set(), set(), set()
    for t in sorted(cls.good):
        S1 |= cls.per_leaf[t].solution.vertices or frozenset()
        S2 |= D.rest_part(t)
        covered |= D.bags[t]
    return frozenset(S1), frozenset(S2), frozenset(covered)


def _default_exact(inst: ProblemInstance, T: TreeDecomposition) -> Tuple[int, Solution]:
    if inst.kind in (ProblemKind.VC, ProblemKind.IS, ProblemKind.DS):
        return td_dp_opt(inst.kind, inst.graph, T)
    return brute_opt(inst)


# ─── ETA-MODULATED TARGET FAMILIES ────────────────────────────────────────────
def bad_side_width_bound(ell: int, eps, eta: int) -> Fraction:
    return ell + 3 * ell / as_fraction(eps) + eta


def eta_modulated_fptas(
    G: Graph,
    D: HTreeDecomposition,
    eps,
    eta: int,
    base: BaseSolver,
    tw_exact: Optional[ExactSolver] = None,
    kind: ProblemKind = ProblemKind.VC,
) -> ApproxResult:
    """(1 + eps)-approximation for VC (eta = 0) or FVS (eta = 1).

    On a bad leaf G[H_t] - S_t has treewidth at most eta, so adding S_t to every bag
    of its decomposition keeps the bad side within width ell + 3 * ell / eps + eta.
    """
    eps = check_epsilon(eps)
    tw_exact = tw_exact or _default_exact
    cls = classify_leaves(G, D, eps, kind, base)
    S1, S2, covered = _good_side(D, cls)
    V_b = frozenset(v for v in G.vertices if v not in covered)
    ell = D.width + 1

    def leaf_td(t: int, H: Graph) -> TreeDecomposition:
        local = label_map(D.base_part(t))
        S_local = frozenset(local[v] for v in cls.per_leaf[t].solution.vertices)
        T = _td_around(H, S_local)
        if H.n <= TREEWIDTH_EXACT_CAP:
            _, T_exact = treewidth_exact(H)
            if T_exact.width < T.width:
                return T_exact
        return T

    sub, mapping, T_b = assemble_td(G, D, V_b, leaf_td)
    limit = bad_side_width_bound(ell, eps, eta)
    if T_b.width > limit:
        raise FrameworkError(f"bad-side decomposition has width {T_b.width} > {float(limit):.2f}")
    _, S_b = tw_exact(ProblemInstance(kind, sub), T_b)
    S_b = S_b.lifted(mapping)
    solution = checked(ProblemInstance(kind, G), Solution.of_vertices(S1 | S2 | S_b.vertices), "eta-modulated scheme")
    logger.info(
        f"|S1|={len(S1)} |S2|={len(S2)} |S_b|={S_b.size}; bad side n={sub.n} width {T_b.width} <= {float(limit):.2f}"
    )
    case = Case.OCEAN if cls.good else Case.BUCKET
    stats = {"good": len(cls.good), "bad_leaves": len(D.leaves) - len(cls.good), "bad_width": T_b.width}
    return ApproxResult(solution, case, eps, stats)


def _td_around(H: Graph, S: FrozenSet[int]) -> TreeDecomposition:
    """Decomposition of H - S with S added to every bag."""
    rest, mapping = delete_vertices(H, S)
    T = build_tree_decomposition(rest)
    back = invert(mapping)
    bags = {t: frozenset(back[x] for x in bag) | S for t, bag in T.bags.items()}
    new_bags, new_edges = relabel_nodes(bags, T.edges, T.root)
    return TreeDecomposition(new_bags, new_edges)


# ─── INDEPENDENT SET AND PACKING ──────────────────────────────────────────────
def twh_fptas_is(
    G: Graph,
    D: HTreeDecomposition,
    eps,
    base: BaseSolver,
    tw_exact: Optional[ExactSolver] = None,
) -> ApproxResult:
    """(1 - eps)-approximate independent set; R_t of every good leaf is left out."""
    eps = check_epsilon(eps)
    tw_exact = tw_exact or _default_exact
    cls = classify_leaves(G, D, eps, ProblemKind.IS, base)
    S1, _, covered = _good_side(D, cls)
    V_b = frozenset(v for v in G.vertices if v not in covered)
    sub, mapping, T_b = assemble_td(G, D, V_b)
    _, S_b = tw_exact(ProblemInstance.independent_set(sub), T_b)
    solution = Solution.of_vertices(S1 | S_b.lifted(mapping).vertices)
    solution = checked(ProblemInstance.independent_set(G), solution, "independent set scheme")
    case = Case.OCEAN if cls.good else Case.BUCKET
    return ApproxResult(solution, case, eps, {"good": len(cls.good), "bad_vertices": sub.n})


def twh_fptas_packing(
    G: Graph,
    D: HTreeDecomposition,
    eps,
    base: BaseSolver,
    exact_packing: Optional[Callable[[ProblemInstance], Tuple[int, Solution]]] = None,
    kind: ProblemKind = ProblemKind.CYCLE_PACKING,
    patterns: Tuple[Graph, ...] = (),
) -> ApproxResult:
    """(1 - eps)-approximate packing; R_t of good leaves stays on the bad side."""
    eps = check_epsilon(eps)
    exact_packing = exact_packing or brute_opt
    cls = classify_leaves(G, D, eps, kind, base, patterns=patterns)
    sigma1 = PackingSolution()
    V_g = set()
    for t in sorted(cls.good):
        sigma1 = sigma1 + cls.per_leaf[t].solution.packing
        V_g |= D.base_part(t)
    V_b = [v for v in G.vertices if v not in V_g]
    inst = ProblemInstance(kind, G, patterns=tuple(patterns))
    sub_inst, mapping = inst.induced(V_b)
    _, sigma_b = exact_packing(sub_inst)
    packing = sigma1 + sigma_b.lifted(mapping).packing
    solution = checked(inst, Solution.of_packing(packing), "packing scheme")
    case = Case.OCEAN if cls.good else Case.BUCKET
    return ApproxResult(solution, case, eps, {"good": len(cls.good), "bad_vertices": len(V_b)})


# ─── CONSTANT-FACTOR BASE SOLVERS ─────────────────────────────────────────────
def twh_alpha(
    G: Graph,
    D: HTreeDecomposition,
    eps,
    alpha,
    alpha_base: BaseSolver,
    exact_solver: Optional[Callable[[ProblemInstance], Tuple[int, Solution]]] = None,
    kind: ProblemKind = ProblemKind.VC,
) -> ApproxResult:
    """(alpha + eps)-approximation: good iff |R_t| <= eps/(2 alpha) * |S_t|."""
    eps = check_epsilon(eps)
    exact_solver = exact_solver or exact_opt
    cls = classify_leaves(G, D, eps, kind, alpha_base, alpha=alpha)
    S1, S2, covered = _good_side(D, cls)
    inst = ProblemInstance(kind, G)
    sub_inst, mapping = inst.induced(v for v in G.vertices if v not in covered)
    _, S_b = exact_solver(sub_inst)
    solution = Solution.of_vertices(S1 | S2 | S_b.lifted(mapping).vertices)
    solution = checked(inst, solution, "alpha scheme")
    case = Case.OCEAN if cls.good else Case.BUCKET
    return ApproxResult(solution, case, as_fraction(eps), {"good": len(cls.good), "bad_vertices": sub_inst.graph.n})
