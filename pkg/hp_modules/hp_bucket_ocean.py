"""Approximation schemes parameterized by a modulator M (G - M in the base family).

Each scheme runs a base solver on G - M. When M is small next to that solution
(the OCEAN case) M is absorbed at little cost; otherwise (the BUCKET case) the
optimum is bounded by a function of |M| and epsilon and is found exactly.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from hp_modules.hp_base_solvers import BaseSolver, ExactBySize, checked, default_by_size
from hp_modules.hp_config import LOG_LEVEL
from hp_modules.hp_decomp import assemble_td, htd_from_modulator
from hp_modules.hp_domset import annotate_normalize
from hp_modules.hp_errors import FrameworkError, InfeasibleInstanceError, PreconditionError
from hp_modules.hp_family import FamilyPredicate, Membership
from hp_modules.hp_graph import (
    Graph,
    check_vertices,
    connected_components,
    delete_vertices,
    induced_subgraph,
    invert,
    is_independent,
    iter_subsets,
    neighborhood,
)
from hp_modules.hp_problems import ApproxResult, Case, ProblemInstance, ProblemKind, Solution, is_vertex_cover
from hp_modules.hp_td_dp import td_dp_opt
from hp_modules.hp_tree import TreeDecomposition
from hp_modules.hp_utils import check_epsilon, format_vertex_set, setup_colored_logger

logger = setup_colored_logger(__name__, LOG_LEVEL)


def check_modulator(G: Graph, M: Iterable[int], family: Optional[FamilyPredicate]) -> frozenset:
    """Validates the labels of M and, when a family is given, that G - M lies in it."""
    M = check_vertices(G, M)
    if family is not None:
        rest, _ = delete_vertices(G, M)
        verdict = family.contains(rest)
        if verdict != Membership.YES:
            raise PreconditionError(f"{format_vertex_set(M)} is not a {family} modulator ({verdict.value})")
    return M


def _base_on_rest(inst: ProblemInstance, M: frozenset, base: BaseSolver, eps: Fraction) -> Solution:
    """Base solution of inst - M, in the labels of G."""
    rest, mapping = inst.without(M)
    sol = checked(rest, base.solve(rest, eps), "base solver")
    return sol.lifted(mapping)


# ─── VERTEX DELETION ──────────────────────────────────────────────────────────
def mod_fptas_vertex_deletion(
    G: Graph,
    M: Iterable[int],
    eps,
    base: BaseSolver,
    by_size: Optional[ExactBySize] = None,
    kind: ProblemKind = ProblemKind.VC,
    family: Optional[FamilyPredicate] = None,
) -> ApproxResult:
    """(1 + eps)-approximation for a vertex-deletion problem given a modulator M."""
    eps = check_epsilon(eps)
    M = check_modulator(G, M, family)
    by_size = by_size or default_by_size(kind)
    inst = ProblemInstance(kind, G)
    S = _base_on_rest(inst, M, base, eps / 2)
    if 3 * len(M) <= eps * S.size:
        logger.info(f"OCEAN: |M|={len(M)} <= eps/3 * |S| with |S|={S.size}")
        return ApproxResult(Solution.of_vertices(M | S.vertices), Case.OCEAN, eps, {"base_calls": 1})
    bound = math.floor(len(M) + 3 * len(M) / eps)
    logger.info(f"BUCKET: |M|={len(M)}, |S|={S.size}; optimum at most {bound}")
    sol = checked(inst, by_size.solve(inst, bound), "exact-by-size solver")
    if sol.size > bound:
        raise FrameworkError(f"optimum {sol.size} exceeds the bucket bound {bound}")
    return ApproxResult(sol, Case.BUCKET, eps, {"base_calls": 1, "exact_calls": 1})


def mod_alpha(
    G: Graph,
    M: Iterable[int],
    eps,
    alpha_base: BaseSolver,
    by_size: Optional[ExactBySize] = None,
    kind: ProblemKind = ProblemKind.VC,
    family: Optional[FamilyPredicate] = None,
) -> ApproxResult:
    """(alpha + eps)-approximation from an alpha-approximate base solver.

    OCEAN when |M| <= tau * |S| with tau = eps / max(3, alpha); otherwise the
    optimum is at most |M| + |M| / tau and is solved exactly.
    """
    eps = check_epsilon(eps)
    M = check_modulator(G, M, family)
    by_size = by_size or default_by_size(kind)
    tau = eps / max(Fraction(3), Fraction(alpha_base.alpha))
    inst = ProblemInstance(kind, G)
    S = _base_on_rest(inst, M, alpha_base, eps / 2)
    if len(M) <= tau * S.size:
        logger.info(f"OCEAN (alpha={alpha_base.alpha}): |M|={len(M)}, |S|={S.size}")
        return ApproxResult(Solution.of_vertices(M | S.vertices), Case.OCEAN, eps, {"base_calls": 1})
    bound = math.floor(len(M) + len(M) / tau)
    logger.info(f"BUCKET (alpha={alpha_base.alpha}): optimum at most {bound}")
    sol = checked(inst, by_size.solve(inst, bound), "exact-by-size solver")
    if sol.size > bound:
        raise FrameworkError(f"optimum {sol.size} exceeds the bucket bound {bound}")
    return ApproxResult(sol, Case.BUCKET, eps, {"base_calls": 1, "exact_calls": 1})


# ─── GUESSING THE INTERSECTION WITH M ─────────────────────────────────────────
def _run_guesses(guesses: Sequence, evaluate: Callable, workers: int) -> List:
    if workers > 1 and len(guesses) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(evaluate, guesses))
    return [evaluate(Y) for Y in guesses]


def vc_mod_guess(
    G: Graph,
    M: Iterable[int],
    eps,
    base: BaseSolver,
    workers: int = 1,
    family: Optional[FamilyPredicate] = None,
) -> Solution:
    """Guesses Y = OPT & M; M - Y must be independent, so its neighbors outside M are forced."""
    eps = check_epsilon(eps)
    M = check_modulator(G, M, family)
    guesses = [Y for Y in iter_subsets(sorted(M)) if is_independent(G, M - Y)]

    def evaluate(Y: frozenset) -> frozenset:
        forced = neighborhood(G, M - Y) - M
        inst, mapping = ProblemInstance.vc(G).without(M | forced)
        S = checked(inst, base.solve(inst, eps), "base solver").lifted(mapping)
        return Y | forced | S.vertices

    candidates = _run_guesses(guesses, evaluate, workers)
    best = min(candidates, key=lambda C: (len(C), sorted(C)))
    logger.debug(f"vc guesses: {len(guesses)} over |M|={len(M)}, best size {len(best)}")
    return Solution.of_vertices(best)


def is_mod_guess(
    G: Graph,
    M: Iterable[int],
    eps,
    base: BaseSolver,
    workers: int = 1,
    family: Optional[FamilyPredicate] = None,
) -> Solution:
    """Guesses Y = I & M among independent Y; removes N(Y) outside M and base-solves the rest."""
    eps = check_epsilon(eps)
    M = check_modulator(G, M, family)
    guesses = [Y for Y in iter_subsets(sorted(M)) if is_independent(G, Y)]

    def evaluate(Y: frozenset) -> frozenset:
        blocked = neighborhood(G, Y) - M
        inst, mapping = ProblemInstance.independent_set(G).without(M | blocked)
        S = checked(inst, base.solve(inst, eps), "base solver").lifted(mapping)
        return Y | S.vertices

    candidates = _run_guesses(guesses, evaluate, workers)
    best = min(candidates, key=lambda C: (-len(C), sorted(C)))
    return Solution.of_vertices(best)


# ─── PACKING ──────────────────────────────────────────────────────────────────
def cycpack_mod_fptas(
    G: Graph,
    M: Iterable[int],
    eps,
    base: BaseSolver,
    exact_by_size: Optional[ExactBySize] = None,
    kind: ProblemKind = ProblemKind.CYCLE_PACKING,
    patterns: Tuple[Graph, ...] = (),
    family: Optional[FamilyPredicate] = None,
) -> ApproxResult:
    """(1 - eps)-approximate packing: OCEAN when |M| <= eps/2 * |S|."""
    eps = check_epsilon(eps)
    M = check_modulator(G, M, family)
    exact_by_size = exact_by_size or default_by_size(kind)
    inst = ProblemInstance(kind, G, patterns=tuple(patterns))
    S = _base_on_rest(inst, M, base, eps / 2)
    if len(M) <= eps / 2 * S.size:
        logger.info(f"OCEAN: |M|={len(M)} <= eps/2 * |S| with |S|={S.size}")
        return ApproxResult(S, Case.OCEAN, eps, {"base_calls": 1})
    sol = checked(inst, exact_by_size.solve(inst), "exact packing solver")
    bound = (1 + 4 / eps) * len(M)
    if sol.size > bound:
        raise FrameworkError(f"packing optimum {sol.size} exceeds (1 + 4/eps)|M| = {float(bound):.2f}")
    logger.info(f"BUCKET: exact packing {sol.size}, bound {float(bound):.2f}")
    return ApproxResult(sol, Case.BUCKET, eps, {"base_calls": 1, "exact_calls": 1})


# ─── DOMINATING SET ───────────────────────────────────────────────────────────
TwSolver = Callable[[Graph, TreeDecomposition], Tuple[int, Solution]]


def _ds_on_decomposition(G: Graph, T: TreeDecomposition) -> Tuple[int, Solution]:
    return td_dp_opt(ProblemKind.DS, G, T)


def ds_mod_fptas(
    G: Graph,
    M: Iterable[int],
    eps,
    annotated_base: BaseSolver,
    tw_solver: Optional[TwSolver] = None,
    family: Optional[FamilyPredicate] = None,
) -> ApproxResult:
    """(1 + eps)-approximate dominating set.

    G - M is solved as an annotated instance in which N(M) needs no domination.
    In the BUCKET case the modulator decomposition is turned into a tree
    decomposition of width at most tw(G - M) + |M| and solved by DP.
    """
    eps = check_epsilon(eps)
    M = check_modulator(G, M, family)
    tw_solver = tw_solver or _ds_on_decomposition
    rest, mapping = delete_vertices(G, M)
    annotated = annotate_normalize(rest, (mapping[v] for v in neighborhood(G, M)))
    inst = annotated.problem()
    S = checked(inst, annotated_base.solve(inst, eps / 2), "annotated base solver").lifted(mapping)
    if 3 * len(M) <= eps * S.size:
        logger.info(f"OCEAN: |M|={len(M)} <= eps/3 * |S| with |S|={S.size}")
        return ApproxResult(Solution.of_vertices(M | S.vertices), Case.OCEAN, eps, {"base_calls": 1})

    D = htd_from_modulator(G, M, family or FamilyPredicate.treewidth(G.n))
    _, _, T = assemble_td(G, D, G.vertices)
    logger.info(f"BUCKET: |M|={len(M)}, |S|={S.size}; DP over width {T.width}")
    _, sol = tw_solver(G, T)
    sol = checked(ProblemInstance.dominating_set(G), sol, "treewidth solver")
    return ApproxResult(sol, Case.BUCKET, eps, {"base_calls": 1, "exact_calls": 1, "width": T.width})


# ─── CONNECTED VERTEX COVER ───────────────────────────────────────────────────
def connectivity_repair(G: Graph, S: Iterable[int], M: Iterable[int]) -> frozenset:
    """Adds connector vertices to S + M until it induces a connected subgraph.

    Each connector is the smallest vertex outside the set adjacent to two of its
    components, so every addition lowers the component count.
    """
    U = set(check_vertices(G, S)) | set(check_vertices(G, M))
    if not is_vertex_cover(G, frozenset(U)):
        raise PreconditionError("S + M is not a vertex cover")
    while U:
        sub, mapping = induced_subgraph(G, U)
        back = invert(mapping)
        comps = [frozenset(back[x] for x in c) for c in connected_components(sub)]
        if len(comps) <= 1:
            break
        owner = {v: i for i, c in enumerate(comps) for v in c}
        connector = None
        for v in G.vertices:
            if v not in U and len({owner[u] for u in G.neighbors(v) if u in owner}) >= 2:
                connector = v
                break
        if connector is None:
            raise FrameworkError(f"no connector joins the {len(comps)} components; is the graph connected?")
        U.add(connector)
    return frozenset(U)


def cvc_mod_fptas(
    G: Graph,
    M: Iterable[int],
    eps,
    sivc_base: BaseSolver,
    exact_by_size: Optional[ExactBySize] = None,
    family: Optional[FamilyPredicate] = None,
) -> ApproxResult:
    """(1 + eps)-approximate connected vertex cover with eps' = eps / 5 internally."""
    eps = check_epsilon(eps)
    M = check_modulator(G, M, family)
    exact_by_size = exact_by_size or default_by_size(ProblemKind.CVC)
    core = frozenset(v for v in G.vertices if G.degree(v) > 0)
    G0, to_core = induced_subgraph(G, core)
    back = invert(to_core)
    if G0.n == 0:
        return ApproxResult(Solution.of_vertices(()), Case.OCEAN, eps, {})
    if len(connected_components(G0)) > 1:
        raise InfeasibleInstanceError("connected vertex cover needs all edges in one component")
    M0 = frozenset(to_core[v] for v in M if v in to_core)
    if not M0:
        # A one-vertex modulator is still a modulator for a hereditary family.
        M0 = frozenset({1})
    eps_prime = eps / 5

    rest, mapping = delete_vertices(G0, M0)
    terminals = frozenset(mapping[v] for v in neighborhood(G0, M0))
    sivc = ProblemInstance.sivc(rest, terminals)
    S_prime = checked(sivc, sivc_base.solve(sivc, eps_prime), "sivc base solver").lifted(mapping)
    stats = {"base_calls": 1, "modulator": len(M0), "eps_prime": eps_prime}

    if len(M0) > eps_prime * S_prime.size:
        bound = math.floor(len(M0) / eps_prime + 2 * len(M0))
        inst = ProblemInstance.cvc(G0)
        sol = checked(inst, exact_by_size.solve(inst, bound), "exact-by-size solver")
        if sol.size > bound:
            raise FrameworkError(f"connected vertex cover optimum {sol.size} exceeds {bound}")
        logger.info(f"BUCKET: |M|={len(M0)} > eps'|S'| with |S'|={S_prime.size}")
        stats["exact_calls"] = 1
        return ApproxResult(sol.lifted(to_core), Case.BUCKET, eps, stats)

    repaired = connectivity_repair(G0, S_prime.vertices, M0)
    stats["connectors"] = len(repaired) - len(S_prime.vertices | M0)
    logger.info(f"OCEAN: repaired |S' + M|={len(S_prime.vertices | M0)} with {stats['connectors']} connectors")
    return ApproxResult(Solution.of_vertices(back[v] for v in repaired), Case.OCEAN, eps, stats)
