"""Base-family solvers and exact-by-size solvers plugged into the schemes.

A base solver answers instances whose graph lies in the base family with a
guaranteed factor: 1 + eps (minimization), 1 - eps (maximization) or a constant
alpha. An exact-by-size solver returns an optimum and is handed an upper bound on
it, which branching solvers use as their budget.
"""
import math
from fractions import Fraction
from typing import Optional, Protocol

import networkx as nx

from hp_modules.hp_config import LOG_LEVEL
from hp_modules.hp_errors import FrameworkError, UnsupportedError
from hp_modules.hp_graph import neighborhood
from hp_modules.hp_problems import PackingSolution, ProblemInstance, ProblemKind, Solution, verify_solution
from hp_modules.hp_solvers import brute_opt, extract_vertex_deletion, problem_decider, vc_decide_branch
from hp_modules.hp_td_dp import td_dp_opt
from hp_modules.hp_treewidth import build_tree_decomposition
from hp_modules.hp_utils import as_fraction, setup_colored_logger

logger = setup_colored_logger(__name__, LOG_LEVEL)

TD_DP_KINDS = (ProblemKind.VC, ProblemKind.IS, ProblemKind.DS, ProblemKind.BWDS)


class BaseSolver(Protocol):
    alpha: Fraction

    def solve(self, inst: ProblemInstance, eps: Fraction) -> Solution:
        ...


class ExactBySize(Protocol):
    def solve(self, inst: ProblemInstance, bound: Optional[int] = None) -> Solution:
        ...


def exact_opt(inst: ProblemInstance):
    """Optimum via TD-DP where one exists, otherwise exhaustive search."""
    if inst.kind in TD_DP_KINDS:
        T = build_tree_decomposition(inst.graph)
        return td_dp_opt(inst.kind, inst.graph, T, inst.dominated, inst.forced)
    return brute_opt(inst)


class ExactBaseSolver:
    """Exact answers; trivially within every (1 +- eps) guarantee."""
    alpha = Fraction(1)

    def __init__(self):
        self.calls = 0

    def solve(self, inst: ProblemInstance, eps: Fraction) -> Solution:
        self.calls += 1
        _, sol = exact_opt(inst)
        return sol


class LossyBaseSolver:
    """Degrades an inner solver's answer as far as its guarantee allows.

    lossiness in [0, 1] scales how much of the eps slack is spent: minimization
    pads the solution to floor((1 + lossiness * eps) * |S|) vertices, maximization
    keeps ceil((1 - lossiness * eps) * |S|) elements.
    """

    def __init__(self, inner: Optional[BaseSolver] = None, lossiness=Fraction(1)):
        lossiness = as_fraction(lossiness)
        if not 0 <= lossiness <= 1:
            raise UnsupportedError(f"lossiness must lie in [0, 1], got {lossiness}")
        self.inner = inner or ExactBaseSolver()
        if Fraction(self.inner.alpha) != 1:
            raise UnsupportedError(f"lossy wrapper needs an eps-base solver, got alpha={self.inner.alpha}")
        self.lossiness = lossiness
        self.alpha = Fraction(1)
        self.calls = 0

    def solve(self, inst: ProblemInstance, eps: Fraction) -> Solution:
        self.calls += 1
        sol = self.inner.solve(inst, eps)
        slack = self.lossiness * as_fraction(eps)
        if inst.kind.maximize:
            keep = math.ceil((1 - slack) * sol.size)
            if sol.is_packing:
                return Solution.of_packing(PackingSolution(sol.packing.tuples[:keep]))
            return Solution.of_vertices(sorted(sol.vertices)[:keep])
        target = math.floor((1 + slack) * sol.size)
        return Solution.of_vertices(_pad(inst, sol.vertices, target))


class AlphaLossyBaseSolver:
    """An alpha-approximate minimization base: pads an optimum to
    floor((1 + lossiness * (alpha - 1)) * |S|) vertices, so at most alpha * OPT."""

    def __init__(self, alpha=Fraction(2), lossiness=Fraction(1)):
        alpha, lossiness = as_fraction(alpha), as_fraction(lossiness)
        if alpha < 1:
            raise UnsupportedError(f"alpha must be at least 1, got {alpha}")
        if not 0 <= lossiness <= 1:
            raise UnsupportedError(f"lossiness must lie in [0, 1], got {lossiness}")
        self.inner = ExactBaseSolver()
        self.alpha = alpha
        self.lossiness = lossiness
        self.calls = 0

    def solve(self, inst: ProblemInstance, eps: Fraction) -> Solution:
        if inst.kind.maximize:
            raise UnsupportedError(f"alpha-lossy base solver only handles minimization, not {inst.kind.value}")
        self.calls += 1
        sol = self.inner.solve(inst, eps)
        target = math.floor((1 + self.lossiness * (self.alpha - 1)) * sol.size)
        return Solution.of_vertices(_pad(inst, sol.vertices, target))


def _pad(inst: ProblemInstance, S, target: int) -> frozenset:
    """Adds smallest-label vertices to S up to target while keeping it feasible."""
    G = inst.graph
    chosen = set(S)
    while len(chosen) < target:
        if inst.kind == ProblemKind.SIVC:
            pool = (neighborhood(G, chosen) if chosen else frozenset()) | (inst.terminals - chosen)
        elif inst.kind == ProblemKind.CVC:
            pool = neighborhood(G, chosen) if chosen else frozenset(G.vertices)
        else:
            pool = frozenset(v for v in G.vertices if v not in chosen)
        if not pool:
            break
        chosen.add(min(pool))
    return frozenset(chosen)


class MatchingVCBaseSolver:
    """Both endpoints of a maximal matching: a 2-approximate vertex cover."""
    alpha = Fraction(2)

    def __init__(self):
        self.calls = 0

    def solve(self, inst: ProblemInstance, eps: Fraction) -> Solution:
        if inst.kind != ProblemKind.VC:
            raise UnsupportedError(f"matching base solver only handles vc, not {inst.kind.value}")
        self.calls += 1
        matching = nx.maximal_matching(inst.graph.to_networkx())
        return Solution.of_vertices(v for edge in matching for v in edge)


# ─── EXACT BY SOLUTION SIZE ───────────────────────────────────────────────────
class BranchingVCSolver:
    """VC by edge branching, witness read off by vertex-deletion self-reduction."""

    def __init__(self):
        self.calls = 0
        self.decider_calls = 0

    def solve(self, inst: ProblemInstance, bound: Optional[int] = None) -> Solution:
        if inst.kind != ProblemKind.VC:
            raise UnsupportedError(f"branching solver only handles vc, not {inst.kind.value}")
        self.calls += 1
        G = inst.graph
        k = 0
        while not vc_decide_branch(G, k):
            k += 1
            if bound is not None and k > bound:
                raise FrameworkError(f"vertex cover optimum exceeds the promised bound {bound}")
        result = extract_vertex_deletion(vc_decide_branch, G, k)
        self.decider_calls += result.calls
        return result.solution


class BruteBySizeSolver:
    """Exhaustive search by increasing solution size; self-reduces when asked to."""

    def __init__(self, extract: bool = False):
        self.extract = extract
        self.calls = 0

    def solve(self, inst: ProblemInstance, bound: Optional[int] = None) -> Solution:
        self.calls += 1
        value, sol = exact_opt(inst)
        if bound is not None and not inst.kind.maximize and value > bound:
            raise FrameworkError(f"{inst.kind.value} optimum {value} exceeds the promised bound {bound}")
        if self.extract and inst.kind in (ProblemKind.VC, ProblemKind.FVS):
            sol = extract_vertex_deletion(problem_decider(inst), inst.graph, value).solution
        return sol


def default_by_size(kind: ProblemKind) -> ExactBySize:
    if kind == ProblemKind.VC:
        return BranchingVCSolver()
    return BruteBySizeSolver()


def checked(inst: ProblemInstance, sol: Solution, who: str) -> Solution:
    """Returns sol after confirming it is feasible for inst."""
    if not verify_solution(inst, sol):
        raise FrameworkError(f"{who} returned an infeasible {inst.kind.value} solution")
    return sol
