from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hp_modules.hp_base_solvers import (
    AlphaLossyBaseSolver,
    BranchingVCSolver,
    BruteBySizeSolver,
    ExactBaseSolver,
    LossyBaseSolver,
    MatchingVCBaseSolver,
    checked,
    default_by_size,
    exact_opt,
)
from hp_modules.hp_errors import FrameworkError, UnsupportedError
from hp_modules.hp_graph import Graph, complete_graph, cycle_graph, path_graph
from hp_modules.hp_problems import ProblemInstance, ProblemKind, Solution, verify_solution
from hp_modules.hp_solvers import brute_opt
from hp_modules.hp_testing import graphs, two_triangles


def test_exact_base_solver_counts_calls():
    base = ExactBaseSolver()
    sol = base.solve(ProblemInstance.vc(cycle_graph(4)), Fraction(1, 2))
    assert sol.size == 2
    assert base.calls == 1


def test_exact_opt_uses_dp_for_large_bounded_width_graphs():
    G = path_graph(60)
    value, sol = exact_opt(ProblemInstance.vc(G))
    assert value == 30
    assert verify_solution(ProblemInstance.vc(G), sol)


def test_lossy_minimization_pads_to_the_allowed_size():
    base = LossyBaseSolver(lossiness=1)
    inst = ProblemInstance.vc(cycle_graph(4))
    sol = base.solve(inst, Fraction(1, 2))
    assert sol.size == 3
    assert verify_solution(inst, sol)


def test_lossy_maximization_drops_elements():
    base = LossyBaseSolver(lossiness=1)
    inst = ProblemInstance.independent_set(Graph(4))
    sol = base.solve(inst, Fraction(1, 2))
    assert sol.size == 2
    assert verify_solution(inst, sol)


def test_lossy_packing_keeps_a_prefix():
    base = LossyBaseSolver(lossiness=1)
    inst = ProblemInstance.cycle_packing(two_triangles())
    sol = base.solve(inst, Fraction(1, 2))
    assert sol.size == 1
    assert verify_solution(inst, sol)


def test_lossy_padding_keeps_cvc_connected():
    base = LossyBaseSolver(lossiness=1)
    inst = ProblemInstance.cvc(path_graph(6))
    sol = base.solve(inst, Fraction(1, 2))
    assert sol.size == 6
    assert verify_solution(inst, sol)


def test_lossiness_must_be_a_fraction_of_eps():
    with pytest.raises(UnsupportedError):
        LossyBaseSolver(lossiness=2)


def test_lossy_wrapper_refuses_constant_factor_bases():
    with pytest.raises(UnsupportedError):
        LossyBaseSolver(MatchingVCBaseSolver(), lossiness=1)


def test_alpha_lossy_base_pads_to_alpha_times_the_optimum():
    inst = ProblemInstance.vc(cycle_graph(6))
    full = AlphaLossyBaseSolver(2, lossiness=1)
    sol = full.solve(inst, Fraction(1, 10))
    assert full.alpha == 2
    assert sol.size == 6
    assert verify_solution(inst, sol)
    assert AlphaLossyBaseSolver(2, lossiness=Fraction(1, 2)).solve(inst, Fraction(1, 10)).size == 4


def test_alpha_lossy_base_is_for_minimization():
    with pytest.raises(UnsupportedError):
        AlphaLossyBaseSolver(2).solve(ProblemInstance.independent_set(Graph(3)), Fraction(1, 2))
    with pytest.raises(UnsupportedError):
        AlphaLossyBaseSolver(Fraction(1, 2))


def test_matching_solver_is_a_two_approximation():
    base = MatchingVCBaseSolver()
    inst = ProblemInstance.vc(cycle_graph(6))
    sol = base.solve(inst, Fraction(1, 10))
    assert verify_solution(inst, sol)
    assert sol.size <= 2 * brute_opt(inst)[0]
    assert base.alpha == 2


def test_matching_solver_only_handles_vc():
    with pytest.raises(UnsupportedError):
        MatchingVCBaseSolver().solve(ProblemInstance.fvs(cycle_graph(3)), Fraction(1, 2))


def test_branching_solver_respects_the_bound():
    solver = BranchingVCSolver()
    assert solver.solve(ProblemInstance.vc(complete_graph(4)), bound=3).size == 3
    with pytest.raises(FrameworkError):
        solver.solve(ProblemInstance.vc(complete_graph(4)), bound=1)


def test_brute_by_size_extracts_on_request():
    solver = BruteBySizeSolver(extract=True)
    inst = ProblemInstance.fvs(two_triangles())
    sol = solver.solve(inst, bound=4)
    assert sol.size == 2
    assert verify_solution(inst, sol)


def test_default_by_size_per_kind():
    assert isinstance(default_by_size(ProblemKind.VC), BranchingVCSolver)
    assert isinstance(default_by_size(ProblemKind.FVS), BruteBySizeSolver)


def test_checked_rejects_infeasible_answers():
    with pytest.raises(FrameworkError):
        checked(ProblemInstance.vc(path_graph(3)), Solution.of_vertices({1}), "test solver")


@pytest.mark.property_based
@given(graphs(max_n=9), st.sampled_from([Fraction(1, 10), Fraction(1, 2), Fraction(1)]))
@settings(max_examples=60, deadline=None)
def test_lossy_solver_stays_within_its_guarantee(G, eps):
    base = LossyBaseSolver(lossiness=1)
    for kind in (ProblemKind.VC, ProblemKind.IS):
        inst = ProblemInstance(kind, G)
        opt, _ = brute_opt(inst)
        sol = base.solve(inst, eps)
        assert verify_solution(inst, sol)
        if kind.maximize:
            assert sol.size >= (1 - eps) * opt
        else:
            assert sol.size <= (1 + eps) * opt
