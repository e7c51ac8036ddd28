import pytest

from hp_modules.hp_errors import GraphInputError
from hp_modules.hp_graph import Graph, complete_graph, cycle_graph, path_graph
from hp_modules.hp_problems import (
    TRIANGLE,
    ModelTuple,
    PackingSolution,
    ProblemInstance,
    ProblemKind,
    Solution,
    verify_solution,
)
from hp_modules.hp_testing import two_triangles


def triangle_tuple(a: int, b: int, c: int) -> ModelTuple:
    edges = frozenset({tuple(sorted(e)) for e in ((a, b), (b, c), (a, c))})
    return ModelTuple(frozenset({a, b, c}), edges, TRIANGLE, {1: frozenset({a}), 2: frozenset({b}), 3: frozenset({c})})


def test_vertex_cover_feasibility():
    inst = ProblemInstance.vc(cycle_graph(4))
    assert verify_solution(inst, Solution.of_vertices({1, 3}))
    assert not verify_solution(inst, Solution.of_vertices({1, 2}))


def test_feedback_vertex_set_feasibility():
    inst = ProblemInstance.fvs(complete_graph(4))
    assert verify_solution(inst, Solution.of_vertices({1, 2}))
    assert not verify_solution(inst, Solution.of_vertices({1}))


def test_annotated_dominating_set_skips_dominated_vertices():
    inst = ProblemInstance.dominating_set(path_graph(3), dominated={1, 3})
    assert verify_solution(inst, Solution.of_vertices({1}))
    assert not verify_solution(inst, Solution.of_vertices(()))
    assert not verify_solution(ProblemInstance.dominating_set(path_graph(3)), Solution.of_vertices({1}))


def test_blue_vertices_must_be_chosen():
    inst = ProblemInstance.bwds(path_graph(3), blue={3})
    assert not verify_solution(inst, Solution.of_vertices({2}))
    assert verify_solution(inst, Solution.of_vertices({2, 3}))


def test_sivc_components_must_touch_terminals():
    inst = ProblemInstance.sivc(path_graph(4), terminals={1})
    assert not verify_solution(inst, Solution.of_vertices({1, 3}))
    assert verify_solution(inst, Solution.of_vertices({1, 2, 3}))
    assert not verify_solution(inst, Solution.of_vertices({2, 3}))


def test_connected_vertex_cover_needs_connectivity():
    inst = ProblemInstance.cvc(path_graph(5))
    assert not verify_solution(inst, Solution.of_vertices({2, 4}))
    assert verify_solution(inst, Solution.of_vertices({2, 3, 4}))


def test_triangle_packing_accepts_disjoint_triangles():
    inst = ProblemInstance.cycle_packing(two_triangles())
    packing = PackingSolution((triangle_tuple(1, 2, 3), triangle_tuple(4, 5, 6)))
    assert verify_solution(inst, Solution.of_packing(packing))


def test_overlapping_tuples_are_rejected():
    G = Graph(5, [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)])
    inst = ProblemInstance.cycle_packing(G)
    packing = PackingSolution((triangle_tuple(1, 2, 3), triangle_tuple(3, 4, 5)))
    assert not verify_solution(inst, Solution.of_packing(packing))


def test_tuple_edges_must_exist():
    inst = ProblemInstance.cycle_packing(path_graph(3))
    assert not verify_solution(inst, Solution.of_packing(PackingSolution((triangle_tuple(1, 2, 3),))))


def test_malformed_witnesses_raise():
    inst = ProblemInstance.vc(cycle_graph(4))
    with pytest.raises(GraphInputError):
        verify_solution(inst, Solution.of_vertices({9}))
    with pytest.raises(GraphInputError):
        verify_solution(inst, Solution.of_packing(PackingSolution()))
    with pytest.raises(GraphInputError):
        verify_solution(ProblemInstance.cycle_packing(two_triangles()), Solution.of_vertices({1}))


def test_cycle_packing_defaults_to_triangle_pattern():
    assert ProblemInstance.cycle_packing(path_graph(2)).patterns == (TRIANGLE,)


def test_packing_patterns_must_be_connected():
    with pytest.raises(GraphInputError):
        ProblemInstance.subgraph_packing(path_graph(4), [Graph(2)])


def test_derived_instances_carry_annotations():
    inst = ProblemInstance.dominating_set(path_graph(4), dominated={1, 4}, forced={2})
    sub, mapping = inst.without({1})
    assert mapping == {2: 1, 3: 2, 4: 3}
    assert sub.dominated == frozenset({3})
    assert sub.forced == frozenset({1})


def test_maximization_kinds():
    assert ProblemKind.IS.maximize
    assert ProblemKind.CYCLE_PACKING.maximize
    assert not ProblemKind.CVC.maximize
