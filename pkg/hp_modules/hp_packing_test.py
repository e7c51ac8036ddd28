import pytest
from hypothesis import given, settings

from hp_modules.hp_graph import Graph, complete_graph, cycle_graph, disjoint_union, path_graph, star_graph
from hp_modules.hp_packing import brute_packing, extract_packing
from hp_modules.hp_problems import ProblemInstance, Solution, verify_solution
from hp_modules.hp_testing import graphs, two_triangles


def packing_decider(template: ProblemInstance):
    def decide(G: Graph, k: int) -> bool:
        return brute_packing(template.with_graph(G, {})).size >= k
    return decide


def test_two_disjoint_triangles():
    inst = ProblemInstance.cycle_packing(two_triangles())
    packing = brute_packing(inst)
    assert packing.size == 2
    assert verify_solution(inst, Solution.of_packing(packing))


def test_k4_holds_one_cycle():
    assert brute_packing(ProblemInstance.cycle_packing(complete_graph(4))).size == 1


def test_forest_holds_no_cycle():
    assert brute_packing(ProblemInstance.cycle_packing(path_graph(6))).size == 0


def test_subgraph_packing_of_paths():
    inst = ProblemInstance.subgraph_packing(path_graph(6), [path_graph(3)])
    assert brute_packing(inst).size == 2


def test_minor_packing_with_path_pattern():
    inst = ProblemInstance.minor_packing(cycle_graph(6), [path_graph(3)])
    assert brute_packing(inst).size == 2


def test_extraction_of_two_triangles():
    G = two_triangles()
    inst = ProblemInstance.cycle_packing(G)
    result = extract_packing(packing_decider(inst), inst, 2)
    assert result.found
    assert result.solution.size == 2
    assert verify_solution(inst, result.solution)
    assert result.calls <= 1 + G.n + 2 * G.m


def test_extraction_rejects_too_large_budget():
    inst = ProblemInstance.cycle_packing(two_triangles())
    result = extract_packing(packing_decider(inst), inst, 3)
    assert not result.found
    assert result.calls == 1


def test_extraction_contracts_long_cycles():
    inst = ProblemInstance.cycle_packing(cycle_graph(6))
    result = extract_packing(packing_decider(inst), inst, 1)
    assert result.found
    (tuple_,) = result.solution.packing.tuples
    assert tuple_.vertices == frozenset(range(1, 7))
    assert verify_solution(inst, result.solution)


def test_subgraph_extraction_returns_pattern_copies():
    inst = ProblemInstance.subgraph_packing(star_graph(3), [path_graph(3)])
    result = extract_packing(packing_decider(inst), inst, 1)
    assert result.found
    assert verify_solution(inst, result.solution)
    assert result.solution.packing.tuples[0].vertices <= frozenset({1, 2, 3, 4})


@pytest.mark.property_based
@given(graphs(max_n=8))
@settings(max_examples=40, deadline=None)
def test_extraction_matches_the_maximum(G):
    inst = ProblemInstance.cycle_packing(G)
    k = brute_packing(inst).size
    result = extract_packing(packing_decider(inst), inst, k)
    assert result.found
    assert result.solution.size == k
    assert verify_solution(inst, result.solution)
    assert result.calls <= 1 + G.n + 2 * G.m


@pytest.mark.property_based
@given(graphs(max_n=7), graphs(max_n=7))
@settings(max_examples=30, deadline=None)
def test_packing_is_additive_over_disjoint_union(G1, G2):
    union = disjoint_union(G1, G2)
    whole = brute_packing(ProblemInstance.cycle_packing(union)).size
    left = brute_packing(ProblemInstance.cycle_packing(G1)).size
    right = brute_packing(ProblemInstance.cycle_packing(G2)).size
    assert whole == left + right
