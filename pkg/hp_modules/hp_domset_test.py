from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hp_modules.hp_bucket_ocean import ds_mod_fptas
from hp_modules.hp_decomp import HTreeDecomposition
from hp_modules.hp_domset import (
    AnnotatedDSInstance,
    BWDSInstance,
    annotate_normalize,
    bwds_extract,
    bwds_solve_exact,
    bwds_to_ds,
    contract_annotated,
    dp_bwds_decider,
    ds_gadget_graph,
    gamma_grid,
    pendant_tree_decomposition,
    twh_fptas_ds,
)
from hp_modules.hp_errors import GraphInputError, UnsupportedError
from hp_modules.hp_family import FamilyPredicate
from hp_modules.hp_gen import generate
from hp_modules.hp_graph import Graph, delete_vertices, iter_subsets, path_graph, star_graph
from hp_modules.hp_problems import Case, ProblemInstance, ProblemKind, verify_solution
from hp_modules.hp_solvers import brute_opt
from hp_modules.hp_td_dp import td_dp_opt
from hp_modules.hp_testing import graphs_with_subset
from hp_modules.hp_tree import validate_td
from hp_modules.hp_treewidth import build_tree_decomposition


# ─── ANNOTATED INSTANCES ───
def test_dominated_vertices_must_be_independent():
    with pytest.raises(GraphInputError):
        AnnotatedDSInstance(path_graph(3), {1, 2})


def test_normalizing_with_everything_dominated_needs_nothing():
    G = path_graph(4)
    inst = annotate_normalize(G, G.vertices)
    assert inst.graph.m == 0
    assert brute_opt(inst.problem())[0] == 0


def test_contraction_wakes_the_merged_vertex():
    inst = AnnotatedDSInstance(path_graph(3), {1, 3})
    contracted = contract_annotated(inst, 1, 2)
    assert contracted.graph == path_graph(2)
    assert contracted.dominated == frozenset({2})


@st.composite
def annotated_instances(draw, max_n: int = 10):
    """(G, D) with D an independent set of G, plus one edge of G."""
    n = draw(st.integers(min_value=2, max_value=max_n))
    pairs = list(combinations(range(1, n + 1), 2))
    G = Graph(n, draw(st.lists(st.sampled_from(pairs), unique=True, min_size=1)))
    order = draw(st.permutations(list(G.vertices)))
    D = set()
    for v in order[:draw(st.integers(min_value=0, max_value=G.n))]:
        if not any(G.has_edge(v, d) for d in D):
            D.add(v)
    edge = draw(st.sampled_from(sorted(G.edges)))
    return G, frozenset(D), edge


@pytest.mark.property_based
@given(graphs_with_subset(max_n=9))
@settings(max_examples=60, deadline=None)
def test_normalizing_keeps_the_annotated_optimum(case):
    G, D = case
    before, _ = brute_opt(ProblemInstance.dominating_set(G, D))
    after, _ = brute_opt(annotate_normalize(G, D).problem())
    assert before == after


@pytest.mark.property_based
@given(annotated_instances())
@settings(max_examples=100, deadline=None)
def test_contraction_never_raises_the_annotated_optimum(case):
    G, D, (u, v) = case
    inst = AnnotatedDSInstance(G, D)
    contracted = contract_annotated(inst, u, v)
    assert brute_opt(contracted.problem())[0] <= brute_opt(inst.problem())[0]


# ─── GADGETS ───
@pytest.mark.parametrize("k, edges", [(2, 6), (3, 21)])
def test_gamma_grid_edge_counts(k, edges):
    assert gamma_grid(k).m == edges


def test_gamma_grid_has_triangular_faces():
    G = gamma_grid(3)
    assert G.has_edge(1, 2) and G.has_edge(1, 4) and G.has_edge(2, 4)


def test_gamma_grid_needs_k_at_least_2():
    with pytest.raises(UnsupportedError):
        gamma_grid(1)


def test_gadget_joins_v_star_to_rt():
    G = path_graph(4)
    gadget, v_star, mapping = ds_gadget_graph(G, {2, 3, 4}, {2})
    assert v_star == 4
    assert mapping == {2: 1, 3: 2, 4: 3}
    assert gadget.neighbors(v_star) == frozenset({1})


def test_gadget_with_empty_rt_leaves_v_star_isolated():
    gadget, v_star, _ = ds_gadget_graph(path_graph(3), {1, 2, 3}, ())
    assert gadget.degree(v_star) == 0


def test_gadget_rt_must_lie_in_vt():
    with pytest.raises(GraphInputError):
        ds_gadget_graph(path_graph(3), {1, 2}, {3})


def test_gadget_minus_rt_stays_in_the_base_family():
    G, D = two_leaf_instance()
    for t in D.leaves:
        R_t = D.rest_part(t)
        gadget, _, mapping = ds_gadget_graph(G, D.bags[t], R_t)
        rest, _ = delete_vertices(gadget, {mapping[r] for r in R_t})
        assert D.family.member(rest)


# ─── BLUE-WHITE INSTANCES ───
def test_pendant_reduction_without_blue_is_identity():
    G = path_graph(4)
    H, k = bwds_to_ds(BWDSInstance(G, ()))
    assert H == G
    assert k == 4


def test_pendant_reduction_rejects_large_budgets():
    with pytest.raises(UnsupportedError):
        bwds_to_ds(BWDSInstance(path_graph(3), {1}, k=4))


def test_blue_vertices_are_forced():
    G = star_graph(3)
    value, sol = bwds_solve_exact(BWDSInstance(G, {2, 3}))
    assert value == 3
    assert verify_solution(ProblemInstance.bwds(G, {2, 3}), sol)


def all_graphs(n: int):
    pairs = list(combinations(range(1, n + 1), 2))
    for chosen in iter_subsets(pairs):
        yield Graph(n, chosen)


@pytest.mark.slow
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_pendant_reduction_preserves_the_optimum(n):
    for G in all_graphs(n):
        T = build_tree_decomposition(G)
        for blue in iter_subsets(list(G.vertices)):
            expected, _ = brute_opt(ProblemInstance.bwds(G, blue))
            H, _ = bwds_to_ds(BWDSInstance(G, blue))
            T_H = pendant_tree_decomposition(T, G.n, blue)
            assert validate_td(H, T_H)
            assert td_dp_opt(ProblemKind.DS, H, T_H)[0] == expected, (sorted(G.edges), sorted(blue))


def test_extraction_on_a_star():
    result = bwds_extract(dp_bwds_decider, BWDSInstance(star_graph(4), ()))
    assert result.solution.vertices == frozenset({1})
    assert result.calls == 3
    assert result.phase_calls == {"budget": 2, "force": 1}


def test_extraction_keeps_blue_vertices():
    G = path_graph(5)
    result = bwds_extract(dp_bwds_decider, BWDSInstance(G, {1}))
    assert 1 in result.solution.vertices
    assert result.solution.size == brute_opt(ProblemInstance.bwds(G, {1}))[0]


# ─── H-TREEWIDTH SCHEME ───
def two_leaf_instance():
    # Separator {1} with pendant paths 2-3 and 4-5 on either side.
    G = Graph(5, [(1, 2), (2, 3), (1, 4), (4, 5)])
    D = HTreeDecomposition(
        {1: frozenset({1}), 2: frozenset({1, 2, 3}), 3: frozenset({1, 4, 5})},
        ((1, 2), (1, 3)),
        frozenset({2, 3, 4, 5}),
        FamilyPredicate.forests(),
    )
    return G, D


def test_small_leaves_are_all_bad_and_solved_exactly():
    G, D = two_leaf_instance()
    result = twh_fptas_ds(G, D, Fraction(1, 2), ds_mod_fptas)
    assert result.stats["good"] == 0
    assert result.value == brute_opt(ProblemInstance.dominating_set(G))[0] == 2


def test_decomposition_without_separators_is_exact():
    G = path_graph(6)
    everything = frozenset(G.vertices)
    D = HTreeDecomposition({1: everything}, (), everything, FamilyPredicate.forests())
    result = twh_fptas_ds(G, D, Fraction(1, 2), ds_mod_fptas)
    assert result.value == 2


def p3s_under_a_separator(count: int):
    """Separator 1 joined to the end of the first of `count` disjoint P3s, all in one leaf."""
    edges = [(1, 2)]
    for i in range(count):
        a = 3 * i + 2
        edges += [(a, a + 1), (a + 1, a + 2)]
    n = 3 * count + 1
    G = Graph(n, edges)
    base = frozenset(range(2, n + 1))
    D = HTreeDecomposition({1: frozenset({1}), 2: base | {1}}, ((1, 2),), base, FamilyPredicate.forests())
    return G, D


def test_large_leaf_is_good():
    G, D = p3s_under_a_separator(32)
    eps = Fraction(1)
    result = twh_fptas_ds(G, D, eps, ds_mod_fptas)
    opt, _ = td_dp_opt(ProblemKind.DS, G, build_tree_decomposition(G))
    assert result.stats["good"] == 1
    assert result.case == Case.OCEAN
    assert verify_solution(ProblemInstance.dominating_set(G), result.solution)
    assert result.value <= (1 + eps) * opt


@pytest.mark.slow
def test_ds_suite_stays_within_guarantee():
    for eps in (Fraction(1, 10), Fraction(1, 2), Fraction(1)):
        for seed in range(20):
            inst = generate("ds-twh", seed)
            result = twh_fptas_ds(inst.graph, inst.htd, eps, ds_mod_fptas)
            problem = ProblemInstance.dominating_set(inst.graph)
            opt, _ = brute_opt(problem)
            assert verify_solution(problem, result.solution)
            assert result.value <= (1 + eps) * opt, (seed, eps)
