import pytest

from hp_modules.hp_errors import GraphInputError
from hp_modules.hp_family import FamilyPredicate, Membership
from hp_modules.hp_graph import Graph, complete_graph, cycle_graph, disjoint_union, path_graph


def test_edgeless_family():
    assert FamilyPredicate.edgeless().contains(Graph(4)) == Membership.YES
    assert FamilyPredicate.edgeless().contains(path_graph(2)) == Membership.NO


def test_forest_family():
    assert FamilyPredicate.forests().member(path_graph(5))
    assert not FamilyPredicate.forests().member(cycle_graph(3))


def test_treewidth_family_is_decided_per_component():
    G = disjoint_union(complete_graph(3), cycle_graph(5))
    assert FamilyPredicate.treewidth(2).contains(G) == Membership.YES
    assert FamilyPredicate.treewidth(1).contains(G) == Membership.NO
    assert FamilyPredicate.treewidth(2).contains(disjoint_union(G, complete_graph(4))) == Membership.NO


def test_eta_of_each_family():
    assert FamilyPredicate.edgeless().eta == 0
    assert FamilyPredicate.forests().eta == 1
    assert FamilyPredicate.treewidth(3).eta == 3


def test_negative_width_is_rejected():
    with pytest.raises(GraphInputError):
        FamilyPredicate.treewidth(-1)


def test_string_form():
    assert str(FamilyPredicate.treewidth(2)) == "TW 2"
    assert str(FamilyPredicate.forests()) == "FORESTS"
