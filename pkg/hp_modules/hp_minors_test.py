from hp_modules.hp_graph import complete_graph, cycle_graph, path_graph, star_graph
from hp_modules.hp_minors import MinorModel, find_minor_model, minor_model_violation, verify_minor_model


def test_triangle_model_in_c4():
    phi = {1: frozenset({1, 2}), 2: frozenset({3}), 3: frozenset({4})}
    assert verify_minor_model(MinorModel(cycle_graph(4), cycle_graph(3), phi))


def test_p3_has_no_triangle_model():
    phi = {1: frozenset({1}), 2: frozenset({2}), 3: frozenset({3})}
    assert not verify_minor_model(MinorModel(path_graph(3), cycle_graph(3), phi))
    assert find_minor_model(path_graph(3), cycle_graph(3)) is None


def test_violations_are_named():
    host = path_graph(4)
    overlapping = {1: frozenset({1, 2}), 2: frozenset({2, 3})}
    assert "lies in the branch sets" in minor_model_violation(MinorModel(host, path_graph(2), overlapping))
    split = {1: frozenset({1, 3}), 2: frozenset({4})}
    assert "not connected" in minor_model_violation(MinorModel(host, path_graph(2), split))
    empty = {1: frozenset(), 2: frozenset({4})}
    assert "empty" in minor_model_violation(MinorModel(host, path_graph(2), empty))


def test_search_finds_k4_in_itself():
    host = complete_graph(4)
    phi = find_minor_model(host, complete_graph(4))
    assert phi is not None
    assert verify_minor_model(MinorModel(host, complete_graph(4), phi))


def test_spanning_models_use_every_host_vertex():
    host = cycle_graph(6)
    phi = find_minor_model(host, cycle_graph(3), spanning=True)
    assert phi is not None
    assert set().union(*phi.values()) == set(host.vertices)
    assert verify_minor_model(MinorModel(host, cycle_graph(3), phi))


def test_star_has_no_cycle_minor():
    assert find_minor_model(star_graph(5), cycle_graph(3)) is None
