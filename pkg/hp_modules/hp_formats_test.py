import pytest

from hp_modules.hp_decomp import HTreeDecomposition
from hp_modules.hp_errors import GraphInputError
from hp_modules.hp_family import FamilyPredicate
from hp_modules.hp_formats import (
    format_graph,
    format_helim,
    format_htd,
    format_manifest,
    format_vertex_line,
    parse_blue,
    parse_graph,
    parse_helim,
    parse_htd,
    parse_manifest,
    parse_modulator,
    parse_patterns,
    parse_td,
    parse_terminals,
    read_text,
)
from hp_modules.hp_graph import Graph, complete_graph, path_graph, wheel_graph
from hp_modules.hp_tree import TreeDecomposition

TWO_LEAF_HTD = """htd 3 5
b 1 1
b 2 1 2 3
b 3 1 4 5
t 1 2
t 1 3
l 2 3 4 5
f FORESTS
"""


# ─── GRAPHS ───
def test_parse_graph_skips_comments_and_blanks():
    text = "c a path\n\np gr 3 2\ne 1 2\nc middle\ne 2 3\n"
    assert parse_graph(text) == path_graph(3)


def test_format_graph():
    assert format_graph(path_graph(3)) == "p gr 3 2\ne 1 2\ne 2 3\n"
    assert format_graph(Graph(2), comment="lonely").startswith("c lonely\n")


def test_graph_text_reads_back():
    G = wheel_graph(5)
    assert parse_graph(format_graph(G)) == G


def test_edge_count_mismatch_only_warns():
    assert parse_graph("p gr 3 5\ne 1 2\n").m == 1


@pytest.mark.parametrize(
    "text",
    [
        "e 1 2\np gr 2 1\n",
        "c nothing here\n",
        "p gr 2 1\ne 1 x\n",
        "p gr 2 1\ne 1\n",
        "p gr 2 1\nq 1 2\n",
        "p graph 2 1\n",
        "p gr 2 1\np gr 2 1\n",
        "p gr 2 1\ne 1 3\n",
        "p gr 2 1\ne 1 1\n",
    ],
)
def test_malformed_graphs(text):
    with pytest.raises(GraphInputError):
        parse_graph(text)


def test_vertex_lines():
    text = "p gr 5 0\nblue 1 3\nblue 2\nx 4\nm 5\n"
    assert parse_graph(text).n == 5
    assert parse_blue(text) == frozenset({1, 2, 3})
    assert parse_terminals(text) == frozenset({4})
    assert parse_modulator(text) == frozenset({5})
    assert parse_blue("p gr 2 0\n") == frozenset()


def test_modulator_file_needs_an_m_line():
    with pytest.raises(GraphInputError):
        parse_modulator("c empty\n")
    assert parse_modulator("m\n") == frozenset()


def test_format_vertex_line_sorts():
    assert format_vertex_line("m", {9, 2, 5}) == "m 2 5 9\n"


# ─── DECOMPOSITIONS ───
def test_parse_htd():
    D = parse_htd(TWO_LEAF_HTD)
    assert D.bags == {1: frozenset({1}), 2: frozenset({1, 2, 3}), 3: frozenset({1, 4, 5})}
    assert D.edges == ((1, 2), (1, 3))
    assert D.base == frozenset({2, 3, 4, 5})
    assert D.family == FamilyPredicate.forests()


def test_format_htd():
    D = HTreeDecomposition(
        {1: frozenset({1}), 2: frozenset({1, 2, 3}), 3: frozenset({1, 4, 5})},
        ((1, 2), (1, 3)),
        frozenset({2, 3, 4, 5}),
        FamilyPredicate.forests(),
    )
    assert format_htd(D, 5) == TWO_LEAF_HTD


def test_htd_with_bounded_treewidth_family():
    D = parse_htd("htd 1 3\nb 1 1 2 3\nl 1 2 3\nf TW 2\n")
    assert D.family == FamilyPredicate.treewidth(2)
    assert parse_htd(format_htd(D, 3)).family == FamilyPredicate.treewidth(2)


def test_missing_bag_lines_default_to_empty_bags():
    D = parse_htd("htd 2 1\nb 1 1\nt 1 2\nl\n")
    assert D.bags[2] == frozenset()
    assert D.family == FamilyPredicate.edgeless()


@pytest.mark.parametrize(
    "text",
    [
        "b 1 1\n",
        "htd 1 2\nb 1 1\nb 2 2\n",
        "htd 1 1\nb\n",
        "htd 2 2\nt 1\n",
        "htd 1 1\nf PLANAR\n",
        "htd 1 1\nf TW\n",
        "htd 1 1\nz 1\n",
        "htd 1\n",
    ],
)
def test_malformed_htd(text):
    with pytest.raises(GraphInputError):
        parse_htd(text)


def test_standard_tree_decomposition_text():
    T = TreeDecomposition({1: frozenset({1, 2}), 2: frozenset({2, 3})}, ((1, 2),))
    text = format_htd(T, 3)
    assert text.endswith("t 1 2\nl\n")
    parsed = parse_td(text)
    assert parsed.bags == T.bags
    assert parsed.edges == T.edges


def test_standard_tree_decomposition_rejects_base_vertices():
    with pytest.raises(GraphInputError):
        parse_td(TWO_LEAF_HTD)


def test_helim_round_trip():
    text = "helim 3 3\nb 1 1\nb 2 2\nb 3 3\nt 1 2\nt 1 3\nl 2 3\nf EDGELESS\n"
    E = parse_helim(text)
    assert E.parent == {1: None, 2: 1, 3: 1}
    assert E.base == frozenset({2, 3})
    assert format_helim(E, 3) == text


def test_helim_node_with_two_parents():
    with pytest.raises(GraphInputError):
        parse_helim("helim 3 3\nb 1 1\nb 2 2\nb 3 3\nt 1 3\nt 2 3\nl 3\n")


def test_helim_edge_to_unknown_node():
    with pytest.raises(GraphInputError):
        parse_helim("helim 1 1\nb 1 1\nt 1 7\nl 1\n")


# ─── PATTERNS AND MANIFESTS ───
def test_parse_patterns():
    text = "c two patterns\n" + format_graph(complete_graph(3)) + format_graph(path_graph(3))
    assert parse_patterns(text) == (complete_graph(3), path_graph(3))


def test_pattern_file_needs_a_header():
    with pytest.raises(GraphInputError):
        parse_patterns("c nothing\n")


def test_manifest():
    text = "c suite\ninst 3 vc-mod\ninst 4 fvs-twh\n"
    entries = parse_manifest(text)
    assert entries == [(3, "vc-mod"), (4, "fvs-twh")]
    assert format_manifest(entries) == "inst 3 vc-mod\ninst 4 fvs-twh\n"


@pytest.mark.parametrize("text", ["inst 3\n", "inst x vc-mod\n", "seed 3 vc-mod\n"])
def test_malformed_manifest(text):
    with pytest.raises(GraphInputError):
        parse_manifest(text)


def test_read_text_reports_missing_files(tmp_path):
    with pytest.raises(GraphInputError):
        read_text(tmp_path / "absent.gr")
    path = tmp_path / "p3.gr"
    path.write_text(format_graph(path_graph(3)))
    assert parse_graph(read_text(path)) == path_graph(3)
