import json

import pytest

from cli import cli_config
from cli.cli_commands import run
from cli.cli_scheme_handler import make_base, ratio, run_approx
from hp_modules.hp_base_solvers import AlphaLossyBaseSolver, ExactBaseSolver, LossyBaseSolver, MatchingVCBaseSolver
from hp_modules.hp_decomp import HTreeDecomposition
from hp_modules.hp_errors import UnsupportedError
from hp_modules.hp_family import FamilyPredicate
from hp_modules.hp_formats import format_graph, format_vertex_line
from hp_modules.hp_graph import Graph, cycle_graph, wheel_graph
from hp_modules.hp_problems import Case, ProblemInstance, ProblemKind, verify_solution

TWO_LEAF_HTD = """htd 3 5
b 1 1
b 2 1 2 3
b 3 1 4 5
t 1 2
t 1 3
l 2 3 4 5
f FORESTS
"""


@pytest.fixture
def write(tmp_path):
    def _write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return _write


@pytest.fixture
def two_leaf_files(write):
    graph = write("two-leaf.gr", format_graph(Graph(5, [(1, 2), (2, 3), (1, 4), (4, 5)])))
    return graph, write("two-leaf.htd", TWO_LEAF_HTD)


# ─── EXIT CODES ───
def test_missing_subcommand_is_a_usage_error():
    assert run([]) == cli_config.EXIT_USAGE


def test_help_exits_cleanly(capsys):
    assert run(["--help"]) == cli_config.EXIT_OK
    assert "approx" in capsys.readouterr().out


def test_unknown_problem_is_a_usage_error(write):
    graph = write("c4.gr", format_graph(cycle_graph(4)))
    assert run(["solve", "--problem", "tsp", "--engine", "brute", "--graph", graph]) == cli_config.EXIT_USAGE


def test_malformed_graph_file(write):
    graph = write("bad.gr", "e 1 2\n")
    assert run(["solve", "--problem", "vc", "--engine", "brute", "--graph", graph]) == cli_config.EXIT_USAGE


def test_missing_graph_file(tmp_path):
    code = run(["solve", "--problem", "vc", "--engine", "brute", "--graph", str(tmp_path / "absent.gr")])
    assert code == cli_config.EXIT_USAGE


def test_epsilon_out_of_range(write):
    graph = write("w4.gr", format_graph(wheel_graph(4)))
    modulator = write("w4.mod", format_vertex_line("m", {5}))
    args = ["approx", "--problem", "vc", "--param", "mod", "--eps", "1.5", "--graph", graph, "--modulator", modulator]
    assert run(args) == cli_config.EXIT_USAGE


def test_infeasible_connected_vertex_cover(write):
    graph = write("split.gr", format_graph(Graph(4, [(1, 2), (3, 4)])))
    assert run(["solve", "--problem", "cvc", "--engine", "brute", "--graph", graph]) == cli_config.EXIT_FAILURE


def test_unsupported_scheme_is_a_usage_error(two_leaf_files):
    graph, htd = two_leaf_files
    args = ["approx", "--problem", "cvc", "--param", "twh", "--eps", "0.5", "--graph", graph, "--htd", htd]
    assert run(args) == cli_config.EXIT_USAGE


# ─── SOLVE ───
def test_solve_vertex_cover_of_c4(write, capsys):
    graph = write("c4.gr", format_graph(cycle_graph(4)))
    assert run(["solve", "--problem", "vc", "--engine", "brute", "--graph", graph, "--json"]) == cli_config.EXIT_OK
    row = json.loads(capsys.readouterr().out)
    assert row == {"problem": "vc", "engine": "brute", "value": 2, "witness": [1, 3]}


def test_solve_with_dp_prints_tsv(write, capsys):
    graph = write("c4.gr", format_graph(cycle_graph(4)))
    assert run(["solve", "--problem", "is", "--engine", "td-dp", "--graph", graph]) == cli_config.EXIT_OK
    header, line = capsys.readouterr().out.splitlines()
    assert header.split("\t") == ["problem", "engine", "value", "witness"]
    assert line.split("\t")[:3] == ["is", "td-dp", "2"]


def test_solve_blue_white_from_file(write, capsys):
    graph = write("star.gr", "p gr 4 3\ne 1 2\ne 1 3\ne 1 4\nblue 2 3\n")
    assert run(["solve", "--problem", "bwds", "--engine", "td-dp", "--graph", graph, "--json"]) == cli_config.EXIT_OK
    assert json.loads(capsys.readouterr().out)["value"] == 3


# ─── GEN AND VALIDATE ───
def test_generated_suite_validates(tmp_path, capsys):
    out = tmp_path / "suite"
    assert run(["gen", "--spec", "vc-twh", "--seed", "3", "--out", str(out), "--count", "2"]) == cli_config.EXIT_OK
    manifest = (out / "vc-twh.manifest").read_text().splitlines()
    assert len(manifest) == 2
    assert manifest[0] == "inst 3 vc-twh"
    capsys.readouterr()
    code = run(["validate", "--graph", str(out / "vc-twh-3.gr"), "--htd", str(out / "vc-twh-3.htd"), "--json"])
    assert code == cli_config.EXIT_OK
    assert json.loads(capsys.readouterr().out)["result"] == "ok"


def test_validation_failure_exits_with_1(write, capsys):
    graph = write("extra.gr", format_graph(Graph(5, [(1, 2), (2, 3), (1, 4), (4, 5), (3, 5)])))
    htd = write("two-leaf.htd", TWO_LEAF_HTD)
    assert run(["validate", "--graph", graph, "--htd", htd, "--json"]) == cli_config.EXIT_FAILURE
    assert json.loads(capsys.readouterr().out)["result"].startswith("violation of condition 2")


# ─── APPROX ───
def test_approx_ocean_above_the_oracle_cap(write, capsys):
    edges = [(2 * i - 1, 2 * i) for i in range(1, 101)] + [(200 + j, 2 * j - 1) for j in range(1, 11)]
    graph = write("matching.gr", format_graph(Graph(210, edges)))
    modulator = write("matching.mod", format_vertex_line("m", range(201, 211)))
    args = ["approx", "--problem", "vc", "--param", "mod", "--eps", "0.3", "--graph", graph,
            "--modulator", modulator, "--family", "FORESTS", "--json"]
    assert run(args) == cli_config.EXIT_OK
    row = json.loads(capsys.readouterr().out)
    assert row["case"] == "OCEAN"
    assert row["alg_value"] == 110
    assert row["opt_value"] is None
    assert row["ratio"] is None
    assert row["eps"] == 0.3
    assert len(row["solution"]) == 110


def test_approx_twh_rejects_invalid_decomposition(write):
    graph = write("extra.gr", format_graph(Graph(5, [(1, 2), (2, 3), (1, 4), (4, 5), (3, 5)])))
    htd = write("two-leaf.htd", TWO_LEAF_HTD)
    args = ["approx", "--problem", "vc", "--param", "twh", "--eps", "0.5", "--graph", graph, "--htd", htd]
    assert run(args) == cli_config.EXIT_FAILURE


def test_approx_twh_on_small_instance(two_leaf_files, capsys):
    graph, htd = two_leaf_files
    args = ["approx", "--problem", "vc", "--param", "twh", "--eps", "0.5", "--graph", graph, "--htd", htd, "--json"]
    assert run(args) == cli_config.EXIT_OK
    row = json.loads(capsys.readouterr().out)
    assert row["opt_value"] == 2
    assert row["ratio"] <= 1.5


# ─── BENCH ───
def test_bench_report_is_deterministic(tmp_path, capsys):
    out = tmp_path / "suite"
    assert run(["gen", "--spec", "vc-mod", "--seed", "1", "--out", str(out), "--count", "2"]) == cli_config.EXIT_OK
    manifest = str(out / "vc-mod.manifest")
    reports = []
    for name in ("first.json", "second.json"):
        report = tmp_path / name
        args = ["bench", "--suite", manifest, "--eps-list", "0.2,0.5", "--report", str(report), "--workers", "1"]
        assert run(args) == cli_config.EXIT_OK
        reports.append(json.loads(report.read_text()))
    first, second = reports
    assert len(first) == 4
    for row in first:
        assert list(row) == list(cli_config.REPORT_KEYS)
        assert row["ratio"] is not None and row["ratio"] <= 1 + row["eps"]
    strip = [{k: v for k, v in row.items() if k != "time_ms"} for row in first]
    assert strip == [{k: v for k, v in row.items() if k != "time_ms"} for row in second]


def test_bench_rejects_bad_epsilon(tmp_path, write):
    manifest = write("m.manifest", "inst 1 vc-mod\n")
    args = ["bench", "--suite", manifest, "--eps-list", "0.5,2", "--report", str(tmp_path / "r.json")]
    assert run(args) == cli_config.EXIT_USAGE


# ─── SCHEME SELECTION ───
def test_make_base_choices():
    assert isinstance(make_base(ProblemKind.VC), ExactBaseSolver)
    assert isinstance(make_base(ProblemKind.VC, alpha=2), MatchingVCBaseSolver)
    lossy = make_base(ProblemKind.IS, lossiness="0.5")
    assert isinstance(lossy, LossyBaseSolver)
    with pytest.raises(UnsupportedError):
        make_base(ProblemKind.FVS, alpha=2)


def test_guess_variant_reports_its_own_case():
    result = run_approx(
        ProblemKind.VC, "mod", wheel_graph(5), 0.5, modulator=frozenset({6}),
        family=FamilyPredicate.treewidth(2), variant="guess",
    )
    assert result.case == Case.GUESS
    assert result.value == 4


def test_ratio():
    assert ratio(0, 0) == 1.0
    assert ratio(3, 2) == 1.5
    assert ratio(3, None) is None


def test_make_base_alpha_with_lossiness():
    assert isinstance(make_base(ProblemKind.VC, alpha=2, lossiness="1"), AlphaLossyBaseSolver)
    assert make_base(ProblemKind.FVS, alpha=2, lossiness="1").alpha == 2
    with pytest.raises(UnsupportedError):
        make_base(ProblemKind.IS, alpha=2, lossiness="1")


def five_edges_among_isolated_vertices() -> Graph:
    return Graph(21, [(2 * i, 2 * i + 1) for i in range(1, 6)])


def test_alpha_lossy_modulator_scheme_keeps_its_factor():
    G = five_edges_among_isolated_vertices()
    result = run_approx(
        ProblemKind.VC, "mod", G, "1", modulator=frozenset({1}),
        family=FamilyPredicate.forests(), alpha=2, lossiness=1,
    )
    assert verify_solution(ProblemInstance.vc(G), result.solution)
    assert result.value <= 3 * 5


def test_alpha_lossy_htd_scheme_keeps_its_factor():
    G = five_edges_among_isolated_vertices()
    D = HTreeDecomposition(
        {1: frozenset({1}), 2: frozenset(range(1, 22))},
        ((1, 2),),
        frozenset(range(2, 22)),
        FamilyPredicate.forests(),
    )
    result = run_approx(ProblemKind.VC, "twh", G, "1", htd=D, alpha=2, lossiness=1)
    assert verify_solution(ProblemInstance.vc(G), result.solution)
    assert result.value <= 3 * 5


def test_modulator_scheme_needs_a_family():
    with pytest.raises(UnsupportedError):
        run_approx(ProblemKind.VC, "mod", wheel_graph(5), 0.5, modulator=frozenset({6}))


def test_approx_without_family_is_a_usage_error(write):
    graph = write("w4.gr", format_graph(wheel_graph(4)))
    modulator = write("w4.mod", format_vertex_line("m", {5}))
    args = ["approx", "--problem", "vc", "--param", "mod", "--eps", "0.5", "--graph", graph, "--modulator", modulator]
    assert run(args) == cli_config.EXIT_USAGE


def test_approx_rejects_a_non_modulator(write):
    graph = write("w4.gr", format_graph(wheel_graph(4)))
    modulator = write("w4.mod", format_vertex_line("m", {5}))
    args = ["approx", "--problem", "is", "--param", "mod", "--eps", "0.5", "--graph", graph,
            "--modulator", modulator, "--family", "FORESTS"]
    assert run(args) == cli_config.EXIT_USAGE
