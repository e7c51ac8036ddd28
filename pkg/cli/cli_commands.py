"""Argument parsing and the five subcommands: gen, validate, solve, approx, bench."""
import argparse
import json
import os
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from hp_modules.hp_config import LOG_LEVEL
from hp_modules.hp_decomp import depth, validate_helim, validate_htd
from hp_modules.hp_errors import (
    GraphInputError,
    HybridParamError,
    InfeasibleInstanceError,
    PreconditionError,
    UnsupportedError,
)
from hp_modules.hp_family import FamilyPredicate
from hp_modules.hp_formats import (
    format_graph,
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
from hp_modules.hp_gen import SUITES, generate, suite_seeds
from hp_modules.hp_problems import ProblemInstance, ProblemKind, verify_solution
from hp_modules.hp_solvers import brute_opt
from hp_modules.hp_td_dp import td_dp_opt
from hp_modules.hp_tree import validate_td
from hp_modules.hp_treewidth import build_tree_decomposition
from hp_modules.hp_utils import Colors, as_fraction, check_epsilon, set_log_level, setup_colored_logger

from . import cli_config
from .cli_scheme_handler import report_row
from .cli_ui import emit, status, violation, witness_cells

logger = setup_colored_logger(__name__, LOG_LEVEL)


class UsageError(Exception):
    """Raised by the parser instead of exiting, so run() can return exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ─── PARSER ───────────────────────────────────────────────────────────────────
def _problem(name: str) -> ProblemKind:
    try:
        return cli_config.PROBLEM_NAMES[name]
    except KeyError:
        raise argparse.ArgumentTypeError(f"unknown problem '{name}'; choose from {', '.join(cli_config.PROBLEM_NAMES)}")


def _vertex_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertex labels, got '{text}'")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hybridcli", description="FPT approximation schemes for hybrid graph parameters.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--log-level", default=cli_config.DEFAULT_LOG_LEVEL,
                        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"], type=str.upper)
    common.add_argument("--json", action="store_true", help="JSON instead of TSV on stdout")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    gen = sub.add_parser("gen", parents=[common], help="generate a seeded suite")
    gen.add_argument("--spec", required=True, choices=sorted(SUITES))
    gen.add_argument("--seed", required=True, type=int)
    gen.add_argument("--out", required=True)
    gen.add_argument("--count", type=int, default=cli_config.DEFAULT_SUITE_COUNT)

    val = sub.add_parser("validate", parents=[common], help="check a decomposition against a graph")
    val.add_argument("--graph", required=True)
    which = val.add_mutually_exclusive_group()
    which.add_argument("--htd")
    which.add_argument("--td")
    which.add_argument("--helim")

    solve = sub.add_parser("solve", parents=[common], help="exact optimum with witness")
    solve.add_argument("--problem", required=True, type=_problem)
    solve.add_argument("--engine", required=True, choices=cli_config.ENGINES)
    solve.add_argument("--graph", required=True)
    solve.add_argument("--decomp", help="tree decomposition for td-dp (computed when omitted)")
    solve.add_argument("--blue", type=_vertex_list, help="blue vertices for bwds")
    solve.add_argument("--annotated", type=_vertex_list, help="dominated vertices for ds")
    solve.add_argument("--terminals", type=_vertex_list, help="terminal set for sivc")
    solve.add_argument("--patterns", help="pattern graphs for packing problems")

    approx = sub.add_parser("approx", parents=[common], help="run an approximation scheme")
    approx.add_argument("--problem", required=True, type=_problem)
    approx.add_argument("--param", required=True, choices=cli_config.PARAMS)
    approx.add_argument("--eps", required=True)
    approx.add_argument("--graph", required=True)
    witness = approx.add_mutually_exclusive_group(required=True)
    witness.add_argument("--modulator")
    witness.add_argument("--htd")
    approx.add_argument("--family", help="base family of the modulator (required with --param mod): EDGELESS, FORESTS or TW:<w>")
    approx.add_argument("--alpha")
    approx.add_argument("--lossy-base", dest="lossy_base")
    approx.add_argument("--variant", choices=["guess"])
    approx.add_argument("--patterns")

    bench = sub.add_parser("bench", parents=[common], help="run a suite manifest over several epsilons")
    bench.add_argument("--suite", required=True, help="manifest of 'inst <seed> <suite>' lines")
    bench.add_argument("--eps-list", dest="eps_list", default=cli_config.DEFAULT_EPS_LIST)
    bench.add_argument("--report", required=True)
    bench.add_argument("--lossy-base", dest="lossy_base")
    bench.add_argument("--workers", type=int, default=cli_config.THREADS)
    return parser


def _family(text: Optional[str]) -> Optional[FamilyPredicate]:
    if text is None:
        return None
    name, _, w = text.upper().partition(":")
    if name == "EDGELESS":
        return FamilyPredicate.edgeless()
    if name == "FORESTS":
        return FamilyPredicate.forests()
    if name == "TW" and w.isdigit():
        return FamilyPredicate.treewidth(int(w))
    raise GraphInputError(f"unknown family '{text}'; use EDGELESS, FORESTS or TW:<w>")


# ─── GEN ──────────────────────────────────────────────────────────────────────
def cmd_gen(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    entries: List[Tuple[int, str]] = []
    for seed in suite_seeds(args.seed, args.count):
        inst = generate(args.spec, seed)
        (out / f"{inst.name}.gr").write_text(format_graph(inst.graph, comment=f"{inst.suite} seed {seed}"))
        if inst.htd is not None:
            (out / f"{inst.name}.htd").write_text(format_htd(inst.htd, inst.graph.n))
        if inst.modulator is not None:
            (out / f"{inst.name}.mod").write_text(format_vertex_line("m", inst.modulator))
        entries.append((seed, args.spec))
    manifest = out / f"{args.spec}.manifest"
    manifest.write_text(format_manifest(entries))
    status(f"Wrote {len(entries)} instances and {manifest}", Colors.RESULT)
    return cli_config.EXIT_OK


# ─── VALIDATE ─────────────────────────────────────────────────────────────────
def cmd_validate(args) -> int:
    G = parse_graph(read_text(args.graph))
    row: Dict[str, Any] = {"graph": args.graph, "n": G.n, "m": G.m}
    if args.htd:
        D = parse_htd(read_text(args.htd))
        report = validate_htd(G, D)
        row.update(kind="htd", width=D.width)
    elif args.td:
        T = parse_td(read_text(args.td))
        report = validate_td(G, T)
        row.update(kind="td", width=T.width)
    elif args.helim:
        E = parse_helim(read_text(args.helim))
        report = validate_helim(G, E)
        row.update(kind="helim", depth=depth(E) if report else None)
    else:
        row.update(kind="graph")
        report = None
    row["result"] = "ok" if report is None or report else str(report)
    emit([row], list(row), args.json)
    if report is not None and not report:
        violation(str(report))
        return cli_config.EXIT_FAILURE
    return cli_config.EXIT_OK


# ─── SOLVE ────────────────────────────────────────────────────────────────────
def _load_instance(args, text: str) -> ProblemInstance:
    G = parse_graph(text)
    kind = args.problem
    patterns = parse_patterns(read_text(args.patterns)) if getattr(args, "patterns", None) else ()
    blue = set(getattr(args, "blue", None) or ()) | parse_blue(text)
    dominated = getattr(args, "annotated", None) or ()
    terminals = set(getattr(args, "terminals", None) or ()) | parse_terminals(text)
    if kind == ProblemKind.BWDS:
        return ProblemInstance.bwds(G, blue)
    if kind == ProblemKind.DS:
        return ProblemInstance.dominating_set(G, dominated, blue)
    if kind == ProblemKind.SIVC:
        return ProblemInstance.sivc(G, terminals)
    return ProblemInstance(kind, G, patterns=tuple(patterns))


def cmd_solve(args) -> int:
    inst = _load_instance(args, read_text(args.graph))
    if args.engine == "brute":
        value, sol = brute_opt(inst)
    else:
        T = parse_td(read_text(args.decomp)) if args.decomp else build_tree_decomposition(inst.graph)
        value, sol = td_dp_opt(inst.kind, inst.graph, T, inst.dominated, inst.forced)
    if not verify_solution(inst, sol):
        violation(f"{args.engine} returned an infeasible witness")
        return cli_config.EXIT_FAILURE
    if sol.is_packing:
        witness = witness_cells(t.vertices for t in sol.packing.tuples)
    else:
        witness = sorted(sol.vertices)
    row = {"problem": inst.kind.value, "engine": args.engine, "value": value, "witness": witness}
    emit([row], list(row), args.json)
    return cli_config.EXIT_OK


# ─── APPROX ───────────────────────────────────────────────────────────────────
def cmd_approx(args) -> int:
    eps = check_epsilon(args.eps)
    G = parse_graph(read_text(args.graph))
    patterns = parse_patterns(read_text(args.patterns)) if args.patterns else ()
    family = _family(args.family)
    scheme: Dict[str, Any] = {
        "alpha": as_fraction(args.alpha) if args.alpha else None,
        "lossiness": as_fraction(args.lossy_base) if args.lossy_base else None,
        "variant": args.variant,
        "workers": cli_config.THREADS,
        "family": family,
    }
    if args.param == "mod":
        if not args.modulator:
            raise UsageError("--param mod needs --modulator")
        if family is None:
            raise UsageError("--param mod needs --family")
        scheme["modulator"] = parse_modulator(read_text(args.modulator))
    else:
        if not args.htd:
            raise UsageError("--param twh needs --htd")
        D = parse_htd(read_text(args.htd))
        report = validate_htd(G, D)
        if not report:
            violation(f"H-tree decomposition rejected: {report}")
            return cli_config.EXIT_FAILURE
        scheme["htd"] = D
    row, result = report_row(Path(args.graph).stem, args.problem, args.param, args.eps, G,
                             patterns=patterns, **scheme)
    status(f"{args.problem.value}/{args.param} eps={eps}: value {row['alg_value']}, case {row['case']}", Colors.CASE_INFO)
    if result.solution.is_packing:
        row["solution"] = witness_cells(t.vertices for t in result.solution.packing.tuples)
    else:
        row["solution"] = sorted(result.solution.vertices)
    emit([row], list(cli_config.REPORT_KEYS) + ["solution"], args.json)
    return cli_config.EXIT_OK


# ─── BENCH ────────────────────────────────────────────────────────────────────
def _bench_task(task: Tuple[int, str, str, Optional[str]]) -> Dict[str, Any]:
    seed, suite, eps, lossy = task
    inst = generate(suite, seed)
    row, _ = report_row(
        inst.name, inst.kind, inst.param, eps, inst.graph, seed=seed, patterns=inst.patterns,
        modulator=inst.modulator, htd=inst.htd, family=inst.family if inst.param == "mod" else None,
        lossiness=as_fraction(lossy) if lossy else None,
    )
    return row


def cmd_bench(args) -> int:
    entries = parse_manifest(read_text(args.suite))
    eps_values = [e.strip() for e in args.eps_list.split(",") if e.strip()]
    for e in eps_values:
        check_epsilon(e)
    tasks = [(seed, suite, eps, args.lossy_base) for seed, suite in entries for eps in eps_values]
    workers = max(1, min(args.workers, cli_config.THREADS, len(tasks) or 1))
    status(f"Benchmarking {len(entries)} instances x {len(eps_values)} epsilons on {workers} workers")
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_bench_task, tasks))
    else:
        rows = [_bench_task(t) for t in tasks]
    Path(args.report).write_text(_report_json(rows))
    emit(rows, cli_config.REPORT_KEYS, args.json)
    status(f"Report written to {args.report}", Colors.RESULT)
    return cli_config.EXIT_OK


def _report_json(rows: Sequence[Dict[str, Any]]) -> str:
    return json.dumps([{k: row[k] for k in cli_config.REPORT_KEYS} for row in rows], indent=2) + "\n"


COMMANDS = {
    "gen": cmd_gen,
    "validate": cmd_validate,
    "solve": cmd_solve,
    "approx": cmd_approx,
    "bench": cmd_bench,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parses argv, dispatches, and maps errors onto exit codes."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        violation(str(e))
        return cli_config.EXIT_USAGE
    except SystemExit as e:
        # --help exits 0 through argparse.
        return cli_config.EXIT_OK if not e.code else cli_config.EXIT_USAGE
    set_log_level(args.log_level)
    # Worker processes read the level from the environment.
    os.environ["HYBRIDPARAM_LOG_LEVEL"] = args.log_level
    try:
        return COMMANDS[args.command](args)
    except UsageError as e:
        violation(str(e))
        return cli_config.EXIT_USAGE
    except (GraphInputError, UnsupportedError, PreconditionError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        violation(str(e))
        return cli_config.EXIT_USAGE
    except InfeasibleInstanceError as e:
        violation(f"infeasible: {e}")
        return cli_config.EXIT_FAILURE
    except HybridParamError as e:
        logger.critical(f"{type(e).__name__}: {e}", exc_info=True)
        return cli_config.EXIT_FAILURE
    except OSError as e:
        logger.error(f"I/O error: {e}")
        violation(str(e))
        return cli_config.EXIT_FAILURE
