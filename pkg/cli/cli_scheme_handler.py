"""Picks base solvers and approximation schemes for a (problem, parameter) pair and
compares their answers with the exact oracle."""
import time
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

from hp_modules.hp_base_solvers import AlphaLossyBaseSolver, ExactBaseSolver, LossyBaseSolver, MatchingVCBaseSolver
from hp_modules.hp_bucket_ocean import (
    cvc_mod_fptas,
    cycpack_mod_fptas,
    ds_mod_fptas,
    is_mod_guess,
    mod_alpha,
    mod_fptas_vertex_deletion,
    vc_mod_guess,
)
from hp_modules.hp_config import LOG_LEVEL
from hp_modules.hp_decomp import HTreeDecomposition
from hp_modules.hp_domset import twh_fptas_ds
from hp_modules.hp_errors import InfeasibleInstanceError, UnsupportedError
from hp_modules.hp_family import FamilyPredicate
from hp_modules.hp_graph import Graph, VertexSet
from hp_modules.hp_problems import ApproxResult, Case, ProblemInstance, ProblemKind
from hp_modules.hp_solvers import brute_opt
from hp_modules.hp_twh import eta_modulated_fptas, twh_alpha, twh_fptas_is, twh_fptas_packing
from hp_modules.hp_utils import as_fraction, check_epsilon, setup_colored_logger

logger = setup_colored_logger(__name__, LOG_LEVEL)

# Treewidth of every graph in the target family of the problem.
ETA = {ProblemKind.VC: 0, ProblemKind.FVS: 1}


def make_base(kind: ProblemKind, alpha=None, lossiness=None):
    """Base solver: exact, a lossy wrapper around it, or an alpha = 2 base.

    With alpha 2 the lossy wrapper spends the alpha slack instead of eps, so the
    base stays a 2-approximation; without it only vc has one (matching).
    """
    if alpha is not None and as_fraction(alpha) != 1:
        if as_fraction(alpha) != 2 or kind not in ETA:
            raise UnsupportedError(f"no base solver with alpha={alpha} for {kind.value}; alpha 2 exists for vc and fvs")
        if lossiness is not None:
            return AlphaLossyBaseSolver(2, lossiness)
        if kind != ProblemKind.VC:
            raise UnsupportedError(f"alpha 2 for {kind.value} needs --lossy-base")
        return MatchingVCBaseSolver()
    base = ExactBaseSolver()
    if lossiness is not None:
        base = LossyBaseSolver(base, lossiness)
    return base


def run_approx(
    kind: ProblemKind,
    param: str,
    G: Graph,
    eps,
    modulator: Optional[VertexSet] = None,
    htd: Optional[HTreeDecomposition] = None,
    family: Optional[FamilyPredicate] = None,
    alpha=None,
    lossiness=None,
    variant: Optional[str] = None,
    patterns: Tuple[Graph, ...] = (),
    workers: int = 1,
) -> ApproxResult:
    eps = check_epsilon(eps)
    base = make_base(kind, alpha, lossiness)
    use_alpha = alpha is not None and as_fraction(alpha) != 1
    if param == "mod":
        if modulator is None:
            raise UnsupportedError("the mod parameterization needs a modulator")
        if family is None:
            raise UnsupportedError("the mod parameterization needs the base family of the modulator")
        M = modulator
        if variant == "guess":
            if kind == ProblemKind.VC:
                return ApproxResult(vc_mod_guess(G, M, eps, base, workers, family=family), Case.GUESS, eps)
            if kind == ProblemKind.IS:
                return ApproxResult(is_mod_guess(G, M, eps, base, workers, family=family), Case.GUESS, eps)
            raise UnsupportedError(f"the guess variant exists for vc and is, not {kind.value}")
        if kind in ETA:
            if use_alpha:
                return mod_alpha(G, M, eps, base, kind=kind, family=family)
            return mod_fptas_vertex_deletion(G, M, eps, base, kind=kind, family=family)
        if kind == ProblemKind.IS:
            return ApproxResult(is_mod_guess(G, M, eps, base, workers, family=family), Case.GUESS, eps)
        if kind == ProblemKind.DS:
            return ds_mod_fptas(G, M, eps, base, family=family)
        if kind.is_packing:
            return cycpack_mod_fptas(G, M, eps, base, kind=kind, patterns=patterns, family=family)
        if kind == ProblemKind.CVC:
            return cvc_mod_fptas(G, M, eps, base, family=family)
    elif param == "twh":
        if htd is None:
            raise UnsupportedError("the twh parameterization needs an H-tree decomposition")
        if kind in ETA:
            if use_alpha:
                return twh_alpha(G, htd, eps, alpha, base, kind=kind)
            return eta_modulated_fptas(G, htd, eps, ETA[kind], base, kind=kind)
        if kind == ProblemKind.IS:
            return twh_fptas_is(G, htd, eps, base)
        if kind == ProblemKind.DS:
            return twh_fptas_ds(G, htd, eps, ds_mod_fptas, base)
        if kind.is_packing:
            return twh_fptas_packing(G, htd, eps, base, kind=kind, patterns=patterns)
    else:
        raise UnsupportedError(f"unknown parameterization '{param}'")
    raise UnsupportedError(f"no {param} scheme for {kind.value}")


def oracle_value(inst: ProblemInstance) -> Optional[int]:
    """Exhaustive optimum, or None when the instance exceeds the brute-force caps."""
    try:
        value, _ = brute_opt(inst)
    except UnsupportedError as e:
        logger.info(f"Oracle skipped: {e}")
        return None
    return value


def ratio(alg: int, opt: Optional[int]) -> Optional[float]:
    """alg / opt in both optimization directions; 1.0 when both are zero."""
    if opt is None:
        return None
    if opt == 0:
        return 1.0 if alg == 0 else None
    return float(Fraction(alg, opt))


def report_row(
    instance: str,
    kind: ProblemKind,
    param: str,
    eps: str,
    G: Graph,
    seed: Optional[int] = None,
    patterns: Tuple[Graph, ...] = (),
    **scheme_args: Any,
) -> Tuple[Dict[str, Any], ApproxResult]:
    """Runs the scheme, times it, asks the oracle and returns one report row."""
    started = time.perf_counter()
    result = run_approx(kind, param, G, eps, patterns=patterns, **scheme_args)
    elapsed = (time.perf_counter() - started) * 1000
    try:
        opt = oracle_value(ProblemInstance(kind, G, patterns=tuple(patterns)))
    except InfeasibleInstanceError:
        opt = None
    return {
        "instance": instance,
        "problem": kind.value,
        "param": param,
        "eps": float(as_fraction(eps)),
        "alg_value": result.value,
        "opt_value": opt,
        "ratio": ratio(result.value, opt),
        "case": result.case.value,
        "time_ms": round(elapsed, 3),
        "seed": seed,
    }, result
