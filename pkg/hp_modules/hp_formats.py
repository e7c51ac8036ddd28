"""Text formats: graphs, decompositions, modulators, blue sets, patterns and suite manifests.

Every format is line based with whitespace-separated fields; lines starting
with `c` are comments and blank lines are skipped.
"""
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from hp_modules.hp_config import LOG_LEVEL
from hp_modules.hp_decomp import HElimDecomposition, HTreeDecomposition
from hp_modules.hp_errors import GraphInputError
from hp_modules.hp_family import FamilyKind, FamilyPredicate
from hp_modules.hp_graph import Graph, VertexSet
from hp_modules.hp_tree import TreeDecomposition
from hp_modules.hp_utils import setup_colored_logger

logger = setup_colored_logger(__name__, LOG_LEVEL)

PathLike = Union[str, Path]


def _records(text: str) -> Iterator[Tuple[int, List[str]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        fields = raw.split()
        if not fields or fields[0] == "c":
            continue
        yield lineno, fields


def _ints(fields: Sequence[str], lineno: int) -> List[int]:
    try:
        return [int(x) for x in fields]
    except ValueError as e:
        raise GraphInputError(f"line {lineno}: expected integers, got {' '.join(fields)}") from e


def read_text(path: PathLike) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise GraphInputError(f"cannot read {path}: {e}") from e


# ─── GRAPHS ───────────────────────────────────────────────────────────────────
def parse_graph(text: str) -> Graph:
    """`p gr <n> <m>` header followed by `e <u> <v>` lines."""
    n, m = None, None
    edges = []
    for lineno, fields in _records(text):
        tag = fields[0]
        if tag == "p":
            if n is not None or len(fields) != 4 or fields[1] != "gr":
                raise GraphInputError(f"line {lineno}: malformed header, expected 'p gr <n> <m>'")
            n, m = _ints(fields[2:], lineno)
        elif tag == "e":
            if n is None:
                raise GraphInputError(f"line {lineno}: edge before the 'p gr' header")
            if len(fields) != 3:
                raise GraphInputError(f"line {lineno}: expected 'e <u> <v>'")
            edges.append(tuple(_ints(fields[1:], lineno)))
        elif tag not in ("blue", "m", "x"):
            raise GraphInputError(f"line {lineno}: unknown record '{tag}'")
    if n is None:
        raise GraphInputError("missing 'p gr <n> <m>' header")
    G = Graph(n, edges)
    if G.m != m:
        logger.warning(f"Header announces {m} edges, file holds {G.m} distinct edges")
    return G


def format_graph(G: Graph, comment: Optional[str] = None) -> str:
    lines = [f"c {comment}"] if comment else []
    lines.append(f"p gr {G.n} {G.m}")
    lines.extend(f"e {u} {v}" for u, v in G.sorted_edges())
    return "\n".join(lines) + "\n"


def _vertex_line(text: str, tag: str) -> Optional[VertexSet]:
    """Union of all `<tag> <v...>` lines, or None when there are none."""
    found = None
    for lineno, fields in _records(text):
        if fields[0] == tag:
            found = (found or frozenset()) | frozenset(_ints(fields[1:], lineno))
    return found


def parse_blue(text: str) -> VertexSet:
    """Blue set of a BWDS file: the graph format plus `blue <v...>` lines."""
    return _vertex_line(text, "blue") or frozenset()


def parse_terminals(text: str) -> VertexSet:
    """Terminal set X of an SIVC file: `x <v...>` lines."""
    return _vertex_line(text, "x") or frozenset()


def parse_modulator(text: str) -> VertexSet:
    """Modulator file: `m <v...>` lines."""
    found = _vertex_line(text, "m")
    if found is None:
        raise GraphInputError("modulator file holds no 'm' line")
    return found


def format_vertex_line(tag: str, vertices) -> str:
    return " ".join([tag] + [str(v) for v in sorted(vertices)]) + "\n"


# ─── DECOMPOSITIONS ───────────────────────────────────────────────────────────
def _parse_family(fields: List[str], lineno: int) -> FamilyPredicate:
    try:
        kind = FamilyKind(fields[1].upper())
    except (IndexError, ValueError) as e:
        raise GraphInputError(f"line {lineno}: expected 'f <EDGELESS|FORESTS|TW> [w]'") from e
    if kind == FamilyKind.TW:
        if len(fields) != 3:
            raise GraphInputError(f"line {lineno}: TW family needs a width bound")
        return FamilyPredicate.treewidth(_ints(fields[2:], lineno)[0])
    return FamilyPredicate(kind)


def _format_family(family: FamilyPredicate) -> str:
    if family.kind == FamilyKind.TW:
        return f"f TW {family.w}"
    return f"f {family.kind.value}"


def _parse_bagged(text: str, header: str):
    """Shared reader for the htd and helim formats."""
    count = None
    bags: Dict[int, frozenset] = {}
    edges: List[Tuple[int, int]] = []
    base = frozenset()
    family = FamilyPredicate.edgeless()
    for lineno, fields in _records(text):
        tag = fields[0]
        if tag == header:
            if len(fields) != 3:
                raise GraphInputError(f"line {lineno}: expected '{header} <numNodes> <n>'")
            count, _ = _ints(fields[1:], lineno)
        elif tag == "b":
            values = _ints(fields[1:], lineno)
            if not values:
                raise GraphInputError(f"line {lineno}: bag line needs a node id")
            bags[values[0]] = frozenset(values[1:])
        elif tag == "t":
            if len(fields) != 3:
                raise GraphInputError(f"line {lineno}: expected 't <a> <b>'")
            a, b = _ints(fields[1:], lineno)
            edges.append((a, b))
        elif tag == "l":
            base = base | frozenset(_ints(fields[1:], lineno))
        elif tag == "f":
            family = _parse_family(fields, lineno)
        else:
            raise GraphInputError(f"line {lineno}: unknown record '{tag}'")
    if count is None:
        raise GraphInputError(f"missing '{header} <numNodes> <n>' header")
    for t in range(1, count + 1):
        bags.setdefault(t, frozenset())
    if len(bags) != count:
        raise GraphInputError(f"header announces {count} nodes, bags name {len(bags)}")
    return bags, edges, base, family


def parse_htd(text: str) -> HTreeDecomposition:
    bags, edges, base, family = _parse_bagged(text, "htd")
    return HTreeDecomposition(bags, tuple(edges), base, family)


def parse_td(text: str) -> TreeDecomposition:
    bags, edges, base, _ = _parse_bagged(text, "htd")
    if base:
        raise GraphInputError("standard tree decompositions carry an empty 'l' line")
    return TreeDecomposition(bags, tuple(edges))


def format_htd(D: Union[HTreeDecomposition, TreeDecomposition], n: int) -> str:
    lines = [f"htd {len(D.bags)} {n}"]
    lines.extend(" ".join(["b", str(t)] + [str(v) for v in sorted(D.bags[t])]) for t in sorted(D.bags))
    lines.extend(f"t {a} {b}" for a, b in D.edges)
    if isinstance(D, HTreeDecomposition):
        lines.append(format_vertex_line("l", D.base).rstrip("\n"))
        lines.append(_format_family(D.family))
    else:
        lines.append("l")
    return "\n".join(lines) + "\n"


def parse_helim(text: str) -> HElimDecomposition:
    """`helim <numNodes> <n>`; `t <parent> <child>` lines define the forest."""
    bags, edges, base, family = _parse_bagged(text, "helim")
    parent: Dict[int, Optional[int]] = {t: None for t in bags}
    for p, c in edges:
        if c not in parent:
            raise GraphInputError(f"tree edge names unknown node {c}")
        if parent[c] is not None:
            raise GraphInputError(f"node {c} has two parents")
        parent[c] = p
    return HElimDecomposition(bags, parent, base, family)


def format_helim(E: HElimDecomposition, n: int) -> str:
    lines = [f"helim {len(E.bags)} {n}"]
    lines.extend(" ".join(["b", str(t)] + [str(v) for v in sorted(E.bags[t])]) for t in sorted(E.bags))
    lines.extend(f"t {p} {c}" for p, c in E.tree_edges)
    lines.append(format_vertex_line("l", E.base).rstrip("\n"))
    lines.append(_format_family(E.family))
    return "\n".join(lines) + "\n"


# ─── PATTERNS ─────────────────────────────────────────────────────────────────
def parse_patterns(text: str) -> Tuple[Graph, ...]:
    """Several graphs in one file, each starting at its own `p gr` header."""
    blocks: List[List[str]] = []
    for raw in text.splitlines():
        fields = raw.split()
        if fields and fields[0] == "p":
            blocks.append([])
        if blocks:
            blocks[-1].append(raw)
    if not blocks:
        raise GraphInputError("pattern file holds no 'p gr' header")
    return tuple(parse_graph("\n".join(block)) for block in blocks)


# ─── SUITE MANIFESTS ──────────────────────────────────────────────────────────
def parse_manifest(text: str) -> List[Tuple[int, str]]:
    """`inst <seed> <specName>` lines, in file order."""
    entries = []
    for lineno, fields in _records(text):
        if fields[0] != "inst" or len(fields) != 3:
            raise GraphInputError(f"line {lineno}: expected 'inst <seed> <specName>'")
        entries.append((_ints(fields[1:2], lineno)[0], fields[2]))
    return entries


def format_manifest(entries: Sequence[Tuple[int, str]]) -> str:
    return "".join(f"inst {seed} {name}\n" for seed, name in entries)
