"""Seeded instance generators with planted modulators and decompositions.

Every generator takes an integer seed and is deterministic in it; sub-structures
draw from child seeds derived with derive_seed so that one seed reproduces a
whole suite.
"""
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from hp_modules.hp_config import LOG_LEVEL
from hp_modules.hp_decomp import (
    HElimDecomposition,
    HTreeDecomposition,
    depth,
    htd_from_helim,
    validate_helim,
    validate_htd,
)
from hp_modules.hp_errors import FrameworkError, GraphInputError
from hp_modules.hp_family import FamilyKind, FamilyPredicate
from hp_modules.hp_graph import Graph, VertexSet
from hp_modules.hp_problems import ProblemKind
from hp_modules.hp_tree import relabel_nodes
from hp_modules.hp_utils import setup_colored_logger

logger = setup_colored_logger(__name__, LOG_LEVEL)


def derive_seed(seed: int, *tags) -> int:
    """Child seed for a named sub-structure of the instance generated from seed."""
    key = "/".join([str(seed)] + [str(t) for t in tags])
    return random.Random(key).getrandbits(32)


def _relabel(G: Graph, perm: Dict[int, int]) -> Graph:
    return Graph(G.n, ((perm[u], perm[v]) for u, v in G.edges))


def _shuffled_labels(n: int, rng: random.Random) -> Dict[int, int]:
    labels = list(range(1, n + 1))
    rng.shuffle(labels)
    return {old: new for old, new in zip(range(1, n + 1), labels)}


# ─── PARTIAL K-TREES ──────────────────────────────────────────────────────────
def random_partial_ktree(n: int, w: int, edge_keep_prob: float, seed: int) -> Graph:
    """Random w-tree on n vertices with every edge kept independently.

    Starts from a (w+1)-clique; each further vertex is joined to w vertices of a
    random clique built so far. Treewidth is at most w for every keep probability.
    """
    if w < 0:
        raise GraphInputError(f"w must be nonnegative, got {w}")
    if n < w + 1:
        raise GraphInputError(f"a partial {w}-tree needs n >= {w + 1}, got n={n}")
    if not 0 <= edge_keep_prob <= 1:
        raise GraphInputError(f"edge keep probability must lie in [0, 1], got {edge_keep_prob}")
    rng = random.Random(seed)
    order = list(range(1, n + 1))
    rng.shuffle(order)
    first = order[: w + 1]
    edges = {(min(a, b), max(a, b)) for i, a in enumerate(first) for b in first[i + 1:]}
    cliques: List[Tuple[int, ...]] = [tuple(first)]
    for v in order[w + 1:]:
        host = rng.choice(cliques)
        attach = rng.sample(host, w)
        edges.update((min(v, u), max(v, u)) for u in attach)
        cliques.append(tuple(attach) + (v,))
    kept = [e for e in sorted(edges) if rng.random() < edge_keep_prob]
    return Graph(n, kept)


def _family_member(size: int, family: FamilyPredicate, keep_prob: float, seed: int) -> Graph:
    if size == 0:
        return Graph(0)
    if family.kind == FamilyKind.EDGELESS:
        return Graph(size)
    w = 1 if family.kind == FamilyKind.FORESTS else family.w
    return random_partial_ktree(size, min(w, size - 1), keep_prob, seed)


@dataclass(frozen=True)
class BaseGraphSpec:
    """Recipe for a base graph of a family: n vertices, partial k-tree edges."""
    n: int
    family: FamilyPredicate = field(default_factory=FamilyPredicate.forests)
    keep_prob: float = 0.7

    def build(self, seed: int) -> Graph:
        return _family_member(self.n, self.family, self.keep_prob, seed)


# ─── PLANTED MODULATORS ───────────────────────────────────────────────────────
def plant_modulator_instance(
    base: Union[Graph, BaseGraphSpec],
    p: int,
    attach_density: float,
    seed: int,
    modulator_density: Optional[float] = None,
) -> Tuple[Graph, VertexSet]:
    """Base graph on 1..n0 plus a modulator M = {n0+1, ..., n0+p}.

    Each modulator-to-base pair becomes an edge with probability attach_density,
    each pair inside M with probability modulator_density (default attach_density).
    G - M is exactly the base graph.
    """
    if p < 0:
        raise GraphInputError(f"modulator size must be nonnegative, got {p}")
    for name, value in (("attach", attach_density), ("modulator", modulator_density)):
        if value is not None and not 0 <= value <= 1:
            raise GraphInputError(f"{name} density must lie in [0, 1], got {value}")
    modulator_density = attach_density if modulator_density is None else modulator_density
    B = base.build(derive_seed(seed, "base")) if isinstance(base, BaseGraphSpec) else base
    rng = random.Random(derive_seed(seed, "attach"))
    M = list(range(B.n + 1, B.n + p + 1))
    edges = list(B.edges)
    for i, m in enumerate(M):
        edges.extend((b, m) for b in B.vertices if rng.random() < attach_density)
        edges.extend((m2, m) for m2 in M[:i] if rng.random() < modulator_density)
    G = Graph(B.n + p, edges)
    logger.debug(f"Planted modulator of size {p} over a {B.n}-vertex base graph ({G.m} edges)")
    return G, frozenset(M)


# ─── PLANTED H-TREE DECOMPOSITIONS ────────────────────────────────────────────
@dataclass(frozen=True)
class HTDSpec:
    """Shape of a planted H-tree decomposition.

    ell bounds |chi(t) - L| for every node; internal_nodes is the size of the
    tree above the leaves. cross_density wires base vertices to R_t of their
    leaf, internal_density wires pairs of non-base vertices sharing a bag.
    """
    num_leaves: int
    ell: int
    family: FamilyPredicate = field(default_factory=lambda: FamilyPredicate.treewidth(1))
    leaf_size: Tuple[int, int] = (2, 5)
    internal_nodes: int = 1
    cross_density: float = 0.5
    internal_density: float = 0.5
    base_keep_prob: float = 0.8

    def problem(self) -> Optional[str]:
        if self.num_leaves < 1:
            return "at least one leaf is required"
        if self.ell < 0:
            return f"ell must be nonnegative, got {self.ell}"
        lo, hi = self.leaf_size
        if not 0 <= lo <= hi:
            return f"leaf size range {self.leaf_size} is empty"
        if self.ell == 0 and self.internal_nodes > 1:
            return "ell = 0 leaves no room for non-base vertices in internal bags"
        if self.ell > 0 and self.internal_nodes < 1:
            return "a positive ell needs at least one internal node"
        for density in (self.cross_density, self.internal_density, self.base_keep_prob):
            if not 0 <= density <= 1:
                return f"density {density} outside [0, 1]"
        return None


@dataclass(frozen=True)
class GroundTruth:
    width: int
    ell: int
    leaves: Tuple[int, ...]
    base_sizes: Tuple[int, ...]
    family: FamilyPredicate
    seed: int


@dataclass(frozen=True)
class PlantedHTD:
    graph: Graph
    decomposition: HTreeDecomposition
    truth: GroundTruth


def plant_htd_instance(spec: HTDSpec, seed: int) -> PlantedHTD:
    """Graph together with a valid H-tree decomposition of width at most spec.ell."""
    problem = spec.problem()
    if problem is not None:
        raise GraphInputError(f"infeasible decomposition spec: {problem}")
    rng = random.Random(seed)
    next_vertex = 1

    def fresh(count: int) -> List[int]:
        nonlocal next_vertex
        out = list(range(next_vertex, next_vertex + count))
        next_vertex += count
        return out

    bags: Dict[int, frozenset] = {}
    tree_edges: List[Tuple[int, int]] = []
    edges = set()

    def wire(members: Sequence[int], density: float) -> None:
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                if rng.random() < density:
                    edges.add((min(a, b), max(a, b)))

    internal = 0 if spec.ell == 0 and spec.num_leaves == 1 else max(1, spec.internal_nodes)
    for t in range(1, internal + 1):
        if t == 1:
            bags[t] = frozenset(fresh(rng.randint(1, spec.ell))) if spec.ell else frozenset()
        else:
            parent = rng.randrange(1, t)
            tree_edges.append((parent, t))
            inherited = rng.sample(sorted(bags[parent]), rng.randint(0, min(len(bags[parent]), spec.ell - 1)))
            bags[t] = frozenset(inherited) | frozenset(fresh(rng.randint(1, spec.ell - len(inherited))))
        wire(sorted(bags[t]), spec.internal_density)

    childless = [t for t in range(1, internal + 1) if not any(p == t for p, _ in tree_edges)]
    base = set()
    base_sizes = []
    for j in range(spec.num_leaves):
        t = internal + j + 1
        size = rng.randint(*spec.leaf_size)
        H = fresh(size)
        component = _family_member(size, spec.family, spec.base_keep_prob, derive_seed(seed, "leaf", j))
        edges.update((min(H[a - 1], H[b - 1]), max(H[a - 1], H[b - 1])) for a, b in component.edges)
        R: List[int] = []
        if internal:
            parent = childless[j] if j < len(childless) else rng.randint(1, internal)
            tree_edges.append((parent, t))
            pool = sorted(bags[parent])
            R = rng.sample(pool, rng.randint(1, len(pool))) if pool else []
            for h in H:
                edges.update((min(h, r), max(h, r)) for r in R if rng.random() < spec.cross_density)
        bags[t] = frozenset(H) | frozenset(R)
        base.update(H)
        base_sizes.append(size)

    n = next_vertex - 1
    perm = _shuffled_labels(n, rng)
    G = _relabel(Graph(n, edges), perm)
    bags = {t: frozenset(perm[v] for v in bag) for t, bag in bags.items()}
    new_bags, new_edges = relabel_nodes(bags, tree_edges, 1)
    D = HTreeDecomposition(new_bags, new_edges, frozenset(perm[v] for v in base), spec.family)

    report = validate_htd(G, D)
    if not report:
        raise FrameworkError(f"planted H-tree decomposition does not validate: {report}")
    if D.width > spec.ell:
        raise FrameworkError(f"planted width {D.width} exceeds ell={spec.ell}")
    truth = GroundTruth(D.width, spec.ell, tuple(D.leaves), tuple(base_sizes), spec.family, seed)
    logger.debug(f"Planted H-tree decomposition: n={G.n}, {len(D.bags)} nodes, width {D.width}")
    return PlantedHTD(G, D, truth)


# ─── PLANTED H-ELIMINATION DECOMPOSITIONS ─────────────────────────────────────
@dataclass(frozen=True)
class HElimSpec:
    """Shape of a planted H-elimination forest of depth at most `depth`."""
    depth: int
    num_leaves: int
    family: FamilyPredicate = field(default_factory=FamilyPredicate.forests)
    leaf_size: Tuple[int, int] = (2, 4)
    num_roots: int = 1
    cross_density: float = 0.5
    internal_density: float = 0.5
    base_keep_prob: float = 0.8


def plant_helim_instance(spec: HElimSpec, seed: int) -> Tuple[Graph, HElimDecomposition]:
    """Graph with a valid H-elimination decomposition; internal nodes hold one vertex each."""
    if spec.depth < 0 or spec.num_roots < 1 or spec.num_leaves < spec.num_roots:
        raise GraphInputError(f"infeasible elimination spec: {spec}")
    if spec.depth == 0 and spec.num_leaves != spec.num_roots:
        raise GraphInputError("depth 0 needs one leaf per root")
    rng = random.Random(seed)
    bags: Dict[int, frozenset] = {}
    parent: Dict[int, Optional[int]] = {}
    children: Dict[int, List[int]] = {}
    edges = set()
    next_vertex = 1
    next_node = 1

    def new_node(p: Optional[int], count: int) -> int:
        nonlocal next_vertex, next_node
        t = next_node
        next_node += 1
        bags[t] = frozenset(range(next_vertex, next_vertex + count))
        next_vertex += count
        parent[t] = p
        children[t] = []
        if p is not None:
            children[p].append(t)
        return t

    def above(t: int) -> List[int]:
        out = []
        p = parent[t]
        while p is not None:
            out.extend(bags[p])
            p = parent[p]
        return out

    base = set()
    base_nodes = set()
    if spec.depth == 0:
        for j in range(spec.num_leaves):
            size = rng.randint(*spec.leaf_size)
            t = new_node(None, size)
            component = _family_member(size, spec.family, spec.base_keep_prob, derive_seed(seed, "leaf", j))
            first = min(bags[t]) - 1
            edges.update((first + a, first + b) for a, b in component.edges)
            base |= bags[t]
    else:
        roots = [new_node(None, 1) for _ in range(spec.num_roots)]
        for j in range(spec.num_leaves):
            level = rng.randint(1, spec.depth)
            t = roots[j] if j < len(roots) else rng.choice(roots)
            for _ in range(level - 1):
                internal = [c for c in children[t] if c not in base_nodes]
                if internal and rng.random() < 0.5:
                    t = rng.choice(internal)
                else:
                    t = new_node(t, 1)
                    (v,) = bags[t]
                    edges.update((min(u, v), max(u, v)) for u in above(t) if rng.random() < spec.internal_density)
            size = rng.randint(max(1, spec.leaf_size[0]), max(1, spec.leaf_size[1]))
            leaf = new_node(t, size)
            base_nodes.add(leaf)
            component = _family_member(size, spec.family, spec.base_keep_prob, derive_seed(seed, "leaf", j))
            first = min(bags[leaf]) - 1
            edges.update((first + a, first + b) for a, b in component.edges)
            for h in bags[leaf]:
                edges.update((min(u, h), max(u, h)) for u in above(leaf) if rng.random() < spec.cross_density)
            base |= bags[leaf]
        for r in roots:
            if not children[r]:
                raise FrameworkError(f"root {r} received no leaf")

    n = next_vertex - 1
    perm = _shuffled_labels(n, rng)
    G = _relabel(Graph(n, edges), perm)
    E = HElimDecomposition(
        {t: frozenset(perm[v] for v in bag) for t, bag in bags.items()},
        parent,
        frozenset(perm[v] for v in base),
        spec.family,
    )
    report = validate_helim(G, E)
    if not report:
        raise FrameworkError(f"planted elimination decomposition does not validate: {report}")
    if depth(E) > spec.depth:
        raise FrameworkError(f"planted depth {depth(E)} exceeds {spec.depth}")
    return G, E


# ─── SUITES ───────────────────────────────────────────────────────────────────
@dataclass(frozen=True)
class GeneratedInstance:
    """One suite member: the graph plus its parameter witness (modulator or decomposition)."""
    suite: str
    seed: int
    kind: ProblemKind
    param: str
    graph: Graph
    family: FamilyPredicate
    modulator: Optional[VertexSet] = None
    htd: Optional[HTreeDecomposition] = None
    patterns: Tuple[Graph, ...] = ()

    @property
    def name(self) -> str:
        return f"{self.suite}-{self.seed}"


@dataclass(frozen=True)
class Suite:
    kind: ProblemKind
    param: str
    build: Callable[[str, int], GeneratedInstance]


def _mod_builder(kind: ProblemKind, family: FamilyPredicate, sizes: Tuple[int, int], p_max: int,
                 attach: float = 0.5, modulator_density: Optional[float] = None, p_min: int = 0):
    def build(suite: str, seed: int) -> GeneratedInstance:
        rng = random.Random(derive_seed(seed, suite))
        # Every third seed plants no modulator, so the small-modulator branch always shows up.
        p = 0 if seed % 3 == 0 and p_min == 0 else rng.randint(max(1, p_min), p_max)
        base = BaseGraphSpec(rng.randint(*sizes), family)
        G, M = plant_modulator_instance(base, p, attach, derive_seed(seed, suite, "plant"), modulator_density)
        return GeneratedInstance(suite, seed, kind, "mod", G, family, modulator=M)
    return build


def _htd_builder(kind: ProblemKind, family: FamilyPredicate, leaves: Tuple[int, int], ells: Tuple[int, int],
                 leaf_size: Tuple[int, int], internal: Tuple[int, int] = (1, 2)):
    def build(suite: str, seed: int) -> GeneratedInstance:
        rng = random.Random(derive_seed(seed, suite))
        spec = HTDSpec(
            num_leaves=rng.randint(*leaves),
            ell=rng.randint(*ells),
            family=family,
            leaf_size=leaf_size,
            internal_nodes=rng.randint(*internal),
        )
        planted = plant_htd_instance(spec, derive_seed(seed, suite, "plant"))
        return GeneratedInstance(suite, seed, kind, "twh", planted.graph, family, htd=planted.decomposition)
    return build


def _helim_builder(kind: ProblemKind, family: FamilyPredicate):
    def build(suite: str, seed: int) -> GeneratedInstance:
        rng = random.Random(derive_seed(seed, suite))
        spec = HElimSpec(depth=rng.randint(1, 3), num_leaves=rng.randint(2, 3), family=family, leaf_size=(2, 3))
        G, E = plant_helim_instance(spec, derive_seed(seed, suite, "plant"))
        return GeneratedInstance(suite, seed, kind, "twh", G, family, htd=htd_from_helim(E, G))
    return build


_TW1 = FamilyPredicate.treewidth(1)
_TW2 = FamilyPredicate.treewidth(2)
_FORESTS = FamilyPredicate.forests()
_EDGELESS = FamilyPredicate.edgeless()

SUITES: Dict[str, Suite] = {
    "vc-mod": Suite(ProblemKind.VC, "mod", _mod_builder(ProblemKind.VC, _TW2, (8, 14), 5)),
    "fvs-mod": Suite(ProblemKind.FVS, "mod", _mod_builder(ProblemKind.FVS, _FORESTS, (8, 14), 4)),
    "is-mod": Suite(ProblemKind.IS, "mod", _mod_builder(ProblemKind.IS, _EDGELESS, (8, 14), 3)),
    "ds-mod": Suite(ProblemKind.DS, "mod", _mod_builder(ProblemKind.DS, _TW1, (8, 14), 3)),
    "cycpack-mod": Suite(ProblemKind.CYCLE_PACKING, "mod", _mod_builder(ProblemKind.CYCLE_PACKING, _FORESTS, (6, 10), 3)),
    "cvc-mod": Suite(
        ProblemKind.CVC, "mod",
        _mod_builder(ProblemKind.CVC, _EDGELESS, (6, 14), 4, modulator_density=1.0, p_min=1),
    ),
    "vc-twh": Suite(ProblemKind.VC, "twh", _htd_builder(ProblemKind.VC, _TW1, (2, 4), (1, 3), (2, 4))),
    "fvs-twh": Suite(ProblemKind.FVS, "twh", _htd_builder(ProblemKind.FVS, _FORESTS, (2, 4), (1, 3), (2, 4))),
    "is-twh": Suite(ProblemKind.IS, "twh", _htd_builder(ProblemKind.IS, _TW1, (2, 4), (1, 3), (2, 4))),
    "ds-twh": Suite(ProblemKind.DS, "twh", _htd_builder(ProblemKind.DS, _TW1, (2, 3), (1, 2), (2, 4), (1, 1))),
    "cycpack-twh": Suite(
        ProblemKind.CYCLE_PACKING, "twh",
        _htd_builder(ProblemKind.CYCLE_PACKING, _FORESTS, (2, 3), (1, 2), (2, 3), (1, 1)),
    ),
    "vc-ed": Suite(ProblemKind.VC, "twh", _helim_builder(ProblemKind.VC, _FORESTS)),
}


def generate(suite: str, seed: int) -> GeneratedInstance:
    try:
        entry = SUITES[suite]
    except KeyError as e:
        raise GraphInputError(f"unknown suite '{suite}'; known: {', '.join(sorted(SUITES))}") from e
    return entry.build(suite, seed)


def suite_seeds(seed: int, count: int) -> List[int]:
    """Instance seeds of a suite run; the first is the master seed itself."""
    return [seed] + [derive_seed(seed, "instance", i) for i in range(1, count)]
