"""H-tree and H-elimination decompositions: validation, width and conversions."""
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple

from hp_modules.hp_config import LOG_LEVEL
from hp_modules.hp_errors import FrameworkError, GraphInputError, PreconditionError
from hp_modules.hp_family import FamilyPredicate, Membership
from hp_modules.hp_graph import (
    Graph,
    VertexSet,
    check_vertices,
    connected_components,
    delete_vertices,
    induced_subgraph,
    invert,
    label_map,
    lift,
)
from hp_modules.hp_tree import (
    RootedStructure,
    TreeDecomposition,
    TreeEdge,
    ValidationReport,
    edge_cover_problem,
    label_problem,
    occurrence_problem,
    relabel_nodes,
    tree_shape_problem,
    validate_td,
)
from hp_modules.hp_treewidth import build_tree_decomposition
from hp_modules.hp_utils import setup_colored_logger

logger = setup_colored_logger(__name__, LOG_LEVEL)


@dataclass(frozen=True)
class HTreeDecomposition:
    """(T, chi, L): a rooted tree of bags whose leaves host the base vertices L."""
    bags: Mapping[int, VertexSet]
    edges: Tuple[TreeEdge, ...]
    base: VertexSet
    family: FamilyPredicate
    root: int = 1

    @cached_property
    def structure(self) -> RootedStructure:
        return RootedStructure(self.bags.keys(), self.edges, [self.root])

    @property
    def nodes(self) -> List[int]:
        return sorted(self.bags)

    @property
    def leaves(self) -> List[int]:
        return sorted(self.structure.leaves)

    def is_leaf(self, t: int) -> bool:
        return not self.structure.children[t]

    def base_part(self, t: int) -> VertexSet:
        """H_t = chi(t) & L."""
        return self.bags[t] & self.base

    def rest_part(self, t: int) -> VertexSet:
        """R_t = chi(t) - L."""
        return self.bags[t] - self.base

    @property
    def ell(self) -> int:
        """Largest non-base part of a bag, i.e. width + 1 unless every bag is all-base."""
        return max(len(self.rest_part(t)) for t in self.bags)

    @property
    def width(self) -> int:
        return max(0, self.ell - 1)


def width(D: HTreeDecomposition) -> int:
    return D.width


def validate_htd(G: Graph, D: HTreeDecomposition) -> ValidationReport:
    """Checks the four H-tree decomposition conditions and reports the first failure."""
    shape = tree_shape_problem(D.bags.keys(), D.edges, D.root)
    if shape is not None:
        return ValidationReport.failed("tree", shape)
    bad_label = label_problem(G, D.bags)
    if bad_label is not None:
        return ValidationReport.failed("labels", "bag holds a vertex outside the graph", *bad_label)
    stray = sorted(v for v in D.base if not (1 <= v <= G.n))
    if stray:
        return ValidationReport.failed("labels", "base set holds a vertex outside the graph", vertex=stray[0])

    occ = occurrence_problem(G, D.bags, D.structure)
    if occ is not None:
        return ValidationReport.failed("1", occ[1], vertex=occ[0])
    missing = edge_cover_problem(G, D.bags)
    if missing is not None:
        return ValidationReport.failed("2", f"edge {missing} is in no bag", vertex=missing[0])

    homes: Dict[int, List[int]] = {}
    for t in D.nodes:
        for v in D.base_part(t):
            homes.setdefault(v, []).append(t)
    for v in sorted(D.base):
        nodes = homes.get(v, [])
        if len(nodes) != 1:
            return ValidationReport.failed("3", f"base vertex appears in {len(nodes)} bags", vertex=v)
        if not D.is_leaf(nodes[0]):
            return ValidationReport.failed("3", "base vertex sits in an internal bag", node=nodes[0], vertex=v)

    for t in D.leaves:
        sub, _ = induced_subgraph(G, D.base_part(t))
        verdict = D.family.contains(sub)
        if verdict != Membership.YES:
            return ValidationReport.failed("4", f"base component membership in {D.family} is {verdict.value}", node=t)
    return ValidationReport.passed()


def htd_from_modulator(G: Graph, M: Iterable[int], family: FamilyPredicate) -> HTreeDecomposition:
    """Root bag M with one leaf per component C of G - M holding C + M."""
    M = check_vertices(G, M)
    rest, mapping = delete_vertices(G, M)
    components = []
    for comp in connected_components(rest):
        sub, _ = induced_subgraph(rest, comp)
        verdict = family.contains(sub)
        if verdict != Membership.YES:
            raise PreconditionError(
                f"component of G - M with {len(comp)} vertices is not confirmed in {family} ({verdict.value})"
            )
        components.append(lift(comp, mapping))
    if not M:
        everything = frozenset(G.vertices)
        return HTreeDecomposition({1: everything}, (), everything, family)
    bags = {1: M}
    edges = []
    for i, comp in enumerate(components, start=2):
        bags[i] = comp | M
        edges.append((1, i))
    base = frozenset(v for v in G.vertices if v not in M)
    return HTreeDecomposition(bags, tuple(edges), base, family)


def project_htd(D: HTreeDecomposition, W: Iterable[int]) -> HTreeDecomposition:
    """Restricts D to W, relabeled the same way as induced_subgraph(G, W)."""
    W = frozenset(W)
    mapping = label_map(W)
    bags = {t: frozenset(mapping[v] for v in bag if v in W) for t, bag in D.bags.items()}
    base = frozenset(mapping[v] for v in D.base if v in W)
    return HTreeDecomposition(bags, D.edges, base, D.family, D.root)


def htd_to_td(G: Graph, D: HTreeDecomposition, per_leaf_td: Mapping[int, TreeDecomposition]) -> TreeDecomposition:
    """Standard tree decomposition of G built from D.

    Base vertices leave their bags; each leaf t gets the decomposition of its base
    component hung underneath it with R_t added to every bag. per_leaf_td[t] is in
    the labels of induced_subgraph(G, H_t); leaves with no base vertices need none.
    """
    bags: Dict[int, frozenset] = {t: D.rest_part(t) for t in D.bags}
    edges: List[TreeEdge] = list(D.edges)
    next_id = max(D.bags) + 1
    for t in D.leaves:
        component = D.base_part(t)
        if not component:
            continue
        T_t = per_leaf_td.get(t)
        if T_t is None:
            raise GraphInputError(f"no tree decomposition supplied for leaf {t}")
        sub, mapping = induced_subgraph(G, component)
        report = validate_td(sub, T_t)
        if not report:
            raise GraphInputError(f"tree decomposition of leaf {t} is invalid: {report}")
        back = invert(mapping)
        R_t = D.rest_part(t)
        ids = {}
        for s in T_t.nodes:
            ids[s] = next_id
            bags[next_id] = frozenset(back[x] for x in T_t.bags[s]) | R_t
            next_id += 1
        edges.extend((ids[a], ids[b]) for a, b in T_t.edges)
        edges.append((t, ids[T_t.root]))
    new_bags, new_edges = relabel_nodes(bags, edges, D.root)
    T = TreeDecomposition(new_bags, new_edges)
    report = validate_td(G, T)
    if not report:
        raise FrameworkError(f"assembled tree decomposition is invalid: {report}")
    return T


LeafTD = Callable[[int, Graph], TreeDecomposition]


def assemble_td(
    G: Graph, D: HTreeDecomposition, W: Iterable[int], leaf_td: Optional[LeafTD] = None
) -> Tuple[Graph, Dict[int, int], TreeDecomposition]:
    """Tree decomposition of G[W] read off D restricted to W.

    leaf_td(t, G[H_t & W]) supplies the decomposition of each nonempty base part
    (default: build_tree_decomposition). Returns G[W], its old->new mapping and
    the decomposition in the new labels.
    """
    W = check_vertices(G, W)
    sub, mapping = induced_subgraph(G, W)
    projected = project_htd(D, W)
    leaf_td = leaf_td or (lambda t, H: build_tree_decomposition(H))
    per_leaf = {}
    for t in projected.leaves:
        part = projected.base_part(t)
        if part:
            H, _ = induced_subgraph(sub, part)
            per_leaf[t] = leaf_td(t, H)
    return sub, mapping, htd_to_td(sub, projected, per_leaf)


# ─── H-ELIMINATION DECOMPOSITIONS ─────────────────────────────────────────────
@dataclass(frozen=True)
class HElimDecomposition:
    """(T, chi, L) over a rooted forest; parent[t] is None for roots."""
    bags: Mapping[int, VertexSet]
    parent: Mapping[int, Optional[int]]
    base: VertexSet
    family: FamilyPredicate

    @property
    def roots(self) -> List[int]:
        return sorted(t for t, p in self.parent.items() if p is None)

    @property
    def tree_edges(self) -> List[TreeEdge]:
        return sorted((p, t) for t, p in self.parent.items() if p is not None)

    @cached_property
    def structure(self) -> RootedStructure:
        return RootedStructure(self.bags.keys(), self.tree_edges, self.roots)

    def ancestors(self, t: int) -> List[int]:
        out = []
        p = self.parent[t]
        while p is not None:
            out.append(p)
            p = self.parent[p]
        return out


def forest_problem(E: HElimDecomposition) -> Optional[str]:
    if set(E.parent) != set(E.bags):
        return "parent map and bags disagree on the node set"
    if not E.bags:
        return "decomposition has no nodes"
    for t, p in E.parent.items():
        if p is not None and p not in E.bags:
            return f"node {t} has unknown parent {p}"
    if len(E.structure.preorder) != len(E.bags):
        return "parent map contains a cycle"
    return None


def depth(E: HElimDecomposition) -> int:
    """Largest number of edges on a root-to-leaf path."""
    return max(E.structure.depth_of(t) for t in E.structure.leaves)


def validate_helim(G: Graph, E: HElimDecomposition) -> ValidationReport:
    """Checks the four H-elimination decomposition conditions."""
    shape = forest_problem(E)
    if shape is not None:
        return ValidationReport.failed("forest", shape)
    bad_label = label_problem(G, E.bags)
    if bad_label is not None:
        return ValidationReport.failed("labels", "bag holds a vertex outside the graph", *bad_label)
    structure = E.structure
    for t in E.structure.preorder:
        if structure.children[t] and (len(E.bags[t]) > 1 or E.bags[t] & E.base):
            return ValidationReport.failed("1", "internal bag must hold at most one non-base vertex", node=t)
    home: Dict[int, int] = {}
    for t in sorted(E.bags):
        for v in E.bags[t]:
            if v in home:
                return ValidationReport.failed("2", "bags do not partition the vertices", node=t, vertex=v)
            home[v] = t
    for v in G.vertices:
        if v not in home:
            return ValidationReport.failed("2", "vertex is in no bag", vertex=v)
    leaf_union = set()
    for t in structure.leaves:
        if not E.bags[t] <= E.base:
            return ValidationReport.failed("3", "leaf bag holds a non-base vertex", node=t)
        sub, _ = induced_subgraph(G, E.bags[t])
        verdict = E.family.contains(sub)
        if verdict != Membership.YES:
            return ValidationReport.failed("3", f"base component membership in {E.family} is {verdict.value}", node=t)
        leaf_union |= E.bags[t]
    if leaf_union != set(E.base):
        return ValidationReport.failed("3", "leaf bags do not partition the base set")
    for u, v in G.sorted_edges():
        a, b = home[u], home[v]
        if a != b and a not in E.ancestors(b) and b not in E.ancestors(a):
            return ValidationReport.failed("4", f"edge ({u}, {v}) joins unrelated nodes {a} and {b}", vertex=u)
    return ValidationReport.passed()


def htd_from_helim(E: HElimDecomposition, G: Optional[Graph] = None) -> HTreeDecomposition:
    """Bag of a node becomes its own bag plus the bags of all its ancestors.

    A forest gets an extra empty root joining its trees. When G is given the input
    is validated first.
    """
    problem = forest_problem(E)
    if problem is not None:
        raise GraphInputError(f"invalid elimination decomposition: {problem}")
    if G is not None:
        report = validate_helim(G, E)
        if not report:
            raise GraphInputError(f"invalid elimination decomposition: {report}")
    bags: Dict[int, frozenset] = {}
    for t in E.bags:
        acc = set(E.bags[t])
        for a in E.ancestors(t):
            acc |= E.bags[a]
        bags[t] = frozenset(acc)
    edges = E.tree_edges
    roots = E.roots
    if len(roots) == 1:
        root = roots[0]
    else:
        root = max(E.bags) + 1
        bags[root] = frozenset()
        edges = edges + [(root, r) for r in roots]
    new_bags, new_edges = relabel_nodes(bags, edges, root)
    return HTreeDecomposition(new_bags, new_edges, frozenset(E.base), E.family)
