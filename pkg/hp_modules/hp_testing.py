"""Hypothesis strategies and small fixtures shared by the test modules."""
from itertools import combinations

from hypothesis import strategies as st

from hp_modules.hp_graph import Graph, disjoint_union
from hp_modules.hp_problems import TRIANGLE


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 8) -> Graph:
    """Arbitrary simple graphs on 1..n."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = list(combinations(range(1, n + 1), 2))
    if not pairs:
        return Graph(n)
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return Graph(n, edges)


@st.composite
def graphs_with_subset(draw, min_n: int = 1, max_n: int = 8):
    """(G, S) with S an arbitrary vertex subset of G."""
    G = draw(graphs(min_n=min_n, max_n=max_n))
    S = draw(st.sets(st.integers(min_value=1, max_value=G.n), max_size=G.n))
    return G, frozenset(S)


def two_triangles() -> Graph:
    return disjoint_union(TRIANGLE, TRIANGLE)
