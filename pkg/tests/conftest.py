from __future__ import annotations

from hypothesis import strategies as st

from amflood.graph import Graph


@st.composite
def connected_graph(draw, min_n: int = 2, max_n: int = 8) -> Graph:
    """Random connected graph: a random attachment tree plus extra edges."""
    n = draw(st.integers(min_n, max_n))
    edges = set()
    for i in range(1, n):
        j = draw(st.integers(0, i - 1))
        edges.add((j, i))
    extra = draw(st.integers(0, min(10, n * (n - 1) // 2)))
    for _ in range(extra):
        u = draw(st.integers(0, n - 2))
        v = draw(st.integers(u + 1, n - 1))
        edges.add((u, v))
    return Graph.from_edges(n, sorted(edges))
