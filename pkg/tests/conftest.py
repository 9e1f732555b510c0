"""Shared builders and strategies for the test suite."""

from __future__ import annotations

from hypothesis import strategies as st

from dimatch.graph import Graph


def path(k: int) -> Graph:
    return Graph(k, [(i, i + 1) for i in range(k - 1)])


def cycle(k: int) -> Graph:
    return Graph(k, [(i, i + 1) for i in range(k - 1)] + [(0, k - 1)])


def graph_from_mask(n: int, mask: int) -> Graph:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return Graph(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])


@st.composite
def small_graphs(draw, min_n: int = 1, max_n: int = 8) -> Graph:
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    top = 1 << (n * (n - 1) // 2)
    mask = draw(st.integers(min_value=0, max_value=top - 1))
    return graph_from_mask(n, mask)


@st.composite
def small_connected_graphs(draw, min_n: int = 2, max_n: int = 8) -> Graph:
    from hypothesis import assume

    g = draw(small_graphs(min_n=min_n, max_n=max_n))
    assume(g.is_connected())
    return g
