"""Hypothesis strategies for small random multigraphs and root sets."""
from hypothesis import strategies as st

from branchpack import Bundle, Digraph, Edge


@st.composite
def digraphs(draw, min_n=1, max_n=5, max_edges=10, bundles=False, loops=False):
    n = draw(st.integers(min_n, max_n))
    names = [chr(ord("a") + i) for i in range(n)]
    pairs = st.tuples(st.sampled_from(names), st.sampled_from(names))
    if not loops:
        pairs = pairs.filter(lambda p: p[0] != p[1]) if n > 1 else st.nothing()
    raw = draw(st.lists(pairs, max_size=max_edges)) if n > 1 or loops else []
    edges = [Edge(f"e{i}", t, h) for i, (t, h) in enumerate(raw)]
    bs = []
    if bundles and n > 1:
        keys = draw(st.lists(st.tuples(st.sampled_from(names), st.sampled_from(names))
                             .filter(lambda p: p[0] != p[1]), max_size=3, unique=True))
        bs = [Bundle(t, h) for t, h in keys]
    return Digraph(names, edges, bs)


@st.composite
def graphs_with_roots(draw, max_k=3, **kw):
    g = draw(digraphs(**kw))
    names = g.sorted_vertices
    k = draw(st.integers(0, max_k))
    roots = [frozenset(draw(st.lists(st.sampled_from(names), min_size=1, max_size=len(names), unique=True)))
             for _ in range(k)]
    return g, roots
