from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from branchpack import ALEPH0, Bundle, Digraph, Edge, InputError
from branchpack.formats import graph_from_json, graph_to_json, to_dot
from oracles import all_subsets, rho_direct
from strategies import digraphs


def test_rho_examples(triangle, cx3):
    # by hand: r->a and b->a enter {a}
    assert triangle.rho({"a"}) == 2 == rho_direct(triangle, frozenset(), {"a"})
    assert triangle.rho(triangle.vertices) == 0
    g, _ = cx3
    assert g.rho({"r0"}) is ALEPH0


def test_rho_unknown_vertex(triangle):
    with pytest.raises(InputError):
        triangle.rho({"zz"})


def test_edges_between(triangle, cx3):
    edges, bundles = triangle.edges_between({"r"}, {"a"})
    assert [e.id for e in edges] == ["e1"] and bundles == []
    assert triangle.edges_between(set(), {"a"}) == ([], [])
    g, _ = cx3
    edges, bundles = g.edges_between({"r1"}, {"v"})
    assert len(edges) == 1 and bundles == []


def test_induced(triangle):
    assert triangle.induced(triangle.vertices) == triangle
    sub = triangle.induced({"a", "b"})
    assert {(e.id, e.tail, e.head) for e in sub.edges} == {("e3", "a", "b"), ("e4", "b", "a")}
    empty = triangle.induced(set())
    assert len(empty) == 0 and empty.edges == ()


def test_remove_edges(triangle, cx3):
    assert triangle.remove_edges(set()) == triangle
    assert sorted(e.id for e in triangle.remove_edges({"e1", "e3"}).edges) == ["e2", "e4"]
    g, _ = cx3
    bare = g.remove_edges(g.edge_ids)
    assert bare.edges == () and bare.bundles == g.bundles
    with pytest.raises(InputError):
        triangle.remove_edges({"nope"})


def test_materialize():
    g = Digraph(["x", "y"], bundles=[Bundle("x", "y")])
    g1, ids1 = g.materialize(Bundle("x", "y"), 2)
    g2, ids2 = g1.materialize(("x", "y"), 3)
    assert len(ids1) == 2 and len(ids2) == 3 and not set(ids1) & set(ids2)
    assert g2.bundle("x", "y") is not None
    assert sum(1 for e in g2.edges if e.head == "y") == 5
    assert all(i.startswith("bundle:") for i in ids1 + ids2)
    single = Digraph(["p", "q"], bundles=[Bundle("p", "q")]).materialize(("p", "q"), 1)[0]
    assert [(e.tail, e.head) for e in single.edges] == [("p", "q")]
    with pytest.raises(InputError):
        g.materialize(("y", "x"), 1)


def test_materialize_counterexample_bundle():
    from branchpack.generators import counterexample
    g, _ = counterexample(3)
    g2, ids = g.materialize(("r0", "r1"), 2)
    assert len(ids) == 2
    assert [(g2.edge(i).tail, g2.edge(i).head) for i in ids] == [("r0", "r1")] * 2


def test_loops_ignored_but_kept():
    g = Digraph(["x", "y"], [Edge("l", "x", "x"), Edge("e", "y", "x")])
    assert g.rho({"x"}) == 1
    assert g.delta({"x"}) == 0
    assert graph_from_json(graph_to_json(g)) == g


def test_construction_errors():
    with pytest.raises(InputError):
        Digraph(["a", "a"])
    with pytest.raises(InputError):
        Digraph(["a"], [Edge("e", "a", "b")])
    with pytest.raises(InputError):
        Digraph(["a", "b"], [Edge("e", "a", "b"), Edge("e", "b", "a")])
    with pytest.raises(InputError):
        Digraph(["a", "b"], bundles=[Bundle("a", "b"), Bundle("a", "b")])


@settings(max_examples=60)
@given(digraphs(max_n=6, max_edges=12, loops=True))
def test_in_plus_out_counts_crossing_edges(g):
    for X in all_subsets(g.vertices):
        crossing = sum(1 for e in g.edges if (e.tail in X) != (e.head in X))
        assert g.rho(X) + g.delta(X) == crossing


@settings(max_examples=25)
@given(digraphs(max_n=5, max_edges=10))
def test_rho_submodular(g):
    sets = list(all_subsets(g.vertices))
    for X, Y in product(sets, sets):
        assert g.rho(X) + g.rho(Y) >= g.rho(X | Y) + g.rho(X & Y)


@given(digraphs(max_n=5, max_edges=10, bundles=True), st.data())
def test_remove_edges_never_raises_rho(g, data):
    S = data.draw(st.sets(st.sampled_from(sorted(g.edge_ids)))) if g.edges else set()
    h = g.remove_edges(S)
    for X in all_subsets(g.vertices):
        assert h.rho(X) <= g.rho(X)


@given(digraphs(max_n=5, max_edges=10, bundles=True), st.data())
def test_induced_preserves_identity(g, data):
    B = data.draw(st.sets(st.sampled_from(g.sorted_vertices)))
    sub = g.induced(B)
    for e in sub.edges:
        assert g.edge(e.id) == e


@given(digraphs(max_n=5, max_edges=10, bundles=True, loops=True))
def test_json_round_trip(g):
    assert graph_from_json(graph_to_json(g)) == g


def test_dot_export(cx3):
    g, _ = cx3
    dot = to_dot(g)
    assert dot.startswith("digraph D {")
    assert '"r0" -> "r1" [label="ℵ0", style=bold, penwidth=3];' in dot
    assert '"r1" -> "v" [label="e1"];' in dot
