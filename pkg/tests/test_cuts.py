from itertools import product

import pytest
from hypothesis import assume, given, settings

from branchpack import (ALEPH0, Branching, CutCertificate, Deficit, InputError,
                        build_auxiliary, check_condition, check_condition_bruteforce,
                        check_condition_flow, max_flow, minimal_dangerous_for_edge, p_value,
                        residual, s_value, status)
from branchpack.cuts import SOURCE, branch_node
from branchpack.maxflow import cut_capacity
from conftest import edgeless
from oracles import (all_subsets, condition_holds, dangerous_sets, exhaustive_instances,
                     rho_direct, s_direct, subsets, violators)
from strategies import graphs_with_roots


def test_s_value_examples(triangle, cx3):
    kb = edgeless([{"r"}, {"r"}])
    assert s_value(triangle, kb, triangle.vertices) == 0
    assert s_value(triangle, kb, {"a"}) == 2
    g, roots = cx3
    assert s_value(g, edgeless(roots), {"r0", "v"}) == 3
    with pytest.raises(InputError):
        s_value(triangle, kb, {"x"})


def test_p_value_examples(triangle, cx3):
    kb = edgeless([{"r"}, {"r"}])
    assert p_value(triangle, kb, {"a"}) == 0
    assert p_value(triangle, kb, triangle.vertices) == 0
    g, roots = cx3
    assert p_value(g, edgeless(roots), {"v"}) is ALEPH0
    assert p_value(triangle, edgeless([{"r"}] * 3), {"a"}) == Deficit(2, 3)


def test_bruteforce_examples(triangle, cx3):
    g, roots = cx3
    assert check_condition_bruteforce(g, edgeless(roots)) is None
    cert = check_condition_bruteforce(triangle, edgeless([{"r"}] * 3))
    assert cert == CutCertificate(frozenset({"a"}), 2, 3)
    assert check_condition_bruteforce(triangle, edgeless([])) is None
    with pytest.raises(InputError):
        check_condition_bruteforce(triangle, edgeless([{"r"}]), max_vertices=2)


def test_flow_examples(triangle, cx3):
    g, roots = cx3
    assert check_condition_flow(g, edgeless(roots)) is None
    cert = check_condition_flow(triangle, edgeless([{"r"}] * 3))
    assert cert.deficit == 1 and cert.X in ({"a"}, {"b"})
    with pytest.raises(InputError):
        check_condition(triangle, edgeless([]), method="nope")


def test_build_auxiliary_smallest(triangle):
    net = build_auxiliary(triangle, edgeless([{"r"}]), "a")
    assert (SOURCE, branch_node(0), 1) in [(a.tail, a.head, a.cap) for a in net.arcs]
    assert (branch_node(0), "r", 1) in [(a.tail, a.head, a.cap) for a in net.arcs]
    with pytest.raises(InputError):
        build_auxiliary(triangle, edgeless([{"r"}]), "zz")


def test_isolated_target_has_no_flow():
    from branchpack import Digraph, Edge
    g = Digraph(["r", "a", "w"], [Edge("e", "r", "a")])
    assert max_flow(build_auxiliary(g, edgeless([{"r"}]), "w")).value == 0


@settings(max_examples=150)
@given(graphs_with_roots(max_k=3, max_n=5, max_edges=10, bundles=True))
def test_aux_cut_formula(data):
    # a cut closed under the infinite arcs costs rho(X) + (k - l), l = branch nodes inside
    g, roots = data
    kb = edgeless(roots)
    k = kb.k
    res = residual(g, kb)
    for w in g.sorted_vertices:
        net = build_auxiliary(g, kb, w)
        for X in subsets(g.sorted_vertices):
            if w not in X:
                continue
            inside = [branch_node(i) for i, V in enumerate(kb.vertex_sets) if V & X]
            cap = cut_capacity(net, set(X) | set(inside))
            # l counts the branch nodes left outside, i.e. branchings missing X
            l = k - len(inside)
            assert l == s_value(g, kb, X)
            rho = res.rho(X)
            if rho is ALEPH0:
                assert cap >= k
            else:
                assert cap == rho + (k - l)


def test_status_examples(triangle, cx3):
    kb = edgeless([{"r"}, {"r"}])
    st = status(triangle, kb, triangle.vertices, j=1)
    assert st.tight and st.dangerous and st.dangerous_for == {0, 1}
    g, roots = cx3
    kb3 = edgeless(roots)
    assert status(g, kb3, {"r0", "v"}).tight
    st_v = status(g, kb3, {"v"})
    assert st_v.p is ALEPH0 and not st_v.tight
    with pytest.raises(ValueError):
        status(g, kb3, {"v"}).dangerous


def test_certificate_rejects_non_violation():
    with pytest.raises(InputError):
        CutCertificate(frozenset({"a"}), 2, 2)
    with pytest.raises(InputError):
        CutCertificate(frozenset(), 0, 1)
    c = CutCertificate(frozenset({"a"}), 1, 2)
    assert CutCertificate.from_json(c.to_json()) == c


def _expected_flow_certificate(g, kb):
    used = kb.used_edges()
    bad = violators(g, kb.vertex_sets, used)
    if not bad:
        return None
    w = min(v for X in bad for v in X)
    mine = [X for X in bad if w in X]
    deficit = lambda X: s_direct(kb.vertex_sets, X) - rho_direct(g, used, X)  # noqa: E731
    top = max(deficit(X) for X in mine)
    return frozenset.intersection(*[X for X in mine if deficit(X) == top])


def _compare(g, roots):
    kb = edgeless(roots)
    flow = check_condition_flow(g, kb)
    brute = check_condition_bruteforce(g, kb)
    assert (flow is None) == (brute is None) == condition_holds(g, kb.vertex_sets)
    if brute is not None:
        assert brute.revalidate(g, kb) and flow.revalidate(g, kb)
        assert brute.X == min(violators(g, kb.vertex_sets), key=lambda X: tuple(sorted(X)))
        assert flow.X == _expected_flow_certificate(g, kb)


@settings(max_examples=300)
@given(graphs_with_roots(max_k=3, max_n=5, max_edges=10, bundles=True))
def test_flow_matches_brute_random(data):
    _compare(*data)


def test_flow_matches_brute_exhaustive_small():
    count = 0
    for g, roots in exhaustive_instances(max_n=3, max_edges=4, max_k=2):
        _compare(g, roots)
        count += 1
    assert count > 1000


@settings(max_examples=80)
@given(graphs_with_roots(max_k=3, max_n=5, max_edges=10, bundles=True))
def test_prop3_laws(data):
    g, roots = data
    kb = edgeless(roots)
    Vs = kb.vertex_sets
    sets = list(all_subsets(g.sorted_vertices))
    s = {X: s_direct(Vs, X) for X in sets}
    for X, Y in product(sets, sets):
        # s is supermodular, with equality iff no V_i meets both X\Y and Y\X while missing X∩Y
        gap = s[X | Y] + s[X & Y] - s[X] - s[Y]
        assert gap >= 0
        witnesses = sum(1 for V in Vs if not V & X & Y and V & (X - Y) and V & (Y - X))
        assert gap == witnesses
    if not condition_holds(g, Vs):
        return
    for j in range(kb.k):
        dangerous = dangerous_sets(g, Vs, frozenset(), j)
        for X, Y in product(dangerous, dangerous):
            if X & Y:
                assert status(g, kb, X & Y, j).dangerous
                assert status(g, kb, X | Y, j).dangerous


@settings(max_examples=200)
@given(graphs_with_roots(max_k=3, max_n=5, max_edges=10))
def test_minimal_dangerous_matches_brute(data):
    g, roots = data
    kb = edgeless(roots)
    assume(kb.k > 0 and condition_holds(g, kb.vertex_sets))
    for j in range(kb.k):
        Vj = kb.vertex_sets[j]
        for e in g.edges:
            if e.tail not in Vj or e.head in Vj:
                continue
            blocking = [X for X in dangerous_sets(g, kb.vertex_sets, frozenset(), j)
                        if e.head in X and e.tail not in X]
            got = minimal_dangerous_for_edge(g, kb, j, e.id)
            if not blocking:
                assert got is None
            else:
                assert got == frozenset.intersection(*blocking)
                assert status(g, kb, got, j).dangerous


def test_minimal_dangerous_triangle(triangle):
    kb = edgeless([{"r"}, {"r"}])
    # {a} is tight but misses V_0, so adding r->a to branching 0 is safe
    assert minimal_dangerous_for_edge(triangle, kb, 0, "e1") is None
    kb1 = kb.replace(0, Branching.from_edges(triangle, {"r"}, ["e1"]))
    assert minimal_dangerous_for_edge(triangle, kb1, 0, "e3") is None
    assert minimal_dangerous_for_edge(triangle, kb1, 1, "e2") is None
    with pytest.raises(InputError):
        minimal_dangerous_for_edge(triangle, kb1, 0, "e1")
    with pytest.raises(InputError):
        minimal_dangerous_for_edge(triangle, kb1, 5, "e3")


def test_unsafe_edge_detected():
    from branchpack import Digraph, Edge
    # {a, b} is tight and meets V_1, so c->a cannot go to branching 1
    g = Digraph(["a", "b", "c"], [Edge("e0", "a", "b"), Edge("e1", "b", "a"), Edge("e2", "c", "a")])
    kb = edgeless([{"c"}, {"b", "c"}])
    assert check_condition_flow(g, kb) is None
    assert minimal_dangerous_for_edge(g, kb, 1, "e2") == {"a", "b"}
    assert minimal_dangerous_for_edge(g, kb, 0, "e2") is None
    kb_bad = kb.replace(1, kb[1].add_edge(g, "e2"))
    assert check_condition_flow(g, kb_bad) == CutCertificate(frozenset({"a", "b"}), 0, 1)
