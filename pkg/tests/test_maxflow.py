import pytest
from hypothesis import given, settings, strategies as st

from branchpack import Arc, FlowNetwork, InputError, max_flow
from branchpack.maxflow import cut_capacity
from oracles import brute_min_cut


def net(n, arcs, s=0, t=None):
    t = n - 1 if t is None else t
    return FlowNetwork(tuple(range(n)), tuple(Arc(a, b, c) for a, b, c in arcs), s, t)


def test_single_arc():
    r = max_flow(net(2, [(0, 1, 3)]))
    assert r.value == 3 and len(r.paths) == 3


def test_two_unit_bottleneck():
    # two unit arcs form the only bridge between the halves
    arcs = [(0, 1, 5), (0, 2, 5), (1, 2, 5), (1, 3, 1), (2, 4, 1), (3, 5, 5), (4, 5, 5), (3, 4, 5)]
    r = max_flow(net(6, arcs))
    best, _ = brute_min_cut(range(6), arcs, 0, 5)
    assert r.value == 2 == best


def test_disconnected():
    r = max_flow(net(4, [(0, 1, 2), (2, 3, 1)]))
    assert r.value == 0 and r.paths == []
    assert r.source_side_min == {0, 1}
    assert r.sink_side_min == {2, 3}


def test_source_equals_sink():
    with pytest.raises(InputError):
        net(2, [], s=0, t=0)


@pytest.mark.parametrize("cap", [-1, 1.5, True])
def test_bad_capacity(cap):
    with pytest.raises(InputError):
        net(2, [(0, 1, cap)])


@st.composite
def networks(draw, max_n=6):
    n = draw(st.integers(2, max_n))
    arcs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(0, 3)),
                         max_size=14))
    return n, arcs


@settings(max_examples=300)
@given(networks())
def test_against_brute_min_cut(data):
    n, arcs = data
    N = net(n, arcs)
    r = max_flow(N)
    best, sides = brute_min_cut(range(n), [a for a in arcs if a[0] != a[1]], 0, n - 1)
    assert r.value == best
    assert cut_capacity(N, r.sink_side_min) == best
    assert cut_capacity(N, set(range(n)) - r.source_side_min) == best
    # lattice extremes: the minimal sink side sits inside every minimum sink side,
    # and the minimal source side's complement contains every one
    assert r.sink_side_min in sides
    assert all(r.sink_side_min <= T for T in sides)
    assert all(T <= set(range(n)) - r.source_side_min for T in sides)


@settings(max_examples=300)
@given(networks(max_n=8))
def test_decomposition(data):
    n, arcs = data
    N = net(n, arcs)
    r = max_flow(N)
    assert len(r.paths) == r.value
    use = [0] * len(arcs)
    for p in r.paths:
        verts = r.path_vertices(N, p)
        assert verts[0] == 0 and verts[-1] == n - 1
        assert len(set(verts)) == len(verts)
        for a, b in zip(p, p[1:]):
            assert N.arcs[a].head == N.arcs[b].tail
        for a in p:
            use[a] += 1
    assert all(u <= a[2] for u, a in zip(use, arcs))
    assert all(f <= a[2] for f, a in zip(r.flow, arcs))


@given(networks())
def test_deterministic(data):
    n, arcs = data
    assert max_flow(net(n, arcs)) == max_flow(net(n, arcs))
