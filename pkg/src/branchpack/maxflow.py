"""Integer max-flow with flow decomposition and both canonical minimum cuts.

Augmenting paths are found by breadth-first search that scans arcs in the
order they were given, so results are reproducible for a fixed network.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any, Hashable, NamedTuple, Sequence

from .errors import InputError, LogicError


class Arc(NamedTuple):
    tail: Hashable
    head: Hashable
    cap: int
    label: Any = None


@dataclass(frozen=True)
class FlowNetwork:
    vertices: tuple
    arcs: tuple[Arc, ...]
    source: Hashable
    sink: Hashable

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise InputError("duplicate vertices in flow network")
        if self.source == self.sink:
            raise InputError("source and sink coincide")
        for x in (self.source, self.sink):
            if x not in vs:
                raise InputError(f"terminal {x!r} is not a vertex")
        for a in self.arcs:
            if a.tail not in vs or a.head not in vs:
                raise InputError(f"arc {a.tail!r}->{a.head!r} has an unknown endpoint")
            if isinstance(a.cap, bool) or not isinstance(a.cap, int) or a.cap < 0:
                raise InputError(f"capacity must be a nonnegative integer, got {a.cap!r}")


@dataclass(frozen=True)
class FlowResult:
    """Outcome of :func:`max_flow`.

    ``paths`` holds ``value`` unit paths as lists of arc indices; together
    they use each arc at most ``cap`` times. ``source_side_min`` is the set
    reachable from the source in the final residual network and
    ``sink_side_min`` the set that can still reach the sink; the first is the
    smallest source side and the second the smallest sink side over all
    minimum cuts.
    """

    value: int
    flow: tuple[int, ...]
    paths: list[list[int]]
    source_side_min: frozenset
    sink_side_min: frozenset = field(default_factory=frozenset)

    def path_vertices(self, net: FlowNetwork, path: Sequence[int]) -> list:
        if not path:
            return [net.source]
        return [net.arcs[path[0]].tail] + [net.arcs[a].head for a in path]


def cut_capacity(net: FlowNetwork, sink_side) -> int:
    """Total capacity of arcs entering ``sink_side``."""
    sink_side = set(sink_side)
    return sum(a.cap for a in net.arcs if a.head in sink_side and a.tail not in sink_side)


def max_flow(net: FlowNetwork) -> FlowResult:
    verts = list(net.vertices)
    index = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    tails = [index[a.tail] for a in net.arcs]
    heads = [index[a.head] for a in net.arcs]
    caps = [a.cap for a in net.arcs]
    out_adj: list[list[int]] = [[] for _ in range(n)]
    in_adj: list[list[int]] = [[] for _ in range(n)]
    for i, (t, h) in enumerate(zip(tails, heads)):
        if t == h:
            continue
        out_adj[t].append(i)
        in_adj[h].append(i)

    s, t = index[net.source], index[net.sink]
    flow = [0] * len(caps)
    value = 0
    while True:
        parent: list[tuple[int, int] | None] = [None] * n
        seen = [False] * n
        seen[s] = True
        queue = deque([s])
        while queue and not seen[t]:
            u = queue.popleft()
            for a in out_adj[u]:
                h = heads[a]
                if not seen[h] and flow[a] < caps[a]:
                    seen[h] = True
                    parent[h] = (a, 1)
                    queue.append(h)
            for a in in_adj[u]:
                x = tails[a]
                if not seen[x] and flow[a] > 0:
                    seen[x] = True
                    parent[x] = (a, -1)
                    queue.append(x)
        if not seen[t]:
            break
        bottleneck = None
        v = t
        while v != s:
            a, d = parent[v]
            room = caps[a] - flow[a] if d == 1 else flow[a]
            bottleneck = room if bottleneck is None else min(bottleneck, room)
            v = tails[a] if d == 1 else heads[a]
        v = t
        while v != s:
            a, d = parent[v]
            flow[a] += d * bottleneck
            v = tails[a] if d == 1 else heads[a]
        value += bottleneck

    source_side = {v for v in range(n) if seen[v]}

    reach_sink = [False] * n
    reach_sink[t] = True
    queue = deque([t])
    while queue:
        x = queue.popleft()
        for a in in_adj[x]:
            y = tails[a]
            if not reach_sink[y] and flow[a] < caps[a]:
                reach_sink[y] = True
                queue.append(y)
        for a in out_adj[x]:
            y = heads[a]
            if not reach_sink[y] and flow[a] > 0:
                reach_sink[y] = True
                queue.append(y)

    paths = _decompose(flow, tails, heads, out_adj, s, t, value)
    return FlowResult(
        value=value,
        flow=tuple(flow),
        paths=paths,
        source_side_min=frozenset(verts[v] for v in source_side),
        sink_side_min=frozenset(verts[v] for v in range(n) if reach_sink[v]),
    )


def _decompose(flow, tails, heads, out_adj, s, t, value):
    """Split an integral flow into ``value`` simple unit paths, dropping cycles."""
    rest = list(flow)
    paths = []
    while len(paths) < value:
        walk: list[int] = []
        pos = {s: 0}
        u = s
        while u != t:
            for a in out_adj[u]:
                if rest[a] > 0:
                    break
            else:
                raise LogicError("flow conservation violated during decomposition")
            h = heads[a]
            if h in pos:
                start = pos[h]
                for c in walk[start:]:
                    rest[c] -= 1
                rest[a] -= 1
                for c in walk[start:]:
                    del pos[heads[c]]
                del walk[start:]
                u = h
                continue
            walk.append(a)
            pos[h] = len(walk)
            u = h
        for a in walk:
            rest[a] -= 1
        paths.append(walk)
    return paths
