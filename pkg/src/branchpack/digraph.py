"""Finite directed multigraphs with edge identity and aleph-null bundles.

Explicit edges carry their own id so parallel edges stay distinguishable.
A bundle stands for countably many parallel edges between an ordered pair;
it contributes ALEPH0 to every cut it crosses and is never used up.
Loops are kept but ignored by every cut computation.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .cardinal import ALEPH0, Card
from .errors import InputError

BUNDLE_PREFIX = "bundle:"


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


@dataclass(frozen=True)
class Bundle:
    tail: str
    head: str

    @property
    def multiplicity(self) -> Card:
        return ALEPH0

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


class Digraph:
    """An immutable directed multigraph.

    Iteration order of vertices and edges is insertion order. Algorithms that
    need a canonical order use :attr:`sorted_vertices` and sort edges by id.
    """

    __slots__ = ("_vertices", "_vset", "_edges", "_bundles", "_in", "_out", "_bin", "_bout")

    def __init__(self, vertices: Iterable[str] = (), edges: Iterable[Edge] = (),
                 bundles: Iterable[Bundle] = ()):
        verts = []
        seen = set()
        for v in vertices:
            if not isinstance(v, str):
                raise InputError(f"vertex ids must be strings, got {v!r}")
            if v in seen:
                raise InputError(f"duplicate vertex {v!r}")
            seen.add(v)
            verts.append(v)
        self._vertices = tuple(verts)
        self._vset = frozenset(seen)

        self._edges: dict[str, Edge] = {}
        for e in edges:
            if e.id in self._edges:
                raise InputError(f"duplicate edge id {e.id!r}")
            self._check_endpoints(e.tail, e.head, f"edge {e.id!r}")
            self._edges[e.id] = e

        self._bundles: dict[tuple[str, str], Bundle] = {}
        for b in bundles:
            key = (b.tail, b.head)
            if key in self._bundles:
                raise InputError(f"more than one bundle {b.tail!r}->{b.head!r}")
            self._check_endpoints(b.tail, b.head, "bundle")
            self._bundles[key] = b

        self._in = None
        self._out = None
        self._bin = None
        self._bout = None

    def _check_endpoints(self, tail, head, what):
        for x in (tail, head):
            if x not in self._vset:
                raise InputError(f"{what} uses unknown vertex {x!r}")

    # -- basic access ---------------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def vertex_set(self) -> frozenset[str]:
        return self._vset

    @property
    def sorted_vertices(self) -> list[str]:
        return sorted(self._vertices)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(self._edges.values())

    @property
    def bundles(self) -> tuple[Bundle, ...]:
        return tuple(self._bundles.values())

    @property
    def edge_ids(self) -> frozenset[str]:
        return frozenset(self._edges)

    def edge(self, edge_id: str) -> Edge:
        try:
            return self._edges[edge_id]
        except KeyError:
            raise InputError(f"unknown edge id {edge_id!r}") from None

    def has_edge(self, edge_id: str) -> bool:
        return edge_id in self._edges

    def bundle(self, tail: str, head: str) -> Bundle | None:
        return self._bundles.get((tail, head))

    def __contains__(self, v) -> bool:
        return v in self._vset

    def __len__(self) -> int:
        return len(self._vertices)

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return (self._vertices == other._vertices and self._edges == other._edges
                and self._bundles == other._bundles)

    def __hash__(self):
        return hash((self._vertices, tuple(self._edges.values()), tuple(self._bundles)))

    def __repr__(self):
        return (f"Digraph({len(self._vertices)} vertices, {len(self._edges)} edges, "
                f"{len(self._bundles)} bundles)")

    def check_vertices(self, X: Iterable[str]) -> frozenset[str]:
        """Return ``X`` as a frozenset, raising InputError on unknown vertices."""
        X = frozenset(X)
        unknown = X - self._vset
        if unknown:
            raise InputError(f"unknown vertices {sorted(map(str, unknown))}")
        return X

    # -- adjacency ------------------------------------------------------

    def _build_adjacency(self):
        ins = {v: [] for v in self._vertices}
        outs = {v: [] for v in self._vertices}
        for e in self._edges.values():
            if e.is_loop:
                continue
            ins[e.head].append(e)
            outs[e.tail].append(e)
        bins = {v: [] for v in self._vertices}
        bouts = {v: [] for v in self._vertices}
        for b in self._bundles.values():
            if b.is_loop:
                continue
            bins[b.head].append(b)
            bouts[b.tail].append(b)
        self._in, self._out, self._bin, self._bout = ins, outs, bins, bouts

    def in_edges(self, v: str) -> list[Edge]:
        """Explicit non-loop edges ending at ``v``."""
        if self._in is None:
            self._build_adjacency()
        return self._in[v]

    def out_edges(self, v: str) -> list[Edge]:
        if self._out is None:
            self._build_adjacency()
        return self._out[v]

    def in_bundles(self, v: str) -> list[Bundle]:
        if self._bin is None:
            self._build_adjacency()
        return self._bin[v]

    def out_bundles(self, v: str) -> list[Bundle]:
        if self._bout is None:
            self._build_adjacency()
        return self._bout[v]

    # -- cuts -----------------------------------------------------------

    def in_cut(self, X: Iterable[str]) -> tuple[list[Edge], list[Bundle]]:
        """Explicit edges and bundles entering ``X``."""
        X = self.check_vertices(X)
        edges = [e for v in X for e in self.in_edges(v) if e.tail not in X]
        bundles = [b for v in X for b in self.in_bundles(v) if b.tail not in X]
        return edges, bundles

    def out_cut(self, X: Iterable[str]) -> tuple[list[Edge], list[Bundle]]:
        X = self.check_vertices(X)
        edges = [e for v in X for e in self.out_edges(v) if e.head not in X]
        bundles = [b for v in X for b in self.out_bundles(v) if b.head not in X]
        return edges, bundles

    def rho(self, X: Iterable[str]) -> Card:
        """In-degree of the vertex set ``X``."""
        X = self.check_vertices(X)
        count = 0
        for v in X:
            for b in self.in_bundles(v):
                if b.tail not in X:
                    return ALEPH0
            for e in self.in_edges(v):
                if e.tail not in X:
                    count += 1
        return count

    def delta(self, X: Iterable[str]) -> Card:
        """Out-degree of the vertex set ``X``."""
        X = self.check_vertices(X)
        count = 0
        for v in X:
            for b in self.out_bundles(v):
                if b.head not in X:
                    return ALEPH0
            for e in self.out_edges(v):
                if e.head not in X:
                    count += 1
        return count

    def edges_between(self, X: Iterable[str], Y: Iterable[str]) -> tuple[list[Edge], list[Bundle]]:
        """All edges and bundles with tail in ``X`` and head in ``Y`` (loops included)."""
        X = self.check_vertices(X)
        Y = self.check_vertices(Y)
        edges = [e for e in self._edges.values() if e.tail in X and e.head in Y]
        bundles = [b for b in self._bundles.values() if b.tail in X and b.head in Y]
        return edges, bundles

    # -- derived graphs -------------------------------------------------

    def induced(self, B: Iterable[str]) -> Digraph:
        B = self.check_vertices(B)
        return Digraph(
            [v for v in self._vertices if v in B],
            [e for e in self._edges.values() if e.tail in B and e.head in B],
            [b for b in self._bundles.values() if b.tail in B and b.head in B],
        )

    def remove_edges(self, S: Iterable[str]) -> Digraph:
        S = frozenset(S)
        unknown = S - self._edges.keys()
        if unknown:
            raise InputError(f"unknown edge ids {sorted(unknown)}")
        if not S:
            return self
        return Digraph(self._vertices,
                       [e for e in self._edges.values() if e.id not in S],
                       self._bundles.values())

    def with_edges(self, new_edges: Iterable[Edge]) -> Digraph:
        return Digraph(self._vertices, [*self._edges.values(), *new_edges], self._bundles.values())

    def fresh_bundle_ids(self, tail: str, head: str, count: int) -> list[str]:
        ids = []
        n = 0
        while len(ids) < count:
            candidate = f"{BUNDLE_PREFIX}{tail}>{head}#{n}"
            if candidate not in self._edges:
                ids.append(candidate)
            n += 1
        return ids

    def materialize(self, bundle: Bundle | tuple[str, str], count: int) -> tuple[Digraph, list[str]]:
        """Draw ``count`` explicit edges out of a bundle.

        The bundle itself stays in place, since removing finitely many edges
        from an infinite bundle leaves an infinite bundle.
        """
        tail, head = (bundle.tail, bundle.head) if isinstance(bundle, Bundle) else bundle
        if (tail, head) not in self._bundles:
            raise InputError(f"no bundle {tail!r}->{head!r}")
        if count < 1:
            raise InputError(f"count must be positive, got {count}")
        ids = self.fresh_bundle_ids(tail, head, count)
        return self.with_edges(Edge(i, tail, head) for i in ids), ids
