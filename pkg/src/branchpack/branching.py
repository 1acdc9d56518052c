"""Branchings, k-tuples of edge-disjoint branchings, and the residual graph."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .digraph import Digraph
from .errors import InputError, StructuralError


@dataclass(frozen=True)
class Path:
    """A simple directed path; a single vertex with no edges is allowed."""

    vertices: tuple[str, ...]
    edges: tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.vertices) != len(self.edges) + 1:
            raise InputError("a path needs exactly one more vertex than edges")
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError(f"path is not simple: {self.vertices}")

    @property
    def start(self) -> str:
        return self.vertices[0]

    @property
    def end(self) -> str:
        return self.vertices[-1]

    def __len__(self):
        return len(self.edges)

    @classmethod
    def from_edges(cls, host: Digraph, start: str, edge_ids: Sequence[str]) -> Path:
        verts = [start]
        for eid in edge_ids:
            e = host.edge(eid)
            if e.tail != verts[-1]:
                raise InputError(f"edge {eid!r} does not continue the path at {verts[-1]!r}")
            verts.append(e.head)
        return cls(tuple(verts), tuple(edge_ids))

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": list(self.edges)}


@dataclass(frozen=True)
class Violation:
    kind: str
    witness: str
    message: str

    def to_json(self) -> dict:
        return {"kind": self.kind, "witness": self.witness, "message": self.message}


@dataclass(frozen=True)
class Branching:
    roots: frozenset[str]
    vertices: frozenset[str]
    edges: tuple[str, ...] = ()

    @classmethod
    def trivial(cls, roots: Iterable[str]) -> Branching:
        roots = frozenset(roots)
        return cls(roots, roots, ())

    @classmethod
    def from_edges(cls, host: Digraph, roots: Iterable[str], edge_ids: Iterable[str]) -> Branching:
        roots = frozenset(roots)
        edge_ids = tuple(edge_ids)
        verts = set(roots)
        for eid in edge_ids:
            e = host.edge(eid)
            verts.add(e.tail)
            verts.add(e.head)
        return cls(roots, frozenset(verts), edge_ids)

    @property
    def edge_set(self) -> frozenset[str]:
        return frozenset(self.edges)

    def is_spanning(self, host: Digraph) -> bool:
        return self.vertices == host.vertex_set

    def add_path(self, path: Path) -> Branching:
        """Adjoin a path that meets the branching only in its first vertex."""
        if path.start not in self.vertices:
            raise StructuralError(f"path starts at {path.start!r}, outside the branching")
        overlap = self.vertices.intersection(path.vertices[1:])
        if overlap:
            raise StructuralError(f"path re-enters the branching at {sorted(overlap)}")
        return Branching(self.roots, self.vertices.union(path.vertices), self.edges + path.edges)

    def add_edge(self, host: Digraph, edge_id: str) -> Branching:
        e = host.edge(edge_id)
        return self.add_path(Path((e.tail, e.head), (edge_id,)))

    def verify(self, host: Digraph) -> Violation | None:
        """Return the first violated branching property, or None if all hold."""
        edges = [host.edge(eid) for eid in self.edges]
        if not self.roots:
            return Violation("roots", "", "root set is empty")
        if not self.roots <= self.vertices:
            bad = sorted(self.roots - self.vertices)[0]
            return Violation("roots", bad, f"root {bad!r} is not a vertex of the branching")
        unknown = sorted(self.vertices - host.vertex_set)
        if unknown:
            return Violation("vertex", unknown[0], f"vertex {unknown[0]!r} is not in the host")
        seen = set()
        parent = {}
        for e in edges:
            if e.id in seen:
                return Violation("duplicate", e.id, f"edge {e.id!r} listed twice")
            seen.add(e.id)
            for x in (e.tail, e.head):
                if x not in self.vertices:
                    return Violation("endpoint", e.id, f"edge {e.id!r} touches {x!r} outside the branching")
            if e.head in self.roots:
                return Violation("in-degree", e.head, f"root {e.head!r} has an in-edge {e.id!r}")
            if e.head in parent:
                return Violation("in-degree", e.head, f"vertex {e.head!r} has two in-edges")
            parent[e.head] = e.tail
        for v in sorted(self.vertices - self.roots):
            if v not in parent:
                return Violation("in-degree", v, f"vertex {v!r} has no in-edge")
        for v in sorted(self.vertices - self.roots):
            trail = {v}
            u = parent[v]
            while u not in self.roots:
                if u in trail:
                    return Violation("cycle", u, f"vertex {u!r} lies on a directed cycle")
                trail.add(u)
                u = parent[u]
        return None


@dataclass(frozen=True)
class KBranching:
    branchings: tuple[Branching, ...]

    @classmethod
    def edgeless(cls, roots: Iterable[Iterable[str]]) -> KBranching:
        return cls(tuple(Branching.trivial(r) for r in roots))

    @property
    def k(self) -> int:
        return len(self.branchings)

    def __len__(self):
        return len(self.branchings)

    def __getitem__(self, j) -> Branching:
        return self.branchings[j]

    def __iter__(self) -> Iterator[Branching]:
        return iter(self.branchings)

    @property
    def vertex_sets(self) -> list[frozenset[str]]:
        return [b.vertices for b in self.branchings]

    @property
    def root_sets(self) -> list[frozenset[str]]:
        return [b.roots for b in self.branchings]

    def used_edges(self) -> frozenset[str]:
        return frozenset(eid for b in self.branchings for eid in b.edges)

    def replace(self, j: int, b: Branching) -> KBranching:
        bs = list(self.branchings)
        bs[j] = b
        return KBranching(tuple(bs))

    def verify(self, host: Digraph) -> Violation | None:
        """Check every branching and pairwise edge-disjointness."""
        owner = {}
        for j, b in enumerate(self.branchings):
            bad = b.verify(host)
            if bad is not None:
                return Violation(bad.kind, bad.witness, f"branching {j}: {bad.message}")
            for eid in b.edges:
                if eid in owner:
                    return Violation("shared-edge", eid,
                                     f"edge {eid!r} used by branchings {owner[eid]} and {j}")
                owner[eid] = j
        return None


def residual(host: Digraph, kb: KBranching) -> Digraph:
    """The host with every edge used by ``kb`` removed; bundles stay."""
    return host.remove_edges(kb.used_edges())
