"""Growing edge-disjoint branchings into spanning ones without touching their roots.

The driver visits vertices in ascending id order and, for each branching
that still misses the current vertex, grows that branching one safe edge at
a time until the vertex is covered. An edge is safe when adding it keeps
the cut condition; among safe edges the one closest to the target wins.
"""
from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .branching import KBranching, Path, residual
from .cardinal import ALEPH0
from .cuts import (CutCertificate, auxiliary_network, build_auxiliary, certificate_from_cut,
                   check_condition, minimal_dangerous_for_edge, s_value)
from .digraph import Digraph, Edge
from .errors import InputError, LogicError, UnreachableError
from .maxflow import Arc, max_flow

SINK = ("sink",)


@dataclass(frozen=True)
class PathSystem:
    """Edge-disjoint paths toward a common target.

    ``index[i]`` names what path ``i`` belongs to: a branching index for
    systems built by :func:`path_system_to`, the id of the entering edge for
    :func:`path_system_nested`. ``host`` is the graph the edge ids refer to,
    which includes any edges drawn from bundles.
    """

    host: Digraph
    target: str | frozenset[str]
    paths: tuple[Path, ...]
    index: tuple

    def __len__(self):
        return len(self.paths)

    def to_json(self, base: Digraph | None = None) -> dict:
        target = self.target if isinstance(self.target, str) else sorted(self.target)
        doc = {
            "target": target,
            "paths": [{"index": i, **p.to_json()} for i, p in zip(self.index, self.paths)],
        }
        if base is not None:
            doc["materialized"] = materialized_json(base, self.host)
        return doc


class TraceStep(NamedTuple):
    step: int
    vertex: str
    branching: int
    edges: tuple[str, ...]

    def to_json(self) -> dict:
        return {"step": self.step, "vertex": self.vertex, "branching": self.branching,
                "path": list(self.edges)}


@dataclass(frozen=True)
class PackReport:
    host: Digraph
    roots: tuple[frozenset[str], ...]
    packing: KBranching | None = None
    certificate: CutCertificate | None = None
    trace: tuple[TraceStep, ...] = field(default_factory=tuple)

    @property
    def outcome(self) -> str:
        return "packed" if self.packing is not None else "infeasible"

    def to_json(self, base: Digraph) -> dict:
        return {
            "outcome": self.outcome,
            "branchings": None if self.packing is None else [
                {"roots": sorted(b.roots), "edges": list(b.edges)} for b in self.packing],
            "certificate": None if self.certificate is None else self.certificate.to_json(),
            "materialized": materialized_json(base, self.host),
            "trace": [t.to_json() for t in self.trace],
        }


class Extension(NamedTuple):
    host: Digraph
    kb: KBranching
    edges: tuple[str, ...]


def materialized_json(base: Digraph, host: Digraph) -> list[dict]:
    return [{"id": e.id, "tail": e.tail, "head": e.head}
            for e in host.edges if not base.has_edge(e.id)]


def _check_index(kb: KBranching, j: int):
    if not 0 <= j < kb.k:
        raise InputError(f"branching index {j} out of range for k={kb.k}")


# -- reachability inside a dangerous set ----------------------------------

def reach_in_set(host: Digraph, kb: KBranching, j: int, B: Iterable[str], w: str) -> tuple[Path, Digraph]:
    """Breadth-first path from ``V_j ∩ B`` to ``w`` inside the residual graph on ``B``.

    Returns the path and the host it lives in (a bundle step is drawn as a
    fresh explicit edge). When ``w`` is unreachable, UnreachableError carries
    the unreached part of ``B``; for a dangerous ``B`` that part would
    violate the cut condition.
    """
    _check_index(kb, j)
    B = host.check_vertices(B)
    if w not in B:
        raise InputError(f"{w!r} is not in the given set")
    sub = residual(host, kb).induced(B)
    sources = sorted(kb[j].vertices & B)
    if w in kb[j].vertices:
        return Path((w,)), host
    parent: dict[str, tuple[str, str | None]] = {}
    seen = set(sources)
    queue = deque(sources)
    while queue and w not in seen:
        u = queue.popleft()
        steps = [(e.head, 0, e.id) for e in sub.out_edges(u)]
        steps += [(b.head, 1, None) for b in sub.out_bundles(u)]
        for head, _, eid in sorted(steps, key=lambda s: (s[0], s[1], s[2] or "")):
            if head not in seen:
                seen.add(head)
                parent[head] = (u, eid)
                queue.append(head)
    if w not in seen:
        raise UnreachableError(f"{w!r} is not reachable from branching {j} inside the set",
                               B - seen)
    hops = []
    v = w
    while v not in sources:
        u, eid = parent[v]
        hops.append((u, v, eid))
        v = u
    hops.reverse()
    verts = [hops[0][0]]
    edges = []
    for u, v, eid in hops:
        if eid is None:
            host, (eid,) = host.materialize((u, v), 1)
        edges.append(eid)
        verts.append(v)
    return Path(tuple(verts), tuple(edges)), host


# -- safe extension ---------------------------------------------------------

def _distances_to(res: Digraph, v: str) -> dict[str, int]:
    dist = {v: 0}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        preds = [e.tail for e in res.in_edges(x)] + [b.tail for b in res.in_bundles(x)]
        for t in preds:
            if t not in dist:
                dist[t] = dist[x] + 1
                queue.append(t)
    return dist


def safe_edges(host: Digraph, kb: KBranching, j: int) -> list[Edge]:
    """Residual edges leaving branching ``j`` whose addition keeps the cut condition."""
    _check_index(kb, j)
    Vj = kb[j].vertices
    res = residual(host, kb)
    out = []
    for e in sorted(res.edges, key=lambda e: e.id):
        if e.tail in Vj and e.head not in Vj:
            if minimal_dangerous_for_edge(host, kb, j, e.id) is None:
                out.append(e)
    return out


def extend_toward(host: Digraph, kb: KBranching, j: int, v: str) -> Extension:
    """Grow branching ``j`` by safe edges until it contains ``v``.

    Each round ranks the edges leaving the branching by the residual distance
    from their head to ``v`` (ties by edge id) and takes the first safe one.
    Bundles leaving the branching compete as a fresh draw; a draw never
    lowers any in-degree, so it is always safe. Every returned state satisfies
    the cut condition, provided the input did.
    """
    _check_index(kb, j)
    if v not in host:
        raise InputError(f"unknown vertex {v!r}")
    if v in kb[j].vertices:
        raise InputError(f"{v!r} is already in branching {j}")
    added = []
    while v not in kb[j].vertices:
        Vj = kb[j].vertices
        res = residual(host, kb)
        dist = _distances_to(res, v)
        ranked = []
        for u in sorted(Vj):
            for e in res.out_edges(u):
                if e.head not in Vj:
                    ranked.append((dist.get(e.head, math.inf), e.id, e.head, None))
            for b in res.out_bundles(u):
                if b.head not in Vj:
                    draw = host.fresh_bundle_ids(b.tail, b.head, 1)[0]
                    ranked.append((dist.get(b.head, math.inf), draw, b.head, b))
        ranked.sort(key=lambda c: (c[0], c[1]))
        blocked: list[frozenset[str]] = []
        for _, eid, head, bundle in ranked:
            if bundle is not None:
                host, (eid,) = host.materialize(bundle, 1)
                break
            # an edge entering a known dangerous set is unsafe without a flow
            tail = host.edge(eid).tail
            if any(head in D and tail not in D for D in blocked):
                continue
            D = minimal_dangerous_for_edge(host, kb, j, eid)
            if D is None:
                break
            blocked.append(D)
        else:
            raise LogicError(f"no safe edge leaves branching {j} while {v!r} is missing; "
                             "the cut condition must have failed")
        kb = kb.replace(j, kb[j].add_edge(host, eid))
        added.append(eid)
    return Extension(host, kb, tuple(added))


# -- path systems -----------------------------------------------------------

class _EdgePool:
    """Hands out concrete edge ids for arcs of a collapsed flow network."""

    def __init__(self, host: Digraph):
        self.host = host
        self._left: dict[tuple, list[str]] = {}

    def take(self, arc: Arc) -> str:
        kind = arc.label[0]
        if kind == "edges":
            left = self._left.setdefault(arc.label, list(arc.label[1]))
            return left.pop(0)
        if kind == "bundle":
            self.host, (eid,) = self.host.materialize((arc.tail, arc.head), 1)
            return eid
        raise LogicError(f"arc {arc} does not correspond to a graph edge")


def path_system_to(host: Digraph, kb: KBranching, w: str) -> PathSystem | CutCertificate:
    """Edge-disjoint paths, one from each branching's vertex set to ``w``.

    Path i meets ``V_i`` only in its first vertex. Returns a certificate
    instead when the cut condition fails on some set containing ``w``.
    """
    net = build_auxiliary(host, kb, w)
    result = max_flow(net)
    if result.value < kb.k:
        return certificate_from_cut(host, kb, result.sink_side_min)
    pool = _EdgePool(host)
    paths: list[Path | None] = [None] * kb.k
    for arc_path in result.paths:
        arcs = [net.arcs[a] for a in arc_path]
        i = arcs[0].head[1]
        verts = [arcs[1].head]
        edges = []
        for arc in arcs[2:]:
            edges.append(pool.take(arc))
            verts.append(arc.head)
        Vi = kb[i].vertices
        cut = max(n for n, x in enumerate(verts) if x in Vi)
        paths[i] = Path(tuple(verts[cut:]), tuple(edges[cut:]))
    if any(p is None for p in paths):
        raise LogicError("flow decomposition missed a branching")
    return PathSystem(pool.host, w, tuple(paths), tuple(range(kb.k)))


def path_system_nested(host: Digraph, kb: KBranching, B0: Iterable[str], B1: Iterable[str]) -> PathSystem:
    """Paths inside ``B0`` from the heads of its in-edges to ``B1``.

    ``B1 ⊆ B0`` must both be tight with the same finite in-degree ``l ≥ 1``.
    Path j starts at the head of the j-th in-edge of ``B0`` (ascending id)
    and meets ``B1`` only at its end. The heads of the last edges, counted
    with multiplicity, match the heads of the in-edges of ``B1``.
    """
    B0 = host.check_vertices(B0)
    B1 = host.check_vertices(B1)
    if not B1 or not B1 <= B0:
        raise InputError("need nonempty B1 contained in B0")
    res = residual(host, kb)
    l = res.rho(B0)
    if l is ALEPH0 or l < 1:
        raise InputError(f"B0 must have finite positive in-degree, got {l}")
    if res.rho(B1) != l:
        raise InputError(f"in-degrees differ: {l} vs {res.rho(B1)}")
    for name, X in (("B0", B0), ("B1", B1)):
        if s_value(host, kb, X) != l:
            raise InputError(f"{name} is not tight")
    missing = [(i, V) for i, V in enumerate(kb.vertex_sets) if V.isdisjoint(B0)]
    cap = l + 1
    net = auxiliary_network(res, missing, SINK, cap,
                            extra_arcs=[Arc(b, SINK, cap) for b in sorted(B1)],
                            extra_vertices=(SINK,))
    result = max_flow(net)
    if result.value < l:
        raise InputError(f"only {result.value} of {l} paths exist; the cut condition fails")

    entering = sorted(e.id for e in res.in_cut(B0)[0])
    pool = _EdgePool(host)
    by_entry: dict[str, Path] = {}
    for arc_path in result.paths:
        arcs = [net.arcs[a] for a in arc_path][1:-1]
        verts = [arcs[0].head]
        edges = []
        for arc in arcs[1:]:
            edges.append(pool.take(arc))
            verts.append(arc.head)
        first = next(n for n, x in enumerate(verts) if x in B0)
        if first == 0 or not all(x in B0 for x in verts[first:]):
            raise LogicError("a path does not enter B0 exactly once")
        entry = edges[first - 1]
        verts, edges = verts[first:], edges[first:]
        stop = next(n for n, x in enumerate(verts) if x in B1)
        by_entry[entry] = Path(tuple(verts[:stop + 1]), tuple(edges[:stop]))
    if sorted(by_entry) != entering:
        raise LogicError("the paths do not use every in-edge of B0")
    paths = tuple(by_entry[e] for e in entering)
    system = PathSystem(pool.host, B1, paths, tuple(entering))

    ends = Counter(p.end for p in paths)
    expected = Counter(e.head for e in residual(pool.host, kb).in_cut(B1)[0])
    if ends != expected:
        raise LogicError(f"endpoint multiset {dict(ends)} differs from in-edge heads {dict(expected)}")
    return system


# -- the driver ---------------------------------------------------------------

def _prepare(host: Digraph, roots: Sequence[Iterable[str]], initial: KBranching | None) -> KBranching:
    root_sets = []
    for i, r in enumerate(roots):
        r = host.check_vertices(r)
        if not r:
            raise InputError(f"root set {i} is empty")
        root_sets.append(r)
    if initial is None:
        return KBranching.edgeless(root_sets)
    if initial.k != len(root_sets):
        raise InputError(f"{initial.k} initial branchings for {len(root_sets)} root sets")
    for i, (b, r) in enumerate(zip(initial, root_sets)):
        if b.roots != r:
            raise InputError(f"initial branching {i} has roots {sorted(b.roots)}, expected {sorted(r)}")
    bad = initial.verify(host)
    if bad is not None:
        raise InputError(f"initial branchings are invalid: {bad.message}")
    return initial


def pack(host: Digraph, roots: Sequence[Iterable[str]], initial: KBranching | None = None,
         method: str = "flow") -> PackReport:
    """Extend edge-disjoint branchings to spanning ones with the given root sets.

    Without ``initial`` the branchings start edgeless. If the cut condition
    fails the report carries a certificate instead of a packing. ``method``
    selects the checker used for that initial decision.
    """
    kb = _prepare(host, roots, initial)
    root_sets = tuple(kb.root_sets)
    cert = check_condition(host, kb, method)
    if cert is not None:
        return PackReport(host, root_sets, certificate=cert)
    trace = []
    for n, v in enumerate(host.sorted_vertices):
        for j in range(kb.k):
            if v not in kb[j].vertices:
                host, kb, edges = extend_toward(host, kb, j, v)
                trace.append(TraceStep(n, v, j, edges))
    bad = kb.verify(host)
    if bad is not None:
        raise LogicError(f"packing failed verification: {bad.message}")
    if not all(b.is_spanning(host) for b in kb) or tuple(kb.root_sets) != root_sets:
        raise LogicError("packing is not spanning or changed a root set")
    return PackReport(host, root_sets, packing=kb, trace=tuple(trace))
