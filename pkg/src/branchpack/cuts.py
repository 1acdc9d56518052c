"""The cut condition: every nonempty X needs at least s(X) residual in-edges.

Here s(X) counts the branchings whose vertex set misses X. This module
checks the condition two independent ways (subset enumeration and one
max-flow per target vertex), classifies tight and dangerous sets, and
locates the smallest dangerous set blocking a tentative edge.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .branching import KBranching, residual
from .cardinal import ALEPH0, Card, card_from_json, card_min_with, card_sub, card_to_json
from .digraph import Digraph
from .errors import InputError, LogicError
from .maxflow import Arc, FlowNetwork, max_flow

SOURCE = ("source",)

DEFAULT_BRUTEFORCE_LIMIT = 20


def branch_node(i: int) -> tuple:
    return ("branch", i)


@dataclass(frozen=True)
class CutCertificate:
    """A nonempty vertex set with fewer residual in-edges than branchings missing it."""

    X: frozenset[str]
    rho: Card
    s: int

    def __post_init__(self):
        if not self.X:
            raise InputError("certificate set must be nonempty")
        if not self.rho < self.s:
            raise InputError(f"not a violation: rho={self.rho} >= s={self.s}")

    @property
    def deficit(self) -> int:
        return self.s - self.rho

    def revalidate(self, host: Digraph, kb: KBranching) -> bool:
        """Recompute both sides from scratch and confirm the violation."""
        rho = residual(host, kb).rho(self.X)
        return self.X <= host.vertex_set and rho == self.rho and rho < s_value(host, kb, self.X)

    def to_json(self) -> dict:
        return {"X": sorted(self.X), "rho": card_to_json(self.rho), "s": self.s}

    @classmethod
    def from_json(cls, doc: dict) -> CutCertificate:
        try:
            return cls(frozenset(doc["X"]), card_from_json(doc["rho"]), int(doc["s"]))
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed certificate: {exc}") from None


class Deficit(NamedTuple):
    """p(X) when it would be negative: the raw pair rather than a number."""
    rho: Card
    s: int


@dataclass(frozen=True)
class SetStatus:
    X: frozenset[str]
    p: Card | Deficit
    tight: bool
    dangerous_for: frozenset[int]
    j: int | None = None

    @property
    def dangerous(self) -> bool:
        if self.j is None:
            raise ValueError("status was computed without a branching index")
        return self.j in self.dangerous_for


def s_value(host: Digraph, kb: KBranching, X: Iterable[str]) -> int:
    X = host.check_vertices(X)
    return sum(1 for V in kb.vertex_sets if V.isdisjoint(X))


def p_value(host: Digraph, kb: KBranching, X: Iterable[str]) -> Card | Deficit:
    X = host.check_vertices(X)
    if not X:
        raise InputError("p is only defined on nonempty sets")
    rho = residual(host, kb).rho(X)
    s = s_value(host, kb, X)
    if rho < s:
        return Deficit(rho, s)
    return card_sub(rho, s)


def status(host: Digraph, kb: KBranching, X: Iterable[str], j: int | None = None) -> SetStatus:
    X = host.check_vertices(X)
    p = p_value(host, kb, X)
    tight = p == 0
    dangerous = frozenset(i for i, V in enumerate(kb.vertex_sets) if tight and not V.isdisjoint(X))
    if j is not None and not 0 <= j < kb.k:
        raise InputError(f"branching index {j} out of range")
    return SetStatus(X, p, tight, dangerous, j)


# -- subset enumeration -------------------------------------------------

def check_condition_bruteforce(host: Digraph, kb: KBranching,
                               max_vertices: int = DEFAULT_BRUTEFORCE_LIMIT) -> CutCertificate | None:
    """Scan every nonempty vertex set; return the lexicographically first violator.

    Sets are compared as ascending tuples of vertex ids, so ``('a',)`` comes
    before ``('a', 'b')`` which comes before ``('b',)``.
    """
    verts = host.sorted_vertices
    n = len(verts)
    if n > max_vertices:
        raise InputError(f"{n} vertices exceed the enumeration bound {max_vertices}")
    if kb.k == 0 or n == 0:
        return None
    idx = {v: i for i, v in enumerate(verts)}
    res = residual(host, kb)
    e_in = [[idx[e.tail] for e in res.in_edges(v)] for v in verts]
    e_out = [[idx[e.head] for e in res.out_edges(v)] for v in verts]
    b_in = [[idx[b.tail] for b in res.in_bundles(v)] for v in verts]
    b_out = [[idx[b.head] for b in res.out_bundles(v)] for v in verts]
    member = [[] for _ in verts]
    for i, V in enumerate(kb.vertex_sets):
        for v in V:
            member[idx[v]].append(i)
    hits = [0] * kb.k

    def grow(start, mask, cnt, bcnt, s):
        for u in range(start, n):
            bit = 1 << u
            m2 = mask | bit
            c2 = cnt + sum(1 for t in e_in[u] if not m2 >> t & 1) - sum(1 for h in e_out[u] if mask >> h & 1)
            b2 = bcnt + sum(1 for t in b_in[u] if not m2 >> t & 1) - sum(1 for h in b_out[u] if mask >> h & 1)
            s2 = s
            for i in member[u]:
                hits[i] += 1
                if hits[i] == 1:
                    s2 -= 1
            if b2 == 0 and c2 < s2:
                found = (m2, c2, s2)
            else:
                found = grow(u + 1, m2, c2, b2, s2)
            for i in member[u]:
                hits[i] -= 1
            if found:
                return found
        return None

    found = grow(0, 0, 0, 0, kb.k)
    if found is None:
        return None
    mask, rho, s = found
    return CutCertificate(frozenset(v for i, v in enumerate(verts) if mask >> i & 1), rho, s)


# -- auxiliary flow network ---------------------------------------------

def auxiliary_network(res: Digraph, start_sets, sink, cap: int, extra_arcs=(), extra_vertices=()) -> FlowNetwork:
    """Flow network over the residual graph ``res`` fed from a super-source.

    ``start_sets`` is a sequence of ``(i, vertex set)`` pairs; each gets its
    own node with a unit arc from the source and an arc of capacity ``cap``
    to each of its vertices. Parallel residual edges collapse to one arc
    labelled with their ids in ascending order; bundles get ``cap``.
    """
    arcs = [Arc(SOURCE, branch_node(i), 1) for i, _ in start_sets]
    for i, V in start_sets:
        arcs.extend(Arc(branch_node(i), u, cap, ("root", i)) for u in sorted(V))
    groups: dict[tuple[str, str], list[str]] = {}
    for e in res.edges:
        if not e.is_loop:
            groups.setdefault((e.tail, e.head), []).append(e.id)
    for (t, h) in sorted(groups):
        ids = sorted(groups[(t, h)])
        arcs.append(Arc(t, h, len(ids), ("edges", tuple(ids))))
    for b in sorted(res.bundles, key=lambda b: (b.tail, b.head)):
        if not b.is_loop:
            arcs.append(Arc(b.tail, b.head, card_min_with(b.multiplicity, cap), ("bundle", b.tail, b.head)))
    arcs.extend(extra_arcs)
    vertices = (SOURCE, *(branch_node(i) for i, _ in start_sets), *res.sorted_vertices, *extra_vertices)
    return FlowNetwork(vertices, tuple(arcs), SOURCE, sink)


def build_auxiliary(host: Digraph, kb: KBranching, w: str, aleph_cap: int | None = None) -> FlowNetwork:
    """Residual graph plus a super-source feeding one node per branching.

    The node for branching i reaches every vertex of its vertex set through
    an infinite arc. Infinite arcs and residual bundles are priced at
    ``aleph_cap``, which defaults to k: no cut below k can use them.
    """
    if w not in host:
        raise InputError(f"unknown target {w!r}")
    cap = kb.k if aleph_cap is None else aleph_cap
    return auxiliary_network(residual(host, kb), list(enumerate(kb.vertex_sets)), w,
                             card_min_with(ALEPH0, cap))


def certificate_from_cut(host: Digraph, kb: KBranching, sink_side) -> CutCertificate:
    """Turn the sink side of a small cut in the auxiliary network into a certificate."""
    X = frozenset(x for x in sink_side if isinstance(x, str))
    rho = residual(host, kb).rho(X)
    s = s_value(host, kb, X)
    if not X or not rho < s:
        raise LogicError(f"extracted set {sorted(X)} is not a violation (rho={rho}, s={s})")
    return CutCertificate(X, rho, s)


def check_target(host: Digraph, kb: KBranching, w: str) -> CutCertificate | None:
    """Check only the sets containing ``w``."""
    if kb.k == 0:
        return None
    result = max_flow(build_auxiliary(host, kb, w))
    if result.value >= kb.k:
        return None
    return certificate_from_cut(host, kb, result.sink_side_min)


def check_condition_flow(host: Digraph, kb: KBranching) -> CutCertificate | None:
    """Decide the cut condition with one max-flow per vertex.

    Targets are tried in ascending id order and the certificate for the first
    failing one is returned. Among the sets containing that target with the
    largest deficit it is the smallest.
    """
    for w in host.sorted_vertices:
        cert = check_target(host, kb, w)
        if cert is not None:
            return cert
    return None


def check_condition(host: Digraph, kb: KBranching, method: str = "flow") -> CutCertificate | None:
    if method == "flow":
        return check_condition_flow(host, kb)
    if method == "brute":
        return check_condition_bruteforce(host, kb)
    raise InputError(f"unknown method {method!r}")


def minimal_dangerous_for_edge(host: Digraph, kb: KBranching, j: int, edge_id: str) -> frozenset[str] | None:
    """The smallest dangerous-for-``j`` set containing the head of ``edge_id``.

    Returns None when adding the edge to branching ``j`` keeps the cut
    condition. Only sets containing the head can become violated, so a
    single max-flow to the head, with infinite arcs priced above k, both
    decides safety and yields the smallest blocking set as the minimal sink
    side.
    """
    if not 0 <= j < kb.k:
        raise InputError(f"branching index {j} out of range")
    res = residual(host, kb)
    if not res.has_edge(edge_id):
        raise InputError(f"edge {edge_id!r} is not a residual edge")
    e = res.edge(edge_id)
    Vj = kb[j].vertices
    if e.tail not in Vj or e.head in Vj:
        raise InputError(f"edge {edge_id!r} does not leave the vertex set of branching {j}")
    tentative = kb.replace(j, kb[j].add_edge(host, edge_id))
    result = max_flow(build_auxiliary(host, tentative, e.head, aleph_cap=kb.k + 1))
    if result.value >= kb.k:
        return None
    return frozenset(x for x in result.sink_side_min if isinstance(x, str))
