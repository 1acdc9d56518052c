"""JSON and DOT serialization for graphs, instances and packings."""
from __future__ import annotations

import json
from typing import Any, Iterable

from .branching import Branching, KBranching
from .digraph import Bundle, Digraph, Edge
from .errors import InputError


def parse_json(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def dump_json(doc: Any) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _require(doc, key, kind, where):
    if not isinstance(doc, dict):
        raise InputError(f"{where} must be an object")
    if key not in doc:
        raise InputError(f"{where} is missing {key!r}")
    value = doc[key]
    if not isinstance(value, kind):
        raise InputError(f"{where}.{key} has the wrong type")
    return value


def graph_to_json(g: Digraph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [{"id": e.id, "tail": e.tail, "head": e.head} for e in g.edges],
        "bundles": [{"tail": b.tail, "head": b.head, "mult": "aleph0"} for b in g.bundles],
    }


def graph_from_json(doc: dict) -> Digraph:
    vertices = _require(doc, "vertices", list, "graph")
    edges = []
    for n, e in enumerate(doc.get("edges", [])):
        where = f"edges[{n}]"
        edges.append(Edge(_require(e, "id", str, where), _require(e, "tail", str, where),
                          _require(e, "head", str, where)))
    bundles = []
    for n, b in enumerate(doc.get("bundles", [])):
        where = f"bundles[{n}]"
        mult = b.get("mult", "aleph0") if isinstance(b, dict) else None
        if mult != "aleph0":
            raise InputError(f"{where}.mult must be 'aleph0'; finite multiplicities are explicit edges")
        bundles.append(Bundle(_require(b, "tail", str, where), _require(b, "head", str, where)))
    return Digraph(vertices, edges, bundles)


def roots_from_json(doc: dict) -> list[frozenset[str]]:
    roots = _require(doc, "roots", list, "instance")
    out = []
    for n, r in enumerate(roots):
        if not isinstance(r, list) or not all(isinstance(x, str) for x in r):
            raise InputError(f"roots[{n}] must be a list of vertex ids")
        out.append(frozenset(r))
    return out


def branchings_from_json(host: Digraph, docs: Iterable[dict]) -> KBranching:
    bs = []
    for n, d in enumerate(docs):
        where = f"branchings[{n}]"
        roots = _require(d, "roots", list, where)
        edges = _require(d, "edges", list, where)
        host.check_vertices(roots)
        bs.append(Branching.from_edges(host, roots, edges))
    return KBranching(tuple(bs))


def branchings_to_json(kb: KBranching) -> list[dict]:
    return [{"roots": sorted(b.roots), "edges": list(b.edges)} for b in kb]


def instance_to_json(graph: Digraph, roots: Iterable[Iterable[str]], header: dict | None = None,
                     initial: KBranching | None = None) -> dict:
    doc = {}
    if header:
        doc["generator"] = header
    doc.update(graph_to_json(graph))
    doc["roots"] = [sorted(r) for r in roots]
    if initial is not None:
        doc["branchings"] = branchings_to_json(initial)
    return doc


def instance_from_json(doc: dict) -> tuple[Digraph, list[frozenset[str]], KBranching | None]:
    graph = graph_from_json(doc)
    roots = roots_from_json(doc)
    initial = None
    if doc.get("branchings"):
        initial = branchings_from_json(graph, doc["branchings"])
    return graph, roots, initial


def with_materialized(graph: Digraph, docs: Iterable[dict]) -> Digraph:
    """Add edges drawn from bundles, checking each is backed by a bundle."""
    extra = []
    for n, d in enumerate(docs):
        where = f"materialized[{n}]"
        e = Edge(_require(d, "id", str, where), _require(d, "tail", str, where),
                 _require(d, "head", str, where))
        if graph.bundle(e.tail, e.head) is None:
            raise InputError(f"{where}: no bundle {e.tail!r}->{e.head!r} to draw from")
        extra.append(e)
    return graph.with_edges(extra) if extra else graph


def _dot_id(x: str) -> str:
    return '"' + x.replace("\\", "\\\\").replace('"', '\\"') + '"'


_PALETTE = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"]


def to_dot(g: Digraph, kb: KBranching | None = None, name: str = "D") -> str:
    """Graphviz source: explicit edges labelled by id, bundles drawn bold as ℵ0.

    With ``kb`` each edge of branching j is coloured and suffixed ``[Bj]``.
    """
    owner = {eid: j for j, b in enumerate(kb or ()) for eid in b.edges}
    lines = [f"digraph {name} {{"]
    lines += [f"  {_dot_id(v)};" for v in g.vertices]
    for e in g.edges:
        if e.id in owner:
            j = owner[e.id]
            attrs = f"label={_dot_id(f'{e.id} [B{j}]')}, color={_PALETTE[j % len(_PALETTE)]}"
        else:
            attrs = f"label={_dot_id(e.id)}"
        lines.append(f"  {_dot_id(e.tail)} -> {_dot_id(e.head)} [{attrs}];")
    lines += [f'  {_dot_id(b.tail)} -> {_dot_id(b.head)} [label="ℵ0", style=bold, penwidth=3];'
              for b in g.bundles]
    lines.append("}")
    return "\n".join(lines) + "\n"
