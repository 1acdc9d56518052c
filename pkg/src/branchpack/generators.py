"""Instance builders: the infinite-family counterexample, random graphs, nested tight sets."""
from __future__ import annotations

import random
from typing import NamedTuple

from .branching import KBranching
from .cuts import check_condition_flow
from .digraph import Bundle, Digraph, Edge
from .errors import InputError

PRNG = "python-random-mt19937"


class RandomInstance(NamedTuple):
    graph: Digraph
    roots: list[frozenset[str]]
    feasible: bool


def counterexample(n: int, mode: str = "aleph0", c: int | None = None) -> tuple[Digraph, list[frozenset[str]]]:
    """Finite truncation of the digraph where infinitely many roots all need ``v``.

    Vertices are ``r0 .. rn`` and ``v``. There are infinite bundles
    ``r0 -> ri`` and ``v -> r0`` and one edge ``ri -> v`` for each ``i ≥ 1``.
    The roots beyond ``rn`` are not part of the truncation; contracting them
    into ``r0`` leaves their edges into ``v`` as one more bundle ``r0 -> v``.
    In ``finite`` mode every bundle becomes ``c`` parallel edges (default
    ``c = n``). The root sets are ``{r0}, .., {rn}``.
    """
    if n < 1:
        raise InputError("n must be at least 1")
    if mode not in ("aleph0", "finite"):
        raise InputError(f"unknown mode {mode!r}")
    if c is None:
        c = n
    if mode == "finite" and c < 0:
        raise InputError("c must be nonnegative")
    r = [f"r{i}" for i in range(n + 1)]
    vertices = [*r, "v"]
    edges = [Edge(f"e{i}", r[i], "v") for i in range(1, n + 1)]
    heavy = [(r[0], r[i]) for i in range(1, n + 1)] + [(r[0], "v"), ("v", r[0])]
    bundles = []
    if mode == "aleph0":
        bundles = [Bundle(t, h) for t, h in heavy]
    else:
        for t, h in heavy:
            edges.extend(Edge(f"{t}>{h}#{m}", t, h) for m in range(c))
    return Digraph(vertices, edges, bundles), [frozenset([x]) for x in r]


def random_instance(n: int, k: int, seed: int, density: float = 0.5,
                    parallel: float = 0.25, max_roots: int | None = None) -> RandomInstance:
    """Random multigraph on ``n`` vertices with ``k`` random nonempty root sets.

    Each ordered pair gets an edge with probability ``density`` and, if it
    does, a second parallel edge with probability ``parallel``. Vertex ids
    are zero-padded so that string order matches numeric order.
    """
    if not 1 <= n <= 10_000:
        raise InputError("n must be between 1 and 10000")
    if k < 0:
        raise InputError("k must be nonnegative")
    if not 0.0 <= density <= 1.0 or not 0.0 <= parallel <= 1.0:
        raise InputError("probabilities must lie in [0, 1]")
    rng = random.Random(seed)
    width = len(str(n - 1))
    verts = [f"v{i:0{width}d}" for i in range(n)]
    edges = []
    for t in verts:
        for h in verts:
            if t == h or rng.random() >= density:
                continue
            edges.append(Edge(f"e{len(edges)}", t, h))
            if rng.random() < parallel:
                edges.append(Edge(f"e{len(edges)}", t, h))
    top = max_roots if max_roots is not None else max(1, n // 3)
    roots = [frozenset(rng.sample(verts, rng.randint(1, min(top, n)))) for _ in range(k)]
    graph = Digraph(verts, edges)
    feasible = check_condition_flow(graph, KBranching.edgeless(roots)) is None
    return RandomInstance(graph, roots, feasible)


def _lanes(l: int) -> list[int]:
    """Chain length per lane; 0 means the lane enters B1 directly.

    Lanes 2 and 3 share their first vertex when l >= 4.
    """
    lengths = []
    for j in range(1, l + 1):
        if j == 1:
            lengths.append(1)
        elif j == l:
            lengths.append(0)
        elif j in (2, 3):
            lengths.append(2)
        else:
            lengths.append(1 + j % 3)
    return lengths


def nested_tight_fixture(l: int) -> tuple[Digraph, KBranching, frozenset[str], frozenset[str]]:
    """Two nested tight sets ``B1 ⊆ B0`` with ``l`` in-edges each.

    Branching 0 is rooted at ``c`` inside ``B1``; branchings ``1..l`` are
    rooted at ``r1 .. rl`` outside ``B0``, each with a single edge into
    ``B0``. Lane j runs from its entry vertex through ``B0 \\ B1`` into
    ``B1``; with ``l ≥ 4`` lanes 2 and 3 enter at the same vertex and with
    ``l ≥ 2`` the last lane enters ``B1`` directly. Bundles from and to
    ``c`` make every other set comfortably non-tight.
    """
    if not 1 <= l <= 8:
        raise InputError("l must be between 1 and 8")
    lengths = _lanes(l)
    verts = ["c"]
    edges: list[Edge] = []
    bundles: list[Bundle] = []
    targets = []
    middle = []

    def edge(t, h):
        edges.append(Edge(f"f{len(edges)}", t, h))

    shared = None
    for j, length in enumerate(lengths, start=1):
        root = f"r{j}"
        target = f"t{j}"
        targets.append(target)
        if length == 0:
            verts.append(target)
            edge(root, target)
            continue
        if j == 3 and shared is not None:
            entry = shared
        else:
            entry = f"s{j}"
            middle.append(entry)
            if j == 2 and l >= 4:
                shared = entry
        edge(root, entry)
        prev = entry
        for step in range(1, length):
            mid = f"m{j}_{step}"
            middle.append(mid)
            edge(prev, mid)
            prev = mid
        edge(prev, target)
    roots = [f"r{j}" for j in range(1, l + 1)]
    B1 = frozenset(["c", *targets])
    B0 = B1 | frozenset(middle)
    verts = ["c", *targets, *middle, *roots]
    for t in targets:
        bundles.append(Bundle("c", t))
        bundles.append(Bundle(t, "c"))
    for x in [*middle, *roots]:
        bundles.append(Bundle("c", x))
    graph = Digraph(verts, edges, bundles)
    kb = KBranching.edgeless([frozenset(["c"]), *(frozenset([r]) for r in roots)])
    return graph, kb, B0, B1
