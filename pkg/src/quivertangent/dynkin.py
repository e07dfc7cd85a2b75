"""Dynkin graphs of types A, D, E with orientations, quadratic forms and roots.

Vertex labels are canonical per type:

* type A:  ``a1 - a2 - ... - an``
* type D:  ``c' - b0 - b1 - ... - b{n-4} - c`` with a second short branch
  ``c'' - b0``
* type E:  a row ``e1 - e2 - ... - e{n-1}`` with a branch vertex ``e0``
  attached to ``e3``

Dimension vectors are plain tuples of integers, indexed by the position of
a label in ``graph.vertices``.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

KINDS = ("A", "D", "E")

SCHEMA_VERSION = 1

# Coxeter numbers per type; also the period constant of the translation
# quiver (shift acts by this step on positions).
_COXETER = {"A": lambda n: n + 1, "D": lambda n: 2 * n - 2,
            "E": lambda n: {6: 12, 7: 18, 8: 30}[n]}


@dataclass(frozen=True)
class DynkinGraph:
    """An ADE tree with its canonical labelling.

    ``vertices`` is the canonical label order; ``edges`` lists unordered
    pairs in canonical order.  Instances are immutable and hashable.
    """

    kind: str
    rank: int
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown Dynkin type {self.kind!r}")
        if len(self.edges) != self.rank - 1:
            raise ValueError("a Dynkin graph on n vertices has n-1 edges")

    def index(self, a: str) -> int:
        try:
            return self.vertices.index(a)
        except ValueError:
            raise ValueError(f"unknown vertex label {a!r}") from None

    def neighbors(self, a: str) -> tuple[str, ...]:
        self.index(a)
        out = []
        for u, v in self.edges:
            if u == a:
                out.append(v)
            elif v == a:
                out.append(u)
        return tuple(out)

    def degree(self, a: str) -> int:
        return len(self.neighbors(a))

    @property
    def base_vertex(self) -> str:
        """Anchor used for the parity classes of the translation quiver."""
        if self.kind == "A":
            return "a1"
        if self.kind == "D":
            return "b0"
        return "e3"

    def to_json_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "type": self.kind,
            "n": self.rank,
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
        }


@dataclass(frozen=True)
class DynkinQuiver:
    """An orientation of a Dynkin graph: one directed arrow per edge."""

    graph: DynkinGraph
    arrows: tuple[tuple[str, str], ...]

    def __post_init__(self):
        seen = set()
        for s, t in self.arrows:
            edge = frozenset((s, t))
            if edge not in {frozenset(e) for e in self.graph.edges}:
                raise ValueError(f"arrow {s}>{t} is not an edge of the graph")
            if edge in seen:
                raise ValueError(f"edge {{{s},{t}}} oriented twice")
            seen.add(edge)
        if len(self.arrows) != len(self.graph.edges):
            raise ValueError("an orientation must direct every edge exactly once")

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.graph.vertices

    def to_json_dict(self) -> dict:
        d = self.graph.to_json_dict()
        del d["edges"]
        d["arrows"] = [list(a) for a in self.arrows]
        return d

    def orientation_spec(self) -> str:
        return ",".join(f"{s}>{t}" for s, t in self.arrows)


def dynkin_graph(kind: str, rank: int) -> DynkinGraph:
    """Build the canonical ADE graph of the given type and rank.

    Raises ``ValueError`` for ranks outside A: n>=1, D: n>=4, E: n in 6..8.
    """
    if kind == "A":
        if rank < 1:
            raise ValueError(f"type A needs rank >= 1, got {rank}")
        vertices = tuple(f"a{i}" for i in range(1, rank + 1))
        edges = tuple((f"a{i}", f"a{i+1}") for i in range(1, rank))
    elif kind == "D":
        if rank < 4:
            raise ValueError(f"type D needs rank >= 4, got {rank}")
        tail = [f"b{i}" for i in range(rank - 3)]
        vertices = ("c'", "c''", *tail, "c")
        chain = tail + ["c"]
        edges = (("c'", "b0"), ("c''", "b0"),
                 *[(chain[i], chain[i + 1]) for i in range(len(chain) - 1)])
    elif kind == "E":
        if rank not in (6, 7, 8):
            raise ValueError(f"type E needs rank in {{6,7,8}}, got {rank}")
        row = [f"e{i}" for i in range(1, rank)]
        vertices = (*row[:3], "e0", *row[3:])
        edges = tuple((row[i], row[i + 1]) for i in range(len(row) - 1)) + (("e3", "e0"),)
    else:
        raise ValueError(f"unknown Dynkin type {kind!r}")
    return DynkinGraph(kind, rank, vertices, edges)


def default_orientation(graph: DynkinGraph) -> DynkinQuiver:
    """Orient every edge from the earlier label in canonical vertex order."""
    order = {a: i for i, a in enumerate(graph.vertices)}
    arrows = tuple((u, v) if order[u] < order[v] else (v, u) for u, v in graph.edges)
    return DynkinQuiver(graph, arrows)


def parse_orientation(graph: DynkinGraph, spec: str) -> DynkinQuiver:
    """Parse a comma-separated ``s>t`` arrow list; unmentioned edges take
    the default direction."""
    directed: dict[frozenset, tuple[str, str]] = {}
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        if ">" not in part:
            raise ValueError(f"bad arrow spec {part!r}, expected 's>t'")
        s, t = (x.strip() for x in part.split(">", 1))
        graph.index(s), graph.index(t)
        edge = frozenset((s, t))
        if edge not in {frozenset(e) for e in graph.edges}:
            raise ValueError(f"{s}>{t} is not an edge of {graph.kind}{graph.rank}")
        if edge in directed:
            raise ValueError(f"edge {{{s},{t}}} oriented twice")
        directed[edge] = (s, t)
    arrows = []
    default = default_orientation(graph)
    for (u, v), dflt in zip(graph.edges, default.arrows):
        arrows.append(directed.get(frozenset((u, v)), dflt))
    return DynkinQuiver(graph, tuple(arrows))


def all_orientations(graph: DynkinGraph) -> Iterator[DynkinQuiver]:
    for flips in itertools.product((False, True), repeat=len(graph.edges)):
        arrows = tuple((v, u) if f else (u, v)
                       for (u, v), f in zip(graph.edges, flips))
        yield DynkinQuiver(graph, arrows)


def quiver_from_json(data: dict) -> DynkinQuiver:
    graph = dynkin_graph(data["type"], int(data["n"]))
    if list(graph.vertices) != list(data.get("vertices", graph.vertices)):
        raise ValueError("vertex labels do not match the canonical labelling")
    arrows = tuple((s, t) for s, t in data["arrows"])
    return DynkinQuiver(graph, arrows)


def load_quiver(path: str) -> DynkinQuiver:
    with open(path, encoding="utf-8") as fh:
        return quiver_from_json(json.load(fh))


# ---------------------------------------------------------------------------
# forms, roots, distances


def _check_indexed(graph: DynkinGraph, d: Sequence[int]) -> None:
    if len(d) != graph.rank:
        raise ValueError(
            f"dimension vector has {len(d)} coordinates, graph has {graph.rank} vertices")


def tits_form(graph: DynkinGraph, d: Sequence[int]) -> int:
    """q(d) = sum d_a^2 - sum_{edges} d_a d_b; positive definite on ADE."""
    _check_indexed(graph, d)
    idx = {a: i for i, a in enumerate(graph.vertices)}
    return (sum(x * x for x in d)
            - sum(d[idx[u]] * d[idx[v]] for u, v in graph.edges))


def euler_form(quiver: DynkinQuiver, d: Sequence[int], e: Sequence[int]) -> int:
    """Bilinear form with b(dimv X, dimv Y) = dim Hom(X,Y) - dim Ext^1(X,Y)."""
    _check_indexed(quiver.graph, d)
    _check_indexed(quiver.graph, e)
    idx = {a: i for i, a in enumerate(quiver.vertices)}
    return (sum(x * y for x, y in zip(d, e))
            - sum(d[idx[s]] * e[idx[t]] for s, t in quiver.arrows))


def coxeter_number(graph: DynkinGraph) -> int:
    return _COXETER[graph.kind](graph.rank)


def maximal_root(graph: DynkinGraph) -> tuple[int, ...]:
    if graph.kind == "A":
        return (1,) * graph.rank
    if graph.kind == "D":
        return (1, 1) + (2,) * (graph.rank - 3) + (1,)
    # order: e1 e2 e3 e0 e4 ...
    rows = {6: (1, 2, 3, 2, 2, 1), 7: (2, 3, 4, 2, 3, 2, 1),
            8: (2, 4, 6, 3, 5, 4, 3, 2)}
    return rows[graph.rank]


def positive_roots(graph: DynkinGraph) -> list[tuple[int, ...]]:
    """All d >= 0 with q(d) = 1, enumerated inside the box 0 <= d <= maximal
    root, in lexicographic order.  There are n * coxeter_number / 2 of them.
    """
    top = maximal_root(graph)
    roots = []
    for d in itertools.product(*(range(t + 1) for t in top)):
        if any(d) and tits_form(graph, d) == 1:
            roots.append(d)
    return roots


def nakayama_involution(graph: DynkinGraph) -> dict[str, str]:
    """The graph involution through which the Serre functor acts on rows.

    Nontrivial exactly for A_n (n >= 2, path reversal), D_n with n odd
    (swap of the short branches) and E6 (arm swap).
    """
    phi = {a: a for a in graph.vertices}
    if graph.kind == "A" and graph.rank >= 2:
        for i in range(1, graph.rank + 1):
            phi[f"a{i}"] = f"a{graph.rank + 1 - i}"
    elif graph.kind == "D" and graph.rank % 2 == 1:
        phi["c'"], phi["c''"] = "c''", "c'"
    elif graph.kind == "E" and graph.rank == 6:
        phi.update({"e1": "e5", "e5": "e1", "e2": "e4", "e4": "e2"})
    return phi


def graph_distance(graph: DynkinGraph, a: str, b: str) -> int:
    """Length of the unique shortest walk between two vertices of the tree."""
    graph.index(a), graph.index(b)
    if a == b:
        return 0
    seen = {a: 0}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        for y in graph.neighbors(x):
            if y not in seen:
                seen[y] = seen[x] + 1
                if y == b:
                    return seen[y]
                queue.append(y)
    raise AssertionError("tree is connected")  # pragma: no cover


def distance_table(graph: DynkinGraph) -> dict[tuple[str, str], int]:
    return {(a, b): graph_distance(graph, a, b)
            for a in graph.vertices for b in graph.vertices}


def vec_add(d: Iterable[int], e: Iterable[int]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(d, e))


def vec_sub(d: Iterable[int], e: Iterable[int]) -> tuple[int, ...]:
    return tuple(x - y for x, y in zip(d, e))


def vec_scale(k: int, d: Iterable[int]) -> tuple[int, ...]:
    return tuple(k * x for x in d)
