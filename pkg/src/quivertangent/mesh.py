"""The translation quiver of a Dynkin graph and hom dimensions on it.

Vertices ``v[p,a]`` live on one parity class of Z x vertices (anchored so
that position 0 at the graph's base vertex is a vertex); meshes ``m[p,a]``
live on the other.  Hom dimensions between vertices satisfy

    [v[p,a], v[q,b]] = sum_{c adj b} [v[p,a], v[q-1,c]] - [v[p,a], v[q-2,b]]

inside the strip 0 < q - p < h (h the Coxeter number), vanish outside it
except [v,v] = 1, and are computed here by dynamic programming on q - p.

``ARQuiver`` carves the finite window of an orientation out of the
translation quiver: the convex region between the projective slice and its
Serre translate.  Its vertices are in bijection with the positive roots.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence

from .dynkin import (
    DynkinGraph,
    DynkinQuiver,
    coxeter_number,
    distance_table,
    nakayama_involution,
    vec_add,
)


class ZVertex(NamedTuple):
    p: int
    a: str

    def __str__(self):
        return f"v[{self.p},{self.a}]"


class Mesh(NamedTuple):
    p: int
    a: str

    def __str__(self):
        return f"m[{self.p},{self.a}]"


class TranslationQuiver:
    """Hom arithmetic on the translation quiver of a Dynkin graph.

    Immutable after construction; the lazily filled hom table is shared by
    concurrent readers (rows are built under a lock, at worst twice).
    """

    def __init__(self, graph: DynkinGraph):
        self.graph = graph
        self.h = coxeter_number(graph)
        self.phi = nakayama_involution(graph)
        self.dist = distance_table(graph)
        self.base = graph.base_vertex
        self._hom_rows: dict[str, dict[tuple[int, str], int]] = {}
        self._lock = threading.Lock()

    # -- parity ------------------------------------------------------------

    def is_vertex(self, p: int, a: str) -> bool:
        return (p + self.dist[a, self.base]) % 2 == 0

    def is_mesh(self, p: int, a: str) -> bool:
        return (p + self.dist[a, self.base]) % 2 == 1

    def vertex(self, p: int, a: str) -> ZVertex:
        if not self.is_vertex(p, a):
            raise ValueError(f"({p},{a}) is on the mesh parity class")
        return ZVertex(p, a)

    def mesh(self, p: int, a: str) -> Mesh:
        if not self.is_mesh(p, a):
            raise ValueError(f"({p},{a}) is on the vertex parity class")
        return Mesh(p, a)

    def mesh_members(self, m: Mesh) -> tuple[ZVertex, tuple[ZVertex, ...], ZVertex]:
        """Left end, middle vertices and right end of a mesh."""
        left = ZVertex(m.p - 1, m.a)
        mids = tuple(ZVertex(m.p, b) for b in self.graph.neighbors(m.a))
        return left, mids, ZVertex(m.p + 1, m.a)

    # -- the three auto-equivalences ----------------------------------------

    def tau(self, v: ZVertex, k: int = 1) -> ZVertex:
        """Auslander-Reiten translation, k-fold: v[p,a] -> v[p-2k,a]."""
        return ZVertex(v.p - 2 * k, v.a)

    def serre(self, v: ZVertex) -> ZVertex:
        """Serre functor: v[p,a] -> v[p+h-2, phi(a)]."""
        return ZVertex(v.p + self.h - 2, self.phi[v.a])

    def shift(self, v: ZVertex, i: int = 1) -> ZVertex:
        """Suspension: v[p,a] -> v[p+i*h, phi^i(a)]."""
        a = self.phi[v.a] if i % 2 else v.a
        return ZVertex(v.p + i * self.h, a)

    # -- hom dimensions ------------------------------------------------------

    def _hom_row(self, a: str) -> dict[tuple[int, str], int]:
        """Table of [v[0',a], v[k,b]] for 0 <= k <= h-2, keyed by (k, b).

        Built iteratively on k (no native recursion), valid for every
        translate by translation invariance.
        """
        row = self._hom_rows.get(a)
        if row is not None:
            return row
        with self._lock:
            row = self._hom_rows.get(a)
            if row is not None:
                return row
            row = {}
            for b in self.graph.vertices:
                row[0, b] = 1 if b == a else 0
            for k in range(1, self.h - 1):
                for b in self.graph.vertices:
                    if (k + self.dist[a, b]) % 2:
                        continue
                    val = sum(row[k - 1, c] for c in self.graph.neighbors(b))
                    if k >= 2:
                        val -= row[k - 2, b]
                    row[k, b] = val
            self._hom_rows[a] = row
            return row

    def hom(self, v: ZVertex, w: ZVertex) -> int:
        """dim Hom(v, w) between indecomposables of the derived category."""
        k = w.p - v.p
        if (k + self.dist[v.a, w.a]) % 2:
            raise ValueError(f"{v} and {w} lie on different parity classes")
        if k < 0 or k >= self.h - 1:
            return 0
        if k == 0:
            return 1 if v.a == w.a else 0
        return self._hom_row(v.a).get((k, w.a), 0)

    def euler_pairing(self, v: ZVertex, w: ZVertex) -> int:
        """<v, w> = sum_{i<=0} (-1)^i [v, w[i]].

        At most one nonpositive shift of w can admit homs from v, so the
        alternating sum has at most one term.
        """
        lo = v.p - w.p
        hi = lo + self.h - 2
        i_lo = -(-lo // self.h)
        i_hi = hi // self.h
        total = 0
        for i in range(i_lo, min(i_hi, 0) + 1):
            total += (1 if i % 2 == 0 else -1) * self.hom(v, self.shift(w, i))
        return total

    # -- type D diagonal coordinates -----------------------------------------

    def diagonal_coords(self, x: ZVertex | Mesh) -> tuple[int, int]:
        """(p + dist(c, a), p - dist(c, a)) for a point of a type D quiver.

        The two coordinates are constant on the two diagonal directions of
        the translation quiver; the region arguments for type D walk along
        them.
        """
        if self.graph.kind != "D":
            raise ValueError("diagonal coordinates are defined for type D only")
        d = self.dist["c", x.a]
        return (x.p + d, x.p - d)


# ---------------------------------------------------------------------------
# direct sums and mesh functions


@dataclass(frozen=True)
class DirectSum:
    """A formal direct sum of translation-quiver vertices with multiplicities.

    The canonical (Krull-Schmidt) shape of an object: vertex -> multiplicity,
    stored sorted.  Module-level objects have all vertices inside the window
    of a quiver; derived-level ones may not.
    """

    items: tuple[tuple[ZVertex, int], ...]

    @staticmethod
    def of(counts: Mapping[ZVertex, int] | Iterable[tuple[ZVertex, int]]) -> "DirectSum":
        pairs = counts.items() if isinstance(counts, Mapping) else counts
        acc: dict[ZVertex, int] = {}
        for v, m in pairs:
            if m < 0:
                raise ValueError("multiplicities must be >= 0")
            if m:
                acc[v] = acc.get(v, 0) + m
        return DirectSum(tuple(sorted(acc.items())))

    @staticmethod
    def zero() -> "DirectSum":
        return DirectSum(())

    def mult(self, v: ZVertex) -> int:
        return dict(self.items).get(v, 0)

    def vertices(self) -> tuple[ZVertex, ...]:
        return tuple(v for v, _ in self.items)

    def summand_list(self) -> list[ZVertex]:
        """Each vertex repeated by multiplicity, in sorted order."""
        return [v for v, m in self.items for _ in range(m)]

    def total(self) -> int:
        return sum(m for _, m in self.items)

    def __add__(self, other: "DirectSum") -> "DirectSum":
        return DirectSum.of(list(self.items) + list(other.items))

    def __str__(self):
        return " + ".join(f"{m}*{v}" if m > 1 else str(v) for v, m in self.items) or "0"

    def to_json(self) -> list:
        return [{"p": v.p, "a": v.a, "mult": m} for v, m in self.items]

    @staticmethod
    def from_json(data: list) -> "DirectSum":
        return DirectSum.of([(ZVertex(int(e["p"]), e["a"]), int(e["mult"])) for e in data])


class MeshFunction:
    """A finitely supported integer function on meshes."""

    def __init__(self, values: Mapping[Mesh, int] = ()):  # zero by default
        self._values = {m: v for m, v in dict(values).items() if v != 0}

    def __getitem__(self, m: Mesh) -> int:
        return self._values.get(m, 0)

    def support(self) -> frozenset[Mesh]:
        return frozenset(self._values)

    def items(self) -> list[tuple[Mesh, int]]:
        return sorted(self._values.items())

    def is_zero(self) -> bool:
        return not self._values

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self._values.values())

    def __eq__(self, other) -> bool:
        return isinstance(other, MeshFunction) and self._values == other._values

    def __le__(self, other: "MeshFunction") -> bool:
        keys = set(self._values) | set(other._values)
        return all(self[m] <= other[m] for m in keys)

    def __sub__(self, other: "MeshFunction") -> "MeshFunction":
        keys = set(self._values) | set(other._values)
        return MeshFunction({m: self[m] - other[m] for m in keys})

    def __neg__(self) -> "MeshFunction":
        return MeshFunction({m: -v for m, v in self._values.items()})

    def __repr__(self):
        body = ", ".join(f"{m}:{v}" for m, v in self.items())
        return f"MeshFunction({{{body}}})"

    def to_json(self) -> list:
        return [{"p": m.p, "a": m.a, "value": v} for m, v in self.items()]

    @staticmethod
    def from_json(data: list) -> "MeshFunction":
        return MeshFunction({Mesh(int(e["p"]), e["a"]): int(e["value"]) for e in data})


# ---------------------------------------------------------------------------
# the Auslander-Reiten window of an orientation


class ARQuiver:
    """The Auslander-Reiten quiver of an orientation, inside the translation
    quiver of its graph.

    The projective at a vertex ``a`` sits at ``v[pos[a], a]`` where positions
    follow ``pos[a] = pos[b] + 1`` for every arrow ``a -> b`` and the base
    vertex is pinned at position 0.  Row ``x`` of the window spans positions
    ``pos[x] .. pos[phi(x)] + h - 2``; the right edge is the injective slice.
    Immutable after construction.
    """

    def __init__(self, quiver: DynkinQuiver):
        self.quiver = quiver
        self.graph = quiver.graph
        self.tq = TranslationQuiver(self.graph)
        h, phi = self.tq.h, self.tq.phi

        pos = {self.graph.base_vertex: 0}
        pending = [self.graph.base_vertex]
        succ = {a: [] for a in self.graph.vertices}
        for s, t in quiver.arrows:
            succ[s].append((t, -1))  # pos[s] = pos[t] + 1
            succ[t].append((s, +1))
        while pending:
            x = pending.pop()
            for y, step in succ[x]:
                if y not in pos:
                    pos[y] = pos[x] + step
                    pending.append(y)
        self.projective_pos = pos
        self.injective_pos = {a: pos[a] + h - 2 for a in self.graph.vertices}
        # row x spans [row_lo[x], row_hi[x]] in steps of 2
        self.row_lo = {x: pos[x] for x in self.graph.vertices}
        self.row_hi = {x: pos[phi[x]] + h - 2 for x in self.graph.vertices}

        self._verts = tuple(
            ZVertex(p, x)
            for x in self.graph.vertices
            for p in range(self.row_lo[x], self.row_hi[x] + 1, 2)
        )
        self._vert_set = frozenset(self._verts)
        self._meshes = tuple(
            m for m in (Mesh(v.p - 1, v.a) for v in self._verts)
            if ZVertex(m.p - 1, m.a) in self._vert_set
        )
        self._mesh_set = frozenset(self._meshes)
        self._dimv: dict[ZVertex, tuple[int, ...]] = {}
        for v in self._verts:
            self._dimv[v] = tuple(
                self.tq.hom(ZVertex(pos[a], a), v) for a in self.graph.vertices
            )
        self._root_vertex = {d: v for v, d in self._dimv.items()}

    # -- membership -----------------------------------------------------------

    def vertices(self) -> tuple[ZVertex, ...]:
        return self._verts

    def meshes(self) -> tuple[Mesh, ...]:
        return self._meshes

    def contains_vertex(self, v: ZVertex) -> bool:
        return v in self._vert_set

    def contains_mesh(self, m: Mesh) -> bool:
        return m in self._mesh_set

    def projective(self, a: str) -> ZVertex:
        return ZVertex(self.projective_pos[a], a)

    def injective(self, a: str) -> ZVertex:
        return ZVertex(self.injective_pos[a], self.tq.phi[a])

    def shift_class(self, v: ZVertex) -> int:
        """The integer i with v in (window shifted by i).

        The shifted copies of the window tile the translation quiver, so i
        exists and is unique; it lies within 2 of (p - row start) / h.
        """
        guess = (v.p - self.row_lo[v.a]) // self.tq.h
        for i in range(guess - 2, guess + 3):
            if self.tq.shift(v, -i) in self._vert_set:
                return i
        raise AssertionError(f"{v} not in any shift of the window")  # pragma: no cover

    def module_level(self, obj: DirectSum) -> bool:
        return all(v in self._vert_set for v in obj.vertices())

    # -- dimension vectors ------------------------------------------------------

    def dimension_vector_of(self, v: ZVertex) -> tuple[int, ...]:
        """Coordinates [P_a, v]; a bijection onto the positive roots."""
        try:
            return self._dimv[v]
        except KeyError:
            raise ValueError(f"{v} lies outside the window") from None

    def vertex_of_root(self, root: Sequence[int]) -> ZVertex:
        return self._root_vertex[tuple(root)]

    def dimension_vector(self, obj: DirectSum) -> tuple[int, ...]:
        """Signed dimension vector; shifted summands count with sign (-1)^i."""
        total = (0,) * self.graph.rank
        for v, m in obj.items:
            i = self.shift_class(v)
            base = self.dimension_vector_of(self.tq.shift(v, -i))
            sign = 1 if i % 2 == 0 else -1
            total = vec_add(total, tuple(sign * m * x for x in base))
        return total

    # -- pairings ----------------------------------------------------------------

    def euler_pairing(self, v: ZVertex, obj: DirectSum) -> int:
        """<v, obj>, clipped: equals the hom count when v is in the window,
        0 when v lies in a positive shift of it.  Negative shifts on the
        left slot are rejected; stay within the clip.
        """
        if not self.module_level(obj):
            raise ValueError("euler_pairing needs a module-level direct sum")
        if not self.contains_vertex(v) and self.shift_class(v) < 0:
            raise ValueError(f"{v} lies left of the window; pairing not clipped there")
        return sum(m * self.tq.euler_pairing(v, w) for w, m in obj.items)

    def euler_pairing_right(self, obj: DirectSum, v: ZVertex) -> int:
        if not self.module_level(obj):
            raise ValueError("euler_pairing needs a module-level direct sum")
        if not self.contains_vertex(v) and self.shift_class(v) > 0:
            raise ValueError(f"{v} lies right of the window; pairing not clipped there")
        return sum(m * self.tq.euler_pairing(w, v) for w, m in obj.items)

    def hom(self, x: DirectSum | ZVertex, y: DirectSum | ZVertex) -> int:
        if isinstance(x, ZVertex):
            x = DirectSum.of({x: 1})
        if isinstance(y, ZVertex):
            y = DirectSum.of({y: 1})
        return sum(mx * my * self.tq.hom(v, w)
                   for v, mx in x.items for w, my in y.items)

    def multiplicity(self, obj: DirectSum, v: ZVertex) -> int:
        """Recover the multiplicity of v in obj from hom counts alone:
        <v,obj> - sum_{b adj a} <v[p+1,b],obj> + <v[p+2,a],obj>.
        """
        if not self.module_level(obj):
            raise ValueError("multiplicity needs a module-level direct sum")
        if not self.contains_vertex(v):
            raise ValueError(f"{v} lies outside the window")
        val = self.tq_pairing_sum(v, obj)
        for b in self.graph.neighbors(v.a):
            val -= self.tq_pairing_sum(ZVertex(v.p + 1, b), obj)
        val += self.tq_pairing_sum(ZVertex(v.p + 2, v.a), obj)
        return val

    def tq_pairing_sum(self, v: ZVertex, obj: DirectSum) -> int:
        return sum(m * self.tq.euler_pairing(v, w) for w, m in obj.items)

    # -- defect of a pair ----------------------------------------------------------

    def pair_defect(self, left: DirectSum, right: DirectSum) -> MeshFunction:
        """The mesh function m[p,a] -> <v[p+1,a], right> - <v[p+1,a], left>.

        Nonnegative exactly when ``left`` degenerates to ``right``.  For
        module-level inputs the support lies inside the window's meshes and
        the values are plain hom-count differences.  Requires equal (signed)
        dimension vectors.
        """
        if self.dimension_vector(left) != self.dimension_vector(right):
            raise ValueError("pair defect needs equal dimension vectors")
        if self.module_level(left) and self.module_level(right):
            vals = {}
            for m in self._meshes:
                probe = ZVertex(m.p + 1, m.a)
                vals[m] = self.hom(probe, right) - self.hom(probe, left)
            return MeshFunction(vals)
        return self._pair_defect_derived(left, right)

    def _pair_defect_derived(self, left: DirectSum, right: DirectSum) -> MeshFunction:
        support = [v for v, _ in left.items] + [v for v, _ in right.items]
        if not support:
            return MeshFunction()
        h = self.tq.h
        lo = min(v.p for v in support) - 2 * h
        hi = max(v.p for v in support) + 2 * h
        vals = {}
        for a in self.graph.vertices:
            for p in range(lo, hi + 1):
                if not self.tq.is_mesh(p, a):
                    continue
                probe = ZVertex(p + 1, a)
                d = (self.tq_pairing_sum(probe, right)
                     - self.tq_pairing_sum(probe, left))
                if d:
                    vals[Mesh(p, a)] = d
        return MeshFunction(vals)

    def pair_defect_right_form(self, left: DirectSum, right: DirectSum) -> MeshFunction:
        """Same function computed from homs out of the summands; used as an
        internal-consistency cross-check."""
        if self.dimension_vector(left) != self.dimension_vector(right):
            raise ValueError("pair defect needs equal dimension vectors")
        vals = {}
        if self.module_level(left) and self.module_level(right):
            for m in self._meshes:
                probe = ZVertex(m.p - 1, m.a)
                vals[m] = self.hom(right, probe) - self.hom(left, probe)
            return MeshFunction(vals)
        support = [v for v, _ in left.items] + [v for v, _ in right.items]
        if not support:
            return MeshFunction()
        h = self.tq.h
        lo = min(v.p for v in support) - 2 * h
        hi = max(v.p for v in support) + 2 * h
        for a in self.graph.vertices:
            for p in range(lo, hi + 1):
                if not self.tq.is_mesh(p, a):
                    continue
                probe = ZVertex(p - 1, a)
                d = (sum(m * self.tq.euler_pairing(w, probe) for w, m in right.items)
                     - sum(m * self.tq.euler_pairing(w, probe) for w, m in left.items))
                if d:
                    vals[Mesh(p, a)] = d
        return MeshFunction(vals)

    # -- sectional paths ----------------------------------------------------------

    def sectional_delta_identity(
        self, left: DirectSum, right: DirectSum, path: Sequence[ZVertex]
    ) -> tuple[int, int]:
        """Both sides of the telescoping identity along a sectional path.

        lhs: sum over the path of multiplicity differences; rhs: the defect
        at the mesh before the path, minus defects at the off-path meshes
        flanking it, plus the defect at the mesh after it.  Raises if the
        path is not sectional.
        """
        labels = [v.a for v in path]
        for u, w in zip(path, path[1:]):
            if w.p != u.p + 1 or w.a not in self.graph.neighbors(u.a):
                raise ValueError("not a path in the translation quiver")
        if len(set(labels)) != len(labels):
            raise ValueError("path is not sectional: repeated rows")
        delta = self.pair_defect(left, right)
        lhs = sum(right.mult(v) - left.mult(v) for v in path)
        first, last = path[0], path[-1]
        rhs = delta[Mesh(first.p - 1, first.a)] + delta[Mesh(last.p + 1, last.a)]
        on_path = set(labels)
        for v in path:
            for b in self.graph.neighbors(v.a):
                if b not in on_path:
                    rhs -= delta[Mesh(v.p, b)]
        return lhs, rhs

    # -- export ---------------------------------------------------------------------

    def to_dot(self) -> str:
        """DOT rendering with vertices labelled by coordinates and dimension
        vectors, positioned on the (position, row) grid."""
        rows = {a: i for i, a in enumerate(self.graph.vertices)}
        lines = ["digraph ar_quiver {", "  rankdir=LR;", "  node [shape=box];"]
        names = {v: f"n{i}" for i, v in enumerate(self._verts)}
        for v in self._verts:
            d = ",".join(str(x) for x in self._dimv[v])
            y = len(self.graph.vertices) - rows[v.a]
            lines.append(
                f'  {names[v]} [label="v[{v.p},{v.a}]\\n({d})" pos="{v.p},{y}!"];')
        for v in self._verts:
            for b in self.graph.neighbors(v.a):
                w = ZVertex(v.p + 1, b)
                if w in self._vert_set:
                    lines.append(f"  {names[v]} -> {names[w]};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def euler_form_from_window(window: ARQuiver, x: ZVertex, y: ZVertex) -> int:
    """hom minus ext between window vertices; agrees with the bilinear form
    on dimension vectors."""
    tq = window.tq
    return tq.hom(x, y) - tq.hom(x, tq.shift(y, 1))


def window_ext1(window: ARQuiver, x: ZVertex, y: ZVertex) -> int:
    return window.tq.hom(x, window.tq.shift(y, 1))
