"""Orbits for a fixed dimension vector, the degeneration order, and defect
functions of explicit short exact sequences.

An orbit is identified with the multiset of window vertices of its
Krull-Schmidt decomposition; matrices are materialized only on demand.  The
degeneration order is the hom order: M degenerates to N exactly when
[X, N] >= [X, M] for every indecomposable X, i.e. when the pair defect of
(M, N) is nonnegative.  The rank scheme of M has the same points.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .mesh import ARQuiver, DirectSum, MeshFunction, ZVertex
from .reps import (
    Cocycle,
    MatrixRep,
    hom_dim_matrix,
    middle_term,
    realize_vertex,
)


@dataclass(frozen=True)
class Orbit:
    """An isomorphism class of representations with its cached invariants.

    dimension = (sum of squares) - [M,M]; the codimension inside the
    representation space equals dim Ext^1(M,M) and vanishes exactly for the
    rigid (generic) orbit.
    """

    summands: DirectSum
    dim_vector: tuple[int, ...]
    self_hom: int
    dimension: int
    codimension: int

    @staticmethod
    def build(window: ARQuiver, summands: DirectSum) -> "Orbit":
        from .dynkin import tits_form

        d = window.dimension_vector(summands)
        self_hom = window.hom(summands, summands)
        ambient = sum(x * x for x in d)
        b_dd = tits_form(window.graph, d)
        codim = self_hom - b_dd
        if codim < 0:
            raise AssertionError("self-hom below the Tits form: broken hom table")
        return Orbit(summands, d, self_hom, ambient - self_hom, codim)


def enumerate_orbits(window: ARQuiver, d: Sequence[int]) -> list[Orbit]:
    """All multisets of window vertices with total dimension vector d.

    Vertices are taken in window order; multiplicities are chosen greedily
    with remaining-vector pruning, so the enumeration is duplicate-free by
    construction and lexicographic in the vertex order.
    """
    d = tuple(int(x) for x in d)
    if any(x < 0 for x in d):
        raise ValueError("dimension vectors of orbits are nonnegative")
    verts = window.vertices()
    roots = [window.dimension_vector_of(v) for v in verts]
    out: list[Orbit] = []

    def walk(idx: int, remaining: tuple[int, ...], chosen: list[tuple[ZVertex, int]]):
        if not any(remaining):
            out.append(Orbit.build(window, DirectSum.of(list(chosen))))
            return
        if idx == len(verts):
            return
        root = roots[idx]
        max_mult = min(
            (r // c for r, c in zip(remaining, root) if c),
            default=0,
        )
        for mult in range(max_mult, -1, -1):
            if mult:
                chosen.append((verts[idx], mult))
            walk(idx + 1,
                 tuple(r - mult * c for r, c in zip(remaining, root)),
                 chosen)
            if mult:
                chosen.pop()

    walk(0, d, [])
    return out


def degenerates(window: ARQuiver, m: Orbit, n: Orbit) -> bool:
    """Hom order: [X,N] >= [X,M] for all X, equivalently nonnegativity of
    the pair defect.  Both the left and the right hom conditions are
    evaluated; a disagreement would be an internal inconsistency.
    """
    if m.dim_vector != n.dim_vector:
        raise ValueError("degeneration compares equal dimension vectors only")
    left = window.pair_defect(m.summands, n.summands)
    right = window.pair_defect_right_form(m.summands, n.summands)
    if left != right:
        raise AssertionError(
            "left and right hom conditions disagree: broken Serre symmetry")
    return left.is_nonnegative()


def in_rank_scheme(window: ARQuiver, m: Orbit, n: Orbit) -> bool:
    """Point membership of N in the rank scheme of M; for Dynkin quivers
    this coincides with the degeneration order."""
    if m.dim_vector != n.dim_vector:
        raise ValueError("rank scheme membership compares equal dimension vectors only")
    return window.pair_defect(m.summands, n.summands).is_nonnegative()


@dataclass
class DegenerationPoset:
    """All orbits of a dimension vector with the full degeneration relation.

    ``leq[i][j]`` is True when orbit j degenerates to orbit i (orbit i lies
    in the closure of orbit j).  The relation is a partial order with a
    unique maximal element, the rigid orbit of codimension 0.
    """

    orbits: list[Orbit]
    leq: list[list[bool]]

    def index(self, orbit: Orbit) -> int:
        return self.orbits.index(orbit)

    def below(self, m: Orbit) -> list[Orbit]:
        j = self.index(m)
        return [o for i, o in enumerate(self.orbits) if self.leq[i][j]]

    def maximal(self) -> Orbit:
        """The generic orbit: the unique maximum of the order, which is also
        the unique rigid one (codimension 0)."""
        n = len(self.orbits)
        tops = [j for j in range(n) if all(self.leq[i][j] for i in range(n))]
        rigid = [j for j, o in enumerate(self.orbits) if o.codimension == 0]
        if len(tops) != 1 or tops != rigid:
            raise AssertionError("the rigid orbit is not the unique maximum")
        return self.orbits[tops[0]]

    def validate_partial_order(self) -> None:
        n = len(self.orbits)
        for i in range(n):
            if not self.leq[i][i]:
                raise AssertionError("relation is not reflexive")
        for i in range(n):
            for j in range(n):
                if i != j and self.leq[i][j] and self.leq[j][i]:
                    raise AssertionError("relation is not antisymmetric")
                if self.leq[i][j]:
                    for k in range(n):
                        if self.leq[j][k] and not self.leq[i][k]:
                            raise AssertionError("relation is not transitive")

    def hasse_edges(self) -> list[tuple[int, int]]:
        """Cover pairs (i, j) with orbit i immediately below orbit j."""
        n = len(self.orbits)
        edges = []
        for i in range(n):
            for j in range(n):
                if i == j or not self.leq[i][j]:
                    continue
                if any(k not in (i, j) and self.leq[i][k] and self.leq[k][j]
                       for k in range(n)):
                    continue
                edges.append((i, j))
        return edges

    def to_json_dict(self) -> dict:
        return {
            "schema_version": 1,
            "orbit_order": "window-lexicographic",
            "orbits": [o.summands.to_json() for o in self.orbits],
            "dimensions": [o.dimension for o in self.orbits],
            "leq": [[i, j] for i in range(len(self.orbits))
                    for j in range(len(self.orbits)) if self.leq[i][j]],
        }


def degeneration_poset(window: ARQuiver, d: Sequence[int]) -> DegenerationPoset:
    orbits = enumerate_orbits(window, d)
    n = len(orbits)
    leq = [[False] * n for _ in range(n)]
    for j, m in enumerate(orbits):
        for i, nn in enumerate(orbits):
            leq[i][j] = degenerates(window, m, nn)
    poset = DegenerationPoset(orbits, leq)
    poset.validate_partial_order()
    return poset


# ---------------------------------------------------------------------------
# defect functions of concrete sequences


def sequence_defect(window: ARQuiver, u: MatrixRep, z: Cocycle, v: MatrixRep,
                    seed: int = 0) -> MeshFunction:
    """Defect of the short exact sequence 0 -> u -> [[u,z],[0,v]] -> v -> 0.

    Value at a window mesh:  [X, u] + [X, v] - [X, middle]  with X the
    realized vertex right of the mesh; zero outside the window meshes.
    Nonnegative everywhere, and zero exactly when z is a coboundary.
    """
    w = middle_term(u, z, v)
    vals = {}
    for m in window.meshes():
        probe = realize_vertex(window, ZVertex(m.p + 1, m.a), u.field, seed)
        d = (hom_dim_matrix(probe, u) + hom_dim_matrix(probe, v)
             - hom_dim_matrix(probe, w))
        if d < 0:
            raise AssertionError("negative sequence defect: broken hom computation")
        if d:
            vals[m] = d
    return MeshFunction(vals)


def pair_defect_matrix(window: ARQuiver, m: MatrixRep, n: MatrixRep,
                       seed: int = 0) -> MeshFunction:
    """Pair defect evaluated with matrix hom spaces; agrees with the
    mesh-level pair defect of the decompositions."""
    if m.dim_vector != n.dim_vector:
        raise ValueError("pair defect needs equal dimension vectors")
    vals = {}
    for mesh in window.meshes():
        probe = realize_vertex(window, ZVertex(mesh.p + 1, mesh.a), m.field, seed)
        d = hom_dim_matrix(probe, n) - hom_dim_matrix(probe, m)
        if d:
            vals[mesh] = d
    return MeshFunction(vals)
