"""Tangent spaces of orbit closures and rank schemes, and the constructive
proof that they agree in type D.

At a point N the tangent space of its own orbit is the coboundary space
B1(N,N).  The tangent space of the rank scheme of M at N is cut out by
linear conditions: for every window mesh where the pair defect of (M, N)
vanishes, with X the indecomposable right of the mesh, every pullback of
the tangent vector along a morphism X -> N must be a coboundary in the
cocycle space from X to N.

A tangent vector of the rank scheme is certified tangent to the orbit
closure by a finite tree: split it into blocks against a decomposition of
N; a block that is a coboundary is tangent to the orbit itself; a block
whose sequence defect is dominated by the pair defect moves along an
explicit curve inside the closure; any remaining block is pulled back
along a morphism from a third summand to a point with strictly larger
orbit, where certification recurses.  In type D the pullback search is
guaranteed to succeed; the region ordering on candidate summands follows
the diagonal-coordinate argument that proves it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .degeneration import (
    Orbit,
    enumerate_orbits,
    in_rank_scheme,
    sequence_defect,
)
from .mesh import ARQuiver, DirectSum, Mesh, MeshFunction, ZVertex
from .reps import (
    Cocycle,
    DEFAULT_FIELD,
    FieldConfig,
    MatrixRep,
    _stable_rng,
    coboundary_space,
    cocycle_from_flat,
    cocycle_space_dim,
    conjugate_cocycle,
    decompose,
    find_isomorphism,
    hom_dim_matrix,
    hom_space,
    is_coboundary,
    middle_term,
    realize_sum,
    realize_vertex,
)

DESCENT_FALLBACK_COMBOS = 8


class DescentSearchError(RuntimeError):
    """Raised when no admissible pullback is found.

    ``exhausted_budget`` distinguishes an engineering cutoff from a full
    search coming up empty; the latter would contradict the guarantee in
    type D and is surfaced as a counterexample candidate.
    """

    def __init__(self, message: str, exhausted_budget: bool):
        super().__init__(message)
        self.exhausted_budget = exhausted_budget


@dataclass
class TangentSpace:
    """A linear subspace of the cocycle space at a point, with a basis."""

    point: MatrixRep
    basis: list[Cocycle]
    ambient_dim: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_matrix(self) -> np.ndarray:
        if not self.basis:
            return linalg.zeros(0, self.ambient_dim)
        return np.vstack([z.flatten() for z in self.basis])

    def contains(self, z: Cocycle) -> bool:
        return linalg.in_row_space(z.flatten(), self.basis_matrix(), self.point.field.p)


def orbit_tangent(n: MatrixRep) -> TangentSpace:
    """B1(N,N): the image of the conjugation differential; its dimension is
    (sum of squares) - [N,N]."""
    rows = coboundary_space(n, n)
    basis = [cocycle_from_flat(n, n, row) for row in rows]
    space = TangentSpace(n, basis, cocycle_space_dim(n, n))
    expected = sum(x * x for x in n.dim_vector) - hom_dim_matrix(n, n)
    if space.dim != expected:
        raise AssertionError("orbit tangent dimension violates the fibration count")
    return space


def _constraining_meshes(window: ARQuiver, defect: MeshFunction) -> list[Mesh]:
    return [m for m in window.meshes() if defect[m] == 0]


def rank_scheme_tangent(window: ARQuiver, m: Orbit, n: MatrixRep,
                        seed: int = 0) -> TangentSpace:
    """The tangent space at N of the rank scheme of M, as a kernel.

    For each window mesh where the pair defect of (M, N) vanishes, and for
    each basis morphism f from the realized right-hand vertex X into N, the
    map Z -> (Z . f  mod coboundaries from X to N) is linear; the tangent
    space is the joint kernel.  It always contains B1(N,N).
    """
    n_dec = decompose(window, n, seed)
    n_orbit = Orbit.build(window, n_dec)
    if m.dim_vector != n_orbit.dim_vector:
        raise ValueError("tangent point has the wrong dimension vector")
    if not in_rank_scheme(window, m, n_orbit):
        raise ValueError("point lies outside the rank scheme")
    defect = window.pair_defect(m.summands, n_dec)
    ambient = cocycle_space_dim(n, n)
    p = n.field.p

    condition_rows: list[np.ndarray] = []
    for mesh in _constraining_meshes(window, defect):
        x = realize_vertex(window, ZVertex(mesh.p + 1, mesh.a), n.field, seed)
        homs = hom_space(x, n)
        if homs.dim == 0:
            continue
        cob = coboundary_space(x, n)
        for f in homs.elements:
            block = _pullback_matrix(n, x, f) % p
            for row in cob:
                nz = np.nonzero(row)[0]
                if len(nz):
                    block = (block - np.outer(row, block[int(nz[0])])) % p
            condition_rows.append(block)

    if condition_rows:
        system = np.vstack(condition_rows)
        kernel = linalg.nullspace(system, p)
    else:
        kernel = linalg.identity(ambient)
    basis = [cocycle_from_flat(n, n, row) for row in kernel]
    space = TangentSpace(n, basis, ambient)
    for b in orbit_tangent(n).basis:
        if not space.contains(b):
            raise AssertionError("rank scheme tangent space lost an orbit direction")
    return space


def _pullback_matrix(n: MatrixRep, x: MatrixRep, f: dict[str, np.ndarray]) -> np.ndarray:
    """Matrix of Z -> Z . f from flattened cocycles at N to flattened
    cocycles from x to N: block-diagonal kron(I, f_source^T) per arrow."""
    quiver = n.quiver
    rows_total = sum(n.dims[t] * x.dims[s] for s, t in quiver.arrows)
    cols_total = cocycle_space_dim(n, n)
    mat = linalg.zeros(rows_total, cols_total)
    r = c = 0
    for s, t in quiver.arrows:
        rh = n.dims[t] * x.dims[s]
        ch = n.dims[t] * n.dims[s]
        if rh and ch:
            mat[r: r + rh, c: c + ch] = np.kron(linalg.identity(n.dims[t]), f[s].T)
        r += rh
        c += ch
    return mat


class TangencyChecker:
    """The doubled-point characterization, with the per-point filter data
    computed once.

    Left form: for every window vertex X with [X, N] = [X, M], the glued
    representation [[N, Z], [0, N]] must receive exactly 2 [X, N] morphisms
    from X.  Right form: dual, with morphisms out of the glued point.  Both
    sides use matrix hom spaces and must agree on every vector.
    """

    def __init__(self, window: ARQuiver, m: Orbit, n: MatrixRep, seed: int = 0):
        n_dec = decompose(window, n, seed)
        n_orbit = Orbit.build(window, n_dec)
        if not in_rank_scheme(window, m, n_orbit):
            raise ValueError("point lies outside the rank scheme")
        self.window = window
        self.n = n
        self.left_filter = []
        self.right_filter = []
        for v in window.vertices():
            x = realize_vertex(window, v, n.field, seed)
            xn = hom_dim_matrix(x, n)
            if xn == window.hom(v, m.summands):
                self.left_filter.append((x, xn))
            nx = hom_dim_matrix(n, x)
            if nx == window.hom(m.summands, v):
                self.right_filter.append((x, nx))

    def check(self, z: Cocycle) -> bool:
        w = middle_term(self.n, z, self.n)
        left = all(hom_dim_matrix(x, w) == 2 * xn for x, xn in self.left_filter)
        right = all(hom_dim_matrix(w, x) == 2 * nx for x, nx in self.right_filter)
        if left != right:
            raise AssertionError("left and right tangency conditions disagree")
        return left


def tangent_condition_direct(window: ARQuiver, m: Orbit, n: MatrixRep,
                             z: Cocycle, seed: int = 0) -> bool:
    return TangencyChecker(window, m, n, seed).check(z)


# ---------------------------------------------------------------------------
# block decomposition of tangent vectors


@dataclass
class ComponentCocycle:
    """One block of a tangent vector against a fixed decomposition of the
    point: the piece mapping summand q into summand p, with its zero-padded
    ambient embedding."""

    p_idx: int
    q_idx: int
    block: Cocycle
    ambient: Cocycle


def _part_offsets(parts: Sequence[MatrixRep], quiver) -> list[dict[str, int]]:
    offsets = []
    run = {a: 0 for a in quiver.vertices}
    for part in parts:
        offsets.append(dict(run))
        for a in quiver.vertices:
            run[a] += part.dims[a]
    return offsets


def split_components(n_parts: Sequence[MatrixRep], z: Cocycle) -> list[ComponentCocycle]:
    """Slice an ambient cocycle into blocks along a block-diagonal point.

    The blocks reassemble to z; diagonal blocks are necessarily coboundaries
    (indecomposables here admit no self-extensions), which is asserted.
    """
    if not n_parts:
        return []
    quiver = n_parts[0].quiver
    offsets = _part_offsets(n_parts, quiver)
    out = []
    for p_idx, q_idx in itertools.product(range(len(n_parts)), repeat=2):
        tgt, src = n_parts[p_idx], n_parts[q_idx]
        blocks = {}
        for s, t in quiver.arrows:
            r0 = offsets[p_idx][t]
            c0 = offsets[q_idx][s]
            blocks[s, t] = z.blocks[s, t][r0: r0 + tgt.dims[t], c0: c0 + src.dims[s]]
        block = Cocycle(quiver, src.dims, tgt.dims, blocks, z.field)
        ambient = _embed_block(n_parts, p_idx, q_idx, block, z)
        if p_idx == q_idx and not block.is_zero():
            if not is_coboundary(block, src, tgt):
                raise AssertionError(
                    "non-split diagonal block: an indecomposable acquired a self-extension")
        out.append(ComponentCocycle(p_idx, q_idx, block, ambient))
    return out


def _embed_block(n_parts: Sequence[MatrixRep], p_idx: int, q_idx: int,
                 block: Cocycle, ambient_like: Cocycle) -> Cocycle:
    quiver = n_parts[0].quiver
    offsets = _part_offsets(n_parts, quiver)
    blocks = {}
    for s, t in quiver.arrows:
        mat = linalg.zeros(ambient_like.target_dims[t], ambient_like.source_dims[s])
        r0 = offsets[p_idx][t]
        c0 = offsets[q_idx][s]
        mat[r0: r0 + n_parts[p_idx].dims[t], c0: c0 + n_parts[q_idx].dims[s]] = \
            block.blocks[s, t]
        blocks[s, t] = mat
    return Cocycle(quiver, ambient_like.source_dims, ambient_like.target_dims,
                   blocks, ambient_like.field)


# ---------------------------------------------------------------------------
# certificates


@dataclass
class OrbitLeaf:
    """The block is a coboundary: tangent to the orbit itself."""

    p_idx: int
    q_idx: int


@dataclass
class CurveLeaf:
    """The block's sequence defect is dominated by the pair defect, so the
    one-parameter family N + t * (embedded block) stays in the closure and
    the block is tangent to it."""

    p_idx: int
    q_idx: int
    sequence_defect: MeshFunction
    pair_defect: MeshFunction


@dataclass
class DescentNode:
    """The block was pulled back along a morphism from a third summand to a
    deeper point of the closure, where certification recurses."""

    p_idx: int
    q_idx: int
    r_idx: int
    h_coeffs: tuple[int, ...]
    pulled: Cocycle
    new_point: MatrixRep
    new_summands: DirectSum
    iso: dict[str, np.ndarray]
    transported: Cocycle
    sub: "Certificate"


@dataclass
class Certificate:
    """A proof tree that a rank-scheme tangent vector at a point is tangent
    to the orbit closure.  Every node carries enough data to be re-verified
    from scratch with matrix computations only."""

    point_summands: DirectSum
    vector: Cocycle
    children: list[OrbitLeaf | CurveLeaf | DescentNode]

    @property
    def depth(self) -> int:
        subs = [c.sub.depth for c in self.children if isinstance(c, DescentNode)]
        return 1 + max(subs, default=0)

    def descent_count(self) -> int:
        total = 0
        for c in self.children:
            if isinstance(c, DescentNode):
                total += 1 + c.sub.descent_count()
        return total

    def curve_count(self) -> int:
        total = sum(isinstance(c, CurveLeaf) for c in self.children)
        for c in self.children:
            if isinstance(c, DescentNode):
                total += c.sub.curve_count()
        return total

    def summary(self) -> dict:
        kinds = {"orbit": 0, "curve": 0, "descent": 0}
        for c in self.children:
            if isinstance(c, OrbitLeaf):
                kinds["orbit"] += 1
            elif isinstance(c, CurveLeaf):
                kinds["curve"] += 1
            else:
                kinds["descent"] += 1
        return {"depth": self.depth, "children": kinds,
                "descent_total": self.descent_count()}

    def to_json_dict(self) -> dict:
        """The proof tree without matrix payloads; enough to navigate and to
        rebuild every node with the library."""
        children = []
        for c in self.children:
            if isinstance(c, OrbitLeaf):
                children.append({"kind": "orbit", "block": [c.p_idx, c.q_idx]})
            elif isinstance(c, CurveLeaf):
                children.append({
                    "kind": "curve", "block": [c.p_idx, c.q_idx],
                    "sequence_defect": c.sequence_defect.to_json(),
                    "pair_defect": c.pair_defect.to_json(),
                })
            else:
                children.append({
                    "kind": "descent", "block": [c.p_idx, c.q_idx],
                    "via_summand": c.r_idx,
                    "h_coefficients": list(c.h_coeffs),
                    "new_point": c.new_summands.to_json(),
                    "subtree": c.sub.to_json_dict(),
                })
        return {"point": self.point_summands.to_json(),
                "depth": self.depth, "children": children}


def curve_certificate(window: ARQuiver, m: Orbit, n_parts: Sequence[MatrixRep],
                      n_summands: DirectSum, comp: ComponentCocycle,
                      seed: int = 0) -> CurveLeaf | None:
    """Leaf of the curve kind, or None when the domination inequality fails."""
    if comp.p_idx == comp.q_idx:
        raise ValueError("curve certificates apply to off-diagonal blocks")
    dz = sequence_defect(window, n_parts[comp.p_idx], comp.block,
                         n_parts[comp.q_idx], seed)
    dmn = window.pair_defect(m.summands, n_summands)
    if dz <= dmn:
        return CurveLeaf(comp.p_idx, comp.q_idx, dz, dmn)
    return None


def _candidate_order(window: ARQuiver, summand_vertices: Sequence[ZVertex],
                     p_idx: int, q_idx: int, violations: list[Mesh]) -> list[int]:
    """Summand indices to try, those inside the diagonal region of the
    lowest violating mesh first (type D); deterministic."""
    others = [i for i in range(len(summand_vertices)) if i not in (p_idx, q_idx)]
    if window.graph.kind != "D" or not violations:
        return others
    coords = window.tq.diagonal_coords
    m0 = min(violations, key=lambda m: (coords(m)[1], coords(m)[0], m))
    phi0, psi0 = coords(m0)

    def in_region(i: int) -> bool:
        phi, psi = coords(summand_vertices[i])
        return phi > phi0 and psi < psi0

    return [i for i in others if in_region(i)] + [i for i in others if not in_region(i)]


def descent_step(window: ARQuiver, m: Orbit, n_parts: Sequence[MatrixRep],
                 n_summands: DirectSum, comp: ComponentCocycle,
                 seed: int = 0, budget: int | None = None
                 ) -> tuple[int, tuple[int, ...], Cocycle, MatrixRep]:
    """Find a third summand r and a morphism h from it into summand q such
    that the pullback y of the block along h (i) does not split, (ii) has
    sequence defect dominated by the pair defect, and (iii) loses defect
    only where the pair defect still exceeds y's.  Returns
    (r, coefficients of h, y, the new point N + embedded y).

    Exhausting the search is an error: under a finite budget it reports the
    cutoff, after a complete search it reports a counterexample candidate.
    """
    from .reps import pullback_cocycle

    p_idx, q_idx = comp.p_idx, comp.q_idx
    n_point = _assemble_point(n_parts)
    dmn = window.pair_defect(m.summands, n_summands)
    dz = sequence_defect(window, n_parts[p_idx], comp.block, n_parts[q_idx], seed)
    if not dz.support() <= dmn.support():
        raise ValueError("block is not tangent to the rank scheme")
    if dz <= dmn:
        raise ValueError("block already satisfies the curve inequality")

    violations = [mm for mm in dz.support() if dz[mm] > dmn[mm]]
    summand_vertices = n_summands.summand_list()
    order = _candidate_order(window, summand_vertices, p_idx, q_idx, violations)
    p = n_point.field.p
    trials = 0
    for r_idx in order:
        homs = hom_space(n_parts[r_idx], n_parts[q_idx])
        if homs.dim == 0:
            continue
        unit = [tuple(1 if i == k else 0 for i in range(homs.dim))
                for k in range(homs.dim)]
        rng = _stable_rng("descent", seed, p_idx, q_idx, r_idx)
        extra = [tuple(int(c) for c in rng.integers(0, p, size=homs.dim))
                 for _ in range(DESCENT_FALLBACK_COMBOS)]
        for coeffs in unit + extra:
            if budget is not None and trials >= budget:
                raise DescentSearchError(
                    f"descent search stopped after {trials} trials (budget)", True)
            trials += 1
            h = homs.combination(coeffs)
            y = pullback_cocycle(comp.block, h, n_parts[r_idx])
            if y.is_zero():
                continue
            if is_coboundary(y, n_parts[r_idx], n_parts[p_idx]):
                continue
            dy = sequence_defect(window, n_parts[p_idx], y, n_parts[r_idx], seed)
            if not dy <= dmn:
                continue
            if not (dz - dy).support() <= (dmn - dy).support():
                continue
            embedded = _embed_block(n_parts, p_idx, r_idx, y, comp.ambient)
            new_point = _add_cocycle(n_point, embedded)
            return r_idx, coeffs, y, new_point
    raise DescentSearchError(
        f"descent search failed after scanning all {trials} candidates "
        "(counterexample candidate)", False)


def _assemble_point(n_parts: Sequence[MatrixRep]) -> MatrixRep:
    from .reps import direct_sum

    return direct_sum(list(n_parts))


def _add_cocycle(point: MatrixRep, z: Cocycle) -> MatrixRep:
    p = point.field.p
    mats = {a: (point.mats[a] + z.blocks[a]) % p for a in point.mats}
    return MatrixRep(point.quiver, point.dims, mats, point.field)


def certify_tangent(window: ARQuiver, m: Orbit, n_summands: DirectSum,
                    z: Cocycle, field: FieldConfig = DEFAULT_FIELD, seed: int = 0,
                    budget: int | None = None) -> Certificate:
    """Build the proof tree for a rank-scheme tangent vector.

    The point is the canonical block-diagonal model of ``n_summands``; z is
    a tangent vector of the rank scheme of M there (checked).  Each block
    becomes an orbit leaf, a curve leaf, or a descent node whose subtree
    certifies the block at a point with strictly larger orbit.
    """
    n_parts = [realize_vertex(window, v, field, seed)
               for v in n_summands.summand_list()]
    n_point = _assemble_point(n_parts) if n_parts else realize_sum(
        window, n_summands, field, seed)
    n_orbit = Orbit.build(window, n_summands)
    if not in_rank_scheme(window, m, n_orbit):
        raise ValueError("certification point lies outside the rank scheme")
    dmn = window.pair_defect(m.summands, n_summands)
    dznn = sequence_defect(window, n_point, z, n_point, seed) if n_parts else MeshFunction()
    if not dznn.support() <= dmn.support():
        raise ValueError("vector is not tangent to the rank scheme")

    children: list[OrbitLeaf | CurveLeaf | DescentNode] = []
    for comp in split_components(n_parts, z):
        if comp.block.is_zero() or is_coboundary(
                comp.block, n_parts[comp.q_idx], n_parts[comp.p_idx]):
            children.append(OrbitLeaf(comp.p_idx, comp.q_idx))
            continue
        leaf = curve_certificate(window, m, n_parts, n_summands, comp, seed)
        if leaf is not None:
            children.append(leaf)
            continue
        r_idx, coeffs, y, new_point = descent_step(
            window, m, n_parts, n_summands, comp, seed, budget)
        new_summands = decompose(window, new_point, seed)
        new_orbit = Orbit.build(window, new_summands)
        if new_orbit.dimension <= n_orbit.dimension:
            raise AssertionError("descent did not increase the orbit dimension")
        canonical = realize_sum(window, new_summands, field, seed)
        iso = find_isomorphism(canonical, new_point)
        if iso is None:
            raise AssertionError("no isomorphism onto the canonical model found")
        iso_inv = {a: linalg.inverse(iso[a], field.p) for a in iso}
        transported = conjugate_cocycle(iso_inv, comp.ambient)
        sub = certify_tangent(window, m, new_summands, transported, field, seed, budget)
        children.append(DescentNode(comp.p_idx, comp.q_idx, r_idx, coeffs, y,
                                    new_point, new_summands, iso, transported, sub))
    return Certificate(n_summands, z, children)


def verify_certificate(window: ARQuiver, m: Orbit, cert: Certificate,
                       field: FieldConfig = DEFAULT_FIELD, seed: int = 0) -> None:
    """Replay a certificate, re-checking every node from matrix primitives.

    Raises AssertionError on the first node that fails."""
    n_parts = [realize_vertex(window, v, field, seed)
               for v in cert.point_summands.summand_list()]
    n_orbit = Orbit.build(window, cert.point_summands)
    dmn = window.pair_defect(m.summands, cert.point_summands)
    comps = {(c.p_idx, c.q_idx): c for c in split_components(n_parts, cert.vector)}
    assert len(cert.children) == len(comps), "component count mismatch"
    for child in cert.children:
        comp = comps[child.p_idx, child.q_idx]
        if isinstance(child, OrbitLeaf):
            assert comp.block.is_zero() or is_coboundary(
                comp.block, n_parts[comp.q_idx], n_parts[comp.p_idx]), \
                "orbit leaf block is not a coboundary"
        elif isinstance(child, CurveLeaf):
            dz = sequence_defect(window, n_parts[comp.p_idx], comp.block,
                                 n_parts[comp.q_idx], seed)
            assert dz == child.sequence_defect, "recorded sequence defect drifted"
            assert dmn == child.pair_defect, "recorded pair defect drifted"
            assert dz <= dmn, "curve inequality fails on replay"
        else:
            y, r_idx = child.pulled, child.r_idx
            assert not is_coboundary(y, n_parts[r_idx], n_parts[comp.p_idx]), \
                "descent pullback splits"
            dz = sequence_defect(window, n_parts[comp.p_idx], comp.block,
                                 n_parts[comp.q_idx], seed)
            dy = sequence_defect(window, n_parts[comp.p_idx], y, n_parts[r_idx], seed)
            assert dy <= dmn, "descent pullback violates the domination inequality"
            assert (dz - dy).support() <= (dmn - dy).support(), \
                "descent pullback loses support in the wrong place"
            embedded = _embed_block(n_parts, comp.p_idx, r_idx, y, comp.ambient)
            rebuilt = _add_cocycle(_assemble_point(n_parts), embedded)
            assert all((rebuilt.mats[a] == child.new_point.mats[a]).all()
                       for a in rebuilt.mats), "descent point drifted"
            new_summands = decompose(window, child.new_point, seed)
            assert new_summands == child.new_summands, "descent decomposition drifted"
            new_orbit = Orbit.build(window, new_summands)
            assert new_orbit.dimension > n_orbit.dimension, \
                "descent did not increase orbit dimension"
            assert in_rank_scheme(window, m, new_orbit), \
                "descent point left the rank scheme"
            # transported vector tangency at the canonical model
            canonical = realize_sum(window, new_summands, field, seed)
            conj = {a: child.iso[a] for a in child.iso}
            assert all(linalg.inverse(conj[a], field.p) is not None for a in conj), \
                "descent isomorphism is not invertible"
            from .reps import conjugate_rep

            assert all((conjugate_rep(conj, canonical).mats[a]
                        == child.new_point.mats[a]).all()
                       for a in child.new_point.mats), \
                "descent isomorphism does not carry the canonical model to the point"
            dl = sequence_defect(window, canonical, child.transported, canonical, seed)
            dml = window.pair_defect(m.summands, new_summands)
            assert dl.support() <= dml.support(), \
                "transported vector is not tangent to the rank scheme at the new point"
            verify_certificate(window, m, child.sub, field, seed)


# ---------------------------------------------------------------------------
# the sweep driver


@dataclass
class VerifyConfig:
    field: FieldConfig = DEFAULT_FIELD
    seed: int = 0
    descent_budget: int | None = None
    jobs: int = 1


def _pair_report(window: ARQuiver, m: Orbit, n_orbit: Orbit,
                 config: VerifyConfig) -> dict:
    n_model = realize_sum(window, n_orbit.summands, config.field, config.seed)
    bspace = orbit_tangent(n_model)
    tspace = rank_scheme_tangent(window, m, n_model, config.seed)
    certs = []
    for z in tspace.basis:
        cert = certify_tangent(window, m, n_orbit.summands, z, config.field,
                               config.seed, config.descent_budget)
        certs.append(cert)
    return {
        "N": n_orbit.summands.to_json(),
        "dim_orbit_tangent": bspace.dim,
        "dim_rank_scheme_tangent": tspace.dim,
        "certificates": [c.to_json_dict() for c in certs],
        "descent_nodes": sum(c.descent_count() for c in certs),
        "max_depth": max((c.depth for c in certs), default=0),
    }


def verify_tangent_spaces(window: ARQuiver, dim_vectors: Sequence[Sequence[int]],
                          config: VerifyConfig = VerifyConfig(),
                          pair: tuple[int, int] | None = None) -> dict:
    """Certify, for every orbit M of every given dimension vector and every
    point N of its closure, that each basis vector of the rank-scheme
    tangent space at N is tangent to the orbit closure.

    Together with the closed embedding of the orbit closure in the rank
    scheme this pins the two tangent spaces to each other on every tested
    pair.  The report is deterministic given the configuration; wall-clock
    data lives in the separate "timings" field.
    """
    import time

    sweep = []
    timings = {}
    findings = []
    total_pairs = 0
    total_descents = 0
    for d in dim_vectors:
        d = tuple(int(x) for x in d)
        orbits = enumerate_orbits(window, d)
        entry = {"dim_vector": list(d), "orbit_count": len(orbits), "pairs": []}
        tasks = []
        for mi, m in enumerate(orbits):
            for ni, n_orbit in enumerate(orbits):
                if pair is not None and (mi, ni) != pair:
                    continue
                if not in_rank_scheme(window, m, n_orbit):
                    continue
                tasks.append((mi, ni, m, n_orbit))

        def run(task):
            mi, ni, m, n_orbit = task
            t0 = time.perf_counter()
            try:
                rep = _pair_report(window, m, n_orbit, config)
                rep.update({"M_index": mi, "N_index": ni, "status": "certified"})
            except DescentSearchError as exc:
                rep = {"M_index": mi, "N_index": ni,
                       "status": "budget-exhausted" if exc.exhausted_budget
                       else "counterexample-candidate",
                       "detail": str(exc)}
            return rep, time.perf_counter() - t0

        if config.jobs > 1:
            from concurrent.futures import ThreadPoolExecutor

            with ThreadPoolExecutor(max_workers=config.jobs) as pool:
                results = list(pool.map(run, tasks))
        else:
            results = [run(t) for t in tasks]
        for (mi, ni, _, _), (rep, dt) in zip(tasks, results):
            entry["pairs"].append(rep)
            timings[f"d={','.join(map(str, d))};M={mi};N={ni}"] = round(dt, 6)
            total_pairs += 1
            if rep["status"] != "certified":
                findings.append(rep)
            else:
                total_descents += rep["descent_nodes"]
        sweep.append(entry)
    verdict = "verified" if not findings else (
        "budget-exhausted" if all(f["status"] == "budget-exhausted" for f in findings)
        else "counterexample-candidate")
    return {
        "schema_version": 1,
        "quiver": window.quiver.to_json_dict(),
        "config": {"p": config.field.p, "seed": config.seed,
                   "descent_budget": config.descent_budget, "jobs": config.jobs},
        "experimental": window.graph.kind == "E",
        "sweep": sweep,
        "totals": {"pairs": total_pairs, "descent_nodes": total_descents},
        "findings": findings,
        "verdict": verdict,
        "timings": timings,
    }


def box_dim_vectors(rank: int, max_coord: int, max_total: int | None = None
                    ) -> list[tuple[int, ...]]:
    """All dimension vectors with coordinates <= max_coord (and optionally
    bounded total), in lexicographic order."""
    out = []
    for d in itertools.product(range(max_coord + 1), repeat=rank):
        if max_total is not None and sum(d) > max_total:
            continue
        out.append(d)
    return out
