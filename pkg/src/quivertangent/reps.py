"""Explicit matrix representations over a prime field: the brute-force side.

Everything here is exact linear algebra: hom spaces by solving the
intertwining equations, cocycles and coboundaries for the one-extension
calculus, realization of window vertices as concrete indecomposables, and
Krull-Schmidt decomposition through hom counts.

The ground field is F_p (default p = 32003) rather than an algebraically
closed field: over a Dynkin quiver every indecomposable is defined over the
prime field with endomorphism ring F_p, so all hom/ext dimensions in scope
agree with the closed-field values.  The oracle-equivalence tests check
this assumption wholesale.
"""

from __future__ import annotations

import hashlib
import threading
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .dynkin import DynkinQuiver, euler_form
from .linalg import DEFAULT_PRIME
from .mesh import ARQuiver, DirectSum, ZVertex


@dataclass(frozen=True)
class FieldConfig:
    """Prime field used for all matrix computations."""

    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if not linalg.is_prime(self.p):
            raise ValueError(f"field characteristic {self.p} is not prime")


DEFAULT_FIELD = FieldConfig()


class MatrixRep:
    """A point of the representation space: one matrix per arrow.

    ``dims`` maps vertex labels to dimensions; the matrix of an arrow
    ``s -> t`` has shape (dims[t], dims[s]).  Treated as immutable.
    """

    def __init__(self, quiver: DynkinQuiver, dims: dict[str, int],
                 mats: dict[tuple[str, str], np.ndarray], field: FieldConfig = DEFAULT_FIELD):
        self.quiver = quiver
        self.field = field
        self.dims = {a: int(dims.get(a, 0)) for a in quiver.vertices}
        self.mats = {}
        for s, t in quiver.arrows:
            m = np.asarray(mats.get((s, t), linalg.zeros(self.dims[t], self.dims[s])),
                           dtype=np.int64) % field.p
            if m.shape != (self.dims[t], self.dims[s]):
                raise ValueError(
                    f"matrix for {s}>{t} has shape {m.shape}, "
                    f"expected {(self.dims[t], self.dims[s])}")
            self.mats[s, t] = m

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.dims[a] for a in self.quiver.vertices)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def to_json_dict(self) -> dict:
        return {
            "schema_version": 1,
            "quiver": self.quiver.to_json_dict(),
            "dims": dict(self.dims),
            "matrices": {f"{s}>{t}": m.tolist() for (s, t), m in self.mats.items()},
        }

    @staticmethod
    def from_json_dict(data: dict, field: FieldConfig = DEFAULT_FIELD) -> "MatrixRep":
        from .dynkin import quiver_from_json

        quiver = quiver_from_json(data["quiver"])
        dims = {a: int(d) for a, d in data["dims"].items()}
        mats = {}
        for key, rows in data.get("matrices", {}).items():
            s, t = key.split(">", 1)
            shape = (dims.get(t, 0), dims.get(s, 0))
            mats[s, t] = np.array(rows, dtype=np.int64).reshape(shape)
        return MatrixRep(quiver, dims, mats, field)


def zero_rep(quiver: DynkinQuiver, dims: dict[str, int],
             field: FieldConfig = DEFAULT_FIELD) -> MatrixRep:
    return MatrixRep(quiver, dims, {}, field)


def simple_rep(quiver: DynkinQuiver, a: str, field: FieldConfig = DEFAULT_FIELD) -> MatrixRep:
    return zero_rep(quiver, {a: 1}, field)


class Cocycle:
    """An element of the cocycle space from V to U: one matrix per arrow
    with the shape of a map V_{s(arrow)} -> U_{t(arrow)}.

    These are exactly the tangent vectors of the representation space when
    U = V = a point, and classify one-extensions of V by U modulo the
    coboundaries below.
    """

    def __init__(self, quiver: DynkinQuiver, source_dims: dict[str, int],
                 target_dims: dict[str, int], blocks: dict[tuple[str, str], np.ndarray],
                 field: FieldConfig = DEFAULT_FIELD):
        self.quiver = quiver
        self.field = field
        self.source_dims = {a: int(source_dims.get(a, 0)) for a in quiver.vertices}
        self.target_dims = {a: int(target_dims.get(a, 0)) for a in quiver.vertices}
        self.blocks = {}
        for s, t in quiver.arrows:
            shape = (self.target_dims[t], self.source_dims[s])
            b = np.asarray(blocks.get((s, t), linalg.zeros(*shape)), dtype=np.int64) % field.p
            if b.shape != shape:
                raise ValueError(f"cocycle block for {s}>{t} has shape {b.shape}, expected {shape}")
            self.blocks[s, t] = b

    def is_zero(self) -> bool:
        return all(not b.any() for b in self.blocks.values())

    def flatten(self) -> np.ndarray:
        if not self.quiver.arrows:
            return linalg.zeros(1, 0)[0]
        return np.concatenate([self.blocks[a].reshape(-1) for a in self.quiver.arrows])

    def __add__(self, other: "Cocycle") -> "Cocycle":
        blocks = {a: (self.blocks[a] + other.blocks[a]) % self.field.p
                  for a in self.blocks}
        return Cocycle(self.quiver, self.source_dims, self.target_dims, blocks, self.field)

    def scale(self, k: int) -> "Cocycle":
        blocks = {a: (k * self.blocks[a]) % self.field.p for a in self.blocks}
        return Cocycle(self.quiver, self.source_dims, self.target_dims, blocks, self.field)


def cocycle_space_dim(source: MatrixRep, target: MatrixRep) -> int:
    return sum(target.dims[t] * source.dims[s] for s, t in source.quiver.arrows)


def zero_cocycle(source: MatrixRep, target: MatrixRep) -> Cocycle:
    return Cocycle(source.quiver, source.dims, target.dims, {}, source.field)


def cocycle_from_flat(source: MatrixRep, target: MatrixRep, flat: np.ndarray) -> Cocycle:
    blocks = {}
    i = 0
    for s, t in source.quiver.arrows:
        size = target.dims[t] * source.dims[s]
        blocks[s, t] = flat[i:i + size].reshape(target.dims[t], source.dims[s])
        i += size
    return Cocycle(source.quiver, source.dims, target.dims, blocks, source.field)


def random_cocycle(source: MatrixRep, target: MatrixRep, rng) -> Cocycle:
    flat = linalg.random_matrix(rng, 1, cocycle_space_dim(source, target), source.field.p)[0]
    return cocycle_from_flat(source, target, flat)


# ---------------------------------------------------------------------------
# hom spaces


class HomBasis:
    """A basis of the space of morphisms M -> N, one matrix tuple each."""

    def __init__(self, source: MatrixRep, target: MatrixRep,
                 elements: list[dict[str, np.ndarray]]):
        self.source = source
        self.target = target
        self.elements = elements

    @property
    def dim(self) -> int:
        return len(self.elements)

    def combination(self, coeffs: Sequence[int]) -> dict[str, np.ndarray]:
        p = self.source.field.p
        out = {a: linalg.zeros(self.target.dims[a], self.source.dims[a])
               for a in self.source.quiver.vertices}
        for c, f in zip(coeffs, self.elements):
            for a in out:
                out[a] = (out[a] + c * f[a]) % p
        return out


def _check_same_quiver(m: MatrixRep, n: MatrixRep) -> None:
    if m.quiver != n.quiver:
        raise ValueError("representations live over different quivers")
    if m.field != n.field:
        raise ValueError("representations live over different fields")


def hom_space(m: MatrixRep, n: MatrixRep) -> HomBasis:
    """Solve the intertwining system f_t M_arrow = N_arrow f_s for all arrows.

    With row-major flattening of each unknown block f_a, the equation of an
    arrow contributes kron(I, M^T) on the target block and -kron(N, I) on
    the source block.
    """
    _check_same_quiver(m, n)
    p = m.field.p
    verts = m.quiver.vertices
    offsets = {}
    total = 0
    for a in verts:
        offsets[a] = total
        total += n.dims[a] * m.dims[a]
    n_eq = sum(n.dims[t] * m.dims[s] for s, t in m.quiver.arrows)
    sys_mat = linalg.zeros(n_eq, total)
    row = 0
    for s, t in m.quiver.arrows:
        ma, na = m.mats[s, t], n.mats[s, t]
        rows_here = n.dims[t] * m.dims[s]
        if rows_here:
            block_t = np.kron(linalg.identity(n.dims[t]), ma.T)
            sys_mat[row: row + rows_here,
                    offsets[t]: offsets[t] + n.dims[t] * m.dims[t]] += block_t
            block_s = np.kron(na, linalg.identity(m.dims[s]))
            sys_mat[row: row + rows_here,
                    offsets[s]: offsets[s] + n.dims[s] * m.dims[s]] -= block_s
        row += rows_here
    kernel = linalg.nullspace(sys_mat % p, p)
    elements = []
    for vec in kernel:
        f = {}
        for a in verts:
            block = vec[offsets[a]: offsets[a] + n.dims[a] * m.dims[a]]
            f[a] = block.reshape(n.dims[a], m.dims[a])
        elements.append(f)
    return HomBasis(m, n, elements)


def hom_dim_matrix(m: MatrixRep, n: MatrixRep) -> int:
    return hom_space(m, n).dim


def ext1_dim(m: MatrixRep, n: MatrixRep) -> int:
    """dim Ext^1 = dim Hom - Euler form; nonnegative."""
    _check_same_quiver(m, n)
    val = hom_dim_matrix(m, n) - euler_form(m.quiver, m.dim_vector, n.dim_vector)
    if val < 0:
        raise AssertionError("negative ext dimension: broken hom computation")
    return val


# ---------------------------------------------------------------------------
# constructions


def direct_sum(reps: Sequence[MatrixRep], quiver: DynkinQuiver | None = None,
               field: FieldConfig = DEFAULT_FIELD) -> MatrixRep:
    """Block-diagonal sum; the empty sum needs the quiver spelled out."""
    if not reps:
        if quiver is None:
            raise ValueError("empty direct sum needs an explicit quiver")
        return zero_rep(quiver, {}, field)
    quiver = reps[0].quiver
    field = reps[0].field
    for r in reps[1:]:
        _check_same_quiver(reps[0], r)
    dims = {a: sum(r.dims[a] for r in reps) for a in quiver.vertices}
    mats = {}
    for s, t in quiver.arrows:
        m = linalg.zeros(dims[t], dims[s])
        ro = co = 0
        for r in reps:
            m[ro:ro + r.dims[t], co:co + r.dims[s]] = r.mats[s, t]
            ro += r.dims[t]
            co += r.dims[s]
        mats[s, t] = m
    return MatrixRep(quiver, dims, mats, field)


def middle_term(u: MatrixRep, z: Cocycle, v: MatrixRep) -> MatrixRep:
    """The extension of v by u glued by the cocycle z: arrow matrices
    [[U, Z], [0, V]].  With z = 0 this is the split sum."""
    _check_same_quiver(u, v)
    if z.source_dims != v.dims or z.target_dims != u.dims:
        raise ValueError("cocycle shape does not match (target u, source v)")
    dims = {a: u.dims[a] + v.dims[a] for a in u.quiver.vertices}
    mats = {}
    for s, t in u.quiver.arrows:
        m = linalg.zeros(dims[t], dims[s])
        m[: u.dims[t], : u.dims[s]] = u.mats[s, t]
        m[: u.dims[t], u.dims[s]:] = z.blocks[s, t]
        m[u.dims[t]:, u.dims[s]:] = v.mats[s, t]
        mats[s, t] = m
    return MatrixRep(u.quiver, dims, mats, u.field)


def eta(v: MatrixRep, u: MatrixRep, h: dict[str, np.ndarray]) -> Cocycle:
    """The coboundary of a vertex-indexed matrix family h: h V - U h."""
    p = v.field.p
    blocks = {}
    for s, t in v.quiver.arrows:
        blocks[s, t] = (linalg.matmul(h[t], v.mats[s, t], p)
                        - linalg.matmul(u.mats[s, t], h[s], p)) % p
    return Cocycle(v.quiver, v.dims, u.dims, blocks, v.field)


def coboundary_matrix(v: MatrixRep, u: MatrixRep) -> np.ndarray:
    """The matrix of eta: flattened vertex maps h -> flattened cocycles
    h V - U h, assembled arrow block by arrow block."""
    _check_same_quiver(v, u)
    quiver = v.quiver
    h_offsets = {}
    h_total = 0
    for a in quiver.vertices:
        h_offsets[a] = h_total
        h_total += u.dims[a] * v.dims[a]
    z_total = sum(u.dims[t] * v.dims[s] for s, t in quiver.arrows)
    mat = linalg.zeros(z_total, h_total)
    row = 0
    for s, t in quiver.arrows:
        rows_here = u.dims[t] * v.dims[s]
        if rows_here:
            mat[row: row + rows_here,
                h_offsets[t]: h_offsets[t] + u.dims[t] * v.dims[t]] += \
                np.kron(linalg.identity(u.dims[t]), v.mats[s, t].T)
            mat[row: row + rows_here,
                h_offsets[s]: h_offsets[s] + u.dims[s] * v.dims[s]] -= \
                np.kron(u.mats[s, t], linalg.identity(v.dims[s]))
        row += rows_here
    return mat % v.field.p


def coboundary_space(v: MatrixRep, u: MatrixRep) -> np.ndarray:
    """Echelonized basis (rows, flattened) of the coboundaries from v to u,
    i.e. the image of eta.  Its dimension is sum(dims products) - [v,u]."""
    return linalg.row_space(coboundary_matrix(v, u).T, v.field.p)


def is_coboundary(z: Cocycle, v: MatrixRep, u: MatrixRep,
                  basis: np.ndarray | None = None) -> bool:
    """Whether the extension sequence of z splits."""
    if basis is None:
        basis = coboundary_space(v, u)
    return linalg.in_row_space(z.flatten(), basis, v.field.p)


def pullback_cocycle(z: Cocycle, h: dict[str, np.ndarray],
                     new_source: MatrixRep) -> Cocycle:
    """Compose with h on the source side: block_arrow . h_{s(arrow)}."""
    p = z.field.p
    blocks = {}
    for s, t in z.quiver.arrows:
        blocks[s, t] = linalg.matmul(z.blocks[s, t], h[s], p)
    return Cocycle(z.quiver, new_source.dims, z.target_dims, blocks, z.field)


def pushout_cocycle(h: dict[str, np.ndarray], z: Cocycle,
                    new_target: MatrixRep) -> Cocycle:
    """Compose with h on the target side: h_{t(arrow)} . block_arrow."""
    p = z.field.p
    blocks = {}
    for s, t in z.quiver.arrows:
        blocks[s, t] = linalg.matmul(h[t], z.blocks[s, t], p)
    return Cocycle(z.quiver, z.source_dims, new_target.dims, blocks, z.field)


# ---------------------------------------------------------------------------
# realizing window vertices


REALIZE_ATTEMPTS = 64

_realize_cache: dict[tuple, MatrixRep] = {}
_realize_lock = threading.Lock()


def _stable_rng(*parts) -> np.random.Generator:
    digest = hashlib.blake2b(repr(parts).encode(), digest_size=8).digest()
    return np.random.default_rng(int.from_bytes(digest, "big"))


class RealizationError(RuntimeError):
    pass


def realize_vertex(window: ARQuiver, v: ZVertex, field: FieldConfig = DEFAULT_FIELD,
                   seed: int = 0) -> MatrixRep:
    """A concrete indecomposable for a window vertex.

    Samples arrow matrices for the root dimension vector until the
    endomorphism algebra has dimension 1, which certifies the result is the
    unique indecomposable with that dimension vector.  Deterministic in
    (quiver, vertex, field, seed); results are cached.
    """
    key = (window.quiver, v, field.p, seed)
    hit = _realize_cache.get(key)
    if hit is not None:
        return hit
    quiver = window.quiver
    root = window.dimension_vector_of(v)
    dims = dict(zip(quiver.vertices, root))
    rep = None
    for attempt in range(REALIZE_ATTEMPTS):
        rng = _stable_rng("realize", quiver.arrows, v, field.p, seed, attempt)
        mats = {(s, t): linalg.random_matrix(rng, dims[t], dims[s], field.p)
                for s, t in quiver.arrows}
        cand = MatrixRep(quiver, dims, mats, field)
        if hom_dim_matrix(cand, cand) == 1:
            rep = cand
            break
    if rep is None:
        raise RealizationError(
            f"could not realize {v} with End = field in {REALIZE_ATTEMPTS} attempts")
    with _realize_lock:
        return _realize_cache.setdefault(key, rep)


def realize_sum(window: ARQuiver, obj: DirectSum, field: FieldConfig = DEFAULT_FIELD,
                seed: int = 0) -> MatrixRep:
    """Canonical block-diagonal model of a direct sum, summands in sorted
    order with multiplicity."""
    parts = [realize_vertex(window, v, field, seed) for v in obj.summand_list()]
    return direct_sum(parts, quiver=window.quiver, field=field)


def decompose(window: ARQuiver, m: MatrixRep, seed: int = 0) -> DirectSum:
    """Krull-Schmidt decomposition through hom counts against realized
    vertices; boundary pairing terms beyond the window are zero.
    """
    field = m.field
    counts: dict[ZVertex, int] = {}
    remaining = sum(m.dims.values())

    def pairing(u: ZVertex) -> int:
        if not window.contains_vertex(u):
            return 0  # positive shifts admit no homs into a module
        return hom_dim_matrix(realize_vertex(window, u, field, seed), m)

    for v in window.vertices():
        if remaining == 0:
            break
        val = pairing(v)
        for b in window.graph.neighbors(v.a):
            val -= pairing(ZVertex(v.p + 1, b))
        val += pairing(ZVertex(v.p + 2, v.a))
        if val < 0:
            raise AssertionError(f"negative multiplicity at {v}")
        if val:
            counts[v] = val
            remaining -= val * sum(window.dimension_vector_of(v))
    result = DirectSum.of(counts)
    if window.dimension_vector(result) != m.dim_vector:
        raise AssertionError("decomposition does not add up to the dimension vector")
    return result


def find_isomorphism(src: MatrixRep, dst: MatrixRep) -> dict[str, np.ndarray] | None:
    """An invertible morphism src -> dst, if the two are isomorphic.

    Scans basis elements and then seeded random combinations of the hom
    space; for isomorphic representations over a large prime field a random
    combination is invertible with overwhelming probability.
    """
    if src.dim_vector != dst.dim_vector:
        return None
    basis = hom_space(src, dst)
    p = src.field.p

    def invertible(f: dict[str, np.ndarray]) -> bool:
        return all(linalg.inverse(f[a], p) is not None for a in src.quiver.vertices)

    for f in basis.elements:
        if invertible(f):
            return f
    for attempt in range(32):
        rng = _stable_rng("iso", attempt, basis.dim, src.dim_vector)
        coeffs = [int(c) for c in rng.integers(0, p, size=basis.dim)]
        f = basis.combination(coeffs)
        if invertible(f):
            return f
    return None


def conjugate_rep(g: dict[str, np.ndarray], m: MatrixRep) -> MatrixRep:
    """The point g * m: arrow matrices g_t M g_s^{-1}."""
    p = m.field.p
    ginv = {a: linalg.inverse(g[a], p) for a in m.quiver.vertices}
    if any(gi is None for gi in ginv.values()):
        raise ValueError("conjugation needs invertible blocks")
    mats = {}
    for s, t in m.quiver.arrows:
        mats[s, t] = linalg.matmul(linalg.matmul(g[t], m.mats[s, t], p), ginv[s], p)
    return MatrixRep(m.quiver, m.dims, mats, m.field)


def conjugate_cocycle(g: dict[str, np.ndarray], z: Cocycle) -> Cocycle:
    """Transport of a tangent vector along conjugation by g."""
    p = z.field.p
    ginv = {a: linalg.inverse(g[a], p) for a in z.quiver.vertices}
    blocks = {}
    for s, t in z.quiver.arrows:
        blocks[s, t] = linalg.matmul(linalg.matmul(g[t], z.blocks[s, t], p), ginv[s], p)
    return Cocycle(z.quiver, z.source_dims, z.target_dims, blocks, z.field)
