"""Derivation-type linear maps on a zigzag algebra.

Three flavors of the same game, each a linear condition on a map Theta
written against the canonical basis:

    derivation   Theta(xy) = Theta(x) y + x Theta(y)
    jordan       the same for the symmetrized product x o y = xy + yx
    anti         Theta(xy) = Theta(y) x + y Theta(x)

Two independent routes produce derivation spaces and are kept independent on
purpose: :func:`solve` builds the full Leibniz constraint system over the
dim^2 matrix coefficients of Theta and takes its kernel, while
:func:`structured_space` materializes the closed parametric form (one ``t``
and one ``d`` parameter per arrow, tied by antisymmetry and per-vertex
consistency).  Agreement between the two is checked by callers, never
assumed here.

Maps are stored column-wise: ``columns[q]`` is the coefficient vector of
Theta(b_q).  Flattened, coefficient (p, q) lands at index p*dim + q.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .exactlin import Matrix, normalize_row, nullspace_basis, span_canonical_basis, span_dim
from .zigzag import ARROW, IDEM, ZigzagAlgebra, arrow, center, cycle, idem

FLAVORS = ("derivation", "jordan", "anti")


class CharacteristicTwoError(ValueError):
    """The jordan flavor is meaningless in characteristic 2 (x o x = 2x^2 = 0)."""


class InternalInvariantError(RuntimeError):
    """A cross-check that must hold for any correct run failed; this is a bug."""


@dataclass(frozen=True)
class LinearMap:
    """A linear endomorphism of the algebra, column q = image of basis q."""

    dim: int
    columns: tuple

    @classmethod
    def from_flat(cls, field, dim: int, vec) -> "LinearMap":
        cols = tuple(tuple(vec[p * dim + q] for p in range(dim)) for q in range(dim))
        return cls(dim, cols)

    def flatten(self, field) -> tuple:
        zero = field.zero
        out = [zero] * (self.dim * self.dim)
        for q, col in enumerate(self.columns):
            for p, v in enumerate(col):
                if v != zero:
                    out[p * self.dim + q] = v
        return tuple(out)

    def column(self, q: int) -> tuple:
        return self.columns[q]

    def is_zero(self, field) -> bool:
        zero = field.zero
        return all(v == zero for col in self.columns for v in col)


class MapSpace:
    """A subspace of maps of one flavor, stored with its canonical basis.

    The basis is the RREF canonical basis of the span of whatever generators
    were supplied, reshaped back into maps, so equal spaces have equal bases.
    """

    def __init__(self, flavor: str, dim: int, basis: tuple, dimension: int) -> None:
        self.flavor = flavor
        self.dim = dim
        self.basis = basis
        self.dimension = dimension

    @classmethod
    def from_generators(cls, flavor: str, algebra: ZigzagAlgebra, flat_vectors) -> "MapSpace":
        if flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {flavor!r}")
        field = algebra.field
        canon = span_canonical_basis(list(flat_vectors), field)
        maps = tuple(LinearMap.from_flat(field, algebra.dim, v) for v in canon)
        return cls(flavor, algebra.dim, maps, len(maps))

    def flat_basis(self, field) -> list:
        return [m.flatten(field) for m in self.basis]

    def __repr__(self) -> str:
        return f"MapSpace({self.flavor!r}, dim={self.dimension})"


def _producer_tables(a: ZigzagAlgebra):
    """left[r] lists (u, p) with b_u b_r = b_p; right[q] lists (u, p) with b_q b_u = b_p."""
    dim = a.dim
    table = a.table
    left = [[] for _ in range(dim)]
    right = [[] for _ in range(dim)]
    for u in range(dim):
        row = table[u]
        for v in range(dim):
            p = row[v]
            if p >= 0:
                left[v].append((u, p))
                right[u].append((v, p))
    return left, right


def leibniz_system(a: ZigzagAlgebra, flavor: str) -> Matrix:
    """Constraint matrix over the dim^2 coefficients x[p, q] of Theta.

    One equation per basis pair (q, r) and output coordinate p; zero rows are
    dropped and duplicate rows (after canonical rescaling) removed.  The
    kernel of the result is exactly the flavor's solution space.
    """
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}")
    field = a.field
    if flavor == "jordan" and field.characteristic == 2:
        raise CharacteristicTwoError(
            "jordan flavor degenerates in characteristic 2: the symmetrized product is not usable"
        )
    one = field.one
    dim = a.dim
    table = a.table
    left, right = _producer_tables(a)

    def bump(eqs: dict, p: int, col: int, delta) -> None:
        row = eqs.setdefault(p, {})
        row[col] = field.add(row.get(col, field.zero), delta)

    rows = []
    neg_one = field.neg(one)
    for q in range(dim):
        for r in range(dim):
            eqs: dict = {}
            if flavor == "derivation":
                s = table[q][r]
                if s >= 0:
                    for p in range(dim):
                        bump(eqs, p, p * dim + s, one)
                for u, p in left[r]:
                    bump(eqs, p, u * dim + q, neg_one)
                for u, p in right[q]:
                    bump(eqs, p, u * dim + r, neg_one)
            elif flavor == "anti":
                s = table[q][r]
                if s >= 0:
                    for p in range(dim):
                        bump(eqs, p, p * dim + s, one)
                for u, p in left[q]:
                    bump(eqs, p, u * dim + r, neg_one)
                for u, p in right[r]:
                    bump(eqs, p, u * dim + q, neg_one)
            else:  # jordan
                for s in (table[q][r], table[r][q]):
                    if s >= 0:
                        for p in range(dim):
                            bump(eqs, p, p * dim + s, one)
                for u, p in left[r]:
                    bump(eqs, p, u * dim + q, neg_one)
                for u, p in right[r]:
                    bump(eqs, p, u * dim + q, neg_one)
                for u, p in left[q]:
                    bump(eqs, p, u * dim + r, neg_one)
                for u, p in right[q]:
                    bump(eqs, p, u * dim + r, neg_one)
            for row in eqs.values():
                clean = {j: v for j, v in row.items() if v != field.zero}
                if clean:
                    rows.append(clean)

    seen = {}
    for row in rows:
        nr = normalize_row(field, row)
        seen.setdefault(tuple(sorted(nr.items())), nr)
    ordered = [seen[k] for k in sorted(seen)]
    return Matrix.from_sparse(field, len(ordered), dim * dim, ordered)


def verify_map(a: ZigzagAlgebra, lin: LinearMap, flavor: str) -> bool:
    """Check the flavor identity for one map on every ordered basis pair.

    This is the post-hoc audit of solver output; by bilinearity, holding on
    basis pairs is holding everywhere.  Works on the sparse support of the
    map, so auditing a whole basis stays cheap even at dim^2 pairs.
    """
    field = a.field
    zero = field.zero
    add, sub = field.add, field.sub
    table = a.table
    dim = a.dim
    cols_nz = [
        tuple((p, v) for p, v in enumerate(col) if v != zero) for col in lin.columns
    ]

    def plus_col(acc, s):
        for p, v in cols_nz[s]:
            acc[p] = add(acc.get(p, zero), v)

    def minus_rmul(acc, src, r):
        # Theta(b_src) * b_r
        for u, x in cols_nz[src]:
            p = table[u][r]
            if p >= 0:
                acc[p] = sub(acc.get(p, zero), x)

    def minus_lmul(acc, q, src):
        # b_q * Theta(b_src)
        row = table[q]
        for u, x in cols_nz[src]:
            p = row[u]
            if p >= 0:
                acc[p] = sub(acc.get(p, zero), x)

    for q in range(dim):
        empty_q = not cols_nz[q]
        rowq = table[q]
        for r in range(dim):
            acc: dict = {}
            if flavor == "derivation":
                s = rowq[r]
                if s < 0 and empty_q and not cols_nz[r]:
                    continue
                if s >= 0:
                    plus_col(acc, s)
                minus_rmul(acc, q, r)
                minus_lmul(acc, q, r)
            elif flavor == "anti":
                s = rowq[r]
                if s < 0 and empty_q and not cols_nz[r]:
                    continue
                if s >= 0:
                    plus_col(acc, s)
                minus_rmul(acc, r, q)
                minus_lmul(acc, r, q)
            else:  # jordan
                s1, s2 = rowq[r], table[r][q]
                if s1 < 0 and s2 < 0 and empty_q and not cols_nz[r]:
                    continue
                if s1 >= 0:
                    plus_col(acc, s1)
                if s2 >= 0:
                    plus_col(acc, s2)
                minus_rmul(acc, q, r)
                minus_lmul(acc, r, q)
                minus_lmul(acc, q, r)
                minus_rmul(acc, r, q)
            if any(v != zero for v in acc.values()):
                return False
    return True


def solve(a: ZigzagAlgebra, flavor: str) -> MapSpace:
    """Kernel of the flavor's constraint system, as a canonical MapSpace.

    Every basis map of the result is re-verified against the defining
    identity on all basis pairs; a failure there is a solver bug, reported as
    InternalInvariantError rather than a wrong answer.
    """
    system = leibniz_system(a, flavor)
    kernel = nullspace_basis(system)
    space = MapSpace.from_generators(flavor, a, kernel)
    for lin in space.basis:
        if not verify_map(a, lin, flavor):
            raise InternalInvariantError(f"solved {flavor} basis map fails the defining identity")
    return space


@dataclass
class DerivationParams:
    """Closed-form derivation data: per arrow (u, v), an ``e``-part coefficient
    t[(u, v)] (the coefficient of a(u->v) in the image of e(v); its negative
    appears in the image of e(u)) and a diagonal coefficient d[(u, v)] (the
    coefficient of a(u->v) in its own image).

    Images of cycles are forced: c(i) maps to (d[(i, j)] + d[(j, i)]) c(i)
    for any neighbor j, so those sums must agree across the neighbors of i.
    """

    t: dict
    d: dict


def _consistency_sums(a: ZigzagAlgebra, d: dict) -> dict:
    sums = {}
    for i in range(1, a.graph.n + 1):
        vals = []
        for j in a.graph.neighbors(i):
            vals.append(a.field.add(d[(i, j)], d[(j, i)]))
        if not vals:
            continue
        if any(v != vals[0] for v in vals[1:]):
            raise ValueError(
                f"inconsistent parameters: cycle coefficients at vertex {i} disagree across neighbors"
            )
        sums[i] = vals[0]
    return sums


def materialize(a: ZigzagAlgebra, params: DerivationParams) -> LinearMap:
    """Build the map the parameters describe.  Raises ValueError if the
    parameters mention a non-arrow or violate per-vertex consistency."""
    field = a.field
    zero = field.zero
    arrows = [(ar.source, ar.target) for ar in a.quiver.arrows]
    arrow_set = set(arrows)
    for key in list(params.t) + list(params.d):
        if key not in arrow_set:
            raise ValueError(f"parameter for non-arrow {key}")
    t = {ar: params.t.get(ar, zero) for ar in arrows}
    d = {ar: params.d.get(ar, zero) for ar in arrows}
    sums = _consistency_sums(a, d)

    dim = a.dim
    cols = [[zero] * dim for _ in range(dim)]
    e_at = {i: a.index(idem(i)) for i in range(1, a.graph.n + 1)}
    c_at = {i: a.index(cycle(i)) for i in range(1, a.graph.n + 1)}
    a_at = {(u, v): a.index(arrow(u, v)) for (u, v) in arrows}

    for (u, v), tv in t.items():
        if tv != zero:
            row = a_at[(u, v)]
            cols[e_at[v]][row] = field.add(cols[e_at[v]][row], tv)
            cols[e_at[u]][row] = field.sub(cols[e_at[u]][row], tv)
    for (u, v), dv in d.items():
        if dv != zero:
            cols[a_at[(u, v)]][a_at[(u, v)]] = dv
    for (u, v) in arrows:
        rv = t[(v, u)]
        if rv != zero:
            col = cols[a_at[(u, v)]]
            col[c_at[u]] = field.sub(col[c_at[u]], rv)
            col[c_at[v]] = field.add(col[c_at[v]], rv)
    for i, sm in sums.items():
        if sm != zero:
            cols[c_at[i]][c_at[i]] = sm

    return LinearMap(dim, tuple(tuple(c) for c in cols))


def structured_parameter_basis(a: ZigzagAlgebra) -> list:
    """Canonical basis of the parameter space (t_a, d_a) modulo consistency.

    Free coordinates: one t per arrow, one d per arrow, in quiver arrow
    order; the per-vertex cycle-consistency conditions are solved exactly.
    """
    field = a.field
    arrows = [(ar.source, ar.target) for ar in a.quiver.arrows]
    m = len(arrows)
    pos = {ar: k for k, ar in enumerate(arrows)}
    one = field.one
    rows = []
    for i in range(1, a.graph.n + 1):
        nbrs = a.graph.neighbors(i)
        if len(nbrs) < 2:
            continue
        j0 = nbrs[0]
        for j in nbrs[1:]:
            row = {
                m + pos[(i, j0)]: one,
                m + pos[(j0, i)]: one,
                m + pos[(i, j)]: field.neg(one),
                m + pos[(j, i)]: field.neg(one),
            }
            rows.append(row)
    system = Matrix.from_sparse(field, len(rows), 2 * m, rows)
    out = []
    for vec in nullspace_basis(system):
        t = {ar: vec[pos[ar]] for ar in arrows if vec[pos[ar]] != field.zero}
        d = {ar: vec[m + pos[ar]] for ar in arrows if vec[m + pos[ar]] != field.zero}
        out.append(DerivationParams(t=t, d=d))
    return out


def structured_space(a: ZigzagAlgebra) -> MapSpace:
    """Span of the materialized parameter basis, as a canonical MapSpace."""
    field = a.field
    flats = [materialize(a, p).flatten(field) for p in structured_parameter_basis(a)]
    return MapSpace.from_generators("derivation", a, flats)


def ad_map(a: ZigzagAlgebra, k: int) -> LinearMap:
    """The commutator map [b_k, -]."""
    field = a.field
    zero = field.zero
    dim = a.dim
    table = a.table
    cols = []
    for q in range(dim):
        col = [zero] * dim
        p = table[k][q]
        if p >= 0:
            col[p] = field.add(col[p], field.one)
        p = table[q][k]
        if p >= 0:
            col[p] = field.sub(col[p], field.one)
        cols.append(tuple(col))
    return LinearMap(dim, tuple(cols))


def inner_space(a: ZigzagAlgebra) -> MapSpace:
    """Span of all commutator maps [b_k, -], as a canonical MapSpace."""
    field = a.field
    flats = [ad_map(a, k).flatten(field) for k in range(a.dim)]
    return MapSpace.from_generators("derivation", a, flats)


class HochschildDims(NamedTuple):
    hh0: int
    hh1: int


def hh_dims(a: ZigzagAlgebra) -> HochschildDims:
    """Dimensions of the center and of (derivations mod inner derivations).

    Cross-checks that must hold in any field, and whose failure means a bug,
    not a property of the input: the inner dimension computed as an ad-span
    rank must equal dim A - dim center, and the inner span must sit inside
    the solved derivation span.
    """
    field = a.field
    cen = center(a)
    der = solve(a, "derivation")
    inner = inner_space(a)
    if inner.dimension != a.dim - cen.dimension:
        raise InternalInvariantError(
            f"inner dimension {inner.dimension} != dim algebra {a.dim} - dim center {cen.dimension}"
        )
    der_flats = der.flat_basis(field)
    inner_flats = inner.flat_basis(field)
    if span_dim(der_flats + inner_flats, field) != der.dimension:
        raise InternalInvariantError("inner derivations do not sit inside the solved derivation space")
    return HochschildDims(cen.dimension, der.dimension - inner.dimension)


def check_structure(a: ZigzagAlgebra, lin: LinearMap) -> bool:
    """Zero-pattern audit for derivation maps.

    Image of e(i) only on arrows incident to i; image of a(i->j) only on
    a(i->j), c(i), c(j); image of c(i) only on c(i).
    """
    field = a.field
    zero = field.zero
    for q, b in enumerate(a.basis):
        col = lin.columns[q]
        support = {p for p, v in enumerate(col) if v != zero}
        if b.kind == IDEM:
            allowed = {
                p
                for p, bb in enumerate(a.basis)
                if bb.kind == ARROW and b.at in (bb.at, bb.to)
            }
        elif b.kind == ARROW:
            allowed = {q, a.index(cycle(b.at)), a.index(cycle(b.to))}
        else:
            allowed = {q}
        if not support <= allowed:
            return False
    return True
