"""Zigzag algebras of simple connected graphs.

The zigzag algebra of a graph is the quotient of the path algebra of the
doubled quiver in which paths of length three or more vanish, length-two
paths that are not cycles vanish, and the two-step cycles based at a vertex
are identified into a single element.  A canonical basis is

    trivial paths e(i), one per vertex
    arrows a(i->j), one per orientation of each edge
    cycles c(i), one per vertex

so the dimension is 2n + (number of arrows).  All structure constants are 0
or 1, which is what makes the exhaustive checks downstream cheap.

Elements are plain coefficient tuples against ``algebra.basis``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .exactlin import RATIONALS, Matrix, nullspace_basis
from .quiver import Graph, double_quiver, validate

IDEM = "e"
ARROW = "a"
CYCLE = "c"


@dataclass(frozen=True)
class BasisElement:
    """One canonical basis vector: kind 'e' / 'a' / 'c' plus its vertices."""

    kind: str
    at: int
    to: int = 0  # arrow target; 0 for trivial paths and cycles

    def __str__(self) -> str:
        if self.kind == ARROW:
            return f"a({self.at}->{self.to})"
        return f"{self.kind}{self.at}"


def idem(i: int) -> BasisElement:
    return BasisElement(IDEM, i)


def arrow(i: int, j: int) -> BasisElement:
    return BasisElement(ARROW, i, j)


def cycle(i: int) -> BasisElement:
    return BasisElement(CYCLE, i)


class ZigzagAlgebra:
    """Basis-indexed multiplication table of the zigzag algebra of a graph.

    ``table[p][q]`` is the basis index of the product of basis elements p and
    q, or -1 when the product vanishes (structure constants are all 0 or 1).
    Treat instances as immutable.
    """

    def __init__(self, graph: Graph, quiver, field, basis: tuple, table: tuple) -> None:
        self.graph = graph
        self.quiver = quiver
        self.field = field
        self.basis = tuple(basis)
        self.table = tuple(tuple(row) for row in table)
        self.dim = len(self.basis)
        self._pos = {b: k for k, b in enumerate(self.basis)}

    def index(self, b: BasisElement) -> int:
        return self._pos[b]

    def basis_vector(self, k: int) -> tuple:
        zero, one = self.field.zero, self.field.one
        return tuple(one if i == k else zero for i in range(self.dim))

    def identity(self) -> tuple:
        """Sum of the trivial paths."""
        zero, one = self.field.zero, self.field.one
        n = self.graph.n
        return tuple(one if i < n else zero for i in range(self.dim))

    def __repr__(self) -> str:
        return f"ZigzagAlgebra(n={self.graph.n}, dim={self.dim}, field={self.field.name})"


def build_algebra(g: Graph, field=RATIONALS) -> ZigzagAlgebra:
    """Construct the zigzag algebra of a connected simple graph on >= 2 vertices.

    Basis order: trivial paths by vertex, arrows by (source, target), cycles
    by vertex.  Raises ValueError for a single-vertex or disconnected input.
    """
    if g.n == 1:
        raise ValueError("single-vertex graph has no zigzag algebra here: need at least one edge")
    if g.n < 1:
        raise ValueError("empty graph: need at least 2 vertices")
    connected, _ = validate(g)
    if not connected:
        raise ValueError(f"graph on {g.n} vertices is not connected")

    q = double_quiver(g)
    n = g.n
    basis = [idem(i) for i in range(1, n + 1)]
    basis.extend(arrow(a.source, a.target) for a in q.arrows)
    basis.extend(cycle(i) for i in range(1, n + 1))
    dim = len(basis)

    e_at = {i: i - 1 for i in range(1, n + 1)}
    c_at = {i: n + len(q.arrows) + i - 1 for i in range(1, n + 1)}
    a_at = {(a.source, a.target): n + k for k, a in enumerate(q.arrows)}

    table = [[-1] * dim for _ in range(dim)]

    def put(p: int, qq: int, r: int) -> None:
        if table[p][qq] != -1:
            raise AssertionError(f"table entry ({p}, {qq}) set twice")
        table[p][qq] = r

    for i in range(1, n + 1):
        put(e_at[i], e_at[i], e_at[i])
        put(e_at[i], c_at[i], c_at[i])
        put(c_at[i], e_at[i], c_at[i])
    for (u, v), k in sorted(a_at.items()):
        put(e_at[u], k, k)
        put(k, e_at[v], k)
        put(k, a_at[(v, u)], c_at[u])

    return ZigzagAlgebra(g, q, field, tuple(basis), table)


def multiply(a: ZigzagAlgebra, x: tuple, y: tuple) -> tuple:
    """Bilinear extension of the basis product table."""
    if len(x) != a.dim or len(y) != a.dim:
        raise ValueError(f"length mismatch: elements must have {a.dim} coordinates")
    field = a.field
    zero = field.zero
    add, mul = field.add, field.mul
    out = [zero] * a.dim
    table = a.table
    xs = [(p, v) for p, v in enumerate(x) if v != zero]
    ys = [(q, v) for q, v in enumerate(y) if v != zero]
    for p, xv in xs:
        row = table[p]
        for q, yv in ys:
            r = row[q]
            if r >= 0:
                out[r] = add(out[r], mul(xv, yv))
    return tuple(out)


def check_associativity(a: ZigzagAlgebra) -> bool:
    """Exhaustively check (bp bq) br == bp (bq br) over all basis triples."""
    table = a.table
    dim = a.dim
    for p in range(dim):
        rowp = table[p]
        for q in range(dim):
            pq = rowp[q]
            rowq = table[q]
            row_pq = table[pq] if pq >= 0 else None
            for r in range(dim):
                left = row_pq[r] if row_pq is not None else -1
                qr = rowq[r]
                right = rowp[qr] if qr >= 0 else -1
                if left != right:
                    return False
    return True


def with_patched_table(a: ZigzagAlgebra, p: int, q: int, r: int) -> ZigzagAlgebra:
    """Copy of the algebra with one table entry overridden (for negative tests)."""
    table = [list(row) for row in a.table]
    table[p][q] = r
    return ZigzagAlgebra(a.graph, a.quiver, a.field, a.basis, table)


class CenterResult(NamedTuple):
    basis: list
    dimension: int


def center(a: ZigzagAlgebra) -> CenterResult:
    """Canonical basis of the center, via the kernel of all commutator maps.

    Unknowns are the coordinates of x; for every basis element b_k and output
    coordinate p this imposes (x b_k)_p - (b_k x)_p = 0.
    """
    field = a.field
    one = field.one
    dim = a.dim
    table = a.table
    eqs = {}
    for k in range(dim):
        for u in range(dim):
            r = table[u][k]
            if r >= 0:
                row = eqs.setdefault((k, r), {})
                row[u] = field.add(row.get(u, field.zero), one)
            r = table[k][u]
            if r >= 0:
                row = eqs.setdefault((k, r), {})
                row[u] = field.sub(row.get(u, field.zero), one)
    sparse = []
    for row in eqs.values():
        row = {j: v for j, v in row.items() if v != field.zero}
        if row:
            sparse.append(row)
    m = Matrix.from_sparse(field, len(sparse), dim, sparse)
    vecs = nullspace_basis(m)
    return CenterResult(vecs, len(vecs))
