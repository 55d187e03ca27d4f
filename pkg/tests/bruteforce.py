"""Independent desk oracles used by the tests.

Nothing here imports the package under test: the multiplication table of the
single-edge algebra is written out by hand, and elimination is a dense
textbook Gauss-Jordan over Fraction.  These are deliberately dumb so they can
arbitrate when the real solver and the closed-form generator disagree.
"""

from fractions import Fraction
from itertools import product

# single-edge algebra, basis order e1, e2, a(1->2), a(2->1), c1, c2
EDGE_DIM = 6
EDGE_TABLE = [[-1] * 6 for _ in range(6)]
EDGE_TABLE[0][0] = 0  # e1 e1 = e1
EDGE_TABLE[1][1] = 1  # e2 e2 = e2
EDGE_TABLE[0][2] = 2  # e1 a12 = a12
EDGE_TABLE[2][1] = 2  # a12 e2 = a12
EDGE_TABLE[1][3] = 3  # e2 a21 = a21
EDGE_TABLE[3][0] = 3  # a21 e1 = a21
EDGE_TABLE[0][4] = 4  # e1 c1 = c1
EDGE_TABLE[4][0] = 4  # c1 e1 = c1
EDGE_TABLE[1][5] = 5  # e2 c2 = c2
EDGE_TABLE[5][1] = 5  # c2 e2 = c2
EDGE_TABLE[2][3] = 4  # a12 a21 = c1
EDGE_TABLE[3][2] = 5  # a21 a12 = c2


def dense_rref(rows):
    """Plain dense Gauss-Jordan over Fraction: (reduced rows, pivot cols)."""
    mat = [[Fraction(x) for x in r] for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        src = next((i for i in range(rank, len(mat)) if mat[i][col] != 0), None)
        if src is None:
            continue
        mat[rank], mat[src] = mat[src], mat[rank]
        pv = mat[rank][col]
        mat[rank] = [v / pv for v in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        pivots.append(col)
        rank += 1
    return mat, pivots


def dense_nullspace(rows, ncols):
    """Kernel basis, free variable set to 1, ordered by free column."""
    mat, pivots = dense_rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -mat[i][f]
        basis.append(tuple(v))
    return basis


def edge_leibniz_rows():
    """All Leibniz constraints for the single-edge algebra, one dense row per
    basis pair and output coordinate; unknown (p, q) sits at index p*6 + q."""
    n = EDGE_DIM * EDGE_DIM
    rows = []
    for q, r in product(range(EDGE_DIM), repeat=2):
        s = EDGE_TABLE[q][r]
        for p in range(EDGE_DIM):
            row = [Fraction(0)] * n
            if s >= 0:
                row[p * EDGE_DIM + s] += 1
            for u in range(EDGE_DIM):
                if EDGE_TABLE[u][r] == p:
                    row[u * EDGE_DIM + q] -= 1
                if EDGE_TABLE[q][u] == p:
                    row[u * EDGE_DIM + r] -= 1
            if any(row):
                rows.append(row)
    return rows


def edge_derivation_family():
    """The brute-force derivation space of the single-edge algebra."""
    return dense_nullspace(edge_leibniz_rows(), EDGE_DIM * EDGE_DIM)
