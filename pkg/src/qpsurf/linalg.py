"""Exact linear algebra over the rationals.

Dense routines for the small per-vertex-pair blocks used in reduction, and a
sparse incremental eliminator for the large path-indexed systems used by the
dimension and rigidity computations.
"""

from __future__ import annotations

from fractions import Fraction


def rank(matrix):
    """Rank of a dense matrix given as a list of rows."""
    rows = [[Fraction(x) for x in row] for row in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    if not a or not b:
        return []
    n, k, m = len(a), len(b), len(b[0])
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        for t in range(k):
            if a[i][t] == 0:
                continue
            f = a[i][t]
            row = b[t]
            oi = out[i]
            for j in range(m):
                if row[j] != 0:
                    oi[j] += f * row[j]
    return out


def diagonalize_pairing(m):
    """Invertible P, Q with P m Q having an identity block of size rank(m).

    Gauss-Jordan with both row and column operations, deterministic pivoting
    on the smallest available index pair.  Returns (P, Q, r).
    """
    nr = len(m)
    nc = len(m[0]) if m else 0
    a = [[Fraction(x) for x in row] for row in m]
    p = identity(nr)
    q = identity(nc)
    r = 0
    while True:
        pivot = None
        for i in range(r, nr):
            for j in range(r, nc):
                if a[i][j] != 0:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        pi, pj = pivot
        if pi != r:
            a[r], a[pi] = a[pi], a[r]
            p[r], p[pi] = p[pi], p[r]
        if pj != r:
            for row in a:
                row[r], row[pj] = row[pj], row[r]
            for row in q:
                row[r], row[pj] = row[pj], row[r]
        inv = 1 / a[r][r]
        a[r] = [x * inv for x in a[r]]
        p[r] = [x * inv for x in p[r]]
        for i in range(nr):
            if i != r and a[i][r] != 0:
                f = a[i][r]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                p[i] = [x - f * y for x, y in zip(p[i], p[r])]
        for j in range(nc):
            if j != r and a[r][j] != 0:
                f = a[r][j]
                for row in a:
                    row[j] -= f * row[r]
                for row in q:
                    row[j] -= f * row[r]
        r += 1
    return p, q, r


class SparseEliminator:
    """Row space over the rationals with incremental reduction.

    Rows are dicts column-key -> Fraction.  Basis rows are kept fully reduced
    with pivot coefficient 1; column keys must be orderable.
    """

    def __init__(self):
        self.basis = {}

    def _reduce(self, row):
        row = dict(row)
        while row:
            col = min(row)
            if row[col] == 0:
                del row[col]
                continue
            piv = self.basis.get(col)
            if piv is None:
                return col, row
            f = row[col]
            for c, v in piv.items():
                row[c] = row.get(c, Fraction(0)) - f * v
                if row[c] == 0:
                    del row[c]
        return None, {}

    def add_row(self, row):
        """Insert a row; returns True if it enlarged the span."""
        col, red = self._reduce(row)
        if col is None:
            return False
        inv = 1 / red[col]
        red = {c: v * inv for c, v in red.items()}
        for bcol, brow in self.basis.items():
            f = brow.get(col)
            if f:
                for c, v in red.items():
                    brow[c] = brow.get(c, Fraction(0)) - f * v
                    if brow[c] == 0:
                        del brow[c]
        self.basis[col] = red
        return True

    def contains(self, row):
        col, _ = self._reduce(row)
        return col is None

    @property
    def rank(self):
        return len(self.basis)
