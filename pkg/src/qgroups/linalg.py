"""Exact dense and sparse linear algebra over a FieldContext.

Matrices are plain lists of lists of raw field values; every function takes
the context explicitly.  There are no numerical thresholds anywhere: a pivot
is any entry the field says is nonzero.
"""
from __future__ import annotations

from .scalars import FieldContext, FieldError


def zeros(ctx, rows, cols):
    return [[ctx.zero] * cols for _ in range(rows)]


def identity(ctx, n):
    out = zeros(ctx, n, n)
    for i in range(n):
        out[i][i] = ctx.one
    return out


def mat_add(ctx, a, b):
    return [[ctx.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(ctx, a, b):
    return [[ctx.sub(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_neg(ctx, a):
    return [[ctx.neg(x) for x in row] for row in a]


def mat_scale(ctx, c, a):
    return [[ctx.mul(c, x) for x in row] for row in a]


def mat_mul(ctx, a, b):
    n, m, p = len(a), len(b), len(b[0])
    bt = list(zip(*b))
    out = []
    add, mul, is_zero = ctx.add, ctx.mul, ctx.is_zero
    for row in a:
        out_row = []
        for col in bt:
            acc = ctx.zero
            for x, y in zip(row, col):
                if not (is_zero(x) or is_zero(y)):
                    acc = add(acc, mul(x, y))
            out_row.append(acc)
        out.append(out_row)
    return out


def mat_vec(ctx, a, v):
    return [c[0] for c in mat_mul(ctx, a, [[x] for x in v])]


def transpose(a):
    return [list(row) for row in zip(*a)]


def kron(ctx, a, b):
    """Kronecker product, row-major: index (i,j) of A tensor B is i*dimB + j."""
    nb = len(b)
    mb = len(b[0])
    out = zeros(ctx, len(a) * nb, len(a[0]) * mb)
    for i, row in enumerate(a):
        for j, x in enumerate(row):
            if ctx.is_zero(x):
                continue
            for k in range(nb):
                for l in range(mb):
                    out[i * nb + k][j * mb + l] = ctx.mul(x, b[k][l])
    return out


def mat_eq(ctx, a, b):
    return all(ctx.eq(x, y) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def is_zero_matrix(ctx, a):
    return all(ctx.is_zero(x) for row in a for x in row)


def commutator(ctx, a, b):
    return mat_sub(ctx, mat_mul(ctx, a, b), mat_mul(ctx, b, a))


def rref(ctx, a):
    """Reduced row echelon form; returns (matrix, pivot column list)."""
    m = [list(row) for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if not ctx.is_zero(m[i][c])), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = ctx.inv(m[r][c])
        m[r] = [ctx.mul(inv, x) for x in m[r]]
        for i in range(rows):
            if i != r and not ctx.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(ctx, a):
    return len(rref(ctx, a)[1])


def nullspace(ctx, a):
    """Basis of the right nullspace, as a list of coefficient vectors."""
    if not a:
        return []
    m, pivots = rref(ctx, a)
    cols = len(a[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ctx.zero] * cols
        v[fc] = ctx.one
        for r, pc in enumerate(pivots):
            v[pc] = ctx.neg(m[r][fc])
        basis.append(v)
    return basis


def solve(ctx, a, b):
    """One solution x of A x = b, or None if inconsistent."""
    cols = len(a[0])
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    m, pivots = rref(ctx, aug)
    if cols in pivots:
        return None
    x = [ctx.zero] * cols
    for r, pc in enumerate(pivots):
        x[pc] = m[r][cols]
    return x


def inverse(ctx, a):
    n = len(a)
    aug = [list(row) + list(idr) for row, idr in zip(a, identity(ctx, n))]
    m, pivots = rref(ctx, aug)
    if pivots != list(range(n)):
        raise FieldError("matrix is singular")
    return [row[n:] for row in m[:n]]


def determinant(ctx, a):
    """Fraction-free-ish Gaussian determinant (fine at the sizes we use)."""
    m = [list(row) for row in a]
    n = len(m)
    det = ctx.one
    for c in range(n):
        pivot = next((i for i in range(c, n) if not ctx.is_zero(m[i][c])), None)
        if pivot is None:
            return ctx.zero
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = ctx.neg(det)
        det = ctx.mul(det, m[c][c])
        inv = ctx.inv(m[c][c])
        for i in range(c + 1, n):
            if not ctx.is_zero(m[i][c]):
                f = ctx.mul(m[i][c], inv)
                m[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(m[i], m[c])]
    return det


class MatrixRing:
    """Square matrices over a FieldContext as a coefficient ring for
    TruncatedSeries (operator-valued series)."""

    def __init__(self, ctx: FieldContext, dim: int):
        self.ctx = ctx
        self.dim = dim
        self.zero = tuple(tuple(ctx.zero for _ in range(dim)) for _ in range(dim))
        self.one = tuple(tuple(ctx.one if i == j else ctx.zero for j in range(dim))
                         for i in range(dim))

    def coerce_ring(self, x):
        if isinstance(x, (list, tuple)):
            return tuple(tuple(row) for row in x)
        return self.scale(self.ctx.coerce(x), self.one)

    def scale(self, c, a):
        return tuple(tuple(self.ctx.mul(c, x) for x in row) for row in a)

    def add(self, a, b):
        return tuple(tuple(self.ctx.add(x, y) for x, y in zip(ra, rb))
                     for ra, rb in zip(a, b))

    def neg(self, a):
        return tuple(tuple(self.ctx.neg(x) for x in row) for row in a)

    def mul(self, a, b):
        return tuple(tuple(r) for r in mat_mul(self.ctx, [list(r) for r in a],
                                               [list(r) for r in b]))

    def inv(self, a):
        return tuple(tuple(r) for r in inverse(self.ctx, [list(r) for r in a]))

    def is_zero(self, a):
        return all(self.ctx.is_zero(x) for row in a for x in row)

    def eq(self, a, b):
        return all(self.ctx.eq(x, y) for ra, rb in zip(a, b) for x, y in zip(ra, rb))

    def from_int(self, n):
        return self.scale(self.ctx.from_int(n), self.one)

    def to_str(self, a):
        return "[" + "; ".join(", ".join(self.ctx.to_str(x) for x in row)
                               for row in a) + "]"


class SparseEchelon:
    """Incremental echelon basis of sparse vectors (dict index -> raw value).

    Rows are kept pivot-normalized; add() reduces a vector against the basis
    and absorbs any nonzero residual.  Used for ideal saturation and quotient
    construction, where vectors have very few nonzero entries.
    """

    def __init__(self, ctx: FieldContext):
        self.ctx = ctx
        self.rows: dict[int, dict] = {}  # pivot index -> row

    def reduce(self, vec: dict) -> dict:
        ctx = self.ctx
        vec = {k: v for k, v in vec.items() if not ctx.is_zero(v)}
        again = True
        while again:
            again = False
            for k in list(vec):
                row = self.rows.get(k)
                if row is not None:
                    f = vec[k]
                    for c, rv in row.items():
                        nv = ctx.sub(vec.get(c, ctx.zero), ctx.mul(f, rv))
                        if ctx.is_zero(nv):
                            vec.pop(c, None)
                        else:
                            vec[c] = nv
                    again = True
                    break
        return vec

    def add(self, vec: dict) -> bool:
        """Reduce and insert; returns True when the vector enlarged the span."""
        ctx = self.ctx
        res = self.reduce(vec)
        if not res:
            return False
        pivot = min(res)
        inv = ctx.inv(res[pivot])
        row = {c: ctx.mul(inv, v) for c, v in res.items()}
        # back-substitute the new pivot into existing rows
        for p, r in self.rows.items():
            if pivot in r:
                f = r[pivot]
                for c, rv in row.items():
                    nv = ctx.sub(r.get(c, ctx.zero), ctx.mul(f, rv))
                    if ctx.is_zero(nv):
                        r.pop(c, None)
                    else:
                        r[c] = nv
        self.rows[pivot] = row
        return True

    @property
    def dim(self):
        return len(self.rows)

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def pivots(self):
        return set(self.rows)
