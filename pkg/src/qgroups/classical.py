"""Classical structures for sl2: the standard r-matrix, the classical
Yang-Baxter equation, the cobracket with its cocycle and co-Jacobi
properties, Casimir invariance and the spectral-parameter r-matrix.

Basis order is fixed as (e, f, h) with [e, f] = h, [h, e] = 2e,
[h, f] = -2f.  The invariant form is the trace form of the defining
two-dimensional representation: (e, f) = 1, (h, h) = 2, which keeps every
coefficient rational.
"""
from __future__ import annotations

from .scalars import FieldContext, FractionField, RationalField

BASIS = ("e", "f", "h")
E, F, H = 0, 1, 2

# bracket of basis elements: (i, j) -> {k: integer coefficient}
_BRACKET = {
    (E, F): {H: 1}, (F, E): {H: -1},
    (H, E): {E: 2}, (E, H): {E: -2},
    (H, F): {F: -2}, (F, H): {F: 2},
}


class LieTensor:
    """Element of sl2 tensored with itself k times (k = 1, 2, 3), stored
    as a sparse map from basis multi-indices to scalars."""

    def __init__(self, ctx: FieldContext, k: int, coeffs: dict | None = None):
        self.ctx = ctx
        self.k = k
        self.coeffs = {}
        if coeffs:
            for key, v in coeffs.items():
                if not ctx.is_zero(v):
                    self.coeffs[key] = v

    def _set(self, key, v):
        if self.ctx.is_zero(v):
            self.coeffs.pop(key, None)
        else:
            self.coeffs[key] = v

    def add_term(self, key, v):
        self._set(key, self.ctx.add(self.coeffs.get(key, self.ctx.zero), v))

    def add(self, other: "LieTensor") -> "LieTensor":
        out = LieTensor(self.ctx, self.k, dict(self.coeffs))
        for key, v in other.coeffs.items():
            out.add_term(key, v)
        return out

    def scale(self, c) -> "LieTensor":
        return LieTensor(self.ctx, self.k,
                         {key: self.ctx.mul(c, v)
                          for key, v in self.coeffs.items()})

    def flip21(self) -> "LieTensor":
        """Swap the first two tensor legs."""
        return LieTensor(self.ctx, self.k,
                         {(key[1], key[0]) + key[2:]: v
                          for key, v in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def eq(self, other: "LieTensor") -> bool:
        return self.k == other.k and self.add(other.scale(
            self.ctx.from_int(-1))).is_zero()

    def to_json(self):
        return [[list(key), self.ctx.to_str(v)]
                for key, v in sorted(self.coeffs.items())]

    @classmethod
    def from_json(cls, ctx, k, data):
        return cls(ctx, k, {tuple(key): ctx.parse(v) for key, v in data})

    def __repr__(self):
        parts = []
        for key, v in sorted(self.coeffs.items()):
            name = "(x)".join(BASIS[i] for i in key)
            parts.append(f"{self.ctx.to_str(v)}*{name}")
        return " + ".join(parts) or "0"


def _bracket_into(out: LieTensor, pos_i: int, pos_j: int, key, coeff):
    """Add the bracket of legs pos_i < pos_j of a product term: the
    bracket lands in leg pos_i, the remaining indices stay in place."""
    ctx = out.ctx
    for k, c in _BRACKET.get((key[pos_i], key[pos_j]), {}).items():
        new = list(key)
        new[pos_i] = k
        del new[pos_j]
        out.add_term(tuple(new), ctx.mul(coeff, ctx.from_int(c)))


def cybe_defect(r: LieTensor) -> LieTensor:
    """[r12, r13] + [r12, r23] + [r13, r23] in the tensor cube; zero
    exactly when r solves the classical Yang-Baxter equation."""
    ctx = r.ctx
    out = LieTensor(ctx, 3)
    for (a1, b1), c1 in r.coeffs.items():
        for (a2, b2), c2 in r.coeffs.items():
            c = ctx.mul(c1, c2)
            # [r12, r13]: brackets in leg 1, spectators b1 (leg 2), b2 (leg 3)
            _bracket_into(out, 0, 1, (a1, a2, b1, b2), c)
            # [r12, r23]: bracket in leg 2
            _bracket_into(out, 1, 2, (a1, b1, a2, b2), c)
            # [r13, r23]: bracket in leg 3
            _bracket_into(out, 2, 3, (a1, a2, b1, b2), c)
    return out


def adjoint_bracket(x_index: int, t: LieTensor) -> LieTensor:
    """[x (x) 1 (x) ... + ... + 1 (x) ... (x) x, t] for a basis element x."""
    ctx = t.ctx
    out = LieTensor(ctx, t.k)
    for key, v in t.coeffs.items():
        for leg in range(t.k):
            for k, c in _BRACKET.get((x_index, key[leg]), {}).items():
                new = list(key)
                new[leg] = k
                out.add_term(tuple(new), ctx.mul(v, ctx.from_int(c)))
    return out


def cobracket(x_index: int, r: LieTensor) -> LieTensor:
    """The coboundary of r on a basis element: delta(x) = [x(x)1 + 1(x)x, r]."""
    return adjoint_bracket(x_index, r)


def casimir_invariance(omega: LieTensor) -> bool:
    """Does [x (x) 1 + 1 (x) x, omega] vanish for every basis x?"""
    return all(adjoint_bracket(i, omega).is_zero() for i in range(3))


def standard_r(ctx: FieldContext) -> LieTensor:
    """r = h(x)h/4 + e(x)f, the standard quasitriangular structure."""
    return LieTensor(ctx, 2, {(H, H): ctx.from_fraction(1, 4),
                              (E, F): ctx.one})


def casimir_tensor(ctx: FieldContext) -> LieTensor:
    """Omega = r + r^21 = h(x)h/2 + e(x)f + f(x)e, the invariant tensor
    of the trace form."""
    r = standard_r(ctx)
    return r.add(r.flip21())


def cobracket_checks(r: LieTensor) -> dict:
    """Certify that the coboundary of r is a Lie bialgebra structure:
    (a) skew-symmetry on basis elements, (b) the derivation/cocycle
    identity delta([x,y]) = x.delta(y) - y.delta(x), (c) co-Jacobi for
    the dual bracket read off from delta."""
    ctx = r.ctx
    deltas = [cobracket(i, r) for i in range(3)]
    skew = all(d.add(d.flip21()).is_zero() for d in deltas)
    cocycle = True
    for i in range(3):
        for j in range(3):
            lhs = LieTensor(ctx, 2)
            for k, c in _BRACKET.get((i, j), {}).items():
                lhs = lhs.add(deltas[k].scale(ctx.from_int(c)))
            rhs = adjoint_bracket(i, deltas[j]).add(
                adjoint_bracket(j, deltas[i]).scale(ctx.from_int(-1)))
            if not lhs.eq(rhs):
                cocycle = False
    # dual bracket: [eps_i, eps_j]* = sum_k delta(x_k)_(i,j) eps_k
    def dual(i, j):
        return {k: deltas[k].coeffs.get((i, j), ctx.zero) for k in range(3)}

    def dual_of_vec(v, w):
        out = {k: ctx.zero for k in range(3)}
        for i in range(3):
            for j in range(3):
                c = ctx.mul(v[i], w[j])
                if ctx.is_zero(c):
                    continue
                for k, x in dual(i, j).items():
                    out[k] = ctx.add(out[k], ctx.mul(c, x))
        return out

    cojacobi = True
    basis_vecs = [{k: (ctx.one if k == i else ctx.zero) for k in range(3)}
                  for i in range(3)]
    for a in range(3):
        for b in range(3):
            for c in range(3):
                acc = {k: ctx.zero for k in range(3)}
                for (x, y, z) in ((a, b, c), (b, c, a), (c, a, b)):
                    inner = dual_of_vec(basis_vecs[y], basis_vecs[z])
                    term = dual_of_vec(basis_vecs[x], inner)
                    for k in range(3):
                        acc[k] = ctx.add(acc[k], term[k])
                if any(not ctx.is_zero(v) for v in acc.values()):
                    cojacobi = False
    report = {"skew": skew, "cocycle": cocycle, "cojacobi": cojacobi}
    report["passed"] = all(report.values())
    return report


def wedge_coefficient(t: LieTensor, i: int, j: int):
    """If t = c * (x_i (x) x_j - x_j (x) x_i), return c; otherwise None."""
    ctx = t.ctx
    c = t.coeffs.get((i, j), ctx.zero)
    probe = LieTensor(ctx, 2, {(i, j): c, (j, i): ctx.neg(c)})
    return c if t.eq(probe) else None


def yang_r(ctx, z_raw) -> LieTensor:
    """Yang's spectral r-matrix r(z) = Omega/z."""
    return casimir_tensor(ctx).scale(ctx.inv(z_raw))


def yang_cybe_check(r_of_z=None) -> bool:
    """Spectral classical Yang-Baxter equation over Q(z1, z2, z3):
    [r12(z1-z2), r13(z1-z3)] + [r12(z1-z2), r23(z2-z3)]
    + [r13(z1-z3), r23(z2-z3)] = 0."""
    ctx = FractionField("z1", "z2", "z3")
    if r_of_z is None:
        r_of_z = lambda z: yang_r(ctx, z)
    z1, z2, z3 = (ctx.gen_raw(n) for n in ("z1", "z2", "z3"))
    r12 = r_of_z(ctx.sub(z1, z2))
    r13 = r_of_z(ctx.sub(z1, z3))
    r23 = r_of_z(ctx.sub(z2, z3))
    out = LieTensor(ctx, 3)
    for (a1, b1), c1 in r12.coeffs.items():
        for (a2, b2), c2 in r13.coeffs.items():
            _bracket_into(out, 0, 1, (a1, a2, b1, b2), ctx.mul(c1, c2))
    for (a1, b1), c1 in r12.coeffs.items():
        for (a2, b2), c2 in r23.coeffs.items():
            _bracket_into(out, 1, 2, (a1, b1, a2, b2), ctx.mul(c1, c2))
    for (a1, b1), c1 in r13.coeffs.items():
        for (a2, b2), c2 in r23.coeffs.items():
            _bracket_into(out, 2, 3, (a1, a2, b1, b2), ctx.mul(c1, c2))
    return out.is_zero()
