"""Finite-dimensional representations of affine quantum sl2: evaluation
modules, relation and Serre verification, duals and their evaluation-point
shifts, string combinatorics, Drinfeld polynomials, the trigonometric
spectral R-matrix and invariant vectors.

All constructions live over a rational-function field that contains a
variable named q; evaluation points are either powers of q or symbols
times powers of q.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import linalg
from .scalars import FieldContext, FieldError, FractionField

GENERATORS = ("e0", "f0", "K0", "K0^-1", "e1", "f1", "K1", "K1^-1")


class AffineError(ValueError):
    pass


def affine_context(*extra) -> FractionField:
    """Field Q(q, extra...) used by the constructions here."""
    return FractionField("q", *extra)


@dataclass(frozen=True)
class EvalPoint:
    """The point base * q^qexp; base is a formal symbol, "1" for the unit."""
    base: str
    qexp: int

    def shifted(self, k: int) -> "EvalPoint":
        return EvalPoint(self.base, self.qexp + k)

    def __str__(self):
        return f"{self.base}*q^{self.qexp}"


@dataclass(frozen=True)
class StringDesc:
    """The geometric progression start, q^2 start, ..., of the given length."""
    start: EvalPoint
    length: int

    def points(self):
        return [self.start.shifted(2 * i) for i in range(self.length)]

    def exponents(self):
        return {self.start.qexp + 2 * i for i in range(self.length)}

    def __str__(self):
        last = self.start.shifted(2 * (self.length - 1))
        return f"[{self.start} .. {last}]"


class AffineRep:
    """Module over the affine algebra: one matrix per generator label."""

    def __init__(self, ctx: FieldContext, matrices: dict, name: str = ""):
        self.ctx = ctx
        self.matrices = matrices
        self.dim = len(matrices["e1"])
        self.name = name
        self.presentation = "affine_sl2"

    def mat(self, label: str):
        return self.matrices[label]


def _qpow(ctx, k: int):
    return ctx.pow(ctx.gen_raw("q"), k)


def _qint(ctx, k: int):
    # [k] = (q^k - q^-k)/(q - q^-1)
    num = ctx.sub(_qpow(ctx, k), _qpow(ctx, -k))
    den = ctx.sub(_qpow(ctx, 1), _qpow(ctx, -1))
    return ctx.div(num, den)


def _irrep_matrices(ctx, m: int):
    """e, f, K, K^-1 of the (m+1)-dimensional simple sl2 module over ctx."""
    n = m + 1
    e = linalg.zeros(ctx, n, n)
    f = linalg.zeros(ctx, n, n)
    k = linalg.zeros(ctx, n, n)
    kinv = linalg.zeros(ctx, n, n)
    for j in range(n):
        k[j][j] = _qpow(ctx, m - 2 * j)
        kinv[j][j] = _qpow(ctx, 2 * j - m)
    for j in range(1, n):
        f[j][j - 1] = ctx.one
        e[j - 1][j] = ctx.mul(_qint(ctx, j), _qint(ctx, m - j + 1))
    return e, f, k, kinv


def eval_rep(m: int, z_raw, ctx: FieldContext) -> AffineRep:
    """Evaluation module on the (m+1)-dimensional sl2 module at the point
    z: the index-1 generators act as e, f, K and the index-0 generators by
    z times the f-action, z^-1 times the e-action and K^-1."""
    e, f, k, kinv = _irrep_matrices(ctx, m)
    zinv = ctx.inv(z_raw)
    matrices = {
        "e1": e, "f1": f, "K1": k, "K1^-1": kinv,
        "e0": linalg.mat_scale(ctx, z_raw, f),
        "f0": linalg.mat_scale(ctx, zinv, e),
        "K0": kinv, "K0^-1": k,
    }
    rep = AffineRep(ctx, matrices, name=f"V{m}(z)")
    report = verify_affine_relations(rep)
    if not report["passed"]:
        raise AffineError(f"evaluation module violates relations: {report}")
    return rep


def verify_affine_relations(X: AffineRep) -> dict:
    """Check all five displayed relation groups of the presentation,
    including the cubic Serre relations."""
    ctx = X.ctx
    mul = lambda a, b: linalg.mat_mul(ctx, a, b)
    sub = lambda a, b: linalg.mat_sub(ctx, a, b)
    zero = lambda a: linalg.is_zero_matrix(ctx, a)
    scale = linalg.mat_scale
    ident = linalg.identity(ctx, X.dim)
    q2, qm2 = _qpow(ctx, 2), _qpow(ctx, -2)
    denom = ctx.inv(ctx.sub(_qpow(ctx, 1), _qpow(ctx, -1)))
    report = {}
    ok = True
    for i in ("0", "1"):
        e, f = X.mat(f"e{i}"), X.mat(f"f{i}")
        k, kinv = X.mat(f"K{i}"), X.mat(f"K{i}^-1")
        ok_i = (zero(sub(mul(k, kinv), ident))
                and zero(sub(mul(k, e), scale(ctx, q2, mul(e, k))))
                and zero(sub(mul(k, f), scale(ctx, qm2, mul(f, k))))
                and zero(sub(sub(mul(e, f), mul(f, e)),
                             scale(ctx, denom, sub(k, kinv)))))
        report[f"sl2_pair_{i}"] = ok_i
        ok = ok and ok_i
    k0, k1 = X.mat("K0"), X.mat("K1")
    report["cartan_commute"] = zero(sub(mul(k0, k1), mul(k1, k0)))
    e0, e1 = X.mat("e0"), X.mat("e1")
    f0, f1 = X.mat("f0"), X.mat("f1")
    report["mixed_ef"] = (zero(sub(mul(e0, f1), mul(f1, e0)))
                          and zero(sub(mul(e1, f0), mul(f0, e1))))
    cross = True
    for (k, kinv, e, f) in ((k0, X.mat("K0^-1"), e1, f1),
                            (k1, X.mat("K1^-1"), e0, f0)):
        cross = cross and zero(sub(mul(mul(k, e), kinv), scale(ctx, qm2, e)))
        cross = cross and zero(sub(mul(mul(k, f), kinv), scale(ctx, q2, f)))
    report["cross_cartan"] = cross

    def serre(a, b):
        # a^3 b - [3] a^2 b a + [3] a b a^2 - b a^3
        three = ctx.add(ctx.add(q2, ctx.one), qm2)
        a2, a3 = mul(a, a), mul(mul(a, a), a)
        t = sub(mul(a3, b), scale(ctx, three, mul(mul(a2, b), a)))
        t = linalg.mat_add(ctx, t, scale(ctx, three, mul(mul(a, b), a2)))
        return zero(sub(t, mul(b, a3)))

    report["serre_e"] = serre(e0, e1) and serre(e1, e0)
    report["serre_f"] = serre(f0, f1) and serre(f1, f0)
    report["passed"] = (ok and report["cartan_commute"] and report["mixed_ef"]
                        and report["cross_cartan"] and report["serre_e"]
                        and report["serre_f"])
    return report


def tensor_affine(X: AffineRep, Y: AffineRep) -> AffineRep:
    """Tensor module: each index acts through its own sl2 coproduct,
    e -> e(x)K + 1(x)e, f -> f(x)1 + K^-1(x)f, K -> K(x)K."""
    ctx = X.ctx
    kron = lambda a, b: linalg.kron(ctx, a, b)
    idx = linalg.identity(ctx, X.dim)
    idy = linalg.identity(ctx, Y.dim)
    matrices = {}
    for i in ("0", "1"):
        matrices[f"e{i}"] = linalg.mat_add(
            ctx, kron(X.mat(f"e{i}"), Y.mat(f"K{i}")),
            kron(idx, Y.mat(f"e{i}")))
        matrices[f"f{i}"] = linalg.mat_add(
            ctx, kron(X.mat(f"f{i}"), idy),
            kron(X.mat(f"K{i}^-1"), Y.mat(f"f{i}")))
        matrices[f"K{i}"] = kron(X.mat(f"K{i}"), Y.mat(f"K{i}"))
        matrices[f"K{i}^-1"] = kron(X.mat(f"K{i}^-1"), Y.mat(f"K{i}^-1"))
    return AffineRep(ctx, matrices, name=f"{X.name}(x){Y.name}")


def rep_dual(X: AffineRep) -> AffineRep:
    """Left dual: each generator acts by the transposed antipode image,
    S(e) = -e K^-1, S(f) = -K f, S(K) = K^-1 within each index."""
    ctx = X.ctx
    t = linalg.transpose
    neg = lambda a: linalg.mat_neg(ctx, a)
    mul = lambda a, b: linalg.mat_mul(ctx, a, b)
    matrices = {}
    for i in ("0", "1"):
        matrices[f"e{i}"] = t(neg(mul(X.mat(f"e{i}"), X.mat(f"K{i}^-1"))))
        matrices[f"f{i}"] = t(neg(mul(X.mat(f"K{i}"), X.mat(f"f{i}"))))
        matrices[f"K{i}"] = t(X.mat(f"K{i}^-1"))
        matrices[f"K{i}^-1"] = t(X.mat(f"K{i}"))
    return AffineRep(ctx, matrices, name=f"{X.name}*")


def intertwiner(X: AffineRep, Y: AffineRep):
    """Basis of maps phi with phi pi_X(g) = pi_Y(g) phi for all generators."""
    ctx = X.ctx
    n = X.dim
    if Y.dim != n:
        return []
    rows = []
    for label in GENERATORS:
        a, b = X.mat(label), Y.mat(label)
        for i in range(n):
            for j in range(n):
                row = [ctx.zero] * (n * n)
                for k in range(n):
                    row[i * n + k] = ctx.add(row[i * n + k], a[k][j])
                    row[k * n + j] = ctx.sub(row[k * n + j], b[i][k])
                rows.append(row)
    basis = linalg.nullspace(ctx, rows)
    return [[[v[i * n + j] for j in range(n)] for i in range(n)]
            for v in basis]


def eval_dual_shift(m: int, z: EvalPoint) -> EvalPoint:
    """Evaluation point of the dual of the (m+1)-dimensional evaluation
    module at z.  Computed, not assumed: for m = 1 via the trace
    invariant tr(e0 e1), in general by an explicit intertwiner search
    over candidate shifts."""
    ctx = affine_context("z")
    zr = ctx.gen_raw("z")
    dual = rep_dual(eval_rep(m, zr, ctx))
    if m == 1:
        # on V(w) the invariant tr(e0 e1) equals w
        w = ctx.zero
        prod = linalg.mat_mul(ctx, dual.mat("e0"), dual.mat("e1"))
        for i in range(dual.dim):
            w = ctx.add(w, prod[i][i])
        for k in range(-8, 9):
            if ctx.eq(w, ctx.mul(_qpow(ctx, k), zr)):
                return z.shifted(k)
        raise AffineError("dual evaluation point is not q^k z")
    for k in range(-4 * m - 4, 4 * m + 5):
        cand = eval_rep(m, ctx.mul(_qpow(ctx, k), zr), ctx)
        maps = intertwiner(dual, cand)
        if len(maps) == 1 and not linalg.is_zero_matrix(ctx, maps[0]):
            linalg.inverse(ctx, maps[0])  # must be invertible
            return z.shifted(k)
    raise AffineError("no evaluation point matches the dual")


# -- strings -------------------------------------------------------------

def string_of(a: int, z: EvalPoint) -> StringDesc:
    """The length-a string {q^(-a+1) z, ..., q^(a-1) z}."""
    if a < 1:
        raise AffineError("string length must be positive")
    return StringDesc(z.shifted(-a + 1), a)


def general_position(S: StringDesc, T: StringDesc) -> bool:
    """False exactly when the set union of S and T is a single string
    that contains each of them properly."""
    if S.start.base != T.start.base:
        return True
    if (S.start.qexp - T.start.qexp) % 2:
        return True
    se, te = S.exponents(), T.exponents()
    union = sorted(se | te)
    is_string = all(b - a == 2 for a, b in zip(union, union[1:]))
    u = set(union)
    return not (is_string and u != se and u != te)


def decompose_into_strings(points) -> list:
    """Partition a finite multiset of points into strings pairwise in
    general position: per q^2-orbit, repeatedly peel the longest
    consecutive run starting at the smallest uncovered exponent."""
    groups: dict = {}
    for p in points:
        key = (p.base, p.qexp % 2)
        groups.setdefault(key, {})
        groups[key][p.qexp] = groups[key].get(p.qexp, 0) + 1
    out = []
    for (base, _), mult in sorted(groups.items()):
        while mult:
            start = min(mult)
            exp = start
            while exp in mult:
                mult[exp] -= 1
                if not mult[exp]:
                    del mult[exp]
                exp += 2
            out.append(StringDesc(EvalPoint(base, start), (exp - start) // 2))
    return out


def irreducibility_test(factors) -> bool:
    """Is the tensor product of evaluation modules with the given
    (dimension-1, point) parameters irreducible?  True exactly when the
    attached strings are pairwise in general position."""
    strings = [string_of(a, z) for a, z in factors]
    return all(general_position(s, t) for s, t in combinations(strings, 2))


def drinfeld_polynomial(factors, ctx: FieldContext, z_raw):
    """Polynomial with constant term 1 whose roots are the union of the
    strings of the factors; requires an irreducible product."""
    if not irreducibility_test(factors):
        raise AffineError("factors are not pairwise in general position")
    out = ctx.one
    for a, p in factors:
        for point in string_of(a, p).points():
            val = _qpow(ctx, point.qexp)
            if point.base != "1":
                val = ctx.mul(val, ctx.gen_raw(point.base))
            out = ctx.mul(out, ctx.sub(ctx.one, ctx.div(z_raw, val)))
    return out


# -- the trigonometric R-matrix ------------------------------------------

def trig_r_matrix(ctx: FieldContext, ratio_raw):
    """The normalized 4x4 spectral R-matrix in the basis
    v+v+, v+v-, v-v+, v-v-; rejects the poles at ratio q^2 and the zero
    of the inverse at q^-2."""
    q = ctx.gen_raw("q")
    q2 = ctx.mul(q, q)
    for bad in (q2, ctx.inv(q2)):
        if ctx.eq(ratio_raw, bad):
            raise AffineError("ratio hits a pole of the R-matrix")
    z = ratio_raw
    den = ctx.inv(ctx.sub(z, q2))
    mid = ctx.mul(ctx.mul(q, ctx.sub(z, ctx.one)), den)
    off1 = ctx.mul(ctx.sub(ctx.one, q2), den)
    off2 = ctx.mul(z, off1)
    zero, one = ctx.zero, ctx.one
    return [[one, zero, zero, zero],
            [zero, mid, off1, zero],
            [zero, off2, mid, zero],
            [zero, zero, zero, one]]


def _flip(ctx, dx, dy):
    p = linalg.zeros(ctx, dx * dy, dx * dy)
    for i in range(dx):
        for j in range(dy):
            p[j * dx + i][i * dy + j] = ctx.one
    return p


def _embed_13(ctx, m, dx, dy, dz):
    n = dx * dy * dz
    out = linalg.zeros(ctx, n, n)
    for x in range(dx):
        for xp in range(dx):
            for z in range(dz):
                for zp in range(dz):
                    v = m[x * dz + z][xp * dz + zp]
                    if ctx.is_zero(v):
                        continue
                    for y in range(dy):
                        out[(x * dy + y) * dz + z][(xp * dy + y) * dz + zp] = v
    return out


def spectral_checks() -> dict:
    """Unitarity, the spectral Yang-Baxter identity on the tensor cube
    and the intertwiner property of P R on a pair of evaluation modules."""
    report = {}
    # (a) unitarity: R(z) P R(1/z) P = 1 over Q(q, z)
    ctx = affine_context("z")
    zr = ctx.gen_raw("z")
    p = _flip(ctx, 2, 2)
    r = trig_r_matrix(ctx, zr)
    r21 = linalg.mat_mul(ctx, linalg.mat_mul(
        ctx, p, trig_r_matrix(ctx, ctx.inv(zr))), p)
    report["unitarity"] = linalg.mat_eq(
        ctx, linalg.mat_mul(ctx, r, r21), linalg.identity(ctx, 4))
    # (b) QYBE with multiplicative parameter over Q(q, z1, z2, z3)
    c3 = affine_context("z1", "z2", "z3")
    z1, z2, z3 = (c3.gen_raw(n) for n in ("z1", "z2", "z3"))
    ident2 = linalg.identity(c3, 2)
    r12 = linalg.kron(c3, trig_r_matrix(c3, c3.div(z1, z2)), ident2)
    r23 = linalg.kron(c3, ident2, trig_r_matrix(c3, c3.div(z2, z3)))
    r13 = _embed_13(c3, trig_r_matrix(c3, c3.div(z1, z3)), 2, 2, 2)
    lhs = linalg.mat_mul(c3, linalg.mat_mul(c3, r12, r13), r23)
    rhs = linalg.mat_mul(c3, linalg.mat_mul(c3, r23, r13), r12)
    report["qybe"] = linalg.mat_eq(c3, lhs, rhs)
    # (c) P R(z/w) intertwines V(z) (x) V(w) with V(w) (x) V(z)
    cw = affine_context("z", "w")
    zz, ww = cw.gen_raw("z"), cw.gen_raw("w")
    report["intertwiner"] = _r_intertwines(cw, zz, ww)
    report["passed"] = all(report.values())
    return report


def _r_intertwines(ctx, z_raw, w_raw, r=None) -> bool:
    xz = eval_rep(1, z_raw, ctx)
    xw = eval_rep(1, w_raw, ctx)
    txy = tensor_affine(xz, xw)
    tyx = tensor_affine(xw, xz)
    if r is None:
        r = trig_r_matrix(ctx, ctx.div(z_raw, w_raw))
    c = linalg.mat_mul(ctx, _flip(ctx, 2, 2), r)
    for label in GENERATORS:
        lhs = linalg.mat_mul(ctx, c, txy.mat(label))
        rhs = linalg.mat_mul(ctx, tyx.mat(label), c)
        if not linalg.mat_eq(ctx, lhs, rhs):
            return False
    return True


# -- invariant vectors ---------------------------------------------------

def invariant_vectors(X: AffineRep):
    """Vectors killed by all four e, f generators with both K eigenvalues 1."""
    ctx = X.ctx
    ident = linalg.identity(ctx, X.dim)
    rows = []
    for label in ("e0", "e1", "f0", "f1"):
        rows.extend(X.mat(label))
    rows.extend(linalg.mat_sub(ctx, X.mat("K0"), ident))
    rows.extend(linalg.mat_sub(ctx, X.mat("K1"), ident))
    return linalg.nullspace(ctx, rows)


def invariant_covectors(X: AffineRep):
    """Covectors killed by the action: the invariant vectors of the
    transposed matrices."""
    ctx = X.ctx
    ident = linalg.identity(ctx, X.dim)
    rows = []
    for label in ("e0", "e1", "f0", "f1"):
        rows.extend(linalg.transpose(X.mat(label)))
    rows.extend(linalg.transpose(linalg.mat_sub(ctx, X.mat("K0"), ident)))
    rows.extend(linalg.transpose(linalg.mat_sub(ctx, X.mat("K1"), ident)))
    return linalg.nullspace(ctx, rows)
