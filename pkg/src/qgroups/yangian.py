"""Rational-limit quantum group for sl2/gl2: the Yang R-matrix, the
RTT-generator series and its defining exchange relation, the rank-2
quantum determinant, the triangular (Gauss) factorization with its loop
generators, eigenvalue reconstruction for the diagonal series, and the
character ring built on those eigenvalues.

Conventions, fixed once and verified by the test suite:

- The generator series acts on an evaluation module W through
  t_ij(u) = delta_ij + E_ij/(u - a), where E[i][j] is a gl2-module
  structure on W (the (i,j) generator matrix) and a is the evaluation
  point.  This assignment is an algebra map: the exchange relation
  R12(u-v) T1(u) T2(v) = T2(v) T1(u) R12(u-v) holds exactly.
  sl2-modules are lifted to gl2 with central charge -1; the diagonal
  series below is normalized by that choice.
- The triangular factorization puts the upper unitriangular factor on
  the left: t0_22 = t22, t0_11 = t11 - t12*t22^{-1}*t21 (the 2x2 Schur
  complement), H(u) = t0_11(u)*t0_22(u)^{-1}, and the loop generator
  series are x_plus(u) = t12*t22^{-1} (raising) and
  x_minus(u) = t22^{-1}*t21 (lowering).  With these choices all five
  loop-relation families hold and the eigenvalues of H(u) on weight
  vectors match the half-shift dictionary used by the character map.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .scalars import (FieldContext, FractionField, RationalField,
                      TruncatedSeries)
from .linalg import MatrixRing


class YangianError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Yang R-matrix and the additive-parameter QYBE


def yang_r(ctx: FieldContext, u_raw):
    """R(u) = 1 - P/u on C^2 (x) C^2, P the flip."""
    ui = ctx.inv(u_raw)
    z, one = ctx.zero, ctx.one
    return [[ctx.sub(one, ui), z, z, z],
            [z, one, ctx.neg(ui), z],
            [z, ctx.neg(ui), one, z],
            [z, z, z, ctx.sub(one, ui)]]


def _embed(ctx, r, legs):
    """Embed a 4x4 two-leg operator into legs (i, j) of (C^2)^(x)3."""
    out = linalg.zeros(ctx, 8, 8)
    other = next(k for k in range(3) if k not in legs)
    for a in range(2):
        for b in range(2):
            for c in range(2):
                for d in range(2):
                    for e in range(2):
                        row = [0, 0, 0]
                        col = [0, 0, 0]
                        row[legs[0]], row[legs[1]], row[other] = a, b, e
                        col[legs[0]], col[legs[1]], col[other] = c, d, e
                        ri = row[0] * 4 + row[1] * 2 + row[2]
                        ci = col[0] * 4 + col[1] * 2 + col[2]
                        out[ri][ci] = r[a * 2 + b][c * 2 + d]
    return out


def yang_qybe_check() -> bool:
    """R12(u1-u2) R13(u1-u3) R23(u2-u3) = R23 R13 R12 over Q(u1,u2,u3)."""
    ctx = FractionField("u1", "u2", "u3")
    u1, u2, u3 = (ctx.gen_raw(n) for n in ("u1", "u2", "u3"))
    r12 = _embed(ctx, yang_r(ctx, ctx.sub(u1, u2)), (0, 1))
    r13 = _embed(ctx, yang_r(ctx, ctx.sub(u1, u3)), (0, 2))
    r23 = _embed(ctx, yang_r(ctx, ctx.sub(u2, u3)), (1, 2))
    lhs = linalg.mat_mul(ctx, r12, linalg.mat_mul(ctx, r13, r23))
    rhs = linalg.mat_mul(ctx, r23, linalg.mat_mul(ctx, r13, r12))
    return linalg.mat_eq(ctx, lhs, rhs)


# ---------------------------------------------------------------------------
# gl2 modules and the generator series


def sl2_module(ctx: FieldContext, m: int):
    """Matrices (e, f, h) of the (m+1)-dimensional irreducible sl2-module."""
    d = m + 1
    e = linalg.zeros(ctx, d, d)
    f = linalg.zeros(ctx, d, d)
    h = linalg.zeros(ctx, d, d)
    for k in range(d):
        h[k][k] = ctx.from_int(m - 2 * k)
        if k > 0:
            e[k - 1][k] = ctx.from_int(k * (m - k + 1))
        if k < m:
            f[k + 1][k] = ctx.one
    return e, f, h


def gl2_from_sl2(ctx: FieldContext, m: int, charge: int = -1):
    """Lift the (m+1)-dimensional sl2-module to gl2: E11 = (c+h)/2,
    E22 = (c-h)/2, E12 = e, E21 = f.  The default central charge -1 is
    the normalization under which the diagonal series eigenvalues fit
    the half-shift dictionary."""
    e, f, h = sl2_module(ctx, m)
    d = m + 1
    half = ctx.from_fraction(1, 2)
    cid = linalg.mat_scale(ctx, ctx.from_int(charge), linalg.identity(ctx, d))
    e11 = linalg.mat_scale(ctx, half, linalg.mat_add(ctx, cid, h))
    e22 = linalg.mat_scale(ctx, half, linalg.mat_sub(ctx, cid, h))
    return [[e11, e], [f, e22]]


def verify_gl2(ctx, E) -> bool:
    """[E_ij, E_kl] = delta_jk E_il - delta_li E_kj on all index tuples."""
    d = len(E[0][0])
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    lhs = linalg.commutator(ctx, E[i][j], E[k][l])
                    rhs = linalg.zeros(ctx, d, d)
                    if j == k:
                        rhs = linalg.mat_add(ctx, rhs, E[i][l])
                    if l == i:
                        rhs = linalg.mat_sub(ctx, rhs, E[k][j])
                    if not linalg.mat_eq(ctx, lhs, rhs):
                        return False
    return True


class OperatorSeries:
    """The 2x2 generator series of an evaluation module: entries are
    truncated series in u^{-1} whose coefficients are dim-W matrices.
    t_ij(u) = delta_ij + E_ij/(u - point)."""

    def __init__(self, ctx, E, order: int, point_raw=None):
        if not verify_gl2(ctx, E):
            raise YangianError("matrices do not satisfy the gl2 relations")
        self.ctx = ctx
        self.gen = E
        self.order = order
        self.point = point_raw if point_raw is not None else ctx.zero
        self.dim = len(E[0][0])
        self.ring = MatrixRing(ctx, self.dim)
        ring = self.ring
        # 1/(u - point) = sum point^k u^{-k-1}
        geom = []
        pw = ctx.one
        for _ in range(order):
            geom.append(pw)
            pw = ctx.mul(pw, self.point)
        self.t = [[None, None], [None, None]]
        for i in range(2):
            for j in range(2):
                mat = ring.coerce_ring(E[i][j])
                coeffs = [ring.one if i == j else ring.zero]
                coeffs += [ring.scale(g, mat) for g in geom]
                self.t[i][j] = TruncatedSeries(ring, "u", 0, coeffs)

    def entry(self, i, j):
        return self.t[i][j]


def evaluation_T(ctx, E, order: int, point_raw=None) -> OperatorSeries:
    """Generator series T(u) = 1 + E/(u - point) on a gl2-module."""
    return OperatorSeries(ctx, E, order, point_raw)


def eval_module_T(ctx, m: int, point_raw=None, order: int | None = None):
    """Generator series of the evaluation module built on the
    (m+1)-dimensional sl2-module."""
    if order is None:
        order = 2 * m + 4
    return evaluation_T(ctx, gl2_from_sl2(ctx, m), order, point_raw)


def tensor_T(A: OperatorSeries, B: OperatorSeries) -> OperatorSeries:
    """Coproduct action on the tensor module:
    t_ij(u) = sum_k t_ik(u) (x) t_kj(u)."""
    ctx = A.ctx
    out = OperatorSeries.__new__(OperatorSeries)
    out.ctx = ctx
    out.gen = None
    out.order = min(A.order, B.order)
    out.point = None
    out.dim = A.dim * B.dim
    out.ring = MatrixRing(ctx, out.dim)
    ring = out.ring

    def kron_series(s1, s2):
        n = min(s1.order, s2.order)
        coeffs = [ring.zero] * (n + 1)
        for i, ca in enumerate(s1.coeffs):
            if s1.ring.is_zero(ca):
                continue
            for j, cb in enumerate(s2.coeffs):
                if i + j > n:
                    break
                k = linalg.kron(ctx, [list(r) for r in ca], [list(r) for r in cb])
                coeffs[i + j] = ring.add(coeffs[i + j], ring.coerce_ring(k))
        return TruncatedSeries(ring, "u", s1.shift + s2.shift, coeffs)

    out.t = [[None, None], [None, None]]
    for i in range(2):
        for j in range(2):
            acc = None
            for k in range(2):
                term = kron_series(A.t[i][k], B.t[k][j])
                acc = term if acc is None else acc + term
            out.t[i][j] = acc
    return out


# ---------------------------------------------------------------------------
# exchange relation (FRT form) as an exact rational-function identity


def frt_check(T: OperatorSeries) -> bool:
    """R12(u-v) T1(u) T2(v) = T2(v) T1(u) R12(u-v) as an identity of
    operator-valued rational functions; requires generators u, v in the
    scalar field of T."""
    ctx = T.ctx
    try:
        u = ctx.gen_raw("u")
        v = ctx.gen_raw("v")
    except Exception as exc:
        raise YangianError("scalar field must contain generators u and v") from exc
    E = T.gen
    if E is None:
        raise YangianError("exchange check needs an evaluation module")
    d = T.dim
    p = T.point

    def tmat(i, j, w):
        # t_ij(w) = delta_ij + E_ij/(w - point), exactly
        den = ctx.inv(ctx.sub(w, p))
        out = linalg.mat_scale(ctx, den, E[i][j])
        if i == j:
            out = linalg.mat_add(ctx, out, linalg.identity(ctx, d))
        return out

    def big_T(leg, w):
        out = linalg.zeros(ctx, 4 * d, 4 * d)
        for i in range(2):
            for j in range(2):
                aux = linalg.zeros(ctx, 4, 4)
                for s in range(2):
                    if leg == 0:
                        aux[i * 2 + s][j * 2 + s] = ctx.one
                    else:
                        aux[s * 2 + i][s * 2 + j] = ctx.one
                blk = linalg.kron(ctx, aux, tmat(i, j, w))
                out = linalg.mat_add(ctx, out, blk)
        return out

    r12 = linalg.kron(ctx, yang_r(ctx, ctx.sub(u, v)), linalg.identity(ctx, d))
    t1 = big_T(0, u)
    t2 = big_T(1, v)
    lhs = linalg.mat_mul(ctx, r12, linalg.mat_mul(ctx, t1, t2))
    rhs = linalg.mat_mul(ctx, t2, linalg.mat_mul(ctx, t1, r12))
    return linalg.mat_eq(ctx, lhs, rhs)


# ---------------------------------------------------------------------------
# rank-2 quantum determinant


def qdet2(T: OperatorSeries, order: int | None = None) -> TruncatedSeries:
    """t11(u) t22(u+1) - t12(u) t21(u+1), expanded in powers of u^{-1}."""
    t = T.t
    out = (t[0][0] * t[1][1].shift_argument(1)
           - t[0][1] * t[1][0].shift_argument(1))
    if order is not None and out.order < order:
        raise YangianError("series order too small for the requested depth")
    return out


def qdet_central(T: OperatorSeries, order: int) -> bool:
    """Do all coefficients of qdet2 commute with every generator matrix
    and with the coefficients of the diagonal series H(u)?"""
    ring = T.ring
    q = qdet2(T)
    coeffs = [q.coefficient(-n) for n in range(order + 1)]
    gens = [T.gen[i][j] for i in range(2) for j in range(2)]
    _, H, _ = gauss_decompose(T)
    gens += [H.coefficient(-n - 1) for n in range(min(order, H.order - 1))]
    for c in coeffs:
        for g in gens:
            g = ring.coerce_ring(g)
            if not ring.is_zero(ring.add(ring.mul(c, g),
                                         ring.neg(ring.mul(g, c)))):
                return False
    return True


# ---------------------------------------------------------------------------
# triangular factorization and the loop relations


def gauss_decompose(T: OperatorSeries):
    """Factor T(u) with the upper unitriangular factor on the left;
    returns (x_minus(u), H(u), x_plus(u)) where
    H = (t11 - t12 t22^{-1} t21) * t22^{-1}, x_plus = t12 t22^{-1},
    x_minus = t22^{-1} t21."""
    t = T.t
    ring = T.ring
    if not ring.eq(t[1][1].coefficient(0), ring.one):
        raise YangianError("leading coefficient is not invertible")
    t22_inv = t[1][1].invert()
    schur = t[0][0] - t[0][1] * t22_inv * t[1][0]
    H = schur * t22_inv
    x_plus = t[0][1] * t22_inv
    x_minus = t22_inv * t[1][0]
    return x_minus, H, x_plus


def _series_coeff(s, ring, n):
    """Coefficient of u^{-n-1}, zero when the series is identically 0."""
    if s.is_zero() and -n - 1 > s.shift - s.order:
        return ring.zero
    return s.coefficient(-n - 1)


def loop_relation_check(T: OperatorSeries, depth: int) -> dict:
    """Verify the loop-presentation relations on the module, for all
    generator indices k, l < depth (and k+l < depth where both occur):
    commuting diagonal modes, weight relations, the pairing of raising
    and lowering modes, and the two shift relations."""
    if T.order < 2 * depth:
        raise YangianError("series order too small for the requested depth")
    ring = T.ring
    x_minus, H, x_plus = gauss_decompose(T)
    hs = [_series_coeff(H, ring, n) for n in range(2 * depth)]
    xp = [_series_coeff(x_plus, ring, n) for n in range(2 * depth)]
    xm = [_series_coeff(x_minus, ring, n) for n in range(2 * depth)]

    def comm(a, b):
        return ring.add(ring.mul(a, b), ring.neg(ring.mul(b, a)))

    def anti(a, b):
        return ring.add(ring.mul(a, b), ring.mul(b, a))

    def scale(n, a):
        return ring.scale(T.ctx.from_int(n), a)

    report = {}
    report["diagonal_commute"] = all(
        ring.is_zero(comm(hs[k], hs[l]))
        for k in range(depth) for l in range(depth))
    report["weights"] = all(
        ring.eq(comm(hs[0], xp[k]), scale(2, xp[k]))
        and ring.eq(comm(hs[0], xm[k]), scale(-2, xm[k]))
        for k in range(depth))
    report["pairing"] = all(
        ring.eq(comm(xp[k], xm[l]), hs[k + l])
        for k in range(depth) for l in range(depth) if k + l < depth)
    report["shift_diagonal"] = all(
        ring.eq(ring.add(comm(hs[k + 1], xs[l]), ring.neg(comm(hs[k], xs[l + 1]))),
                scale(s, anti(hs[k], xs[l])))
        for s, xs in ((1, xp), (-1, xm))
        for k in range(depth - 1) for l in range(depth - 1))
    report["shift_offdiagonal"] = all(
        ring.eq(ring.add(comm(xs[k + 1], xs[l]), ring.neg(comm(xs[k], xs[l + 1]))),
                scale(s, anti(xs[k], xs[l])))
        for s, xs in ((1, xp), (-1, xm))
        for k in range(depth - 1) for l in range(depth - 1))
    report["passed"] = all(report.values())
    return report


# ---------------------------------------------------------------------------
# eigenvalue reconstruction for the diagonal series


@dataclass(frozen=True, order=True)
class ShiftParam:
    """An exact spectral label: a symbol plus a rational offset.  The
    empty symbol denotes a plain rational number."""
    base: str
    offset: Fraction

    def __init__(self, base="a", offset=0):
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "offset", Fraction(offset))

    def shifted(self, r) -> "ShiftParam":
        return ShiftParam(self.base, self.offset + Fraction(r))

    def __str__(self):
        off = self.offset
        if not self.base:
            return str(off)
        if off == 0:
            return self.base
        sign = "+" if off > 0 else "-"
        return f"{self.base}{sign}{abs(off)}"


def _param_value(ctx, p: ShiftParam):
    off = ctx.from_fraction(p.offset.numerator, p.offset.denominator)
    if not p.base:
        return off
    return ctx.add(ctx.gen_raw(p.base), off)


def _pade(ctx, lam, max_deg):
    """Reconstruct a rational function num/den (both monic of equal
    degree) from the series 1 + sum lam[n] u^{-n-1}; returns ascending
    coefficient lists, or None when no degree <= max_deg fits."""
    N = len(lam)

    def series_coeff(poly, p):
        # coefficient of u^p in lam-series * u^i summed per poly
        acc = ctx.zero
        for i, c in enumerate(poly):
            n = i - p - 1  # u^i * lam_n u^{-n-1} contributes at u^p
            if n == -1:
                acc = ctx.add(acc, c)
            elif 0 <= n < N:
                acc = ctx.add(acc, ctx.mul(c, lam[n]))
        return acc

    for d in range(max_deg + 1):
        # unknowns: den coefficients d_0..d_{d-1}; monic u^d fixed.
        rows = []
        rhs = []
        for p in range(-1, d - N - 1, -1):
            row = []
            for i in range(d):
                mono = [ctx.zero] * i + [ctx.one]
                row.append(series_coeff(mono, p))
            mono = [ctx.zero] * d + [ctx.one]
            rows.append(row)
            rhs.append(ctx.neg(series_coeff(mono, p)))
        if d == 0:
            if all(ctx.is_zero(r) for r in rhs):
                return [ctx.one], [ctx.one]
            continue
        sol = linalg.solve(ctx, rows, rhs)
        if sol is None:
            continue
        den = list(sol) + [ctx.one]
        num = [series_coeff(den, p) for p in range(d)] + [ctx.one]
        return num, den
    return None


def _roots_as_params(ctx, poly, base, span):
    """Roots of a monic polynomial whose roots are all of the form
    base + (half-integer in [-span, span]); None if any root is not."""
    coeffs = list(poly)
    roots = []
    cands = [Fraction(k, 2) for k in range(-2 * span, 2 * span + 1)]
    progress = True
    while len(coeffs) > 1 and progress:
        progress = False
        for r in cands:
            val = _param_value(ctx, ShiftParam(base, r))
            acc = ctx.zero
            for c in reversed(coeffs):
                acc = ctx.add(ctx.mul(acc, val), c)
            if ctx.is_zero(acc):
                # synthetic division by (u - val)
                out = []
                carry = ctx.zero
                for c in reversed(coeffs):
                    carry = ctx.add(c, ctx.mul(carry, val))
                    out.append(carry)
                out.reverse()
                coeffs = out[1:]
                roots.append(ShiftParam(base, r))
                progress = True
                break
    if len(coeffs) > 1:
        return None
    return roots


def _split_half_shifts(num_roots, den_roots):
    """Recover the label multisets (p, q) from the reduced ratio: the
    eigenvalue is the product over labels c of
    [(u - c + 1/2)/(u - c - 1/2)]^(m_c) with m_c > 0 for p and < 0 for
    q, which telescopes, so the exponents are prefix sums of the root
    orders along each step-1 chain.  None if the orders do not close."""
    order = {}
    for r in num_roots:
        order[r] = order.get(r, 0) + 1
    for r in den_roots:
        order[r] = order.get(r, 0) - 1
    chains = {}
    for r, o in order.items():
        if o:
            chains.setdefault((r.base, r.offset % 1), []).append((r.offset, o))
    p, q = [], []
    for (base, _), items in chains.items():
        items.sort()
        running = 0
        for idx, (off, o) in enumerate(items):
            running += o
            if running == 0:
                continue
            if idx + 1 == len(items):
                return None
            nxt = items[idx + 1][0]
            c = off + Fraction(1, 2)
            while c < nxt:
                lab = ShiftParam(base, c)
                (p if running > 0 else q).extend([lab] * abs(running))
                c += 1
        if running:
            return None
    return p, q


def h_eigen_highest(m: int, base: str = "a", order: int | None = None):
    """Eigenvalues of the diagonal series H(u) on the evaluation module
    built on the (m+1)-dimensional sl2-module at a symbolic point,
    ordered from the highest weight vector down.  Each eigenvalue is
    returned as (P_roots, Q_roots): the coprime label multisets with
    eigenvalue P(u+1/2)Q(u-1/2) / (P(u-1/2)Q(u+1/2))."""
    if order is None:
        order = 2 * m + 4
    for attempt in range(2):
        pairs = _h_eigen_attempt(m, base, order)
        if pairs is not None:
            return pairs
        order *= 2
    raise YangianError("eigenvalue reconstruction failed; the eigenvalue "
                       "does not fit the half-shift normalization")


def _h_eigen_attempt(m, base, order):
    ctx = FractionField(base) if base else RationalField()
    point = _param_value(ctx, ShiftParam(base, 0))
    T = eval_module_T(ctx, m, point, order)
    _, H, _ = gauss_decompose(T)
    ring = T.ring
    hs = [_series_coeff(H, ring, n) for n in range(H.order)]
    pairs = []
    for k in range(m + 1):
        for c in hs:
            if any(not ctx.is_zero(c[k][j]) for j in range(m + 1) if j != k):
                raise YangianError("diagonal series is not diagonal "
                                   "on the weight basis")
        lam = [c[k][k] for c in hs]
        rec = _pade(ctx, lam, m)
        if rec is None:
            return None
        num, den = rec
        span = m + 2
        nr = _roots_as_params(ctx, num, base, span)
        dr = _roots_as_params(ctx, den, base, span)
        if nr is None or dr is None:
            return None
        split = _split_half_shifts(nr, dr)
        if split is None:
            return None
        p, q = split
        pairs.append((tuple(sorted(p)), tuple(sorted(q))))
    return pairs


# ---------------------------------------------------------------------------
# the character ring


class YMonomial:
    """Laurent monomial in the spectral variables: a finite map from
    ShiftParam to a nonzero integer exponent."""

    def __init__(self, exps=None):
        items = {}
        if exps:
            for k, v in (exps.items() if isinstance(exps, dict) else exps):
                if v:
                    items[k] = items.get(k, 0) + v
                    if not items[k]:
                        del items[k]
        self.exps = items
        self._key = frozenset(self.exps.items())

    def __eq__(self, other):
        return isinstance(other, YMonomial) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def mul(self, other: "YMonomial") -> "YMonomial":
        out = dict(self.exps)
        for k, v in other.exps.items():
            out[k] = out.get(k, 0) + v
            if not out[k]:
                del out[k]
        return YMonomial(out)

    def inverse(self) -> "YMonomial":
        return YMonomial({k: -v for k, v in self.exps.items()})

    def is_dominant(self) -> bool:
        return all(v > 0 for v in self.exps.values())

    def __str__(self):
        if not self.exps:
            return "1"
        parts = []
        for k in sorted(self.exps):
            e = self.exps[k]
            parts.append(f"Y[{k}]" + (f"^{e}" if e != 1 else ""))
        return "*".join(parts)

    __repr__ = __str__


class QCharacter:
    """Integer combination of spectral monomials; a commutative ring."""

    def __init__(self, terms=None):
        items = {}
        if terms:
            for mono, c in (terms.items() if isinstance(terms, dict) else terms):
                if c:
                    items[mono] = items.get(mono, 0) + c
                    if not items[mono]:
                        del items[mono]
        self.terms = items

    @classmethod
    def one(cls):
        return cls({YMonomial(): 1})

    def add(self, other: "QCharacter") -> "QCharacter":
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, 0) + c
            if not out[mono]:
                del out[mono]
        return QCharacter(out)

    def mul(self, other: "QCharacter") -> "QCharacter":
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = m1.mul(m2)
                out[mono] = out.get(mono, 0) + c1 * c2
        return QCharacter(out)

    def eq(self, other: "QCharacter") -> bool:
        return self.terms == other.terms

    def dimension(self) -> int:
        return sum(self.terms.values())

    def to_json(self):
        terms = []
        for mono in sorted(self.terms, key=str):
            terms.append({"coeff": self.terms[mono],
                          "factors": [{"base": k.base,
                                       "offset": str(k.offset),
                                       "exp": mono.exps[k]}
                                      for k in sorted(mono.exps)]})
        return {"terms": terms}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=str):
            c = self.terms[mono]
            parts.append(f"{c} * {mono}" if c != 1 else str(mono))
        return " + ".join(parts)

    __repr__ = __str__


def qchar_multiply(a: QCharacter, b: QCharacter) -> QCharacter:
    return a.mul(b)


def dominant_monomials(chi: QCharacter) -> list:
    """Monomials of chi with all exponents >= 0 (with repetition by
    coefficient)."""
    out = []
    for mono in sorted(chi.terms, key=str):
        if mono.is_dominant():
            out.extend([mono] * chi.terms[mono])
    return out


def eigen_to_monomial(p_roots, q_roots) -> YMonomial:
    """Monomial with positive exponents at the numerator labels and
    negative at the denominator labels; the multisets must be disjoint."""
    if set(p_roots) & set(q_roots):
        raise YangianError("labels are not coprime")
    exps = list((r, 1) for r in p_roots) + list((r, -1) for r in q_roots)
    return YMonomial(exps)


def _translate(pairs, a: ShiftParam):
    """Re-anchor eigenvalue labels computed at a symbolic point onto a."""
    out = []
    for p, q in pairs:
        out.append((tuple(a.shifted(r.offset) for r in p),
                    tuple(a.shifted(r.offset) for r in q)))
    return out


def qchar_from_module(m: int, a: ShiftParam | None = None,
                      order: int | None = None) -> QCharacter:
    """Character of the evaluation module on the (m+1)-dimensional
    sl2-module at the point a, computed through the triangular
    factorization and eigenvalue reconstruction."""
    if a is None:
        a = ShiftParam("a", 0)
    pairs = _translate(h_eigen_highest(m, "a", order), a)
    chi = QCharacter()
    for p, q in pairs:
        chi = chi.add(QCharacter({eigen_to_monomial(p, q): 1}))
    return chi


def qchar_closed_form(m: int, a: ShiftParam | None = None) -> QCharacter:
    """Closed-form (m+1)-term character of the same module: term k has
    positive factors at a + (2j-m)/2 for j < m-k and negative factors
    for j > m-k."""
    if a is None:
        a = ShiftParam("a", 0)
    chi = QCharacter()
    for k in range(m + 1):
        exps = []
        for j in range(0, m - k):
            exps.append((a.shifted(Fraction(2 * j - m, 2)), 1))
        for j in range(m - k + 1, m + 1):
            exps.append((a.shifted(Fraction(2 * j - m, 2)), -1))
        chi = chi.add(QCharacter({YMonomial(exps): 1}))
    return chi


def qchar_from_tensor(m: int, n: int, a: ShiftParam, b: ShiftParam,
                      order: int | None = None) -> QCharacter:
    """Character of the tensor of two evaluation modules, read off the
    diagonal series spectrum of the tensor module.  Candidate
    eigenvalues are products of the factors' eigenvalue series; joint
    eigenspace dimensions must exhaust the module (raises otherwise)."""
    if order is None:
        order = 2 * (m + n) + 4
    gens = []
    for p in (a, b):
        if p.base and p.base not in gens:
            gens.append(p.base)
    ctx = FractionField(*gens) if gens else RationalField()
    Ta = eval_module_T(ctx, m, _param_value(ctx, a), order)
    Tb = eval_module_T(ctx, n, _param_value(ctx, b), order)
    T = tensor_T(Ta, Tb)
    ring = T.ring
    _, H, _ = gauss_decompose(T)
    depth = H.order
    hs = [_series_coeff(H, ring, k) for k in range(depth)]

    def eigen_series(Tx, dim, k):
        _, Hx, _ = gauss_decompose(Tx)
        rx = Tx.ring
        out = []
        for nn in range(depth):
            c = _series_coeff(Hx, rx, nn)
            if any(not ctx.is_zero(c[k][j]) for j in range(dim) if j != k):
                raise YangianError("diagonal series is not diagonal "
                                   "on the weight basis")
            out.append(c[k][k])
        return out

    la = [eigen_series(Ta, m + 1, k) for k in range(m + 1)]
    lb = [eigen_series(Tb, n + 1, k) for k in range(n + 1)]
    pa = _translate(h_eigen_highest(m, "a", None), a)
    pb = _translate(h_eigen_highest(n, "a", None), b)

    # candidate eigenvalue series: pairwise products, grouped by value
    cands = {}
    for i in range(m + 1):
        for j in range(n + 1):
            sa = TruncatedSeries(ctx, "u", 0, [ctx.one] + la[i])
            sb = TruncatedSeries(ctx, "u", 0, [ctx.one] + lb[j])
            prod = sa * sb
            lam = tuple(ctx.to_str(prod.coefficient(-k - 1))
                        for k in range(prod.order))
            mono = eigen_to_monomial(*pa[i]).mul(eigen_to_monomial(*pb[j]))
            if lam in cands:
                cands[lam][1].append(mono)
            else:
                series = [prod.coefficient(-k - 1) for k in range(prod.order)]
                cands[lam] = (series, [mono])

    dim = T.dim
    chi = QCharacter()
    total = 0
    for series, monos in cands.values():
        rows = []
        for k, lam_k in enumerate(series):
            if k >= len(hs):
                break
            shifted = [row[:] for row in [list(r) for r in hs[k]]]
            for i in range(dim):
                shifted[i][i] = ctx.sub(shifted[i][i], lam_k)
            rows.extend(shifted)
        space = linalg.nullspace(ctx, rows)
        mult = len(space)
        if mult != len(monos):
            raise YangianError("joint eigenspace dimension does not match "
                               "the expected multiplicity")
        total += mult
        for mono in monos:
            chi = chi.add(QCharacter({mono: 1}))
    if total != dim:
        raise YangianError("spectrum does not exhaust the tensor module")
    return chi
