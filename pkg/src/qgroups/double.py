"""Drinfeld double, canonical R-matrix, and the small quantum group.

The double of a finite-dimensional Hopf algebra H lives on H (x) H^*cop.
Multiplication straightens b.a (functional times element) through triple
Sweedler components and the inverse dual antipode; the canonical R-matrix is
the sum of basis (x) dual-basis tensors, and every clause of the
quasitriangularity definition is checked by exact tensor arithmetic.

The small quantum group arises by doubling the positive Borel half (a Taft
algebra with coproduct twisted onto the group generator), identifying the
dual half with the negative Borel through the canonical Hopf pairing, and
quotienting by the central grouplike difference of the two group generators.
"""
from __future__ import annotations

from .hopf import FiniteHopfData, HopfError, _tensor_eq
from .linalg import SparseEchelon, determinant
from .scalars import CyclotomicField, FieldContext, q_factorial


class RMatrixElement:
    """An element of H (x) H: sparse dict (i, j) -> raw coefficient."""

    def __init__(self, H: FiniteHopfData, terms: dict):
        self.H = H
        ctx = H.ctx
        self.terms = {k: v for k, v in terms.items() if not ctx.is_zero(v)}

    def matrix(self):
        ctx = self.H.ctx
        n = self.H.dim
        return [[self.terms.get((i, j), ctx.zero) for j in range(n)]
                for i in range(n)]


# ---------------------------------------------------------------------------
# Borel halves


def build_borel_plus(ell: int, ctx: FieldContext | None = None):
    """Positive Borel half at an odd root of unity: K e K^-1 = q^2 e,
    Delta e = e (x) K + 1 (x) e, basis K^i e^j; dim ell^2."""
    return _build_borel(ell, ctx, plus=True)


def build_borel_minus(ell: int, ctx: FieldContext | None = None):
    """Negative Borel half: K f K^-1 = q^-2 f, Delta f = f (x) 1 + K^-1 (x) f,
    basis K^i f^j; dim ell^2."""
    return _build_borel(ell, ctx, plus=False)


def _build_borel(ell, ctx, plus):
    if ell < 3 or ell % 2 == 0:
        raise HopfError("Borel halves require odd ell >= 3")
    ctx = ctx or CyclotomicField(ell)
    q = ctx.scalar(ctx.gen_raw("zeta"))
    gen = "e" if plus else "f"
    labels = [f"K^{i}*{gen}^{j}" for i in range(ell) for j in range(ell)]
    idx = lambda i, j: i * ell + j
    one = ctx.one
    mult = {}
    sign = -2 if plus else 2
    for i in range(ell):
        for j in range(ell):
            for k in range(ell):
                qf = (q ** (sign * j * k)).raw
                for l in range(ell - j):
                    mult[(idx(i, j), idx(k, l))] = {
                        idx((i + k) % ell, j + l): qf}
    H = FiniteHopfData(ctx, labels, mult=mult, unit={0: one},
                       comult=[{} for _ in range(ell * ell)],
                       counit=[one if b % ell == 0 else ctx.zero
                               for b in range(ell * ell)],
                       antipode=[{} for _ in range(ell * ell)],
                       name=f"borel{'+' if plus else '-'}-{ell}")
    dk = {(idx(1, 0), idx(1, 0)): one}
    if plus:
        dx = {(idx(0, 1), idx(1, 0)): one, (0, idx(0, 1)): one}
    else:
        dx = {(idx(0, 1), 0): one, (idx(ell - 1, 0), idx(0, 1)): one}
    for i in range(ell):
        ki = _tensor2_pow(H, dk, i)
        acc = ki
        for j in range(ell):
            H.comult[idx(i, j)] = acc
            acc = H.mult_tensor(acc, dx, 2)
    # antipode from generator values: S(K) = K^-1,
    # S(e) = -e K^-1 (plus) / S(f) = -K f (minus)
    sk = {idx(ell - 1, 0): one}
    if plus:
        sx = H.scale_vec(ctx.from_int(-1), H.mul_vec({idx(0, 1): one}, sk))
    else:
        sx = H.scale_vec(ctx.from_int(-1), {idx(1, 1): one})
    for i in range(ell):
        for j in range(ell):
            H.antipode[idx(i, j)] = H.mul_vec(_pow_vec(H, sx, j),
                                              _pow_vec(H, sk, i))
    return H


def _pow_vec(H, x, n):
    out = H.unit
    for _ in range(n):
        out = H.mul_vec(out, x)
    return out


def _tensor2_pow(H, x2, n):
    ctx = H.ctx
    out = {(a, b): ctx.mul(ca, cb)
           for a, ca in H.unit.items() for b, cb in H.unit.items()}
    for _ in range(n):
        out = H.mult_tensor(out, x2, 2)
    return out


# ---------------------------------------------------------------------------
# Hopf pairing between the Borel halves


class HopfPairing:
    """Bilinear pairing between two Hopf algebras, stored as a full matrix
    P[i][j] = (basis_i of hplus, basis_j of hminus)."""

    def __init__(self, hplus: FiniteHopfData, hminus: FiniteHopfData, matrix):
        self.hplus = hplus
        self.hminus = hminus
        self.matrix = matrix

    def value(self, i, j):
        return self.matrix[i][j]


def canonical_taft_pairing(ell: int) -> HopfPairing:
    """The unique Hopf pairing between the Borel halves, determined by
    (K, K) = q^2, (e, f) = 1/(q - q^-1), (K, f) = (e, K) = 0."""
    bp = build_borel_plus(ell)
    bm = build_borel_minus(ell, ctx=bp.ctx)
    ctx = bp.ctx
    q = ctx.scalar(ctx.gen_raw("zeta"))
    ef = (q - q.inv()).inv()  # (e, f)

    # Bilinear rules: (x, yz) = sum (x1, y)(x2, z) and
    # (yz, x) = sum (y, x2)(z, x1).  Peeling the rightmost generator g of
    # K^c f^d gives (x, y' g) = sum (x1, y')(x2, g), with base values from
    # the second rule: (K^a e^b, f) = (e, f) when b = 1, else 0;
    # (K^a e^b, K) = q^(2a) when b = 0, else 0.
    memo: dict = {}

    def pair(i: int, j: int):
        hit = memo.get((i, j))
        if hit is not None:
            return hit
        c, d = divmod(j, ell)
        if c == 0 and d == 0:
            out = bp.counit[i]
        elif d >= 1:
            rest = c * ell + (d - 1)
            out = ctx.zero
            for (x1, x2), coeff in bp.comult[i].items():
                if x2 % ell != 1:
                    continue
                out = ctx.add(out, ctx.mul(coeff,
                                           ctx.mul(pair(x1, rest), ef.raw)))
        else:
            rest = (c - 1) * ell
            out = ctx.zero
            for (x1, x2), coeff in bp.comult[i].items():
                a, b = divmod(x2, ell)
                if b != 0:
                    continue
                out = ctx.add(out, ctx.mul(coeff,
                                           ctx.mul(pair(x1, rest),
                                                   (q ** (2 * a)).raw)))
        memo[(i, j)] = out
        return out

    n = ell * ell
    matrix = [[pair(i, j) for j in range(n)] for i in range(n)]
    return HopfPairing(bp, bm, matrix)


def check_hopf_pairing(P: HopfPairing) -> bool:
    """Verify (Delta x, z (x) y) = (x, yz) and (y (x) z, Delta x) = (yz, x)
    on all basis triples, plus unit/counit compatibility and nondegeneracy."""
    hp, hm, m = P.hplus, P.hminus, P.matrix
    ctx = hp.ctx
    n1, n2 = hp.dim, hm.dim

    def val_plusvec_minus(x: dict, j: int):
        acc = ctx.zero
        for i, c in x.items():
            acc = ctx.add(acc, ctx.mul(c, m[i][j]))
        return acc

    for i in range(n1):
        # (x, 1) = eps(x)
        acc = ctx.zero
        for j, c in hm.unit.items():
            acc = ctx.add(acc, ctx.mul(c, m[i][j]))
        if not ctx.eq(acc, hp.counit[i]):
            return False
    for j in range(n2):
        acc = ctx.zero
        for i, c in hp.unit.items():
            acc = ctx.add(acc, ctx.mul(c, m[i][j]))
        if not ctx.eq(acc, hm.counit[j]):
            return False
    for i in range(n1):
        di = hp.comult[i]
        for y in range(n2):
            for z in range(n2):
                # (x, y z) = sum (x1, y)(x2, z)
                rhs = ctx.zero
                for k, c in hm.pair_product(y, z).items():
                    rhs = ctx.add(rhs, ctx.mul(c, m[i][k]))
                lhs = ctx.zero
                for (x1, x2), c in di.items():
                    lhs = ctx.add(lhs, ctx.mul(c, ctx.mul(m[x1][y], m[x2][z])))
                if not ctx.eq(lhs, rhs):
                    return False
    for x in range(n2):
        dx = hm.comult[x]
        for y in range(n1):
            for z in range(n1):
                # (y z, x) = sum (y, x2)(z, x1)
                rhs = ctx.zero
                for k, c in hp.pair_product(y, z).items():
                    rhs = ctx.add(rhs, ctx.mul(c, m[k][x]))
                lhs = ctx.zero
                for (x1, x2), c in dx.items():
                    lhs = ctx.add(lhs, ctx.mul(c, ctx.mul(m[y][x2], m[z][x1])))
                if not ctx.eq(lhs, rhs):
                    return False
    if ctx.is_zero(determinant(ctx, m)):
        raise HopfError("pairing is degenerate")
    return True


# ---------------------------------------------------------------------------
# Drinfeld double


def drinfeld_double(H: FiniteHopfData):
    """The double on H (x) H^*cop with the canonical R = sum basis (x) dual.

    Basis index of the double: i * dim(H) + p, meaning e_i (x) e^p.
    Multiplication is lazy: entries are straightened on demand and cached.
    Returns (double, RMatrixElement)."""
    ctx = H.ctx
    n = H.dim
    H.materialized_mult()

    # triple coproducts of H
    t3 = []
    for i in range(n):
        acc: dict = {}
        for (j, k), c in H.comult[i].items():
            for (a, b), c2 in H.comult[j].items():
                key = (a, b, k)
                s = ctx.add(acc.get(key, ctx.zero), ctx.mul(c, c2))
                if ctx.is_zero(s):
                    acc.pop(key, None)
                else:
                    acc[key] = s
        t3.append(acc)

    # dual-side data: Delta_{H*}(e^p) indexed by product pairs, and triple
    # products of dual basis functionals indexed for the straightening join
    dualmult = {}  # (r, s) -> {k: coeff}: e^r e^s in H* (convolution)
    for k in range(n):
        for (r, s), c in H.comult[k].items():
            dualmult.setdefault((r, s), {})[k] = c
    # triple coproduct of e^p in H*: components (alpha, beta, gamma) weighted
    # by the coefficient of e_p in the H-product e_alpha e_beta e_gamma,
    # indexed by alpha for the straightening join
    d3idx = [dict() for _ in range(n)]
    for alpha in range(n):
        for beta in range(n):
            for w, c1 in H.pair_product(alpha, beta).items():
                for gamma in range(n):
                    for p, c2 in H.pair_product(w, gamma).items():
                        d3idx[p].setdefault(alpha, []).append(
                            (beta, gamma, ctx.mul(c1, c2)))

    sinv = H.antipode_inv()
    sinv_t = [dict() for _ in range(n)]  # beta -> {r: coeff}: S_{H*}^-1(e^beta)
    for r in range(n):
        for b, c in sinv[r].items():
            sinv_t[b][r] = c

    swap_cache: dict = {}

    def swap(i: int, p: int) -> dict:
        """e^p . e_i straightened: with a-components (a1, a2, a3) and H*
        components (b1, b2, b3) of e^p, sum b1(a3) b3(S^-1(a1)) a2 (x) b2,
        returned as dict (m, r) -> coeff meaning sum e_m (x) e^r."""
        hit = swap_cache.get((i, p))
        if hit is not None:
            return hit
        out: dict = {}
        idxp = d3idx[p]
        for (s, m2, u), c in t3[i].items():
            su = sinv[s]
            for beta, gamma, c2 in idxp.get(u, ()):
                c3 = su.get(gamma)
                if c3 is None:
                    continue
                key = (m2, beta)
                v = ctx.add(out.get(key, ctx.zero),
                            ctx.mul(c, ctx.mul(c2, c3)))
                if ctx.is_zero(v):
                    out.pop(key, None)
                else:
                    out[key] = v
        swap_cache[(i, p)] = out
        return out

    def mult_fn(x: int, y: int) -> dict:
        i1, p1 = divmod(x, n)
        i2, p2 = divmod(y, n)
        out: dict = {}
        for (m2, r), c in swap(i2, p1).items():
            left = H.pair_product(i1, m2)
            right = dualmult.get((r, p2))
            if not left or not right:
                continue
            for k1, c1 in left.items():
                f = ctx.mul(c, c1)
                for k2, c2 in right.items():
                    key = k1 * n + k2
                    v = ctx.add(out.get(key, ctx.zero), ctx.mul(f, c2))
                    if ctx.is_zero(v):
                        out.pop(key, None)
                    else:
                        out[key] = v
        return out

    labels = [f"{H.basis[i]}(x){H.basis[p]}*"
              for i in range(n) for p in range(n)]
    comult = []
    for i in range(n):
        for p in range(n):
            entry: dict = {}
            # Delta_D(e_i (x) e^p): H-side from comult; dual side is the
            # opposite of Delta_{H*}(e^p) = sum over products e_r e_s ∋ e_p
            for r0 in range(n):
                for s0 in range(n):
                    c2 = H.pair_product(r0, s0).get(p)
                    if c2 is None or ctx.is_zero(c2):
                        continue
                    for (j, k), c in H.comult[i].items():
                        key = (j * n + s0, k * n + r0)
                        v = ctx.add(entry.get(key, ctx.zero), ctx.mul(c, c2))
                        if ctx.is_zero(v):
                            entry.pop(key, None)
                        else:
                            entry[key] = v
            comult.append(entry)
    unit = {}
    for i, c in H.unit.items():
        for p in range(n):
            if not ctx.is_zero(H.counit[p]):
                unit[i * n + p] = ctx.mul(c, H.counit[p])
    counit = []
    for i in range(n):
        for p in range(n):
            counit.append(ctx.mul(H.counit[i], H.unit.get(p, ctx.zero)))
    D = FiniteHopfData(ctx, labels, mult_fn=mult_fn, unit=unit,
                       comult=comult, counit=counit,
                       antipode=[{} for _ in range(n * n)],
                       name=f"double({H.name})")
    # antipode: S(a (x) b) = (1 (x) S_{*cop} b) . (S a (x) 1)
    for i in range(n):
        si = H.antipode[i]
        for p in range(n):
            left = {m * n + r: c for r, c in sinv_t[p].items()
                    for m, cu in H.unit.items()
                    for c in (ctx.mul(cu, c),)}
            right = {}
            for a, c in si.items():
                for w in range(n):
                    if not ctx.is_zero(H.counit[w]):
                        right[a * n + w] = ctx.mul(c, H.counit[w])
            D.antipode[i * n + p] = D.mul_vec(left, right)
    r_terms = {}
    for i in range(n):
        for w in range(n):
            cw = H.counit[w]
            if ctx.is_zero(cw):
                continue
            for m, cm in H.unit.items():
                r_terms[(i * n + w, m * n + i)] = ctx.mul(cw, cm)
    return D, RMatrixElement(D, r_terms)


# ---------------------------------------------------------------------------
# quasitriangularity


def quasitriangular_check(H: FiniteHopfData, R: RMatrixElement) -> dict:
    """Check every clause of the quasitriangularity definition plus QYBE and
    the antipode formula for the inverse; each clause reported separately."""
    ctx = H.ctx
    terms = R.terms
    # candidate inverse (S (x) id) R
    rinv: dict = {}
    for (x, y), c in terms.items():
        for a, ca in H.antipode[x].items():
            key = (a, y)
            v = ctx.add(rinv.get(key, ctx.zero), ctx.mul(c, ca))
            if ctx.is_zero(v):
                rinv.pop(key, None)
            else:
                rinv[key] = v
    unit2 = {(a, b): ctx.mul(ca, cb)
             for a, ca in H.unit.items() for b, cb in H.unit.items()}
    inv_ok = (_tensor_eq(ctx, H.mult_tensor(terms, rinv, 2), unit2)
              and _tensor_eq(ctx, H.mult_tensor(rinv, terms, 2), unit2))
    report = {"invertible": inv_ok, "antipode_inverse": inv_ok}

    ok = True
    for i in range(H.dim):
        dx = H.comult[i]
        dxop = {(k, j): c for (j, k), c in dx.items()}
        if not _tensor_eq(ctx, H.mult_tensor(terms, dx, 2),
                          H.mult_tensor(dxop, terms, 2)):
            ok = False
            break
    report["intertwiner"] = ok

    def with_unit_leg(r, pos):
        out = {}
        for (x, y), c in r.items():
            for m, cm in H.unit.items():
                key = (m, x, y) if pos == 0 else (
                    (x, m, y) if pos == 1 else (x, y, m))
                out[key] = ctx.mul(c, cm)
        return out

    r12 = with_unit_leg(terms, 2)
    r13 = with_unit_leg(terms, 1)
    r23 = with_unit_leg(terms, 0)
    dleg1 = {}
    dleg2 = {}
    for (x, y), c in terms.items():
        for (j, k), c2 in H.comult[x].items():
            key = (j, k, y)
            dleg1[key] = ctx.add(dleg1.get(key, ctx.zero), ctx.mul(c, c2))
        for (j, k), c2 in H.comult[y].items():
            key = (x, j, k)
            dleg2[key] = ctx.add(dleg2.get(key, ctx.zero), ctx.mul(c, c2))
    report["hexagon_left"] = _tensor_eq(
        ctx, dleg1, H.mult_tensor(r13, r23, 3))
    report["hexagon_right"] = _tensor_eq(
        ctx, dleg2, H.mult_tensor(r13, r12, 3))
    lhs = H.mult_tensor(H.mult_tensor(r12, r13, 3), r23, 3)
    rhs = H.mult_tensor(H.mult_tensor(r23, r13, 3), r12, 3)
    report["qybe"] = _tensor_eq(ctx, lhs, rhs)
    report["passed"] = all(report.values())
    return report


# ---------------------------------------------------------------------------
# Hopf-ideal quotients


def hopf_quotient(H: FiniteHopfData, generators, alg_gens=None,
                  cap_factor=4) -> FiniteHopfData:
    """Quotient of H by the two-sided ideal closing the generators, after
    verifying it is a Hopf ideal (coideal, antipode-stable, counit-killed).

    alg_gens optionally lists algebra generators of H (sparse vectors);
    saturation multiplies by these instead of the whole basis.  The quotient
    carries a .projection attribute: old basis index -> sparse vector in the
    quotient basis."""
    ctx = H.ctx
    cap = cap_factor * H.dim
    if alg_gens is None:
        alg_gens = [{i: ctx.one} for i in range(H.dim)]
    ech = SparseEchelon(ctx)
    queue = []
    for g in generators:
        if ech.add(dict(g)):
            queue.append(dict(g))
    while queue:
        v = queue.pop()
        for g in alg_gens:
            for w in (H.mul_vec(g, v), H.mul_vec(v, g)):
                if w and ech.add(dict(w)):
                    queue.append(w)
                    if ech.dim > cap:
                        raise HopfError("ideal saturation exceeded the "
                                        "dimension cap")
    pivots = ech.pivots()
    comp = [t for t in range(H.dim) if t not in pivots]
    cmap = {t: x for x, t in enumerate(comp)}
    pi = [ech.reduce({t: ctx.one}) for t in range(H.dim)]

    # Hopf-ideal verification on a spanning set of the ideal
    ideal_rows = [dict(r) for r in ech.rows.values()]
    for v in ideal_rows:
        if not ctx.is_zero(H.counit_of(v)):
            raise HopfError("ideal is not killed by the counit")
        if ech.reduce(H.antipode_vec(v)):
            raise HopfError("ideal is not antipode-stable")
        acc: dict = {}
        for (j, k), c in H.coproduct_vec(v).items():
            for a, ca in pi[j].items():
                for b, cb in pi[k].items():
                    key = (a, b)
                    s = ctx.add(acc.get(key, ctx.zero),
                                ctx.mul(c, ctx.mul(ca, cb)))
                    if ctx.is_zero(s):
                        acc.pop(key, None)
                    else:
                        acc[key] = s
        if acc:
            raise HopfError("ideal is not a coideal")

    def remap(vec: dict) -> dict:
        return {cmap[t]: c for t, c in vec.items()}

    def qmult_fn(x: int, y: int) -> dict:
        return remap(ech.reduce(H.pair_product(comp[x], comp[y])))

    comult = []
    for t in comp:
        entry: dict = {}
        for (j, k), c in H.comult[t].items():
            for a, ca in pi[j].items():
                for b, cb in pi[k].items():
                    key = (cmap[a], cmap[b])
                    s = ctx.add(entry.get(key, ctx.zero),
                                ctx.mul(c, ctx.mul(ca, cb)))
                    if ctx.is_zero(s):
                        entry.pop(key, None)
                    else:
                        entry[key] = s
        comult.append(entry)
    Q = FiniteHopfData(
        ctx, [H.basis[t] for t in comp], mult_fn=qmult_fn,
        unit=remap(ech.reduce(dict(H.unit))),
        comult=comult,
        counit=[H.counit[t] for t in comp],
        antipode=[remap(ech.reduce(H.antipode_vec({t: ctx.one})))
                  for t in comp],
        name=f"{H.name}/ideal")
    Q.projection = [remap(v) for v in pi]
    return Q


# ---------------------------------------------------------------------------
# small quantum group


def truncated_r_formula(Q: FiniteHopfData, kvec, evec, fvec, ell):
    """The closed-form R: Theta times the truncated exponential sum
    Theta = (1/ell) sum q^(-2ij) K^i (x) K^j,
    R = Theta . sum_k q^(k(k-1)/2) (q - q^-1)^k / [k]_q! e^k (x) f^k."""
    ctx = Q.ctx
    q = ctx.scalar(ctx.gen_raw("zeta"))
    theta: dict = {}
    kpows = [_pow_vec(Q, kvec, i) for i in range(ell)]
    inv_ell = ctx.from_fraction(1, ell)
    for i in range(ell):
        for j in range(ell):
            c = ctx.mul(inv_ell, (q ** (-2 * i * j)).raw)
            for a, ca in kpows[i].items():
                for b, cb in kpows[j].items():
                    key = (a, b)
                    v = ctx.mul(c, ctx.mul(ca, cb))
                    s = ctx.add(theta.get(key, ctx.zero), v)
                    if ctx.is_zero(s):
                        theta.pop(key, None)
                    else:
                        theta[key] = s
    series: dict = {}
    qm = q - q.inv()
    for k in range(ell):
        # symmetric quantum factorial: [k]_q = q^(k-1) + q^(k-3) + ... + q^(1-k)
        coeff = (q ** (k * (k - 1) // 2)) * qm ** k / q_factorial(k, q)
        ek = _pow_vec(Q, evec, k)
        fk = _pow_vec(Q, fvec, k)
        for a, ca in ek.items():
            for b, cb in fk.items():
                key = (a, b)
                v = ctx.mul(coeff.raw, ctx.mul(ca, cb))
                s = ctx.add(series.get(key, ctx.zero), v)
                if ctx.is_zero(s):
                    series.pop(key, None)
                else:
                    series[key] = s
    return Q.mult_tensor(theta, series, 2)


def build_small_uqsl2(ell: int, ctx: FieldContext | None = None):
    """The small quantum group by explicit normal-form structure constants
    on the basis K^a f^b e^c (dimension ell^3), with
    Delta K = K (x) K, Delta e = e (x) K + 1 (x) e,
    Delta f = f (x) 1 + K^-1 (x) f."""
    from .pbw import PBWAlgebra

    if ell < 3 or ell % 2 == 0:
        raise HopfError("small quantum group requires odd ell >= 3")
    ctx = ctx or CyclotomicField(ell)
    alg = PBWAlgebra(ctx, ctx.gen_raw("zeta"), ell=ell)
    n = ell ** 3
    idx = lambda a, b, c: (a * ell + b) * ell + c
    labels = [f"K^{a}*f^{b}*e^{c}" for a in range(ell)
              for b in range(ell) for c in range(ell)]
    mult = {}
    for a1 in range(ell):
        for b1 in range(ell):
            for c1 in range(ell):
                for a2 in range(ell):
                    for b2 in range(ell):
                        for c2 in range(ell):
                            prod = alg._mono_mul((a1, b1, c1), (a2, b2, c2))
                            entry = {idx(a, b, c): v
                                     for (a, b, c), v in prod.items()}
                            if entry:
                                mult[(idx(a1, b1, c1),
                                      idx(a2, b2, c2))] = entry
    H = FiniteHopfData(ctx, labels, mult=mult, unit={0: ctx.one},
                       comult=[{} for _ in range(n)],
                       counit=[ctx.one if i % (ell * ell) == 0 else ctx.zero
                               for i in range(n)],
                       antipode=[{} for _ in range(n)],
                       name=f"small-uqsl2-{ell}")
    one = ctx.one
    dk = {(idx(1, 0, 0), idx(1, 0, 0)): one}
    df = {(idx(0, 1, 0), 0): one, (idx(ell - 1, 0, 0), idx(0, 1, 0)): one}
    de = {(idx(0, 0, 1), idx(1, 0, 0)): one, (0, idx(0, 0, 1)): one}
    for a in range(ell):
        ka = _tensor2_pow(H, dk, a)
        for b in range(ell):
            kafb = ka
            for _ in range(b):
                kafb = H.mult_tensor(kafb, df, 2)
            acc = kafb
            for c in range(ell):
                H.comult[idx(a, b, c)] = acc
                acc = H.mult_tensor(acc, de, 2)
    sk = {idx(ell - 1, 0, 0): one}
    se = H.scale_vec(ctx.from_int(-1),
                     H.mul_vec({idx(0, 0, 1): one}, sk))
    sf = H.scale_vec(ctx.from_int(-1),
                     H.mul_vec({idx(1, 0, 0): one}, {idx(0, 1, 0): one}))
    for a in range(ell):
        for b in range(ell):
            for c in range(ell):
                H.antipode[idx(a, b, c)] = H.mul_vec(
                    H.mul_vec(_pow_vec(H, se, c), _pow_vec(H, sf, b)),
                    _pow_vec(H, sk, a))
    return H


def small_quantum_group(ell: int):
    """Build the dimension-ell^3 small quantum group as the double of the
    positive Borel half modulo the central grouplike relation, with its
    pushed-forward R-matrix; verifies R against the closed truncated formula.

    Returns (Q, RMatrixElement); Q.images maps "K", "e", "f" to the images
    of the generators in the quotient basis."""
    pairing = canonical_taft_pairing(ell)
    bp = pairing.hplus
    ctx = bp.ctx
    n = bp.dim
    D, R = drinfeld_double(bp)

    def dual_side(minus_index: int) -> dict:
        """Image in D of a negative-Borel basis element, via the pairing."""
        out = {}
        for p in range(n):
            c = pairing.matrix[p][minus_index]
            if ctx.is_zero(c):
                continue
            for m, cm in bp.unit.items():
                out[m * n + p] = ctx.mul(cm, c)
        return out

    def plus_side(plus_index: int) -> dict:
        out = {}
        for w in range(n):
            cw = bp.counit[w]
            if not ctx.is_zero(cw):
                out[plus_index * n + w] = cw
        return out

    kplus = plus_side(ell)          # K_+ = basis (1, 0)
    eplus = plus_side(1)            # e   = basis (0, 1)
    kminus = dual_side(ell)         # K_-
    kminus_inv = dual_side((ell - 1) * ell)  # K_-^(ell-1)
    fminus = dual_side(1)           # f
    kc = D.mul_vec(kplus, kminus_inv)
    gen = D.sub_vec(kc, D.unit)
    Q = hopf_quotient(D, [gen],
                      alg_gens=[kplus, eplus, kminus, fminus])
    if Q.dim != ell ** 3:
        raise HopfError(f"quotient dimension {Q.dim} != ell^3")

    def push(vec: dict) -> dict:
        out: dict = {}
        for t, c in vec.items():
            for x, cx in Q.projection[t].items():
                s = ctx.add(out.get(x, ctx.zero), ctx.mul(c, cx))
                if ctx.is_zero(s):
                    out.pop(x, None)
                else:
                    out[x] = s
        return out

    Q.images = {"K": push(kplus), "e": push(eplus), "f": push(fminus)}
    r_pushed: dict = {}
    for (x, y), c in R.terms.items():
        for a, ca in Q.projection[x].items():
            for b, cb in Q.projection[y].items():
                key = (a, b)
                s = ctx.add(r_pushed.get(key, ctx.zero),
                            ctx.mul(c, ctx.mul(ca, cb)))
                if ctx.is_zero(s):
                    r_pushed.pop(key, None)
                else:
                    r_pushed[key] = s
    closed = truncated_r_formula(Q, Q.images["K"], Q.images["e"],
                                 Q.images["f"], ell)
    if not _tensor_eq(ctx, r_pushed, closed):
        raise HopfError("pushed-forward R does not match the closed formula")
    return Q, RMatrixElement(Q, r_pushed)
