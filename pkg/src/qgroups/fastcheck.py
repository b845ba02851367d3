"""Deterministic modular backend for the heavy Hopf axiom checks.

Associativity, multiplicativity of the coproduct and the antipode
antihomomorphism law are polynomial identities in a fixed finite set of
rational or cyclotomic structure constants.  Each identity is checked by
pushing the constants through ring homomorphisms into small prime fields
(evaluating the cyclotomic generator at roots of unity mod p) and
comparing both sides with sparse integer matrix algebra.

The method is exact, not probabilistic: the number of primes is chosen so
that the product of the moduli exceeds twice a rigorous bound on any
coefficient of the cleared-denominator difference tensor.  A bounded
integer vector that vanishes modulo a larger modulus is zero, so
agreement in every channel proves equality and disagreement in any
channel disproves it.  For a cyclotomic field of odd prime order ell,
canonical coordinates are polynomials of degree <= ell-2 in the
generator, and vanishing at the ell-1 distinct primitive roots mod p
forces every coordinate to vanish mod p.

Only QQ and QQ(zeta_ell) contexts are supported; callers fall back to
the dense dict-based checks for anything else.
"""
from __future__ import annotations

from math import lcm

import numpy as np
from scipy import sparse
from sympy import prevprime

from .scalars import CyclotomicField, RationalField

# p < 2^24 keeps every accumulation exact in int64: summands are < 2^48
# and inner dimensions are at most dim^2, which we cap at 2^14.
_PMAX = 1 << 24
_MAX_DIM = 180


def supported(ctx) -> bool:
    return isinstance(ctx, (RationalField, CyclotomicField))


def _coords(ctx, raw):
    if isinstance(ctx, CyclotomicField):
        return list(raw.items())
    return [(0, raw)]


def _den_lcm(ctx, values) -> int:
    d = 1
    for v in values:
        for _, c in _coords(ctx, v):
            d = lcm(d, int(c.denominator))
    return d


def _max_norm(ctx, values, d: int) -> int:
    """Largest integer 1-norm of a value after clearing denominators by d."""
    best = 1
    for v in values:
        s = sum(abs(int(c.numerator)) * (d // int(c.denominator))
                for _, c in _coords(ctx, v))
        if s > best:
            best = s
    return best


def _primes_for(bits_needed: int, ell: int, avoid: int) -> list[int]:
    out = []
    have = 0
    p = _PMAX
    while have < bits_needed:
        p = prevprime(p)
        if ell > 1 and (p - 1) % ell != 0:
            continue
        if avoid % p == 0:
            continue
        out.append(p)
        have += p.bit_length() - 1
    return out


def _eval_points(p: int, ell: int) -> list[int]:
    """The ell-1 primitive ell-th roots of unity mod p (or [1] for QQ)."""
    if ell == 1:
        return [1]
    g = 2
    while True:
        w = pow(g, (p - 1) // ell, p)
        if w != 1:
            break
        g += 1
    return [pow(w, r, p) for r in range(1, ell)]


class _Channel:
    """One (prime, evaluation point) reduction of the scalar field."""

    def __init__(self, ctx, p: int, point: int):
        self.ctx = ctx
        self.p = p
        self.point = point
        ell = ctx.ell if isinstance(ctx, CyclotomicField) else 1
        self._zpow = [pow(point, e, p) for e in range(ell)] if ell > 1 else None
        self._cache: dict = {}
        self._den_inv: dict = {}

    def residue(self, raw) -> int:
        key = self.ctx.key(raw)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        p = self.p
        acc = 0
        for e, c in _coords(self.ctx, raw):
            den = int(c.denominator)
            dinv = self._den_inv.get(den)
            if dinv is None:
                dinv = pow(den, -1, p)
                self._den_inv[den] = dinv
            t = (int(c.numerator) % p) * dinv
            if self._zpow is not None:
                t *= self._zpow[e]
            acc += t % p
        acc %= p
        self._cache[key] = acc
        return acc

    def matrix(self, rows, cols, raws, shape):
        data = np.fromiter((self.residue(v) for v in raws),
                           dtype=np.int64, count=len(raws))
        m = sparse.coo_matrix((data, (rows, cols)), shape=shape)
        return m.tocsr()


def _coo_mult(H):
    rows, cols, raws = [], [], []
    n = H.dim
    for i in range(n):
        for j in range(n):
            col = i * n + j
            for k, v in H.pair_product(i, j).items():
                rows.append(k)
                cols.append(col)
                raws.append(v)
    return np.array(rows), np.array(cols), raws


def _coo_comult(H):
    rows, cols, raws = [], [], []
    n = H.dim
    for i in range(n):
        for (j, k), v in H.comult[i].items():
            rows.append(j * n + k)
            cols.append(i)
            raws.append(v)
    return np.array(rows), np.array(cols), raws


def _coo_antipode(H):
    rows, cols, raws = [], [], []
    for i in range(H.dim):
        for j, v in H.antipode[i].items():
            rows.append(j)
            cols.append(i)
            raws.append(v)
    return np.array(rows), np.array(cols), raws


def _nonzero_mod(mat, p) -> bool:
    return bool(np.any(mat.data % p))


def _reshape(mat, shape):
    return mat.tocoo().reshape(shape).tocsr()


def _remap(mat, rowf, colf, shape):
    """Rebuild a sparse matrix with index-remapped entries."""
    c = mat.tocoo()
    return sparse.coo_matrix((c.data, (rowf(c.row, c.col), colf(c.row, c.col))),
                             shape=shape).tocsr()


def _assoc_channel(A, p, n) -> bool:
    Acsc = A.tocsc()
    A3 = _reshape(A, (n * n, n))
    for z in range(n):
        Rz = Acsc[:, z::n].tocsr()
        lhs = Rz @ A
        lhs.data %= p
        lhs = _reshape(lhs, (n * n, n))
        rhs = A3 @ Rz
        rhs.data %= p
        if _nonzero_mod(lhs - rhs, p):
            return False
    return True


def _bialgebra_channel(A, D, p, n) -> bool:
    n2 = n * n
    Ac, Dc = A.tocoo(), D.tocoo()
    u, s = Ac.col // n, Ac.col % n
    du, dv = Dc.row // n, Dc.row % n
    A1 = sparse.coo_matrix((Ac.data, (Ac.row * n + s, u)), (n2, n)).tocsr()
    A2 = sparse.coo_matrix((Ac.data, (Ac.row * n + u, s)), (n2, n)).tocsr()
    D1 = sparse.coo_matrix((Dc.data, (du, dv * n + Dc.col)), (n, n2)).tocsr()
    D2 = sparse.coo_matrix((Dc.data, (dv, du * n + Dc.col)), (n, n2)).tocsr()
    F = A1 @ D1  # [(a,s), (v,i)]
    F.data %= p
    G = A2 @ D2  # [(b,v), (s,j)]
    G.data %= p
    F2 = _remap(F, lambda r, c: (r % n) * n + c // n,
                lambda r, c: (r // n) * n + c % n, (n2, n2))  # [(s,v),(a,i)]
    G2 = _remap(G, lambda r, c: (c // n) * n + r % n,
                lambda r, c: (r // n) * n + c % n, (n2, n2))  # [(s,v),(b,j)]
    rhs = F2.T.tocsr() @ G2  # [(a,i), (b,j)]
    rhs.data %= p
    lhs = D @ A  # [(a,b), (i,j)]
    lhs.data %= p
    lhs = _remap(lhs, lambda r, c: (r // n) * n + c // n,
                 lambda r, c: (r % n) * n + c % n, (n2, n2))
    return not _nonzero_mod(lhs - rhs, p)


def _antihom_channel(A, D, S, p, n) -> bool:
    n2 = n * n
    # S(xy) = S(y) S(x)
    lhs = S @ A
    lhs.data %= p
    T = _reshape(A, (n2, n)) @ S  # [(k,u), i]
    T.data %= p
    T2 = _remap(T, lambda r, c: r % n,
                lambda r, c: (r // n) * n + c, (n, n2))  # [u, (k,i)]
    R = S.T.tocsr() @ T2  # [j, (k,i)]
    R.data %= p
    rhs = _remap(R, lambda r, c: c // n,
                 lambda r, c: (c % n) * n + r, (n, n2))  # [k, (i,j)]
    if _nonzero_mod(lhs - rhs, p):
        return False
    # Delta(S x) = (S (x) S)(Delta^op x)
    lhs2 = D @ S
    lhs2.data %= p
    D1 = _remap(D, lambda r, c: r % n,
                lambda r, c: (r // n) * n + c, (n, n2))  # [k, (j,i)]
    U = S @ D1  # [a, (j,i)]
    U.data %= p
    U2 = _remap(U, lambda r, c: c // n,
                lambda r, c: r * n + c % n, (n, n2))  # [j, (a,i)]
    V = S @ U2  # [b, (a,i)]
    V.data %= p
    rhs2 = _remap(V, lambda r, c: (c // n) * n + r,
                  lambda r, c: c % n, (n2, n))  # [(a,b), i]
    return not _nonzero_mod(lhs2 - rhs2, p)


def heavy_checks(H) -> dict | None:
    """Modular verdicts for the three expensive axioms, or None when the
    scalar field or dimension is outside what this backend handles."""
    ctx = H.ctx
    n = H.dim
    if not supported(ctx) or n > _MAX_DIM:
        return None
    ell = ctx.ell if isinstance(ctx, CyclotomicField) else 1

    mr, mc, mraw = _coo_mult(H)
    dr, dc, draw = _coo_comult(H)
    sr, sc, sraw = _coo_antipode(H)
    Dm, Dd, Ds = (_den_lcm(ctx, mraw), _den_lcm(ctx, draw),
                  _den_lcm(ctx, sraw))
    Nm, Nd, Ns = (_max_norm(ctx, mraw, Dm), _max_norm(ctx, draw, Dd),
                  _max_norm(ctx, sraw, Ds))
    # Generous 1-norm bounds on the cleared-denominator difference tensors.
    bounds = {
        "associativity": 16 * n * n * Nm * Nm,
        "bialgebra": 16 * n * n * max(Dm * Dd * Nm * Nd, Nm * Nm * Nd * Nd),
        "antihom": 16 * n * Nm * Nd * max(Ds * Ns, Ns * Ns),
    }
    need = {k: (2 * b).bit_length() + 1 for k, b in bounds.items()}
    primes = _primes_for(max(need.values()), ell, Dm * Dd * Ds)

    ok = {"associativity": True, "bialgebra": True, "antihom": True}
    bits = 0
    for p in primes:
        todo = [k for k, nb in need.items() if ok[k] and bits < nb]
        if not todo:
            break
        for point in _eval_points(p, ell):
            ch = _Channel(ctx, p, point)
            A = ch.matrix(mr, mc, mraw, (n, n * n))
            if "associativity" in todo and ok["associativity"]:
                ok["associativity"] = _assoc_channel(A, p, n)
            if ("bialgebra" in todo or "antihom" in todo):
                D = ch.matrix(dr, dc, draw, (n * n, n))
                if "bialgebra" in todo and ok["bialgebra"]:
                    ok["bialgebra"] = _bialgebra_channel(A, D, p, n)
                if "antihom" in todo and ok["antihom"]:
                    S = ch.matrix(sr, sc, sraw, (n, n))
                    ok["antihom"] = _antihom_channel(A, D, S, p, n)
        bits += p.bit_length() - 1
    return ok
