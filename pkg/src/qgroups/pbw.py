"""PBW normal forms for quantum sl2.

Elements are finite maps (a, b, c) -> coefficient representing sums of
normal-ordered monomials K^a f^b e^c.  Straightening uses only the defining
relations, applied one step at a time:

    K e K^-1 = q^2 e,   K f K^-1 = q^-2 f,   e f - f e = (K - K^-1)/(q - q^-1).

With ell set, the algebra is truncated to the small quantum group:
K^ell = 1 and e^ell = f^ell = 0, so exponents live in [0, ell).
"""
from __future__ import annotations

from .scalars import FieldContext


class PBWAlgebra:
    """Quantum sl2 over an exact field, in the basis K^a f^b e^c.

    Without ell, K-exponents range over all integers and f/e exponents over
    the non-negative integers.  With ell (odd), exponents reduce mod ell and
    monomials with f- or e-exponent >= ell vanish.
    """

    def __init__(self, ctx: FieldContext, q_raw, ell: int | None = None):
        self.ctx = ctx
        self.q = q_raw
        self.ell = ell
        qs = ctx.scalar(q_raw)
        self._denom_inv = (qs - qs.inv()).inv().raw  # 1/(q - q^-1)
        self._qpow_cache: dict[int, object] = {}
        self._ef1_cache: dict[int, dict] = {}
        self._mono_cache: dict[tuple, dict] = {}

    # -- helpers ---------------------------------------------------------

    def qpow(self, n: int):
        hit = self._qpow_cache.get(n)
        if hit is None:
            hit = self.ctx.pow(self.q, n)
            self._qpow_cache[n] = hit
        return hit

    def _key(self, a: int, b: int, c: int):
        if self.ell is not None:
            if b >= self.ell or c >= self.ell:
                return None
            a %= self.ell
        return (a, b, c)

    def monomial(self, a=0, b=0, c=0, coeff=1) -> dict:
        key = self._key(a, b, c)
        if key is None:
            return {}
        raw = self.ctx.coerce(coeff)
        return {} if self.ctx.is_zero(raw) else {key: raw}

    def one(self) -> dict:
        return {(0, 0, 0): self.ctx.one}

    def add_into(self, acc: dict, terms: dict, factor=None) -> None:
        ctx = self.ctx
        for key, c in terms.items():
            if factor is not None:
                c = ctx.mul(factor, c)
            s = ctx.add(acc.get(key, ctx.zero), c)
            if ctx.is_zero(s):
                acc.pop(key, None)
            else:
                acc[key] = s

    def add(self, x: dict, y: dict) -> dict:
        out = dict(x)
        self.add_into(out, y)
        return out

    def scale(self, factor, x: dict) -> dict:
        ctx = self.ctx
        out = {}
        for key, c in x.items():
            v = ctx.mul(factor, c)
            if not ctx.is_zero(v):
                out[key] = v
        return out

    def is_zero(self, x: dict) -> bool:
        return not x

    def eq(self, x: dict, y: dict) -> bool:
        return self.is_zero(self.add(x, self.scale(self.ctx.from_int(-1), y)))

    # -- straightening ---------------------------------------------------

    def _ef1(self, b: int) -> dict:
        """e * f^b in normal form."""
        hit = self._ef1_cache.get(b)
        if hit is not None:
            return hit
        ctx = self.ctx
        if b == 0:
            out = {(0, 0, 1): ctx.one}
        else:
            out = {}
            # e f^b = f (e f^(b-1)) + (K - K^-1)/(q - q^-1) f^(b-1)
            for (a, fb, ec), c in self._ef1(b - 1).items():
                # f K^a = q^(2a) K^a f
                key = self._key(a, fb + 1, ec)
                if key is not None:
                    self.add_into(out, {key: ctx.mul(self.qpow(2 * a), c)})
            # (K - K^-1)/(q - q^-1) f^(b-1): already normal ordered
            for sgn, kexp in ((1, 1), (-1, -1)):
                coeff = self._denom_inv
                if sgn < 0:
                    coeff = ctx.neg(coeff)
                key = self._key(kexp, b - 1, 0)
                if key is not None:
                    self.add_into(out, {key: coeff})
        self._ef1_cache[b] = out
        return out

    def _e_times(self, x: dict) -> dict:
        """e * x in normal form."""
        ctx = self.ctx
        out = {}
        for (a, b, c), coeff in x.items():
            # e K^a = q^(-2a) K^a e
            factor = ctx.mul(self.qpow(-2 * a), coeff)
            for (a2, b2, c2), c3 in self._ef1(b).items():
                key = self._key(a + a2, b2, c2 + c)
                if key is not None:
                    self.add_into(out, {key: ctx.mul(factor, c3)})
        return out

    def _mono_mul(self, m1: tuple, m2: tuple) -> dict:
        hit = self._mono_cache.get((m1, m2))
        if hit is not None:
            return hit
        a1, b1, c1 = m1
        a2, b2, c2 = m2
        ctx = self.ctx
        # K^a1 f^b1 e^c1 K^a2 f^b2 e^c2
        #   = q^(2 a2 (b1 - c1)) K^(a1+a2) f^b1 (e^c1 f^b2) e^c2
        mid = {(0, b2, 0): ctx.one}
        for _ in range(c1):
            mid = self._e_times(mid)
        out = {}
        front = self.qpow(2 * a2 * (b1 - c1))
        for (a, b, c), coeff in mid.items():
            # f^b1 K^a = q^(2 a b1) K^a f^b1
            key = self._key(a1 + a2 + a, b1 + b, c + c2)
            if key is None:
                continue
            v = ctx.mul(front, ctx.mul(self.qpow(2 * a * b1), coeff))
            self.add_into(out, {key: v})
        self._mono_cache[(m1, m2)] = out
        return out

    def multiply(self, x: dict, y: dict) -> dict:
        ctx = self.ctx
        out = {}
        for m1, c1 in x.items():
            for m2, c2 in y.items():
                self.add_into(out, self._mono_mul(m1, m2), ctx.mul(c1, c2))
        return out

    def power(self, x: dict, n: int) -> dict:
        out = self.one()
        for _ in range(n):
            out = self.multiply(out, x)
        return out
