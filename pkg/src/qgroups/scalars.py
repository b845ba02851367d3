"""The exact coefficient tower.

Three field backends share one interface:

* ``FractionField`` -- multivariate rational functions over the rationals
  in declared formal variables (q, z, u, ...), backed by sympy's sparse
  fraction fields with gmpy2 ground arithmetic.
* ``RationalField`` -- plain exact rationals.
* ``CyclotomicField`` -- Q(zeta_ell) for odd ell >= 3, in the power basis
  modulo the ell-th cyclotomic polynomial.

Contexts operate on *raw* values (whatever the backend finds fastest); the
``Scalar`` wrapper gives them operator syntax for user-facing code.  On top
of the fields sit the quantum integers [k]_q, q-factorials and q-binomials,
and ``TruncatedSeries`` -- Laurent-style truncated expansions in negative
powers of an additive variable with coefficients in an arbitrary ring.

All values are immutable after construction and every operation is pure.
"""
from __future__ import annotations

import dataclasses
from fractions import Fraction

from gmpy2 import mpq
from sympy.polys.domains import QQ

MULTIPLICATIVE = "multiplicative"
ADDITIVE = "additive"


@dataclasses.dataclass(frozen=True)
class Variable:
    """A formal variable.  Multiplicative variables (q, z) are invertible
    generators; additive ones (u, v) are expanded in negative powers by
    TruncatedSeries."""
    name: str
    kind: str = MULTIPLICATIVE

    def __post_init__(self):
        if self.kind not in (MULTIPLICATIVE, ADDITIVE):
            raise ValueError(f"unknown variable kind {self.kind!r}")
        if not self.name.isidentifier():
            raise ValueError(f"bad variable name {self.name!r}")


class FieldError(ValueError):
    pass


class FieldContext:
    """Interface for exact-field backends.

    Raw values are backend specific; use scalar() to wrap them.  Subclasses
    must provide zero/one and the raw arithmetic below.
    """

    name = "field"

    def scalar(self, x) -> "Scalar":
        return Scalar(self, self.coerce(x))

    def coerce(self, x):
        if isinstance(x, Scalar):
            if x.ctx is not self:
                raise FieldError("mixed-field operands")
            return x.raw
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, (Fraction, mpq)):
            return self.from_fraction(int(x.numerator), int(x.denominator))
        return x

    def gen(self, name: str) -> "Scalar":
        return Scalar(self, self.gen_raw(name))

    # raw-level interface ------------------------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        if self.is_zero(b):
            raise ZeroDivisionError("scalar division by zero")
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        return self.is_zero(self.sub(a, b))

    def from_int(self, n: int):
        raise NotImplementedError

    def from_fraction(self, p: int, q: int):
        return self.div(self.from_int(p), self.from_int(q))

    def gen_raw(self, name: str):
        raise FieldError(f"unknown generator {name!r}")

    def key(self, a):
        """A hashable canonical key for a raw value."""
        raise NotImplementedError

    def to_str(self, a) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        return _parse_scalar(self, text)


class Scalar:
    """A field element with operator syntax.  Equality is canonical-form
    equality; mixing elements of different contexts raises."""

    __slots__ = ("ctx", "raw")

    def __init__(self, ctx: FieldContext, raw):
        self.ctx = ctx
        self.raw = raw

    def _raw(self, other):
        return self.ctx.coerce(other)

    def __add__(self, other):
        return Scalar(self.ctx, self.ctx.add(self.raw, self._raw(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.ctx, self.ctx.sub(self.raw, self._raw(other)))

    def __rsub__(self, other):
        return Scalar(self.ctx, self.ctx.sub(self._raw(other), self.raw))

    def __neg__(self):
        return Scalar(self.ctx, self.ctx.neg(self.raw))

    def __mul__(self, other):
        return Scalar(self.ctx, self.ctx.mul(self.raw, self._raw(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.ctx, self.ctx.div(self.raw, self._raw(other)))

    def __rtruediv__(self, other):
        return Scalar(self.ctx, self.ctx.div(self._raw(other), self.raw))

    def __pow__(self, n: int):
        return Scalar(self.ctx, self.ctx.pow(self.raw, n))

    def inv(self):
        if self.ctx.is_zero(self.raw):
            raise ZeroDivisionError("scalar division by zero")
        return Scalar(self.ctx, self.ctx.inv(self.raw))

    def is_zero(self) -> bool:
        return self.ctx.is_zero(self.raw)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            if other.ctx is not self.ctx:
                return NotImplemented
            return self.ctx.eq(self.raw, other.raw)
        if isinstance(other, (int, Fraction)):
            return self.ctx.eq(self.raw, self.ctx.coerce(other))
        return NotImplemented

    def __hash__(self):
        return hash(self.ctx.key(self.raw))

    def __str__(self):
        return self.ctx.to_str(self.raw)

    def __repr__(self):
        return f"Scalar({self})"


# ---------------------------------------------------------------------------
# rationals


class RationalField(FieldContext):
    name = "QQ"

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)
        self.variables: tuple[Variable, ...] = ()

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("scalar division by zero")
        return 1 / a

    def is_zero(self, a):
        return not a

    def eq(self, a, b):
        return a == b

    def from_int(self, n):
        return mpq(n)

    def from_fraction(self, p, q):
        return mpq(p, q)

    def key(self, a):
        return (a.numerator, a.denominator)

    def to_str(self, a):
        return _rat_str(a)


def _rat_str(c) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# multivariate rational functions


class FractionField(FieldContext):
    """Q(x1, ..., xn) as reduced fractions of multivariate polynomials.

    Canonical form divides numerator and denominator by the graded-lex
    leading coefficient of the denominator, so string equality of to_str
    output coincides with field equality.
    """

    def __init__(self, *variables):
        vs = []
        for v in variables:
            vs.append(v if isinstance(v, Variable) else Variable(v))
        names = [v.name for v in vs]
        if len(set(names)) != len(names):
            raise FieldError("variable names must be unique")
        if not names:
            raise FieldError("FractionField needs at least one variable")
        self.variables = tuple(vs)
        self._field = QQ.frac_field(*names)
        self._gens = dict(zip(names, self._field.gens))
        self.zero = self._field.zero
        self.one = self._field.one
        self.name = "QQ(" + ",".join(names) + ")"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("scalar division by zero")
        return a ** -1

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("scalar division by zero")
        return a / b

    def is_zero(self, a):
        return not a

    def eq(self, a, b):
        return a == b

    def from_int(self, n):
        return self._field(n)

    def from_fraction(self, p, q):
        return self._field(QQ(p, q))

    def gen_raw(self, name):
        try:
            return self._gens[name]
        except KeyError:
            raise FieldError(f"unknown generator {name!r}") from None

    def key(self, a):
        num, den = self._normalized_pair(a)
        return (tuple(num), tuple(den))

    def _normalized_pair(self, a):
        """(numer terms, denom terms) in graded-lex descending order with
        the denominator's leading coefficient scaled to 1."""
        num = sorted(a.numer.terms(), key=_grlex_key, reverse=True)
        den = sorted(a.denom.terms(), key=_grlex_key, reverse=True)
        if den:
            lead = den[0][1]
            if lead != 1:
                num = [(m, c / lead) for m, c in num]
                den = [(m, c / lead) for m, c in den]
        return num, den

    def to_str(self, a):
        num, den = self._normalized_pair(a)
        names = [v.name for v in self.variables]
        ns = _poly_str(num, names)
        if len(den) == 1 and not any(den[0][0]) and den[0][1] == 1:
            return ns
        return f"({ns})/({_poly_str(den, names)})"


def _grlex_key(term):
    monom, _ = term
    return (sum(monom), monom)


def _poly_str(terms, names) -> str:
    if not terms:
        return "0"
    parts = []
    for monom, coeff in terms:
        factors = []
        for name, e in zip(names, monom):
            if e == 1:
                factors.append(name)
            elif e != 0:
                factors.append(f"{name}^{e}")
        body = "*".join(factors)
        c = abs(coeff)
        if not body:
            text = _rat_str(c)
        elif c == 1:
            text = body
        else:
            text = f"{_rat_str(c)}*{body}"
        if not parts:
            parts.append(text if coeff > 0 else "-" + text)
        else:
            parts.append((" + " if coeff > 0 else " - ") + text)
    return "".join(parts)


# ---------------------------------------------------------------------------
# cyclotomic fields


class CyclotomicField(FieldContext):
    """Q(zeta_ell) for an odd prime ell.

    Raw values are dicts {exponent mod ell: mpq coefficient} using the
    redundant spanning set 1, zeta, ..., zeta^(ell-1) subject to the single
    relation sum zeta^k = 0.  The canonical representative has no zeta^(ell-1)
    term (subtracting c[ell-1] from every coordinate costs nothing and makes
    equality a dict comparison), which is exactly the power basis modulo the
    cyclotomic polynomial since deg Phi_ell = ell - 1 for prime ell and the
    quotient by the full sum relation is what we reduce in either way.
    Multiplying monomials only adds exponents mod ell, which keeps the zoo's
    structure-constant arithmetic near-monomial and fast.
    """

    def __init__(self, ell: int):
        if ell < 3 or ell % 2 == 0:
            raise FieldError("cyclotomic context requires odd ell >= 3")
        if any(ell % d == 0 for d in range(3, int(ell ** 0.5) + 1, 2)):
            # the ell-1 power basis argument above needs ell prime
            raise FieldError("cyclotomic context requires prime ell")
        self.ell = ell
        self.zero = {}
        self.one = {0: mpq(1)}
        self.variables = (Variable("zeta"),)
        self.name = f"QQ(zeta_{ell})"
        self._inv_cache: dict = {}

    def zeta(self, k: int = 1) -> Scalar:
        return Scalar(self, self._canon({k % self.ell: mpq(1)}))

    def _canon(self, d: dict) -> dict:
        t = d.get(self.ell - 1)
        if t is None:
            return {k: c for k, c in d.items() if c}
        out = {}
        for k in range(self.ell - 1):
            c = d.get(k, 0) - t
            if c:
                out[k] = c
        return out

    def add(self, a, b):
        if not b:
            return a
        if not a:
            return b
        out = dict(a)
        for k, c in b.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return out

    def neg(self, a):
        return {k: -c for k, c in a.items()}

    def mul(self, a, b):
        if not a or not b:
            return {}
        ell = self.ell
        out = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                if k >= ell:
                    k -= ell
                s = out.get(k, 0) + ca * cb
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        if ell - 1 in out:
            return self._canon(out)
        return out

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("scalar division by zero")
        ck = self.key(a)
        hit = self._inv_cache.get(ck)
        if hit is not None:
            return hit
        ell = self.ell
        # extended Euclid in QQ[x] against Phi_ell = 1 + x + ... + x^(ell-1)
        phi = [mpq(1)] * ell
        poly = [mpq(0)] * (ell - 1)
        for k, c in a.items():
            poly[k] = c
        g, s = _poly_ext_inverse(poly, phi)
        if len(g) != 1:
            raise FieldError("element not invertible modulo Phi_ell")
        lead = g[0]
        out = {k: c / lead for k, c in enumerate(s) if c}
        out = self._canon(out)
        self._inv_cache[ck] = out
        return out

    def is_zero(self, a):
        return not a

    def eq(self, a, b):
        return a == b

    def from_int(self, n):
        return {0: mpq(n)} if n else {}

    def from_fraction(self, p, q):
        return {0: mpq(p, q)} if p else {}

    def gen_raw(self, name):
        if name == "zeta":
            return {1: mpq(1)}
        raise FieldError(f"unknown generator {name!r}")

    def key(self, a):
        return tuple(sorted((k, c.numerator, c.denominator) for k, c in a.items()))

    def to_str(self, a):
        terms = [((k,), c) for k, c in sorted(a.items(), reverse=True)]
        return _poly_str(terms, ["zeta"])


def _poly_trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = list(a)
    q = [mpq(0)] * max(len(a) - len(b) + 1, 0)
    inv_lead = 1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        f = a[i + len(b) - 1] * inv_lead
        if f:
            q[i] = f
            for j, bc in enumerate(b):
                a[i + j] -= f * bc
    return q, _poly_trim(a)


def _poly_ext_inverse(a, m):
    """gcd g and s with s*a = g mod m, for a, m coefficient lists over mpq."""
    r0, r1 = list(m), _poly_trim(list(a))
    s0, s1 = [mpq(0)], [mpq(1)]
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        qs = _poly_mul(q, s1)
        s0, s1 = s1, _poly_trim([x - y for x, y in
                                 zip(s0 + [mpq(0)] * max(0, len(qs) - len(s0)),
                                     qs + [mpq(0)] * max(0, len(s0) - len(qs)))])
    return r0, s0


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return _poly_trim(out)


# ---------------------------------------------------------------------------
# quantum combinatorics


def q_int(k: int, q: Scalar) -> Scalar:
    """[k]_q = (q^k - q^-k)/(q - q^-1), expanded as the Laurent polynomial
    q^(k-1) + q^(k-3) + ... + q^(1-k)."""
    if k < 0:
        raise ValueError("q_int requires k >= 0")
    ctx = q.ctx
    total = ctx.zero
    for i in range(k):
        total = ctx.add(total, ctx.pow(q.raw, k - 1 - 2 * i))
    return Scalar(ctx, total)


def q_factorial(k: int, q: Scalar) -> Scalar:
    if k < 0:
        raise ValueError("q_factorial requires k >= 0")
    out = q.ctx.scalar(1)
    for i in range(1, k + 1):
        out = out * q_int(i, q)
    return out


def q_binomial(n: int, k: int, q: Scalar) -> Scalar:
    if not 0 <= k <= n:
        raise ValueError("q_binomial requires 0 <= k <= n")
    # product form keeps intermediate values small and is division-safe
    out = q.ctx.scalar(1)
    for i in range(1, k + 1):
        out = out * q_int(n - k + i, q) / q_int(i, q)
    return out


# ---------------------------------------------------------------------------
# truncated series


class TruncatedSeries:
    """A truncated expansion c0*u^shift + c1*u^(shift-1) + ... + cN*u^(shift-N)
    with coefficients in an arbitrary ring (a FieldContext, or a matrix ring).

    The series asserts that every power above u^shift vanishes; order N is the
    window depth.  Arithmetic tracks the window of exactly-known coefficients.
    """

    __slots__ = ("ring", "var", "shift", "coeffs")

    def __init__(self, ring, var: str, shift: int, coeffs):
        self.ring = ring
        self.var = var
        coeffs = list(coeffs)
        # normalize: drop known-zero leading coefficients
        while len(coeffs) > 1 and ring.is_zero(coeffs[0]):
            coeffs.pop(0)
            shift -= 1
        self.shift = shift
        self.coeffs = tuple(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, ring, var, value, order):
        return cls(ring, var, 0, [value] + [ring.zero] * order)

    @classmethod
    def zero(cls, ring, var, order):
        return cls(ring, var, 0, [ring.zero] * (order + 1))

    def coefficient(self, power: int):
        """Coefficient of u^power; raises if the power is below the window."""
        if power > self.shift:
            return self.ring.zero
        idx = self.shift - power
        if idx >= len(self.coeffs):
            raise ValueError(f"u^{power} is below the truncation window")
        return self.coeffs[idx]

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(c) for c in self.coeffs)

    def _check(self, other):
        if self.ring is not other.ring or self.var != other.var:
            raise FieldError("mixed series contexts")

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(self.ring, self.var,
                                             self.ring.coerce_ring(other),
                                             self.order)
        self._check(other)
        top = max(self.shift, other.shift)
        bottom = max(self.shift - self.order, other.shift - other.order)
        if bottom > top:
            bottom = top
        ring = self.ring
        out = []
        for p in range(top, bottom - 1, -1):
            a = self.coeffs[self.shift - p] if 0 <= self.shift - p < len(self.coeffs) else ring.zero
            b = other.coeffs[other.shift - p] if 0 <= other.shift - p < len(other.coeffs) else ring.zero
            out.append(ring.add(a, b))
        return TruncatedSeries(ring, self.var, top, out)

    def __neg__(self):
        return TruncatedSeries(self.ring, self.var, self.shift,
                               [self.ring.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(self.ring, self.var,
                                             self.ring.coerce_ring(other),
                                             self.order)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            c = self.ring.coerce_ring(other)
            return TruncatedSeries(self.ring, self.var, self.shift,
                                   [self.ring.mul(x, c) for x in self.coeffs])
        self._check(other)
        ring = self.ring
        n = min(self.order, other.order)
        out = [ring.zero] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if ring.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                if i + j > n:
                    break
                out[i + j] = ring.add(out[i + j], ring.mul(a, b))
        return TruncatedSeries(ring, self.var, self.shift + other.shift, out)

    def lmul(self, c):
        """Left-scale by a ring element (matters for operator coefficients)."""
        c = self.ring.coerce_ring(c)
        return TruncatedSeries(self.ring, self.var, self.shift,
                               [self.ring.mul(c, x) for x in self.coeffs])

    def invert(self) -> "TruncatedSeries":
        ring = self.ring
        lead = self.coeffs[0]
        if ring.is_zero(lead):
            raise FieldError("series has no invertible leading term")
        lead_inv = ring.inv(lead)
        n = self.order
        # self = lead*u^shift * (1 + t); inverse via geometric series in t
        tail = [ring.mul(lead_inv, c) for c in self.coeffs[1:]]
        out = [ring.zero] * (n + 1)
        out[0] = ring.one
        # out = sum_j (-t)^j computed by Horner-style recursion:
        # out_k = -(sum_{i=1..k} t_i out_{k-i})
        for k in range(1, n + 1):
            acc = ring.zero
            for i in range(1, min(k, len(tail)) + 1):
                acc = ring.add(acc, ring.mul(tail[i - 1], out[k - i]))
            out[k] = ring.neg(acc)
        out = [ring.mul(c, lead_inv) for c in out]
        return TruncatedSeries(ring, self.var, -self.shift, out)

    def shift_argument(self, c: int) -> "TruncatedSeries":
        """Substitute u -> u + c, e.g. t(u) -> t(u+1) with
        (u+c)^-k = u^-k - kc*u^(-k-1) + ...  Exact on the same window."""
        ring = self.ring
        top = self.shift
        bottom = self.shift - self.order
        acc = {p: ring.zero for p in range(bottom, top + 1)}
        for idx, coeff in enumerate(self.coeffs):
            if ring.is_zero(coeff):
                continue
            p = self.shift - idx
            if p >= 0:
                for j in range(p + 1):
                    pw = p - j
                    if pw < bottom:
                        continue
                    w = _binom(p, j) * (c ** j)
                    acc[pw] = ring.add(acc[pw], ring.mul(coeff, ring.from_int(w)))
            else:
                k = -p
                j = 0
                while -k - j >= bottom:
                    w = ((-c) ** j) * _binom(k + j - 1, j)
                    acc[-k - j] = ring.add(acc[-k - j], ring.mul(coeff, ring.from_int(w)))
                    j += 1
        coeffs = [acc[p] for p in range(top, bottom - 1, -1)]
        return TruncatedSeries(ring, self.var, top, coeffs)

    def eq(self, other) -> bool:
        """Equality on the intersection of the two known windows."""
        self._check(other)
        top = max(self.shift, other.shift)
        bottom = max(self.shift - self.order, other.shift - other.order)
        ring = self.ring
        for p in range(top, bottom - 1, -1):
            a = self.coeffs[self.shift - p] if 0 <= self.shift - p < len(self.coeffs) else ring.zero
            b = other.coeffs[other.shift - p] if 0 <= other.shift - p < len(other.coeffs) else ring.zero
            if not ring.eq(a, b):
                return False
        return True

    def __str__(self):
        parts = []
        for idx, c in enumerate(self.coeffs):
            if self.ring.is_zero(c):
                continue
            p = self.shift - idx
            u = "1" if p == 0 else (self.var if p == 1 else f"{self.var}^{p}")
            parts.append(f"({self.ring.to_str(c)})*{u}")
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


def _binom(n, k):
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


# FieldContext doubles as the coefficient ring of scalar-valued series.
def _ctx_coerce_ring(self, x):
    return self.coerce(x)


FieldContext.coerce_ring = _ctx_coerce_ring


# ---------------------------------------------------------------------------
# canonical-format parser


class _Tokens:
    def __init__(self, text):
        self.toks = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.toks.append(("num", int(text[i:j])))
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.toks.append(("name", text[i:j]))
                i = j
            elif ch in "+-*/^()":
                self.toks.append((ch, ch))
                i += 1
            else:
                raise FieldError(f"bad character {ch!r} in scalar text")
        self.pos = 0

    def peek(self):
        return self.toks[self.pos][0] if self.pos < len(self.toks) else None

    def next(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok


def _parse_scalar(ctx: FieldContext, text: str):
    toks = _Tokens(text)
    value = _parse_sum(ctx, toks)
    if toks.peek() is not None:
        raise FieldError(f"trailing input in scalar text {text!r}")
    return value


def _parse_sum(ctx, toks):
    value = _parse_product(ctx, toks)
    while toks.peek() in ("+", "-"):
        op, _ = toks.next()
        rhs = _parse_product(ctx, toks)
        value = ctx.add(value, rhs) if op == "+" else ctx.sub(value, rhs)
    return value


def _parse_product(ctx, toks):
    value = _parse_factor(ctx, toks)
    while toks.peek() in ("*", "/"):
        op, _ = toks.next()
        rhs = _parse_factor(ctx, toks)
        value = ctx.mul(value, rhs) if op == "*" else ctx.div(value, rhs)
    return value


def _parse_factor(ctx, toks):
    sign = 1
    while toks.peek() == "-":
        toks.next()
        sign = -sign
    kind = toks.peek()
    if kind == "(":
        toks.next()
        value = _parse_sum(ctx, toks)
        if toks.peek() != ")":
            raise FieldError("unbalanced parentheses in scalar text")
        toks.next()
    elif kind == "num":
        value = ctx.from_int(toks.next()[1])
    elif kind == "name":
        value = ctx.gen_raw(toks.next()[1])
    else:
        raise FieldError("malformed scalar text")
    if toks.peek() == "^":
        toks.next()
        esign = 1
        if toks.peek() == "-":
            toks.next()
            esign = -1
        elif toks.peek() == "(":
            toks.next()
            if toks.peek() == "-":
                toks.next()
                esign = -1
            exp = toks.next()
            if exp[0] != "num" or toks.peek() != ")":
                raise FieldError("malformed exponent")
            toks.next()
            return ctx.pow(value, esign * exp[1]) if sign == 1 else ctx.neg(ctx.pow(value, esign * exp[1]))
        exp = toks.next()
        if exp[0] != "num":
            raise FieldError("malformed exponent")
        value = ctx.pow(value, esign * exp[1])
    return value if sign == 1 else ctx.neg(value)
