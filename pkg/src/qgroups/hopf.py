"""Finite-dimensional Hopf algebras by structure constants.

A FiniteHopfData holds the five structure tensors of a Hopf algebra over an
exact field: multiplication, unit, comultiplication, counit and antipode.
Tensors are sparse (dicts keyed by basis indices), since every algebra in the
zoo is monomial or nearly so.  verify_hopf_axioms checks the full axiom list
by exhaustive exact tensor identities -- there is no sampling.

The zoo: group algebras and function algebras of finite groups, Taft
algebras, Nichols algebras (antipode solved from the axiom, not hard-coded),
and the Borel halves of the small quantum group.
"""
from __future__ import annotations

from gmpy2 import mpq

from .scalars import (CyclotomicField, FieldContext, FieldError,
                      FractionField, RationalField, Scalar, Variable)
from . import linalg


class HopfError(ValueError):
    pass


class FiniteHopfData:
    """A finite-dimensional Hopf algebra presented by structure constants.

    mult maps (i, j) to the sparse expansion of basis_i * basis_j; comult[i]
    maps (j, k) to the coefficient of basis_j (x) basis_k in Delta(basis_i);
    unit is the sparse expansion of 1; counit is a dense coefficient list;
    antipode[i] is the sparse expansion of S(basis_i).

    For large algebras mult may be given lazily as mult_fn(i, j); entries are
    cached on first use.
    """

    def __init__(self, ctx: FieldContext, basis, mult=None, unit=None,
                 comult=None, counit=None, antipode=None, mult_fn=None,
                 name=""):
        self.ctx = ctx
        self.basis = list(basis)
        self.dim = len(self.basis)
        self._mult = dict(mult) if mult is not None else {}
        self._mult_fn = mult_fn
        self.unit = dict(unit)
        self.comult = list(comult)
        self.counit = list(counit)
        self.antipode = list(antipode)
        self.name = name
        self._antipode_inv = None

    # -- structure access ------------------------------------------------

    def pair_product(self, i: int, j: int) -> dict:
        key = (i, j)
        hit = self._mult.get(key)
        if hit is None:
            if self._mult_fn is None:
                return {}
            hit = self._mult_fn(i, j)
            self._mult[key] = hit
        return hit

    def materialized_mult(self) -> dict:
        for i in range(self.dim):
            for j in range(self.dim):
                self.pair_product(i, j)
        return self._mult

    def antipode_inv(self) -> list:
        if self._antipode_inv is None:
            ctx = self.ctx
            n = self.dim
            smat = [[self.antipode[i].get(j, ctx.zero) for j in range(n)]
                    for i in range(n)]
            # S(e_i) = sum_j smat[i][j] e_j; invert as a linear map
            inv = linalg.inverse(ctx, linalg.transpose(smat))
            self._antipode_inv = [
                {i: inv[i][j] for i in range(n) if not ctx.is_zero(inv[i][j])}
                for j in range(n)]
        return self._antipode_inv

    # -- sparse element arithmetic ---------------------------------------

    def add_into(self, acc: dict, terms: dict, factor=None) -> None:
        ctx = self.ctx
        for k, c in terms.items():
            if factor is not None:
                c = ctx.mul(factor, c)
            s = ctx.add(acc.get(k, ctx.zero), c)
            if ctx.is_zero(s):
                acc.pop(k, None)
            else:
                acc[k] = s

    def vec(self, coeffs: dict) -> dict:
        ctx = self.ctx
        return {k: ctx.coerce(c) for k, c in coeffs.items()
                if not ctx.is_zero(ctx.coerce(c))}

    def mul_vec(self, x: dict, y: dict) -> dict:
        ctx = self.ctx
        out = {}
        for i, ci in x.items():
            for j, cj in y.items():
                self.add_into(out, self.pair_product(i, j), ctx.mul(ci, cj))
        return out

    def scale_vec(self, factor, x: dict) -> dict:
        ctx = self.ctx
        out = {}
        for k, c in x.items():
            v = ctx.mul(factor, c)
            if not ctx.is_zero(v):
                out[k] = v
        return out

    def sub_vec(self, x: dict, y: dict) -> dict:
        out = dict(x)
        self.add_into(out, y, self.ctx.from_int(-1))
        return out

    def vec_eq(self, x: dict, y: dict) -> bool:
        return not self.sub_vec(x, y)

    def counit_of(self, x: dict):
        ctx = self.ctx
        acc = ctx.zero
        for i, c in x.items():
            acc = ctx.add(acc, ctx.mul(c, self.counit[i]))
        return acc

    def coproduct_vec(self, x: dict) -> dict:
        out = {}
        for i, c in x.items():
            self.add_into(out, self.comult[i], c)
        return out

    def antipode_vec(self, x: dict) -> dict:
        out = {}
        for i, c in x.items():
            self.add_into(out, self.antipode[i], c)
        return out

    def antipode_inv_vec(self, x: dict) -> dict:
        out = {}
        sinv = self.antipode_inv()
        for i, c in x.items():
            self.add_into(out, sinv[i], c)
        return out

    def mult_tensor(self, x: dict, y: dict, arity: int) -> dict:
        """Product of two elements of H^(tensor arity), keys = index tuples."""
        ctx = self.ctx
        out = {}
        for ka, ca in x.items():
            for kb, cb in y.items():
                partial = {(): ctx.mul(ca, cb)}
                for pos in range(arity):
                    prod = self.pair_product(ka[pos], kb[pos])
                    if not prod:
                        partial = {}
                        break
                    nxt = {}
                    for pref, pc in partial.items():
                        for m, mc in prod.items():
                            key = pref + (m,)
                            v = ctx.mul(pc, mc)
                            s = ctx.add(nxt.get(key, ctx.zero), v)
                            if ctx.is_zero(s):
                                nxt.pop(key, None)
                            else:
                                nxt[key] = s
                    partial = nxt
                for key, v in partial.items():
                    s = ctx.add(out.get(key, ctx.zero), v)
                    if ctx.is_zero(s):
                        out.pop(key, None)
                    else:
                        out[key] = s
        return out

    def element_str(self, x: dict) -> str:
        if not x:
            return "0"
        parts = []
        for k in sorted(x):
            parts.append(f"({self.ctx.to_str(x[k])})*{self.basis[k]}")
        return " + ".join(parts)

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        ctx = self.ctx
        n = self.dim
        mult = [[[ctx.to_str(self.pair_product(i, j).get(k, ctx.zero))
                  for k in range(n)] for j in range(n)] for i in range(n)]
        comult = [[[ctx.to_str(self.comult[i].get((j, k), ctx.zero))
                    for k in range(n)] for j in range(n)] for i in range(n)]
        return {
            "dim": n,
            "basis": list(self.basis),
            "field": field_to_json(ctx),
            "mult": mult,
            "comult": comult,
            "unit": [ctx.to_str(self.unit.get(i, ctx.zero)) for i in range(n)],
            "counit": [ctx.to_str(c) for c in self.counit],
            "antipode": [[ctx.to_str(self.antipode[i].get(j, ctx.zero))
                          for j in range(n)] for i in range(n)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FiniteHopfData":
        ctx = field_from_json(data["field"])
        n = data["dim"]
        parse = ctx.parse

        def sparse_vec(strings):
            out = {}
            for i, s in enumerate(strings):
                v = parse(s)
                if not ctx.is_zero(v):
                    out[i] = v
            return out

        mult = {}
        for i in range(n):
            for j in range(n):
                entry = sparse_vec(data["mult"][i][j])
                if entry:
                    mult[(i, j)] = entry
        comult = []
        for i in range(n):
            entry = {}
            for j in range(n):
                for k in range(n):
                    v = parse(data["comult"][i][j][k])
                    if not ctx.is_zero(v):
                        entry[(j, k)] = v
            comult.append(entry)
        return cls(ctx, data["basis"], mult=mult,
                   unit=sparse_vec(data["unit"]),
                   comult=comult,
                   counit=[parse(s) for s in data["counit"]],
                   antipode=[sparse_vec(row) for row in data["antipode"]])


def field_to_json(ctx: FieldContext) -> dict:
    if isinstance(ctx, RationalField):
        return {"kind": "rational"}
    if isinstance(ctx, CyclotomicField):
        return {"kind": "cyclotomic", "ell": ctx.ell}
    if isinstance(ctx, FractionField):
        return {"kind": "fraction",
                "variables": [{"name": v.name, "kind": v.kind}
                              for v in ctx.variables]}
    raise HopfError(f"unserializable field context {ctx!r}")


def field_from_json(data: dict) -> FieldContext:
    kind = data["kind"]
    if kind == "rational":
        return RationalField()
    if kind == "cyclotomic":
        return CyclotomicField(data["ell"])
    if kind == "fraction":
        return FractionField(*(Variable(v["name"], v["kind"])
                               for v in data["variables"]))
    raise HopfError(f"unknown field kind {kind!r}")


# ---------------------------------------------------------------------------
# axiom verification


def verify_hopf_axioms(H: FiniteHopfData, method: str = "auto") -> dict:
    """Exhaustively check all Hopf axioms.  Returns {passed, failed_axioms}.

    method selects the backend for the three expensive identities:
    "dense" uses the dict-based tensor loops, "modular" the certified
    multi-prime backend, "auto" picks modular for large algebras over QQ
    or a cyclotomic field.
    """
    _check_dimensions(H)
    heavy = None
    if method == "modular" or (method == "auto" and H.dim >= 48):
        try:
            from . import fastcheck
            heavy = fastcheck.heavy_checks(H)
        except ImportError:
            heavy = None
    if heavy is None and method == "modular":
        raise HopfError("modular backend unavailable for this field")
    failed = []
    assoc_ok = (heavy["associativity"] if heavy is not None
                else _check_associativity(H))
    if not assoc_ok:
        failed.append("associativity")
    if not _check_unit(H):
        failed.append("unit")
    if not _check_coassociativity(H):
        failed.append("coassociativity")
    if not _check_counit(H):
        failed.append("counit")
    if heavy is not None:
        bial_ok = heavy["bialgebra"] and _check_bialgebra_scalar_parts(H)
    else:
        bial_ok = _check_bialgebra(H)
    if not bial_ok:
        failed.append("bialgebra")
    left, right = _check_antipode_axioms(H)
    if not left:
        failed.append("antipode-left")
    if not right:
        failed.append("antipode-right")
    try:
        H.antipode_inv()
    except FieldError:
        failed.append("antipode-invertible")
    antihom_ok = (heavy["antihom"] if heavy is not None
                  else _check_antipode_antihom(H))
    if not antihom_ok:
        failed.append("antipode-antihomomorphism")
    return {"passed": not failed, "failed_axioms": failed}


def _check_dimensions(H):
    n = H.dim
    for i, entry in enumerate(H.comult):
        for (j, k) in entry:
            if not (0 <= j < n and 0 <= k < n):
                raise HopfError(f"comult index out of range at basis {i}")
    if len(H.counit) != n or len(H.antipode) != n:
        raise HopfError("tensor dimensions inconsistent")


def _check_associativity(H) -> bool:
    n = H.dim
    ctx = H.ctx
    add, mul, is_zero, zero = ctx.add, ctx.mul, ctx.is_zero, ctx.zero
    rows = [[H.pair_product(i, j) for j in range(n)] for i in range(n)]
    for i in range(n):
        Pi = rows[i]
        for j in range(n):
            A = Pi[j]
            rows_j = rows[j]
            for k in range(n):
                acc: dict = {}
                for l, c in A.items():
                    for m, c2 in rows[l][k].items():
                        v = mul(c, c2)
                        s = acc.get(m)
                        acc[m] = v if s is None else add(s, v)
                for l, c in rows_j[k].items():
                    for m, c2 in Pi[l].items():
                        v = mul(c, c2)
                        s = acc.get(m)
                        if s is None:
                            acc[m] = ctx.neg(v)
                        else:
                            acc[m] = ctx.sub(s, v)
                for v in acc.values():
                    if not is_zero(v):
                        return False
    return True


def _check_unit(H) -> bool:
    for i in range(H.dim):
        x = {i: H.ctx.one}
        if not H.vec_eq(H.mul_vec(H.unit, x), x):
            return False
        if not H.vec_eq(H.mul_vec(x, H.unit), x):
            return False
    return True


def _check_coassociativity(H) -> bool:
    ctx = H.ctx
    for i in range(H.dim):
        acc: dict = {}
        for (j, k), c in H.comult[i].items():
            for (a, b), c2 in H.comult[j].items():
                key = (a, b, k)
                s = ctx.add(acc.get(key, ctx.zero), ctx.mul(c, c2))
                if ctx.is_zero(s):
                    acc.pop(key, None)
                else:
                    acc[key] = s
        for (j, k), c in H.comult[i].items():
            for (a, b), c2 in H.comult[k].items():
                key = (j, a, b)
                s = ctx.sub(acc.get(key, ctx.zero), ctx.mul(c, c2))
                if ctx.is_zero(s):
                    acc.pop(key, None)
                else:
                    acc[key] = s
        if acc:
            return False
    return True


def _check_counit(H) -> bool:
    ctx = H.ctx
    for i in range(H.dim):
        left: dict = {}
        right: dict = {}
        for (j, k), c in H.comult[i].items():
            H.add_into(left, {k: ctx.mul(H.counit[j], c)})
            H.add_into(right, {j: ctx.mul(H.counit[k], c)})
        x = {i: ctx.one}
        if not (H.vec_eq(left, x) and H.vec_eq(right, x)):
            return False
    return True


def _check_bialgebra(H) -> bool:
    ctx = H.ctx
    n = H.dim
    # Delta(1) = 1 (x) 1, eps(1) = 1
    du = H.coproduct_vec(H.unit)
    uu = {}
    for a, ca in H.unit.items():
        for b, cb in H.unit.items():
            uu[(a, b)] = ctx.mul(ca, cb)
    if not _tensor_eq(ctx, du, uu):
        return False
    if not ctx.eq(H.counit_of(H.unit), ctx.one):
        return False
    # multiplicativity of Delta and eps on all basis pairs
    for i in range(n):
        di = H.comult[i]
        for j in range(n):
            prod = H.pair_product(i, j)
            dprod = H.coproduct_vec(prod)
            dd = H.mult_tensor(di, H.comult[j], 2)
            if not _tensor_eq(ctx, dprod, dd):
                return False
            eps_prod = H.counit_of(prod)
            if not ctx.eq(eps_prod, ctx.mul(H.counit[i], H.counit[j])):
                return False
    return True


def _check_bialgebra_scalar_parts(H) -> bool:
    """The parts of the bialgebra axiom not covered by the modular
    backend: Delta(1) = 1 (x) 1, eps(1) = 1, and multiplicativity of eps."""
    ctx = H.ctx
    du = H.coproduct_vec(H.unit)
    uu = {}
    for a, ca in H.unit.items():
        for b, cb in H.unit.items():
            uu[(a, b)] = ctx.mul(ca, cb)
    if not _tensor_eq(ctx, du, uu):
        return False
    if not ctx.eq(H.counit_of(H.unit), ctx.one):
        return False
    for i in range(H.dim):
        ei = H.counit[i]
        for j in range(H.dim):
            eps_prod = H.counit_of(H.pair_product(i, j))
            if not ctx.eq(eps_prod, ctx.mul(ei, H.counit[j])):
                return False
    return True


def _tensor_eq(ctx, x: dict, y: dict) -> bool:
    diff = dict(x)
    for k, c in y.items():
        s = ctx.sub(diff.get(k, ctx.zero), c)
        if ctx.is_zero(s):
            diff.pop(k, None)
        else:
            diff[k] = s
    return not diff


def _check_antipode_axioms(H):
    ctx = H.ctx
    left_ok = right_ok = True
    for i in range(H.dim):
        target = H.scale_vec(H.counit[i], H.unit)
        left: dict = {}
        right: dict = {}
        for (j, k), c in H.comult[i].items():
            left = _acc_mul(H, left, H.antipode[j], {k: ctx.one}, c)
            right = _acc_mul(H, right, {j: ctx.one}, H.antipode[k], c)
        if not H.vec_eq(left, target):
            left_ok = False
        if not H.vec_eq(right, target):
            right_ok = False
        if not (left_ok or right_ok):
            break
    return left_ok, right_ok


def _acc_mul(H, acc, x, y, factor):
    term = H.mul_vec(x, y)
    H.add_into(acc, term, factor)
    return acc


def _check_antipode_antihom(H) -> bool:
    ctx = H.ctx
    n = H.dim
    for i in range(n):
        for j in range(n):
            lhs = H.antipode_vec(H.pair_product(i, j))
            rhs = H.mul_vec(H.antipode[j], H.antipode[i])
            if not H.vec_eq(lhs, rhs):
                return False
    # Delta(S x) = (S (x) S)(Delta^op x)
    for i in range(n):
        lhs = H.coproduct_vec(H.antipode[i])
        rhs: dict = {}
        for (j, k), c in H.comult[i].items():
            for a, ca in H.antipode[k].items():
                for b, cb in H.antipode[j].items():
                    key = (a, b)
                    v = ctx.mul(c, ctx.mul(ca, cb))
                    s = ctx.add(rhs.get(key, ctx.zero), v)
                    if ctx.is_zero(s):
                        rhs.pop(key, None)
                    else:
                        rhs[key] = s
        if not _tensor_eq(ctx, lhs, rhs):
            return False
    return True


def is_commutative(H) -> bool:
    return all(_tensor_eq(H.ctx, H.pair_product(i, j), H.pair_product(j, i))
               for i in range(H.dim) for j in range(H.dim))


def is_cocommutative(H) -> bool:
    for entry in H.comult:
        flipped = {(k, j): c for (j, k), c in entry.items()}
        if not _tensor_eq(H.ctx, entry, flipped):
            return False
    return True


def antipode_squared_is_identity(H) -> bool:
    ctx = H.ctx
    for i in range(H.dim):
        if not H.vec_eq(H.antipode_vec(H.antipode[i]), {i: ctx.one}):
            return False
    return True


# ---------------------------------------------------------------------------
# group utilities and the zoo


def group_table_cyclic(n: int):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def group_table_s3():
    """S3 as permutations of {0,1,2} in one-line notation order."""
    perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)]
    index = {p: i for i, p in enumerate(perms)}

    def compose(p, r):
        return tuple(p[r[i]] for i in range(3))

    return [[index[compose(p, r)] for r in perms] for p in perms]


def check_group_table(table) -> int:
    """Validate a group multiplication table; returns the identity index."""
    n = len(table)
    if any(len(row) != n for row in table):
        raise HopfError("non-square multiplication table")
    if any(not 0 <= x < n for row in table for x in row):
        raise HopfError("table entry out of range")
    identity = None
    for e in range(n):
        if all(table[e][j] == j and table[j][e] == j for j in range(n)):
            identity = e
            break
    if identity is None:
        raise HopfError("table has no identity element")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if table[table[i][j]][k] != table[i][table[j][k]]:
                    raise HopfError("table is not associative")
    for i in range(n):
        if not any(table[i][j] == identity for j in range(n)):
            raise HopfError("table has an element without inverse")
    return identity


def build_group_algebra(table, ctx=None, labels=None) -> FiniteHopfData:
    """The group algebra: basis g, Delta g = g (x) g, S g = g^-1."""
    identity = check_group_table(table)
    ctx = ctx or RationalField()
    n = len(table)
    labels = labels or [f"g{i}" for i in range(n)]
    one = ctx.one
    mult = {(i, j): {table[i][j]: one} for i in range(n) for j in range(n)}
    inv = [next(j for j in range(n) if table[i][j] == identity)
           for i in range(n)]
    return FiniteHopfData(
        ctx, labels, mult=mult, unit={identity: one},
        comult=[{(i, i): one} for i in range(n)],
        counit=[one] * n,
        antipode=[{inv[i]: one} for i in range(n)],
        name="group-algebra")


def build_function_algebra(table, ctx=None, labels=None) -> FiniteHopfData:
    """Functions on a finite group: delta-function basis, pointwise product,
    Delta(delta_g) = sum over ab=g of delta_a (x) delta_b."""
    identity = check_group_table(table)
    ctx = ctx or RationalField()
    n = len(table)
    labels = labels or [f"d{i}" for i in range(n)]
    one = ctx.one
    mult = {(i, i): {i: one} for i in range(n)}
    comult = []
    for g in range(n):
        entry = {}
        for a in range(n):
            for b in range(n):
                if table[a][b] == g:
                    entry[(a, b)] = one
        comult.append(entry)
    inv = [next(j for j in range(n) if table[i][j] == identity)
           for i in range(n)]
    return FiniteHopfData(
        ctx, labels, mult=mult, unit={i: one for i in range(n)},
        comult=comult,
        counit=[one if i == identity else ctx.zero for i in range(n)],
        antipode=[{inv[i]: one} for i in range(n)],
        name="function-algebra")


def _power_in(H, x, n):
    out = H.unit
    for _ in range(n):
        out = H.mul_vec(out, x)
    return out


def _tensor2_power(H, x2: dict, n: int) -> dict:
    out = {(a, b): H.ctx.mul(ca, cb)
           for a, ca in H.unit.items() for b, cb in H.unit.items()}
    for _ in range(n):
        out = H.mult_tensor(out, x2, 2)
    return out


def build_taft(n: int, q: Scalar) -> FiniteHopfData:
    """Taft algebra: g^n = 1, x^n = 0, g x = q x g, Delta x = x (x) 1 + g (x) x,
    on the basis g^i x^j; dimension n^2.  q must be a primitive n-th root."""
    ctx = q.ctx
    if not (q ** n == 1):
        raise HopfError("q must satisfy q^n = 1")
    for d in range(1, n):
        if q ** d == 1:
            raise HopfError("q must be a primitive n-th root of unity")
    labels = [f"g^{i}*x^{j}" for i in range(n) for j in range(n)]
    idx = lambda i, j: i * n + j
    one = ctx.one
    mult = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if j + l >= n:
                        continue
                    c = (q ** (-j * k)).raw
                    mult[(idx(i, j), idx(k, l))] = {idx((i + k) % n, j + l): c}
    H = FiniteHopfData(ctx, labels, mult=mult, unit={0: one},
                       comult=[{} for _ in range(n * n)],
                       counit=[one if i % n == 0 else ctx.zero
                               for i in range(n * n)],
                       antipode=[{} for _ in range(n * n)],
                       name=f"taft-{n}")
    # counit indexing above: basis (i,j) has eps = delta_{j,0}
    H.counit = [one if (b % n) == 0 else ctx.zero for b in range(n * n)]
    # comult from the generator values, multiplying in H (x) H
    dg = {(idx(1, 0), idx(1, 0)): one}
    dx = {(idx(0, 1), 0): one, (idx(1, 0), idx(0, 1)): one}
    for i in range(n):
        for j in range(n):
            H.comult[idx(i, j)] = H.mult_tensor(_tensor2_power(H, dg, i),
                                                _tensor2_power(H, dx, j), 2)
    # antipode as the algebra antihomomorphism with S(g) = g^-1,
    # S(x) = -g^-1 x (forced by the antipode axiom on generators)
    sg = {idx(n - 1, 0): one}
    sx = H.scale_vec(ctx.from_int(-1), {idx(n - 1, 1): one})
    for i in range(n):
        for j in range(n):
            H.antipode[idx(i, j)] = H.mul_vec(_power_in(H, sx, j),
                                              _power_in(H, sg, i))
    return H


def build_nichols(n: int) -> FiniteHopfData:
    """Nichols Hopf algebra with n anticommuting skew-primitive generators:
    g^2 = 1, g x_i = -x_i g, x_i x_j = -x_j x_i (so x_i^2 = 0); dim 2^(n+1).
    The antipode is solved from the antipode axiom."""
    if n < 1:
        raise HopfError("build_nichols requires n >= 1")
    ctx = RationalField()
    one = ctx.one
    size = 1 << n
    labels = []
    for a in range(2):
        for mask in range(size):
            factors = ("g" if a else "") + "".join(
                f"x{i+1}" for i in range(n) if mask >> i & 1)
            labels.append(factors or "1")
    idx = lambda a, mask: a * size + mask

    def reorder_sign(s_mask, t_mask):
        sign = 1
        for i in range(n):
            if t_mask >> i & 1:
                higher = s_mask >> (i + 1)
                sign *= (-1) ** bin(higher).count("1")
        return sign

    mult = {}
    for a in range(2):
        for s in range(size):
            for b in range(2):
                for t in range(size):
                    if s & t:
                        continue
                    sign = reorder_sign(s, t) * ((-1) ** (bin(s).count("1") * b))
                    mult[(idx(a, s), idx(b, t))] = {
                        idx((a + b) % 2, s | t): ctx.from_int(sign)}
    H = FiniteHopfData(ctx, labels, mult=mult, unit={0: one},
                       comult=[{} for _ in range(2 * size)],
                       counit=[one if b % size == 0 else ctx.zero
                               for b in range(2 * size)],
                       antipode=[{} for _ in range(2 * size)],
                       name=f"nichols-{n}")
    dg = {(idx(1, 0), idx(1, 0)): one}
    for a in range(2):
        for mask in range(size):
            d = _tensor2_power(H, dg, a)
            for i in range(n):
                if mask >> i & 1:
                    dx = {(idx(0, 1 << i), 0): one,
                          (idx(1, 0), idx(0, 1 << i)): one}
                    d = H.mult_tensor(d, dx, 2)
            H.comult[idx(a, mask)] = d
    H.antipode = solve_antipode(H)
    return H


def solve_antipode(H: FiniteHopfData) -> list:
    """Solve mu(S (x) id)Delta = eps * unit for the antipode matrix."""
    ctx = H.ctx
    n = H.dim
    nv = n * n  # unknowns S[j][l]
    rows = []
    rhs = []
    for i in range(n):
        lhs_rows = [dict() for _ in range(n)]  # per target basis index m
        for (j, k), c in H.comult[i].items():
            for l in range(n):
                prod = H.pair_product(l, k)
                if not prod:
                    continue
                var = j * n + l
                for m, mc in prod.items():
                    d = lhs_rows[m]
                    v = ctx.mul(c, mc)
                    s = ctx.add(d.get(var, ctx.zero), v)
                    if ctx.is_zero(s):
                        d.pop(var, None)
                    else:
                        d[var] = s
        for m in range(n):
            rows.append([lhs_rows[m].get(v, ctx.zero) for v in range(nv)])
            rhs.append(ctx.mul(H.counit[i], H.unit.get(m, ctx.zero)))
    sol = linalg.solve(ctx, rows, rhs)
    if sol is None:
        raise HopfError("antipode axiom has no solution")
    antipode = []
    for j in range(n):
        entry = {}
        for l in range(n):
            v = sol[j * n + l]
            if not ctx.is_zero(v):
                entry[l] = v
        antipode.append(entry)
    return antipode


def dual_hopf(H: FiniteHopfData) -> FiniteHopfData:
    """The dual Hopf algebra on the dual basis (all tensors transposed)."""
    ctx = H.ctx
    n = H.dim
    H.materialized_mult()
    mult = {}
    for k in range(n):
        for (p, r), c in H.comult[k].items():
            entry = mult.setdefault((p, r), {})
            entry[k] = ctx.add(entry.get(k, ctx.zero), c)
    comult = [dict() for _ in range(n)]
    for (i, j), entry in H._mult.items():
        for p, c in entry.items():
            comult[p][(i, j)] = c
    antipode = [dict() for _ in range(n)]
    for i in range(n):
        for j, c in H.antipode[i].items():
            antipode[j][i] = c
    return FiniteHopfData(
        ctx, [f"{b}*" for b in H.basis], mult=mult,
        unit={i: c for i, c in enumerate(H.counit) if not ctx.is_zero(c)},
        comult=comult,
        counit=[H.unit.get(i, ctx.zero) for i in range(n)],
        antipode=antipode,
        name=f"dual({H.name})")


def cop(H: FiniteHopfData) -> FiniteHopfData:
    """Opposite coproduct with inverted antipode."""
    return FiniteHopfData(
        H.ctx, list(H.basis), mult=dict(H._mult), mult_fn=H._mult_fn,
        unit=dict(H.unit),
        comult=[{(k, j): c for (j, k), c in entry.items()}
                for entry in H.comult],
        counit=list(H.counit),
        antipode=[dict(e) for e in H.antipode_inv()],
        name=f"cop({H.name})")


# ---------------------------------------------------------------------------
# grouplikes and skew-primitives


def charpoly(ctx, m):
    """Characteristic polynomial by Faddeev-LeVerrier; coefficient list from
    the leading 1 down to the constant term."""
    n = len(m)
    coeffs = [ctx.one]
    mk = [row[:] for row in m]
    for k in range(1, n + 1):
        tr = ctx.zero
        for i in range(n):
            tr = ctx.add(tr, mk[i][i])
        c = ctx.div(ctx.neg(tr), ctx.from_int(k))
        coeffs.append(c)
        if k < n:
            for i in range(n):
                mk[i][i] = ctx.add(mk[i][i], c)
            mk = linalg.mat_mul(ctx, m, mk)
    return coeffs


def field_roots(ctx, coeffs):
    """Roots, in the coefficient field, of the polynomial with the given
    coefficients (leading first).  Exact; ignores roots outside the field."""
    import sympy

    t = sympy.Symbol("t")
    if isinstance(ctx, RationalField):
        expr = sum(sympy.Rational(int(c.numerator), int(c.denominator))
                   * t ** (len(coeffs) - 1 - i)
                   for i, c in enumerate(coeffs))
        poly = sympy.Poly(expr, t, domain="QQ")
        return [ctx.from_fraction(r.p, r.q)
                for r, _ in poly.ground_roots().items()]
    if isinstance(ctx, CyclotomicField):
        zeta = sympy.exp(2 * sympy.pi * sympy.I / ctx.ell)
        dom = sympy.QQ.algebraic_field(zeta)
        zsym = sympy.Symbol("zeta")
        expr = sympy.Integer(0)
        for i, c in enumerate(coeffs):
            cex = sum(sympy.Rational(int(v.numerator), int(v.denominator))
                      * zsym ** k for k, v in c.items())
            expr += cex * t ** (len(coeffs) - 1 - i)
        expr = expr.subs(zsym, zeta)
        poly = sympy.Poly(expr, t, domain=dom)
        roots = []
        for factor, mult in poly.factor_list()[1]:
            if factor.degree() == 1:
                lead, const = factor.all_coeffs()
                root = -dom.to_sympy(dom.from_sympy(sympy.sympify(const))) \
                    / dom.to_sympy(dom.from_sympy(sympy.sympify(lead)))
                root = sympy.expand(root)
                roots.append(_sympy_to_cyclotomic(ctx, root, zeta))
        return roots
    raise HopfError("root finding implemented for rational and cyclotomic "
                    "fields only")


def _sympy_to_cyclotomic(ctx, expr, zeta):
    import sympy

    dom = sympy.QQ.algebraic_field(zeta)
    elem = dom.from_sympy(expr)
    coeffs = elem.rep.to_list() if hasattr(elem.rep, "to_list") else list(elem.rep)
    # coefficients of the primitive element's power basis, leading first
    out = {}
    deg = len(coeffs)
    for i, c in enumerate(coeffs):
        k = deg - 1 - i
        q = sympy.QQ.to_sympy(c) if not isinstance(c, (int,)) else c
        frac = sympy.Rational(q)
        if frac != 0:
            out[k] = mpq(int(frac.p), int(frac.q))
    return ctx._canon(out)


def grouplikes(H: FiniteHopfData) -> list:
    """All x with Delta x = x (x) x and eps(x) = 1.

    A grouplike is a common eigenvector of the right-translation operators
    L_k = (id (x) e_k^*) Delta, with eigenvalue vector equal to its own
    coordinate vector.  The operators need not commute, so instead of
    restricting them we intersect the current candidate space with the
    ambient eigenspaces of each operator in turn, branching over the
    characteristic-polynomial roots that lie in the coefficient field."""
    ctx = H.ctx
    n = H.dim
    eigen = []  # per k: list of (eigenvalue, ambient kernel basis)
    for k in range(n):
        m = [[ctx.zero] * n for _ in range(n)]
        for i in range(n):
            for (a, b), c in H.comult[i].items():
                if b == k:
                    m[a][i] = ctx.add(m[a][i], c)
        pairs = []
        for t in field_roots(ctx, charpoly(ctx, m)):
            shifted = [[ctx.sub(m[i][j], t if i == j else ctx.zero)
                        for j in range(n)] for i in range(n)]
            null = linalg.nullspace(ctx, shifted)
            if null:
                pairs.append((t, null))
        eigen.append(pairs)

    results = []

    def try_line(v):
        eps = ctx.zero
        for i, c in enumerate(v):
            eps = ctx.add(eps, ctx.mul(c, H.counit[i]))
        if ctx.is_zero(eps):
            return
        inv = ctx.inv(eps)
        cand = {i: ctx.mul(inv, c) for i, c in enumerate(v)
                if not ctx.is_zero(c)}
        if cand and _is_grouplike(H, cand):
            results.append(cand)

    def recurse(basis, k):
        if not basis:
            return
        if len(basis) == 1:
            try_line(basis[0])
            return
        if k == n:
            for v in basis:
                try_line(v)
            return
        for _, kernel in eigen[k]:
            # intersect span(basis) with span(kernel)
            cols = [list(col) for col in zip(*(basis + [
                [ctx.neg(x) for x in kv] for kv in kernel]))]
            d = len(basis)
            newbasis = []
            for combo in linalg.nullspace(ctx, cols):
                vec = [ctx.zero] * n
                for c, bv in zip(combo[:d], basis):
                    if ctx.is_zero(c):
                        continue
                    for idx2 in range(n):
                        vec[idx2] = ctx.add(vec[idx2], ctx.mul(c, bv[idx2]))
                if any(not ctx.is_zero(x) for x in vec):
                    newbasis.append(vec)
            recurse(newbasis, k + 1)

    full = [[ctx.one if i == j else ctx.zero for j in range(n)]
            for i in range(n)]
    recurse(full, 0)
    unique = []
    for g in results:
        if not any(H.vec_eq(g, h) for h in unique):
            unique.append(g)
    return unique


def _is_grouplike(H, x: dict) -> bool:
    ctx = H.ctx
    if not ctx.eq(H.counit_of(x), ctx.one):
        return False
    xx = {(a, b): ctx.mul(ca, cb)
          for a, ca in x.items() for b, cb in x.items()}
    return _tensor_eq(ctx, H.coproduct_vec(x), xx)


def skew_primitives(H: FiniteHopfData, g: dict, h: dict) -> list:
    """Basis of {x : Delta x = g (x) x + x (x) h} modulo the span of g - h."""
    ctx = H.ctx
    n = H.dim
    for v in (g, h):
        if not _is_grouplike(H, v):
            raise HopfError("skew_primitives requires grouplike g and h")
    rows = []
    for j in range(n):
        for k in range(n):
            row = []
            for i in range(n):
                c = H.comult[i].get((j, k), ctx.zero)
                if k == i:
                    c = ctx.sub(c, g.get(j, ctx.zero))
                if j == i:
                    c = ctx.sub(c, h.get(k, ctx.zero))
                row.append(c)
            rows.append(row)
    basis = linalg.nullspace(ctx, rows)
    ech = linalg.SparseEchelon(ctx)
    gh = dict(g)
    for k, c in h.items():
        s = ctx.sub(gh.get(k, ctx.zero), c)
        if ctx.is_zero(s):
            gh.pop(k, None)
        else:
            gh[k] = s
    ech.add(gh)
    out = []
    for v in basis:
        vec = {i: c for i, c in enumerate(v) if not ctx.is_zero(c)}
        red = ech.reduce(vec)
        if red and ech.add(dict(red)):
            out.append(red)
    return out


# ---------------------------------------------------------------------------
# pentagon / 3-cocycle


def pentagon_cocycle_check(table, alpha) -> bool:
    """True iff alpha is a 3-cocycle:
    a(g2,g3,g4) a(g1,g2 g3,g4) a(g1,g2,g3) = a(g1 g2,g3,g4) a(g1,g2,g3 g4)."""
    check_group_table(table)
    n = len(table)

    def val(i, j, k):
        v = alpha(i, j, k) if callable(alpha) else alpha[(i, j, k)]
        return v  # Scalars compare and multiply directly

    for g1 in range(n):
        for g2 in range(n):
            for g3 in range(n):
                if val(g1, g2, g3) == 0:
                    raise HopfError("cocycle data must be nowhere zero")
    for g1 in range(n):
        for g2 in range(n):
            for g3 in range(n):
                for g4 in range(n):
                    lhs = val(g2, g3, g4) * val(g1, table[g2][g3], g4) \
                        * val(g1, g2, g3)
                    rhs = val(table[g1][g2], g3, g4) \
                        * val(g1, g2, table[g3][g4])
                    if lhs != rhs:
                        return False
    return True
