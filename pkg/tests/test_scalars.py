"""Scalar tower: exact fields, q-combinatorics, truncated series, parser."""
import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from qgroups.scalars import (CyclotomicField, FieldError, FractionField,
                             RationalField, Scalar, TruncatedSeries,
                             q_binomial, q_factorial, q_int)

QQ = RationalField()


def S(x):
    return QQ.scalar(x)


# -- rationals ---------------------------------------------------------------

def test_rational_basics():
    a = S(mpq(2, 3))
    b = S(5)
    assert a + b == S(mpq(17, 3))
    assert (a * b).raw == mpq(10, 3)
    assert (a / b).raw == mpq(2, 15)
    assert (-a).raw == mpq(-2, 3)
    assert a.inv().raw == mpq(3, 2)
    assert S(0).is_zero()
    with pytest.raises(ZeroDivisionError):
        S(0).inv()


def test_rational_parse_round_trip():
    for text in ["0", "1", "-7", "2/3", "-11/4"]:
        v = QQ.parse(text)
        assert QQ.parse(QQ.to_str(v)) == v


rationals = st.fractions(max_denominator=50).map(lambda f: mpq(f.numerator, f.denominator))


@given(rationals, rationals, rationals)
def test_rational_field_axioms(a, b, c):
    assert QQ.mul(a, QQ.add(b, c)) == QQ.add(QQ.mul(a, b), QQ.mul(a, c))
    assert QQ.sub(a, a) == QQ.zero
    if not QQ.is_zero(a):
        assert QQ.mul(a, QQ.inv(a)) == QQ.one


# -- rational function fields ------------------------------------------------

def test_fraction_field_arithmetic():
    F = FractionField("q", "z")
    q, z = F.gen("q"), F.gen("z")
    expr = (q * z - 1) / (q + z)
    assert expr * (q + z) == q * z - 1
    assert ((q ** 2 - 1) / (q - 1)) == q + 1
    assert (q - q).is_zero()


def test_fraction_field_canonical_strings():
    F = FractionField("q")
    q = F.gen("q")
    expr = (q ** 2 - 1) / (2 * q)
    assert F.parse(F.to_str(expr.raw)) == expr.raw
    # canonical form is denominator-monic, so equal values print equally
    other = (3 * q ** 2 - 3) / (6 * q)
    assert F.to_str(expr.raw) == F.to_str(other.raw)


def test_fraction_field_laurent_negative_powers():
    F = FractionField("q")
    q = F.gen("q")
    assert q ** -2 == 1 / (q * q)


# -- cyclotomic fields -------------------------------------------------------

def test_cyclotomic_basic_relations():
    for ell in (3, 5):
        C = CyclotomicField(ell)
        z = C.zeta()
        assert z ** ell == C.scalar(1)
        total = C.scalar(0)
        for k in range(ell):
            total = total + z ** k
        assert total.is_zero()
        assert (z * z.inv()) == C.scalar(1)


def test_cyclotomic_inverse_random_elements():
    C = CyclotomicField(5)
    z = C.zeta()
    x = 3 * z ** 2 - z + C.scalar(mpq(1, 2))
    assert x * x.inv() == C.scalar(1)


def test_cyclotomic_rejects_even_and_composite_orders():
    with pytest.raises(FieldError):
        CyclotomicField(4)
    with pytest.raises(FieldError):
        CyclotomicField(9)
    with pytest.raises(FieldError):
        CyclotomicField(15)


def test_cyclotomic_parse_round_trip():
    C = CyclotomicField(5)
    x = (2 * C.zeta(3) - C.scalar(mpq(3, 7)) + C.zeta()).raw
    assert C.eq(C.parse(C.to_str(x)), x)


small_cyclo = st.lists(st.integers(-9, 9), min_size=4, max_size=4)


@given(small_cyclo, small_cyclo)
def test_cyclotomic_ring_axioms(a, b):
    C = CyclotomicField(5)
    x = C._canon({i: mpq(v) for i, v in enumerate(a)})
    y = C._canon({i: mpq(v) for i, v in enumerate(b)})
    assert C.eq(C.mul(x, y), C.mul(y, x))
    assert C.eq(C.sub(C.add(x, y), y), x)
    if not C.is_zero(x):
        assert C.eq(C.mul(x, C.inv(x)), C.one)


# -- q-combinatorics ---------------------------------------------------------

def test_q_int_symmetric_form():
    F = FractionField("q")
    q = F.gen("q")
    assert q_int(0, q).is_zero()
    assert q_int(1, q) == F.scalar(1)
    assert q_int(3, q) == q ** 2 + 1 + q ** -2
    # balanced quantum integer: (q^k - q^-k)/(q - q^-1)
    for k in range(1, 6):
        assert q_int(k, q) * (q - q ** -1) == q ** k - q ** -k


def test_q_factorial_and_binomial():
    F = FractionField("q")
    q = F.gen("q")
    assert q_factorial(3, q) == q_int(1, q) * q_int(2, q) * q_int(3, q)
    assert q_binomial(4, 2, q) == q_factorial(4, q) / (q_factorial(2, q) ** 2)
    # at q = 1 the quantum binomial is the ordinary binomial
    one = QQ.scalar(1)
    assert q_binomial(5, 2, one) == QQ.scalar(10)
    assert q_binomial(6, 3, one) == QQ.scalar(20)


def test_q_binomial_at_root_of_unity_vanishes():
    # [ell choose k]_q = 0 for 0 < k < ell at a primitive ell-th root
    for ell in (3, 5):
        C = CyclotomicField(ell)
        q = C.zeta()
        for k in range(1, ell):
            assert q_binomial(ell, k, q).is_zero()


# -- truncated series --------------------------------------------------------

def test_series_multiplication_window():
    s = TruncatedSeries(QQ, "u", 0, [QQ.one, QQ.from_int(2), QQ.from_int(3)])
    t = TruncatedSeries(QQ, "u", 0, [QQ.one, QQ.from_int(-1), QQ.zero])
    prod = s * t
    assert prod.coefficient(0) == mpq(1)
    assert prod.coefficient(-1) == mpq(1)
    assert prod.coefficient(-2) == mpq(1)


def test_series_inversion_geometric():
    # (1 - u^-1)^-1 = 1 + u^-1 + u^-2 + ...
    s = TruncatedSeries(QQ, "u", 0, [QQ.one, QQ.from_int(-1)] + [QQ.zero] * 3)
    inv = s.invert()
    for k in range(5):
        assert inv.coefficient(-k) == mpq(1)
    assert (s * inv).coefficient(0) == mpq(1)
    assert (s * inv).coefficient(-1) == mpq(0)


def test_series_shift_argument_matches_expansion():
    # u^-1 under u -> u+1 is u^-1 - u^-2 + u^-3 - ...
    s = TruncatedSeries(QQ, "u", -1, [QQ.one] + [QQ.zero] * 4)
    t = s.shift_argument(1)
    for k in range(1, 6):
        assert t.coefficient(-k) == mpq((-1) ** (k - 1))
    # shifting by c then -c is the identity on the window
    back = t.shift_argument(-1)
    assert back.eq(s)


@settings(max_examples=60)
@given(st.lists(st.integers(-5, 5), min_size=3, max_size=5),
       st.integers(-2, 2))
def test_series_shift_is_additive(coeffs, c):
    s = TruncatedSeries(QQ, "u", 1, [QQ.from_int(v) for v in coeffs])
    lhs = s.shift_argument(c).shift_argument(1)
    rhs = s.shift_argument(c + 1)
    assert lhs.eq(rhs)


# -- parser ------------------------------------------------------------------

def test_parser_arithmetic_expressions():
    F = FractionField("q")
    q = F.gen("q")
    assert F.parse("(q^2 - 1)/(q - 1)") == (q + 1).raw
    assert F.parse("-q^-1 + 2*q") == (2 * q - q ** -1).raw


def test_parser_rejects_garbage():
    with pytest.raises(FieldError):
        QQ.parse("2 +")
    with pytest.raises(FieldError):
        FractionField("q").parse("w + 1")
