"""Rational-limit quantum group: Yang R-matrix, exchange relation,
quantum determinant, triangular factorization, eigenvalue dictionary and
the character ring."""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgroups import linalg
from qgroups.scalars import FractionField, RationalField
from qgroups.yangian import (OperatorSeries, QCharacter, ShiftParam,
                             YMonomial, YangianError, dominant_monomials,
                             eigen_to_monomial, eval_module_T, evaluation_T,
                             frt_check, gauss_decompose, gl2_from_sl2,
                             h_eigen_highest, loop_relation_check, qchar_closed_form,
                             qchar_from_module, qchar_from_tensor,
                             qchar_multiply, qdet2, qdet_central, tensor_T,
                             verify_gl2, yang_qybe_check, yang_r)

QQ = RationalField()


def sp(base, offset):
    return ShiftParam(base, Fraction(offset))


def test_yang_r_entries_and_qybe():
    ctx = FractionField("u")
    u = ctx.gen_raw("u")
    r = yang_r(ctx, u)
    # normalized by u/(u-1), the middle block is [[u, -1], [-1, u]]/(u-1)
    den = ctx.sub(u, ctx.one)
    norm = ctx.div(u, den)
    scaled = linalg.mat_scale(ctx, norm, r)
    assert ctx.eq(scaled[0][0], ctx.one) and ctx.eq(scaled[3][3], ctx.one)
    assert ctx.eq(scaled[1][1], ctx.div(u, den))
    assert ctx.eq(scaled[1][2], ctx.neg(ctx.inv(den)))
    assert ctx.eq(scaled[2][1], ctx.neg(ctx.inv(den)))
    assert yang_qybe_check()


def test_gl2_lift_and_bad_input():
    ctx = FractionField("u", "v")
    for m in range(4):
        assert verify_gl2(ctx, gl2_from_sl2(ctx, m))
    E = gl2_from_sl2(ctx, 1)
    E[0][1] = linalg.zeros(ctx, 2, 2)
    with pytest.raises(YangianError):
        evaluation_T(ctx, E, 2)


def test_frt_exchange_relation():
    ctx = FractionField("u", "v")
    # dims 1 through 4; dim 1 with E = 0 is the trivial module
    triv = [[linalg.zeros(ctx, 1, 1) for _ in range(2)] for _ in range(2)]
    assert frt_check(evaluation_T(ctx, triv, 2))
    for m in range(4):
        assert frt_check(eval_module_T(ctx, m, order=2)), m
    # shifted evaluation point does not disturb the identity
    assert frt_check(eval_module_T(ctx, 1, ctx.from_int(5), order=2))
    # corrupting a generator matrix breaks the identity
    T = eval_module_T(ctx, 1, order=2)
    T.gen[0][1] = linalg.mat_scale(ctx, ctx.from_int(2), T.gen[0][1])
    assert not frt_check(T)
    # the scalar field must provide both spectral generators
    ctx1 = FractionField("u")
    with pytest.raises(YangianError):
        frt_check(eval_module_T(ctx1, 1, order=2))


def _qdet_oracle_coeffs(E, order):
    """Independent expansion of t11(u)t22(u+1) - t12(u)t21(u+1) on a
    2-dimensional module with rational entries: plain convolution of
    scalar sequences, no series machinery."""
    # represent each 2x2 rational matrix as tuple rows; helpers
    def mmul(a, b):
        return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2))
                           for j in range(2)) for i in range(2))

    def madd(a, b):
        return tuple(tuple(a[i][j] + b[i][j] for j in range(2))
                     for i in range(2))

    def mscale(c, a):
        return tuple(tuple(c * x for x in row) for row in a)

    zero = ((Fraction(0),) * 2,) * 2
    one = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    # t_ij(u) coefficients of u^0, u^-1, u^-2, ...: delta, E_ji, 0, ...
    def t_u(i, j):
        return [one if i == j else zero, E[i][j]] + [zero] * order

    # shift u -> u+1: u^-k -> sum_j (-1)^j binom(k+j-1, j) u^-k-j
    def shift(seq):
        from math import comb
        out = [zero] * len(seq)
        for k, c in enumerate(seq):
            if k == 0:
                out[0] = madd(out[0], c)
                continue
            for j in range(len(seq) - k):
                w = Fraction((-1) ** j * comb(k + j - 1, j))
                out[k + j] = madd(out[k + j], mscale(w, c))
        return out

    def conv(a, b):
        out = [zero] * len(a)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                if i + j < len(out):
                    out[i + j] = madd(out[i + j], mmul(x, y))
        return out

    term1 = conv(t_u(0, 0), shift(t_u(1, 1)))
    term2 = conv(t_u(0, 1), shift(t_u(1, 0)))
    return [madd(t1, mscale(Fraction(-1), t2))
            for t1, t2 in zip(term1, term2)]


def test_qdet2_matches_independent_expansion():
    ctx = QQ
    T = eval_module_T(ctx, 1, order=6)
    q = qdet2(T)
    # the charge -1 lift of the 2-dim module: E11 = (h-1)/2, E22 = (-h-1)/2
    E = [[((Fraction(0), Fraction(0)), (Fraction(0), Fraction(-1))),
          ((Fraction(0), Fraction(1)), (Fraction(0), Fraction(0)))],
         [((Fraction(0), Fraction(0)), (Fraction(1), Fraction(0))),
          ((Fraction(-1), Fraction(0)), (Fraction(0), Fraction(0)))]]
    oracle = _qdet_oracle_coeffs(E, 6)
    for n in range(7):
        got = q.coefficient(-n)
        want = oracle[n]
        assert all(ctx.eq(got[i][j], ctx.from_fraction(
            want[i][j].numerator, want[i][j].denominator))
            for i in range(2) for j in range(2)), n


def test_qdet2_trivial_and_centrality():
    ctx = QQ
    triv = [[linalg.zeros(ctx, 1, 1) for _ in range(2)] for _ in range(2)]
    q = qdet2(evaluation_T(ctx, triv, 4))
    assert ctx.eq(q.coefficient(0)[0][0], ctx.one)
    assert all(ctx.is_zero(q.coefficient(-n)[0][0]) for n in range(1, 5))
    assert qdet_central(eval_module_T(ctx, 1, order=8), 6)


def test_loop_relations_pass_and_are_stable():
    ctx = FractionField("a")
    a = ctx.gen_raw("a")
    for m in (1, 2):
        T = eval_module_T(ctx, m, a, order=8)
        for depth in (2, 3, 4):
            report = loop_relation_check(T, depth)
            assert report["passed"], (m, depth, report)
    # trivial module: H = 1, x = 0, everything holds
    triv = [[linalg.zeros(QQ, 1, 1) for _ in range(2)] for _ in range(2)]
    assert loop_relation_check(evaluation_T(QQ, triv, 8), 4)["passed"]
    # a corrupted series entry is detected
    T = eval_module_T(ctx, 1, a, order=8)
    T.t[0][1] = T.t[0][1] * ctx.from_int(2)
    report = loop_relation_check(T, 2)
    assert not report["passed"] and not report["pairing"]
    with pytest.raises(YangianError):
        loop_relation_check(eval_module_T(ctx, 1, a, order=4), 6)


def test_gauss_factors_reassemble():
    # T = T_up * diag(schur, t22) * T_low on the 2-dim module
    ctx = FractionField("a")
    T = eval_module_T(ctx, 1, ctx.gen_raw("a"), order=6)
    xm, H, xp = gauss_decompose(T)
    t22 = T.t[1][1]
    schur = H * t22
    # reassemble entries: t11 = schur + xp*t22*xm, t12 = xp*t22,
    # t21 = t22*xm
    assert T.t[0][1].eq(xp * t22)
    assert T.t[1][0].eq(t22 * xm)
    assert T.t[0][0].eq(schur + xp * t22 * xm)


def test_h_eigen_frozen_values():
    # 2-dim module at a symbolic point: u-a+1/2 on the top vector and
    # 1/(u-a-1/2) on the bottom one
    pairs = h_eigen_highest(1, "a")
    assert pairs[0] == ((sp("a", "-1/2"),), ())
    assert pairs[1] == ((), (sp("a", "1/2"),))
    # trivial module: both polynomials are 1
    assert h_eigen_highest(0, "a") == [((), ())]
    # 3-dim module: labels step by 1 and slide through the window
    pairs = h_eigen_highest(2, "a")
    assert pairs[0] == ((sp("a", -1), sp("a", 0)), ())
    assert pairs[1] == ((sp("a", -1),), (sp("a", 1),))
    assert pairs[2] == ((), (sp("a", 0), sp("a", 1)))


def test_eigen_to_monomial_and_coprimality():
    mono = eigen_to_monomial((sp("a", "-1/2"),), (sp("a", "1/2"),))
    assert mono.exps == {sp("a", "-1/2"): 1, sp("a", "1/2"): -1}
    assert not mono.is_dominant()
    assert YMonomial().is_dominant()
    with pytest.raises(YangianError):
        eigen_to_monomial((sp("a", 0),), (sp("a", 0),))


def test_qchar_displays():
    # chi of the 2-dim module: Y_{a-1/2} + Y_{a+1/2}^{-1}
    want = QCharacter({YMonomial({sp("a", "-1/2"): 1}): 1,
                       YMonomial({sp("a", "1/2"): -1}): 1})
    assert qchar_from_module(1).eq(want)
    # chi of the 3-dim module at the rational point 0:
    # Y_{-1} Y_0 + Y_{-1} Y_1^{-1} + Y_0^{-1} Y_1^{-1}
    y = lambda off, e: (sp("", off), e)
    want = QCharacter({YMonomial([y(-1, 1), y(0, 1)]): 1,
                       YMonomial([y(-1, 1), y(1, -1)]): 1,
                       YMonomial([y(0, -1), y(1, -1)]): 1})
    assert qchar_from_module(2, sp("", 0)).eq(want)
    # 4-term product display
    a, b = sp("a", 0), sp("b", 0)
    prod = qchar_multiply(qchar_from_module(1, a), qchar_from_module(1, b))
    want = QCharacter({
        YMonomial({a.shifted("-1/2"): 1, b.shifted("-1/2"): 1}): 1,
        YMonomial({a.shifted("-1/2"): 1, b.shifted("1/2"): -1}): 1,
        YMonomial({a.shifted("1/2"): -1, b.shifted("-1/2"): 1}): 1,
        YMonomial({a.shifted("1/2"): -1, b.shifted("1/2"): -1}): 1})
    assert prod.eq(want)
    assert qchar_from_module(0).eq(QCharacter.one())


def test_closed_form_equals_module_pipeline():
    for m in range(4):
        assert qchar_closed_form(m).eq(qchar_from_module(m)), m
    assert qchar_closed_form(2, sp("", 0)).eq(qchar_from_module(2, sp("", 0)))


def test_dominant_monomial_counts():
    chi1 = lambda p: qchar_closed_form(1, p)
    # generic: independent symbols -> only the top monomial is dominant
    assert len(dominant_monomials(qchar_multiply(chi1(sp("a", 0)),
                                                 chi1(sp("b", 0))))) == 1
    # resonance a - b = +-1: the unit monomial appears as well
    for off in (1, -1):
        doms = dominant_monomials(qchar_multiply(chi1(sp("b", off)),
                                                 chi1(sp("b", 0))))
        assert len(doms) == 2 and YMonomial() in doms
    # coincident points are still generic
    assert len(dominant_monomials(qchar_multiply(chi1(sp("b", 0)),
                                                 chi1(sp("b", 0))))) == 1


def test_dominant_counts_match_string_positions():
    # the resonance offsets +-1 are exactly the special string positions
    # for pairs of 1-point strings on the q^2 lattice
    from qgroups.affine import EvalPoint, general_position, string_of
    chi1 = lambda p: qchar_closed_form(1, p)
    for off in range(-3, 4):
        doms = dominant_monomials(qchar_multiply(chi1(sp("b", off)),
                                                 chi1(sp("b", 0))))
        gp = general_position(string_of(1, EvalPoint("z", 0)),
                              string_of(1, EvalPoint("z", 2 * off)))
        assert (len(doms) == 1) == gp, off


def test_tensor_spectrum_multiplicativity():
    a, b = sp("a", 0), sp("b", 0)
    for m, n in ((1, 1), (2, 1)):
        got = qchar_from_tensor(m, n, a, b)
        want = qchar_multiply(qchar_closed_form(m, a), qchar_closed_form(n, b))
        assert got.eq(want), (m, n)
    assert qchar_from_tensor(1, 1, a, b).dimension() == 4


def test_tensor_T_is_the_coproduct_action():
    # on the tensor of two 2-dim modules the u^{-1} coefficient of t_ij
    # is E_ji (x) 1 + 1 (x) E_ji
    ctx = QQ
    A = eval_module_T(ctx, 1, order=4)
    B = eval_module_T(ctx, 1, order=4)
    T = tensor_T(A, B)
    for i in range(2):
        for j in range(2):
            got = T.t[i][j].coefficient(-1)
            e = A.gen[i][j]
            idm = linalg.identity(ctx, 2)
            want = linalg.mat_add(ctx, linalg.kron(ctx, e, idm),
                                  linalg.kron(ctx, idm, e))
            assert all(ctx.eq(got[r][c], want[r][c])
                       for r in range(4) for c in range(4))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2)),
                max_size=4),
       st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2)),
                max_size=4))
def test_monomial_ring_properties(xs, ys):
    m1 = YMonomial([(sp("a", k), e) for k, e in xs])
    m2 = YMonomial([(sp("a", k), e) for k, e in ys])
    assert m1.mul(m2) == m2.mul(m1)
    assert m1.mul(m1.inverse()) == YMonomial()
    c1 = QCharacter({m1: 2, YMonomial(): 1})
    c2 = QCharacter({m2: -1})
    lhs = c1.add(c2).mul(c2)
    rhs = c1.mul(c2).add(c2.mul(c2))
    assert lhs.eq(rhs)


def test_character_json_and_text():
    chi = qchar_closed_form(1)
    data = chi.to_json()
    assert len(data["terms"]) == 2
    assert {t["factors"][0]["offset"] for t in data["terms"]} == \
        {"-1/2", "1/2"}
    assert "Y[a-1/2]" in str(chi)
