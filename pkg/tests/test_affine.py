"""Affine quantum sl2: evaluation modules, duals, strings, Drinfeld
polynomials, the spectral R-matrix and invariant vectors."""
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgroups import linalg
from qgroups.affine import (AffineError, EvalPoint, StringDesc,
                            affine_context, decompose_into_strings,
                            drinfeld_polynomial, eval_dual_shift, eval_rep,
                            general_position, intertwiner,
                            invariant_covectors, invariant_vectors,
                            irreducibility_test, rep_dual, spectral_checks,
                            string_of, tensor_affine, trig_r_matrix,
                            verify_affine_relations, _qpow)


def brute_force_partitions(exps):
    """All partitions of a multiset of exponents (one base, one parity)
    into strings pairwise in general position, as sorted tuples of
    (start, length)."""
    def strings_from(mult):
        if not mult:
            yield []
            return
        start = min(mult)
        run = 0
        exp = start
        probe = dict(mult)
        while exp in probe and probe[exp] > 0:
            probe[exp] -= 1
            run += 1
            exp += 2
        for length in range(1, run + 1):
            rest = dict(mult)
            for i in range(length):
                e = start + 2 * i
                rest[e] -= 1
                if not rest[e]:
                    del rest[e]
            for tail in strings_from(rest):
                yield [(start, length)] + tail

    found = set()
    mult = {}
    for e in exps:
        mult[e] = mult.get(e, 0) + 1
    for part in strings_from(mult):
        descs = [StringDesc(EvalPoint("1", s), l) for s, l in part]
        if all(general_position(a, b)
               for a, b in combinations(descs, 2)):
            found.add(tuple(sorted(part)))
    return found


def test_eval_rep_matrices_verbatim():
    ctx = affine_context("z")
    z = ctx.gen_raw("z")
    V = eval_rep(1, z, ctx)
    q = ctx.gen_raw("q")
    assert V.mat("e0") == [[ctx.zero, ctx.zero], [z, ctx.zero]]
    assert V.mat("f0") == [[ctx.zero, ctx.inv(z)], [ctx.zero, ctx.zero]]
    assert V.mat("K0") == [[ctx.inv(q), ctx.zero], [ctx.zero, q]]
    # the central element K0 K1 acts by 1
    assert linalg.mat_eq(ctx, linalg.mat_mul(ctx, V.mat("K0"), V.mat("K1")),
                         linalg.identity(ctx, 2))
    # m = 0 gives the trivial representation
    T = eval_rep(0, z, ctx)
    assert T.dim == 1 and ctx.is_zero(T.mat("e0")[0][0])
    assert ctx.eq(T.mat("K0")[0][0], ctx.one)


def test_relations_and_serre_on_modules_and_tensors():
    ctx = affine_context("z", "w")
    z, w = ctx.gen_raw("z"), ctx.gen_raw("w")
    for m in range(3):
        assert verify_affine_relations(eval_rep(m, z, ctx))["passed"]
    for m in range(3):
        for n in range(3):
            T = tensor_affine(eval_rep(m, z, ctx), eval_rep(n, w, ctx))
            assert verify_affine_relations(T)["passed"], (m, n)


def test_corrupted_cartan_detected():
    ctx = affine_context("z")
    V = eval_rep(1, ctx.gen_raw("z"), ctx)
    V.matrices["K0"] = linalg.mat_scale(ctx, ctx.from_int(2), V.mat("K0"))
    V.matrices["K0^-1"] = linalg.mat_scale(ctx, ctx.from_fraction(1, 2),
                                           V.mat("K0^-1"))
    report = verify_affine_relations(V)
    assert report["serre_e"] and report["serre_f"]
    assert not report["sl2_pair_0"]
    assert not report["passed"]


def test_dual_shift_and_double_dual():
    assert eval_dual_shift(1, EvalPoint("z", 0)) == EvalPoint("z", 2)
    assert eval_dual_shift(2, EvalPoint("z", 0)) == EvalPoint("z", 2)
    # double dual is the q^4 twist, by explicit intertwiner
    ctx = affine_context("z")
    z = ctx.gen_raw("z")
    dd = rep_dual(rep_dual(eval_rep(1, z, ctx)))
    cand = eval_rep(1, ctx.mul(_qpow(ctx, 4), z), ctx)
    maps = intertwiner(dd, cand)
    assert len(maps) == 1
    linalg.inverse(ctx, maps[0])
    # dual of the trivial module is trivial
    triv = rep_dual(eval_rep(0, z, ctx))
    assert ctx.eq(triv.mat("K1")[0][0], ctx.one)


def test_string_positions():
    z = EvalPoint("z", 0)
    assert string_of(3, z).exponents() == {-2, 0, 2}
    # {z} and {q^2 z} merge into a longer string: special position
    assert not general_position(string_of(1, z), string_of(1, z.shifted(2)))
    # a string is in general position with itself (set union)
    assert general_position(string_of(2, z), string_of(2, z))
    # gap: union is not a string
    assert general_position(string_of(1, z), string_of(1, z.shifted(6)))
    # different base symbols never interact
    assert general_position(string_of(4, z), string_of(4, EvalPoint("w", 0)))


def test_decompositions_match_pinned_figures():
    # positions on the q^2 lattice (0,1,2,2,3,3,3,4) -> lengths 5, 2, 1
    pts = [EvalPoint("1", 2 * e) for e in (0, 1, 2, 2, 3, 3, 3, 4)]
    got = sorted((s.start.qexp, s.length) for s in decompose_into_strings(pts))
    assert got == [(0, 5), (4, 2), (6, 1)]
    # positions (0,0,1,2,2) -> strings {0,1,2}, {0}, {2}
    pts = [EvalPoint("1", 2 * e) for e in (0, 0, 1, 2, 2)]
    got = sorted((s.start.qexp, s.length) for s in decompose_into_strings(pts))
    assert got == [(0, 1), (0, 3), (4, 1)]
    # single point
    assert decompose_into_strings([EvalPoint("z", 4)]) == \
        [StringDesc(EvalPoint("z", 4), 1)]


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=1, max_size=7))
def test_decomposition_unique_and_matches_brute_force(exps):
    pts = [EvalPoint("1", 2 * e) for e in exps]
    got = sorted((s.start.qexp, s.length) for s in decompose_into_strings(pts))
    oracle = brute_force_partitions([2 * e for e in exps])
    assert oracle == {tuple(got)}


def test_irreducibility_matches_invariant_dimensions():
    z = EvalPoint("z", 0)
    for k in range(-10, 11):
        expected = k not in (-2, 2)
        assert irreducibility_test([(1, z), (1, z.shifted(k))]) == expected
    # oracle equivalence at the three decisive points
    ctx = affine_context("z")
    zr = ctx.gen_raw("z")
    for k, dims in ((2, (1, 0)), (-2, (0, 1)), (4, (0, 0))):
        T = tensor_affine(eval_rep(1, zr, ctx),
                          eval_rep(1, ctx.mul(_qpow(ctx, k), zr), ctx))
        assert (len(invariant_vectors(T)), len(invariant_covectors(T))) == dims
    assert irreducibility_test([(1, z)])
    assert irreducibility_test([(1, z), (1, EvalPoint("w", 2))])


def test_quotient_weights_match_three_dimensional_factor():
    # V(z) (x) V(q^2 z) has K1 eigenvalues {q^2, 1, 1, q^-2}; the invariant
    # line carries K1 = 1, so the quotient carries {q^2, 1, q^-2}
    ctx = affine_context("z")
    zr = ctx.gen_raw("z")
    T = tensor_affine(eval_rep(1, zr, ctx),
                      eval_rep(1, ctx.mul(_qpow(ctx, 2), zr), ctx))
    v = invariant_vectors(T)[0]
    kv = linalg.mat_vec(ctx, T.mat("K1"), v)
    assert all(ctx.eq(a, b) for a, b in zip(kv, v))
    diag = [T.mat("K1")[i][i] for i in range(4)]
    expected = [_qpow(ctx, 2), ctx.one, ctx.one, _qpow(ctx, -2)]
    assert all(ctx.eq(a, b) for a, b in zip(diag, expected))


def test_drinfeld_polynomials():
    ctx = affine_context("z", "z0")
    z = ctx.gen_raw("z")
    # V_a(1): product of (1 - q^(-a+1) z) ... (1 - q^(a-1) z)
    for a in (1, 2, 3):
        got = drinfeld_polynomial([(a, EvalPoint("1", 0))], ctx, z)
        expect = ctx.one
        for k in range(-a + 1, a, 2):
            expect = ctx.mul(expect,
                             ctx.sub(ctx.one, ctx.mul(_qpow(ctx, k), z)))
        assert ctx.eq(got, expect), a
    assert ctx.eq(drinfeld_polynomial([], ctx, z), ctx.one)
    got = drinfeld_polynomial([(1, EvalPoint("z0", 0))], ctx, z)
    assert ctx.eq(got, ctx.sub(ctx.one, ctx.div(z, ctx.gen_raw("z0"))))
    with pytest.raises(AffineError):
        drinfeld_polynomial([(1, EvalPoint("z0", 0)),
                             (1, EvalPoint("z0", 2))], ctx, z)


def test_trig_r_matrix_entries_and_pole():
    ctx = affine_context("z")
    z = ctx.gen_raw("z")
    q = ctx.gen_raw("q")
    r = trig_r_matrix(ctx, z)
    q2 = ctx.mul(q, q)
    den = ctx.sub(z, q2)
    assert ctx.eq(r[1][1], ctx.div(ctx.mul(q, ctx.sub(z, ctx.one)), den))
    assert ctx.eq(r[1][2], ctx.div(ctx.sub(ctx.one, q2), den))
    assert ctx.eq(r[2][1], ctx.div(ctx.mul(z, ctx.sub(ctx.one, q2)), den))
    assert ctx.eq(r[0][0], ctx.one) and ctx.eq(r[3][3], ctx.one)
    # z = 1 specializes to the permutation matrix
    r1 = trig_r_matrix(ctx, ctx.one)
    assert ctx.is_zero(r1[1][1]) and ctx.eq(r1[1][2], ctx.one)
    assert ctx.eq(r1[2][1], ctx.one) and ctx.is_zero(r1[2][2])
    for bad in (q2, ctx.inv(q2)):
        with pytest.raises(AffineError):
            trig_r_matrix(ctx, bad)


def test_spectral_checks_pass_and_identity_fails():
    report = spectral_checks()
    assert report == {"unitarity": True, "qybe": True, "intertwiner": True,
                      "passed": True}
    from qgroups.affine import _r_intertwines
    ctx = affine_context("z", "w")
    assert not _r_intertwines(ctx, ctx.gen_raw("z"), ctx.gen_raw("w"),
                              r=linalg.identity(ctx, 4))
