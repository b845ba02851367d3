"""Acceptance gate: one test per required capability, exact arithmetic
throughout (tolerance 0).  Each test ends with a single pass line that
names the capability and the measured wall time against its budget."""

import time
from collections import Counter
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product

import pytest

from qgroups import hopf as hopf_mod
from qgroups import linalg
from qgroups.affine import (AffineError, EvalPoint, StringDesc,
                            affine_context, decompose_into_strings,
                            eval_dual_shift, eval_rep, general_position,
                            intertwiner, invariant_covectors,
                            invariant_vectors, irreducibility_test, rep_dual,
                            spectral_checks, tensor_affine, trig_r_matrix,
                            verify_affine_relations, _qpow)
from qgroups.classical import (E, F, H, LieTensor, casimir_invariance,
                               cobracket_checks, cybe_defect, standard_r,
                               yang_cybe_check)
from qgroups.cli import ZOO
from qgroups.double import (build_borel_plus, drinfeld_double,
                            quasitriangular_check, small_quantum_group,
                            truncated_r_formula)
from qgroups.hopf import (build_function_algebra, build_group_algebra,
                          group_table_cyclic, group_table_s3,
                          pentagon_cocycle_check, verify_hopf_axioms)
from qgroups.scalars import FractionField, RationalField
from qgroups.uqsl2 import (Q_GEN, braiding_checks, decompose_type_I,
                           double_dual_trace, irrep, r_intertwines,
                           tensor_rep)
from qgroups.yangian import (QCharacter, ShiftParam, YMonomial,
                             dominant_monomials, eval_module_T, frt_check,
                             h_eigen_highest, loop_relation_check,
                             qchar_closed_form, qchar_from_module,
                             qchar_multiply, qdet_central, yang_qybe_check)

QQ = RationalField()


def conclude(number: int, label: str, start: float, budget: float | None):
    elapsed = time.perf_counter() - start
    bound = f" < {budget:g} s" if budget is not None else ""
    print(f"criterion {number:02d} ({label}): pass, {elapsed:.2f} s{bound}")
    if budget is not None:
        assert elapsed < budget, (label, elapsed, budget)


def sp(base, offset):
    return ShiftParam(base, Fraction(offset))


def test_criterion_01_hopf_axiom_zoo():
    start = time.perf_counter()
    assert len(ZOO) == 18
    for name, build in sorted(ZOO.items()):
        report = verify_hopf_axioms(build())
        assert report["passed"], (name, report["failed_axioms"])
    conclude(1, "hopf axiom zoo", start, 10)


def test_criterion_02_drinfeld_double_quasitriangular():
    start = time.perf_counter()
    for H_ in (build_function_algebra(group_table_cyclic(2)),
               build_group_algebra(group_table_cyclic(2)),
               build_borel_plus(3)):
        D, R = drinfeld_double(H_)
        report = quasitriangular_check(D, R)
        assert report["passed"], (H_.name, report)
        assert report["qybe"]
    conclude(2, "double of C(Z/2) and the ell=3 Borel half", start, 30)


def test_criterion_03_small_quantum_group():
    start = time.perf_counter()
    for ell in (3, 5):
        assert build_borel_plus(ell).dim == ell ** 2  # double has dim ell^4
        Q, R = small_quantum_group(ell)
        ctx = Q.ctx
        assert Q.dim == ell ** 3
        K, e, f = Q.images["K"], Q.images["e"], Q.images["f"]
        comm = Q.sub_vec(Q.mul_vec(e, f), Q.mul_vec(f, e))
        q = ctx.scalar(ctx.gen_raw("zeta"))
        kinv = K
        for _ in range(ell - 2):
            kinv = Q.mul_vec(kinv, K)
        target = Q.scale_vec((q - q.inv()).inv().raw, Q.sub_vec(K, kinv))
        assert Q.vec_eq(comm, target)
        closed = truncated_r_formula(Q, K, e, f, ell)
        assert hopf_mod._tensor_eq(ctx, R.terms, closed)
    conclude(3, "quotient to dim ell^3 with the closed R", start, None)


def test_criterion_04_pentagon_cocycle_exhaustive():
    start = time.perf_counter()

    def coboundary_trivial(table, alpha):
        """Direct enumeration of d(alpha) = 1 over all quadruples."""
        n = len(table)
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    for d in range(n):
                        lhs = (alpha[(b, c, d)] * alpha[(a, table[b][c], d)]
                               * alpha[(a, b, c)])
                        rhs = (alpha[(table[a][b], c, d)]
                               * alpha[(a, b, table[c][d])])
                        if lhs != rhs:
                            return False
        return True

    # all sign-valued alphas on Z/2, and all sign-valued alphas on Z/3
    # normalized to 1 on triples containing the identity
    table2 = group_table_cyclic(2)
    keys2 = list(product(range(2), repeat=3))
    for values in product((1, -1), repeat=len(keys2)):
        alpha = dict(zip(keys2, values))
        assert pentagon_cocycle_check(table2, alpha) == \
            coboundary_trivial(table2, alpha)
    table3 = group_table_cyclic(3)
    free = list(product((1, 2), repeat=3))
    fixed = [k for k in product(range(3), repeat=3) if 0 in k]
    for values in product((1, -1), repeat=len(free)):
        alpha = dict(zip(free, values))
        alpha.update({k: 1 for k in fixed})
        assert pentagon_cocycle_check(table3, alpha) == \
            coboundary_trivial(table3, alpha)
    conclude(4, "pentagon check vs direct enumeration", start, 5)


def test_criterion_05_clebsch_gordan():
    start = time.perf_counter()

    def oracle(m, n):
        """Weight counting: multiplicity of the (k+1)-dim simple is the
        number of weight-k vectors minus the number of weight-(k+2) ones."""
        counts = Counter(i + j for i in range(-m, m + 1, 2)
                         for j in range(-n, n + 1, 2))
        out = []
        for w in sorted(counts):
            if w >= 0:
                out += [w] * (counts[w] - counts.get(w + 2, 0))
        return out

    for m in range(5):
        for n in range(5):
            expected = list(range(abs(m - n), m + n + 1, 2))
            assert oracle(m, n) == expected
            got = decompose_type_I(tensor_rep(irrep(m), irrep(n)))
            assert got == expected, (m, n, got)
    conclude(5, "Clebsch-Gordan for m, n <= 4", start, 60)


def test_criterion_06_rmatrix_braiding():
    start = time.perf_counter()
    assert r_intertwines(irrep(1), irrep(1))
    report = braiding_checks(irrep(1), irrep(1), irrep(1))
    assert report == {"hexagon_1": True, "hexagon_2": True, "qybe": True,
                      "braid": True, "passed": True}
    conclude(6, "hexagons, QYBE and braid relation", start, 10)


def test_criterion_07_double_dual_trace():
    start = time.perf_counter()
    q = Q_GEN
    assert double_dual_trace(irrep(1)) == -q - q.inv()
    conclude(7, "double-dual trace on the 2-dim module", start, 1)


def test_criterion_08_classical_limit():
    start = time.perf_counter()
    r = LieTensor(QQ, 2, {(H, H): QQ.from_fraction(1, 4), (E, F): QQ.one})
    assert cybe_defect(r).is_zero()
    assert casimir_invariance(r.add(r.flip21()))
    report = cobracket_checks(standard_r(QQ))
    assert report["passed"], report
    assert yang_cybe_check()
    conclude(8, "CYBE, cobracket and Yang's r(z)", start, 5)


def test_criterion_09_affine_matrices_and_relations():
    start = time.perf_counter()
    ctx = affine_context("z", "w")
    z, w = ctx.gen_raw("z"), ctx.gen_raw("w")
    V = eval_rep(1, z, ctx)
    q = ctx.gen_raw("q")
    assert V.mat("e0") == [[ctx.zero, ctx.zero], [z, ctx.zero]]
    assert V.mat("f0") == [[ctx.zero, ctx.inv(z)], [ctx.zero, ctx.zero]]
    assert V.mat("K0") == [[ctx.inv(q), ctx.zero], [ctx.zero, q]]
    assert V.mat("e1") == [[ctx.zero, ctx.one], [ctx.zero, ctx.zero]]
    for m in range(3):
        assert verify_affine_relations(eval_rep(m, z, ctx))["passed"]
        for n in range(3):
            T = tensor_affine(eval_rep(m, z, ctx), eval_rep(n, w, ctx))
            assert verify_affine_relations(T)["passed"], (m, n)
    conclude(9, "affine evaluation matrices and Serre", start, 30)


def test_criterion_10_duality_shift():
    start = time.perf_counter()
    assert eval_dual_shift(1, EvalPoint("z", 0)) == EvalPoint("z", 2)
    ctx = affine_context("z")
    z = ctx.gen_raw("z")
    dd = rep_dual(rep_dual(eval_rep(1, z, ctx)))
    cand = eval_rep(1, ctx.mul(_qpow(ctx, 4), z), ctx)
    maps = intertwiner(dd, cand)
    assert len(maps) == 1
    linalg.inverse(ctx, maps[0])  # raises if singular
    conclude(10, "dual shift q^2 and double dual q^4", start, 5)


def brute_force_partitions(exps):
    """All partitions of one q^2-orbit into strings pairwise in general
    position, as sorted (start, length) tuples."""

    def strings_from(mult):
        if not mult:
            yield []
            return
        start_e = min(mult)
        run, exp, probe = 0, start_e, dict(mult)
        while exp in probe and probe[exp] > 0:
            probe[exp] -= 1
            run += 1
            exp += 2
        for length in range(1, run + 1):
            rest = dict(mult)
            for i in range(length):
                e = start_e + 2 * i
                rest[e] -= 1
                if not rest[e]:
                    del rest[e]
            for tail in strings_from(rest):
                yield [(start_e, length)] + tail

    mult = {}
    for e in exps:
        mult[e] = mult.get(e, 0) + 1
    found = set()
    for part in strings_from(mult):
        descs = [StringDesc(EvalPoint("1", s), l) for s, l in part]
        if all(general_position(s, t) for s, t in combinations(descs, 2)):
            found.add(tuple(sorted(part)))
    return found


def test_criterion_11_strings_exhaustive():
    start = time.perf_counter()
    # the two pinned figures
    pts = [EvalPoint("1", 2 * e) for e in (0, 1, 2, 2, 3, 3, 3, 4)]
    got = sorted((s.start.qexp, s.length) for s in decompose_into_strings(pts))
    assert got == [(0, 5), (4, 2), (6, 1)]
    pts = [EvalPoint("1", 2 * e) for e in (0, 0, 1, 2, 2)]
    got = sorted((s.start.qexp, s.length) for s in decompose_into_strings(pts))
    assert got == [(0, 1), (0, 3), (4, 1)]
    # every multiset of <= 7 points with exponents in [0, 6]: the greedy
    # decomposition is the unique pairwise-general-position partition
    for size in range(1, 8):
        for exps in combinations_with_replacement(range(7), size):
            pts = [EvalPoint("1", 2 * e) for e in exps]
            got = tuple(sorted((s.start.qexp, s.length)
                               for s in decompose_into_strings(pts)))
            assert brute_force_partitions([2 * e for e in exps]) == {got}
    # irreducibility of V(z) (x) V(q^k z) vs invariant dimensions
    z0 = EvalPoint("z", 0)
    for k in range(-10, 11):
        assert irreducibility_test([(1, z0), (1, z0.shifted(k))]) == \
            (k not in (-2, 2))
    ctx = affine_context("z")
    zr = ctx.gen_raw("z")
    for k in range(-10, 11):
        T = tensor_affine(eval_rep(1, zr, ctx),
                          eval_rep(1, ctx.mul(_qpow(ctx, k), zr), ctx))
        dims = (len(invariant_vectors(T)), len(invariant_covectors(T)))
        assert (dims == (0, 0)) == (k not in (-2, 2)), (k, dims)
    conclude(11, "string decomposition and irreducibility", start, 120)


def test_criterion_12_spectral_r_matrix():
    start = time.perf_counter()
    ctx = affine_context("z")
    z, q = ctx.gen_raw("z"), ctx.gen_raw("q")
    r = trig_r_matrix(ctx, z)
    den = ctx.sub(z, ctx.mul(q, q))
    assert ctx.eq(r[0][0], ctx.one) and ctx.eq(r[3][3], ctx.one)
    assert ctx.eq(r[1][1], ctx.div(ctx.mul(q, ctx.sub(z, ctx.one)), den))
    assert ctx.eq(r[2][2], r[1][1])
    assert ctx.eq(r[1][2], ctx.div(ctx.sub(ctx.one, ctx.mul(q, q)), den))
    assert ctx.eq(r[2][1], ctx.mul(z, r[1][2]))
    report = spectral_checks()
    assert report == {"unitarity": True, "qybe": True, "intertwiner": True,
                      "passed": True}
    with pytest.raises(AffineError):
        trig_r_matrix(ctx, ctx.mul(q, q))
    conclude(12, "spectral R: entries, unitarity, QYBE", start, 60)


def test_criterion_13_short_exact_sequences():
    start = time.perf_counter()
    ctx = affine_context("z")
    zr = ctx.gen_raw("z")
    for k, dims in ((2, (1, 0)), (-2, (0, 1)), (4, (0, 0)), (3, (0, 0))):
        T = tensor_affine(eval_rep(1, zr, ctx),
                          eval_rep(1, ctx.mul(_qpow(ctx, k), zr), ctx))
        got = (len(invariant_vectors(T)), len(invariant_covectors(T)))
        assert got == dims, (k, got)
    conclude(13, "invariant (co)vector dimensions", start, 10)


def test_criterion_14_yangian_relations():
    start = time.perf_counter()
    assert yang_qybe_check()
    ctx = FractionField("u", "v")
    for m in range(4):  # evaluation modules of dim 1..4
        assert frt_check(eval_module_T(ctx, m)), m
    assert qdet_central(eval_module_T(QQ, 1, order=8), 6)
    ca = FractionField("a")
    for m in range(3):
        T = eval_module_T(ca, m, point_raw=ca.gen_raw("a"), order=12)
        report = loop_relation_check(T, 6)
        assert report["passed"], (m, report)
    conclude(14, "QYBE, FRT, central qdet, loop relations", start, 120)


def test_criterion_15_h_eigenvalues():
    start = time.perf_counter()
    pairs = h_eigen_highest(1, "a")
    # u - a + 1/2 on the top vector, 1/(u - a - 1/2) on the bottom one
    assert pairs[0] == ((sp("a", "-1/2"),), ())
    assert pairs[1] == ((), (sp("a", "1/2"),))
    conclude(15, "diagonal Gauss eigenvalues on the 2-dim module", start, 5)


def test_criterion_16_q_characters():
    start = time.perf_counter()
    for m in range(5):
        assert qchar_closed_form(m).eq(qchar_from_module(m)), m
    # pinned displays
    want = QCharacter({YMonomial({sp("a", "-1/2"): 1}): 1,
                       YMonomial({sp("a", "1/2"): -1}): 1})
    assert qchar_from_module(1).eq(want)
    y = lambda off, e: (sp("", off), e)
    want = QCharacter({YMonomial([y(-1, 1), y(0, 1)]): 1,
                       YMonomial([y(-1, 1), y(1, -1)]): 1,
                       YMonomial([y(0, -1), y(1, -1)]): 1})
    assert qchar_from_module(2, sp("", 0)).eq(want)
    a, b = sp("a", 0), sp("b", 0)
    prod = qchar_multiply(qchar_from_module(1, a), qchar_from_module(1, b))
    want = QCharacter({
        YMonomial({a.shifted("-1/2"): 1, b.shifted("-1/2"): 1}): 1,
        YMonomial({a.shifted("-1/2"): 1, b.shifted("1/2"): -1}): 1,
        YMonomial({a.shifted("1/2"): -1, b.shifted("-1/2"): 1}): 1,
        YMonomial({a.shifted("1/2"): -1, b.shifted("1/2"): -1}): 1})
    assert prod.eq(want)
    # dominant counts: generic 1, resonance at distance 1 gives 2
    assert len(dominant_monomials(prod)) == 1
    for off in (1, -1):
        doms = dominant_monomials(qchar_multiply(
            qchar_closed_form(1, sp("b", off)), qchar_closed_form(1, b)))
        assert len(doms) == 2 and YMonomial() in doms
    conclude(16, "q-characters: closed form, displays, dominants",
             start, 60)
