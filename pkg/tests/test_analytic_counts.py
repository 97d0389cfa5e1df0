import pytest

from bctforge import analytic_counts as ac
from bctforge.errors import DegenerateLeadingCoefficientError, HypothesisViolatedError
from bctforge.power_map import delta_preimage, make_f1, make_f2
from conftest import gf, gf_q2

LEMMA1_QS = [3, 7, 9, 13, 19, 25, 27]
LEMMA2_QS = [3, 7, 19, 27]


def test_solve_quadratic_gf7(gf7):
    assert ac.solve_quadratic(gf7, 1, 0, gf7.neg(1)) == {1, 6}
    assert ac.solve_quadratic(gf7, 1, 0, 1) == frozenset()
    assert ac.solve_quadratic(gf7, 1, 0, 0) == {0}
    with pytest.raises(DegenerateLeadingCoefficientError):
        ac.solve_quadratic(gf7, 0, 1, 1)


def test_solve_quadratic_exhaustive():
    ctx = gf(3, 2)
    for A in range(1, ctx.order):
        for B in ctx.elements():
            for C in ctx.elements():
                expected = {x for x in ctx.elements()
                            if ctx.add(ctx.add(ctx.mul(A, ctx.mul(x, x)), ctx.mul(B, x)), C) == 0}
                assert ac.solve_quadratic(ctx, A, B, C) == expected


def test_delta1_examples(gf49):
    r0 = ac.delta1_analytic(gf49, 7, 0)
    assert r0.roots == (1, 2, 3, 4, 5) and r0.method == ac.SPECIAL_ZERO and r0.validated
    r1 = ac.delta1_analytic(gf49, 7, 1)
    assert r1.roots == (0,) and r1.method == ac.SPECIAL_ONE
    assert ac.delta1_analytic(gf49, 7, 6).roots == (6,)


def test_delta1_hypothesis():
    with pytest.raises(HypothesisViolatedError):
        ac.delta1_analytic(gf_q2(5), 5, 3)


def test_delta2_hypothesis():
    with pytest.raises(HypothesisViolatedError):
        ac.delta2_analytic(gf_q2(13), 13, 3)
    with pytest.raises(HypothesisViolatedError):
        ac.delta2_analytic(gf_q2(5), 5, 3)


def test_delta2_examples(gf49):
    assert len(ac.delta2_analytic(gf49, 7, 0).roots) == 5
    assert ac.delta2_analytic(gf49, 7, gf49.minus_one).roots == (gf49.minus_one,)
    assert ac.delta2_analytic(gf49, 7, 1).roots == (0,)


@pytest.mark.parametrize("q", LEMMA1_QS)
def test_delta1_matches_exhaustive(q):
    ctx = gf_q2(q)
    F = make_f1(ctx)
    fired = 0
    for b in ctx.elements():
        res = ac.delta1_analytic(ctx, q, b)
        assert set(res.roots) == delta_preimage(F, b)
        assert list(res.roots) == sorted(res.roots)
        if b not in (0, 1, ctx.minus_one):
            assert len(res.roots) <= 2 and res.method == ac.QUADRATIC_CASE
        fired += bool(res.rejected)
    # extraneous roots from the Frobenius step do occur
    assert fired > 0


@pytest.mark.parametrize("q", LEMMA2_QS)
def test_delta2_matches_exhaustive(q):
    ctx = gf_q2(q)
    F = make_f2(ctx)
    for b in ctx.elements():
        res = ac.delta2_analytic(ctx, q, b)
        assert set(res.roots) == delta_preimage(F, b)
        if b not in (0, 1, ctx.minus_one):
            expected = ac.CHARACTER_CASE_I if ctx.chi(b) == 1 else ac.CHARACTER_CASE_II
            assert res.method == expected


def test_bc_relation_witness(gf49):
    q, ctx = 7, gf49
    F = make_f1(ctx)
    c, (z1, z2) = next((c, xs) for c, xs in F.classes.items() if len(xs) == 2)
    b = ctx.mul(c, ctx.sub(z1, z2))
    assert ac.bc_relation_holds(ctx, q, b, c)
    assert ac.bc_relation_holds(ctx, q, b, ctx.neg(c))
    passing = [a for a in range(1, ctx.order) if ac.bc_relation_holds(ctx, q, b, ctx.mul(a, c))]
    assert passing == [1, ctx.minus_one]


def test_bc_relation_rejects_subfield_ratio(gf49):
    # b/c in GF(7)* gives (b/c)^(q-1) = 1
    for c in range(1, 49):
        for r in range(1, 7):
            assert not ac.bc_relation_holds(gf49, 7, gf49.mul(r, c), c)
    with pytest.raises(ValueError):
        ac.bc_relation_holds(gf49, 7, 0, 1)


@pytest.mark.parametrize("q", [7, 19])
def test_case2_root_pairs(q):
    ctx = gf_q2(q)
    F = make_f2(ctx)
    four = ctx.element(4)

    def target(c):
        return ctx.sub(ctx.mul(c, c), ctx.div(four, ctx.pow(c, q - 1)))

    checked = 0
    for c, xs in F.classes.items():
        if c == 0 or len(xs) != 2 or ctx.chi(c) != -1:
            continue
        checked += 1
        pairs = ac.case2_root_pairs(ctx, q, c)
        assert len(pairs) == 4
        const = ctx.div(ctx.sub(ctx.sub(ctx.pow(c, q + 1), ctx.pow(c, q)), c),
                        ctx.mul(c, ctx.sub(ctx.pow(c, q + 1), four)))
        for z1, _ in pairs:
            assert ctx.add(ctx.add(ctx.mul(z1, z1), z1), const) == 0
        bs = [ac.case2_b(ctx, c, z1, z2) for z1, z2 in pairs]
        assert bs.count(0) == 2
        assert all(ctx.mul(b, b) == target(c) for b in bs if b)
        # the genuine preimage pair is among them and the formula gives F(z1) - F(z2)
        z1, z2 = sorted(xs, key=ctx.chi)
        assert (z1, z2) in pairs
        assert ac.case2_b(ctx, c, z1, z2) == ctx.sub(F(z1), F(z2))
    assert checked > 0


def test_case2_root_pairs_degenerate(gf49):
    assert ac.case2_root_pairs(gf49, 7, 0) == []
    for c in range(1, 49):
        disc = gf49.sub(gf49.pow(c, 8), 4)
        # c^(q+1) - 4 lies in GF(q), so it is never a nonsquare in GF(q^2)
        assert gf49.chi(disc) >= 0
        if disc == 0:
            assert ac.case2_root_pairs(gf49, 7, c) == []
    with pytest.raises(HypothesisViolatedError):
        ac.case2_root_pairs(gf_q2(13), 13, 1)
