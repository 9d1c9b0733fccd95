import random

import pytest

import oracle
from kctx.context import ConceptKind, Protoconcept, classify, enumerate_pairs, make
from kctx.dba.algebra import check_axioms
from kctx.errors import BudgetExceeded, DimensionError
from kctx.fixtures import table1, table3, table3_kc
from kctx.kripke import (
    KripkeContext,
    approx_via_terms,
    complex_algebra,
    frame_bridge,
    kc_ds,
    kc_property_report,
    modal_laws,
    modal_op,
    modal_pair,
)
from kctx.logic.semantics import small_context


def random_kc(rnd, g, m, reflexive_transitive=False):
    ctx = small_context(g, m, rnd.getrandbits(g * m))
    R = [rnd.getrandbits(g) for _ in range(g)]
    S = [rnd.getrandbits(m) for _ in range(m)]
    if reflexive_transitive:
        R, S = _rt_closure(R), _rt_closure(S)
    return KripkeContext(ctx, R, S)


def _rt_closure(rows):
    rows = [r | (1 << i) for i, r in enumerate(rows)]
    changed = True
    while changed:
        changed = False
        for i, r in enumerate(rows):
            new = r
            for j in range(len(rows)):
                if r >> j & 1:
                    new |= rows[j]
            if new != r:
                rows[i], changed = new, True
    return rows


def test_kripke_context_validation():
    ctx = table3()
    with pytest.raises(DimensionError):
        KripkeContext(ctx, (1, 2), (1, 2))
    with pytest.raises(DimensionError):
        KripkeContext(ctx, (1, 2, 8), (1, 2))
    kc = table3_kc()
    assert kc.R_pairs() == [(0, 1), (1, 2)] and kc.S_pairs() == [(0, 1), (1, 0)]


def test_modal_operators_table3():
    kc = table3_kc()
    ctx = kc.context
    ce = make(ctx, "ce", "a")
    # d -> e stays inside {c,e}; e has no successor at all
    assert str(modal_op(kc, "fR", ce)) == "({d,e},{})"
    assert str(modal_op(kc, "fR_dual", ce)) == "({d},{b})"
    # S swaps a and b
    assert str(modal_op(kc, "fS", ce)) == "({d},{b})"
    assert str(modal_op(kc, "fS_dual", ce)) == "({d},{b})"
    with pytest.raises(ValueError):
        modal_pair(kc, "box", ce.pair)


def test_modal_pair_matches_oracle():
    rnd = random.Random(3)
    for _ in range(60):
        kc = random_kc(rnd, rnd.randint(1, 3), rnd.randint(1, 3))
        ctx = kc.context
        inc = oracle.incidence(ctx)
        G, M = ctx.n_objects, ctx.n_attributes
        Rr, Sr = oracle.rel_pairs(kc.R), oracle.rel_pairs(kc.S)
        for A, B in enumerate_pairs(ctx):
            sA, sB = oracle.to_set(A), oracle.to_set(B)
            for which, side in (("fR", oracle.lower), ("fR_dual", oracle.upper)):
                A1 = side(Rr, G, sA)
                assert modal_pair(kc, which, (A, B)) == (oracle.to_mask(A1), oracle.to_mask(oracle.prime_objs(inc, M, A1)))
            for which, side in (("fS", oracle.lower), ("fS_dual", oracle.upper)):
                B1 = side(Sr, M, sB)
                assert modal_pair(kc, which, (A, B)) == (oracle.to_mask(oracle.prime_attrs(inc, G, B1)), oracle.to_mask(B1))


def test_complex_algebra_table3():
    kc = table3_kc()
    full = complex_algebra(kc)
    assert full.n == 8
    assert check_axioms(full, "dbao").passed
    assert check_axioms(full, "contextual").passed
    semi = complex_algebra(kc, "semiconcept")
    assert check_axioms(semi, "pure").passed
    assert all(classify(kc.context, *p).rank >= ConceptKind.SEMICONCEPT.rank for p in semi.elements)
    with pytest.raises(ValueError):
        complex_algebra(kc, "concept")
    with pytest.raises(BudgetExceeded):
        complex_algebra(kc_ds(table1()), budget=10)


def test_property_report_table3():
    rep = kc_property_report(table3_kc())
    assert rep.forth and not rep.back and not rep.bisimulation
    assert rep.back_witness == (2, 0, 1)
    assert not rep.reflexive and rep.right.symmetric
    d = rep.to_dict()
    assert d["back_witness"] == [2, 0, 1] and d["forth_witness"] is None


def test_property_report_kc_ds_is_bisimulation():
    rnd = random.Random(5)
    for _ in range(50):
        ctx = small_context(3, 3, rnd.getrandbits(9))
        rep = kc_property_report(kc_ds(ctx))
        assert rep.bisimulation and rep.reflexive and rep.symmetric and rep.transitive


def _forth_back_oracle(kc):
    ctx = kc.context
    inc = oracle.incidence(ctx)
    Rr, Sr = oracle.rel_pairs(kc.R), oracle.rel_pairs(kc.S)
    G, M = range(ctx.n_objects), range(ctx.n_attributes)
    forth = all(any((m, m1) in Sr and (g1, m1) in inc for m1 in M)
                for (g, m) in inc for g1 in G if (g, g1) in Rr)
    back = all(any((g, g1) in Rr and (g1, m1) in inc for g1 in G)
               for (g, m) in inc for m1 in M if (m, m1) in Sr)
    return forth, back


def test_property_report_matches_oracle():
    rnd = random.Random(11)
    for _ in range(200):
        kc = random_kc(rnd, rnd.randint(1, 4), rnd.randint(1, 4))
        rep = kc_property_report(kc)
        assert (rep.forth, rep.back) == _forth_back_oracle(kc)


def test_modal_laws_random():
    rnd = random.Random(17)
    for i in range(60):
        kc = random_kc(rnd, rnd.randint(1, 3), rnd.randint(1, 3), reflexive_transitive=i % 2 == 0)
        laws = modal_laws(kc)
        assert all(v is None for v in laws.values()), laws
        if i % 2 == 0:
            assert "fR fR = fR" in laws


def test_modal_laws_topological_needs_preorders():
    # table 3 relations are not reflexive: the contractive law fails when forced
    laws = modal_laws(table3_kc(), topological=True)
    assert laws["fR(x) <= x"] is not None
    assert "fR(x) <= x" not in modal_laws(table3_kc())


def test_expansive_dual_law_fails_on_non_idempotent_element():
    ctx = small_context(1, 1, 1)
    kc = KripkeContext.identity(ctx)
    empty = (0, 0)
    fRd = modal_pair(kc, "fR_dual", empty)
    assert fRd == (0, 1)
    # (∅,∅) ⋢ (∅,{m}) since the intent grows
    assert not (empty[0] & ~fRd[0] == 0 and fRd[1] & ~empty[1] == 0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_frame_bridge_all_relations(n):
    for mask in range(1 << (n * n)):
        R = [(i, j) for i in range(n) for j in range(n) if mask >> (i * n + j) & 1]
        rep = frame_bridge(n, R)
        assert rep.passed, (R, rep.failures)


def test_frame_bridge_budget():
    with pytest.raises(BudgetExceeded):
        frame_bridge(6, [], budget=100)


def test_approx_via_terms():
    ctx = table1()
    kc = kc_ds(ctx)
    t = approx_via_terms(kc, make(ctx, ["Leech", "Bream", "Dog"], ["a", "g"]), make(ctx, ["Frog", "Dog", "Cat"], "acg"))
    assert t.agrees
    assert str(t.lower_A) == "({Leech,Bream,Frog},{a,b,g})"
    assert str(t.upper_A) == "({Leech,Bream,Frog,Dog,Cat},{a,g})"
    rnd = random.Random(23)
    for _ in range(50):
        kc = kc_ds(small_context(3, 3, rnd.getrandbits(9)))
        ps = enumerate_pairs(kc.context)
        x, y = rnd.choice(ps), rnd.choice(ps)
        assert approx_via_terms(kc, Protoconcept.trusted(kc.context, *x), Protoconcept.trusted(kc.context, *y)).agrees
