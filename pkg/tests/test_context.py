import itertools

import pytest

import oracle
from kctx import bits
from kctx.context import (
    ATTRIBUTES,
    OBJECTS,
    ConceptKind,
    Context,
    Protoconcept,
    boolean_parts,
    bot,
    classify,
    derive,
    enumerate_concepts,
    enumerate_pairs,
    make,
    proto_leq,
    proto_op,
    top,
)
from kctx.errors import BudgetExceeded, ContextMismatch, DimensionError
from kctx.fixtures import table1, table3
from kctx.logic.semantics import all_contexts, small_context


def names(ctx, side, mask):
    return ctx.object_names(mask) if side == OBJECTS else ctx.attribute_names(mask)


# -- derive ---------------------------------------------------------------------


def test_derive_table3_ce():
    ctx = table3()
    assert names(ctx, ATTRIBUTES, derive(ctx, OBJECTS, ctx.object_set("ce"))) == ["a"]


def test_derive_empty_objects_gives_all_attributes():
    ctx = table1()
    assert derive(ctx, OBJECTS, 0) == ctx.all_attributes
    assert derive(ctx, ATTRIBUTES, 0) == ctx.all_objects


def test_derive_table1_leech_bream():
    ctx = table1()
    got = derive(ctx, OBJECTS, ctx.object_set(["Leech", "Bream"]))
    assert names(ctx, ATTRIBUTES, got) == ["a", "b", "g"]


def test_derive_rejects_oversized_set():
    ctx = table3()
    with pytest.raises(DimensionError):
        derive(ctx, OBJECTS, 1 << 3)
    with pytest.raises(ValueError):
        derive(ctx, "rows", 0)


@pytest.mark.parametrize("ctx", list(all_contexts(2, 3))[::7])
def test_derive_matches_oracle(ctx):
    inc = oracle.incidence(ctx)
    for A in oracle.subsets(ctx.n_objects):
        want = oracle.prime_objs(inc, ctx.n_attributes, A)
        assert oracle.to_set(derive(ctx, OBJECTS, oracle.to_mask(A))) == want
    for B in oracle.subsets(ctx.n_attributes):
        want = oracle.prime_attrs(inc, ctx.n_objects, B)
        assert oracle.to_set(derive(ctx, ATTRIBUTES, oracle.to_mask(B))) == want


def test_galois_laws_exhaustive_small():
    for ctx in all_contexts(3, 3):
        for A in range(1 << ctx.n_objects):
            A1 = derive(ctx, OBJECTS, A)
            A2 = derive(ctx, ATTRIBUTES, A1)
            assert bits.subset(A, A2)
            assert derive(ctx, OBJECTS, A2) == A1
            for X in range(1 << ctx.n_objects):
                if bits.subset(A, X):
                    assert bits.subset(derive(ctx, OBJECTS, X), A1)


# -- classify -------------------------------------------------------------------


def test_classify_examples():
    ctx3 = table3()
    assert classify(ctx3, ctx3.object_set("ce"), ctx3.attribute_set("a")) is ConceptKind.CONCEPT
    ctx1 = table1()
    assert classify(ctx1, ctx1.object_set(["Leech", "Bream"]), ctx1.attribute_set("ab")) is ConceptKind.PROTOCONCEPT
    assert classify(ctx1, ctx1.all_objects, 0).rank >= ConceptKind.SEMICONCEPT.rank


@pytest.mark.parametrize("ctx", list(all_contexts(3, 2))[::5])
def test_classify_matches_oracle(ctx):
    for A in oracle.subsets(ctx.n_objects):
        for B in oracle.subsets(ctx.n_attributes):
            got = classify(ctx, oracle.to_mask(A), oracle.to_mask(B))
            assert got.value == oracle.kind(ctx, A, B)


# -- enumerate ------------------------------------------------------------------


def test_enumerate_table3():
    ctx = table3()
    assert len(enumerate_pairs(ctx)) == 8
    concepts = {ctx.format_pair(*p) for p in enumerate_pairs(ctx, "concept")}
    assert concepts == {"({c,d,e},{})", "({c,e},{a})", "({d},{b})", "({},{a,b})"}


def test_enumerate_full_1x1():
    ctx = Context.from_matrix(["g"], ["m"], ["X"])
    assert len(enumerate_pairs(ctx)) == 4


def test_enumerate_matches_oracle_and_is_sorted():
    for ctx in list(all_contexts(3, 3))[::11]:
        got = enumerate_pairs(ctx)
        want = {(oracle.to_mask(A), oracle.to_mask(B)) for A, B in oracle.protoconcepts(ctx)}
        assert set(got) == want and len(got) == len(want)
        keys = [(bits.bit_key(A, ctx.n_objects), bits.bit_key(B, ctx.n_attributes)) for A, B in got]
        assert keys == sorted(keys)


def test_enumeration_chain():
    for ctx in list(all_contexts(3, 3))[::13]:
        c = set(enumerate_pairs(ctx, "concept"))
        s = set(enumerate_pairs(ctx, "semiconcept"))
        p = set(enumerate_pairs(ctx, "protoconcept"))
        assert c <= s <= p


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_pairs(table1(), budget=100)
    with pytest.raises(ValueError):
        enumerate_pairs(table1(), "none")


# -- operations -----------------------------------------------------------------


def test_operation_examples():
    ctx = table3()
    ce, d = make(ctx, "ce", "a"), make(ctx, "d", "b")
    assert proto_op(ctx, "meet", ce, d).pair == bot(ctx).pair
    assert str(proto_op(ctx, "neg", ce)) == "({d},{b})"
    assert not proto_leq(ctx, d, ce)
    assert top(ctx).pair == (ctx.all_objects, 0)
    for x in enumerate_concepts(ctx):
        assert proto_op(ctx, "meet", x, bot(ctx)).pair == bot(ctx).pair
        assert proto_leq(ctx, bot(ctx), x) and proto_leq(ctx, x, x)


def test_operations_close_and_negations_idempotent():
    for ctx in list(all_contexts(3, 3))[::17]:
        xs = enumerate_concepts(ctx)
        for x, y in itertools.product(xs, repeat=2):
            for op in ("meet", "join", "vee", "wedge"):
                r = proto_op(ctx, op, x, y)
                Protoconcept(ctx, *r.pair)  # validated construction
        for x in xs:
            n, ln = proto_op(ctx, "neg", x), proto_op(ctx, "lneg", x)
            assert proto_op(ctx, "meet", n, n) == n
            assert proto_op(ctx, "join", ln, ln) == ln


def test_order_is_partial_order():
    for ctx in list(all_contexts(3, 3))[::29]:
        xs = enumerate_concepts(ctx)
        for x, y in itertools.product(xs, repeat=2):
            if proto_leq(ctx, x, y) and proto_leq(ctx, y, x):
                assert x == y
            for z in xs:
                if proto_leq(ctx, x, y) and proto_leq(ctx, y, z):
                    assert proto_leq(ctx, x, z)


def test_protoconcept_checked_and_context_mismatch():
    ctx = table1()
    with pytest.raises(DimensionError):
        make(ctx, ["Leech"], [])
    other = table3()
    with pytest.raises(ContextMismatch):
        proto_op(ctx, "meet", top(ctx), top(other))
    with pytest.raises(ValueError):
        proto_op(ctx, "implies", top(ctx))


def test_context_validation():
    with pytest.raises(DimensionError):
        Context.from_matrix(["g", "g"], ["m"], ["X", "."])
    with pytest.raises(DimensionError):
        Context.from_matrix(["g"], ["m", "n"], ["X"])


# -- Boolean parts --------------------------------------------------------------


def test_boolean_parts_sizes():
    meet, join = boolean_parts(table3())
    assert meet.size == 8 and join.size == 4
    ctx = Context.from_matrix(["g"], ["m"], ["X"])
    meet, join = boolean_parts(ctx)
    assert meet.size == 2 and join.size == 2


def test_boolean_parts_random_contexts():
    for ctx in list(all_contexts(3, 3))[::23]:
        meet, join = boolean_parts(ctx)
        assert meet.size == 1 << ctx.n_objects
        assert join.size == 1 << ctx.n_attributes


def test_small_context_bit_layout():
    ctx = small_context(2, 3, 0b100001)
    assert ctx.matrix() == ["X..", "..X"]
