import itertools
import random

import pytest

import oracle
from kctx.context import Protoconcept, enumerate_pairs, make
from kctx.dba.algebra import boolean_dba
from kctx.errors import BudgetExceeded
from kctx.fixtures import table3, table3_kc
from kctx.kripke import KripkeContext
from kctx.logic import countermodel_search, evaluate, parse, parse_formula, sequent_truth
from kctx.logic.derivations import derivations
from kctx.logic.semantics import SemanticsError, all_contexts, r5_premises, relations, small_context
from kctx.logic.syntax import Binary, Const, Unary, Var

from test_logic_syntax import random_formula


def naive_eval(kc, f, v):
    """Set-level evaluation; pairs are (frozenset extent, frozenset intent)."""
    ctx = kc.context
    G, M = ctx.n_objects, ctx.n_attributes
    inc = oracle.incidence(ctx)
    ext = lambda A: (A, oracle.prime_objs(inc, M, A))
    itt = lambda B: (oracle.prime_attrs(inc, G, B), B)
    if isinstance(f, Var):
        return v[f.name]
    if isinstance(f, Const):
        return (frozenset(range(G)), frozenset()) if f.name == "top" else (frozenset(), frozenset(range(M)))
    if isinstance(f, Unary):
        A, B = naive_eval(kc, f.arg, v)
        if f.op == "neg":
            return ext(frozenset(range(G)) - A)
        if f.op == "lneg":
            return itt(frozenset(range(M)) - B)
        if f.op == "box":
            return ext(oracle.lower(oracle.rel_pairs(kc.R), G, A))
        return itt(oracle.lower(oracle.rel_pairs(kc.S), M, B))
    (A1, B1), (A2, B2) = naive_eval(kc, f.left, v), naive_eval(kc, f.right, v)
    return ext(A1 & A2) if f.op == "meet" else itt(B1 & B2)


def test_evaluate_matches_naive_semantics():
    rnd = random.Random(4)
    for _ in range(150):
        g, m = rnd.randint(1, 3), rnd.randint(1, 3)
        ctx = small_context(g, m, rnd.getrandbits(g * m))
        kc = KripkeContext(ctx, [rnd.getrandbits(g) for _ in range(g)], [rnd.getrandbits(m) for _ in range(m)])
        pairs = enumerate_pairs(ctx)
        f = random_formula(rnd, 4)
        v = {name: rnd.choice(pairs) for name in ("p", "q", "r", "x1")}
        got = evaluate({k: Protoconcept.trusted(ctx, *p) for k, p in v.items()}, kc, f)
        want = naive_eval(kc, f, {k: (oracle.to_set(a), oracle.to_set(b)) for k, (a, b) in v.items()})
        assert (oracle.to_set(got.extent), oracle.to_set(got.intent)) == want, str(f)


def test_evaluate_on_algebra_and_errors():
    alg = boolean_dba(1)
    assert evaluate({"p": 1}, alg, parse_formula("!p | p")) == 1
    assert evaluate({"p": 1}, alg, parse_formula("#p")) == 1
    with pytest.raises(SemanticsError):
        evaluate({}, alg, parse_formula("p"))
    ctx = table3()
    with pytest.raises(SemanticsError):
        evaluate({}, ctx, parse_formula("#top"))
    with pytest.raises(SemanticsError):
        evaluate({"p": make(table3_kc().context, "", "ab")}, boolean_dba(1), parse_formula("p"))
    with pytest.raises(TypeError):
        evaluate({}, "model", parse_formula("top"))


def test_sequent_truth_examples():
    ctx = table3()
    assert sequent_truth(ctx, parse("p & q |- p"))
    # every protoconcept of this context is a semiconcept, so this holds here ...
    assert sequent_truth(ctx, parse("p |- p & p"))
    # ... but not in the full 1x1 context, where (∅,∅) is a protoconcept
    assert not sequent_truth(small_context(1, 1, 1), parse("p |- p & p"))
    assert sequent_truth(table3_kc(), parse("#(p & q) |- #p & #q"))
    with pytest.raises(BudgetExceeded):
        sequent_truth(ctx, parse("p & q & r |- p"), budget=10)


def _contextual_models():
    yield from itertools.islice(all_contexts(2, 2), 0, None, 3)


def test_fixture_conclusions_are_sound():
    fx = derivations()
    for ctx in _contextual_models():
        for name, d in fx.items():
            assert sequent_truth(ctx, d.seq), (name, ctx.matrix())


def test_r5_premises_characterize_order_in_contextual_models():
    rnd = random.Random(8)
    for ctx in _contextual_models():
        for _ in range(8):
            a, b = random_formula(rnd, 2, modal=False), random_formula(rnd, 2, modal=False)
            seq = parse(f"{a} |- {b}")
            both = all(sequent_truth(ctx, s) for s in r5_premises(seq))
            assert both == sequent_truth(ctx, seq), (str(seq), ctx.matrix())


def test_countermodel_examples():
    w = countermodel_search(parse("top |- top & top"), max_g=1, max_m=1)
    assert w.to_dict()["rows"] == ["X"]
    assert countermodel_search(parse("p & q |- p"), max_g=2, max_m=2) is None
    w = countermodel_search(parse("#p |- p"), "MCDBL4", max_g=1, max_m=1)
    d = w.to_dict()
    assert d["rows"] == ["."] and d["R"] == [] and d["S"] == []
    assert d["valuation"] == {"p": "({},{m1})"}
    # #p |- p holds once R is reflexive
    assert countermodel_search(parse("#p |- p"), "MCDBL", max_g=2, max_m=2, relation_mode="rt") is None


def test_countermodel_validates_system():
    with pytest.raises(SemanticsError):
        countermodel_search(parse("#p |- p"), "CDBL")
    with pytest.raises(ValueError):
        list(relations(2, "sym"))
    assert len(list(relations(2, "rt"))) == 4


def test_witness_really_falsifies():
    for text in ("p |- p & p", "!p |- ~p", "~~p |- p", "#p |- ##p"):
        seq = parse(text)
        w = countermodel_search(seq, "MCDBL", max_g=2, max_m=2)
        assert w is not None
        ctx = w.kc.context
        vals = {k: Protoconcept.trusted(ctx, *v) for k, v in w.valuation.items()}
        l, r = evaluate(vals, w.kc, seq.left), evaluate(vals, w.kc, seq.right)
        assert not (l.extent & ~r.extent == 0 and r.intent & ~l.intent == 0)
