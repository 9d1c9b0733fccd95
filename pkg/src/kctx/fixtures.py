"""Worked examples as named, self-checking fixtures.

Each fixture recomputes a set of known values with the library and compares
them with the expected text renderings; ``run`` returns a report per fixture.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .context import (
    ATTRIBUTES,
    OBJECTS,
    ConceptKind,
    Context,
    Protoconcept,
    boolean_parts,
    classify,
    derive,
    enumerate_concepts,
    enumerate_pairs,
    make,
    proto_leq,
    proto_op,
)
from .dba.algebra import boolean_dba, check_axioms
from .dba.filters import filters_ideals
from .dba.parts import bao_bridge, powerset_bao, structure_parts
from .dba.represent import representation
from .kripke import (
    KripkeContext,
    approx_via_terms,
    complex_algebra,
    frame_bridge,
    frame_context,
    kc_ds,
    kc_property_report,
    modal_laws,
    modal_op,
    upper_R,
)
from .logic.derivations import derivations, derived_rules, mutations
from .logic.proofs import check_derivation
from .logic.semantics import countermodel_search
from .logic.syntax import parse_sequent
from .rough import concept_approx, induced_relations, pair_approx


def table1():
    """Five animals and four properties (a needs water, b lives in water, c on land, g moves)."""
    return Context.from_matrix(
        ("Leech", "Bream", "Frog", "Dog", "Cat"), ("a", "b", "c", "g"),
        ["XX.X", "XX.X", "XXXX", "X.XX", "X.XX"],
    )


def table2():
    """Four diseases and five symptoms."""
    return Context.from_matrix(
        ("D1", "D2", "D3", "D4"), ("S1", "S2", "S3", "S4", "S5"),
        ["XX.X.", "..X.X", "..XXX", "XX.X."],
    )


def table3():
    return Context.from_matrix(("c", "d", "e"), ("a", "b"), ["X.", ".X", "X."])


def table3_kc():
    """R = {(c,d), (d,e)} on objects and S = {(a,b), (b,a)} on attributes."""
    return KripkeContext.from_pairs(table3(), [(0, 1), (1, 2)], [(0, 1), (1, 0)])


def broken_algebra():
    """Two-element Boolean dBao with ¬⊤ = ⊤: fails the axioms, used as a negative example."""
    alg = boolean_dba(1)
    neg = np.array(alg.neg)
    neg[alg.top] = alg.top
    return type(alg)(alg.meet, alg.join, neg, alg.lneg, alg.top, alg.bot, alg.labels,
                     opI=alg.opI, opC=alg.opC)


# -- rendering helpers ---------------------------------------------------------------


def _set(ctx, side, mask):
    names = ctx.object_names(mask) if side == OBJECTS else ctx.attribute_names(mask)
    return "{" + ",".join(names) + "}"


def _classes(ctx, side, space):
    return "{" + ",".join(_set(ctx, side, c) for c in space.classes()) + "}"


def _pair(ctx, p):
    if hasattr(p, "pair"):
        p = p.pair
    return ctx.format_pair(*p)


@dataclass
class Check:
    label: str
    expected: object
    actual: object

    @property
    def ok(self):
        return self.expected == self.actual

    def to_dict(self):
        return {"check": self.label, "expected": self.expected, "actual": self.actual, "ok": self.ok}


@dataclass
class FixtureResult:
    name: str
    description: str
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self):
        return all(c.ok for c in self.checks)

    def to_dict(self):
        return {"fixture": self.name, "description": self.description, "passed": self.passed,
                "checks": [c.to_dict() for c in self.checks]}


class _Collector:
    def __init__(self):
        self.checks = []

    def __call__(self, label, expected, actual):
        self.checks.append(Check(label, expected, actual))


# -- the fixtures -------------------------------------------------------------------


def _fx_table1(check):
    ctx = table1()
    kc = kc_ds(ctx)
    e1, r1 = induced_relations(ctx, "E1")
    e2, r2 = induced_relations(ctx, "E2")
    check("E1 classes", "{{Leech,Bream},{Frog},{Dog,Cat}}", _classes(ctx, OBJECTS, e1))
    check("E2 classes", "{{a,g},{b},{c}}", _classes(ctx, ATTRIBUTES, e2))
    check("E1, E2 equivalences", True, r1.equivalence and r2.equivalence)
    check("{Leech,Bream}'", "{a,b,g}", _set(ctx, ATTRIBUTES, derive(ctx, OBJECTS, ctx.object_set(["Leech", "Bream"]))))
    check("kind of ({Leech,Bream},{a,b})", "protoconcept",
          classify(ctx, ctx.object_set(["Leech", "Bream"]), ctx.attribute_set("ab")).value)

    A = ctx.object_set(["Leech", "Bream", "Dog"])
    B = ctx.attribute_set(["a", "c"])
    ca, cb = concept_approx(kc, OBJECTS, A), concept_approx(kc, ATTRIBUTES, B)
    check("A feasible", False, ca.feasible)
    check("B feasible", False, cb.feasible)
    check("lower E1-approximation of A", "{Leech,Bream}", _set(ctx, OBJECTS, e1.lower(A)))
    check("upper E1-approximation of A", "{Leech,Bream,Dog,Cat}", _set(ctx, OBJECTS, e1.upper(A)))
    check("lower concept approximation of A", "({Leech,Bream,Frog},{a,b,g})", _pair(ctx, ca.lower))
    check("upper concept approximation of A", "({Leech,Bream,Frog,Dog,Cat},{a,g})", _pair(ctx, ca.upper))
    check("lower concept approximation of B", "({Frog,Dog,Cat},{a,c,g})", _pair(ctx, cb.lower))
    check("upper concept approximation of B", "({Frog,Dog,Cat},{a,c,g})", _pair(ctx, cb.upper))
    check("kind of (A,B)", "none", classify(ctx, A, B).value)
    pa = pair_approx(kc, A, B)
    check("lower approximation of (A,B)", "({Frog},{a,b,c,g})", _pair(ctx, pa.lower))
    check("upper approximation of (A,B)", "({Leech,Bream,Frog,Dog,Cat},{a,g})", _pair(ctx, pa.upper))
    frog = concept_approx(kc, OBJECTS, ctx.object_set(["Frog"]))
    check("{Frog} exact", "({Frog},{a,b,c,g})", _pair(ctx, frog.exact) if frog.feasible else None)
    concept = pair_approx(kc, ctx.object_set(["Frog"]), ctx.all_attributes)
    check("concept returned unchanged", "({Frog},{a,b,c,g})", _pair(ctx, concept.exact) if concept.is_exact else None)


def _fx_table2(check):
    ctx = table2()
    e1, _ = induced_relations(ctx, "E1")
    e2, _ = induced_relations(ctx, "E2")
    check("E1 classes", "{{D1,D4},{D2},{D3}}", _classes(ctx, OBJECTS, e1))
    check("E2 classes", "{{S1,S2},{S3,S5},{S4}}", _classes(ctx, ATTRIBUTES, e2))
    kc = kc_ds(ctx)
    rep = kc_property_report(kc)
    check("reflexive, symmetric, transitive", [True, True, True],
          [rep.reflexive, rep.symmetric, rep.transitive])
    check("complex algebra is topological", True, check_axioms(complex_algebra(kc), "topological").passed)


def _fx_table3(check):
    ctx = table3()
    kc = table3_kc()
    ce, d = make(ctx, "ce", "a"), make(ctx, "d", "b")
    check("{c,e}'", "{a}", _set(ctx, ATTRIBUTES, derive(ctx, OBJECTS, ctx.object_set("ce"))))
    check("kind of ({c,e},{a})", "concept", classify(ctx, *ce.pair).value)
    check("protoconcepts", 8, len(enumerate_pairs(ctx)))
    check("concepts", sorted(["({c,d,e},{})", "({c,e},{a})", "({d},{b})", "({},{a,b})"]),
          sorted(_pair(ctx, c) for c in enumerate_concepts(ctx, ConceptKind.CONCEPT)))
    check("({c,e},{a}) meet ({d},{b})", "({},{a,b})", _pair(ctx, proto_op(ctx, "meet", ce, d)))
    check("neg ({c,e},{a})", "({d},{b})", _pair(ctx, proto_op(ctx, "neg", ce)))
    check("({d},{b}) below ({c,e},{a})", False, proto_leq(ctx, d, ce))
    check("fR({c,e},{a})", "({d,e},{})", _pair(ctx, modal_op(kc, "fR", ce)))
    check("fS({c,e},{a})", "({d},{b})", _pair(ctx, modal_op(kc, "fS", ce)))
    rep = kc_property_report(kc)
    check("symmetric from the right", True, rep.right.symmetric)
    check("reflexive", False, rep.reflexive)
    check("forth condition", True, rep.forth)
    check("back condition", False, rep.back)
    check("back witness (g, m, m1)", ["e", "a", "b"],
          [ctx.objects[rep.back_witness[0]], ctx.attributes[rep.back_witness[1]],
           ctx.attributes[rep.back_witness[2]]] if rep.back_witness else None)
    full = complex_algebra(kc)
    check("full complex algebra size", 8, full.n)
    check("dbao level", True, check_axioms(full, "dbao").passed)
    check("contextual", True, check_axioms(full, "contextual").passed)
    check("semiconcept algebra size", 8, complex_algebra(kc, "semiconcept").n)
    meet_part, join_part = boolean_parts(ctx)
    check("meet part size", 8, meet_part.size)
    check("join part size", 4, join_part.size)


def _fx_modal_laws(check):
    for name, kc in (("table3", table3_kc()), ("table1 E1/E2", kc_ds(table1())),
                     ("table2 E1/E2", kc_ds(table2()))):
        laws = modal_laws(kc)
        check(f"{name}: operator identities", [], sorted(k for k, v in laws.items() if v is not None))
    check("table1 E1/E2: topological level", True, check_axioms(complex_algebra(kc_ds(table1())), "topological").passed)


def _fx_representation(check):
    for k in (1, 2):
        alg = boolean_dba(k)
        rep = representation(alg)
        check(f"{1 << k}-element Boolean dBao: primary filters", k, len(filters_ideals(alg).primary_filters))
        check(f"{1 << k}-element Boolean dBao: representation", [], rep.failures)
        check(f"{1 << k}-element Boolean dBao: injective", True, rep.injective)
        check(f"{1 << k}-element Boolean dBao: canonical relations reflexive and transitive",
              True, rep.canonical.reflexive_transitive)
    rep = representation(complex_algebra(table3_kc()))
    check("table3 complex algebra: representation", [], rep.failures)
    check("broken algebra fails dbao", False, check_axioms(broken_algebra(), "dbao").passed)


def _fx_frame_bridge(check):
    kc = frame_context(2, [(0, 1)])
    ctx = kc.context
    check("m_R({2})", "{1}", _set(ctx, OBJECTS, upper_R(kc, ctx.object_set(["2"]))))
    check("W={1,2}, R={(1,2)} bridge", [], frame_bridge(2, [(0, 1)]).failures)
    bao = powerset_bao(2, [(0, 1)])
    dbao = bao_bridge(bao)
    check("powerset Bao lifted to a dBao", True, check_axioms(dbao, "dbao").passed)
    check("parts of the lifted dBao verified", True, structure_parts(dbao).verified)


def _fx_terms(check):
    ctx = table1()
    kc = kc_ds(ctx)
    A = ctx.object_set(["Leech", "Bream", "Dog"])
    B = ctx.attribute_set(["a", "c"])
    x = Protoconcept.trusted(ctx, A, derive(ctx, OBJECTS, A))
    y = Protoconcept.trusted(ctx, derive(ctx, ATTRIBUTES, B), B)
    t = approx_via_terms(kc, x, y)
    check("fR(x) | fR(x)", "({Leech,Bream,Frog},{a,b,g})", _pair(ctx, t.lower_A))
    check("fR_dual(x) | fR_dual(x)", "({Leech,Bream,Frog,Dog,Cat},{a,g})", _pair(ctx, t.upper_A))
    check("fS_dual(y) & fS_dual(y)", "({Frog,Dog,Cat},{a,c,g})", _pair(ctx, t.lower_B))
    check("fS(y) & fS(y)", "({Frog,Dog,Cat},{a,c,g})", _pair(ctx, t.upper_B))
    check("agrees with concept approximations", True, t.agrees)


def _fx_derivations(check):
    for name, d in derivations().items():
        check(f"{name}: {d.seq}", True, check_derivation(d, "CDBL").ok)
    for name, d in derived_rules().items():
        rep = check_derivation(d, "CDBL", allow_hypotheses=True)
        check(f"{name}: {d.seq} from {', '.join(rep.hypotheses)}", True, rep.ok)
    for label, d, hyp in mutations():
        check(f"mutation rejected: {label}", False, check_derivation(d, "CDBL", allow_hypotheses=hyp).ok)


def _fx_countermodels(check):
    w = countermodel_search(parse_sequent("top |- top & top"), "CDBL", 1, 1)
    check("top |- top & top: witness incidence", ["X"], w.kc.context.matrix() if w else None)
    w = countermodel_search(parse_sequent("#p |- p"), "MCDBL4", 1, 1, "all")
    check("#p |- p: witness shape", [1, 1, [], []],
          [w.kc.context.n_objects, w.kc.context.n_attributes, w.kc.R_pairs(), w.kc.S_pairs()] if w else None)
    check("#p |- p over reflexive-transitive models", None,
          countermodel_search(parse_sequent("#p |- p"), "MCDBL4", 2, 2, "rt"))
    check("p & q |- p", None, countermodel_search(parse_sequent("p & q |- p"), "CDBL", 2, 2))


FIXTURES = {
    "table1": ("rough approximations on the animals context", _fx_table1),
    "table2": ("induced equivalences on the diseases context", _fx_table2),
    "table3": ("three-object Kripke context: operations, operators, back and forth", _fx_table3),
    "modal-laws": ("operator identities of complex algebras", _fx_modal_laws),
    "representation": ("canonical Kripke context and representation map", _fx_representation),
    "frame-bridge": ("frames as Kripke contexts with incidence !=", _fx_frame_bridge),
    "terms": ("approximations expressed as modal terms", _fx_terms),
    "derivations": ("derived sequents and rules; mutated proofs rejected", _fx_derivations),
    "countermodels": ("countermodel search witnesses", _fx_countermodels),
}


def fixture_names():
    return list(FIXTURES)


def run_fixture(name):
    try:
        description, fn = FIXTURES[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; expected one of {', '.join(FIXTURES)}") from None
    check = _Collector()
    start = time.perf_counter()
    fn(check)
    return FixtureResult(name, description, check.checks, time.perf_counter() - start)


def run(names=None):
    return [run_fixture(n) for n in (names or FIXTURES)]
