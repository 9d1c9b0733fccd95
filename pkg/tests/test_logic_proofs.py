import pytest

from kctx.errors import FormatError
from kctx.logic import CDBL, MCDBL, MCDBL4, check_derivation, get_system, make_system, match_axiom
from kctx.logic.derivations import (
    APPENDIX,
    derivations,
    derived_rules,
    dual_formula,
    dual_sequent,
    dualize,
    mutations,
)
from kctx.logic.proofs import Derivation, node
from kctx.logic.syntax import parse_formula, parse_sequent


@pytest.mark.parametrize("name", sorted(derivations()))
def test_fixture_accepted(name):
    d = derivations()[name]
    rep = check_derivation(d, "CDBL")
    assert rep.ok, [vars(n) for n in rep.failures()]
    assert rep.hypotheses == []


def test_fixture_count_and_appendix():
    fx = derivations()
    assert len(fx) == 24
    assert set(APPENDIX) <= set(fx)


def test_fixture_conclusions():
    fx = derivations()
    assert str(fx["meet-commutative"].seq) == "p & q |- q & p"
    assert str(fx["join-commutative"].seq) == "q | p |- p | q"
    assert str(fx["absorption"].seq) == "p & (p | q) |- p & p"


@pytest.mark.parametrize("name", ["rule-r6", "rule-r7"])
def test_derived_rules_need_hypotheses(name):
    d = derived_rules()[name]
    rep = check_derivation(d, allow_hypotheses=True)
    assert rep.ok and len(rep.hypotheses) == 2
    rep = check_derivation(d)
    assert not rep.ok
    assert all(n.message == "open hypothesis" for n in rep.failures())


@pytest.mark.parametrize("label,d,allow", mutations(), ids=[m[0] for m in mutations()])
def test_mutation_rejected(label, d, allow):
    assert not check_derivation(d, allow_hypotheses=allow).ok


def test_twenty_mutations():
    assert len(mutations()) == 20


def test_dualize_is_involutive():
    for d in list(derivations().values()) + list(derived_rules().values()):
        assert dualize(dualize(d)).to_dict() == d.to_dict()
    f = parse_formula("!(p & #q) | ~r")
    assert dual_formula(dual_formula(f)) == f
    assert str(dual_formula(f)) == "~(p | $q) & !r"
    assert str(dual_sequent(parse_sequent("p & q |- p"))) == "p |- p | q"


def test_dict_round_trip():
    d = derivations()["meet-associative"]
    assert Derivation.from_dict(d.to_dict()).to_dict() == d.to_dict()
    assert check_derivation(d.to_dict()).ok
    with pytest.raises(FormatError):
        Derivation.from_dict({"seq": "p |- p"})
    with pytest.raises(FormatError):
        Derivation.from_dict({"seq": "p |- p", "by": "axiom:1", "premises": "none"})


def test_node_messages():
    rep = check_derivation(node("p |- q", "axiom:1"))
    assert rep.failures()[0].message == "not an instance of axiom 1"
    rep = check_derivation(node("p |- p", "axiom:99"))
    assert "no axiom" in rep.failures()[0].message
    rep = check_derivation(node("p |- p", "magic"))
    assert "bad justification" in rep.failures()[0].message
    rep = check_derivation(node("p |- p", "axiom:1", node("p |- p", "axiom:1")))
    assert rep.failures()[0].message == "an axiom node has no premises"
    rep = check_derivation(node("p & r |- q & r", "rule:R1"))
    assert "takes 1 premise" in rep.failures()[0].message


def test_rules_one_step():
    ax = node("p |- p", "axiom:1")
    pq = node("p & q |- p", "axiom:2a")
    assert check_derivation(node("p & r |- p & r", "rule:R1", ax)).ok
    assert check_derivation(node("r & p |- r & p", "rule:R1'", ax)).ok
    assert check_derivation(node("!p |- !(p & q)", "rule:R3", pq)).ok
    assert not check_derivation(node("!(p & q) |- !p", "rule:R3", pq)).ok
    assert check_derivation(node("~p |- ~(p & q)", "rule:R3'", pq)).ok
    chain = node("p & q |- p", "rule:R4", pq, ax)
    assert check_derivation(chain).ok


def test_r5_shape():
    prem = [node(s, "hyp") for s in ("p & q |- p & p", "p & p |- p & q", "p | q |- q | q", "q | q |- p | q")]
    assert check_derivation(node("p |- q", "rule:R5", *prem), allow_hypotheses=True).ok
    prem[2] = node("p | q |- p | p", "hyp")
    rep = check_derivation(node("p |- q", "rule:R5", *prem), allow_hypotheses=True)
    assert "[3]" in rep.failures()[-1].message


def test_modal_systems():
    d = node("#p |- #(p | q)", "rule:R8", node("p |- p | q", "axiom:2b"))
    assert check_derivation(d, "MCDBL").ok
    assert not check_derivation(d, "CDBL").ok
    assert not check_derivation(node("#p |- p", "axiom:18a"), "MCDBL").ok
    assert check_derivation(node("#p |- p", "axiom:18a"), "MCDBL4").ok
    assert check_derivation(node("$p |- $(p | q)", "rule:R9", node("p |- p | q", "axiom:2b")), "MCDBL").ok


def test_both_way_axioms():
    assert check_derivation(node("!!(p & q) |- p & q", "axiom:7a")).ok
    assert check_derivation(node("p & q |- !!(p & q)", "axiom:7a")).ok
    assert match_axiom(parse_sequent("#p & #q |- #(p & q)"), "15a") == match_axiom(
        parse_sequent("#(p & q) |- #p & #q"), "15a")


def test_systems_and_sigma():
    assert get_system("MCDBL4") is MCDBL4 and get_system(CDBL) is CDBL
    with pytest.raises(ValueError):
        get_system("K")
    s = make_system("MCDBL-T", {"t": "#a |- a"})
    assert s.extra == ["t"] and check_derivation(node("#q |- q", "axiom:t"), s).ok
    with pytest.raises(ValueError):
        make_system("bad", {"1": "a |- a"})
    assert MCDBL.modal and not CDBL.modal
