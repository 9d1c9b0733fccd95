"""Hand-encoded derivations of the derived CDBL sequents and rules, plus their duals.

Each tree is instantiated with α=p, β=q, γ=r.  The ``b`` versions are produced
by :func:`dualize` rather than written out.
"""

from __future__ import annotations

from .proofs import Derivation, node
from .syntax import (
    BBOX,
    BOX,
    JOIN,
    LNEG,
    MEET,
    NEG,
    Binary,
    Const,
    Sequent,
    Unary,
    Var,
    parse_formula,
    to_text,
)

_SWAP_OP = {MEET: JOIN, JOIN: MEET, NEG: LNEG, LNEG: NEG, BOX: BBOX, BBOX: BOX}
_SWAP_RULE = {"R1": "R2", "R2": "R1", "R1'": "R2'", "R2'": "R1'", "R3": "R3'", "R3'": "R3",
              "R6": "R7", "R7": "R6", "R8": "R9", "R9": "R8", "R4": "R4"}


def dual_formula(f):
    if isinstance(f, Var):
        return f
    if isinstance(f, Const):
        return Const("bot" if f.name == "top" else "top")
    if isinstance(f, Unary):
        return Unary(_SWAP_OP[f.op], dual_formula(f.arg))
    return Binary(_SWAP_OP[f.op], dual_formula(f.left), dual_formula(f.right))


def dual_sequent(s):
    return Sequent(dual_formula(s.right), dual_formula(s.left))


def _dual_axiom(sid):
    if sid[-1] == "a":
        return sid[:-1] + "b"
    if sid[-1] == "b":
        return sid[:-1] + "a"
    return sid


def dualize(d):
    """Order-dual derivation: swap connectives, reverse sequents, mirror the rules."""
    prem = [dualize(p) for p in d.premises]
    by = d.by
    if by.startswith("axiom:"):
        by = "axiom:" + _dual_axiom(by[6:])
    elif by.startswith("rule:"):
        rule = by[5:]
        if rule not in _SWAP_RULE:
            raise ValueError(f"rule {rule} has no syntactic dual")
        by = "rule:" + _SWAP_RULE[rule]
        if rule == "R4":
            prem = prem[::-1]
    return Derivation(dual_sequent(d.seq), by, prem)


def _s(left, right):
    """Sequent from two formula strings, printed canonically."""
    return f"{to_text(parse_formula(left))} |- {to_text(parse_formula(right))}"


def _split(X):
    """X ⊢ X⊓X by axiom 4a, for X a meet."""
    return node(_s(X, f"({X}) & ({X})"), "axiom:4a")


# -- commutativity of ⊓ -------------------------------------------------------------


def meet_commutative(a="p", b="q"):
    X = f"{a} & {b}"
    return node(_s(X, f"{b} & {a}"), "rule:R4",
                _split(X),
                node(_s(f"({X}) & ({X})", f"{b} & {a}"), "rule:R6",
                     node(_s(X, b), "axiom:3a"),
                     node(_s(X, a), "axiom:2a")))


# -- associativity of ⊓ -------------------------------------------------------------


def meet_assoc_left():
    """(p⊓q)⊓r ⊢ p⊓(q⊓r)."""
    X = "(p & q) & r"
    first = node(_s(X, "q & r"), "rule:R4",  # the auxiliary step (I)
                 _split(X),
                 node(_s(f"({X}) & ({X})", "q & r"), "rule:R6",
                      node(_s(X, "q"), "rule:R4",
                           node(_s(X, "p & q"), "axiom:2a"),
                           node(_s("p & q", "q"), "axiom:3a")),
                      node(_s(X, "r"), "axiom:3a")))
    return node(_s(X, "p & (q & r)"), "rule:R4",
                _split(X),
                node(_s(f"({X}) & ({X})", "p & (q & r)"), "rule:R6",
                     node(_s(X, "p"), "rule:R4",
                          node(_s(X, "p & q"), "axiom:2a"),
                          node(_s("p & q", "p"), "axiom:2a")),
                     first))


def meet_assoc_right():
    """p⊓(q⊓r) ⊢ (p⊓q)⊓r, built the same way."""
    Y = "p & (q & r)"
    to_q = node(_s(Y, "q"), "rule:R4",
                node(_s(Y, "q & r"), "axiom:3a"),
                node(_s("q & r", "q"), "axiom:2a"))
    to_pq = node(_s(Y, "p & q"), "rule:R4",
                 _split(Y),
                 node(_s(f"({Y}) & ({Y})", "p & q"), "rule:R6",
                      node(_s(Y, "p"), "axiom:2a"), to_q))
    to_r = node(_s(Y, "r"), "rule:R4",
                node(_s(Y, "q & r"), "axiom:3a"),
                node(_s("q & r", "r"), "axiom:3a"))
    return node(_s(Y, "(p & q) & r"), "rule:R4",
                _split(Y),
                node(_s(f"({Y}) & ({Y})", "(p & q) & r"), "rule:R6", to_pq, to_r))


# -- (α⊓α)⊓β ⊣⊢ α⊓β ----------------------------------------------------------------


def meet_idem_left():
    Z = "(p & p) & q"
    return node(_s(Z, "p & q"), "rule:R4",
                _split(Z),
                node(_s(f"({Z}) & ({Z})", "p & q"), "rule:R6",
                     node(_s(Z, "p"), "rule:R4",
                          node(_s(Z, "p & p"), "axiom:2a"),
                          node(_s("p & p", "p"), "axiom:2a")),
                     node(_s(Z, "q"), "axiom:3a")))


def meet_idem_right():
    W = "p & q"
    ww = f"({W}) & ({W})"
    return node(_s(W, "(p & p) & q"), "rule:R4",
                _split(W),
                node(_s(ww, "(p & p) & q"), "rule:R6",
                     node(_s(W, "p & p"), "rule:R4",
                          _split(W),
                          node(_s(ww, "p & p"), "rule:R6",
                               node(_s(W, "p"), "axiom:2a"),
                               node(_s(W, "p"), "axiom:2a"))),
                     node(_s(W, "q"), "axiom:3a")))


# -- the remaining items --------------------------------------------------------------


def neg_idempotent():
    """¬α ⊢ ¬(α⊓α) from axiom 2a by R3."""
    return node(_s("!p", "!(p & p)"), "rule:R3", node(_s("p & p", "p"), "axiom:2a"))


def _absorb(V):
    return node(_s(V, "p & p"), "rule:R4",
                _split(V),
                node(_s(f"({V}) & ({V})", "p & p"), "rule:R6",
                     node(_s(V, "p"), "axiom:2a"),
                     node(_s(V, "p"), "axiom:2a")))


def absorption():
    return _absorb("p & (p | q)")


def absorption_vee():
    return _absorb("p & (p v q)")


def bot_contradiction():
    return node(_s("bot", "p & !p"), "axiom:11a")


def bot_neg_top():
    return node(_s("bot", "!top"), "axiom:11a")


# -- derived rules (hypotheses left open) ------------------------------------------------


def rule_r6():
    """From p⊢q and p⊢r infer p⊓p ⊢ q⊓r using R1, R1′ and R4."""
    return node(_s("p & p", "q & r"), "rule:R4",
                node(_s("p & p", "q & p"), "rule:R1", node("p |- q", "hyp")),
                node(_s("q & p", "q & r"), "rule:R1'", node("p |- r", "hyp")))


def rule_r6_instance():
    """The R6 derivation closed by taking the hypotheses to be axioms 2a and 3a."""
    X = "p & q"
    return node(_s(f"({X}) & ({X})", "p & q"), "rule:R4",
                node(_s(f"({X}) & ({X})", f"p & ({X})"), "rule:R1", node(_s(X, "p"), "axiom:2a")),
                node(_s(f"p & ({X})", "p & q"), "rule:R1'", node(_s(X, "q"), "axiom:3a")))


def rule_r7():
    return dualize(rule_r6())


def rule_r7_instance():
    return dualize(rule_r6_instance())


# name -> (builder, needs open hypotheses)
_A_SIDE = {
    "meet-commutative": meet_commutative,
    "meet-commutative-converse": lambda: meet_commutative("q", "p"),
    "meet-associative": meet_assoc_left,
    "meet-associative-converse": meet_assoc_right,
    "meet-idempotent-absorb": meet_idem_left,
    "meet-idempotent-absorb-converse": meet_idem_right,
    "neg-idempotent": neg_idempotent,
    "absorption": absorption,
    "absorption-vee": absorption_vee,
    "bot-contradiction": bot_contradiction,
    "bot-neg-top": bot_neg_top,
}

_DUAL_NAME = {
    "meet-commutative": "join-commutative",
    "meet-commutative-converse": "join-commutative-converse",
    "meet-associative": "join-associative",
    "meet-associative-converse": "join-associative-converse",
    "meet-idempotent-absorb": "join-idempotent-absorb",
    "meet-idempotent-absorb-converse": "join-idempotent-absorb-converse",
    "neg-idempotent": "lneg-idempotent",
    "absorption": "absorption-dual",
    "absorption-vee": "absorption-wedge",
    "bot-contradiction": "top-excluded-middle",
    "bot-neg-top": "lneg-bot-top",
}

# the verbatim trees of the appendix proofs (items 1a, 2a, 3a, 5a, 6a)
APPENDIX = ("meet-commutative", "meet-associative", "meet-idempotent-absorb",
            "meet-idempotent-absorb-converse", "absorption", "absorption-vee")


def derivations():
    """All closed derivation fixtures, name -> Derivation."""
    out = {}
    for name, build in _A_SIDE.items():
        out[name] = build()
        out[_DUAL_NAME[name]] = dualize(out[name])
    out["rule-r6-instance"] = rule_r6_instance()
    out["rule-r7-instance"] = rule_r7_instance()
    return out


def derived_rules():
    """Derivations of R6 and R7 with their premises as open hypotheses."""
    return {"rule-r6": rule_r6(), "rule-r7": rule_r7()}


# -- mutations: each must be rejected --------------------------------------------------------


def _replace(d, path, fn):
    if not path:
        return fn(d)
    prem = list(d.premises)
    prem[path[0]] = _replace(prem[path[0]], path[1:], fn)
    return Derivation(d.seq, d.by, prem)


def _with_by(by):
    return lambda d: Derivation(d.seq, by, d.premises)


def _with_seq(text):
    from .syntax import parse_sequent

    return lambda d: Derivation(parse_sequent(text), d.by, d.premises)


def _swap_premises(d):
    return Derivation(d.seq, d.by, d.premises[::-1])


def mutations():
    """Twenty single-edit corruptions of the fixtures: (label, derivation, allow_hypotheses)."""
    f = derivations()
    r = derived_rules()
    m = [
        ("1a root R4->R6", _replace(f["meet-commutative"], [], _with_by("rule:R6")), False),
        ("1a inner R6->R7", _replace(f["meet-commutative"], [1], _with_by("rule:R7")), False),
        ("1a leaf 3a->2a", _replace(f["meet-commutative"], [1, 0], _with_by("axiom:2a")), False),
        ("1a leaf 4a->4b", _replace(f["meet-commutative"], [0], _with_by("axiom:4b")), False),
        ("1a conclusion q&p->p&q", _replace(f["meet-commutative"], [], _with_seq("p & q |- p & q")), False),
        ("1a R4 premises swapped", _replace(f["meet-commutative"], [], _swap_premises), False),
        ("1a R6 premises swapped", _replace(f["meet-commutative"], [1], _swap_premises), False),
        ("2a root conclusion altered", _replace(f["meet-associative"], [], _with_seq("(p & q) & r |- (p & q) & r")), False),
        ("2a step (I) R4->R1", _replace(f["meet-associative"], [1, 1], _with_by("rule:R1")), False),
        ("2a leaf 2a->3a", _replace(f["meet-associative"], [1, 0, 0], _with_by("axiom:3a")), False),
        ("3a leaf conclusion altered", _replace(f["meet-idempotent-absorb"], [1, 1], _with_seq("(p & p) & q |- p")), False),
        ("3a converse inner R6->R1", _replace(f["meet-idempotent-absorb-converse"], [1, 0, 1], _with_by("rule:R1")), False),
        ("5a leaf 2a->8a", _replace(f["absorption"], [1, 0], _with_by("axiom:8a")), False),
        ("5a conclusion p&p->p", _replace(f["absorption"], [], _with_seq("p & (p | q) |- p")), False),
        ("6a leaf 2a->hyp", _replace(f["absorption-vee"], [1, 1], _with_by("hyp")), False),
        ("6a root R4->R5", _replace(f["absorption-vee"], [], _with_by("rule:R5")), False),
        ("R6 rule R1'->R1", _replace(r["rule-r6"], [1], _with_by("rule:R1")), True),
        ("R6 rule R1->R2", _replace(r["rule-r6"], [0], _with_by("rule:R2")), True),
        ("R7 rule R4 premises swapped", _replace(r["rule-r7"], [], _swap_premises), True),
        ("R7 conclusion altered", _replace(r["rule-r7"], [], _with_seq("q | r |- p")), True),
    ]
    return m
