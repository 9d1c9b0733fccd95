import random

import pytest

from kctx.errors import ParseError
from kctx.logic.syntax import (
    BOT,
    TOP,
    Binary,
    Const,
    Sequent,
    Unary,
    Var,
    depth,
    is_modal,
    parse,
    parse_formula,
    parse_sequent,
    substitute,
    to_text,
    variables,
)

_SYM = {"neg": "!", "lneg": "~", "box": "#", "bbox": "$", "meet": "&", "join": "|"}


def full_parens(f):
    """Printer that brackets every binary node; independent of the minimal printer."""
    if isinstance(f, (Var, Const)):
        return f.name
    if isinstance(f, Unary):
        return _SYM[f.op] + full_parens(f.arg)
    return f"({full_parens(f.left)} {_SYM[f.op]} {full_parens(f.right)})"


def random_formula(rnd, d, modal=True):
    if d == 0 or rnd.random() < 0.2:
        return rnd.choice([Var("p"), Var("q"), Var("r"), Var("x1"), TOP, BOT])
    if rnd.random() < 0.4:
        ops = ["neg", "lneg", "box", "bbox"] if modal else ["neg", "lneg"]
        return Unary(rnd.choice(ops), random_formula(rnd, d - 1, modal))
    return Binary(rnd.choice(["meet", "join"]), random_formula(rnd, d - 1, modal), random_formula(rnd, d - 1, modal))


def test_round_trip_random_formulas():
    rnd = random.Random(0)
    for _ in range(10_000):
        f = random_formula(rnd, 6)
        assert depth(f) <= 6
        assert parse_formula(to_text(f)) == f
        assert parse_formula(full_parens(f)) == f


def test_precedence_and_associativity():
    p, q, r = Var("p"), Var("q"), Var("r")
    assert parse_formula("p | q & r") == Binary("join", p, Binary("meet", q, r))
    assert parse_formula("p & q & r") == Binary("meet", Binary("meet", p, q), r)
    assert parse_formula("!p & q") == Binary("meet", Unary("neg", p), q)
    assert to_text(Binary("meet", p, Binary("meet", q, r))) == "p & (q & r)"
    assert to_text(Binary("meet", Binary("join", p, q), r)) == "(p | q) & r"


def test_sugar_expands():
    p, q = Var("p"), Var("q")
    assert parse_formula("p v q") == Unary("neg", Binary("meet", Unary("neg", p), Unary("neg", q)))
    assert parse_formula("p ^ q") == Unary("lneg", Binary("join", Unary("lneg", p), Unary("lneg", q)))
    assert parse_formula("<#>p") == Unary("neg", Unary("box", Unary("neg", p)))
    assert parse_formula("<$>p") == Unary("lneg", Unary("bbox", Unary("lneg", p)))
    # ^ binds loosest, then v
    assert parse_formula("p ^ q v p") == parse_formula("p ^ (q v p)")


def test_sequents():
    s = parse_sequent("p & q |- q & p")
    assert isinstance(s, Sequent) and str(s) == "p & q |- q & p"
    assert isinstance(parse("p |- p"), Sequent)
    assert isinstance(parse("p"), Var)
    assert variables(parse("q & p |- p & r")) == ["q", "p", "r"]
    assert is_modal(parse("p |- #p")) and not is_modal(parse("p |- !p"))
    assert substitute(parse("a & b"), {"a": Var("x")}) == parse("x & b")


@pytest.mark.parametrize("text,pos", [
    ("p & ", 4),
    ("p ) q", 2),
    ("p @ q", 2),
    ("(p & q", 6),
    ("p |- ", 5),
    ("p & q", None),
])
def test_error_positions(text, pos):
    if pos is None:
        with pytest.raises(ParseError) as e:
            parse_sequent(text)
        assert e.value.pos == len(text)
        return
    with pytest.raises(ParseError) as e:
        parse(text)
    assert e.value.pos == pos
    assert "<<>>" in str(e.value)


def test_uppercase_and_digits_rejected():
    with pytest.raises(ParseError):
        parse_formula("P")
    with pytest.raises(ParseError):
        parse_formula("1p")
