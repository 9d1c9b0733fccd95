"""Formulas and sequents: ASCII tokenizer, precedence-climbing parser and printer.

Grammar (loosest binding first, all binary operators left-associative)::

    sequent  := formula '|-' formula
    formula  := formula '^' formula      wedge, sugar for ~(~a | ~b)
              | formula 'v' formula      vee,   sugar for !(!a & !b)
              | formula '|' formula      join
              | formula '&' formula      meet
              | unary
    unary    := ('!' | '~' | '#' | '$' | '<#>' | '<$>') unary | atom
    atom     := 'top' | 'bot' | ident | '(' formula ')'

``<#>a`` is sugar for ``!#!a`` and ``<$>a`` for ``~$~a``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ParseError

NEG, LNEG, BOX, BBOX = "neg", "lneg", "box", "bbox"
MEET, JOIN = "meet", "join"
MODAL = (BOX, BBOX)


class Formula:
    __slots__ = ()

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Var(Formula):
    name: str


@dataclass(frozen=True)
class Const(Formula):
    name: str  # "top" or "bot"


@dataclass(frozen=True)
class Unary(Formula):
    op: str
    arg: Formula


@dataclass(frozen=True)
class Binary(Formula):
    op: str
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Sequent:
    left: Formula
    right: Formula

    def __str__(self):
        return f"{to_text(self.left)} |- {to_text(self.right)}"


TOP = Const("top")
BOT = Const("bot")


def neg(a):
    return Unary(NEG, a)


def lneg(a):
    return Unary(LNEG, a)


def box(a):
    return Unary(BOX, a)


def bbox(a):
    return Unary(BBOX, a)


def meet(a, b):
    return Binary(MEET, a, b)


def join(a, b):
    return Binary(JOIN, a, b)


def vee(a, b):
    return neg(meet(neg(a), neg(b)))


def wedge(a, b):
    return lneg(join(lneg(a), lneg(b)))


def diamond(a):
    return neg(box(neg(a)))


def bdiamond(a):
    return lneg(bbox(lneg(a)))


# -- lexer -----------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<turn>\|-)|(?P<sym><#>|<\$>|[&|!~#$^()])|(?P<ident>[a-z][a-z0-9_]*))"
)

_UNARY = {"!": neg, "~": lneg, "#": box, "$": bbox, "<#>": diamond, "<$>": bdiamond}
# binding power; higher binds tighter
_BINARY = {"^": (1, wedge), "v": (2, vee), "|": (3, join), "&": (4, meet)}


def tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character", text, len(text) - len(text[pos:].lstrip()))
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        val = m.group(kind)
        if kind == "ident" and val == "v":
            kind = "sym"
        out.append((kind, val, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def formula(self, min_bp=0):
        left = self.unary()
        while True:
            kind, val, _ = self.peek()
            if kind != "sym" or val not in _BINARY:
                return left
            bp, build = _BINARY[val]
            if bp <= min_bp:
                return left
            self.take()
            right = self.formula(bp)
            left = build(left, right)

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "sym" and val in _UNARY:
            self.take()
            return _UNARY[val](self.unary())
        return self.atom()

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "ident":
            if val in ("top", "bot"):
                return Const(val)
            return Var(val)
        if kind == "sym" and val == "(":
            inner = self.formula()
            if self.peek()[1] != ")":
                self.fail("expected ')'")
            self.take()
            return inner
        self.fail("expected a formula", tok)

    def expect_end(self):
        if self.peek()[0] != "end":
            self.fail("unexpected trailing input")


def parse_formula(text):
    p = _Parser(text)
    f = p.formula()
    p.expect_end()
    return f


def parse_sequent(text):
    p = _Parser(text)
    left = p.formula()
    if p.peek()[0] != "turn":
        p.fail("expected '|-'")
    p.take()
    right = p.formula()
    p.expect_end()
    return Sequent(left, right)


def parse(text):
    """A Sequent when the text contains a turnstile, otherwise a Formula."""
    if any(k == "turn" for k, _, _ in tokenize(text)):
        return parse_sequent(text)
    return parse_formula(text)


# -- printer ---------------------------------------------------------------------

_SYMBOL = {NEG: "!", LNEG: "~", BOX: "#", BBOX: "$", MEET: "&", JOIN: "|"}
_BP = {MEET: 4, JOIN: 3}


def to_text(f, min_bp=0):
    """Print with the fewest parentheses the parser needs to rebuild the same tree."""
    if isinstance(f, Sequent):
        return str(f)
    if isinstance(f, (Var, Const)):
        return f.name
    if isinstance(f, Unary):
        return _SYMBOL[f.op] + to_text(f.arg, 5)
    bp = _BP[f.op]
    # left-associative: the right operand must bind strictly tighter
    s = f"{to_text(f.left, bp - 1)} {_SYMBOL[f.op]} {to_text(f.right, bp)}"
    return f"({s})" if bp <= min_bp else s


# -- helpers ---------------------------------------------------------------------


def variables(f):
    """Variable names in order of first occurrence (left to right)."""
    out = []

    def walk(g):
        if isinstance(g, Sequent):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, Var):
            if g.name not in out:
                out.append(g.name)
        elif isinstance(g, Unary):
            walk(g.arg)
        elif isinstance(g, Binary):
            walk(g.left)
            walk(g.right)

    walk(f)
    return out


def is_modal(f):
    if isinstance(f, Sequent):
        return is_modal(f.left) or is_modal(f.right)
    if isinstance(f, Unary):
        return f.op in MODAL or is_modal(f.arg)
    if isinstance(f, Binary):
        return is_modal(f.left) or is_modal(f.right)
    return False


def depth(f):
    if isinstance(f, Unary):
        return 1 + depth(f.arg)
    if isinstance(f, Binary):
        return 1 + max(depth(f.left), depth(f.right))
    return 0


def substitute(f, mapping):
    if isinstance(f, Sequent):
        return Sequent(substitute(f.left, mapping), substitute(f.right, mapping))
    if isinstance(f, Var):
        return mapping.get(f.name, f)
    if isinstance(f, Unary):
        return Unary(f.op, substitute(f.arg, mapping))
    if isinstance(f, Binary):
        return Binary(f.op, substitute(f.left, mapping), substitute(f.right, mapping))
    return f
