"""Axiom schemas of CDBL and its modal extensions, and syntactic schema matching.

Schemas are written in the formula syntax; the letters ``a``, ``b``, ``c`` are
metavariables.  ``-||-`` marks a schema usable in both directions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .syntax import Binary, Const, Sequent, Unary, Var, parse_formula

META = ("a", "b", "c")

CDBL_SCHEMAS = {
    "1": "a |- a",
    "2a": "a & b |- a",
    "2b": "a |- a | b",
    "3a": "a & b |- b",
    "3b": "b |- a | b",
    "4a": "a & b |- (a & b) & (a & b)",
    "4b": "(a | b) | (a | b) |- a | b",
    "5a": "!(a & a) |- !a",
    "5b": "~a |- ~(a | a)",
    "6a": "a & !a |- bot",
    "6b": "top |- a | ~a",
    "7a": "!!(a & b) -||- a & b",
    "7b": "~~(a | b) -||- a | b",
    "8a": "a & a |- a & (a | b)",
    "8b": "a | (a & b) |- a | a",
    "9a": "a & a |- a & (a v b)",
    "9b": "a | (a ^ b) |- a | a",
    "10a": "a & (b v c) -||- (a & b) v (a & c)",
    "10b": "a | (b ^ c) -||- (a | b) ^ (a | c)",
    "11a": "bot |- a",
    "11b": "a |- top",
    "12a": "!top |- bot",
    "12b": "top |- ~bot",
    "13a": "!bot -||- top & top",
    "13b": "~top -||- bot | bot",
    "14": "(a | a) & (a | a) -||- (a & a) | (a & a)",
}

MODAL_SCHEMAS = {
    "15a": "#a & #b -||- #(a & b)",
    "15b": "$a | $b -||- $(a | b)",
    "16a": "#!bot -||- !bot",
    "16b": "$~top -||- ~top",
    "17a": "#(a & a) -||- #a",
    "17b": "$(a | a) -||- $a",
}

S4_SCHEMAS = {
    "18a": "#a |- a",
    "18b": "a |- $a",
    "19a": "##a -||- #a",
    "19b": "$$a -||- $a",
}

CDBL_RULES = ("R1", "R1'", "R2", "R2'", "R3", "R3'", "R4", "R5", "R6", "R7")
MODAL_RULES = ("R8", "R9")


@dataclass(frozen=True)
class Schema:
    id: str
    left: object
    right: object
    both_ways: bool
    text: str


def make_schema(sid, text):
    both = "-||-" in text
    lhs, rhs = text.split("-||-" if both else "|-")
    return Schema(sid, parse_formula(lhs), parse_formula(rhs), both, text)


@dataclass
class System:
    name: str
    schemas: dict
    rules: tuple
    modal: bool
    extra: list = field(default_factory=list)  # user-supplied Σ, as schema ids

    def schema(self, sid):
        try:
            return self.schemas[sid]
        except KeyError:
            raise KeyError(f"{self.name} has no axiom {sid!r}") from None


def _schemas(table):
    return {k: make_schema(k, v) for k, v in table.items()}


def make_system(name="MCDBLΣ", sigma=None, modal=True):
    """CDBL, optionally with the modal axioms and rules, plus extra schemas Σ (id -> text)."""
    schemas = _schemas(CDBL_SCHEMAS)
    rules = CDBL_RULES
    if modal:
        schemas.update(_schemas(MODAL_SCHEMAS))
        rules = CDBL_RULES + MODAL_RULES
    extra = []
    for sid, text in (sigma or {}).items():
        if sid in schemas:
            raise ValueError(f"schema id {sid!r} already used")
        schemas[sid] = make_schema(sid, text)
        extra.append(sid)
    return System(name, schemas, rules, modal, extra)


CDBL = make_system("CDBL", modal=False)
MCDBL = make_system("MCDBL")
MCDBL4 = make_system("MCDBL4", S4_SCHEMAS)
SYSTEMS = {"CDBL": CDBL, "MCDBL": MCDBL, "MCDBL4": MCDBL4}


def get_system(name):
    if isinstance(name, System):
        return name
    try:
        return SYSTEMS[name]
    except KeyError:
        raise ValueError(f"unknown system {name!r}; expected one of {', '.join(SYSTEMS)}") from None


def match(pattern, formula, subst):
    """Extend ``subst`` so that pattern[subst] == formula; None when impossible."""
    if isinstance(pattern, Var):
        if pattern.name in META:
            bound = subst.get(pattern.name)
            if bound is None:
                return {**subst, pattern.name: formula}
            return subst if bound == formula else None
        return subst if pattern == formula else None
    if isinstance(pattern, Const):
        return subst if pattern == formula else None
    if isinstance(pattern, Unary):
        if not isinstance(formula, Unary) or formula.op != pattern.op:
            return None
        return match(pattern.arg, formula.arg, subst)
    if isinstance(pattern, Binary):
        if not isinstance(formula, Binary) or formula.op != pattern.op:
            return None
        s = match(pattern.left, formula.left, subst)
        return None if s is None else match(pattern.right, formula.right, s)
    raise TypeError(f"not a formula: {pattern!r}")


def match_schema(seq, schema):
    s = match(schema.left, seq.left, {})
    if s is not None:
        s = match(schema.right, seq.right, s)
    if s is None and schema.both_ways:
        s = match(schema.right, seq.left, {})
        if s is not None:
            s = match(schema.left, seq.right, s)
    return s


def match_axiom(seq, schema_id, system=MCDBL4):
    """Substitution of metavariables making ``seq`` an instance of the schema, or None."""
    return match_schema(seq, get_system(system).schema(schema_id))


def instantiate(schema, mapping, reverse=False):
    from .syntax import substitute

    left, right = (schema.right, schema.left) if reverse else (schema.left, schema.right)
    return Sequent(substitute(left, mapping), substitute(right, mapping))
