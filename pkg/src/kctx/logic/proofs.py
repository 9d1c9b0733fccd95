"""Derivation trees and the proof checker.

A node is ``{"seq": "<sequent>", "by": "axiom:<id>" | "rule:<id>" | "hyp",
"premises": [nodes]}``.  Rule premises are ordered exactly as displayed in the
calculus (R4: α⊢β then β⊢γ; R5: its four premises left to right).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import FormatError
from .axioms import get_system, match_schema
from .syntax import (
    BBOX,
    BOX,
    JOIN,
    LNEG,
    MEET,
    NEG,
    Binary,
    Sequent,
    Unary,
    is_modal,
    parse_sequent,
)


@dataclass
class Derivation:
    seq: Sequent
    by: str
    premises: list = field(default_factory=list)

    @classmethod
    def from_dict(cls, d):
        if not isinstance(d, dict) or "seq" not in d or "by" not in d:
            raise FormatError("proof node needs 'seq' and 'by'")
        seq = d["seq"] if isinstance(d["seq"], Sequent) else parse_sequent(d["seq"])
        prem = d.get("premises", [])
        if not isinstance(prem, list):
            raise FormatError("'premises' must be a list")
        return cls(seq, d["by"], [cls.from_dict(p) for p in prem])

    def to_dict(self):
        out = {"seq": str(self.seq), "by": self.by}
        if self.premises:
            out["premises"] = [p.to_dict() for p in self.premises]
        return out


def node(seq, by, *premises):
    """Shorthand used by the fixtures: ``node("p |- p", "axiom:1")``."""
    if isinstance(seq, str):
        seq = parse_sequent(seq)
    return Derivation(seq, by, list(premises))


@dataclass
class NodeResult:
    path: str
    seq: str
    by: str
    ok: bool
    message: str = ""


@dataclass
class ProofReport:
    system: str
    nodes: list
    hypotheses: list

    @property
    def ok(self):
        return all(n.ok for n in self.nodes)

    def failures(self):
        return [n for n in self.nodes if not n.ok]

    def to_dict(self):
        return {
            "system": self.system, "accepted": self.ok,
            "hypotheses": self.hypotheses,
            "nodes": [vars(n) for n in self.nodes],
        }


def _bin(op, a, b):
    return Binary(op, a, b)


def _check_rule(rule, concl, prem):
    """Return an error message, or '' when ``concl`` follows from ``prem`` by ``rule``."""
    arity = {"R4": 2, "R5": 4, "R6": 2, "R7": 2}.get(rule, 1)
    if len(prem) != arity:
        return f"{rule} takes {arity} premise(s), got {len(prem)}"
    L, R = concl.left, concl.right
    if rule in ("R1", "R1'", "R2", "R2'"):
        op = MEET if rule[1] == "1" else JOIN
        a, b = prem[0].left, prem[0].right
        if not (isinstance(L, Binary) and isinstance(R, Binary) and L.op == op and R.op == op):
            return f"{rule} conclusion must combine both sides with the same connective"
        if rule.endswith("'"):
            ok = L.right == a and R.right == b and L.left == R.left
        else:
            ok = L.left == a and R.left == b and L.right == R.right
        return "" if ok else f"{rule} conclusion does not match its premise"
    if rule in ("R3", "R3'", "R8", "R9"):
        op = {"R3": NEG, "R3'": LNEG, "R8": BOX, "R9": BBOX}[rule]
        a, b = prem[0].left, prem[0].right
        if rule in ("R3", "R3'"):
            want = Sequent(Unary(op, b), Unary(op, a))
        else:
            want = Sequent(Unary(op, a), Unary(op, b))
        return "" if concl == want else f"{rule} expects {want}"
    if rule == "R4":
        p1, p2 = prem
        if p1.right != p2.left:
            return "R4 premises do not chain (first right side must equal second left side)"
        return "" if concl == Sequent(p1.left, p2.right) else f"R4 expects {Sequent(p1.left, p2.right)}"
    if rule == "R5":
        a, b = L, R
        want = [
            Sequent(_bin(MEET, a, b), _bin(MEET, a, a)),
            Sequent(_bin(MEET, a, a), _bin(MEET, a, b)),
            Sequent(_bin(JOIN, a, b), _bin(JOIN, b, b)),
            Sequent(_bin(JOIN, b, b), _bin(JOIN, a, b)),
        ]
        bad = [i + 1 for i in range(4) if prem[i] != want[i]]
        return "" if not bad else f"R5 premise(s) {bad} do not have the required shape"
    if rule == "R6":
        (a1, b), (a2, c) = (prem[0].left, prem[0].right), (prem[1].left, prem[1].right)
        if a1 != a2:
            return "R6 premises need the same left side"
        want = Sequent(_bin(MEET, a1, a1), _bin(MEET, b, c))
        return "" if concl == want else f"R6 expects {want}"
    if rule == "R7":
        (b, a1), (c, a2) = (prem[0].left, prem[0].right), (prem[1].left, prem[1].right)
        if a1 != a2:
            return "R7 premises need the same right side"
        want = Sequent(_bin(JOIN, b, c), _bin(JOIN, a1, a1))
        return "" if concl == want else f"R7 expects {want}"
    return f"unknown rule {rule!r}"


def check_derivation(d, system="CDBL", allow_hypotheses=False):
    """Check every node; the verdict is the conjunction of the node verdicts."""
    system = get_system(system)
    if isinstance(d, dict):
        d = Derivation.from_dict(d)
    nodes, hyps = [], []

    def visit(n, path):
        for i, p in enumerate(n.premises):
            visit(p, f"{path}.{i}")
        msg = ""
        by = n.by
        if not system.modal and is_modal(n.seq):
            msg = f"modal connective not allowed in {system.name}"
        elif by == "hyp":
            if n.premises:
                msg = "a hypothesis has no premises"
            elif not allow_hypotheses:
                msg = "open hypothesis"
            else:
                hyps.append(str(n.seq))
        elif by.startswith("axiom:"):
            sid = by[6:]
            if n.premises:
                msg = "an axiom node has no premises"
            elif sid not in system.schemas:
                msg = f"{system.name} has no axiom {sid!r}"
            elif match_schema(n.seq, system.schemas[sid]) is None:
                msg = f"not an instance of axiom {sid}"
        elif by.startswith("rule:"):
            rule = by[5:]
            if rule not in system.rules:
                msg = f"{system.name} has no rule {rule!r}"
            else:
                msg = _check_rule(rule, n.seq, [p.seq for p in n.premises])
        else:
            msg = f"bad justification {by!r}"
        nodes.append(NodeResult(path, str(n.seq), by, not msg, msg))

    visit(d, "0")
    return ProofReport(system.name, nodes, hyps)
