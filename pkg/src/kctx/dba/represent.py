"""Canonical Kripke context of a finite dBao and the representation map h(x) = (F_x, I_x)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import bits
from ..errors import VerificationError
from .algebra import check_axioms
from .filters import standard_context


@dataclass
class CanonicalReport:
    kc: object
    standard: object
    alternate_agrees: bool
    approx_identities: bool
    topological: bool
    reflexive_transitive: bool
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def to_dict(self):
        kc = self.kc
        return {
            "filters": len(self.standard.filters), "ideals": len(self.standard.ideals),
            "R": [list(p) for p in kc.R_pairs()], "S": [list(p) for p in kc.S_pairs()],
            "alternate_agrees": self.alternate_agrees,
            "approx_identities": self.approx_identities,
            "topological": self.topological,
            "reflexive_transitive": self.reflexive_transitive,
            "passed": self.passed, "failures": self.failures,
        }


def _relation(points, probe):
    """u R u1 iff probe(a) ∈ u for every a ∈ u1."""
    rows = []
    for u in points:
        rows.append(bits.from_indices(
            j for j, u1 in enumerate(points) if all(u >> int(probe[a]) & 1 for a in bits.members(u1))
        ))
    return tuple(rows)


def _relation_alt(points, op, n):
    """u R u1 iff for all a: op(a) ∈ u implies a ∈ u1."""
    rows = []
    for u in points:
        rows.append(bits.from_indices(
            j for j, u1 in enumerate(points)
            if all(not u >> int(op[a]) & 1 or u1 >> a & 1 for a in range(n))
        ))
    return tuple(rows)


def canonical_kripke_context(dbao, limit=None):
    from ..kripke import KripkeContext, _lower, _upper
    from ..rough import relation_report

    if not dbao.has_operators:
        raise VerificationError("canonical Kripke context needs I and C")
    std = standard_context(dbao, limit)
    n = dbao.n
    Fs, Is = std.filters, std.ideals
    R = _relation(Fs, dbao.idelta)
    S = _relation(Is, dbao.cdelta)
    failures = []
    alt = R == _relation_alt(Fs, dbao.opI, n) and S == _relation_alt(Is, dbao.opC, n)
    if not alt:
        failures.append("relations disagree with their alternate characterization")
    ident = True
    for a in range(n):
        ident &= _upper(R, std.F_of(a)) == std.F_of(int(dbao.idelta[a]))
        ident &= _lower(R, std.F_of(a)) == std.F_of(int(dbao.opI[a]))
        ident &= _upper(S, std.I_of(a)) == std.I_of(int(dbao.cdelta[a]))
        ident &= _lower(S, std.I_of(a)) == std.I_of(int(dbao.opC[a]))
    if not ident:
        failures.append("approximations of F_a / I_a differ from F_(I a) etc.")
    topo = check_axioms(dbao, "topological").passed
    rr, rs = relation_report(len(Fs), R), relation_report(len(Is), S)
    rt = rr.preorder and rs.preorder
    if topo and not rt:
        failures.append("topological input but canonical relations are not reflexive and transitive")
    kc = KripkeContext(std.context, R, S)
    return CanonicalReport(kc, std, alt, bool(ident), topo, rt, failures)


@dataclass
class RepresentationReport:
    canonical: CanonicalReport
    image: list  # h(x) as (extent, intent) per element
    preserves: dict
    quasi_injective: bool
    contextual: bool
    injective: bool
    pure_into_semiconcepts: bool
    pure_injective: bool
    failures: list

    @property
    def passed(self):
        return not self.failures

    def to_dict(self):
        ctx = self.canonical.kc.context
        return {
            "canonical": self.canonical.to_dict(),
            "h": [ctx.format_pair(*p) for p in self.image],
            "preserves": self.preserves,
            "quasi_injective": self.quasi_injective, "contextual": self.contextual,
            "injective": self.injective,
            "pure_into_semiconcepts": self.pure_into_semiconcepts,
            "pure_injective": self.pure_injective,
            "passed": self.passed, "failures": self.failures,
        }


def representation(dbao, limit=None, budget=None):
    """h(x) = (F_x, I_x) into the full complex algebra of the canonical Kripke context."""
    from ..context import ConceptKind, classify
    from ..kripke import complex_algebra

    canon = canonical_kripke_context(dbao, limit)
    kc, std = canon.kc, canon.standard
    ctx = kc.context
    target = complex_algebra(kc, "full", budget)
    where = {p: i for i, p in enumerate(target.elements)}
    n = dbao.n
    image = [(std.F_of(x), std.I_of(x)) for x in range(n)]
    failures = list(canon.failures)
    missing = [x for x in range(n) if image[x] not in where]
    if missing:
        failures.append(f"h(x) is not a protoconcept for x in {missing}")
        h = None
    else:
        h = np.array([where[p] for p in image])

    preserves = {}
    if h is not None:
        idx = np.arange(n)
        X, Y = idx[:, None], idx[None, :]
        preserves = {
            "meet": bool(np.all(h[dbao.meet] == target.meet[h[X], h[Y]])),
            "join": bool(np.all(h[dbao.join] == target.join[h[X], h[Y]])),
            "neg": bool(np.all(h[dbao.neg] == target.neg[h])),
            "lneg": bool(np.all(h[dbao.lneg] == target.lneg[h])),
            "top": int(h[dbao.top]) == target.top,
            "bot": int(h[dbao.bot]) == target.bot,
            "I": bool(np.all(h[dbao.opI] == target.opI[h])),
            "C": bool(np.all(h[dbao.opC] == target.opC[h])),
        }
        for op, ok in preserves.items():
            if not ok:
                failures.append(f"h does not preserve {op}")

    quasi = True
    inj = True
    for x in range(n):
        for y in range(x + 1, n):
            if image[x] == image[y]:
                inj = False
                if dbao.meet_idem[x] != dbao.meet_idem[y] or dbao.join_idem[x] != dbao.join_idem[y]:
                    quasi = False
    if not quasi:
        failures.append("h identifies elements with different idempotent parts")
    contextual = check_axioms(dbao.without_operators(), "contextual").passed
    if contextual and not inj:
        failures.append("contextual input but h is not injective")

    pure = sorted(set(dbao.d_meet.tolist()) | set(dbao.d_join.tolist()))
    pure_semi = all(classify(ctx, *image[x]).rank >= ConceptKind.SEMICONCEPT.rank for x in pure)
    pure_inj = len({image[x] for x in pure}) == len(pure)
    if not pure_semi:
        failures.append("h maps the pure part outside the semiconcepts")
    if not pure_inj:
        failures.append("h is not injective on the pure part")
    return RepresentationReport(canon, image, preserves, quasi, contextual, inj,
                                pure_semi, pure_inj, failures)
