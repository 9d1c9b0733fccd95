"""Kripke contexts: a context with relations R on objects and S on attributes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bits
from .budget import enumeration_budget, require
from .context import (
    ATTRIBUTES,
    OBJECTS,
    ConceptKind,
    Context,
    Protoconcept,
    _derive_attrs,
    _derive_objs,
    _same_context,
    enumerate_pairs,
    join_pair,
    lneg_pair,
    meet_pair,
    neg_pair,
    prime_table,
)
from .dba.algebra import FiniteDba, FiniteDbao
from .errors import DimensionError, VerificationError
from .rough import ApproximationSpace, concept_approx, induced_relations, relation_report


@dataclass(frozen=True)
class KripkeContext:
    """``R[g]`` is the mask of R-successors of object g, ``S[m]`` likewise for attributes."""

    context: Context
    R: tuple
    S: tuple

    def __post_init__(self):
        object.__setattr__(self, "R", tuple(self.R))
        object.__setattr__(self, "S", tuple(self.S))
        ctx = self.context
        if len(self.R) != ctx.n_objects or len(self.S) != ctx.n_attributes:
            raise DimensionError("relation sizes do not match the context")
        for r in self.R:
            bits.check_width(r, ctx.n_objects, "R row")
        for s in self.S:
            bits.check_width(s, ctx.n_attributes, "S row")

    @classmethod
    def from_pairs(cls, ctx, R=(), S=()):
        return cls(ctx, ApproximationSpace.from_pairs(ctx.n_objects, R).rows,
                   ApproximationSpace.from_pairs(ctx.n_attributes, S).rows)

    @classmethod
    def identity(cls, ctx):
        return cls(ctx, tuple(1 << g for g in range(ctx.n_objects)),
                   tuple(1 << m for m in range(ctx.n_attributes)))

    def R_pairs(self):
        return [(a, b) for a, r in enumerate(self.R) for b in bits.members(r)]

    def S_pairs(self):
        return [(a, b) for a, r in enumerate(self.S) for b in bits.members(r)]


def kc_ds(ctx):
    """The Kripke context whose relations are the induced equivalences E1 and E2."""
    e1, _ = induced_relations(ctx, "E1")
    e2, _ = induced_relations(ctx, "E2")
    return KripkeContext(ctx, e1.rows, e2.rows)


def _lower(rows, A):
    return bits.from_indices(x for x, r in enumerate(rows) if r & ~A == 0)


def _upper(rows, A):
    return bits.from_indices(x for x, r in enumerate(rows) if r & A)


def modal_pair(kc, which, x):
    ctx = kc.context
    A, B = x
    if which == "fR":
        A1 = _lower(kc.R, A)
        return (A1, _derive_objs(ctx, A1))
    if which == "fR_dual":
        A1 = _upper(kc.R, A)
        return (A1, _derive_objs(ctx, A1))
    if which == "fS":
        B1 = _lower(kc.S, B)
        return (_derive_attrs(ctx, B1), B1)
    if which == "fS_dual":
        B1 = _upper(kc.S, B)
        return (_derive_attrs(ctx, B1), B1)
    raise ValueError(f"unknown modal operator {which!r}")


def modal_op(kc, which, x):
    _same_context(kc.context, (x,))
    return Protoconcept.trusted(kc.context, *modal_pair(kc, which, x.pair))


# -- materialized algebras -----------------------------------------------------


def _lower_table(rows, n):
    """Lower approximation of every subset of an n-element carrier."""
    subsets = np.arange(1 << n, dtype=np.int64)
    out = np.zeros(1 << n, dtype=np.int64)
    for x, r in enumerate(rows):
        out |= ((subsets & r) == r).astype(np.int64) << x
    return out


def _upper_table(rows, n):
    subsets = np.arange(1 << n, dtype=np.int64)
    out = np.zeros(1 << n, dtype=np.int64)
    for x, r in enumerate(rows):
        out |= ((subsets & r) != 0).astype(np.int64) << x
    return out


class _PairIndex:
    def __init__(self, pairs, n_attrs):
        self.shift = n_attrs
        codes = np.array([(A << n_attrs) | B for A, B in pairs], dtype=np.int64)
        self.order = np.argsort(codes, kind="stable")
        self.sorted = codes[self.order]

    def __call__(self, A, B, what):
        codes = (np.asarray(A, dtype=np.int64) << self.shift) | np.asarray(B, dtype=np.int64)
        pos = np.clip(np.searchsorted(self.sorted, codes), 0, len(self.sorted) - 1)
        if not np.all(self.sorted[pos] == codes):
            raise VerificationError(f"carrier not closed under {what}")
        return self.order[pos]


def pair_algebra(ctx, pairs, kc=None):
    """Operation tables over an explicit list of (extent, intent) pairs.

    With a Kripke context the result is a dBao whose I and C are f_R and f_S.
    """
    G, M = ctx.n_objects, ctx.n_attributes
    ext_prime = np.array(prime_table(ctx.rows, M), dtype=np.int64)
    int_prime = np.array(prime_table(ctx.cols, G), dtype=np.int64)
    ext = np.array([p[0] for p in pairs], dtype=np.int64)
    itt = np.array([p[1] for p in pairs], dtype=np.int64)
    look = _PairIndex(pairs, M)

    A = ext[:, None] & ext[None, :]
    meet = look(A, ext_prime[A], "meet")
    B = itt[:, None] & itt[None, :]
    join = look(int_prime[B], B, "join")
    A = ctx.all_objects ^ ext
    neg = look(A, ext_prime[A], "neg")
    B = ctx.all_attributes ^ itt
    lneg = look(int_prime[B], B, "lneg")
    top = int(look([ctx.all_objects], [0], "top")[0])
    bot = int(look([0], [ctx.all_attributes], "bot")[0])
    labels = tuple(ctx.format_pair(a, b) for a, b in pairs)
    if kc is None:
        return FiniteDba(meet, join, neg, lneg, top, bot, labels, tuple(pairs))
    A = _lower_table(kc.R, G)[ext]
    opI = look(A, ext_prime[A], "f_R")
    B = _lower_table(kc.S, M)[itt]
    opC = look(int_prime[B], B, "f_S")
    return FiniteDbao(meet, join, neg, lneg, top, bot, labels, tuple(pairs), opI=opI, opC=opC)


def protoconcept_algebra(ctx, kind=ConceptKind.PROTOCONCEPT, budget=None):
    return pair_algebra(ctx, enumerate_pairs(ctx, kind, budget))


def complex_algebra(kc, which="full", budget=None):
    """Full complex algebra (all protoconcepts) or its semiconcept subalgebra, with f_R and f_S."""
    ctx = kc.context
    full = pair_algebra(ctx, enumerate_pairs(ctx, ConceptKind.PROTOCONCEPT, budget), kc)
    if which == "full":
        return full
    if which != "semiconcept":
        raise ValueError(f"which must be full or semiconcept, not {which!r}")
    semis = enumerate_pairs(ctx, ConceptKind.SEMICONCEPT, budget)
    pure = sorted(set(full.d_meet.tolist()) | set(full.d_join.tolist()))
    if sorted(full.elements[i] for i in pure) != sorted(semis):
        raise VerificationError("semiconcepts differ from the pure part of the full algebra")
    return pair_algebra(ctx, semis, kc)


# -- operator identities on the full complex algebra ------------------------------


def _dual_tables(kc, alg):
    """f_R^δ and f_S^δ computed from upper approximations, independent of ¬ and ⌟."""
    ctx = kc.context
    ext = np.array([p[0] for p in alg.elements], dtype=np.int64)
    itt = np.array([p[1] for p in alg.elements], dtype=np.int64)
    look = _PairIndex(alg.elements, ctx.n_attributes)
    A = _upper_table(kc.R, ctx.n_objects)[ext]
    fRd = look(A, np.array(prime_table(ctx.rows, ctx.n_attributes), dtype=np.int64)[A], "f_R dual")
    B = _upper_table(kc.S, ctx.n_attributes)[itt]
    fSd = look(np.array(prime_table(ctx.cols, ctx.n_objects), dtype=np.int64)[B], B, "f_S dual")
    return fRd, fSd


def _pair_leq(alg):
    ext = np.array([p[0] for p in alg.elements], dtype=np.int64)
    itt = np.array([p[1] for p in alg.elements], dtype=np.int64)
    return ((ext[:, None] & ~ext[None, :]) == 0) & ((itt[None, :] & ~itt[:, None]) == 0)


def _first(mask):
    bad = np.argwhere(~np.asarray(mask))
    return tuple(int(i) for i in bad[0]) if len(bad) else None


def modal_laws(kc, topological=None, budget=None):
    """First counterexample (or None) for each operator identity of the full complex algebra.

    The topological group (contractive/expansive and idempotent operators) is
    included when ``topological`` is true, or by default when R and S are preorders.
    """
    alg = complex_algebra(kc, "full", budget)
    fR, fS = alg.opI, alg.opC
    fRd, fSd = _dual_tables(kc, alg)
    leq = _pair_leq(alg)
    x = np.arange(alg.n)
    X, Y = x[:, None], x[None, :]
    nb, lt = alg.neg[alg.bot], alg.lneg[alg.top]
    out = {
        "fR(x&y) = fR(x) & fR(y)": _first(fR[alg.meet] == alg.meet[fR[X], fR[Y]]),
        "fS(x|y) = fS(x) | fS(y)": _first(fS[alg.join] == alg.join[fS[X], fS[Y]]),
        "fR(x&x) = fR(x)": _first(fR[alg.meet_idem] == fR),
        "fS(x|x) = fS(x)": _first(fS[alg.join_idem] == fS),
        "fR(!bot) = !bot": _first(np.array([fR[nb] == nb])),
        "fS(~top) = ~top": _first(np.array([fS[lt] == lt])),
        "fR(!x) = !fR_dual(x)": _first(fR[alg.neg] == alg.neg[fRd]),
        "fS(~x) = ~fS_dual(x)": _first(fS[alg.lneg] == alg.lneg[fSd]),
        "fR_dual(x v y) = fR_dual(x) v fR_dual(y)": _first(fRd[alg.vee(X, Y)] == alg.vee(fRd[X], fRd[Y])),
        "fS_dual(x ^ y) = fS_dual(x) ^ fS_dual(y)": _first(fSd[alg.wedge(X, Y)] == alg.wedge(fSd[X], fSd[Y])),
        "fR_dual(bot) = bot": _first(np.array([fRd[alg.bot] == alg.bot])),
        "fS_dual(top) = top": _first(np.array([fSd[alg.top] == alg.top])),
        "fR monotone": _first(~leq | leq[fR[X], fR[Y]]),
        "fS monotone": _first(~leq | leq[fS[X], fS[Y]]),
    }
    if topological is None:
        rep = kc_property_report(kc)
        topological = rep.left.preorder and rep.right.preorder
    if topological:
        out.update({
            "fR(x) <= x": _first(leq[fR, x]),
            "x <= fS(x)": _first(leq[x, fS]),
            # only the idempotent parts: (∅,∅) ⋢ f_R^δ(∅,∅) in the 1×1 full context
            "x&x <= fR_dual(x)": _first(leq[alg.meet_idem, fRd]),
            "fS_dual(x) <= x|x": _first(leq[fSd, alg.join_idem]),
            "fR fR = fR": _first(fR[fR] == fR),
            "fS fS = fS": _first(fS[fS] == fS),
            "fR_dual fR_dual = fR_dual": _first(fRd[fRd] == fRd),
            "fS_dual fS_dual = fS_dual": _first(fSd[fSd] == fSd),
        })
    return out


# -- properties of a Kripke context ---------------------------------------------


@dataclass
class KcPropertyReport:
    left: object  # RelationReport for R
    right: object  # RelationReport for S
    forth: bool
    back: bool
    forth_witness: tuple = None
    back_witness: tuple = None

    @property
    def reflexive(self):
        return self.left.reflexive and self.right.reflexive

    @property
    def symmetric(self):
        return self.left.symmetric and self.right.symmetric

    @property
    def transitive(self):
        return self.left.transitive and self.right.transitive

    @property
    def bisimulation(self):
        return self.forth and self.back

    def to_dict(self):
        return {
            "reflexive": self.reflexive, "symmetric": self.symmetric, "transitive": self.transitive,
            "left": self.left.to_dict(), "right": self.right.to_dict(),
            "forth": self.forth, "back": self.back, "bisimulation": self.bisimulation,
            "forth_witness": list(self.forth_witness) if self.forth_witness else None,
            "back_witness": list(self.back_witness) if self.back_witness else None,
        }


def kc_property_report(kc):
    ctx = kc.context
    forth_w = back_w = None
    # forth: g R g1 and g I m  =>  some m1 with m S m1 and g1 I m1
    for g in range(ctx.n_objects):
        for m in bits.members(ctx.rows[g]):
            for g1 in bits.members(kc.R[g]):
                if forth_w is None and not kc.S[m] & ctx.rows[g1]:
                    forth_w = (g, m, g1)
            # back: m S m1 and g I m  =>  some g1 with g R g1 and g1 I m1
            for m1 in bits.members(kc.S[m]):
                if back_w is None and not kc.R[g] & ctx.cols[m1]:
                    back_w = (g, m, m1)
    return KcPropertyReport(
        relation_report(ctx.n_objects, kc.R), relation_report(ctx.n_attributes, kc.S),
        forth_w is None, back_w is None, forth_w, back_w,
    )


# -- frame bridge --------------------------------------------------------------


@dataclass
class FrameBridgeReport:
    kc: KripkeContext
    prime_is_complement: bool
    negations_agree: bool
    involutive: bool
    modal_duality: bool
    bijective: bool
    homomorphism: bool
    failures: list

    @property
    def passed(self):
        return not self.failures

    def to_dict(self):
        return {
            "prime_is_complement": self.prime_is_complement, "negations_agree": self.negations_agree,
            "involutive": self.involutive, "modal_duality": self.modal_duality,
            "bijective": self.bijective, "homomorphism": self.homomorphism,
            "passed": self.passed, "failures": self.failures,
        }


def frame_context(n, R):
    names = tuple(str(i + 1) for i in range(n))
    full = bits.full(n)
    ctx = Context(names, names, tuple(full ^ (1 << g) for g in range(n)))
    return KripkeContext.from_pairs(ctx, R, R)


def frame_bridge(n, R, budget=None):
    """Build the Kripke context on (W, R) twice with incidence ≠ and verify the frame isomorphism."""
    require(1 << (2 * n), enumeration_budget(budget), "frame bridge")
    kc = frame_context(n, R)
    ctx = kc.context
    full = bits.full(n)
    failures = []
    subsets = range(1 << n)

    prime_ok = all(
        _derive_objs(ctx, A) == full ^ A and _derive_attrs(ctx, A) == full ^ A for A in subsets
    )
    if not prime_ok:
        failures.append("A' != complement of A")

    protos = enumerate_pairs(ctx, budget=budget)
    neg_ok = all(neg_pair(ctx, x) == lneg_pair(ctx, x) for x in protos)
    inv_ok = all(neg_pair(ctx, neg_pair(ctx, x)) == x for x in protos)
    dual_ok = all(
        modal_pair(kc, "fR", x) == neg_pair(ctx, modal_pair(kc, "fS", neg_pair(ctx, x)))
        for x in protos
    )
    for ok, msg in ((neg_ok, "neg != lneg"), (inv_ok, "neg neg x != x"),
                    (dual_ok, "f1(x) != neg f2(neg x)")):
        if not ok:
            failures.append(msg)

    f = {A: (A, full ^ A) for A in subsets}
    bij_ok = sorted(f.values()) == sorted(protos) and len(set(f.values())) == len(f)
    if not bij_ok:
        failures.append("f is not a bijection onto the protoconcepts")
    m_R = {A: _upper(kc.R, A) for A in subsets}
    hom_ok = f[0] == (0, full) and f[full] == (full, 0)
    for A in subsets:
        hom_ok &= f[full ^ A] == neg_pair(ctx, f[A])
        hom_ok &= f[m_R[A]] == modal_pair(kc, "fS", f[A])
        for B in subsets:
            hom_ok &= f[A | B] == join_pair(ctx, f[A], f[B])
            hom_ok &= f[A & B] == meet_pair(ctx, f[A], f[B])
    if not hom_ok:
        failures.append("f does not preserve the frame operations")
    return FrameBridgeReport(kc, prime_ok, neg_ok, inv_ok, dual_ok, bij_ok, bool(hom_ok), failures)


def upper_R(kc, A):
    """m_R(A) = {w : R(w) ∩ A ≠ ∅}."""
    return _upper(kc.R, A)


# -- term expressions for the concept approximations ----------------------------


@dataclass
class TermApprox:
    lower_A: Protoconcept
    upper_A: Protoconcept
    lower_B: Protoconcept
    upper_B: Protoconcept
    agrees: bool


def approx_via_terms(kc, x, y):
    """The four approximation terms built from f_R, f_S, their duals, ⊓ and ⊔ only."""
    ctx = kc.context
    _same_context(ctx, (x, y))
    fR, fRd = modal_pair(kc, "fR", x.pair), modal_pair(kc, "fR_dual", x.pair)
    fS, fSd = modal_pair(kc, "fS", y.pair), modal_pair(kc, "fS_dual", y.pair)
    terms = (join_pair(ctx, fR, fR), join_pair(ctx, fRd, fRd),
             meet_pair(ctx, fSd, fSd), meet_pair(ctx, fS, fS))
    ref = concept_approx(kc, OBJECTS, x.extent).bounds() + concept_approx(kc, ATTRIBUTES, y.intent).bounds()
    return TermApprox(*(Protoconcept.trusted(ctx, *t) for t in terms), agrees=terms == ref)
