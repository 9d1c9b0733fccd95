"""Idempotent parts of a dBa, finite Boolean algebras with operators and the bridges between them."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import VerificationError
from .algebra import FiniteDba, FiniteDbao, check_axioms


@dataclass(frozen=True, eq=False)
class FiniteBooleanAlgebra:
    """Boolean algebra on local indices ``0..n-1``; ``elements[i]`` is the source index.

    ``op`` is an optional unary operator table (a Bao when normal and additive).
    """

    elements: np.ndarray
    meet: np.ndarray
    join: np.ndarray
    comp: np.ndarray
    zero: int
    one: int
    op: np.ndarray = None
    labels: tuple = None

    @property
    def n(self):
        return len(self.elements)

    def leq(self):
        return self.meet == np.arange(self.n)[:, None]


def check_boolean_algebra(ba):
    """Names of the failed Boolean-algebra laws (empty list when it is one)."""
    n = ba.n
    x = np.arange(n)[:, None, None]
    y = np.arange(n)[None, :, None]
    z = np.arange(n)[None, None, :]
    m, j, c = ba.meet, ba.join, ba.comp
    x1, y1 = np.arange(n)[:, None], np.arange(n)[None, :]
    checks = {
        "meet-commutative": m[x1, y1] == m[y1, x1],
        "join-commutative": j[x1, y1] == j[y1, x1],
        "meet-associative": m[m[x, y], z] == m[x, m[y, z]],
        "join-associative": j[j[x, y], z] == j[x, j[y, z]],
        "absorption-meet": m[x1, j[x1, y1]] == x1,
        "absorption-join": j[x1, m[x1, y1]] == x1,
        "distributive": m[x, j[y, z]] == j[m[x, y], m[x, z]],
        "complement-meet": m[np.arange(n), c] == ba.zero,
        "complement-join": j[np.arange(n), c] == ba.one,
        "zero": m[np.arange(n), ba.zero] == ba.zero,
        "one": j[np.arange(n), ba.one] == ba.one,
    }
    return [name for name, ok in checks.items() if not np.all(ok)]


def check_bao(ba):
    """Failed laws among Boolean-algebra laws plus normality and additivity of ``op``."""
    fails = check_boolean_algebra(ba)
    if ba.op is None:
        return fails + ["operator-missing"]
    f, j = ba.op, ba.join
    if f[ba.zero] != ba.zero:
        fails.append("normal")
    x, y = np.arange(ba.n)[:, None], np.arange(ba.n)[None, :]
    if not np.all(f[j[x, y]] == j[f[x], f[y]]):
        fails.append("additive")
    return fails


def _restrict(alg, carrier, binop, unop, zero, one, op=None, name=""):
    carrier = np.asarray(carrier)
    pos = np.full(alg.n, -1)
    pos[carrier] = np.arange(len(carrier))

    def local(arr, what):
        out = pos[arr]
        if np.any(out < 0):
            raise VerificationError(f"{name}: {what} leaves the carrier")
        return out

    sub = np.ix_(carrier, carrier)
    meet_t = local(binop[0][sub], "meet")
    join_t = local(binop[1][sub], "join")
    comp_t = local(unop[carrier], "complement")
    op_t = local(op[carrier], "operator") if op is not None else None
    return FiniteBooleanAlgebra(
        carrier, meet_t, join_t, comp_t, int(local(np.array([zero]), "zero")[0]),
        int(local(np.array([one]), "one")[0]), op_t,
        tuple(alg.labels[i] for i in carrier),
    )


@dataclass
class StructureParts:
    d_meet: list
    d_join: list
    d_pure: list
    pure_subalgebra: FiniteDba
    meet_part: FiniteBooleanAlgebra
    join_part: FiniteBooleanAlgebra
    meet_failures: list
    join_failures: list

    @property
    def verified(self):
        return not self.meet_failures and not self.join_failures

    def to_dict(self):
        return {
            "d_meet": self.d_meet, "d_join": self.d_join, "d_pure": self.d_pure,
            "meet_part_size": self.meet_part.n, "join_part_size": self.join_part.n,
            "meet_part_failures": self.meet_failures, "join_part_failures": self.join_failures,
            "verified": self.verified,
        }


def subalgebra(alg, carrier):
    """Restriction of ``alg`` (and its operators) to a closed subset, re-indexed in order."""
    carrier = np.asarray(sorted(int(c) for c in carrier))
    pos = np.full(alg.n, -1)
    pos[carrier] = np.arange(len(carrier))
    sub = np.ix_(carrier, carrier)
    tables = [alg.meet[sub], alg.join[sub], alg.neg[carrier], alg.lneg[carrier],
              np.array([alg.top, alg.bot])]
    if alg.has_operators:
        tables += [alg.opI[carrier], alg.opC[carrier]]
    for t in tables:
        if np.any(pos[t] < 0):
            raise VerificationError("subset is not closed under the operations")
    labels = tuple(alg.labels[i] for i in carrier)
    elements = tuple(alg.elements[i] for i in carrier) if alg.elements is not None else None
    args = (pos[tables[0]], pos[tables[1]], pos[tables[2]], pos[tables[3]],
            int(pos[alg.top]), int(pos[alg.bot]), labels, elements)
    if alg.has_operators:
        return FiniteDbao(*args, opI=pos[tables[5]], opC=pos[tables[6]])
    return FiniteDba(*args)


def structure_parts(alg):
    """D_⊓, D_⊔, the pure part, and the two Boolean extracts (Baos for a dBao)."""
    if not check_axioms(alg, "dba").passed:
        raise VerificationError("structure_parts needs an algebra passing the dba level")
    d_meet = [int(i) for i in alg.d_meet]
    d_join = [int(i) for i in alg.d_join]
    d_pure = sorted(set(d_meet) | set(d_join))
    pure = subalgebra(alg, d_pure)

    idx = np.arange(alg.n)
    vee = alg.vee(idx[:, None], idx[None, :])
    wedge = alg.wedge(idx[:, None], idx[None, :])
    meet_part = _restrict(alg, d_meet, (alg.meet, vee), alg.neg, alg.bot, alg.neg[alg.bot],
                          alg.idelta if alg.has_operators else None, "D_meet")
    join_part = _restrict(alg, d_join, (wedge, alg.join), alg.lneg, alg.lneg[alg.top], alg.top,
                          alg.opC if alg.has_operators else None, "D_join")
    check = check_bao if alg.has_operators else check_boolean_algebra
    return StructureParts(d_meet, d_join, d_pure, pure, meet_part, join_part,
                          check(meet_part), check(join_part))


def bao_to_dbao(ba):
    """Bao (B, f) as the dBao with ⌟ = ¬, C = f and I = f^δ."""
    fails = check_bao(ba)
    if fails:
        raise VerificationError(f"input is not a Bao: {', '.join(fails)}")
    f = ba.op
    return FiniteDbao(ba.meet, ba.join, ba.comp, ba.comp, ba.one, ba.zero, ba.labels,
                      opI=ba.comp[f[ba.comp]], opC=f)


def dbao_from_parts(alg, meet_bao, join_bao):
    """I(x) = ¬Ī(¬x) and C(x) = C̄(x⊔x) from Baos on D_⊓ (carrying Ī) and D_⊔ (carrying C̄)."""
    for name, ba in (("D_meet", meet_bao), ("D_join", join_bao)):
        fails = check_bao(ba)
        if fails:
            raise VerificationError(f"{name} input is not a Bao: {', '.join(fails)}")
    if sorted(meet_bao.elements.tolist()) != [int(i) for i in alg.d_meet]:
        raise VerificationError("meet Bao carrier is not D_meet")
    if sorted(join_bao.elements.tolist()) != [int(i) for i in alg.d_join]:
        raise VerificationError("join Bao carrier is not D_join")
    pos_m = np.full(alg.n, -1)
    pos_m[meet_bao.elements] = np.arange(meet_bao.n)
    pos_j = np.full(alg.n, -1)
    pos_j[join_bao.elements] = np.arange(join_bao.n)
    idx = np.arange(alg.n)
    ibar = meet_bao.elements[meet_bao.op[pos_m[alg.neg[idx]]]]
    opI = alg.neg[ibar]
    opC = join_bao.elements[join_bao.op[pos_j[alg.join_idem]]]
    return alg.with_operators(opI, opC)


def powerset_bao(n, R):
    """Complex algebra of the frame (W, R): subsets of W with m_R(A) = {w : R(w)∩A ≠ ∅}."""
    rows = [0] * n
    for a, b in R:
        rows[a] |= 1 << b
    size = 1 << n
    idx = np.arange(size)
    f = np.array([sum(1 << w for w in range(n) if rows[w] & A) for A in range(size)])
    labels = tuple("{" + ",".join(str(i + 1) for i in range(n) if A >> i & 1) + "}" for A in range(size))
    return FiniteBooleanAlgebra(idx, idx[:, None] & idx[None, :], idx[:, None] | idx[None, :],
                                (size - 1) ^ idx, 0, size - 1, f, labels)


def bao_bridge(source, meet_bao=None, join_bao=None):
    """Dispatch: a Bao gives ``bao_to_dbao``; a dBa with two Baos gives ``dbao_from_parts``."""
    if isinstance(source, FiniteBooleanAlgebra):
        return bao_to_dbao(source)
    if meet_bao is None or join_bao is None:
        raise VerificationError("the converse bridge needs Baos on both Boolean parts")
    return dbao_from_parts(source, meet_bao, join_bao)
