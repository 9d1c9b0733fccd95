"""Finite double Boolean algebras (with operators) given as operation tables.

Elements are the indices ``0 .. n-1``.  All checks are exhaustive and run on
numpy index arrays, so an axiom in ``k`` variables costs one vectorized pass
over ``n**k`` tuples (three-variable laws are chunked over the first variable).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ..errors import FormatError

LEVELS = ("dba", "contextual", "pure", "dbao", "topological")
_CHUNK = 1 << 20


def _table(name, data, shape, n):
    arr = np.asarray(data)
    if arr.ndim == 1 and len(shape) == 2 and arr.size == n * n:
        arr = arr.reshape(n, n)
    if arr.shape != shape:
        raise FormatError(f"{name} table has shape {arr.shape}, expected {shape}")
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        raise FormatError(f"{name} table must hold integer indices")
    arr = arr.astype(np.intp)
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        raise FormatError(f"{name} table has an index outside 0..{n - 1}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FiniteDba:
    meet: np.ndarray
    join: np.ndarray
    neg: np.ndarray
    lneg: np.ndarray
    top: int
    bot: int
    labels: tuple = None
    elements: tuple = field(default=None, repr=False)  # optional carrier payload

    def __post_init__(self):
        n = len(np.asarray(self.neg))
        if n == 0:
            raise FormatError("empty carrier")
        set_ = lambda k, v: object.__setattr__(self, k, v)
        set_("meet", _table("meet", self.meet, (n, n), n))
        set_("join", _table("join", self.join, (n, n), n))
        set_("neg", _table("neg", self.neg, (n,), n))
        set_("lneg", _table("lneg", self.lneg, (n,), n))
        for name in ("top", "bot"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or not 0 <= v < n:
                raise FormatError(f"{name} must be an index in 0..{n - 1}")
            set_(name, int(v))
        if self.labels is None:
            set_("labels", tuple(str(i) for i in range(n)))
        elif len(self.labels) != n:
            raise FormatError(f"{len(self.labels)} labels for {n} elements")
        else:
            set_("labels", tuple(str(s) for s in self.labels))

    @property
    def n(self):
        return len(self.neg)

    @property
    def has_operators(self):
        return False

    @cached_property
    def meet_idem(self):
        """x ⊓ x for every x."""
        return np.ascontiguousarray(np.diagonal(self.meet))

    @cached_property
    def join_idem(self):
        return np.ascontiguousarray(np.diagonal(self.join))

    def vee(self, x, y):
        return self.neg[self.meet[self.neg[x], self.neg[y]]]

    def wedge(self, x, y):
        return self.lneg[self.join[self.lneg[x], self.lneg[y]]]

    @cached_property
    def leq(self):
        """``leq[x, y]`` iff x ⊓ y = x ⊓ x and x ⊔ y = y ⊔ y."""
        return (self.meet == self.meet_idem[:, None]) & (self.join == self.join_idem[None, :])

    @cached_property
    def d_meet(self):
        return np.flatnonzero(self.meet_idem == np.arange(self.n))

    @cached_property
    def d_join(self):
        return np.flatnonzero(self.join_idem == np.arange(self.n))

    def label(self, i):
        return self.labels[i]

    def with_operators(self, opI, opC):
        return FiniteDbao(
            self.meet, self.join, self.neg, self.lneg, self.top, self.bot,
            self.labels, self.elements, opI=opI, opC=opC,
        )


@dataclass(frozen=True, eq=False)
class FiniteDbao(FiniteDba):
    opI: np.ndarray = None
    opC: np.ndarray = None

    def __post_init__(self):
        super().__post_init__()
        if self.opI is None or self.opC is None:
            raise FormatError("a dBao needs both I and C tables")
        n = self.n
        object.__setattr__(self, "opI", _table("I", self.opI, (n,), n))
        object.__setattr__(self, "opC", _table("C", self.opC, (n,), n))

    @property
    def has_operators(self):
        return True

    @cached_property
    def idelta(self):
        return self.neg[self.opI[self.neg]]

    @cached_property
    def cdelta(self):
        return self.lneg[self.opC[self.lneg]]

    def without_operators(self):
        return FiniteDba(self.meet, self.join, self.neg, self.lneg, self.top, self.bot,
                         self.labels, self.elements)


def quasi_order(alg, x, y):
    return bool(alg.leq[x, y])


def dual_op(alg, which, x):
    if which in ("Idelta", "I_delta"):
        return int(alg.idelta[x])
    if which in ("Cdelta", "C_delta"):
        return int(alg.cdelta[x])
    raise ValueError(f"unknown dual operator {which!r}")


# -- axiom catalogue ---------------------------------------------------------
# Each law maps (alg, x, y, z) index arrays to (lhs, rhs) for equations, or to
# a boolean "violation" array for implications.


@dataclass(frozen=True)
class Law:
    name: str
    text: str
    arity: int
    fn: object
    kind: str = "eq"  # "eq" or "violation"


def _dba_laws():
    L = []

    def eq(name, text, arity, fn):
        L.append(Law(name, text, arity, fn))

    eq("1a", "(x⊓x)⊓y = x⊓y", 2, lambda A, x, y, z: (A.meet[A.meet[x, x], y], A.meet[x, y]))
    eq("1b", "(x⊔x)⊔y = x⊔y", 2, lambda A, x, y, z: (A.join[A.join[x, x], y], A.join[x, y]))
    eq("2a", "x⊓y = y⊓x", 2, lambda A, x, y, z: (A.meet[x, y], A.meet[y, x]))
    eq("2b", "x⊔y = y⊔x", 2, lambda A, x, y, z: (A.join[x, y], A.join[y, x]))
    eq("3a", "x⊓(y⊓z) = (x⊓y)⊓z", 3,
       lambda A, x, y, z: (A.meet[x, A.meet[y, z]], A.meet[A.meet[x, y], z]))
    eq("3b", "x⊔(y⊔z) = (x⊔y)⊔z", 3,
       lambda A, x, y, z: (A.join[x, A.join[y, z]], A.join[A.join[x, y], z]))
    eq("4a", "¬(x⊓x) = ¬x", 1, lambda A, x, y, z: (A.neg[A.meet[x, x]], A.neg[x]))
    eq("4b", "⌟(x⊔x) = ⌟x", 1, lambda A, x, y, z: (A.lneg[A.join[x, x]], A.lneg[x]))
    eq("5a", "x⊓(x⊔y) = x⊓x", 2, lambda A, x, y, z: (A.meet[x, A.join[x, y]], A.meet[x, x]))
    eq("5b", "x⊔(x⊓y) = x⊔x", 2, lambda A, x, y, z: (A.join[x, A.meet[x, y]], A.join[x, x]))
    eq("6a", "x⊓(y∨z) = (x⊓y)∨(x⊓z)", 3,
       lambda A, x, y, z: (A.meet[x, A.vee(y, z)], A.vee(A.meet[x, y], A.meet[x, z])))
    eq("6b", "x⊔(y∧z) = (x⊔y)∧(x⊔z)", 3,
       lambda A, x, y, z: (A.join[x, A.wedge(y, z)], A.wedge(A.join[x, y], A.join[x, z])))
    eq("7a", "x⊓(x∨y) = x⊓x", 2, lambda A, x, y, z: (A.meet[x, A.vee(x, y)], A.meet[x, x]))
    eq("7b", "x⊔(x∧y) = x⊔x", 2, lambda A, x, y, z: (A.join[x, A.wedge(x, y)], A.join[x, x]))
    eq("8a", "¬¬(x⊓y) = x⊓y", 2, lambda A, x, y, z: (A.neg[A.neg[A.meet[x, y]]], A.meet[x, y]))
    eq("8b", "⌟⌟(x⊔y) = x⊔y", 2, lambda A, x, y, z: (A.lneg[A.lneg[A.join[x, y]]], A.join[x, y]))
    eq("9a", "x⊓¬x = ⊥", 1, lambda A, x, y, z: (A.meet[x, A.neg[x]], np.full_like(x, A.bot)))
    eq("9b", "x⊔⌟x = ⊤", 1, lambda A, x, y, z: (A.join[x, A.lneg[x]], np.full_like(x, A.top)))
    eq("10a", "¬⊥ = ⊤⊓⊤", 0, lambda A, x, y, z: (A.neg[A.bot], A.meet[A.top, A.top]))
    eq("10b", "⌟⊤ = ⊥⊔⊥", 0, lambda A, x, y, z: (A.lneg[A.top], A.join[A.bot, A.bot]))
    eq("11a", "¬⊤ = ⊥", 0, lambda A, x, y, z: (A.neg[A.top], A.bot))
    eq("11b", "⌟⊥ = ⊤", 0, lambda A, x, y, z: (A.lneg[A.bot], A.top))
    eq("12", "(x⊓x)⊔(x⊓x) = (x⊔x)⊓(x⊔x)", 1,
       lambda A, x, y, z: (A.join[A.meet[x, x], A.meet[x, x]], A.meet[A.join[x, x], A.join[x, x]]))
    return L


def _operator_laws():
    return [
        Law("I-mono", "x⊑y ⟹ Ix⊑Iy", 2,
            lambda A, x, y, z: A.leq[x, y] & ~A.leq[A.opI[x], A.opI[y]], "violation"),
        Law("C-mono", "x⊑y ⟹ Cx⊑Cy", 2,
            lambda A, x, y, z: A.leq[x, y] & ~A.leq[A.opC[x], A.opC[y]], "violation"),
        Law("op-1a", "I(x⊓y) = Ix⊓Iy", 2,
            lambda A, x, y, z: (A.opI[A.meet[x, y]], A.meet[A.opI[x], A.opI[y]])),
        Law("op-1b", "C(x⊔y) = Cx⊔Cy", 2,
            lambda A, x, y, z: (A.opC[A.join[x, y]], A.join[A.opC[x], A.opC[y]])),
        Law("op-2a", "I(¬⊥) = ¬⊥", 0, lambda A, x, y, z: (A.opI[A.neg[A.bot]], A.neg[A.bot])),
        Law("op-2b", "C(⌟⊤) = ⌟⊤", 0, lambda A, x, y, z: (A.opC[A.lneg[A.top]], A.lneg[A.top])),
        Law("op-3a", "I(x⊓x) = Ix", 1, lambda A, x, y, z: (A.opI[A.meet[x, x]], A.opI[x])),
        Law("op-3b", "C(x⊔x) = Cx", 1, lambda A, x, y, z: (A.opC[A.join[x, x]], A.opC[x])),
    ]


def _topological_laws():
    return [
        Law("top-4a", "Ix ⊑ x", 1, lambda A, x, y, z: ~A.leq[A.opI[x], x], "violation"),
        Law("top-4b", "x ⊑ Cx", 1, lambda A, x, y, z: ~A.leq[x, A.opC[x]], "violation"),
        Law("top-5a", "IIx = Ix", 1, lambda A, x, y, z: (A.opI[A.opI[x]], A.opI[x])),
        Law("top-5b", "CCx = Cx", 1, lambda A, x, y, z: (A.opC[A.opC[x]], A.opC[x])),
    ]


def _contextual_law():
    return Law("contextual", "x⊑y and y⊑x ⟹ x=y", 2,
               lambda A, x, y, z: A.leq[x, y] & A.leq[y, x] & (x != y), "violation")


def _pure_law():
    return Law("pure", "x⊓x=x or x⊔x=x", 1,
               lambda A, x, y, z: (A.meet_idem[x] != x) & (A.join_idem[x] != x), "violation")


DBA_LAWS = _dba_laws()
OPERATOR_LAWS = _operator_laws()
TOPOLOGICAL_LAWS = _topological_laws()
CONTEXTUAL_LAW = _contextual_law()
PURE_LAW = _pure_law()


def laws_for(level):
    if level == "dba":
        return list(DBA_LAWS)
    if level == "contextual":
        return DBA_LAWS + [CONTEXTUAL_LAW]
    if level == "pure":
        return DBA_LAWS + [PURE_LAW]
    if level == "dbao":
        return DBA_LAWS + OPERATOR_LAWS
    if level == "topological":
        return DBA_LAWS + OPERATOR_LAWS + TOPOLOGICAL_LAWS
    raise ValueError(f"unknown level {level!r}; expected one of {', '.join(LEVELS)}")


@dataclass
class LawResult:
    name: str
    text: str
    passed: bool
    counterexample: tuple = None

    def to_dict(self):
        return {"law": self.name, "text": self.text, "passed": self.passed,
                "counterexample": None if self.counterexample is None else list(self.counterexample)}


@dataclass
class AxiomReport:
    level: str
    size: int
    results: list

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def failures(self):
        return [r for r in self.results if not r.passed]

    def to_dict(self):
        return {"level": self.level, "size": self.size, "passed": self.passed,
                "results": [r.to_dict() for r in self.results]}


def _violations(alg, law, x, y, z):
    out = law.fn(alg, x, y, z)
    if law.kind == "eq":
        lhs, rhs = out
        return np.asarray(lhs) != np.asarray(rhs)
    return np.asarray(out)


def first_violation(alg, law):
    """Lexicographically smallest tuple violating ``law``, or None."""
    n = alg.n
    k = law.arity
    if k == 0:
        bad = _violations(alg, law, None, None, None)
        return () if bool(bad) else None
    shape = (1,) * k
    step = max(1, _CHUNK // n ** (k - 1))
    for lo in range(0, n, step):
        hi = min(n, lo + step)
        grids = [np.arange(lo, hi).reshape((-1,) + shape[1:])]
        for i in range(1, k):
            s = [1] * k
            s[i] = n
            grids.append(np.arange(n).reshape(s))
        grids += [None] * (3 - k)
        bad = _violations(alg, law, *grids)
        bad = np.broadcast_to(bad, (hi - lo,) + (n,) * (k - 1))
        hit = np.argwhere(bad)
        if len(hit):
            t = hit[0].tolist()
            t[0] += lo
            return tuple(t)
    return None


def holds_at(alg, law, t):
    """Evaluate ``law`` at one tuple; True when it holds."""
    args = [np.intp(v) for v in t] + [None] * (3 - len(t))
    return not bool(_violations(alg, law, *args))


def check_axioms(alg, level="dba"):
    """Exhaustive check of every law of ``level``; failures carry the smallest witness."""
    laws = laws_for(level)
    if level in ("dbao", "topological") and not alg.has_operators:
        raise FormatError(f"level {level} needs I and C tables")
    results = []
    for law in laws:
        cex = first_violation(alg, law)
        results.append(LawResult(law.name, law.text, cex is None, cex))
    return AxiomReport(level, alg.n, results)


def law_by_name(name):
    for law in DBA_LAWS + OPERATOR_LAWS + TOPOLOGICAL_LAWS + [CONTEXTUAL_LAW, PURE_LAW]:
        if law.name == name:
            return law
    raise KeyError(name)


def boolean_dba(n_atoms=1):
    """The Boolean algebra on subsets of ``n_atoms`` points as a dBao with ⌟=¬ and I=C=id."""
    size = 1 << n_atoms
    full = size - 1
    idx = np.arange(size)
    meet = idx[:, None] & idx[None, :]
    join = idx[:, None] | idx[None, :]
    comp = full ^ idx
    labels = ["{" + ",".join(str(i + 1) for i in range(n_atoms) if m >> i & 1) + "}" for m in range(size)]
    return FiniteDbao(meet, join, comp, comp, full, 0, labels, opI=idx, opC=idx)
