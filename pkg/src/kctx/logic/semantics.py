"""Algebraic and protoconcept semantics of formulas, validity checks and countermodel search."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .. import bits
from ..budget import require, valuation_budget
from ..context import Context, Protoconcept, enumerate_pairs
from ..dba.algebra import FiniteDba
from ..errors import KctxError
from ..kripke import KripkeContext, pair_algebra, protoconcept_algebra
from .axioms import get_system
from .syntax import BBOX, BOX, JOIN, LNEG, MEET, NEG, Binary, Const, Sequent, Unary, Var, is_modal, variables


class SemanticsError(KctxError, ValueError):
    pass


def as_algebra(model):
    """(algebra, context or None) for a FiniteDba(o), Context or KripkeContext."""
    if isinstance(model, FiniteDba):
        return model, None
    if isinstance(model, KripkeContext):
        return pair_algebra(model.context, enumerate_pairs(model.context), model), model.context
    if isinstance(model, Context):
        return protoconcept_algebra(model), model
    raise TypeError(f"unsupported model type {type(model).__name__}")


def eval_array(alg, f, env):
    """Evaluate ``f`` with variables bound to index arrays (broadcast together)."""
    if isinstance(f, Var):
        try:
            return env[f.name]
        except KeyError:
            raise SemanticsError(f"unbound variable {f.name!r}") from None
    if isinstance(f, Const):
        return np.intp(alg.top if f.name == "top" else alg.bot)
    if isinstance(f, Unary):
        a = eval_array(alg, f.arg, env)
        if f.op == NEG:
            return alg.neg[a]
        if f.op == LNEG:
            return alg.lneg[a]
        if not alg.has_operators:
            raise SemanticsError("modal formula over a model without operators")
        return alg.opI[a] if f.op == BOX else alg.opC[a]
    a = eval_array(alg, f.left, env)
    b = eval_array(alg, f.right, env)
    return alg.meet[a, b] if f.op == MEET else alg.join[a, b]


def evaluate(v, model, f):
    """Value of ``f`` under valuation ``v`` (variable -> element index or Protoconcept)."""
    alg, ctx = as_algebra(model)
    env = {}
    for name, val in v.items():
        if isinstance(val, Protoconcept):
            if ctx is None or val.context != ctx:
                raise SemanticsError(f"value of {name!r} is not a protoconcept of the model")
            val = alg.elements.index(val.pair)
        env[name] = np.intp(val)
    out = int(eval_array(alg, f, env))
    if ctx is not None:
        return Protoconcept.trusted(ctx, *alg.elements[out])
    return out


def _grid(n, k):
    out = []
    for i in range(k):
        shape = [1] * k
        shape[i] = n
        out.append(np.arange(n).reshape(shape))
    return out


def counterexample(alg, seq, budget=None):
    """First valuation (lexicographic over the variables in order of occurrence) falsifying ``seq``."""
    names = variables(seq)
    require(alg.n ** len(names), valuation_budget(budget), "valuation scan")
    env = dict(zip(names, _grid(alg.n, len(names))))
    lhs = eval_array(alg, seq.left, env)
    rhs = eval_array(alg, seq.right, env)
    ok = np.broadcast_to(alg.leq[lhs, rhs], (alg.n,) * len(names))
    bad = np.argwhere(~ok)
    if not len(bad):
        return None
    return dict(zip(names, (int(i) for i in bad[0])))


def sequent_truth(model, seq, budget=None):
    alg, _ = as_algebra(model)
    return counterexample(alg, seq, budget) is None


# -- countermodel search -----------------------------------------------------------


@dataclass
class Witness:
    kc: KripkeContext
    valuation: dict  # variable -> (extent, intent)
    modal: bool

    def to_dict(self):
        ctx = self.kc.context
        out = {
            "objects": list(ctx.objects), "attributes": list(ctx.attributes),
            "rows": ctx.matrix(),
            "valuation": {k: ctx.format_pair(*v) for k, v in self.valuation.items()},
        }
        if self.modal:
            out["R"] = [list(p) for p in self.kc.R_pairs()]
            out["S"] = [list(p) for p in self.kc.S_pairs()]
        return out


def small_context(g, m, mask):
    """Context with g objects and m attributes; bit ``i*m + j`` of mask sets (i, j)."""
    rows = tuple((mask >> (i * m)) & bits.full(m) for i in range(g))
    return Context(tuple(f"g{i + 1}" for i in range(g)), tuple(f"m{j + 1}" for j in range(m)), rows)


def relations(n, mode="all"):
    """Relations on n points as row tuples, in mask order; mode 'rt' keeps the preorders."""
    from ..rough import relation_report

    if mode not in ("all", "rt"):
        raise ValueError(f"relation mode must be all or rt, not {mode!r}")
    for mask in range(1 << (n * n)):
        rows = tuple((mask >> (i * n)) & bits.full(n) for i in range(n))
        if mode == "rt" and not relation_report(n, rows).preorder:
            continue
        yield rows


def context_shapes(max_g, max_m):
    return sorted(((g, m) for g in range(1, max_g + 1) for m in range(1, max_m + 1)),
                  key=lambda s: (s[0] + s[1], s[0]))


def all_contexts(max_g, max_m):
    for g, m in context_shapes(max_g, max_m):
        for mask in range(1 << (g * m)):
            yield small_context(g, m, mask)


def countermodel_search(seq, system="CDBL", max_g=2, max_m=2, relation_mode="all", budget=None):
    """First falsifying (model, valuation) in enumeration order, or None when exhausted."""
    system = get_system(system)
    modal_seq = is_modal(seq)
    if modal_seq and not system.modal:
        raise SemanticsError(f"{system.name} has no modal connectives")
    for ctx in all_contexts(max_g, max_m):
        pairs = enumerate_pairs(ctx)
        if not system.modal:
            alg = pair_algebra(ctx, pairs)
            cex = counterexample(alg, seq, budget)
            if cex is not None:
                return Witness(KripkeContext(ctx, (0,) * ctx.n_objects, (0,) * ctx.n_attributes),
                               {k: alg.elements[v] for k, v in cex.items()}, False)
            continue
        rel_pairs = itertools.product(relations(ctx.n_objects, relation_mode),
                                      relations(ctx.n_attributes, relation_mode))
        if not modal_seq:
            # relations cannot matter: test once, report the first relation pair
            R, S = next(rel_pairs)
            alg = pair_algebra(ctx, pairs)
            cex = counterexample(alg, seq, budget)
            if cex is not None:
                return Witness(KripkeContext(ctx, R, S), {k: alg.elements[v] for k, v in cex.items()}, True)
            continue
        for R, S in rel_pairs:
            kc = KripkeContext(ctx, R, S)
            alg = pair_algebra(ctx, pairs, kc)
            cex = counterexample(alg, seq, budget)
            if cex is not None:
                return Witness(kc, {k: alg.elements[v] for k, v in cex.items()}, True)
    return None


def r5_premises(seq):
    """The four order sequents whose joint truth characterizes ``seq`` in a contextual model."""
    a, b = seq.left, seq.right
    return [
        Sequent(Binary(MEET, a, b), Binary(MEET, a, a)),
        Sequent(Binary(MEET, a, a), Binary(MEET, a, b)),
        Sequent(Binary(JOIN, a, b), Binary(JOIN, b, b)),
        Sequent(Binary(JOIN, b, b), Binary(JOIN, a, b)),
    ]
