"""Approximation spaces, relations induced by a context and concept/pair approximations."""

from __future__ import annotations

from dataclasses import dataclass

from . import bits
from .context import (
    ATTRIBUTES,
    OBJECTS,
    ConceptKind,
    Protoconcept,
    _derive_attrs,
    _derive_objs,
    classify,
    join_pair,
    meet_pair,
)
from .errors import DimensionError


@dataclass(frozen=True)
class ApproximationSpace:
    """Carrier ``0..n-1`` with a relation E; ``rows[x]`` is E(x) as a mask."""

    n: int
    rows: tuple

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if len(self.rows) != self.n:
            raise DimensionError(f"{len(self.rows)} relation rows for a carrier of {self.n}")
        for r in self.rows:
            bits.check_width(r, self.n, "relation row")

    @classmethod
    def from_pairs(cls, n, pairs):
        rows = [0] * n
        for a, b in pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise DimensionError(f"pair ({a}, {b}) outside carrier of size {n}")
            rows[a] |= 1 << b
        return cls(n, tuple(rows))

    def pairs(self):
        return [(a, b) for a in range(self.n) for b in bits.members(self.rows[a])]

    def lower(self, A):
        bits.check_width(A, self.n, "set")
        return bits.from_indices(x for x in range(self.n) if self.rows[x] & ~A == 0)

    def upper(self, A):
        bits.check_width(A, self.n, "set")
        return bits.from_indices(x for x in range(self.n) if self.rows[x] & A)

    def classes(self):
        """Distinct rows, in order of first appearance (the blocks of an equivalence)."""
        seen = []
        for r in self.rows:
            if r not in seen:
                seen.append(r)
        return seen


def approx(space, mode, A):
    if mode == "lower":
        return space.lower(A)
    if mode == "upper":
        return space.upper(A)
    raise ValueError(f"mode must be lower or upper, not {mode!r}")


@dataclass(frozen=True)
class RelationReport:
    reflexive: bool
    symmetric: bool
    transitive: bool

    @property
    def equivalence(self):
        return self.reflexive and self.symmetric and self.transitive

    @property
    def preorder(self):
        return self.reflexive and self.transitive

    def to_dict(self):
        return {"reflexive": self.reflexive, "symmetric": self.symmetric,
                "transitive": self.transitive, "equivalence": self.equivalence,
                "preorder": self.preorder}


def relation_report(n, rows):
    reflexive = all(rows[x] >> x & 1 for x in range(n))
    symmetric = all(rows[y] >> x & 1 for x in range(n) for y in bits.members(rows[x]))
    transitive = True
    for x in range(n):
        reach = 0
        for y in bits.members(rows[x]):
            reach |= rows[y]
        if reach & ~rows[x]:
            transitive = False
            break
    return RelationReport(reflexive, symmetric, transitive)


def induced_relations(ctx, kind):
    """E1/J1 on objects (equal / included rows), E2/J2 on attributes (equal / included columns)."""
    if kind in ("E1", "J1"):
        vecs, n = ctx.rows, ctx.n_objects
    elif kind in ("E2", "J2"):
        vecs, n = ctx.cols, ctx.n_attributes
    else:
        raise ValueError(f"kind must be E1, E2, J1 or J2, not {kind!r}")
    if kind[0] == "E":
        rel = lambda a, b: a == b
    else:
        rel = lambda a, b: a & ~b == 0
    rows = tuple(bits.from_indices(j for j in range(n) if rel(vecs[i], vecs[j])) for i in range(n))
    return ApproximationSpace(n, rows), relation_report(n, rows)


@dataclass(frozen=True)
class ConceptApprox:
    """Either an exact pair (feasible input) or lower and upper pairs."""

    exact: tuple = None
    lower: tuple = None
    upper: tuple = None

    @property
    def feasible(self):
        return self.exact is not None

    def bounds(self):
        """(lower, upper), with an exact pair serving as both."""
        if self.exact is not None:
            return self.exact, self.exact
        return self.lower, self.upper


def _spaces(kc):
    ctx = kc.context
    return (ApproximationSpace(ctx.n_objects, kc.R), ApproximationSpace(ctx.n_attributes, kc.S))


def concept_approx(kc, side, X):
    """Concept approximations of an object set (via R) or an attribute set (via S)."""
    ctx = kc.context
    objs, attrs = _spaces(kc)
    if side == OBJECTS:
        bits.check_width(X, ctx.n_objects, "object set")
        Xp = _derive_objs(ctx, X)
        if _derive_attrs(ctx, Xp) == X:
            return ConceptApprox(exact=(X, Xp))
        lo, up = objs.lower(X), objs.upper(X)
        lo1, up1 = _derive_objs(ctx, lo), _derive_objs(ctx, up)
        return ConceptApprox(lower=(_derive_attrs(ctx, lo1), lo1),
                             upper=(_derive_attrs(ctx, up1), up1))
    if side == ATTRIBUTES:
        bits.check_width(X, ctx.n_attributes, "attribute set")
        Xp = _derive_attrs(ctx, X)
        if _derive_objs(ctx, Xp) == X:
            return ConceptApprox(exact=(Xp, X))
        lo, up = attrs.lower(X), attrs.upper(X)
        # an attribute set shrinks its extent as it grows: the upper set gives the lower pair
        up1, lo1 = _derive_attrs(ctx, up), _derive_attrs(ctx, lo)
        return ConceptApprox(lower=(up1, _derive_objs(ctx, up1)),
                             upper=(lo1, _derive_objs(ctx, lo1)))
    raise ValueError(f"side must be objects or attributes, not {side!r}")


@dataclass(frozen=True)
class PairApprox:
    exact: Protoconcept = None
    lower: Protoconcept = None
    upper: Protoconcept = None

    @property
    def is_exact(self):
        return self.exact is not None


def pair_approx(kc, A, B):
    """Approximate an arbitrary pair (A, B); a concept is returned unchanged."""
    ctx = kc.context
    if classify(ctx, A, B) is ConceptKind.CONCEPT:
        return PairApprox(exact=Protoconcept.trusted(ctx, A, B))
    loA, upA = concept_approx(kc, OBJECTS, A).bounds()
    loB, upB = concept_approx(kc, ATTRIBUTES, B).bounds()
    return PairApprox(
        lower=Protoconcept.trusted(ctx, *meet_pair(ctx, loA, loB)),
        upper=Protoconcept.trusted(ctx, *join_pair(ctx, upA, upB)),
    )
