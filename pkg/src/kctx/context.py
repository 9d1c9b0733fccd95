"""Formal contexts, derivation operators and the protoconcept algebra.

Object and attribute sets are integers used as bit-vectors: bit ``i`` stands
for the ``i``-th name in the declared order of the context.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property

from . import bits
from .budget import enumeration_budget, require
from .errors import ContextMismatch, DimensionError, VerificationError

OBJECTS = "objects"
ATTRIBUTES = "attributes"


@dataclass(frozen=True)
class Context:
    """A finite context ``(G, M, I)``; ``rows[g]`` is the attribute set of object ``g``."""

    objects: tuple
    attributes: tuple
    rows: tuple

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "attributes", tuple(self.attributes))
        object.__setattr__(self, "rows", tuple(self.rows))
        for label, names in (("object", self.objects), ("attribute", self.attributes)):
            if len(set(names)) != len(names):
                raise DimensionError(f"duplicate {label} names in {names!r}")
        if len(self.rows) != len(self.objects):
            raise DimensionError(
                f"{len(self.rows)} incidence rows for {len(self.objects)} objects"
            )
        for row in self.rows:
            bits.check_width(row, len(self.attributes), "incidence row")

    @classmethod
    def from_matrix(cls, objects, attributes, matrix):
        """Build from rows given either as ``"X.X"`` strings or as iterables of booleans."""
        rows = []
        for line in matrix:
            if isinstance(line, str):
                cells = [c in "Xx*1" for c in line.strip()]
            else:
                cells = [bool(c) for c in line]
            if len(cells) != len(attributes):
                raise DimensionError(f"row {line!r} has {len(cells)} cells, expected {len(attributes)}")
            rows.append(bits.from_indices(i for i, c in enumerate(cells) if c))
        return cls(tuple(objects), tuple(attributes), tuple(rows))

    @classmethod
    def from_pairs(cls, objects, attributes, pairs):
        objects, attributes = tuple(objects), tuple(attributes)
        rows = [0] * len(objects)
        for g, m in pairs:
            rows[objects.index(g)] |= 1 << attributes.index(m)
        return cls(objects, attributes, tuple(rows))

    @property
    def n_objects(self):
        return len(self.objects)

    @property
    def n_attributes(self):
        return len(self.attributes)

    @property
    def all_objects(self):
        return bits.full(len(self.objects))

    @property
    def all_attributes(self):
        return bits.full(len(self.attributes))

    @cached_property
    def cols(self):
        """``cols[m]`` is the set of objects having attribute ``m``."""
        out = [0] * len(self.attributes)
        for g, row in enumerate(self.rows):
            for m in bits.members(row):
                out[m] |= 1 << g
        return tuple(out)

    def has(self, g, m):
        return bool(self.rows[g] >> m & 1)

    def object_set(self, names):
        return bits.from_indices(self.objects.index(n) for n in names)

    def attribute_set(self, names):
        return bits.from_indices(self.attributes.index(n) for n in names)

    def object_names(self, mask):
        return [self.objects[i] for i in bits.members(mask)]

    def attribute_names(self, mask):
        return [self.attributes[i] for i in bits.members(mask)]

    def matrix(self):
        return [
            "".join("X" if row >> m & 1 else "." for m in range(self.n_attributes))
            for row in self.rows
        ]

    def format_pair(self, extent, intent):
        ext = ",".join(self.object_names(extent))
        itt = ",".join(self.attribute_names(intent))
        return f"({{{ext}}},{{{itt}}})"


class ConceptKind(str, enum.Enum):
    """Most specific class of a pair; each class contains the previous one."""

    CONCEPT = "concept"
    SEMICONCEPT = "semiconcept"
    PROTOCONCEPT = "protoconcept"
    NONE = "none"

    @property
    def rank(self):
        return _RANK[self]


_RANK = {
    ConceptKind.CONCEPT: 3,
    ConceptKind.SEMICONCEPT: 2,
    ConceptKind.PROTOCONCEPT: 1,
    ConceptKind.NONE: 0,
}


@dataclass(frozen=True)
class Protoconcept:
    """A pair ``(extent, intent)`` with ``extent'' == intent'``, tied to one context."""

    context: Context = field(repr=False)
    extent: int
    intent: int

    def __post_init__(self):
        ctx = self.context
        bits.check_width(self.extent, ctx.n_objects, "extent")
        bits.check_width(self.intent, ctx.n_attributes, "intent")
        if _closure_objects(ctx, self.extent) != _derive_attrs(ctx, self.intent):
            raise DimensionError(
                f"{ctx.format_pair(self.extent, self.intent)} is not a protoconcept"
            )

    @classmethod
    def trusted(cls, ctx, extent, intent):
        """Skip the protoconcept check; for results of closed operations only."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "context", ctx)
        object.__setattr__(obj, "extent", extent)
        object.__setattr__(obj, "intent", intent)
        return obj

    @property
    def pair(self):
        return (self.extent, self.intent)

    def __str__(self):
        return self.context.format_pair(self.extent, self.intent)

    def sort_key(self):
        return _pair_key(self.context, self.extent, self.intent)


def _pair_key(ctx, extent, intent):
    return (bits.bit_key(extent, ctx.n_objects), bits.bit_key(intent, ctx.n_attributes))


def _derive_objs(ctx, A):
    out = ctx.all_attributes
    for g in bits.members(A):
        out &= ctx.rows[g]
    return out


def _derive_attrs(ctx, B):
    out = ctx.all_objects
    for m in bits.members(B):
        out &= ctx.cols[m]
    return out


def _closure_objects(ctx, A):
    return _derive_attrs(ctx, _derive_objs(ctx, A))


def derive(ctx, side, X):
    """``A'`` for ``side='objects'`` (attributes shared by all of A), ``B'`` otherwise."""
    if side == OBJECTS:
        bits.check_width(X, ctx.n_objects, "object set")
        return _derive_objs(ctx, X)
    if side == ATTRIBUTES:
        bits.check_width(X, ctx.n_attributes, "attribute set")
        return _derive_attrs(ctx, X)
    raise ValueError(f"unknown side {side!r}")


def classify(ctx, A, B):
    bits.check_width(A, ctx.n_objects, "extent")
    bits.check_width(B, ctx.n_attributes, "intent")
    a1 = _derive_objs(ctx, A)
    b1 = _derive_attrs(ctx, B)
    if a1 == B and b1 == A:
        return ConceptKind.CONCEPT
    if a1 == B or b1 == A:
        return ConceptKind.SEMICONCEPT
    if _derive_attrs(ctx, a1) == b1:
        return ConceptKind.PROTOCONCEPT
    return ConceptKind.NONE


def prime_table(rows, n_out):
    """Derivations of every subset, indexed by subset mask (one pass, low bit first)."""
    table = [bits.full(n_out)] * (1 << len(rows))
    for X in range(1, len(table)):
        low = X & -X
        table[X] = table[X ^ low] & rows[low.bit_length() - 1]
    return table


def enumerate_pairs(ctx, kind=ConceptKind.PROTOCONCEPT, budget=None):
    """Every pair of at least the given kind, as sorted ``(extent, intent)`` tuples."""
    kind = ConceptKind(kind)
    if kind is ConceptKind.NONE:
        raise ValueError("enumeration kind must be concept, semiconcept or protoconcept")
    require(1 << (ctx.n_objects + ctx.n_attributes), enumeration_budget(budget), "pair scan")
    ext_prime = prime_table(ctx.rows, ctx.n_attributes)
    int_prime = prime_table(ctx.cols, ctx.n_objects)
    by_prime = {}
    for B, Bp in enumerate(int_prime):
        by_prime.setdefault(Bp, []).append(B)
    out = []
    for A, Ap in enumerate(ext_prime):
        for B in by_prime.get(int_prime[Ap], ()):
            if kind is ConceptKind.PROTOCONCEPT:
                out.append((A, B))
            elif kind is ConceptKind.SEMICONCEPT:
                if Ap == B or int_prime[B] == A:
                    out.append((A, B))
            elif Ap == B and int_prime[B] == A:
                out.append((A, B))
    out.sort(key=lambda p: _pair_key(ctx, *p))
    return out


def enumerate_concepts(ctx, kind=ConceptKind.PROTOCONCEPT, budget=None):
    """Materialize the protoconcepts, semiconcepts or concepts of ``ctx`` in canonical order."""
    return [Protoconcept.trusted(ctx, A, B) for A, B in enumerate_pairs(ctx, kind, budget)]


# raw operations on (extent, intent) tuples


def meet_pair(ctx, x, y):
    A = x[0] & y[0]
    return (A, _derive_objs(ctx, A))


def join_pair(ctx, x, y):
    B = x[1] & y[1]
    return (_derive_attrs(ctx, B), B)


def neg_pair(ctx, x):
    A = ctx.all_objects & ~x[0]
    return (A, _derive_objs(ctx, A))


def lneg_pair(ctx, x):
    B = ctx.all_attributes & ~x[1]
    return (_derive_attrs(ctx, B), B)


def top_pair(ctx):
    return (ctx.all_objects, 0)


def bot_pair(ctx):
    return (0, ctx.all_attributes)


def vee_pair(ctx, x, y):
    return neg_pair(ctx, meet_pair(ctx, neg_pair(ctx, x), neg_pair(ctx, y)))


def wedge_pair(ctx, x, y):
    return lneg_pair(ctx, join_pair(ctx, lneg_pair(ctx, x), lneg_pair(ctx, y)))


_OPS = {
    "meet": (2, meet_pair),
    "join": (2, join_pair),
    "vee": (2, vee_pair),
    "wedge": (2, wedge_pair),
    "neg": (1, neg_pair),
    "lneg": (1, lneg_pair),
    "top": (0, top_pair),
    "bot": (0, bot_pair),
}


def _same_context(ctx, args):
    for a in args:
        if not isinstance(a, Protoconcept):
            raise TypeError(f"expected a Protoconcept, got {type(a).__name__}")
        if a.context != ctx:
            raise ContextMismatch("protoconcept belongs to a different context")


def proto_op(ctx, op, *args):
    """Apply one of meet, join, neg, lneg, vee, wedge, top, bot to protoconcepts of ``ctx``."""
    try:
        arity, fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    if len(args) != arity:
        raise TypeError(f"{op} takes {arity} arguments, got {len(args)}")
    _same_context(ctx, args)
    return Protoconcept.trusted(ctx, *fn(ctx, *(a.pair for a in args)))


def proto_leq(ctx, x, y):
    _same_context(ctx, (x, y))
    return bits.subset(x.extent, y.extent) and bits.subset(y.intent, x.intent)


def top(ctx):
    return Protoconcept.trusted(ctx, *top_pair(ctx))


def bot(ctx):
    return Protoconcept.trusted(ctx, *bot_pair(ctx))


def make(ctx, objects=(), attributes=()):
    """Protoconcept from object and attribute names (checked)."""
    return Protoconcept(ctx, ctx.object_set(objects), ctx.attribute_set(attributes))


@dataclass
class BooleanPart:
    """One of the two Boolean algebras inside the protoconcept algebra."""

    name: str
    elements: list
    witness: dict  # subset mask -> Protoconcept

    @property
    def size(self):
        return len(self.elements)


def boolean_parts(ctx, budget=None):
    """The meet-idempotent and join-idempotent parts with their verified witness maps.

    ``A -> (A, A')`` must be an isomorphism from the powerset of G onto the first;
    ``B -> (B', B)`` an anti-isomorphism from the powerset of M onto the second.
    """
    protos = enumerate_pairs(ctx, budget=budget)
    meet_part = [p for p in protos if meet_pair(ctx, p, p) == p]
    join_part = [p for p in protos if join_pair(ctx, p, p) == p]

    G, M = ctx.n_objects, ctx.n_attributes
    f = {A: (A, _derive_objs(ctx, A)) for A in range(1 << G)}
    g = {B: (_derive_attrs(ctx, B), B) for B in range(1 << M)}

    def fail(msg):
        raise VerificationError(msg)

    if sorted(set(f.values()), key=lambda p: _pair_key(ctx, *p)) != meet_part or len(f) != len(meet_part):
        fail("A -> (A, A') is not a bijection onto the meet-idempotent part")
    if sorted(set(g.values()), key=lambda p: _pair_key(ctx, *p)) != join_part or len(g) != len(join_part):
        fail("B -> (B', B) is not a bijection onto the join-idempotent part")
    fullG, fullM = ctx.all_objects, ctx.all_attributes
    if f[0] != bot_pair(ctx) or f[fullG] != neg_pair(ctx, bot_pair(ctx)):
        fail("powerset bounds not preserved by A -> (A, A')")
    if g[0] != top_pair(ctx) or g[fullM] != lneg_pair(ctx, top_pair(ctx)):
        fail("powerset bounds not reversed by B -> (B', B)")
    for A1 in range(1 << G):
        if f[fullG & ~A1] != neg_pair(ctx, f[A1]):
            fail(f"complement of {A1} not preserved")
        for A2 in range(1 << G):
            if f[A1 & A2] != meet_pair(ctx, f[A1], f[A2]) or f[A1 | A2] != vee_pair(ctx, f[A1], f[A2]):
                fail(f"A -> (A, A') fails on {A1}, {A2}")
    for B1 in range(1 << M):
        if g[fullM & ~B1] != lneg_pair(ctx, g[B1]):
            fail(f"complement of {B1} not preserved")
        for B2 in range(1 << M):
            if g[B1 & B2] != join_pair(ctx, g[B1], g[B2]) or g[B1 | B2] != wedge_pair(ctx, g[B1], g[B2]):
                fail(f"B -> (B', B) fails on {B1}, {B2}")

    def wrap(pairs, mapping):
        return (
            [Protoconcept.trusted(ctx, *p) for p in pairs],
            {k: Protoconcept.trusted(ctx, *v) for k, v in mapping.items()},
        )

    return (
        BooleanPart("meet", *wrap(meet_part, f)),
        BooleanPart("join", *wrap(join_part, g)),
    )
