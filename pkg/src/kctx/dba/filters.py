"""Filters and ideals of a finite dBa, primary ones, and the standard context."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import bits
from ..budget import filter_scan_limit
from ..context import Context, derive
from ..errors import VerificationError


@dataclass(frozen=True)
class FilterInfo:
    mask: int
    proper: bool
    primary: bool
    prime_class: bool  # F ∩ D_⊓ prime in D_⊓ (resp. I ∩ D_⊔ prime in D_⊔)

    def to_dict(self, n):
        return {"elements": bits.members(self.mask), "proper": self.proper,
                "primary": self.primary, "prime_class": self.prime_class}


@dataclass
class FilterReport:
    n: int
    filters: list
    ideals: list
    method: str

    @property
    def primary_filters(self):
        return [f.mask for f in self.filters if f.primary]

    @property
    def primary_ideals(self):
        return [f.mask for f in self.ideals if f.primary]

    @property
    def classes_agree(self):
        return all(f.primary == f.prime_class for f in self.filters + self.ideals)

    def to_dict(self):
        return {"method": self.method, "classes_agree": self.classes_agree,
                "filters": [f.to_dict(self.n) for f in self.filters],
                "ideals": [f.to_dict(self.n) for f in self.ideals]}


def _masks_of(indices):
    return int(sum(1 << int(i) for i in indices))


def _scan(alg, up_masks, closed_op):
    """Nonempty subsets closed under ``closed_op`` and under ``up_masks`` (full subset scan)."""
    n = alg.n
    S = np.arange(1, 1 << n, dtype=np.int64)
    ok = np.ones(len(S), dtype=bool)
    member = [(S >> i) & 1 == 1 for i in range(n)]
    for x in range(n):
        ok &= ~member[x] | ((S & up_masks[x]) == up_masks[x])
    for x in range(n):
        for y in range(x, n):
            ok &= ~(member[x] & member[y]) | member[int(closed_op[x, y])]
    return [int(s) for s in S[ok]]


def _principal(alg, up_masks, closed_op):
    """Principal up-sets that are closed under ``closed_op`` (exact for finite algebras)."""
    found = set()
    for a in range(alg.n):
        U = up_masks[a]
        mem = bits.members(U)
        if all(U >> int(closed_op[x, y]) & 1 for x in mem for y in mem):
            if all(U & up_masks[x] == up_masks[x] for x in mem):
                found.add(U)
    return sorted(found)


def _prime_in(mask, part, op, n_part_full, within):
    """Is mask ∩ part a prime filter (ideal) of the Boolean part, with ``op`` the join (meet)?"""
    inside = mask & within
    if inside == n_part_full or inside == 0:
        return False
    for x in part:
        for y in part:
            if mask >> int(op[x, y]) & 1 and not (mask >> x & 1 or mask >> y & 1):
                return False
    return True


def filters_ideals(alg, limit=None):
    n = alg.n
    full = bits.full(n)
    up = [_masks_of(np.flatnonzero(alg.leq[x])) for x in range(n)]
    down = [_masks_of(np.flatnonzero(alg.leq[:, x])) for x in range(n)]
    if n <= filter_scan_limit(limit):
        method = "scan"
        fmasks = _scan(alg, up, alg.meet)
        imasks = _scan(alg, down, alg.join)
    else:
        method = "principal"
        fmasks = _principal(alg, up, alg.meet)
        imasks = _principal(alg, down, alg.join)

    d_meet = [int(i) for i in alg.d_meet]
    d_join = [int(i) for i in alg.d_join]
    dm, dj = _masks_of(d_meet), _masks_of(d_join)
    idx = np.arange(n)
    vee = alg.vee(idx[:, None], idx[None, :])
    wedge = alg.wedge(idx[:, None], idx[None, :])

    def info(mask, negation, part, op, part_mask):
        proper = mask != full
        primary = proper and all(mask >> x & 1 or mask >> int(negation[x]) & 1 for x in range(n))
        return FilterInfo(mask, proper, primary, _prime_in(mask, part, op, part_mask, part_mask))

    key = lambda m: bits.bit_key(m, n)
    filters = [info(m, alg.neg, d_meet, vee, dm) for m in sorted(fmasks, key=key)]
    ideals = [info(m, alg.lneg, d_join, wedge, dj) for m in sorted(imasks, key=key)]
    return FilterReport(n, filters, ideals, method)


def generated_filter(alg, F, x):
    """{a : x ⊓ w ⊑ a for some w ∈ F}."""
    out = 0
    for w in bits.members(F):
        out |= _masks_of(np.flatnonzero(alg.leq[alg.meet[x, w]]))
    return out


def filter_closure(alg, S):
    """Smallest filter containing the set ``S``, by fixpoint iteration."""
    cur = S
    while True:
        nxt = cur
        mem = bits.members(cur)
        for a in mem:
            nxt |= _masks_of(np.flatnonzero(alg.leq[a]))
            for b in mem:
                nxt |= 1 << int(alg.meet[a, b])
        if nxt == cur:
            return cur
        cur = nxt


@dataclass
class StandardContext:
    context: Context
    filters: list  # object i <-> primary filter mask
    ideals: list  # attribute j <-> primary ideal mask
    report: FilterReport

    def F_of(self, x):
        """Objects (primary filters) containing x, as a mask."""
        return bits.from_indices(i for i, F in enumerate(self.filters) if F >> x & 1)

    def I_of(self, x):
        return bits.from_indices(j for j, I in enumerate(self.ideals) if I >> x & 1)


def standard_context(alg, limit=None):
    """Primary filters × primary ideals, F incident to I iff F ∩ I ≠ ∅, plus its self-check."""
    report = filters_ideals(alg, limit)
    if not report.classes_agree:
        raise VerificationError("primary filters/ideals differ from the prime-class ones")
    Fs, Is = report.primary_filters, report.primary_ideals
    rows = tuple(bits.from_indices(j for j, I in enumerate(Is) if F & I) for F in Fs)
    ctx = Context(tuple(f"F{i}" for i in range(len(Fs))), tuple(f"I{j}" for j in range(len(Is))), rows)
    std = StandardContext(ctx, Fs, Is, report)
    for x in range(alg.n):
        mm = int(alg.meet[x, x])
        jj = int(alg.join[x, x])
        if derive(ctx, "objects", std.F_of(x)) != std.I_of(int(alg.join[mm, mm])):
            raise VerificationError(f"F_x' != I_(x⊓x)⊔(x⊓x) at x={x}")
        if derive(ctx, "attributes", std.I_of(x)) != std.F_of(int(alg.meet[jj, jj])):
            raise VerificationError(f"I_x' != F_(x⊔x)⊓(x⊔x) at x={x}")
    return std
