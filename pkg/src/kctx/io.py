"""Reading and writing contexts, Kripke contexts, algebras, Baos and proofs.

Formats (documented in docs/formats.md):

* Burmeister ``.cxt`` plain text for contexts;
* JSON objects for contexts, Kripke contexts (context plus ``R``/``S`` index
  pairs), finite algebras (operation tables), Baos or frames, and proofs.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import bits
from .context import Context
from .dba.algebra import FiniteDba, FiniteDbao
from .dba.parts import FiniteBooleanAlgebra, powerset_bao
from .errors import DimensionError, FormatError
from .kripke import KripkeContext, kc_ds
from .logic.proofs import Derivation

RELATION_MODES = ("identity", "E1E2")


# -- Burmeister .cxt --------------------------------------------------------------


def parse_cxt(text):
    lines = [ln.strip() for ln in text.splitlines()]
    if not lines or lines[0] != "B":
        raise FormatError("a .cxt file starts with a line 'B'")
    body = [ln for ln in lines[1:] if ln]
    # an optional context name may precede the counts
    if body and not body[0].isdigit():
        body = body[1:]
    try:
        g, m = int(body[0]), int(body[1])
    except (IndexError, ValueError):
        raise FormatError("expected the object and attribute counts after 'B'") from None
    need = 2 + g + m + g
    if len(body) != need:
        raise FormatError(f"expected {g} object names, {m} attribute names and {g} rows; "
                          f"found {len(body) - 2} lines")
    objects = body[2:2 + g]
    attributes = body[2 + g:2 + g + m]
    rows = body[2 + g + m:]
    for r in rows:
        if len(r) != m or set(r) - set("Xx."):
            raise FormatError(f"row {r!r} must be {m} characters from 'X' and '.'")
    try:
        return Context.from_matrix(objects, attributes, rows)
    except DimensionError as e:
        raise FormatError(str(e)) from None


def format_cxt(ctx):
    out = ["B", "", str(ctx.n_objects), str(ctx.n_attributes), ""]
    out += list(ctx.objects) + list(ctx.attributes) + ctx.matrix()
    return "\n".join(out) + "\n"


# -- JSON contexts ------------------------------------------------------------------


def _need(doc, *keys):
    if not isinstance(doc, dict):
        raise FormatError("expected a JSON object")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise FormatError(f"missing field(s): {', '.join(missing)}")


def context_from_json(doc):
    _need(doc, "objects", "attributes", "rows")
    rows = doc["rows"]
    if not isinstance(rows, list):
        raise FormatError("'rows' must be a list")
    for r in rows:
        if isinstance(r, str) and set(r) - set("Xx."):
            raise FormatError(f"row {r!r} must use 'X' and '.'")
    try:
        return Context.from_matrix(doc["objects"], doc["attributes"], rows)
    except (DimensionError, TypeError) as e:
        raise FormatError(str(e)) from None


def context_to_json(ctx):
    return {"objects": list(ctx.objects), "attributes": list(ctx.attributes), "rows": ctx.matrix()}


def _pairs(doc, key, n):
    pairs = doc.get(key, [])
    if not isinstance(pairs, list):
        raise FormatError(f"'{key}' must be a list of index pairs")
    out = []
    for p in pairs:
        if not (isinstance(p, list) and len(p) == 2 and all(isinstance(i, int) for i in p)):
            raise FormatError(f"'{key}' entry {p!r} is not an index pair")
        if not all(0 <= i < n for i in p):
            raise FormatError(f"'{key}' entry {p!r} outside 0..{n - 1}")
        out.append(tuple(p))
    return out


def kripke_from_json(doc, relations=None, default="identity"):
    """Kripke context from a document with ``R``/``S``, or from a plain context plus a mode."""
    ctx = context_from_json(doc)
    if "R" in doc or "S" in doc:
        if relations is not None:
            raise FormatError("file already defines R and S; --relations does not apply")
        return KripkeContext.from_pairs(ctx, _pairs(doc, "R", ctx.n_objects), _pairs(doc, "S", ctx.n_attributes))
    return with_relations(ctx, relations or default)


def with_relations(ctx, mode):
    if mode == "identity":
        return KripkeContext.identity(ctx)
    if mode == "E1E2":
        return kc_ds(ctx)
    raise FormatError(f"relation mode must be one of {', '.join(RELATION_MODES)}, not {mode!r}")


def kripke_to_json(kc):
    out = context_to_json(kc.context)
    out["R"] = [list(p) for p in kc.R_pairs()]
    out["S"] = [list(p) for p in kc.S_pairs()]
    return out


# -- algebras ---------------------------------------------------------------------


def algebra_from_json(doc):
    _need(doc, "size", "top", "bot", "meet", "join", "neg", "lneg")
    n = doc["size"]
    if not isinstance(n, int) or n < 1:
        raise FormatError("'size' must be a positive integer")
    if len(doc["neg"]) != n:
        raise FormatError(f"neg table has {len(doc['neg'])} entries, size is {n}")
    top, bot = _constant(doc, "top", n), _constant(doc, "bot", n)
    labels = doc.get("labels")
    tables = [doc["meet"], doc["join"], doc["neg"], doc["lneg"]]
    has_i, has_c = "I" in doc, "C" in doc
    if has_i != has_c:
        raise FormatError("give both I and C, or neither")
    try:
        if has_i:
            return FiniteDbao(*tables, top, bot, labels, opI=doc["I"], opC=doc["C"])
        return FiniteDba(*tables, top, bot, labels)
    except (TypeError, ValueError) as e:
        if isinstance(e, FormatError):
            raise
        raise FormatError(str(e)) from None


def _constant(doc, key, n):
    """A constant given as an index or as one of the labels."""
    v = doc[key]
    if isinstance(v, str):
        labels = doc.get("labels") or []
        if v not in labels:
            raise FormatError(f"'{key}' names unknown element {v!r}")
        return labels.index(v)
    if not isinstance(v, int) or not 0 <= v < n:
        raise FormatError(f"'{key}' must be an index in 0..{n - 1}")
    return v


def algebra_to_json(alg):
    out = {
        "size": alg.n, "labels": list(alg.labels), "top": alg.top, "bot": alg.bot,
        "meet": alg.meet.tolist(), "join": alg.join.tolist(),
        "neg": alg.neg.tolist(), "lneg": alg.lneg.tolist(),
    }
    if alg.has_operators:
        out["I"] = alg.opI.tolist()
        out["C"] = alg.opC.tolist()
    return out


def bao_from_json(doc):
    """A frame ``{"size", "R"}`` (its complex algebra) or an explicit Bao.

    Explicit Baos give ``meet``, ``join``, ``comp``, ``zero``, ``one`` and ``op``
    over local indices; ``elements`` optionally maps them into a dBa carrier.
    """
    _need(doc, "size")
    n = doc["size"]
    if not isinstance(n, int) or n < 1:
        raise FormatError("'size' must be a positive integer")
    if "R" in doc and "meet" not in doc:
        if n > 20:
            raise FormatError("frame too large")
        return powerset_bao(n, _pairs(doc, "R", n))
    _need(doc, "meet", "join", "comp", "zero", "one", "op")
    elements = np.asarray(doc.get("elements", list(range(n))), dtype=np.intp)
    arrays = []
    for key, shape in (("meet", (n, n)), ("join", (n, n)), ("comp", (n,)), ("op", (n,))):
        arr = np.asarray(doc[key])
        if arr.shape != shape or (arr.size and (arr.min() < 0 or arr.max() >= n)):
            raise FormatError(f"'{key}' must be a table of shape {shape} over 0..{n - 1}")
        arrays.append(arr.astype(np.intp))
    if len(elements) != n:
        raise FormatError(f"'elements' has {len(elements)} entries, size is {n}")
    meet, join, comp, op = arrays
    return FiniteBooleanAlgebra(elements, meet, join, comp, _constant(doc, "zero", n),
                                _constant(doc, "one", n), op, doc.get("labels"))


def bao_to_json(ba):
    return {
        "size": ba.n, "elements": np.asarray(ba.elements).tolist(),
        "labels": list(ba.labels) if ba.labels else None,
        "zero": int(ba.zero), "one": int(ba.one),
        "meet": np.asarray(ba.meet).tolist(), "join": np.asarray(ba.join).tolist(),
        "comp": np.asarray(ba.comp).tolist(),
        "op": None if ba.op is None else np.asarray(ba.op).tolist(),
    }


def proof_from_json(doc):
    return Derivation.from_dict(doc)


# -- files ------------------------------------------------------------------------


def read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: invalid JSON ({e})") from None


def _is_cxt(path, text):
    return str(path).endswith(".cxt") or text.lstrip().startswith("B")


def read_context(path):
    text = Path(path).read_text()
    if _is_cxt(path, text):
        return parse_cxt(text)
    try:
        return context_from_json(json.loads(text))
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: neither a .cxt file nor JSON ({e})") from None


def read_kripke(path, relations=None, default="identity"):
    """``relations`` overrides ``default`` for plain contexts; files with R/S keep their own."""
    text = Path(path).read_text()
    if _is_cxt(path, text):
        return with_relations(parse_cxt(text), relations or default)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: invalid JSON ({e})") from None
    return kripke_from_json(doc, relations, default)


def read_algebra(path):
    return algebra_from_json(read_json(path))


def read_bao(path):
    return bao_from_json(read_json(path))


def read_proof(path):
    return proof_from_json(read_json(path))


def write_json(path, doc):
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def parse_set(ctx, side, text):
    """Names separated by commas (``{}`` and blanks ignored) to a mask of the chosen side."""
    names = [s.strip() for s in text.strip().strip("{}").split(",") if s.strip()]
    pool = ctx.objects if side == "objects" else ctx.attributes
    unknown = [s for s in names if s not in pool]
    if unknown:
        raise FormatError(f"unknown {side[:-1]} name(s): {', '.join(unknown)}")
    return bits.from_indices(pool.index(s) for s in names)
