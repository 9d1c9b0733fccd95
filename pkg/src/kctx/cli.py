"""Command-line interface: ``kctx <group> <command> [options]``.

Exit codes: 0 success, 1 a check failed (the report shows the counterexample),
2 usage, file or format error, 3 an enumeration budget was exceeded.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import io
from .context import (
    ATTRIBUTES,
    OBJECTS,
    ConceptKind,
    Protoconcept,
    classify,
    derive,
    enumerate_pairs,
)
from .dba.algebra import LEVELS, check_axioms
from .dba.filters import filters_ideals, standard_context
from .dba.parts import bao_bridge, structure_parts
from .dba.represent import representation
from .errors import BudgetExceeded, FormatError, KctxError, ParseError, VerificationError
from .fixtures import FIXTURES, run_fixture
from .kripke import (
    KripkeContext,
    approx_via_terms,
    complex_algebra,
    frame_bridge,
    kc_property_report,
    modal_laws,
)
from .logic.axioms import SYSTEMS
from .logic.proofs import check_derivation
from .logic.semantics import SemanticsError, as_algebra, countermodel_search, counterexample, evaluate
from .logic.syntax import Sequent, depth, is_modal, parse, parse_formula, parse_sequent, to_text, variables
from .rough import ApproximationSpace, concept_approx, induced_relations, pair_approx, relation_report

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class Result:
    """Report data plus the verdict; text output is rendered from the same data as JSON."""

    def __init__(self, data, ok=True):
        self.data = data
        self.ok = ok


# -- text rendering -----------------------------------------------------------------


def _scalar(v):
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def render_text(data, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(data, dict):
        for k, v in data.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(data, list):
        for item in data:
            if isinstance(item, (dict, list)) and not _flat(item):
                lines.append(f"{pad}-")
                lines.extend(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(item)}")
    else:
        lines.append(pad + _scalar(data))
    return lines


def _flat(v):
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _inline(v):
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    return _scalar(v)


# -- argument helpers ---------------------------------------------------------------


def _kripke(args, default="identity"):
    return io.read_kripke(args.file, args.relations, default)


def _set(ctx, side, text):
    return io.parse_set(ctx, side, text or "")


def _fmt_set(ctx, side, mask):
    names = ctx.object_names(mask) if side == OBJECTS else ctx.attribute_names(mask)
    return "{" + ",".join(names) + "}"


def _fmt_pair(ctx, p):
    return ctx.format_pair(*(p.pair if isinstance(p, Protoconcept) else p))


def _save(path, doc):
    if path:
        io.write_json(path, doc)


# -- context ------------------------------------------------------------------------


def cmd_context_derive(args):
    ctx = io.read_context(args.file)
    X = _set(ctx, args.side, args.set)
    other = ATTRIBUTES if args.side == OBJECTS else OBJECTS
    Y = derive(ctx, args.side, X)
    return Result({"side": args.side, "input": _fmt_set(ctx, args.side, X),
                   "derived": _fmt_set(ctx, other, Y),
                   "closure": _fmt_set(ctx, args.side, derive(ctx, other, Y))})


def cmd_context_classify(args):
    ctx = io.read_context(args.file)
    A, B = _set(ctx, OBJECTS, args.extent), _set(ctx, ATTRIBUTES, args.intent)
    kind = classify(ctx, A, B)
    return Result({"pair": ctx.format_pair(A, B), "kind": kind.value,
                   "extent_prime": _fmt_set(ctx, ATTRIBUTES, derive(ctx, OBJECTS, A)),
                   "intent_prime": _fmt_set(ctx, OBJECTS, derive(ctx, ATTRIBUTES, B))})


def cmd_context_enumerate(args):
    ctx = io.read_context(args.file)
    pairs = enumerate_pairs(ctx, ConceptKind(args.kind), args.enumeration_budget)
    return Result({"kind": args.kind, "count": len(pairs), "pairs": [ctx.format_pair(*p) for p in pairs]})


# -- approx -------------------------------------------------------------------------


def cmd_approx_space(args):
    kc = _kripke(args)
    ctx = kc.context
    X = _set(ctx, args.side, args.set)
    n = ctx.n_objects if args.side == OBJECTS else ctx.n_attributes
    rows = kc.R if args.side == OBJECTS else kc.S
    space = ApproximationSpace(n, rows)
    return Result({"side": args.side, "input": _fmt_set(ctx, args.side, X),
                   "lower": _fmt_set(ctx, args.side, space.lower(X)),
                   "upper": _fmt_set(ctx, args.side, space.upper(X)),
                   "relation": relation_report(n, rows).to_dict()})


def cmd_approx_induced(args):
    ctx = io.read_context(args.file)
    space, report = induced_relations(ctx, args.kind)
    side = OBJECTS if args.kind in ("E1", "J1") else ATTRIBUTES
    names = ctx.objects if side == OBJECTS else ctx.attributes
    return Result({"kind": args.kind,
                   "pairs": [f"{names[a]}->{names[b]}" for a, b in space.pairs()],
                   "classes": [_fmt_set(ctx, side, c) for c in space.classes()] if report.equivalence else None,
                   "relation": report.to_dict()})


def _approx_dict(ctx, ca):
    if ca.feasible:
        return {"feasible": True, "exact": _fmt_pair(ctx, ca.exact), "lower": None, "upper": None}
    return {"feasible": False, "exact": None, "lower": _fmt_pair(ctx, ca.lower), "upper": _fmt_pair(ctx, ca.upper)}


def cmd_approx_concept(args):
    kc = _kripke(args, "E1E2")
    ctx = kc.context
    X = _set(ctx, args.side, args.set)
    out = {"side": args.side, "input": _fmt_set(ctx, args.side, X)}
    out.update(_approx_dict(ctx, concept_approx(kc, args.side, X)))
    return Result(out)


def cmd_approx_pair(args):
    kc = _kripke(args, "E1E2")
    ctx = kc.context
    A, B = _set(ctx, OBJECTS, args.extent), _set(ctx, ATTRIBUTES, args.intent)
    pa = pair_approx(kc, A, B)
    return Result({"pair": ctx.format_pair(A, B), "concept": pa.is_exact,
                   "exact": _fmt_pair(ctx, pa.exact) if pa.is_exact else None,
                   "lower": None if pa.is_exact else _fmt_pair(ctx, pa.lower),
                   "upper": None if pa.is_exact else _fmt_pair(ctx, pa.upper)})


# -- kripke -------------------------------------------------------------------------


def cmd_kripke_complex(args):
    kc = _kripke(args)
    alg = complex_algebra(kc, args.which, args.enumeration_budget)
    report = check_axioms(alg, args.level)
    laws = modal_laws(kc, budget=args.enumeration_budget) if args.which == "full" else {}
    failed_laws = {k: list(v) for k, v in laws.items() if v is not None}
    _save(args.save, io.algebra_to_json(alg))
    out = {"which": args.which, "size": alg.n, "elements": list(alg.labels),
           "axioms": report.to_dict(), "operator_identities_failed": failed_laws}
    return Result(out, report.passed and not failed_laws)


def cmd_kripke_report(args):
    kc = _kripke(args)
    return Result(kc_property_report(kc).to_dict())


def cmd_kripke_frame_bridge(args):
    if args.file:
        doc = io.read_json(args.file)
        if not isinstance(doc, dict) or "size" not in doc:
            raise FormatError("frame file needs 'size' and 'R'")
        n = doc["size"]
        R = io._pairs(doc, "R", n)
    elif args.size is not None:
        n = args.size
        R = []
        for a, b in args.edge or []:
            if not (1 <= a <= n and 1 <= b <= n):
                raise FormatError(f"edge ({a}, {b}) outside 1..{n}")
            R.append((a - 1, b - 1))
    else:
        raise FormatError("give a frame file or --size")
    rep = frame_bridge(n, R, args.enumeration_budget)
    out = {"size": n, "R": [[a + 1, b + 1] for a, b in R]}
    out.update(rep.to_dict())
    return Result(out, rep.passed)


def cmd_kripke_terms(args):
    kc = _kripke(args, "E1E2")
    ctx = kc.context
    A, B = _set(ctx, OBJECTS, args.extent), _set(ctx, ATTRIBUTES, args.intent)
    x = Protoconcept.trusted(ctx, A, derive(ctx, OBJECTS, A))
    y = Protoconcept.trusted(ctx, derive(ctx, ATTRIBUTES, B), B)
    t = approx_via_terms(kc, x, y)
    return Result({"x": _fmt_pair(ctx, x), "y": _fmt_pair(ctx, y),
                   "fR(x) | fR(x)": _fmt_pair(ctx, t.lower_A),
                   "fR_dual(x) | fR_dual(x)": _fmt_pair(ctx, t.upper_A),
                   "fS_dual(y) & fS_dual(y)": _fmt_pair(ctx, t.lower_B),
                   "fS(y) & fS(y)": _fmt_pair(ctx, t.upper_B),
                   "agrees": t.agrees}, t.agrees)


# -- dba ----------------------------------------------------------------------------


def cmd_dba_check(args):
    alg = io.read_algebra(args.file)
    if args.level in ("dbao", "topological") and not alg.has_operators:
        raise FormatError(f"level {args.level} needs I and C tables")
    report = check_axioms(alg, args.level)
    out = report.to_dict()
    out["failed"] = [{"law": r.name, "counterexample": list(r.counterexample),
                      "labels": [alg.labels[i] for i in r.counterexample]} for r in report.failures()]
    return Result(out, report.passed)


def cmd_dba_parts(args):
    alg = io.read_algebra(args.file)
    parts = structure_parts(alg)
    out = parts.to_dict()
    out["meet_part"] = [alg.labels[i] for i in parts.d_meet]
    out["join_part"] = [alg.labels[i] for i in parts.d_join]
    return Result(out, parts.verified)


def cmd_dba_filters(args):
    alg = io.read_algebra(args.file)
    rep = filters_ideals(alg, args.filter_scan)
    lab = lambda m: [alg.labels[i] for i in range(alg.n) if m >> i & 1]
    return Result({"method": rep.method, "filters": len(rep.filters), "ideals": len(rep.ideals),
                   "primary_filters": [lab(m) for m in rep.primary_filters],
                   "primary_ideals": [lab(m) for m in rep.primary_ideals],
                   "classes_agree": rep.classes_agree}, rep.classes_agree)


def cmd_dba_standard_context(args):
    alg = io.read_algebra(args.file)
    std = standard_context(alg, args.filter_scan)
    doc = io.context_to_json(std.context)
    _save(args.save, doc)
    lab = lambda m: [alg.labels[i] for i in range(alg.n) if m >> i & 1]
    out = dict(doc)
    out["filters"] = [lab(m) for m in std.filters]
    out["ideals"] = [lab(m) for m in std.ideals]
    return Result(out)


def cmd_dba_represent(args):
    alg = io.read_algebra(args.file)
    if not alg.has_operators:
        raise FormatError("representation needs an algebra with I and C tables")
    if not check_axioms(alg, "dbao").passed:
        return Result({"error": "input does not pass the dbao level",
                       "axioms": check_axioms(alg, "dbao").to_dict()}, False)
    rep = representation(alg, args.filter_scan, args.enumeration_budget)
    _save(args.save_kc, io.kripke_to_json(rep.canonical.kc))
    out = rep.to_dict()
    out["kripke_context"] = io.kripke_to_json(rep.canonical.kc)
    return Result(out, rep.passed)


def cmd_dba_bridge(args):
    if args.meet_bao or args.join_bao:
        source = io.read_algebra(args.file)
        alg = bao_bridge(source, io.read_bao(args.meet_bao) if args.meet_bao else None,
                         io.read_bao(args.join_bao) if args.join_bao else None)
    else:
        alg = bao_bridge(io.read_bao(args.file))
    doc = io.algebra_to_json(alg)
    _save(args.save, doc)
    report = check_axioms(alg, "dbao")
    return Result({"algebra": doc, "dbao": report.passed,
                   "failed": [r.name for r in report.failures()]}, report.passed)


# -- logic --------------------------------------------------------------------------


def cmd_logic_parse(args):
    obj = parse(args.text)
    if isinstance(obj, Sequent):
        return Result({"kind": "sequent", "text": str(obj), "modal": is_modal(obj),
                       "variables": variables(obj),
                       "depth": [depth(obj.left), depth(obj.right)]})
    return Result({"kind": "formula", "text": to_text(obj), "modal": is_modal(obj),
                   "variables": variables(obj), "depth": depth(obj)})


def cmd_logic_check_proof(args):
    d = io.read_proof(args.file)
    rep = check_derivation(d, args.system, args.allow_hypotheses)
    out = rep.to_dict()
    out["conclusion"] = str(d.seq)
    return Result(out, rep.ok)


_PAIR = re.compile(r"^\s*\(\s*\{([^}]*)\}\s*,\s*\{([^}]*)\}\s*\)\s*$")


def _model(args):
    if args.algebra:
        return io.read_algebra(args.algebra)
    if not args.model:
        raise FormatError("give --model (context or Kripke file) or --algebra")
    return io.read_kripke(args.model, args.relations)


def _valuation(model, assignments):
    alg, ctx = as_algebra(model)
    v = {}
    for item in assignments or []:
        name, sep, value = item.partition("=")
        if not sep or not re.fullmatch(r"[a-z][a-z0-9_]*", name.strip()):
            raise FormatError(f"assignment {item!r} must look like p=VALUE")
        name = name.strip()
        if ctx is None:
            value = value.strip()
            if value in alg.labels:
                v[name] = alg.labels.index(value)
            elif value.isdigit() and int(value) < alg.n:
                v[name] = int(value)
            else:
                raise FormatError(f"{value!r} is not an element of the algebra")
            continue
        m = _PAIR.match(value)
        if not m:
            raise FormatError(f"value {value!r} must look like ({{objects}},{{attributes}})")
        A, B = _set(ctx, OBJECTS, m.group(1)), _set(ctx, ATTRIBUTES, m.group(2))
        v[name] = Protoconcept(ctx, A, B)
    return v


def cmd_logic_eval(args):
    model = _model(args)
    f = parse_formula(args.formula)
    v = _valuation(model, args.assign)
    missing = [p for p in variables(f) if p not in v]
    if missing:
        raise FormatError(f"no value for variable(s): {', '.join(missing)}")
    val = evaluate(v, model, f)
    alg, ctx = as_algebra(model)
    shown = _fmt_pair(ctx, val) if ctx is not None else alg.labels[val]
    return Result({"formula": to_text(f), "value": shown})


def cmd_logic_validate(args):
    model = _model(args)
    seq = parse_sequent(args.sequent)
    alg, ctx = as_algebra(model)
    cex = counterexample(alg, seq, args.valuation_budget)
    out = {"sequent": str(seq), "true": cex is None, "counterexample": None}
    if cex is not None:
        render = (lambda i: _fmt_pair(ctx, alg.elements[i])) if ctx is not None else (lambda i: alg.labels[i])
        out["counterexample"] = {k: render(i) for k, i in cex.items()}
    return Result(out, cex is None)


def cmd_logic_countermodel(args):
    seq = parse_sequent(args.sequent)
    w = countermodel_search(seq, args.system, args.max_g, args.max_m, args.relation_mode,
                            args.valuation_budget)
    out = {"sequent": str(seq), "system": args.system, "max_g": args.max_g, "max_m": args.max_m,
           "relation_mode": args.relation_mode, "found": w is not None,
           "witness": w.to_dict() if w else None}
    return Result(out, w is not None)


# -- fixtures -----------------------------------------------------------------------


def cmd_fixtures_run(args):
    names = args.names or list(FIXTURES)
    results = [run_fixture(n) for n in names]
    return Result({"fixtures": [r.to_dict() for r in results],
                   "passed": all(r.passed for r in results)}, all(r.passed for r in results))


def cmd_fixtures_list(args):
    return Result({"fixtures": [{"name": k, "description": d} for k, (d, _) in FIXTURES.items()]})


# -- parser -------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("text", "json"), default="text")
    common.add_argument("--enumeration-budget", type=int, default=None, metavar="N",
                        help="max pairs scanned when enumerating protoconcepts")
    common.add_argument("--filter-scan", type=int, default=None, metavar="N",
                        help="largest carrier for the full filter subset scan")
    common.add_argument("--valuation-budget", type=int, default=None, metavar="N",
                        help="max valuations tried per model")

    p = argparse.ArgumentParser(prog="kctx", description="Kripke-context and double Boolean algebra workbench")
    groups = p.add_subparsers(dest="group", required=True, metavar="GROUP")

    def group(name, help):
        g = groups.add_parser(name, help=help)
        return g.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def command(sub, name, fn, help):
        c = sub.add_parser(name, help=help, parents=[common])
        c.set_defaults(fn=fn)
        return c

    def kripke_args(c):
        c.add_argument("file", help="context (.cxt or JSON) or Kripke-context JSON")
        c.add_argument("--relations", choices=io.RELATION_MODES, default=None,
                       help="relations for a plain context file")

    sides = (OBJECTS, ATTRIBUTES)

    g = group("context", "derivation, classification and enumeration")
    c = command(g, "derive", cmd_context_derive, "apply the derivation operator")
    c.add_argument("file")
    c.add_argument("--side", choices=sides, default=OBJECTS)
    c.add_argument("--set", default="", help="comma-separated names")
    c = command(g, "classify", cmd_context_classify, "concept, semiconcept, protoconcept or none")
    c.add_argument("file")
    c.add_argument("--extent", default="")
    c.add_argument("--intent", default="")
    c = command(g, "enumerate", cmd_context_enumerate, "list all pairs of one kind")
    c.add_argument("file")
    c.add_argument("--kind", choices=[k.value for k in ConceptKind if k is not ConceptKind.NONE],
                   default="protoconcept")

    g = group("approx", "rough-set approximations")
    c = command(g, "space", cmd_approx_space, "lower and upper approximation in (G,R) or (M,S)")
    kripke_args(c)
    c.add_argument("--side", choices=sides, default=OBJECTS)
    c.add_argument("--set", default="")
    c = command(g, "induced", cmd_approx_induced, "relation induced by the incidence")
    c.add_argument("file")
    c.add_argument("--kind", choices=("E1", "E2", "J1", "J2"), default="E1")
    c = command(g, "concept", cmd_approx_concept, "concept approximations of a set")
    kripke_args(c)
    c.add_argument("--side", choices=sides, default=OBJECTS)
    c.add_argument("--set", default="")
    c = command(g, "pair", cmd_approx_pair, "lower and upper approximation of a pair")
    kripke_args(c)
    c.add_argument("--extent", default="")
    c.add_argument("--intent", default="")

    g = group("kripke", "Kripke contexts and complex algebras")
    c = command(g, "complex", cmd_kripke_complex, "materialize and check the complex algebra")
    kripke_args(c)
    c.add_argument("--which", choices=("full", "semiconcept"), default="full")
    c.add_argument("--level", choices=LEVELS, default="dbao")
    c.add_argument("--save", metavar="PATH", help="write the algebra as JSON")
    c = command(g, "report", cmd_kripke_report, "reflexivity, symmetry, transitivity, back and forth")
    kripke_args(c)
    c = command(g, "frame-bridge", cmd_kripke_frame_bridge, "check a frame against its Kripke context")
    c.add_argument("file", nargs="?", help="frame JSON {size, R} with 0-based pairs")
    c.add_argument("--size", type=int)
    c.add_argument("--edge", type=int, nargs=2, action="append", metavar=("FROM", "TO"),
                   help="1-based edge of R (repeatable)")
    c = command(g, "terms", cmd_kripke_terms, "approximations as modal terms")
    kripke_args(c)
    c.add_argument("--extent", default="")
    c.add_argument("--intent", default="")

    g = group("dba", "finite double Boolean algebras")
    c = command(g, "check", cmd_dba_check, "check the axioms of a level")
    c.add_argument("file")
    c.add_argument("--level", choices=LEVELS, default="dba")
    c = command(g, "parts", cmd_dba_parts, "idempotent parts and their Boolean algebras")
    c.add_argument("file")
    c = command(g, "filters", cmd_dba_filters, "filters, ideals and the primary ones")
    c.add_argument("file")
    c = command(g, "standard-context", cmd_dba_standard_context, "context of primary filters and ideals")
    c.add_argument("file")
    c.add_argument("--save", metavar="PATH")
    c = command(g, "represent", cmd_dba_represent, "canonical Kripke context and representation map")
    c.add_argument("file")
    c.add_argument("--save-kc", metavar="PATH", help="write the canonical Kripke context")
    c = command(g, "bridge", cmd_dba_bridge, "dBao from a Bao (or frame), or from Baos on both parts")
    c.add_argument("file", help="Bao/frame JSON, or an algebra with --meet-bao/--join-bao")
    c.add_argument("--meet-bao")
    c.add_argument("--join-bao")
    c.add_argument("--save", metavar="PATH")

    g = group("logic", "formulas, proofs and models")
    c = command(g, "parse", cmd_logic_parse, "parse and print a formula or sequent")
    c.add_argument("text")
    c = command(g, "check-proof", cmd_logic_check_proof, "check a derivation file")
    c.add_argument("file")
    c.add_argument("--system", choices=list(SYSTEMS), default="CDBL")
    c.add_argument("--allow-hypotheses", action="store_true")
    for name, fn, what, help in (("eval", cmd_logic_eval, "formula", "value of a formula"),
                                 ("validate", cmd_logic_validate, "sequent", "truth of a sequent in a model")):
        c = command(g, name, fn, help)
        c.add_argument(what)
        c.add_argument("--model", help="context or Kripke-context file")
        c.add_argument("--relations", choices=io.RELATION_MODES, default=None)
        c.add_argument("--algebra", help="finite algebra JSON instead of a context")
        if name == "eval":
            c.add_argument("--assign", action="append", metavar="p=VALUE",
                           help="p=({objects},{attributes}) or p=element label (repeatable)")
    c = command(g, "countermodel", cmd_logic_countermodel, "search small Kripke contexts for a countermodel")
    c.add_argument("sequent")
    c.add_argument("--system", choices=list(SYSTEMS), default="CDBL")
    c.add_argument("--max-g", type=int, default=2)
    c.add_argument("--max-m", type=int, default=2)
    c.add_argument("--relation-mode", choices=("all", "rt"), default="all")

    g = group("fixtures", "built-in worked examples")
    c = command(g, "run", cmd_fixtures_run, "run fixtures (all by default)")
    c.add_argument("names", nargs="*", metavar="NAME", help=", ".join(FIXTURES))
    command(g, "list", cmd_fixtures_list, "list fixtures")
    return p


def _emit(result, fmt, out):
    if fmt == "json":
        out.write(json.dumps(result.data, indent=2, sort_keys=False) + "\n")
    else:
        out.write("\n".join(render_text(result.data)) + "\n")


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    try:
        result = args.fn(args)
    except BudgetExceeded as e:
        print(f"kctx: budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (FormatError, ParseError, SemanticsError, OSError, KeyError) as e:
        print(f"kctx: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationError as e:
        print(f"kctx: check failed: {e}", file=sys.stderr)
        return EXIT_FAILED
    except KctxError as e:
        print(f"kctx: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    _emit(result, args.output, out)
    return EXIT_OK if result.ok else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
