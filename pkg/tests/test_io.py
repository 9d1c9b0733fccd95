import json
from pathlib import Path

import numpy as np
import pytest

from kctx import io
from kctx.dba.algebra import boolean_dba, check_axioms
from kctx.errors import FormatError
from kctx.fixtures import broken_algebra, table1, table2, table3_kc
from kctx.kripke import complex_algebra
from kctx.logic.derivations import derivations

DATA = Path(__file__).parent / "data"


def test_cxt_round_trip():
    ctx = table1()
    assert io.parse_cxt(io.format_cxt(ctx)) == ctx
    assert io.read_context(DATA / "table1.cxt") == ctx


def test_cxt_optional_name_and_lowercase_x():
    text = "B\nanimals\n2\n1\n\ng\nh\nm\nx\n.\n"
    ctx = io.parse_cxt(text)
    assert ctx.matrix() == ["X", "."]


@pytest.mark.parametrize("text", [
    "",
    "A\n\n1\n1\n\ng\nm\nX\n",
    "B\n\none\n1\n\ng\nm\nX\n",
    "B\n\n1\n1\n\ng\nm\n",
    "B\n\n1\n1\n\ng\nm\nXX\n",
    "B\n\n1\n1\n\ng\nm\nO\n",
    "B\n\n2\n1\n\ng\ng\nm\nX\nX\n",
])
def test_cxt_errors(text):
    with pytest.raises(FormatError):
        io.parse_cxt(text)


def test_context_json_round_trip():
    ctx = table2()
    assert io.context_from_json(io.context_to_json(ctx)) == ctx
    assert io.read_context(DATA / "table2.json") == ctx
    with pytest.raises(FormatError):
        io.context_from_json({"objects": ["g"], "attributes": ["m"]})
    with pytest.raises(FormatError):
        io.context_from_json({"objects": ["g"], "attributes": ["m"], "rows": "X"})
    with pytest.raises(FormatError):
        io.context_from_json({"objects": ["g"], "attributes": ["m"], "rows": ["Y"]})
    with pytest.raises(FormatError):
        io.context_from_json([1, 2])


def test_kripke_json_round_trip_and_modes():
    kc = table3_kc()
    doc = io.kripke_to_json(kc)
    assert io.kripke_from_json(doc) == kc
    assert io.read_kripke(DATA / "table3_kc.json") == kc
    with pytest.raises(FormatError):
        io.kripke_from_json(doc, relations="E1E2")
    plain = io.context_to_json(kc.context)
    assert io.kripke_from_json(plain).R == (1, 2, 4)
    e = io.kripke_from_json(plain, relations="E1E2")
    assert e.R == (0b101, 0b010, 0b101)
    with pytest.raises(FormatError):
        io.with_relations(kc.context, "full")
    bad = dict(doc, R=[[0, 5]])
    with pytest.raises(FormatError):
        io.kripke_from_json(bad)
    with pytest.raises(FormatError):
        io.kripke_from_json(dict(doc, S=[[0]]))
    with pytest.raises(FormatError):
        io.kripke_from_json(dict(doc, R="none"))


def test_algebra_round_trip():
    for alg in (boolean_dba(2), broken_algebra(), complex_algebra(table3_kc())):
        back = io.algebra_from_json(json.loads(json.dumps(io.algebra_to_json(alg))))
        for name in ("meet", "join", "neg", "lneg"):
            assert np.array_equal(getattr(back, name), getattr(alg, name))
        assert back.has_operators == alg.has_operators
        assert back.labels == alg.labels
    assert not check_axioms(io.read_algebra(DATA / "broken.alg"), "dba").passed
    assert check_axioms(io.read_algebra(DATA / "boolean4.alg"), "topological").passed


def test_algebra_errors():
    doc = io.algebra_to_json(boolean_dba(1))
    with pytest.raises(FormatError):
        io.algebra_from_json(dict(doc, size=0))
    with pytest.raises(FormatError):
        io.algebra_from_json(dict(doc, neg=[0]))
    with pytest.raises(FormatError):
        io.algebra_from_json(dict(doc, top="nowhere"))
    with pytest.raises(FormatError):
        io.algebra_from_json(dict(doc, top=7))
    with pytest.raises(FormatError):
        io.algebra_from_json({k: v for k, v in doc.items() if k != "C"})
    with pytest.raises(FormatError):
        io.algebra_from_json(dict(doc, meet=[[0, 1]]))
    # constants may be given by label
    assert io.algebra_from_json(dict(doc, top="{1}", bot="{}")).top == 1


def test_bao_formats():
    ba = io.read_bao(DATA / "frame.json")
    # R = {(0,1)}: only point 1 sees anything, and it sees point 2
    assert ba.n == 4 and ba.op.tolist() == [0, 0, 1, 1]
    back = io.bao_from_json(json.loads(json.dumps(io.bao_to_json(ba))))
    assert back.op.tolist() == ba.op.tolist() and back.comp.tolist() == ba.comp.tolist()
    with pytest.raises(FormatError):
        io.bao_from_json({"size": 21, "R": []})
    with pytest.raises(FormatError):
        io.bao_from_json(dict(io.bao_to_json(ba), op=[0, 1]))
    with pytest.raises(FormatError):
        io.bao_from_json(dict(io.bao_to_json(ba), elements=[0]))


def test_proof_files():
    d = io.read_proof(DATA / "proof_commutative.json")
    assert d.to_dict() == derivations()["meet-commutative"].to_dict()
    assert str(io.read_proof(DATA / "proof_r6.json").seq) == "p & p |- q & r"


def test_read_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(FormatError):
        io.read_json(bad)
    with pytest.raises(FormatError):
        io.read_context(bad)
    with pytest.raises(FormatError):
        io.read_kripke(bad)
    with pytest.raises(OSError):
        io.read_context(tmp_path / "missing.cxt")


def test_write_json(tmp_path):
    p = tmp_path / "out.json"
    io.write_json(p, io.context_to_json(table1()))
    assert io.read_context(p) == table1()


def test_parse_set():
    ctx = table1()
    assert io.parse_set(ctx, "objects", "{Leech, Cat}") == ctx.object_set(["Leech", "Cat"])
    assert io.parse_set(ctx, "attributes", "") == 0
    with pytest.raises(FormatError):
        io.parse_set(ctx, "objects", "Whale")
