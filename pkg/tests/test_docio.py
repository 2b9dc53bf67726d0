from __future__ import annotations

import json

import numpy as np
import pytest

from finalg import algebra as alg
from finalg import constructions as con
from finalg import docio
from finalg import modules as mod
from finalg import presets


@pytest.mark.parametrize("name", ["kd8", "lambda", "t2k", "kd8_group"])
def test_algebra_round_trip(name, tmp_path):
    A = presets.algebra(name)
    path = tmp_path / "a.json"
    path.write_text(docio.dumps(docio.algebra_to_doc(A)))
    B = docio.load_algebra(str(path))
    assert B.labels == A.labels and np.array_equal(B.mult, A.mult) and np.array_equal(B.unit, A.unit)
    assert alg.peirce_cartan(B) == alg.peirce_cartan(A)


def test_constructed_round_trip(lam):
    T = con.trivial_extension(lam)
    B = docio.algebra_from_doc(json.loads(docio.dumps(docio.algebra_to_doc(T))))
    assert alg.center(B)[0].dim == 10 and B.idempotent_labels == T.idempotent_labels


def test_presentation_documents(tmp_path):
    text = "field 2\nvertices a\narrow x a a\nrelation x*x*x = 0\n"
    (tmp_path / "p.txt").write_text(text)
    assert docio.load_algebra(str(tmp_path / "p.txt")).dim == 3
    doc = {"kind": "presentation", "field": 2, "vertices": ["a"], "arrows": [["x", "a", "a"]],
           "relations": ["x*x*x = 0"]}
    (tmp_path / "p.json").write_text(json.dumps(doc))
    assert docio.load_algebra(str(tmp_path / "p.json")).dim == 3


def test_group_document():
    doc = {"kind": "group", "field": 2, "elements": ["e", "g"], "table": [["e", "g"], ["g", "e"]]}
    A = docio.algebra_from_doc(doc)
    assert A.dim == 2 and alg.loewy_layers(A) == [1, 1]


def test_module_round_trip(tmp_path):
    X = presets.X1()
    path = tmp_path / "m.json"
    path.write_text(docio.dumps(docio.module_to_doc(X, "preset:kd8")))
    Y = docio.load_module(str(path))
    assert Y.algebra is presets.kd8()
    assert np.array_equal(Y.action, X.action) and Y.labels == X.labels
    assert mod.validate_module(Y).ok


def test_load_errors(tmp_path):
    with pytest.raises(docio.DocumentError):
        docio.load_algebra("preset:nope")
    with pytest.raises(docio.DocumentError):
        docio.load_algebra(str(tmp_path / "missing.json"))
    with pytest.raises(docio.DocumentError):
        docio.algebra_from_doc({"kind": "table", "field": 2})
    with pytest.raises(docio.DocumentError):
        docio.algebra_from_doc({"kind": "weird"})
    with pytest.raises(docio.DocumentError):
        docio.load_module("regular")
    with pytest.raises(docio.DocumentError):
        docio.load_module("preset:X1", presets.lambda_())
    with pytest.raises(docio.DocumentError):
        docio.module_from_doc({"kind": "module", "algebra": "preset:kd8", "dim": 1, "action": {}})


def test_parse_matrix(tmp_path):
    assert docio.parse_matrix("[[8,1],[1,1]]") == [[8, 1], [1, 1]]
    (tmp_path / "m.json").write_text("[[2, 1], [1, 2]]")
    assert docio.parse_matrix(str(tmp_path / "m.json")) == [[2, 1], [1, 2]]
    with pytest.raises(docio.DocumentError):
        docio.parse_matrix("[[1, 2.5]]")
    with pytest.raises(docio.DocumentError):
        docio.parse_matrix("[1, 2]")
