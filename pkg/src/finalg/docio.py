"""JSON documents for algebras, modules and matrices.

Algebra documents have ``kind`` ``presentation``, ``table`` (sparse
structure constants as ``[i, j, k, c]`` meaning ``b_i b_j`` has coefficient
``c`` on ``b_k``) or ``group`` (element labels and a Cayley table).
"""

from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np

from . import presets
from .algebra import StructureAlgebra
from .constructions import group_algebra
from .groups import group_from_table
from .modules import ModuleRep, regular
from .presentation import parse_presentation, quotient_algebra

SCHEMA = "finalg/1"


class DocumentError(ValueError):
    pass


def algebra_from_doc(doc: dict) -> StructureAlgebra:
    kind = doc.get("kind")
    if kind == "presentation":
        return quotient_algebra(parse_presentation(doc))
    if kind == "table":
        try:
            p, n = int(doc["field"]), int(doc["dim"])
            labels = list(doc.get("basis") or [f"b{i}" for i in range(n)])
            M = np.zeros((n, n, n), dtype=np.int64)
            for i, j, k, c in doc["table"]:
                M[i, j, k] = c
            idem = doc.get("idempotents")
            return StructureAlgebra(p, labels, M, doc["unit"], idempotents=idem,
                                    idempotent_labels=doc.get("idempotent_labels"),
                                    provenance=doc.get("name", "table"))
        except (KeyError, TypeError, IndexError) as exc:
            raise DocumentError(f"malformed table document: {exc}") from exc
    if kind == "group":
        try:
            G = group_from_table(doc["elements"], doc["table"])
            return group_algebra(G, int(doc["field"]), name=doc.get("name", "group"))
        except KeyError as exc:
            raise DocumentError(f"group document lacks {exc}") from exc
    raise DocumentError(f"unknown algebra document kind {kind!r}")


def algebra_to_doc(A: StructureAlgebra) -> dict:
    triples = [[int(i), int(j), int(k), int(A.mult[i, j, k])] for i, j, k in np.argwhere(A.mult)]
    doc = {
        "schema": SCHEMA,
        "kind": "table",
        "name": A.provenance,
        "field": A.p,
        "dim": A.dim,
        "basis": list(A.labels),
        "unit": [int(x) for x in A.unit],
        "table": triples,
    }
    if A.idempotents is not None:
        doc["idempotents"] = [[int(x) for x in e] for e in A.idempotents]
        doc["idempotent_labels"] = list(A.idempotent_labels)
    return doc


def module_to_doc(M: ModuleRep, algebra_ref: str | dict | None = None) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "module",
        "name": M.name,
        "algebra": algebra_ref if algebra_ref is not None else algebra_to_doc(M.algebra),
        "dim": M.dim,
        "labels": list(M.labels),
        "action": {lab: M.action[i].tolist() for i, lab in enumerate(M.algebra.labels)},
    }


def module_from_doc(doc: dict, algebra: StructureAlgebra | None = None) -> ModuleRep:
    if doc.get("kind") != "module":
        raise DocumentError("not a module document")
    A = algebra if algebra is not None else load_algebra(doc["algebra"])
    action = doc["action"]
    missing = [lab for lab in A.labels if lab not in action]
    if missing:
        raise DocumentError(f"module document lacks actions for {missing[:3]}")
    mats = np.array([action[lab] for lab in A.labels], dtype=np.int64).reshape(A.dim, doc["dim"], doc["dim"])
    return ModuleRep(A, mats, doc.get("name", "M"), doc.get("labels"))


def load_document(src: str):
    """Parse a file as JSON, falling back to the text presentation grammar."""
    path = Path(src)
    if not path.exists():
        raise DocumentError(f"no such file or preset: {src}")
    text = path.read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def load_algebra(src) -> StructureAlgebra:
    """``preset:NAME``, a path, or an already-parsed document."""
    if isinstance(src, dict):
        return algebra_from_doc(src)
    if src.startswith("preset:"):
        name = src.split(":", 1)[1]
        if name not in presets.ALGEBRAS:
            raise DocumentError(f"unknown preset {name!r}")
        return presets.algebra(name)
    doc = load_document(src)
    if isinstance(doc, str):
        return quotient_algebra(parse_presentation(doc))
    return algebra_from_doc(doc)


def load_module(src, algebra: StructureAlgebra | None = None) -> ModuleRep:
    """``preset:NAME``, ``regular``, or a module document path."""
    if isinstance(src, dict):
        return module_from_doc(src, algebra)
    if src == "regular":
        if algebra is None:
            raise DocumentError("'regular' needs an algebra")
        return regular(algebra, name="A")
    if src.startswith("preset:"):
        name = src.split(":", 1)[1]
        if name not in presets.MODULES:
            raise DocumentError(f"unknown module preset {name!r}")
        M = presets.module(name)
        if algebra is not None and M.algebra is not algebra:
            raise DocumentError(f"module {name} lives over {M.algebra.provenance}")
        return M
    doc = load_document(src)
    if not isinstance(doc, dict):
        raise DocumentError(f"{src} is not a JSON module document")
    return module_from_doc(doc, algebra)


_MATRIX_RE = re.compile(r"^\s*\[.*\]\s*$", re.S)


def parse_matrix(text: str) -> list[list[int]]:
    """Inline ``"[[a,b],[c,d]]"`` or a JSON file path."""
    if not _MATRIX_RE.match(text):
        text = Path(text).read_text(encoding="utf-8")
    try:
        M = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"cannot parse matrix {text!r}") from exc
    if not (isinstance(M, list) and all(isinstance(r, list) for r in M)):
        raise DocumentError("matrix must be a list of rows")
    if any(not isinstance(x, int) for r in M for x in r):
        raise DocumentError("matrix entries must be integers")
    return M


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False)
