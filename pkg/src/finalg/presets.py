"""Built-in algebras and modules.

Presented algebras use right-to-left words (``"s2*s1"`` applies s1 first).
The printed spans below are the published spanning sets, kept verbatim so
tests and the reproduction report can compare them against computed
invariants.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import constructions as con
from .algebra import StructureAlgebra
from .ffla import Subspace, span
from .groups import dihedral_group_8
from .modules import ModuleRep, radical_section, restrict, simple, submodule
from .presentation import build_presentation, quotient_algebra, word_coords

KD8_ARROWS = [("alpha", "a", "a"), ("beta", "a", "a")]
KD8_RELATIONS = ["alpha*alpha = beta*beta = 0", "alpha*beta*alpha*beta = beta*alpha*beta*alpha"]

LAMBDA_ARROWS = [("t1", "1", "1"), ("t2", "1", "1"), ("t3", "1", "2"), ("t4", "2", "1")]
LAMBDA_RELATIONS = [
    "t1*t1 = t2*t2 = t3*t4 = t2*t4 = t1*t4 = t3*t1 = t3*t2 = 0",
    "t1*t2*t1*t2 = t2*t1*t2*t1 = t4*t3",
]

GAMMA_ARROWS = [("s1", "1", "1"), ("s2", "1", "1"), ("s3", "1", "2"), ("s4", "2", "1")]
GAMMA_PRINTED_RELATIONS = [
    "s1*s1 = s2*s2 = s3*s1 = s2*s4 = 0",
    "s2*s1 = s4*s3",
    "s2*s1*s2*s1 = s1*s2*s1*s2 = s4*s3*s4*s3 = s1*s4*s3*s2",
    "s3*s2*s1*s2 = 0",
]
# The two extra monomials make the presentation agree with the printed
# 16-element basis and with End(A + X)^op.
GAMMA_EXTRA_RELATIONS = ["s1*s2*s1*s4 = 0", "s3*s2*s1*s4 = 0"]

PRINTED = {
    "kd8_basis": ["e_a", "alpha", "beta", "alpha*beta", "beta*alpha", "alpha*beta*alpha",
                  "beta*alpha*beta", "alpha*beta*alpha*beta"],
    "kd8_center": ["e_a", "alpha*beta + beta*alpha", "alpha*beta*alpha", "beta*alpha*beta",
                   "alpha*beta*alpha*beta"],
    "lambda_basis": ["e_1", "e_2", "t1", "t2", "t3", "t4", "t2*t1", "t1*t2", "t1*t2*t1",
                     "t2*t1*t2", "t2*t1*t2*t1"],
    "lambda_center": ["e_1 + e_2", "t2*t1 + t1*t2", "t1*t2*t1", "t2*t1*t2", "t2*t1*t2*t1"],
    "lambda_K": ["t2*t1 + t1*t2", "t3", "t4", "t1*t2*t1", "t2*t1*t2", "t4*t3"],
    "lambda_ann": ["e_1*", "e_2*", "t1*", "t2*", "(t2*t1)* + (t1*t2)*"],
    "gamma_basis": ["e_1", "e_2", "s1", "s2", "s3", "s4", "s2*s1", "s1*s2", "s3*s2", "s3*s4",
                    "s1*s4", "s1*s2*s1", "s2*s1*s2", "s3*s2*s1", "s4*s3*s4", "s2*s1*s2*s1"],
    "gamma_center": ["e_1 + e_2", "s2*s1 + s1*s2 + s3*s4", "s1*s2*s1", "s2*s1*s2", "s2*s1*s2*s1"],
    "gamma_K": ["s3", "s4", "s1*s4", "s3*s2", "s3*s2*s1", "s4*s3*s4", "s2*s1 + s1*s2",
                "s3*s4 + s4*s3", "s2*s1*s2", "s1*s2*s1", "s2*s1*s2*s1"],
    "gamma_ann": ["e_1*", "e_2*", "s1*", "s2*", "(s2*s1)* + (s1*s2)* + (s3*s4)*"],
    # basis aliases printed with "="
    "lambda_aliases": [("t2*t1*t2*t1", "t1*t2*t1*t2"), ("t2*t1*t2*t1", "t4*t3")],
    "gamma_aliases": [("s2*s1", "s4*s3"), ("s3*s2*s1", "s3*s4*s3"), ("s4*s3*s4", "s2*s1*s4"),
                      ("s2*s1*s2*s1", "s1*s2*s1*s2"), ("s2*s1*s2*s1", "s4*s3*s4*s3"),
                      ("s1*s2*s1", "s1*s4*s3")],
}


def elements(A: StructureAlgebra, exprs) -> np.ndarray:
    return np.array([word_coords(A, e) for e in exprs], dtype=np.int64).reshape(len(exprs), A.dim)


def printed_span(A: StructureAlgebra, exprs) -> Subspace:
    return span(elements(A, exprs), A.p, A.dim)


def functional(A: StructureAlgebra, text: str) -> np.ndarray:
    """Dual-basis row for a sum like ``"e_1* + (s2*s1)*"``.

    Each starred word must reduce to a single basis word of A; the result is
    the matching dual-basis functional.
    """
    f = np.zeros(A.dim, dtype=np.int64)
    for term in text.split("+"):
        term = term.strip()
        if not term.endswith("*"):
            raise ValueError(f"functional term {term!r} must end in '*'")
        word = term[:-1].strip()
        if word.startswith("(") and word.endswith(")"):
            word = word[1:-1]
        v = word_coords(A, word)
        hits = np.flatnonzero(v)
        if len(hits) != 1 or v[hits[0]] != 1:
            raise ValueError(f"{word!r} is not a basis word of {A.provenance}")
        f[hits[0]] = (f[hits[0]] + 1) % A.p
    return f


def functionals(A: StructureAlgebra, texts) -> Subspace:
    return span([functional(A, t) for t in texts], A.p, A.dim)


# ---------------------------------------------------------------------------
# algebras


def _presented(name, vertices, arrows, relations, p=2):
    return quotient_algebra(build_presentation(p, vertices, arrows, relations, name=name))


@lru_cache(maxsize=None)
def kd8() -> StructureAlgebra:
    return _presented("kd8", ["a"], KD8_ARROWS, KD8_RELATIONS)


@lru_cache(maxsize=None)
def lambda_() -> StructureAlgebra:
    return _presented("lambda", ["1", "2"], LAMBDA_ARROWS, LAMBDA_RELATIONS)


@lru_cache(maxsize=None)
def gamma_printed() -> StructureAlgebra:
    return _presented("gamma_printed", ["1", "2"], GAMMA_ARROWS, GAMMA_PRINTED_RELATIONS)


@lru_cache(maxsize=None)
def gamma_corrected() -> StructureAlgebra:
    return _presented("gamma_corrected", ["1", "2"], GAMMA_ARROWS,
                      GAMMA_PRINTED_RELATIONS + GAMMA_EXTRA_RELATIONS)


@lru_cache(maxsize=None)
def kd8_group() -> StructureAlgebra:
    return con.group_algebra(dihedral_group_8(), 2, name="kD8_group")


@lru_cache(maxsize=None)
def t2k() -> StructureAlgebra:
    return con.t2_field(2)


@lru_cache(maxsize=None)
def dual_numbers() -> StructureAlgebra:
    return con.dual_numbers(2)


@lru_cache(maxsize=None)
def kc2() -> StructureAlgebra:
    return con.factory("cyclic_group", 2, order=2)


ALGEBRAS = {
    "kd8": kd8,
    "lambda": lambda_,
    "gamma_printed": gamma_printed,
    "gamma_corrected": gamma_corrected,
    "kd8_group": kd8_group,
    "t2k": t2k,
    "dual_numbers": dual_numbers,
    "kc2": kc2,
}

DIMENSIONS = {"kd8": 8, "lambda": 11, "gamma_printed": 18, "gamma_corrected": 16,
              "kd8_group": 8, "t2k": 3, "dual_numbers": 2, "kc2": 2}


def algebra(name: str) -> StructureAlgebra:
    try:
        return ALGEBRAS[name]()
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; known: {', '.join(ALGEBRAS)}") from None


# ---------------------------------------------------------------------------
# kD8 bridge and modules


@lru_cache(maxsize=None)
def kd8_bridge() -> con.LinearAlgebraMap:
    """Quiver kD8 -> group kD8 with alpha -> 1 + s, beta -> 1 + t, certified."""
    A, G = kd8(), kd8_group()
    one = G.unit
    images = {"alpha": (one + G.basis_vector(G.index("s"))) % 2,
              "beta": (one + G.basis_vector(G.index("t"))) % 2}
    F = con.map_from_generators(A, G, images)
    check = con.verify_algebra_map(F)
    if not check:
        raise con.ConstructionError(f"kD8 bridge failed: {check.witness}")
    return F


@lru_cache(maxsize=None)
def rad_section_kd8() -> ModuleRep:
    return radical_section(kd8(), 1, 4, name="rad/rad^4")


def section_vector(word: str) -> np.ndarray:
    """Coordinates in rad/rad^4 of the class of a word of kD8."""
    M = rad_section_kd8()
    rad = Subspace.span(M.meta["parent"].ambient_map, 2)
    y = rad.coords(word_coords(kd8(), word))
    return M.meta["killed"].reduce(y)[M.meta["kept"]]


def module(name: str) -> ModuleRep:
    return MODULES[name]()


@lru_cache(maxsize=None)
def S() -> ModuleRep:
    return simple(kd8(), 0, name="S")


@lru_cache(maxsize=None)
def X1() -> ModuleRep:
    return submodule(rad_section_kd8(), [section_vector("alpha")], name="X1")


@lru_cache(maxsize=None)
def X2() -> ModuleRep:
    return submodule(rad_section_kd8(), [section_vector("beta")], name="X2")


def to_group(M: ModuleRep) -> ModuleRep:
    """Transport a module over quiver kD8 to group kD8 through the certified bridge."""
    R = restrict(M, kd8_bridge().inverse())
    R.name = f"{M.name}_G"
    return R


@lru_cache(maxsize=None)
def S_G() -> ModuleRep:
    return to_group(S())


@lru_cache(maxsize=None)
def X1_G() -> ModuleRep:
    return to_group(X1())


@lru_cache(maxsize=None)
def X2_G() -> ModuleRep:
    return to_group(X2())


MODULES = {"S": S, "X1": X1, "X2": X2, "S_G": S_G, "X1_G": X1_G, "X2_G": X2_G}
