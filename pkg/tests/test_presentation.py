from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finalg import algebra as alg
from finalg import presets
from finalg.presentation import (
    BoundCeilingError,
    PresentationError,
    build_presentation,
    layer_dimensions,
    parse_presentation,
    quotient_algebra,
    word_coords,
)

from oracles import GAMMA_BINOMIALS, GAMMA_EXTRA_MONOMIALS, GAMMA_MONOMIALS, rewriting_dimension, word_tuple

LAMBDA_TEXT = """
field 2
name lambda
vertices 1 2
arrow t1 1 1
arrow t2 1 1
arrow t3: 1 -> 2
arrow t4: 2 -> 1
relation t1*t1 = t2*t2 = t3*t4 = t2*t4 = t1*t4 = t3*t1 = t3*t2 = 0
relation t1*t2*t1*t2 = t2*t1*t2*t1 = t4*t3
"""


def test_oracle_gamma_printed_dimension(gamma_printed):
    total, layers = rewriting_dimension(["1", "2"], presets.GAMMA_ARROWS, GAMMA_BINOMIALS, GAMMA_MONOMIALS)
    assert total == 18
    assert layers[5] == layers[6] == 0
    assert gamma_printed.dim == total
    assert layer_dimensions(gamma_printed) == [2] + [layers[n] for n in range(1, 5)]


def test_oracle_gamma_corrected_dimension(gamma):
    mons = GAMMA_MONOMIALS + GAMMA_EXTRA_MONOMIALS
    total, _ = rewriting_dimension(["1", "2"], presets.GAMMA_ARROWS, GAMMA_BINOMIALS, mons)
    assert total == 16 == gamma.dim


def test_oracle_kd8_dimension(kd8):
    total, _ = rewriting_dimension(
        ["a"], presets.KD8_ARROWS, [(word_tuple("alpha*beta*alpha*beta"), word_tuple("beta*alpha*beta*alpha"))],
        [word_tuple("alpha*alpha"), word_tuple("beta*beta")],
    )
    assert total == 8 == kd8.dim


def test_gamma_printed_surviving_words(gamma_printed):
    # the two words that the printed relations fail to kill
    for w in ["s1*s2*s1*s4", "s3*s2*s1*s4"]:
        assert word_coords(gamma_printed, w).any()
    assert set(gamma_printed.labels) - set(presets.gamma_corrected().labels) == {"s1*s2*s1*s4", "s3*s2*s1*s4"}


# ---------------------------------------------------------------------------
# parsing


def test_kd8_parse():
    P = build_presentation(2, ["a"], presets.KD8_ARROWS, presets.KD8_RELATIONS, name="kd8")
    assert len(P.quiver.vertices) == 1 and len(P.quiver.arrows) == 2
    assert len(P.relations) == 3  # alpha^2, beta^2 and the binomial


def test_lambda_chain_expands():
    P = parse_presentation(LAMBDA_TEXT)
    # seven monomials plus two differences from the three-member chain
    assert len(P.relations) == 9
    assert quotient_algebra(P).dim == 11


def test_text_and_dict_documents_agree(lam):
    doc = {"kind": "presentation", "field": 2, "vertices": ["1", "2"],
           "arrows": [list(a) for a in presets.LAMBDA_ARROWS], "relations": presets.LAMBDA_RELATIONS}
    A = quotient_algebra(parse_presentation(doc))
    B = quotient_algebra(parse_presentation(LAMBDA_TEXT))
    assert A.labels == B.labels == lam.labels
    assert np.array_equal(A.mult, B.mult)


@pytest.mark.parametrize(
    "relation, message",
    [
        ("s3*s3 = 0", "'s3' cannot follow 's3'"),
        ("s1*s2 = s3*s2", "non-uniform"),
        ("zz*s1 = 0", "unknown arrow"),
        ("s1 = s2*s2", "non-admissible"),
    ],
)
def test_parse_errors(relation, message):
    with pytest.raises(PresentationError, match=message):
        build_presentation(2, ["1", "2"], presets.GAMMA_ARROWS, [relation])


def test_bad_documents():
    with pytest.raises(PresentationError):
        parse_presentation("vertices 1\narrow x 1 1")  # no field
    with pytest.raises(PresentationError):
        parse_presentation("field 2\nvertices 1\narrow x 1 3")
    with pytest.raises(PresentationError):
        parse_presentation("field 2\nvertex 1")
    with pytest.raises(PresentationError):
        parse_presentation({"kind": "presentation", "field": 2})


# ---------------------------------------------------------------------------
# quotient


def test_kd8_basis(kd8):
    assert kd8.dim == 8
    assert kd8.labels == presets.PRINTED["kd8_basis"]
    assert layer_dimensions(kd8) == [1, 2, 2, 2, 1]


def test_lambda_basis(lam):
    assert lam.dim == 11
    assert presets.printed_span(lam, presets.PRINTED["lambda_basis"]).dim == 11
    for a, b in presets.PRINTED["lambda_aliases"]:
        assert np.array_equal(word_coords(lam, a), word_coords(lam, b))


def test_gamma_aliases(gamma):
    assert presets.printed_span(gamma, presets.PRINTED["gamma_basis"]).dim == 16
    for a, b in presets.PRINTED["gamma_aliases"]:
        assert np.array_equal(word_coords(gamma, a), word_coords(gamma, b))


def test_base_field():
    A = quotient_algebra(build_presentation(3, ["v"], [], []))
    assert A.dim == 1 and alg.validate(A).ok


def test_word_coords(kd8, gamma):
    assert np.array_equal(word_coords(kd8, "e_a"), kd8.unit)
    assert not word_coords(gamma, "s3*s3").any()  # vertex mismatch gives zero
    with pytest.raises(PresentationError):
        word_coords(gamma, "s9")
    assert np.array_equal(word_coords(gamma, "s4*s3"), word_coords(gamma, "s2*s1"))


def test_bound_ceiling(monkeypatch):
    free_loop = build_presentation(2, ["1"], [("x", "1", "1")], [])
    with pytest.raises(BoundCeilingError):
        quotient_algebra(free_loop)
    P = build_presentation(2, ["1"], [("x", "1", "1")], ["x*x*x*x*x = 0"])
    assert quotient_algebra(P).dim == 5
    monkeypatch.setenv("FINALG_BOUND_CEILING", "3")
    with pytest.raises(BoundCeilingError):
        quotient_algebra(P)


@pytest.mark.parametrize("name", ["kd8", "lambda", "gamma_printed", "gamma_corrected"])
def test_presented_invariants(name):
    A = presets.algebra(name)
    assert alg.validate(A, full=True).ok
    E = A.idempotents
    assert np.array_equal(sum(E) % 2, A.unit)
    for i, e in enumerate(E):
        for j, f in enumerate(E):
            prod = alg.mult(A, e, f)
            assert np.array_equal(prod, e if i == j else 0 * e)
    C = alg.peirce_cartan(A)  # includes the one-dimensional top check
    assert sum(map(sum, C)) == A.dim
    # escalation soundness: all paths of the accepted bound vanish
    q = A.meta["quotient"]
    assert max(A.grading) < q.bound
    assert alg.radical(A).dim == A.dim - len(E)
    assert len(alg.radical_powers(A)) <= q.bound


def _random_word(Q, rnd, length):
    arrows = list(range(len(Q.arrows)))
    for _ in range(50):
        w = [rnd.choice(arrows)]
        while len(w) < length:
            nxt = [a for a in arrows if Q.arrows[a].source == Q.arrows[w[0]].target]
            if not nxt:
                break
            w.insert(0, rnd.choice(nxt))
        if len(w) == length:
            return w
    return None


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["kd8", "lambda", "gamma_printed"]), st.integers(1, 3), st.integers(1, 3),
       st.randoms(use_true_random=False))
def test_reduction_is_multiplicative(name, la, lb, rnd):
    A = presets.algebra(name)
    Q = A.meta["quotient"].presentation.quiver
    u = _random_word(Q, rnd, la)
    v = _random_word(Q, rnd, lb)
    if u is None or v is None:
        return
    names = lambda w: "*".join(Q.arrows[a].name for a in w)
    lhs = word_coords(A, names(u) + "*" + names(v))
    rhs = alg.mult(A, word_coords(A, names(u)), word_coords(A, names(v)))
    assert np.array_equal(lhs, rhs)
