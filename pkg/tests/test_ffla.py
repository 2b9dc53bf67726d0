from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from finalg import ffla, presets
from finalg import algebra as alg
from finalg.ffla import DimensionError, FieldError, Subspace

from oracles import brute_rank

PRIMES = [2, 3, 5, 7]


@st.composite
def matrices(draw, max_rows=7, max_cols=7):
    p = draw(st.sampled_from(PRIMES))
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    M = draw(hnp.arrays(np.int64, (r, c), elements=st.integers(0, p - 1)))
    return p, M


def test_rref_examples():
    assert ffla.rank([[16, 2], [2, 2]], 2) == 0
    assert ffla.rank(np.eye(3, dtype=int), 2) == 3
    assert ffla.rank([[8, 1], [1, 1]], 2) == 2
    r, R, piv = ffla.rref([[0, 1], [1, 1]], 2)
    assert (r, piv) == (2, (0, 1))
    assert np.array_equal(R, np.eye(2, dtype=int))


def test_kernel_examples(kd8):
    assert ffla.kernel(np.zeros((3, 5), dtype=int), 2).dim == 5
    assert ffla.kernel([[1, 1], [0, 1]], 2).dim == 0
    assert ffla.kernel(alg.commutation_matrix(kd8), 2).dim == 5


def test_subspace_examples(kd8):
    Z = alg.center(kd8)[0]
    assert presets.elements(kd8, ["alpha*beta + beta*alpha"])[0] in Z
    assert presets.elements(kd8, ["alpha"])[0] not in Z
    U = Subspace.span([[1, 0, 1], [0, 1, 1]], 2)
    assert U & U == U and U + U == U


def test_ambient_mismatch():
    U, W = Subspace.full(2, 3), Subspace.full(2, 4)
    with pytest.raises(DimensionError):
        U + W
    with pytest.raises(DimensionError):
        U.intersect(W)


def test_field_check():
    with pytest.raises(FieldError):
        ffla.check_prime(4)
    with pytest.raises(FieldError):
        ffla.check_prime(2**31 - 1)
    assert ffla.check_prime(2**24 - 3) == 2**24 - 3


def test_inverse():
    M = np.array([[1, 2], [3, 4]])
    Mi = ffla.inverse(M, 5)
    assert np.array_equal(ffla.matmul(M, Mi, 5), np.eye(2, dtype=int))
    with pytest.raises(np.linalg.LinAlgError):
        ffla.inverse([[1, 1], [1, 1]], 2)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rref_properties(data):
    p, M = data
    r, R, piv = ffla.rref(M, p)
    assert r == len(piv)
    if M.shape[0] <= 4:
        assert r == brute_rank(M, p)
    assert list(piv) == sorted(set(piv))
    # canonical: leading ones and zero pivot columns elsewhere
    for i, c in enumerate(piv):
        assert R[i, c] == 1
        assert not R[:i, c].any() and not R[i + 1 :, c].any()
        assert not R[i, :c].any()
    assert not R[r:].any()
    # idempotent
    r2, R2, piv2 = ffla.rref(R, p)
    assert (r2, piv2) == (r, piv) and np.array_equal(R2, R)
    if M.size:
        assert ffla.rank(M.T, p) == r
    assert ffla.kernel(M, p).dim == M.shape[1] - r


@settings(max_examples=100, deadline=None)
@given(matrices(max_rows=6, max_cols=9))
def test_gf2_fast_path_matches_generic(data):
    _, M = data
    M = M % 2
    fast = ffla.rref(M, 2)
    slow = ffla._rref_generic(ffla.as_mat(M, 2), 2)
    assert fast[0] == slow[0] and fast[2] == slow[2]
    assert np.array_equal(fast[1], slow[1])


@settings(max_examples=150, deadline=None)
@given(matrices(), st.randoms(use_true_random=False))
def test_span_canonical_under_shuffle_and_rescale(data, rnd):
    p, M = data
    U = Subspace.span(M, p, M.shape[1])
    rows = [np.array(r) for r in M]
    rnd.shuffle(rows)
    # rescale by units and add combinations of other generators
    mixed = []
    for i, r in enumerate(rows):
        v = (r * rnd.randrange(1, p)) % p
        if rows and i > 0:
            v = (v + rnd.randrange(p) * rows[i - 1]) % p
        mixed.append(v)
    mixed += rows[:1]  # restore what the mixing could have lost
    W = ffla.span(mixed, p, M.shape[1])
    assert W.contains(U)
    if U.contains(W):
        assert U == W and hash(U) == hash(W)


@settings(max_examples=150, deadline=None)
@given(matrices(max_rows=4, max_cols=6), st.data())
def test_modular_law(data, d):
    p, M = data
    N = d.draw(hnp.arrays(np.int64, (d.draw(st.integers(0, 4)), M.shape[1]), elements=st.integers(0, p - 1)))
    U = Subspace.span(M, p, M.shape[1])
    W = Subspace.span(N, p, M.shape[1])
    assert (U + W).dim == U.dim + W.dim - (U & W).dim
    assert (U + W).dim == ffla.rank(np.vstack([M, N]), p)
    I = U & W
    assert U.contains(I) and W.contains(I)
    for v in I.basis:
        assert v in U and v in W


def test_coords_roundtrip():
    U = Subspace.span([[1, 2, 0, 1], [0, 0, 1, 3]], 5)
    v = (3 * U.basis[0] + 4 * U.basis[1]) % 5
    assert list(U.coords(v)) == [3, 4]
    with pytest.raises(ValueError):
        U.coords([0, 1, 0, 0])
