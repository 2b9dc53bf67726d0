from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finalg import algebra as alg
from finalg import constructions as con
from finalg import ffla
from finalg import modules as mod
from finalg import presets


@pytest.mark.parametrize("name", list(presets.MODULES))
def test_preset_modules_valid(name):
    assert mod.validate_module(presets.module(name)).ok


def test_corrupted_module_witness(kd8):
    M = mod.regular(kd8)
    act = M.action.copy()
    act[kd8.index("alpha"), 0, 0] ^= 1
    rep = mod.validate_module(mod.ModuleRep(kd8, act))
    assert not rep.ok and rep.witness[0] == "mult"
    act = M.action.copy()
    act[0] = 0
    assert mod.validate_module(mod.ModuleRep(kd8, act)).witness == ("unit", None)


def test_action_shape(kd8):
    with pytest.raises(ffla.DimensionError):
        mod.ModuleRep(kd8, np.zeros((3, 2, 2)))


def test_simple_and_projective(lam):
    S1, S2 = mod.simple(lam, 0), mod.simple(lam, 1)
    assert S1.dim == S2.dim == 1
    P1, P2 = mod.projective(lam, 0), mod.projective(lam, 1)
    C = alg.peirce_cartan(lam)
    assert P1.dim + P2.dim == lam.dim
    # Hom(P_i, P_j) = e_i A e_j
    assert [[mod.hom_dim(P, Q) for Q in (P1, P2)] for P in (P1, P2)] == C
    assert mod.hom_dim(P1, S1) == 1 and mod.hom_dim(P1, S2) == 0


def test_x1_is_uniserial_of_dim_3():
    X1 = presets.X1()
    assert X1.dim == 3
    assert X1.labels == ["alpha", "beta*alpha", "alpha*beta*alpha"]
    R = presets.rad_section_kd8()
    assert R.dim == 6 and mod.validate_module(R).ok


def test_rad_section_decomposition():
    R = presets.rad_section_kd8()
    rep = mod.decomposition_verify(R, [[presets.section_vector("alpha")], [presets.section_vector("beta")]])
    assert rep.ok and rep.dims == [3, 3]


def test_decomposition_failures():
    R = presets.rad_section_kd8()
    a, b = presets.section_vector("alpha"), presets.section_vector("beta")
    rep = mod.decomposition_verify(R, [[a]])
    assert not rep.ok and rep.witness == ("not_spanning", 3)
    rep = mod.decomposition_verify(R, [[a], [(a + b) % 2], [b]])
    assert not rep.ok and rep.witness[0] == "not_direct"
    rep = mod.decomposition_verify(R, [[a], [b]], close=False)
    assert not rep.ok and rep.witness[0] == "not_invariant"


def test_submodule_not_invariant():
    R = presets.rad_section_kd8()
    with pytest.raises(mod.ModuleError):
        mod.submodule(R, [presets.section_vector("alpha")], close=False)


def test_quotient_and_subquotient(kd8):
    A = mod.regular(kd8)
    R = alg.radical(kd8)
    Q = mod.quotient(A, R.basis)
    assert Q.dim == 1 and mod.validate_module(Q).ok
    top = mod.simple(kd8)
    assert mod.hom_dim(Q, top) == 1


def test_hom_examples(kd8):
    A, S = mod.regular(kd8), presets.S()
    assert mod.hom_dim(S, A) == 1  # the socle
    assert mod.hom_dim(A, S) == 1
    assert mod.hom_dim(A, A) == 8
    X1, X2 = presets.X1(), presets.X2()
    assert mod.hom_dim(X1, X1) == 2 and mod.hom_dim(X2, X2) == 2
    for h in mod.hom_basis(X1, A):
        for i in range(kd8.dim):
            assert np.array_equal(h @ X1.action[i] % 2, A.action[i] @ h % 2)


def test_hom_t2_fact(kd8):
    T2 = con.t2_of(kd8)
    A = mod.regular(kd8)
    M = mod.t2_module(T2, None, A)
    assert mod.validate_module(M).ok
    assert mod.hom_dim(M, M) == 8 == mod.hom_dim(A, A)
    N = mod.t2_module(T2, A, A, np.eye(8, dtype=np.int64))
    assert mod.validate_module(N).ok
    assert mod.hom_dim(M, N) == 8


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["S", "X1", "X2"]), st.integers(0, 2**32 - 1))
def test_hom_dim_conjugation_invariant(name, seed):
    M = presets.module(name)
    rng = np.random.default_rng(seed)
    while True:
        P = rng.integers(0, 2, size=(M.dim, M.dim))
        if ffla.rank(P, 2) == M.dim:
            break
    C = mod.conjugate(M, P)
    assert mod.validate_module(C).ok
    A = mod.regular(M.algebra)
    assert mod.hom_dim(C, A) == mod.hom_dim(M, A)
    assert mod.hom_dim(C, C) == mod.hom_dim(M, M)


def test_end_algebras():
    kd8 = presets.kd8()
    A = mod.regular(kd8)
    E = mod.end_algebra_op([A, presets.S()])
    assert E.dim == 11 and alg.validate(E, full=True).ok
    assert alg.peirce_cartan(E) == [[8, 1], [1, 1]]
    assert alg.center(E)[0].dim == 5 and alg.commutator_subspace(E).dim == 6
    for X in (presets.X1(), presets.X2()):
        E = mod.end_algebra_op([A, X])
        assert E.dim == 16 and alg.peirce_cartan(E) == [[8, 3], [3, 2]]
        Z, Zalg = alg.center(E)
        assert Z.dim == 5 and alg.predicates(Zalg).rad_square_zero
        K = alg.commutator_subspace(E)
        assert K.dim == 11 and con.annihilator_in_dual(E, K).dim == 5


def test_end_blockwise_dims():
    mods = [mod.regular(presets.kd8()), presets.S(), presets.X1()]
    E = mod.end_algebra_op(mods)
    assert E.dim == sum(mod.hom_dim(M, N) for M in mods for N in mods)


def test_end_cartan_orientation():
    # e_i f e_j in End^op is a map M_i -> M_j; T2(k) separates the orientations
    T = presets.t2k()
    P = [mod.projective(T, 0), mod.projective(T, 1)]
    hom = [[mod.hom_dim(P[i], P[j]) for j in range(2)] for i in range(2)]
    assert hom[0][1] != hom[1][0]
    assert alg.peirce_cartan(mod.end_algebra_op(P)) == hom


def test_end_op_product_order():
    # in End^op, x*y is "x first, then y"
    mods = [mod.regular(presets.kd8()), presets.X1()]
    E = mod.end_algebra_op(mods)
    rng = np.random.default_rng(1)
    for _ in range(10):
        x, y = rng.integers(0, 2, size=(2, E.dim))
        lhs = mod.end_matrix(E, alg.mult(E, x, y))
        rhs = mod.end_matrix(E, y) @ mod.end_matrix(E, x) % 2
        assert np.array_equal(lhs, rhs)


def test_direct_sum_errors(kd8, lam):
    with pytest.raises(mod.ModuleError):
        mod.direct_sum([])
    with pytest.raises(mod.ModuleError):
        mod.direct_sum([mod.regular(kd8), mod.regular(lam)])


# ---------------------------------------------------------------------------
# group modules


def test_endotriviality():
    G = presets.kd8_group()
    X1, X2 = presets.X1_G(), presets.X2_G()
    D = mod.tensor_diagonal(mod.dual(X1), X1)
    assert D.dim == 9 and mod.norm_rank(D) == 1
    assert mod.is_endotrivial(X1) and mod.is_endotrivial(X2)
    assert mod.is_endotrivial(mod.trivial_module(G))
    assert not mod.is_endotrivial(mod.regular(G))


def test_dual_is_module():
    D = mod.dual(presets.X1_G())
    assert mod.validate_module(D).ok
    assert mod.validate_module(mod.dual(D)).ok and np.array_equal(mod.dual(D).action, presets.X1_G().action)


def test_trivial_tensor_is_identity():
    G = presets.kd8_group()
    k = mod.trivial_module(G)
    for M in (presets.X1_G(), presets.S_G(), mod.regular(G)):
        T = mod.tensor_diagonal(k, M)
        assert np.array_equal(T.action, M.action)


def test_norm_rank_additive():
    G = presets.kd8_group()
    A = mod.regular(G)
    assert mod.norm_rank(A) == 1
    mods = [presets.X1_G(), presets.X2_G(), A, mod.trivial_module(G)]
    total = mod.direct_sum(mods)
    assert mod.norm_rank(total) == sum(mod.norm_rank(M) for M in mods) == 1


def test_group_errors(kd8):
    with pytest.raises(mod.ModuleError):
        mod.trivial_module(kd8)
    with pytest.raises(mod.ModuleError):
        mod.dual(presets.X1())
    C3 = con.factory("cyclic_group", 2, order=3)
    with pytest.raises(mod.ModuleError):
        mod.norm_rank(mod.regular(C3))


def test_restriction_through_bridge():
    # S over the group algebra is still the trivial module
    S = presets.S_G()
    assert S.dim == 1
    assert np.array_equal(S.action, mod.trivial_module(presets.kd8_group()).action)
