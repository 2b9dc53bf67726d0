"""Left modules as explicit representations, intertwiner spaces, opposite
endomorphism algebras and endotriviality for p-group algebras.

A module over A of dimension m is an array ``action`` of shape ``(dim A, m, m)``
whose slice ``i`` is the matrix of ``b_i`` on coordinate columns.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import algebra as alg
from . import ffla
from .algebra import StructureAlgebra
from .ffla import Subspace
from .groups import GroupData


class ModuleError(ValueError):
    pass


@dataclass
class ModuleRep:
    algebra: StructureAlgebra
    action: np.ndarray
    name: str = ""
    labels: list[str] | None = None
    # rows: this module's basis in the coordinates of the module it came from
    ambient_map: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        A = self.algebra
        self.action = np.asarray(self.action, dtype=np.int64) % A.p
        if self.action.ndim != 3 or self.action.shape[0] != A.dim or self.action.shape[1] != self.action.shape[2]:
            raise ffla.DimensionError(
                f"action of shape {self.action.shape} does not fit an algebra of dim {A.dim}"
            )
        if self.labels is None:
            self.labels = [f"v{i}" for i in range(self.dim)]

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    @property
    def p(self) -> int:
        return self.algebra.p

    def matrix(self, x) -> np.ndarray:
        """Action matrix of an arbitrary algebra element."""
        x = np.asarray(x, dtype=np.int64) % self.p
        return np.tensordot(x, self.action, axes=(0, 0)) % self.p

    def act(self, x, v) -> np.ndarray:
        return ffla.matmul(self.matrix(x), np.asarray(v, dtype=np.int64), self.p)


@dataclass
class ModuleReport:
    ok: bool
    failures: list[str] = field(default_factory=list)
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate_module(M: ModuleRep) -> ModuleReport:
    """Unit acts as the identity and ``rho(b_i) rho(b_j) = rho(b_i b_j)`` for all pairs."""
    A, p, m = M.algebra, M.p, M.dim
    if not np.array_equal(M.matrix(A.unit), np.eye(m, dtype=np.int64)):
        return ModuleReport(False, ["unit does not act as the identity"], ("unit", None))
    lhs = np.einsum("iab,jbc->ijac", M.action, M.action) % p
    rhs = np.tensordot(A.mult, M.action, axes=(2, 0)) % p
    bad = np.argwhere((lhs != rhs).any(axis=(2, 3)))
    if bad.size:
        i, j = int(bad[0][0]), int(bad[0][1])
        return ModuleReport(False, [f"action fails on ({A.labels[i]}, {A.labels[j]})"], ("mult", (i, j)))
    return ModuleReport(True)


# ---------------------------------------------------------------------------
# factories


def regular(A: StructureAlgebra, name: str = "") -> ModuleRep:
    action = np.stack([alg.left_regular(A, A.basis_vector(i)) for i in range(A.dim)])
    return ModuleRep(A, action, name or f"reg({A.provenance})", list(A.labels))


def trivial_module(A: StructureAlgebra) -> ModuleRep:
    """The group algebra's trivial module k (every group element acts as 1)."""
    if "group" not in A.meta:
        raise ModuleError("the trivial module needs a group algebra")
    return ModuleRep(A, np.ones((A.dim, 1, 1), dtype=np.int64), "k", ["1"])


def closure(M: ModuleRep, vectors) -> Subspace:
    """Smallest submodule containing the given vectors."""
    U = ffla.span([np.asarray(v, dtype=np.int64) for v in vectors], M.p, M.dim)
    while U.dim:
        imgs = np.einsum("iab,kb->ika", M.action, U.basis).reshape(-1, M.dim)
        nxt = U + Subspace.span(imgs, M.p, M.dim)
        if nxt.dim == U.dim:
            break
        U = nxt
    return U


def invariant_witness(M: ModuleRep, U: Subspace) -> tuple[int, int] | None:
    """First (basis element, vector) pair whose product leaves U, or None."""
    for i in range(M.algebra.dim):
        if not U.dim:
            return None
        red = U.reduce((M.action[i] @ U.basis.T).T % M.p)
        bad = np.flatnonzero(red.any(axis=1))
        if bad.size:
            return i, int(bad[0])
    return None


def submodule(M: ModuleRep, vectors, name: str = "", close: bool = True) -> ModuleRep:
    """Submodule on the canonical basis of the closure (or of the span if ``close=False``)."""
    U = closure(M, vectors) if close else ffla.span(list(vectors), M.p, M.dim)
    if not close and invariant_witness(M, U) is not None:
        raise ModuleError("span is not a submodule")
    imgs = np.einsum("iab,kb->ika", M.action, U.basis) % M.p  # (d, k, m)
    action = imgs[:, :, list(U.pivots)].transpose(0, 2, 1)
    labels = [_format_vec(M, v) for v in U.basis]
    return ModuleRep(M.algebra, action, name or f"sub({M.name})", labels, ambient_map=U.basis.copy(),
                     meta={"parent": M})


def quotient(M: ModuleRep, vectors, name: str = "") -> ModuleRep:
    """``M / <vectors>`` on the coordinates outside the pivots of that submodule."""
    U = closure(M, vectors)
    keep = U.complement_indices()
    cols = M.action[:, :, keep]  # images of the kept basis vectors
    red = U.reduce(cols.transpose(0, 2, 1))  # (d, k, m)
    action = red[:, :, keep].transpose(0, 2, 1)
    return ModuleRep(M.algebra, action, name or f"{M.name}/U", [M.labels[i] for i in keep],
                     meta={"parent": M, "kept": keep, "killed": U})


def subquotient(M: ModuleRep, U: Subspace, W: Subspace, name: str = "") -> ModuleRep:
    """``U / W`` for submodules ``W <= U`` of M."""
    S = submodule(M, U.basis, name=name, close=False)
    if not W.dim:
        return S
    return quotient(S, W.basis[:, list(U.pivots)], name=name)


def radical_section(A: StructureAlgebra, i: int, j: int, name: str = "") -> ModuleRep:
    """``rad^i A / rad^j A`` as a left module (``rad^0 = A``)."""
    if not 0 <= i <= j:
        raise ModuleError(f"need 0 <= i <= j, got ({i}, {j})")
    powers = [Subspace.full(A.p, A.dim)] + alg.radical_powers(A)

    def pw(k):
        return powers[k] if k < len(powers) else Subspace.zero(A.p, A.dim)

    return subquotient(regular(A), pw(i), pw(j), name=name or f"rad^{i}/rad^{j}")


def projective(A: StructureAlgebra, vertex: int, name: str = "") -> ModuleRep:
    e = A.idempotents[vertex]
    U = Subspace.span(alg.right_regular(A, e).T, A.p, A.dim)  # rows b_i e
    return submodule(regular(A), U.basis, name=name or f"P{vertex}", close=False)


def simple(A: StructureAlgebra, vertex: int = 0, name: str = "") -> ModuleRep:
    """Top of ``A e_v``."""
    if not A.idempotents:
        raise ModuleError(f"{A.provenance} carries no idempotents")
    e = A.idempotents[vertex]
    U = Subspace.span(alg.right_regular(A, e).T, A.p, A.dim)
    R = alg.radical(A)
    return subquotient(regular(A), U, U.intersect(R), name=name or f"S{vertex}")


def direct_sum(mods: Sequence[ModuleRep], name: str = "") -> ModuleRep:
    if not mods:
        raise ModuleError("direct sum of an empty list")
    A = mods[0].algebra
    if any(M.algebra is not A for M in mods):
        raise ModuleError("summands live over different algebras")
    n = sum(M.dim for M in mods)
    action = np.zeros((A.dim, n, n), dtype=np.int64)
    off = 0
    labels = []
    for k, M in enumerate(mods):
        action[:, off : off + M.dim, off : off + M.dim] = M.action
        labels += [f"{l}[{k}]" for l in M.labels]
        off += M.dim
    return ModuleRep(A, action, name or "+".join(M.name for M in mods), labels,
                     meta={"summands": list(mods)})


def group_of(A: StructureAlgebra) -> GroupData:
    G = A.meta.get("group")
    if G is None:
        raise ModuleError(f"{A.provenance} is not a group algebra")
    return G


def dual(M: ModuleRep, G: GroupData | None = None) -> ModuleRep:
    """``D(M)`` with ``g`` acting by ``rho(g^-1)^T``."""
    G = G or group_of(M.algebra)
    if G.order != M.algebra.dim:
        raise ModuleError("group does not match the algebra")
    action = np.stack([M.action[G.inverse[g]].T for g in range(G.order)])
    return ModuleRep(M.algebra, action, f"D({M.name})", [f"{l}*" for l in M.labels])


def restrict(M: ModuleRep, F) -> ModuleRep:
    """Pull M back along an algebra map ``F: B -> A`` (a LinearAlgebraMap)."""
    if F.target is not M.algebra and F.target.dim != M.algebra.dim:
        raise ModuleError("map target is not the module's algebra")
    action = np.tensordot(F.matrix.T, M.action, axes=(1, 0)) % M.p
    return ModuleRep(F.source, action, f"res({M.name})", list(M.labels))


def t2_module(T2: StructureAlgebra, X: ModuleRep | None, Y: ModuleRep | None, f=None, name: str = "") -> ModuleRep:
    """The T2(A)-module (X, Y, f): ``a@21`` sends x to ``a f(x)`` in Y."""
    A = T2.meta["base"]
    mx = X.dim if X is not None else 0
    my = Y.dim if Y is not None else 0
    d = A.dim
    if f is None:
        f = np.zeros((my, mx), dtype=np.int64)
    f = np.asarray(f, dtype=np.int64).reshape(my, mx)
    rx = X.action if X is not None else np.zeros((d, 0, 0), dtype=np.int64)
    ry = Y.action if Y is not None else np.zeros((d, 0, 0), dtype=np.int64)
    n = mx + my
    action = np.zeros((3 * d, n, n), dtype=np.int64)
    action[:d, :mx, :mx] = rx
    action[d : 2 * d, mx:, :mx] = np.einsum("iab,bc->iac", ry, f)
    action[2 * d :, mx:, mx:] = ry
    return ModuleRep(T2, action, name or "(X,Y,f)")


def conjugate(M: ModuleRep, P) -> ModuleRep:
    """Same module in the basis given by the columns of invertible P."""
    Pinv = ffla.inverse(P, M.p)
    action = np.einsum("ab,ibc,cd->iad", Pinv, M.action, np.asarray(P, dtype=np.int64)) % M.p
    return ModuleRep(M.algebra, action, f"conj({M.name})")


def _format_vec(M: ModuleRep, v) -> str:
    terms = []
    for i, c in enumerate(np.asarray(v)):
        if c:
            terms.append(M.labels[i] if c == 1 else f"{int(c)}*{M.labels[i]}")
    return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# Hom and End


def hom_basis(M: ModuleRep, N: ModuleRep) -> list[np.ndarray]:
    """Canonical basis of ``Hom_A(M, N)`` as ``dim N x dim M`` matrices."""
    if M.algebra is not N.algebra:
        raise ModuleError("modules live over different algebras")
    p, m, n = M.p, M.dim, N.dim
    if m == 0 or n == 0:
        return []
    # T rho_M(b) - rho_N(b) T = 0 with T vectorised row-major; axes (b, row, col, T-row, T-col)
    eq_m = np.einsum("xa,icd->ixdac", np.eye(n, dtype=np.int64), M.action)
    eq_n = np.einsum("ixa,dc->ixdac", N.action, np.eye(m, dtype=np.int64))
    system = ((eq_m - eq_n) % p).reshape(M.algebra.dim * n * m, n * m)
    K = ffla.kernel(system, p)
    return [row.reshape(n, m).copy() for row in K.basis]


def hom_dim(M: ModuleRep, N: ModuleRep) -> int:
    return len(hom_basis(M, N))


def end_algebra_op(summands: Sequence[ModuleRep], name: str = "") -> StructureAlgebra:
    """``End_A(M_1 + ... + M_n)^op`` with product ``f . g = g o f``.

    The Peirce block ``e_i E e_j`` is ``Hom_A(M_i, M_j)``; the idempotents
    are the projections onto the summands.
    """
    mods = list(summands)
    A = mods[0].algebra
    p = A.p
    sizes = [M.dim for M in mods]
    offs = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
    total = int(offs[-1])
    mats, labels = [], []
    for i, Mi in enumerate(mods):
        for j, Mj in enumerate(mods):
            for k, h in enumerate(hom_basis(Mi, Mj)):
                big = np.zeros((total, total), dtype=np.int64)
                big[offs[j] : offs[j + 1], offs[i] : offs[i + 1]] = h
                mats.append(big)
                labels.append(f"h{i}{j}.{k}")
    flat = np.array([m.reshape(-1) for m in mats], dtype=np.int64)
    # block bases are canonical and disjointly supported, so their union is canonical
    space = Subspace.span(flat, p, total * total)
    order = [next(r for r in range(len(mats)) if np.array_equal(flat[r], row)) for row in space.basis]
    mats = [mats[r] for r in order]
    labels = [labels[r] for r in order]
    D = len(mats)
    stacked = np.array(mats)
    # op product: E_a . E_b = E_b @ E_a
    prods = np.einsum("bxy,ayz->abxz", stacked, stacked) % p
    table = space.coords(prods.reshape(D * D, -1)).reshape(D, D, D)
    unit = space.coords(np.eye(total, dtype=np.int64).reshape(-1))
    idem = []
    for i in range(len(mods)):
        e = np.zeros((total, total), dtype=np.int64)
        e[offs[i] : offs[i + 1], offs[i] : offs[i + 1]] = np.eye(sizes[i], dtype=np.int64)
        idem.append(space.coords(e.reshape(-1)))
    return StructureAlgebra(
        p,
        labels,
        table,
        unit,
        idempotents=idem,
        idempotent_labels=[M.name or str(i) for i, M in enumerate(mods)],
        provenance=name or "End(" + "+".join(M.name for M in mods) + ")^op",
        meta={"kind": "end_op", "summands": mods, "matrices": stacked, "offsets": offs},
    )


def end_matrix(E: StructureAlgebra, x) -> np.ndarray:
    """Endomorphism matrix of an element of an ``end_algebra_op`` result."""
    return np.tensordot(np.asarray(x, dtype=np.int64), E.meta["matrices"], axes=(0, 0)) % E.p


@dataclass
class DecompositionReport:
    ok: bool
    dims: list[int]
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def decomposition_verify(M: ModuleRep, parts: Sequence, close: bool = True) -> DecompositionReport:
    """Check ``M = U_1 + ... + U_n`` (direct) for the parts given by generators.

    With ``close=True`` each part is the submodule generated by its vectors;
    otherwise each part is the bare span and must itself be invariant.
    """
    if not parts:
        raise ModuleError("no parts given")
    spaces = []
    for k, gens in enumerate(parts):
        gens = [np.asarray(g, dtype=np.int64) for g in gens]
        U = closure(M, gens) if close else ffla.span(gens, M.p, M.dim)
        if not close:
            w = invariant_witness(M, U)
            if w is not None:
                return DecompositionReport(False, [s.dim for s in spaces] + [U.dim], ("not_invariant", k, w))
        spaces.append(U)
    dims = [U.dim for U in spaces]
    total = Subspace.zero(M.p, M.dim)
    for U in spaces:
        total = total + U
    if total.dim != M.dim:
        return DecompositionReport(False, dims, ("not_spanning", total.dim))
    if sum(dims) != M.dim:
        return DecompositionReport(False, dims, ("not_direct", sum(dims)))
    return DecompositionReport(True, dims)


# ---------------------------------------------------------------------------
# group modules


def tensor_diagonal(M: ModuleRep, N: ModuleRep, G: GroupData | None = None) -> ModuleRep:
    """``M (x) N`` with g acting as ``rho_M(g) (x) rho_N(g)``."""
    G = G or group_of(M.algebra)
    if M.algebra is not N.algebra:
        raise ModuleError("modules live over different algebras")
    if G.order != M.algebra.dim:
        raise ModuleError("group does not match the algebra")
    action = np.stack([np.kron(M.action[g], N.action[g]) for g in range(G.order)])
    labels = [f"{a}⊗{b}" for a in M.labels for b in N.labels]
    return ModuleRep(M.algebra, action, f"{M.name}⊗{N.name}", labels)


def _check_p_group(G: GroupData, p: int) -> None:
    n = G.order
    while n > 1 and n % p == 0:
        n //= p
    if n != 1:
        raise ModuleError(f"group of order {G.order} is not a {p}-group")


def norm_rank(M: ModuleRep, G: GroupData | None = None) -> int:
    """Rank of the norm element; counts free summands for p-groups in characteristic p."""
    G = G or group_of(M.algebra)
    _check_p_group(G, M.p)
    return ffla.rank(M.action.sum(axis=0) % M.p, M.p)


def is_endotrivial(X: ModuleRep, G: GroupData | None = None) -> bool:
    """``D(X) (x) X = k + projective``, read off the norm rank."""
    G = G or group_of(X.algebra)
    E = tensor_diagonal(dual(X, G), X, G)
    return E.dim - norm_rank(E, G) * G.order == 1
