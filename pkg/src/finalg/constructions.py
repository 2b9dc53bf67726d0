"""Algebra constructors: trivial extensions, tensor products, triangular
matrix algebras and group algebras, plus dual-bimodule calculus, the center
formula for trivial extensions, symmetrizing forms and algebra-map checks.

Functionals on A are coordinate rows in the dual basis ``{b_i*}``; the
bimodule actions are ``(a.f)(x) = f(x a)`` and ``(f.b)(x) = f(b x)``.  With
these, in the corrected Gamma,
``(s2 s1 + s1 s2 + s3 s4) . ((s2 s1)* + (s1 s2)* + (s3 s4)*) = 2 e_1* + e_2*``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import algebra as alg
from . import ffla
from .algebra import StructureAlgebra
from .ffla import Subspace
from .groups import GroupData, cyclic_group, group_from_table
from .presentation import build_presentation, quotient_algebra


class ConstructionError(ValueError):
    pass


class BHZMismatch(ConstructionError):
    """The center formula for T(A) disagreed with the directly computed center."""


class NotSymmetrizing(ConstructionError):
    pass


def _same_field(A: StructureAlgebra, B: StructureAlgebra) -> None:
    if A.p != B.p:
        raise ConstructionError(f"field mismatch: F_{A.p} vs F_{B.p}")


def dual_label(label: str) -> str:
    return f"({label})*" if any(c in label for c in "*+ ") else f"{label}*"


# ---------------------------------------------------------------------------
# dual bimodule


def dual_action(A: StructureAlgebra, a, f, b) -> np.ndarray:
    """``a . f . b``, i.e. the functional ``x -> f(b x a)``."""
    f = np.asarray(f, dtype=np.int64) % A.p
    g = ffla.matmul(f, alg.left_regular(A, b), A.p)
    return ffla.matmul(g, alg.right_regular(A, a), A.p)


def left_dual_action(A: StructureAlgebra, a, f) -> np.ndarray:
    return ffla.matmul(np.asarray(f, dtype=np.int64), alg.right_regular(A, a), A.p)


def right_dual_action(A: StructureAlgebra, f, b) -> np.ndarray:
    return ffla.matmul(np.asarray(f, dtype=np.int64), alg.left_regular(A, b), A.p)


def evaluate(f, x, p: int) -> int:
    return int(np.dot(np.asarray(f, dtype=np.int64), np.asarray(x, dtype=np.int64)) % p)


def annihilator_in_dual(A: StructureAlgebra, U: Subspace) -> Subspace:
    """``{f in D(A) : f(U) = 0}`` in dual-basis coordinates."""
    if U.ambient_dim != A.dim:
        raise ffla.DimensionError("subspace is not in this algebra")
    if not U.dim:
        return Subspace.full(A.p, A.dim)
    return ffla.kernel(U.basis, A.p)


# ---------------------------------------------------------------------------
# trivial extension


def trivial_extension(A: StructureAlgebra) -> StructureAlgebra:
    """``T(A) = A + D(A)`` with ``(a, f)(b, g) = (ab, a.g + f.b)``.

    Basis: ``(b_i, 0)`` then ``(0, b_i*)``.  Carries the idempotents
    ``(e_i, 0)``, the radical ``rad A + D(A)`` and the form
    ``lambda(a, f) = f(1)``.
    """
    d, p, M = A.dim, A.p, A.mult
    T = np.zeros((2 * d, 2 * d, 2 * d), dtype=np.int64)
    T[:d, :d, :d] = M
    # (b_i, 0)(0, b_j*) = (0, x -> b_j*(x b_i)); coefficient on b_k* is M[k, i, j]
    T[:d, d:, d:] = M.transpose(1, 2, 0)
    # (0, b_i*)(b_j, 0) = (0, x -> b_i*(b_j x)); coefficient on b_k* is M[j, k, i]
    T[d:, :d, d:] = M.transpose(2, 0, 1)
    zeros = np.zeros(d, dtype=np.int64)
    unit = np.concatenate([A.unit, zeros])
    idem = None
    if A.idempotents is not None:
        idem = [np.concatenate([e, zeros]) for e in A.idempotents]

    def carried():
        R = alg.radical(A)
        lifted = np.hstack([R.basis, np.zeros((R.dim, d), dtype=np.int64)])
        dual = np.hstack([np.zeros((d, d), dtype=np.int64), np.eye(d, dtype=np.int64)])
        return Subspace.span(np.vstack([lifted, dual]), p, 2 * d)

    lam = np.concatenate([zeros, A.unit])
    return StructureAlgebra(
        p,
        list(A.labels) + [dual_label(l) for l in A.labels],
        T,
        unit,
        idempotents=idem,
        idempotent_labels=A.idempotent_labels,
        radical_hint=carried,
        provenance=f"T({A.provenance})",
        meta={"kind": "trivial_extension", "base": A, "symmetrizing_form": lam},
    )


def te_element(T: StructureAlgebra, a=None, f=None) -> np.ndarray:
    """Coordinates of ``(a, f)`` in a trivial extension."""
    d = T.meta["base"].dim
    a = np.zeros(d, dtype=np.int64) if a is None else np.asarray(a, dtype=np.int64)
    f = np.zeros(d, dtype=np.int64) if f is None else np.asarray(f, dtype=np.int64)
    return np.concatenate([a, f]) % T.p


# ---------------------------------------------------------------------------
# tensor products


def tensor_product(A: StructureAlgebra, B: StructureAlgebra) -> StructureAlgebra:
    """``A (x) B`` on the basis ``a_i (x) b_k`` (index ``i * dim B + k``)."""
    _same_field(A, B)
    p, d, e = A.p, A.dim, B.dim
    M = np.einsum("ijm,kln->ikjlmn", A.mult, B.mult).reshape(d * e, d * e, d * e) % p
    unit = np.kron(A.unit, B.unit) % p
    idem = labels = None
    if A.idempotents is not None and B.idempotents is not None:
        idem = [np.kron(x, y) % p for x in A.idempotents for y in B.idempotents]
        labels = [f"{u}|{v}" for u in A.idempotent_labels for v in B.idempotent_labels]

    def carried():
        RA, RB = alg.radical(A), alg.radical(B)
        parts = []
        if RA.dim:
            parts.append(np.kron(RA.basis, np.eye(e, dtype=np.int64)))
        if RB.dim:
            parts.append(np.kron(np.eye(d, dtype=np.int64), RB.basis))
        if not parts:
            return Subspace.zero(p, d * e)
        return Subspace.span(np.vstack(parts), p, d * e)

    return StructureAlgebra(
        p,
        [f"{a}⊗{b}" for a in A.labels for b in B.labels],
        M,
        unit,
        idempotents=idem,
        idempotent_labels=labels,
        radical_hint=carried,
        provenance=f"{A.provenance}⊗{B.provenance}",
        meta={"kind": "tensor", "factors": (A, B)},
    )


# ---------------------------------------------------------------------------
# triangular matrix algebras

_T2_POSITIONS = ("11", "21", "22")
# E_rc E_r'c' = delta(c, r') E_rc'
_T2_PRODUCTS = {("11", "11"): "11", ("21", "11"): "21", ("22", "21"): "21", ("22", "22"): "22"}


def t2_of(A: StructureAlgebra) -> StructureAlgebra:
    """Lower triangular ``[[A, 0], [A, A]]``; basis ``b_i@11, b_i@21, b_i@22``."""
    d, p = A.dim, A.p
    n = 3 * d
    M = np.zeros((n, n, n), dtype=np.int64)
    off = {pos: k * d for k, pos in enumerate(_T2_POSITIONS)}
    for (x, y), z in _T2_PRODUCTS.items():
        M[off[x] : off[x] + d, off[y] : off[y] + d, off[z] : off[z] + d] = A.mult
    zero = np.zeros(d, dtype=np.int64)
    unit = np.concatenate([A.unit, zero, A.unit])
    base_idem = A.idempotents if A.idempotents is not None else [A.unit]
    base_lab = A.idempotent_labels if A.idempotent_labels is not None else ["1"]
    idem = [np.concatenate([e, zero, zero]) for e in base_idem] + [
        np.concatenate([zero, zero, e]) for e in base_idem
    ]
    idem_labels = [f"1:{v}" for v in base_lab] + [f"2:{v}" for v in base_lab]

    def carried():
        R = alg.radical(A)
        Z = np.zeros((R.dim, d), dtype=np.int64)
        rows = [np.hstack([R.basis, Z, Z]), np.hstack([Z, Z, R.basis])] if R.dim else []
        zd = np.zeros((d, d), dtype=np.int64)
        rows.append(np.hstack([zd, np.eye(d, dtype=np.int64), zd]))
        return Subspace.span(np.vstack(rows), p, n)

    return StructureAlgebra(
        p,
        [f"{lab}@{pos}" for pos in _T2_POSITIONS for lab in A.labels],
        M,
        unit,
        idempotents=idem,
        idempotent_labels=idem_labels,
        radical_hint=carried,
        provenance=f"T2({A.provenance})",
        meta={"kind": "t2", "base": A},
    )


def t2_iso_map(A: StructureAlgebra) -> "LinearAlgebraMap":
    """``a (x) [[u, 0], [v, w]] -> [[a u, 0], [a v, a w]]`` from ``A (x) T2(k)`` to ``T2(A)``."""
    k = t2_field(A.p)
    source = tensor_product(A, k)
    target = t2_of(A)
    d = A.dim
    F = np.zeros((3 * d, 3 * d), dtype=np.int64)
    # k's basis is 1@11, 1@21, 1@22, so source index i*3 + pos maps to pos*d + i
    for i in range(d):
        for pos in range(3):
            F[pos * d + i, i * 3 + pos] = 1
    return LinearAlgebraMap(source, target, F)


# ---------------------------------------------------------------------------
# small algebras


def field_algebra(p: int) -> StructureAlgebra:
    return StructureAlgebra(
        p, ["1"], np.ones((1, 1, 1), dtype=np.int64), [1], idempotents=[[1]], idempotent_labels=["1"],
        grading=[0], graded_radical=True, provenance=f"F{p}",
    )


def dual_numbers(p: int) -> StructureAlgebra:
    P = build_presentation(p, ["1"], [("x", "1", "1")], ["x*x = 0"], name="dual_numbers")
    return quotient_algebra(P)


def t2_field(p: int) -> StructureAlgebra:
    A = t2_of(field_algebra(p))
    A.provenance = "T2(k)"
    return A


def _is_power_of(n: int, p: int) -> bool:
    while n > 1 and n % p == 0:
        n //= p
    return n == 1


def group_algebra(G: GroupData, p: int, name: str = "") -> StructureAlgebra:
    """kG on the element basis; for p-groups carries the augmentation ideal as radical."""
    n = G.order
    M = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            M[i, j, G.table[i][j]] = 1
    unit = np.zeros(n, dtype=np.int64)
    unit[G.identity] = 1
    hint = idem = None
    if _is_power_of(n, p):
        aug = np.eye(n, dtype=np.int64)
        aug[:, G.identity] -= 1
        aug = np.delete(aug, G.identity, axis=0)
        hint = Subspace.span(aug, p, n) if aug.size else Subspace.zero(p, n)
        idem = [unit]
    return StructureAlgebra(
        p, list(G.labels), M, unit, idempotents=idem,
        idempotent_labels=["1"] if idem else None, radical_hint=hint,
        provenance=name or f"kG(order {n})", meta={"kind": "group", "group": G},
    )


def factory(kind: str, p: int = 2, **params) -> StructureAlgebra:
    """Named algebras: field, dual_numbers, cyclic_group, t2_field, t2_of, group_algebra."""
    if kind == "field":
        return field_algebra(p)
    if kind == "dual_numbers":
        return dual_numbers(p)
    if kind == "cyclic_group":
        n = int(params.get("order", p))
        return group_algebra(cyclic_group(n), p, name=f"kC{n}")
    if kind == "t2_field":
        return t2_field(p)
    if kind == "t2_of":
        return t2_of(params["algebra"])
    if kind == "group_algebra":
        G = params.get("group")
        if G is None:
            G = group_from_table(params["elements"], params["table"])
        return group_algebra(G, p, name=params.get("name", ""))
    raise ConstructionError(f"unknown algebra kind {kind!r}")


# ---------------------------------------------------------------------------
# center of the trivial extension


def bhz_center(A: StructureAlgebra) -> StructureAlgebra:
    """``Z(A) + Ann_{D(A)}(K(A))`` with ``(z, f)(z', f') = (zz', z.f' + f.z')``.

    The subspace is compared with the directly computed center of T(A) and a
    mismatch raises BHZMismatch.  The returned algebra carries ``subspace``
    and ``direct_center`` in its meta.
    """
    d, p = A.dim, A.p
    Z, _ = alg.center(A)
    Ann = annihilator_in_dual(A, alg.commutator_subspace(A))
    T = trivial_extension(A)
    rows = [np.concatenate([z, np.zeros(d, dtype=np.int64)]) for z in Z.basis]
    rows += [np.concatenate([np.zeros(d, dtype=np.int64), f]) for f in Ann.basis]
    U = ffla.span(rows, p, 2 * d)
    direct, _ = alg.center(T)
    if U != direct:
        raise BHZMismatch(
            f"formula center has dim {U.dim}, direct center of T({A.provenance}) has dim {direct.dim}"
        )
    basis = U.basis
    k = U.dim
    table = np.zeros((k, k, k), dtype=np.int64)
    for a in range(k):
        za, fa = basis[a, :d], basis[a, d:]
        for b in range(k):
            zb, fb = basis[b, :d], basis[b, d:]
            prod = alg.mult(A, za, zb)
            func = (left_dual_action(A, za, fb) + right_dual_action(A, fa, zb)) % p
            table[a, b] = U.coords(np.concatenate([prod, func]))
    return StructureAlgebra(
        p,
        [T.format(v) for v in basis],
        table,
        U.coords(T.unit),
        provenance=f"Z({A.provenance})⋉Ann",
        meta={"subspace": U, "direct_center": direct, "trivial_extension": T},
    )


# ---------------------------------------------------------------------------
# symmetrizing forms


def gram_matrix(A: StructureAlgebra, f) -> np.ndarray:
    """``G[i][j] = f(b_i b_j)``."""
    return np.tensordot(A.mult, np.asarray(f, dtype=np.int64), axes=(2, 0)) % A.p


def verify_symmetrizing_form(A: StructureAlgebra, f) -> bool:
    G = gram_matrix(A, f)
    return bool(np.array_equal(G, G.T) and ffla.rank(G, A.p) == A.dim)


def socle_dual_form(A: StructureAlgebra) -> np.ndarray:
    """Sum of the dual basis functionals at the pivots of the left socle."""
    R = alg.radical(A)
    if R.dim:
        L = np.vstack([alg.left_regular(A, r) for r in R.basis])
        soc = ffla.kernel(L, A.p)
    else:
        soc = Subspace.full(A.p, A.dim)
    f = np.zeros(A.dim, dtype=np.int64)
    f[list(soc.pivots)] = 1
    return f


def canonical_form(A: StructureAlgebra) -> np.ndarray:
    """Default symmetrizing candidate: f(1) on trivial extensions, else the socle dual."""
    if "symmetrizing_form" in A.meta:
        return A.meta["symmetrizing_form"]
    return socle_dual_form(A)


@dataclass
class FormSearch:
    form: np.ndarray | None
    exhaustive: bool
    attempts: int

    @property
    def status(self) -> str:
        if self.form is not None:
            return "found"
        return "none" if self.exhaustive else "inconclusive"


def find_symmetrizing_form(
    A: StructureAlgebra, budget: int = 2**20, trials: int = 512, seed: int = 0
) -> FormSearch:
    """Search the symmetric forms ``{f : f(K(A)) = 0}`` for a nondegenerate one.

    Enumerates completely when ``p**dim <= budget``; otherwise samples
    ``trials`` random candidates and can only report "inconclusive".
    """
    cand = annihilator_in_dual(A, alg.commutator_subspace(A))
    k, p = cand.dim, A.p
    if k == 0:
        return FormSearch(None, True, 0)
    if p**k <= budget:
        attempts = 0
        for coeffs in itertools.product(range(p), repeat=k):
            if not any(coeffs):
                continue
            attempts += 1
            f = ffla.matmul(np.array(coeffs, dtype=np.int64), cand.basis, p)
            if verify_symmetrizing_form(A, f):
                return FormSearch(f, True, attempts)
        return FormSearch(None, True, attempts)
    rng = np.random.default_rng(seed)
    for t in range(1, trials + 1):
        f = ffla.matmul(rng.integers(0, p, size=k), cand.basis, p)
        if verify_symmetrizing_form(A, f):
            return FormSearch(f, False, t)
    return FormSearch(None, False, trials)


# ---------------------------------------------------------------------------
# algebra maps


@dataclass
class LinearAlgebraMap:
    """Linear map between algebras; ``matrix`` sends source to target coordinates."""

    source: StructureAlgebra
    target: StructureAlgebra
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=np.int64) % self.source.p
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ffla.DimensionError(
                f"map matrix {self.matrix.shape} does not fit {self.source.dim} -> {self.target.dim}"
            )

    def __call__(self, x) -> np.ndarray:
        return ffla.matmul(self.matrix, np.asarray(x, dtype=np.int64), self.source.p)

    def inverse(self) -> "LinearAlgebraMap":
        return LinearAlgebraMap(self.target, self.source, ffla.inverse(self.matrix, self.source.p))


@dataclass
class MapCheck:
    ok: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_algebra_map(F: LinearAlgebraMap, bijective: bool = True) -> MapCheck:
    """Check ``F(1) = 1``, ``F(b_i b_j) = F(b_i) F(b_j)`` and invertibility."""
    A, B, p = F.source, F.target, F.source.p
    if A.p != B.p:
        return MapCheck(False, ("field", (A.p, B.p)))
    if not np.array_equal(F(A.unit), B.unit):
        return MapCheck(False, ("unit", None))
    images = F.matrix.T  # row i = F(b_i)
    lhs = np.tensordot(A.mult, F.matrix, axes=(2, 1)) % p  # F(b_i b_j)
    rhs = alg.products(B, images, images)
    bad = np.argwhere((lhs != rhs).any(axis=2))
    if bad.size:
        i, j = int(bad[0][0]), int(bad[0][1])
        return MapCheck(False, ("mult", (A.labels[i], A.labels[j])))
    if bijective:
        if A.dim != B.dim or ffla.rank(F.matrix, p) != A.dim:
            return MapCheck(False, ("bijective", ffla.rank(F.matrix, p)))
    return MapCheck(True)


def map_from_generators(
    A: StructureAlgebra, B: StructureAlgebra, arrows: dict[str, np.ndarray], vertices: dict | None = None
) -> LinearAlgebraMap:
    """Extend images of arrows (and vertex idempotents) multiplicatively over A's word basis.

    ``A`` must come from a presentation.  Vertex images default to B's unit
    for one-vertex quivers.
    """
    _same_field(A, B)
    words = A.meta["words"]
    Q = A.meta["quotient"].presentation.quiver
    if vertices is None:
        if len(Q.vertices) != 1:
            raise ConstructionError("vertex images are required for quivers with several vertices")
        vertices = {Q.vertices[0]: B.unit}
    cols = []
    for w in words:
        x = np.asarray(vertices[Q.vertices[w.target]], dtype=np.int64) % B.p
        for a in w.arrows:
            x = alg.mult(B, x, arrows[Q.arrows[a].name])
        if w.arrows:
            x = alg.mult(B, x, vertices[Q.vertices[w.source]])
        cols.append(x)
    return LinearAlgebraMap(A, B, np.array(cols, dtype=np.int64).T)


def prop15_map(A: StructureAlgebra, f) -> LinearAlgebraMap:
    """``a (x) 1 + b (x) x -> (a, b')`` with ``b'(y) = f(y b)``; no checks on f."""
    source = tensor_product(A, dual_numbers(A.p))
    target = trivial_extension(A)
    d = A.dim
    G = gram_matrix(A, f)  # G[k, i] = f(b_k b_i) = b_i'(b_k)
    F = np.zeros((2 * d, 2 * d), dtype=np.int64)
    for i in range(d):
        F[i, 2 * i] = 1
        F[d:, 2 * i + 1] = G[:, i]
    return LinearAlgebraMap(source, target, F)


def prop15_iso(A: StructureAlgebra, f=None) -> LinearAlgebraMap:
    """Isomorphism ``A (x) k[x]/(x^2) -> T(A)`` from a symmetrizing form, certified."""
    if f is None:
        f = canonical_form(A)
    if not verify_symmetrizing_form(A, f):
        raise NotSymmetrizing(f"form is not symmetrizing on {A.provenance}")
    F = prop15_map(A, f)
    check = verify_algebra_map(F)
    if not check:
        raise ConstructionError(f"constructed map is not an isomorphism: {check.witness}")
    return F
