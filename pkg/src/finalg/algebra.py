"""Structure-constant algebras over F_p and their internal invariants.

An algebra of dimension ``d`` is a multiplication tensor ``mult`` of shape
``(d, d, d)`` with ``mult[i, j]`` the coordinates of ``b_i b_j``.  Cartan
matrices follow one convention throughout: ``C[i][j] = dim e_i A e_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import ffla
from .ffla import Subspace

# Full associativity scans cost dim**4; above this they are skipped by default.
VALIDATE_LIMIT = 64


class AlgebraError(ValueError):
    pass


class ClosureError(AlgebraError):
    """A subspace expected to be a subalgebra or ideal is not closed."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class RadicalError(AlgebraError):
    """No radical strategy applies, or a strategy produced an invalid ideal."""


class NonBasicError(AlgebraError):
    """A Peirce block of A/rad A has dimension other than one."""


class StructureAlgebra:
    """Finite-dimensional associative algebra given by structure constants.

    Args:
        p: field characteristic.
        labels: one label per basis element.
        mult: tensor with ``mult[i, j]`` = coordinates of ``b_i b_j``.
        unit: coordinates of the identity.
        idempotents: optional complete list of orthogonal idempotents.
        idempotent_labels: names for the idempotents (vertex names, ...).
        grading: optional path length of every basis element.
        graded_radical: the positive-grading basis elements span rad A
            (true for quotients of path algebras by admissible ideals).
        radical_hint: construction-carried radical, a Subspace or a
            zero-argument callable returning one.
        provenance: free-form construction tag.
        meta: construction data (reducers, base algebras, group data, ...).
    """

    def __init__(
        self,
        p: int,
        labels: Sequence[str],
        mult,
        unit,
        idempotents=None,
        idempotent_labels: Sequence[str] | None = None,
        grading: Sequence[int] | None = None,
        graded_radical: bool = False,
        radical_hint: Subspace | Callable[[], Subspace] | None = None,
        provenance: str = "",
        meta: dict | None = None,
    ):
        self.p = ffla.check_prime(p)
        self.labels = list(labels)
        d = len(self.labels)
        self.mult = np.asarray(mult, dtype=np.int64) % self.p
        if self.mult.shape != (d, d, d):
            raise AlgebraError(f"multiplication tensor has shape {self.mult.shape}, expected {(d, d, d)}")
        self.mult.setflags(write=False)
        self.unit = np.asarray(unit, dtype=np.int64) % self.p
        if self.unit.shape != (d,):
            raise AlgebraError("unit has wrong length")
        self.idempotents = None
        if idempotents is not None:
            self.idempotents = [np.asarray(e, dtype=np.int64) % self.p for e in idempotents]
        if idempotent_labels is None and self.idempotents is not None:
            idempotent_labels = [str(i + 1) for i in range(len(self.idempotents))]
        self.idempotent_labels = list(idempotent_labels) if idempotent_labels is not None else None
        self.grading = list(grading) if grading is not None else None
        self.graded_radical = graded_radical and self.grading is not None
        self._radical_hint = radical_hint
        self.provenance = provenance
        self.meta = dict(meta or {})
        self._cache: dict = {}
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"<StructureAlgebra {self.provenance or '?'} dim={self.dim} over F_{self.p}>"

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown basis label {label!r}") from None

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def element(self, terms: dict[str, int] | str) -> np.ndarray:
        """Coordinates from a ``{label: coefficient}`` mapping or a single label."""
        if isinstance(terms, str):
            terms = {terms: 1}
        v = np.zeros(self.dim, dtype=np.int64)
        for lab, c in terms.items():
            v[self.index(lab)] += c
        return v % self.p

    def format(self, x) -> str:
        x = np.asarray(x, dtype=np.int64) % self.p
        parts = []
        for i in np.flatnonzero(x):
            c = int(x[i])
            parts.append(self.labels[i] if c == 1 else f"{c}*{self.labels[i]}")
        return " + ".join(parts) if parts else "0"

    def radical_hint(self) -> Subspace | None:
        h = self._radical_hint
        if callable(h):
            h = h()
            self._radical_hint = h
        return h

    @property
    def has_radical_hint(self) -> bool:
        return self._radical_hint is not None


# ---------------------------------------------------------------------------
# multiplication


def _vec(A: StructureAlgebra, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.int64)
    if x.shape[-1] != A.dim:
        raise ffla.DimensionError(f"element of length {x.shape[-1]} in algebra of dim {A.dim}")
    return x % A.p


def mult(A: StructureAlgebra, x, y) -> np.ndarray:
    x, y = _vec(A, x), _vec(A, y)
    t = np.tensordot(x, A.mult, axes=(0, 0)) % A.p
    return (y @ t) % A.p


def products(A: StructureAlgebra, X, Y) -> np.ndarray:
    """All products ``x_a y_b`` for rows of X and Y, shape ``(len X, len Y, dim)``."""
    X = np.atleast_2d(_vec(A, X))
    Y = np.atleast_2d(_vec(A, Y))
    T = np.tensordot(X, A.mult, axes=(1, 0)) % A.p  # (a, j, k)
    return np.einsum("ajk,bj->abk", T, Y) % A.p


def left_regular(A: StructureAlgebra, x) -> np.ndarray:
    """Matrix of ``y -> x y`` acting on coordinate columns."""
    x = _vec(A, x)
    nz = np.flatnonzero(x)  # sparse elements (idempotents, basis vectors) are the common case
    return (np.tensordot(x[nz], A.mult[nz], axes=(0, 0)) % A.p).T.copy()


def right_regular(A: StructureAlgebra, x) -> np.ndarray:
    """Matrix of ``y -> y x``."""
    x = _vec(A, x)
    nz = np.flatnonzero(x)
    return (np.tensordot(A.mult[:, nz], x[nz], axes=(1, 0)) % A.p).T.copy()


def power(A: StructureAlgebra, x, n: int) -> np.ndarray:
    result = A.unit.copy()
    base = _vec(A, x)
    while n:
        if n & 1:
            result = mult(A, result, base)
        n >>= 1
        if n:
            base = mult(A, base, base)
    return result


def products_span(A: StructureAlgebra, U: Subspace, W: Subspace) -> Subspace:
    if not U.dim or not W.dim:
        return Subspace.zero(A.p, A.dim)
    P = products(A, U.basis, W.basis).reshape(-1, A.dim)
    return Subspace.span(P, A.p, A.dim)


def ideal_generated(A: StructureAlgebra, U: Subspace) -> Subspace:
    """Smallest two-sided ideal containing ``U``."""
    basis = np.eye(A.dim, dtype=np.int64)
    current = U
    while True:
        if not current.dim:
            return current
        left = products(A, basis, current.basis).reshape(-1, A.dim)
        right = products(A, current.basis, basis).reshape(-1, A.dim)
        nxt = Subspace.span(np.vstack([current.basis, left, right]), A.p, A.dim)
        if nxt.dim == current.dim:
            return current
        current = nxt


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    ok: bool
    failures: list[str] = field(default_factory=list)
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate(A: StructureAlgebra, full: bool | None = None) -> ValidationReport:
    """Check associativity, the unit, and any carried idempotents.

    Associativity is scanned over all basis triples unless ``full`` is False
    (default: only for dim <= VALIDATE_LIMIT).  The result is cached.
    """
    if full is None:
        full = A.dim <= VALIDATE_LIMIT
    key = ("validate", full)
    if key in A._cache:
        return A._cache[key]
    p, d, M = A.p, A.dim, A.mult
    failures: list[str] = []
    witness = None
    if full:
        for i in range(d):
            # (b_i b_j) b_k = sum_m M[i,j,m] M[m,k,:]
            lhs = np.tensordot(M[i], M, axes=(1, 0)) % p
            # b_i (b_j b_k) = sum_m M[j,k,m] M[i,m,:]
            rhs = np.tensordot(M, M[i], axes=(2, 0)) % p
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                j, k = int(bad[0][0]), int(bad[0][1])
                failures.append(f"associativity fails at ({A.labels[i]}, {A.labels[j]}, {A.labels[k]})")
                witness = ("associativity", (i, j, k))
                break
    L = left_regular(A, A.unit)
    R = right_regular(A, A.unit)
    eye = np.eye(d, dtype=np.int64)
    if not (np.array_equal(L, eye) and np.array_equal(R, eye)):
        bad = np.argwhere((L != eye) | (R != eye))
        j = int(bad[0][1])
        failures.append(f"unit is not two-sided on {A.labels[j]}")
        witness = witness or ("unit", j)
    if A.idempotents is not None:
        E = A.idempotents
        total = np.sum(E, axis=0) % p if E else np.zeros(d, dtype=np.int64)
        if not np.array_equal(total, A.unit):
            failures.append("idempotents do not sum to the unit")
            witness = witness or ("idempotent_sum", None)
        for a, ea in enumerate(E):
            for b, eb in enumerate(E):
                prod = mult(A, ea, eb)
                want = ea if a == b else np.zeros(d, dtype=np.int64)
                if not np.array_equal(prod, want):
                    failures.append(f"idempotents {a}, {b} are not orthogonal idempotents")
                    witness = witness or ("idempotent", (a, b))
    report = ValidationReport(not failures, failures, witness)
    A._cache[key] = report
    return report


# ---------------------------------------------------------------------------
# center, commutators, subalgebras


def commutation_matrix(A: StructureAlgebra) -> np.ndarray:
    """Stacked matrices of ``z -> z b_i - b_i z`` for every basis element."""
    M = A.mult
    # (z b_i)[k] = sum_j z_j M[j, i, k];  (b_i z)[k] = sum_j z_j M[i, j, k]
    diff = (M.transpose(1, 2, 0) - M.transpose(0, 2, 1)) % A.p  # [i, k, j]
    return diff.reshape(A.dim * A.dim, A.dim)


def center(A: StructureAlgebra) -> tuple[Subspace, StructureAlgebra]:
    """Center as a canonical subspace together with its own algebra structure."""
    if "center" in A._cache:
        return A._cache["center"]
    Z = ffla.kernel(commutation_matrix(A), A.p)

    def carried():
        return radical(A).intersect(Z).image(_pivot_projection(Z))

    Zalg = subalgebra(A, Z, provenance=f"Z({A.provenance})", radical_hint=carried)
    A._cache["center"] = (Z, Zalg)
    return Z, Zalg


def _pivot_projection(U: Subspace) -> np.ndarray:
    P = np.zeros((U.dim, U.ambient_dim), dtype=np.int64)
    for r, c in enumerate(U.pivots):
        P[r, c] = 1
    return P


def commutator_subspace(A: StructureAlgebra) -> Subspace:
    if "commutators" not in A._cache:
        C = ((A.mult - A.mult.transpose(1, 0, 2)) % A.p).reshape(-1, A.dim)
        C = np.unique(C[C.any(axis=1)], axis=0)
        A._cache["commutators"] = Subspace.span(C, A.p, A.dim)
    return A._cache["commutators"]


def is_commutative(A: StructureAlgebra) -> bool:
    return bool(np.array_equal(A.mult, A.mult.transpose(1, 0, 2)))


def subalgebra(
    A: StructureAlgebra,
    U: Subspace,
    provenance: str | None = None,
    radical_hint=None,
) -> StructureAlgebra:
    """Algebra structure on a multiplicatively closed subspace containing 1."""
    if U.ambient_dim != A.dim or U.p != A.p:
        raise ffla.DimensionError("subspace does not live in this algebra")
    if A.unit not in U:
        raise ClosureError("subspace does not contain the unit", witness=("unit", None))
    P = products(A, U.basis, U.basis)
    k = U.dim
    table = np.zeros((k, k, k), dtype=np.int64)
    for a in range(k):
        red = U.reduce(P[a])
        bad = np.flatnonzero(red.any(axis=1))
        if bad.size:
            b = int(bad[0])
            raise ClosureError(
                f"product ({A.format(U.basis[a])})*({A.format(U.basis[b])}) leaves the subspace",
                witness=("product", (a, b)),
            )
        table[a] = P[a][:, list(U.pivots)]
    labels = [A.format(v) for v in U.basis]
    unit = U.coords(A.unit)
    return StructureAlgebra(
        A.p,
        labels,
        table,
        unit,
        radical_hint=radical_hint,
        provenance=provenance or f"sub({A.provenance})",
        meta={"parent": A, "embedding": U.basis},
    )


def quotient_by_ideal(A: StructureAlgebra, I: Subspace) -> tuple[StructureAlgebra, list[int]]:
    """``A/I`` on the coordinate complement of I's pivots.

    Returns the quotient and the list of A-coordinates used as its basis.
    """
    keep = I.complement_indices()
    k = len(keep)
    sub = A.mult[np.ix_(keep, keep)]  # (k, k, d)
    red = I.reduce(sub.reshape(-1, A.dim)).reshape(k, k, A.dim)
    table = red[:, :, keep]
    unit = I.reduce(A.unit)[keep]
    Q = StructureAlgebra(
        A.p, [A.labels[i] for i in keep], table, unit, provenance=f"{A.provenance}/I"
    )
    return Q, keep


# ---------------------------------------------------------------------------
# radical


def frobenius_matrix(A: StructureAlgebra) -> np.ndarray:
    """Matrix of ``x -> x^p``; linear over F_p when A is commutative."""
    cols = [power(A, A.basis_vector(i), A.p) for i in range(A.dim)]
    return np.array(cols, dtype=np.int64).T.reshape(A.dim, A.dim)


def _nilradical_commutative(A: StructureAlgebra) -> Subspace:
    if A.dim == 0:
        return Subspace.zero(A.p, 0)
    m = 0
    while A.p**m < A.dim:
        m += 1
    m = max(m, 1)
    F = frobenius_matrix(A)
    Fm = np.eye(A.dim, dtype=np.int64)
    for _ in range(m):
        Fm = ffla.matmul(F, Fm, A.p)
    return ffla.kernel(Fm, A.p)


def _split_basic_radical(A: StructureAlgebra) -> Subspace:
    # Valid when A/rad A is commutative: then K(A) generates an ideal inside
    # rad A and rad A is the preimage of the nilradical of A/<K(A)>.
    I = ideal_generated(A, commutator_subspace(A))
    Q, keep = quotient_by_ideal(A, I)
    N = _nilradical_commutative(Q)
    lifted = np.zeros((N.dim, A.dim), dtype=np.int64)
    lifted[:, keep] = N.basis
    return I + Subspace.span(lifted, A.p, A.dim) if N.dim else I


def radical_strategies(A: StructureAlgebra) -> list[str]:
    """Names of the radical strategies that apply to A, in preference order."""
    out = []
    if A.graded_radical:
        out.append("graded")
    if is_commutative(A):
        out.append("commutative")
    if A.has_radical_hint:
        out.append("carried")
    out.append("split_basic")
    return out


def _is_two_sided_ideal(A: StructureAlgebra, R: Subspace) -> bool:
    if not R.dim:
        return True
    basis = np.eye(A.dim, dtype=np.int64)
    left = products(A, basis, R.basis).reshape(-1, A.dim)
    right = products(A, R.basis, basis).reshape(-1, A.dim)
    return not R.reduce(left).any() and not R.reduce(right).any()


def _nilpotency_index(A: StructureAlgebra, R: Subspace) -> int | None:
    """Smallest n with R^n = 0, or None if R is not nilpotent."""
    cur, n = R, 1
    while cur.dim:
        nxt = products_span(A, cur, R)
        if nxt.dim == cur.dim:
            return None
        cur, n = nxt, n + 1
    return n if R.dim else 0


def radical(A: StructureAlgebra, strategy: str | None = None, check: bool | None = None) -> Subspace:
    """Jacobson radical via the first applicable strategy (or the named one).

    Strategies: ``graded`` (positive-length words of a presented algebra),
    ``commutative`` (kernel of an iterated Frobenius), ``carried`` (supplied
    by the constructing operation), ``split_basic`` (preimage of the
    nilradical of A modulo the ideal generated by commutators; valid when
    A/rad A is commutative and certified by the nilpotency check).
    """
    available = radical_strategies(A)
    if strategy is None:
        strategy = available[0]
    elif strategy not in available:
        raise RadicalError(f"radical strategy {strategy!r} does not apply to {A.provenance}")
    key = ("radical", strategy)
    if key in A._cache:
        return A._cache[key]
    if strategy == "graded":
        vecs = [A.basis_vector(i) for i, g in enumerate(A.grading) if g > 0]
        R = ffla.span(vecs, A.p, A.dim)
    elif strategy == "commutative":
        R = _nilradical_commutative(A)
    elif strategy == "carried":
        R = A.radical_hint()
    else:
        R = _split_basic_radical(A)
    if check is None:
        check = A.dim <= VALIDATE_LIMIT or strategy == "split_basic"
    if check:
        if not _is_two_sided_ideal(A, R):
            raise RadicalError(f"{strategy} radical of {A.provenance} is not an ideal")
        if _nilpotency_index(A, R) is None:
            raise RadicalError(f"{strategy} radical of {A.provenance} is not nilpotent")
    A._cache[key] = R
    return R


def radical_powers(A: StructureAlgebra) -> list[Subspace]:
    """``[rad^1, rad^2, ..., 0]``."""
    R = radical(A)
    out = [R]
    while out[-1].dim:
        nxt = products_span(A, out[-1], R)
        if nxt.dim == out[-1].dim:
            raise RadicalError("radical is not nilpotent")
        out.append(nxt)
    return out


def loewy_layers(A: StructureAlgebra) -> list[int]:
    """Dimensions of ``rad^i A / rad^(i+1) A`` for the regular module."""
    dims = [A.dim] + [R.dim for R in radical_powers(A)]
    return [a - b for a, b in zip(dims, dims[1:])]


@dataclass(frozen=True)
class Predicates:
    is_local: bool
    is_commutative: bool
    rad_square_zero: bool


def predicates(A: StructureAlgebra) -> Predicates:
    R = radical(A)
    return Predicates(
        is_local=A.dim - R.dim == 1,
        is_commutative=is_commutative(A),
        rad_square_zero=products_span(A, R, R).dim == 0,
    )


# ---------------------------------------------------------------------------
# Peirce and Cartan data


def peirce_map(A: StructureAlgebra, e, f) -> np.ndarray:
    """Matrix of ``x -> e x f``."""
    return ffla.matmul(left_regular(A, e), right_regular(A, f), A.p)


def peirce_cartan(A: StructureAlgebra) -> list[list[int]]:
    """Cartan matrix ``C[i][j] = dim e_i A e_j`` from the carried idempotents.

    Raises NonBasicError if some ``e_i (A/rad A) e_i`` is not one-dimensional:
    local endomorphism rings with one-dimensional tops are needed for the
    dimension count to be a Cartan matrix over F_p.
    """
    if "cartan" in A._cache:
        return A._cache["cartan"]
    if not A.idempotents:
        raise AlgebraError(f"{A.provenance} carries no idempotents")
    R = radical(A)
    E = A.idempotents
    n = len(E)
    C = [[0] * n for _ in range(n)]
    Ls = [left_regular(A, e) for e in E]
    Rs = [right_regular(A, e) for e in E]
    for i in range(n):
        for j in range(n):
            P = ffla.matmul(Ls[i], Rs[j], A.p)
            C[i][j] = ffla.rank(P, A.p)
            if i == j:
                top = C[i][i] - (R.image(P).dim if R.dim else 0)
                if top != 1:
                    raise NonBasicError(
                        f"Peirce block e_{i} (A/rad A) e_{i} of {A.provenance} has dimension {top}"
                    )
    A._cache["cartan"] = C
    return C
