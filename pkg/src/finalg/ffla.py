"""Exact linear algebra over prime fields F_p.

Matrices are numpy ``int64`` arrays with entries reduced to ``[0, p)``.  Every
subspace is stored in reduced row-echelon form, so two subspaces are equal
exactly when their canonical bases are identical.  For ``p = 2`` rows are
packed into Python integers and eliminated with XOR; the result is the same
canonical RREF as the generic path.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

# Entries are < p; sums of up to 2**15 products must fit in int64.
MAX_PRIME = 2**24


class FieldError(ValueError):
    """Raised for a non-prime or out-of-range characteristic."""


class DimensionError(ValueError):
    """Raised when ambient dimensions of operands do not match."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> int:
    p = int(p)
    if not is_prime(p) or p > MAX_PRIME:
        raise FieldError(f"characteristic must be a prime below 2**24, got {p}")
    return p


def as_mat(M, p: int) -> np.ndarray:
    """Return ``M`` as a fresh 2-d int64 array reduced mod ``p``."""
    A = np.array(M, dtype=np.int64, copy=True)
    if A.ndim == 1:
        A = A.reshape(1, -1)
    if A.ndim != 2:
        raise DimensionError(f"expected a matrix, got shape {A.shape}")
    return A % p


def inv_mod(a: int, p: int) -> int:
    return pow(int(a) % p, -1, p)


# ---------------------------------------------------------------------------
# GF(2) packed rows


def _pack_rows(A: np.ndarray) -> list[int]:
    if A.shape[1] == 0:
        return [0] * A.shape[0]
    packed = np.packbits(A.astype(np.uint8), axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def _unpack_rows(rows: Sequence[int], cols: int) -> np.ndarray:
    out = np.zeros((len(rows), cols), dtype=np.int64)
    nbytes = (cols + 7) // 8
    for i, r in enumerate(rows):
        if r:
            bits = np.unpackbits(
                np.frombuffer(r.to_bytes(nbytes, "little"), dtype=np.uint8),
                bitorder="little",
            )
            out[i] = bits[:cols]
    return out


def _rref_gf2(A: np.ndarray) -> tuple[int, np.ndarray, tuple[int, ...]]:
    nrows, cols = A.shape
    work = [r for r in _pack_rows(A) if r]
    pivots: list[int] = []
    reduced: list[int] = []
    for c in range(cols):
        if not work:
            break
        bit = 1 << c
        k = next((i for i, r in enumerate(work) if r & bit), None)
        if k is None:
            continue
        prow = work.pop(k)
        work = [r ^ prow if r & bit else r for r in work]
        work = [r for r in work if r]
        reduced = [r ^ prow if r & bit else r for r in reduced]
        reduced.append(prow)
        pivots.append(c)
    R = np.zeros((nrows, cols), dtype=np.int64)
    if reduced:
        R[: len(reduced)] = _unpack_rows(reduced, cols)
    return len(pivots), R, tuple(pivots)


def _rref_generic(A: np.ndarray, p: int) -> tuple[int, np.ndarray, tuple[int, ...]]:
    nrows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = inv_mod(A[r, c], p)
        if inv != 1:
            A[r] = (A[r] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] = (A[hit] - np.outer(col[hit], A[r])) % p
        pivots.append(c)
        r += 1
    return r, A, tuple(pivots)


def rref(M, p: int) -> tuple[int, np.ndarray, tuple[int, ...]]:
    """Reduced row-echelon form of ``M`` over F_p.

    Returns ``(rank, R, pivots)`` where ``R`` has the shape of ``M`` with the
    nonzero rows first and ``pivots`` lists the leading column of each of them.
    """
    A = as_mat(M, p)
    if A.size == 0:
        return 0, A, ()
    if p == 2:
        return _rref_gf2(A)
    return _rref_generic(A, p)


def rank(M, p: int) -> int:
    return rref(M, p)[0]


def kernel(M, p: int) -> "Subspace":
    """Right kernel ``{x : M x = 0}`` as a canonical subspace of F_p^cols."""
    A = as_mat(M, p)
    cols = A.shape[1]
    r, R, pivots = rref(A, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, pc in enumerate(pivots):
            basis[i, pc] = (-R[row, f]) % p
    return Subspace.span(basis, p, cols)


def left_kernel(M, p: int) -> "Subspace":
    """``{y : y M = 0}``."""
    return kernel(as_mat(M, p).T, p)


def inverse(M, p: int) -> np.ndarray:
    A = as_mat(M, p)
    n = A.shape[0]
    if A.shape != (n, n):
        raise DimensionError(f"inverse of non-square matrix {A.shape}")
    r, R, piv = rref(np.hstack([A, np.eye(n, dtype=np.int64)]), p)
    if piv[:n] != tuple(range(n)):
        raise np.linalg.LinAlgError("matrix is singular mod p")
    return R[:, n:]


def matmul(A, B, p: int) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64) % p
    B = np.asarray(B, dtype=np.int64) % p
    inner = A.shape[-1] if A.ndim else 1
    if inner * (p - 1) ** 2 < 2**53:
        # float64 products are exact here and use BLAS
        return (A.astype(np.float64) @ B.astype(np.float64)).astype(np.int64) % p
    return (A @ B) % p


class Subspace:
    """A subspace of F_p^n held by its canonical RREF basis.

    Immutable; ``==`` compares canonical bases, so any spanning set of the same
    space yields an equal object.
    """

    __slots__ = ("p", "ambient_dim", "basis", "pivots", "_pivset")

    def __init__(self, p: int, ambient_dim: int, basis: np.ndarray, pivots: tuple[int, ...]):
        self.p = p
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.basis.setflags(write=False)
        self.pivots = pivots
        self._pivset = frozenset(pivots)

    @classmethod
    def span(cls, vectors, p: int, ambient_dim: int | None = None) -> "Subspace":
        V = np.asarray(vectors, dtype=np.int64)
        if V.size == 0:
            if ambient_dim is None:
                ambient_dim = V.shape[-1] if V.ndim == 2 else 0
            return cls.zero(p, ambient_dim)
        V = as_mat(V, p)
        if ambient_dim is not None and V.shape[1] != ambient_dim:
            raise DimensionError(f"vectors of length {V.shape[1]} in ambient dim {ambient_dim}")
        r, R, piv = rref(V, p)
        return cls(p, V.shape[1], R[:r].copy(), piv)

    @classmethod
    def zero(cls, p: int, n: int) -> "Subspace":
        return cls(p, n, np.zeros((0, n), dtype=np.int64), ())

    @classmethod
    def full(cls, p: int, n: int) -> "Subspace":
        return cls(p, n, np.eye(n, dtype=np.int64), tuple(range(n)))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def __len__(self) -> int:
        return self.dim

    def __repr__(self) -> str:
        return f"Subspace(p={self.p}, dim={self.dim}, ambient={self.ambient_dim})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.p == other.p
            and self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.ambient_dim, self.pivots, self.basis.tobytes()))

    def _check(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim or self.p != other.p:
            raise DimensionError(
                f"ambient mismatch: F_{self.p}^{self.ambient_dim} vs F_{other.p}^{other.ambient_dim}"
            )

    def reduce(self, v) -> np.ndarray:
        """Normal form of ``v`` modulo the subspace (zero at every pivot)."""
        x = np.asarray(v, dtype=np.int64) % self.p
        if x.shape[-1] != self.ambient_dim:
            raise DimensionError(f"vector length {x.shape[-1]} != {self.ambient_dim}")
        if not self.pivots:
            return x.copy()
        c = x[..., list(self.pivots)]
        return (x - c @ self.basis) % self.p

    def __contains__(self, v) -> bool:
        return not self.reduce(v).any()

    def member(self, v) -> bool:
        return v in self

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        return not self.reduce(other.basis).any()

    def coords(self, v) -> np.ndarray:
        """Coordinates of ``v`` in the canonical basis; ``v`` must be a member."""
        x = np.asarray(v, dtype=np.int64) % self.p
        if self.reduce(x).any():
            raise ValueError("vector is not in the subspace")
        return x[..., list(self.pivots)]

    def complement_indices(self) -> list[int]:
        return [c for c in range(self.ambient_dim) if c not in self._pivset]

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(np.vstack([self.basis, other.basis]), self.p, self.ambient_dim)

    sum = __add__

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not self.dim or not other.dim:
            return Subspace.zero(self.p, self.ambient_dim)
        stacked = np.vstack([self.basis, other.basis])
        rel = left_kernel(stacked, self.p)
        if not rel.dim:
            return Subspace.zero(self.p, self.ambient_dim)
        vecs = matmul(rel.basis[:, : self.dim], self.basis, self.p)
        return Subspace.span(vecs, self.p, self.ambient_dim)

    __and__ = intersect

    def image(self, M) -> "Subspace":
        """Image under the linear map ``x -> M x``."""
        M = np.asarray(M, dtype=np.int64)
        if not self.dim:
            return Subspace.zero(self.p, M.shape[0])
        return Subspace.span(matmul(self.basis, M.T, self.p), self.p, M.shape[0])


def span(vectors: Iterable, p: int, ambient_dim: int) -> Subspace:
    vecs = list(vectors)
    if not vecs:
        return Subspace.zero(p, ambient_dim)
    return Subspace.span(np.vstack(vecs), p, ambient_dim)
