"""Integer-matrix invariants: p-rank, stable-center dimension and
unimodular congruence of 2x2 positive definite symmetric matrices."""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np

from . import algebra as alg
from . import ffla
from .algebra import StructureAlgebra


class IntInvError(ValueError):
    pass


class Unsupported(IntInvError):
    pass


def as_int_matrix(C) -> list[list[int]]:
    """Square matrix of Python ints (arbitrary precision)."""
    rows = [[int(x) for x in row] for row in C]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise IntInvError("matrix must be square")
    return rows


def p_rank(C, p: int) -> int:
    """Rank of C reduced mod p."""
    p = ffla.check_prime(p)
    rows = as_int_matrix(C)
    if not rows:
        return 0
    return ffla.rank([[x % p for x in r] for r in rows], p)


@dataclass(frozen=True)
class StableCenter:
    dim: int
    center_dim: int
    p_rank: int

    @property
    def projective_center_zero(self) -> bool:
        return self.p_rank == 0


def stable_center_dim(A: StructureAlgebra, form=None) -> StableCenter:
    """``dim Z(A) - p_rank(C_A)`` for a certified symmetric algebra A.

    ``form`` defaults to the algebra's canonical symmetrizing candidate and
    must pass verification.
    """
    from .constructions import canonical_form, verify_symmetrizing_form

    f = canonical_form(A) if form is None else form
    if not verify_symmetrizing_form(A, f):
        raise IntInvError(f"{A.provenance} is not certified symmetric by the given form")
    r = p_rank(alg.peirce_cartan(A), A.p)
    zd = alg.center(A)[0].dim
    return StableCenter(zd - r, zd, r)


# ---------------------------------------------------------------------------
# binary quadratic forms


@dataclass(frozen=True)
class BQForm:
    """``a x^2 + b x y + c y^2``."""

    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    @classmethod
    def from_matrix(cls, M) -> "BQForm":
        (a, d), (d2, c) = as_int_matrix(M)
        if d != d2:
            raise IntInvError("matrix is not symmetric")
        if not (a > 0 and a * c - d * d > 0):
            raise IntInvError("matrix is not positive definite")
        return cls(a, 2 * d, c)

    def is_reduced(self) -> bool:
        a, b, c = self.as_tuple()
        if not (abs(b) <= a <= c):
            return False
        return b >= 0 if (abs(b) == a or a == c) else True

    def reduce(self) -> "BQForm":
        """Gauss reduction of a positive definite form (proper equivalence)."""
        a, b, c = self.as_tuple()
        if a <= 0 or self.discriminant >= 0:
            raise IntInvError("reduction needs a positive definite form")
        while True:
            if c < a:
                a, b, c = c, -b, a  # (x, y) -> (-y, x)
                continue
            if abs(b) > a:
                # (x, y) -> (x - k y, y) brings b into (-a, a]
                k = _nearest_shift(a, b)
                c = a * k * k - b * k + c
                b = b - 2 * a * k
                continue
            break
        if b < 0 and (-b == a or a == c):
            b = -b
        return BQForm(a, b, c)


def _nearest_shift(a: int, b: int) -> int:
    # k with b - 2ak in (-a, a]
    return -((a - b) // (2 * a))


def reduced_form(M) -> BQForm:
    return BQForm.from_matrix(M).reduce()


@dataclass(frozen=True)
class Congruence:
    congruent: bool
    reduced: tuple[BQForm, BQForm]
    determinants: tuple[int, int]


def congruent_over_Z_2x2(M, N) -> Congruence:
    """Decide ``N = U^T M U`` for some ``U`` in GL_2(Z).

    Proper classes are separated by Gauss reduction; improper equivalence is
    covered by also reducing ``(a, -b, c)``.
    """
    Mi, Ni = as_int_matrix(M), as_int_matrix(N)
    if len(Mi) != 2 or len(Ni) != 2:
        raise Unsupported("congruence is only decided for 2x2 matrices")
    fm, fn = BQForm.from_matrix(Mi), BQForm.from_matrix(Ni)
    rm, rn = fm.reduce(), fn.reduce()
    rn_bar = BQForm(fn.a, -fn.b, fn.c).reduce()
    det = lambda X: X[0][0] * X[1][1] - X[0][1] * X[1][0]
    return Congruence(rm == rn or rm == rn_bar, (rm, rn), (det(Mi), det(Ni)))


def transform(M, U) -> list[list[int]]:
    """``U^T M U`` in exact integers."""
    Mi, Ui = as_int_matrix(M), as_int_matrix(U)
    n = len(Mi)
    MU = [[sum(Mi[i][k] * Ui[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return [[sum(Ui[k][i] * MU[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def random_unimodular(rng: np.random.Generator, steps: int = 6, bound: int = 3) -> list[list[int]]:
    """Product of random elementary and sign/swap matrices; determinant +-1."""
    U = [[1, 0], [0, 1]]
    for _ in range(steps):
        r = int(rng.integers(0, 3))
        if r == 0:
            k = int(rng.integers(-bound, bound + 1))
            E = [[1, k], [0, 1]]
        elif r == 1:
            k = int(rng.integers(-bound, bound + 1))
            E = [[1, 0], [k, 1]]
        else:
            E = [[0, 1], [1, 0]] if rng.integers(0, 2) else [[-1, 0], [0, 1]]
        U = [[sum(U[i][k] * E[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    return U
