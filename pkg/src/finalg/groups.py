"""Finite groups given by multiplication tables."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class GroupData:
    labels: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]  # table[i][j] = index of g_i g_j
    identity: int
    inverse: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)


def group_from_table(labels: Sequence[str], table: Sequence[Sequence]) -> GroupData:
    """Validate a Cayley table (entries are indices or labels) and wrap it."""
    labels = tuple(str(x) for x in labels)
    n = len(labels)
    if len(set(labels)) != n:
        raise GroupError("group element labels must be unique")
    lookup = {lab: i for i, lab in enumerate(labels)}
    rows = []
    if len(table) != n:
        raise GroupError("table must be n x n")
    for row in table:
        if len(row) != n:
            raise GroupError("table must be n x n")
        out = []
        for x in row:
            if isinstance(x, str):
                if x not in lookup:
                    raise GroupError(f"table entry {x!r} is not an element")
                out.append(lookup[x])
            else:
                x = int(x)
                if not 0 <= x < n:
                    raise GroupError(f"table entry {x} out of range")
                out.append(x)
        rows.append(tuple(out))
    T = tuple(rows)
    ids = [e for e in range(n) if all(T[e][g] == g and T[g][e] == g for g in range(n))]
    if not ids:
        raise GroupError("table has no identity element")
    e = ids[0]
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if T[T[a][b]][c] != T[a][T[b][c]]:
                    raise GroupError(f"table is not associative at ({labels[a]}, {labels[b]}, {labels[c]})")
    inv = []
    for a in range(n):
        cands = [b for b in range(n) if T[a][b] == e and T[b][a] == e]
        if not cands:
            raise GroupError(f"element {labels[a]} has no inverse")
        inv.append(cands[0])
    return GroupData(labels, T, e, tuple(inv))


def permutation_group(generators: dict[str, Sequence[int]]) -> GroupData:
    """Group generated by permutations, elements labelled by shortlex words."""
    names = list(generators)
    gens = [tuple(generators[g]) for g in names]
    degree = len(gens[0])
    ident = tuple(range(degree))

    def compose(a, b):  # a after b
        return tuple(a[b[i]] for i in range(degree))

    words = {ident: "1"}
    frontier = [ident]
    while frontier:
        nxt = []
        for perm in frontier:
            for name, g in zip(names, gens):
                q = compose(perm, g)
                if q not in words:
                    base = words[perm]
                    words[q] = name if base == "1" else base + name
                    nxt.append(q)
        frontier = nxt
    perms = list(words)
    labels = [words[q] for q in perms]
    index = {q: i for i, q in enumerate(perms)}
    table = [[index[compose(a, b)] for b in perms] for a in perms]
    return group_from_table(labels, table)


def dihedral_group_8() -> GroupData:
    """D8 as symmetries of a square, generated by two reflections s and t."""
    s = [0, 3, 2, 1]  # i -> -i mod 4
    t = [1, 0, 3, 2]  # i -> 1 - i mod 4
    return permutation_group({"s": s, "t": t})


def cyclic_group(n: int) -> GroupData:
    labels = ["1"] + [f"g^{k}" if k > 1 else "g" for k in range(1, n)]
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return group_from_table(labels, table)
