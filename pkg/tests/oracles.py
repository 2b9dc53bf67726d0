"""Independent oracles shared by the test modules."""

from __future__ import annotations

import numpy as np


def _paths(arrows, max_len):
    """All composable words (tuples of names, written order) up to max_len."""
    out = {0: [()]}
    ends = {a: (s, t) for a, s, t in arrows}
    for n in range(1, max_len + 1):
        out[n] = []
        for w in out[n - 1]:
            for a, s, t in arrows:
                # a*w: w acts first, so a's source must be w's target
                if not w or s == ends[w[0]][1]:
                    out[n].append((a,) + w)
    return out


def rewriting_dimension(vertices, arrows, binomials, monomials, max_len=6):
    """dim kQ/I for homogeneous relations u = v and m = 0, counted by union-find.

    Over any field the quotient by differences of paths and by monomials has a
    basis of the congruence classes that meet no monomial multiple.
    """
    layers = _paths(arrows, max_len)
    ends = {a: (s, t) for a, s, t in arrows}

    def src(w):
        return ends[w[-1]][0]

    def tgt(w):
        return ends[w[0]][1]

    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def contexts(w, n):
        for left_len in range(n - len(w) + 1):
            for x in layers[left_len]:
                for y in layers[n - len(w) - left_len]:
                    word = x + w + y
                    if _composable(word, ends):
                        yield x, y

    zero = set()
    for n in range(2, max_len + 1):
        for u, v in binomials:
            if len(u) > n:
                continue
            for x, y in contexts(u, n):
                a, b = x + u + y, x + v + y
                if _composable(b, ends):
                    parent[find(a)] = find(b)
        for m in monomials:
            if len(m) <= n:
                for x, y in contexts(m, n):
                    zero.add(x + m + y)
    dead = {find(z) for z in zero}
    total = len(vertices)
    for n in range(1, max_len + 1):
        classes = {find(w) for w in layers[n]}
        total += len(classes - dead)
    return total, {n: len({find(w) for w in layers[n]} - dead) for n in range(1, max_len + 1)}


def _composable(word, ends):
    return all(ends[word[i + 1]][1] == ends[word[i]][0] for i in range(len(word) - 1))


def _w(text):
    return tuple(text.split("*"))


def word_tuple(text):
    return tuple(text.split("*"))


GAMMA_BINOMIALS = [
    (word_tuple("s2*s1"), word_tuple("s4*s3")),
    (word_tuple("s2*s1*s2*s1"), word_tuple("s1*s2*s1*s2")),
    (word_tuple("s1*s2*s1*s2"), word_tuple("s4*s3*s4*s3")),
    (word_tuple("s4*s3*s4*s3"), word_tuple("s1*s4*s3*s2")),
]
GAMMA_MONOMIALS = [word_tuple(m) for m in ["s1*s1", "s2*s2", "s3*s1", "s2*s4", "s3*s2*s1*s2"]]
GAMMA_EXTRA_MONOMIALS = [word_tuple("s1*s2*s1*s4"), word_tuple("s3*s2*s1*s4")]


def brute_rank(M, p):
    """Rank from the size of the row span, enumerated vector by vector."""
    rows = [tuple(int(x) for x in r) for r in np.asarray(M)]
    n = len(rows[0]) if rows else 0
    span = {tuple([0] * n)}
    for r in rows:
        span = {tuple((a + k * b) % p for a, b in zip(v, r)) for v in span for k in range(p)}
    size, rank = len(span), 0
    while p**rank < size:
        rank += 1
    return rank
