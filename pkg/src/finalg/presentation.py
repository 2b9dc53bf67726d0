"""Quivers with relations and their finite-dimensional quotients.

Composition is right to left: in the word ``a*b`` the arrow ``b`` acts first,
so ``a*b`` is defined when ``source(a) == target(b)`` and runs from
``source(b)`` to ``target(a)``.  Read left to right instead, the printed
relation ``(t1 t2)^2 = t4 t3`` of the two-vertex examples would equate a loop
with a path between different vertices; right to left every printed relation
is uniform, and the parser rejects non-uniform relations outright.

The quotient kQ/I is computed by linear closure inside a truncation
kQ/J^(N+1): the relations are saturated under left and right multiplication
by arrows, and the bound N is accepted only once every path of length N lies
in the saturated ideal.  Surviving basis words are the smallest in the order
(length, then arrow declaration order).
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from . import ffla
from .algebra import StructureAlgebra
from .ffla import Subspace

DEFAULT_BOUND_CEILING = 12
CEILING_ENV = "FINALG_BOUND_CEILING"

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*$")


class PresentationError(ValueError):
    pass


class BoundCeilingError(PresentationError):
    """The arrow ideal did not become nilpotent below the configured ceiling."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def vertex_index(self, v: str) -> int:
        try:
            return self.vertices.index(str(v))
        except ValueError:
            raise PresentationError(f"unknown vertex {v!r}") from None

    def arrow_index(self, name: str) -> int:
        for i, a in enumerate(self.arrows):
            if a.name == name:
                return i
        raise PresentationError(f"unknown arrow name {name!r}")


class Path(NamedTuple):
    """A path; ``arrows`` are arrow indices in written (left to right) order."""

    arrows: tuple[int, ...]
    source: int
    target: int

    @property
    def length(self) -> int:
        return len(self.arrows)

    def key(self) -> tuple:
        return (len(self.arrows), self.arrows, self.source)


def compose(u: Path, v: Path) -> Path | None:
    """``u*v`` (v first), or None when the endpoints do not match."""
    if u.source != v.target:
        return None
    return Path(u.arrows + v.arrows, v.source, u.target)


def path_label(Q: Quiver, w: Path) -> str:
    if not w.arrows:
        return f"e_{Q.vertices[w.source]}"
    return "*".join(Q.arrows[a].name for a in w.arrows)


@dataclass
class Relation:
    terms: list[tuple[int, Path]]
    text: str = ""

    @property
    def source(self) -> int:
        return self.terms[0][1].source

    @property
    def target(self) -> int:
        return self.terms[0][1].target


@dataclass
class Presentation:
    p: int
    quiver: Quiver
    relations: list[Relation]
    bound: int | None = None
    name: str = ""
    relation_text: list[str] = field(default_factory=list)


# ---------------------------------------------------------------------------
# parsing


def _idempotent_path(Q: Quiver, token: str) -> Path | None:
    if token.startswith("e_"):
        v = token[2:]
        if v in Q.vertices and not any(a.name == token for a in Q.arrows):
            i = Q.vertices.index(v)
            return Path((), i, i)
    return None


def parse_word(Q: Quiver, word: str, strict: bool = True) -> Path | None:
    """Parse ``name*name*...`` or ``e_v``.

    Unknown names always raise.  A non-composable word raises when ``strict``
    and otherwise yields None (it is zero in the path algebra).
    """
    word = word.strip()
    idem = _idempotent_path(Q, word)
    if idem is not None:
        return idem
    names = [t.strip() for t in word.split("*")]
    if not names or any(not t for t in names):
        raise PresentationError(f"malformed word {word!r}")
    path: Path | None = None
    for name in reversed(names):
        e = _idempotent_path(Q, name)
        if e is not None:
            step = e
        else:
            if not _NAME.match(name):
                raise PresentationError(f"malformed arrow name {name!r} in {word!r}")
            a = Q.arrow_index(name)
            step = Path((a,), Q.arrows[a].source, Q.arrows[a].target)
        if path is None:
            path = step
            continue
        nxt = compose(step, path)
        if nxt is None:
            if strict:
                prev = path_label(Q, path).split("*")[0]
                raise PresentationError(
                    f"non-composable word {word!r}: {name!r} cannot follow {prev!r} "
                    f"(right-to-left composition)"
                )
            return None
        path = nxt
    return path


_TERM = re.compile(r"^\s*(\d+)?\s*(\*)?\s*(.*?)\s*$")


def parse_expr(Q: Quiver, expr: str, p: int, strict: bool = True) -> list[tuple[int, Path]]:
    """Parse ``term (('+'|'-') term)*`` into ``(coefficient, path)`` pairs mod p."""
    text = expr.strip()
    if not text:
        raise PresentationError("empty expression")
    pieces: list[tuple[int, str]] = []
    sign, buf = 1, ""
    for ch in text:
        if ch in "+-":
            if buf.strip():
                pieces.append((sign, buf))
            elif pieces:
                raise PresentationError(f"dangling operator in {expr!r}")
            buf = ""
            sign = 1 if ch == "+" else -1
        else:
            buf += ch
    if not buf.strip():
        raise PresentationError(f"dangling operator in {expr!r}")
    pieces.append((sign, buf))
    terms: dict[Path, int] = {}
    for sgn, piece in pieces:
        m = _TERM.match(piece)
        coeff_txt, star, word = m.group(1), m.group(2), m.group(3)
        coeff = int(coeff_txt) if coeff_txt else 1
        if not word:
            if coeff_txt and coeff % p == 0:
                continue
            raise PresentationError(f"scalar term {piece.strip()!r} is not a path")
        if star and not coeff_txt:
            raise PresentationError(f"malformed term {piece!r}")
        path = parse_word(Q, word, strict=strict)
        if path is None:
            continue
        terms[path] = (terms.get(path, 0) + sgn * coeff) % p
    return [(c, w) for w, c in terms.items() if c]


def parse_relation(Q: Quiver, text: str, p: int) -> list[Relation]:
    """Expand ``X = Y = Z`` into the relations ``X - Y`` and ``Y - Z``.

    A chain with a zero member, ``X = Y = 0``, means every member is zero and
    yields ``X`` and ``Y`` separately (the same ideal; members may then have
    different endpoints).
    """
    sides = [parse_expr(Q, s, p) for s in text.split("=")]
    if len(sides) == 1:
        sides.append([])
    if any(not s for s in sides):
        pairs = [(s, []) for s in sides if s]
    else:
        pairs = list(zip(sides, sides[1:]))
    out = []
    for lhs, rhs in pairs:
        terms: dict[Path, int] = {}
        for c, w in lhs:
            terms[w] = (terms.get(w, 0) + c) % p
        for c, w in rhs:
            terms[w] = (terms.get(w, 0) - c) % p
        clean = [(c, w) for w, c in terms.items() if c]
        if not clean:
            continue
        ends = {(w.source, w.target) for _, w in clean}
        if len(ends) > 1:
            shown = ", ".join(
                f"{path_label(Q, w)}: {Q.vertices[w.source]}->{Q.vertices[w.target]}" for _, w in clean
            )
            raise PresentationError(f"non-uniform relation {text!r} ({shown})")
        for _, w in clean:
            if w.length < 2:
                raise PresentationError(
                    f"non-admissible relation {text!r}: term {path_label(Q, w)!r} has length {w.length}"
                )
        out.append(Relation(sorted(clean, key=lambda t: t[1].key()), text))
    return out


def _arrow_from_doc(item) -> tuple[str, str, str]:
    if isinstance(item, dict):
        return str(item["name"]), str(item["source"]), str(item["target"])
    name, s, t = item
    return str(name), str(s), str(t)


def build_presentation(
    p: int,
    vertices: Sequence,
    arrows: Sequence,
    relations: Sequence[str],
    bound: int | None = None,
    name: str = "",
) -> Presentation:
    p = ffla.check_prime(p)
    verts = tuple(str(v) for v in vertices)
    if len(set(verts)) != len(verts):
        raise PresentationError("vertex names must be unique")
    arr = []
    for item in arrows:
        n, s, t = _arrow_from_doc(item)
        if not _NAME.match(n) or n.startswith("e_"):
            raise PresentationError(f"invalid arrow name {n!r}")
        if s not in verts or t not in verts:
            raise PresentationError(f"arrow {n!r} has an unknown endpoint")
        arr.append(Arrow(n, verts.index(s), verts.index(t)))
    if len({a.name for a in arr}) != len(arr):
        raise PresentationError("arrow names must be unique")
    Q = Quiver(verts, tuple(arr))
    rels: list[Relation] = []
    for text in relations:
        rels.extend(parse_relation(Q, text, p))
    if bound is not None and int(bound) < 1:
        raise PresentationError("bound must be positive")
    return Presentation(p, Q, rels, bound, name, list(relations))


def _parse_text(doc: str) -> dict:
    out: dict = {"vertices": [], "arrows": [], "relations": []}
    for lineno, raw in enumerate(doc.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "field":
            out["field"] = int(rest)
        elif head == "name":
            out["name"] = rest
        elif head == "vertices":
            out["vertices"].extend(rest.replace(",", " ").split())
        elif head == "arrow":
            # "name source target" or "name: source -> target"
            parts = [t for t in re.split(r"\s*->\s*|\s*:\s*|\s+", rest) if t]
            if len(parts) != 3:
                raise PresentationError(f"line {lineno}: cannot parse arrow {rest!r}")
            out["arrows"].append(parts)
        elif head == "relation":
            out["relations"].append(rest)
        elif head == "bound":
            out["bound"] = int(rest)
        else:
            raise PresentationError(f"line {lineno}: unknown directive {head!r}")
    if "field" not in out:
        raise PresentationError("presentation text needs a 'field' line")
    return out


def parse_presentation(doc) -> Presentation:
    """Build a Presentation from presentation text or a JSON-style dict.

    Text form, one directive per line::

        field 2
        vertices 1 2
        arrow t3 1 2          # name source target
        relation t1*t2*t1*t2 = t2*t1*t2*t1 = t4*t3
    """
    if isinstance(doc, str):
        doc = _parse_text(doc)
    if not isinstance(doc, dict):
        raise PresentationError("presentation document must be text or a mapping")
    if doc.get("kind", "presentation") != "presentation":
        raise PresentationError(f"not a presentation document: kind={doc.get('kind')!r}")
    try:
        return build_presentation(
            doc["field"],
            doc["vertices"],
            doc["arrows"],
            doc.get("relations", []),
            doc.get("bound"),
            doc.get("name", ""),
        )
    except KeyError as exc:
        raise PresentationError(f"presentation document lacks {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, PresentationError):
            raise
        raise PresentationError(str(exc)) from None


# ---------------------------------------------------------------------------
# quotient


def enumerate_paths(Q: Quiver, max_len: int) -> list[Path]:
    layer = [Path((), v, v) for v in range(len(Q.vertices))]
    out = list(layer)
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for i, a in enumerate(Q.arrows):
                if a.source == w.target:
                    nxt.append(Path((i,) + w.arrows, w.source, a.target))
        out.extend(nxt)
        layer = nxt
    return out


@dataclass
class QuotientData:
    """Reduction data attached to an algebra built from a presentation."""

    presentation: Presentation
    bound: int
    paths: list[Path]  # truncated path basis, columns in descending monomial order
    column: dict[Path, int]
    ideal: Subspace
    normal: list[int]  # columns of surviving words, basis order

    def reduce_vector(self, v: np.ndarray) -> np.ndarray:
        return self.ideal.reduce(v)[self.normal]

    def path_coords(self, w: Path | None) -> np.ndarray:
        out = np.zeros(len(self.normal), dtype=np.int64)
        if w is None or w.length >= self.bound:
            return out
        v = np.zeros(len(self.paths), dtype=np.int64)
        v[self.column[w]] = 1
        return self.reduce_vector(v)


def bound_ceiling() -> int:
    raw = os.environ.get(CEILING_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise PresentationError(f"{CEILING_ENV} must be an integer, got {raw!r}") from None
    return DEFAULT_BOUND_CEILING


def _shift_maps(Q: Quiver, paths: list[Path], column: dict[Path, int]) -> list[tuple[np.ndarray, np.ndarray]]:
    maps = []
    for i, a in enumerate(Q.arrows):
        ap = Path((i,), a.source, a.target)
        for side in ("left", "right"):
            src, dst = [], []
            for w in paths:
                prod = compose(ap, w) if side == "left" else compose(w, ap)
                if prod is not None and prod in column:
                    src.append(column[w])
                    dst.append(column[prod])
            maps.append((np.array(src, dtype=np.int64), np.array(dst, dtype=np.int64)))
    return maps


def _saturate(P: Presentation, N: int) -> QuotientData:
    Q, p = P.quiver, P.p
    paths = sorted(enumerate_paths(Q, N), key=Path.key, reverse=True)
    column = {w: i for i, w in enumerate(paths)}
    n = len(paths)
    rows = []
    for rel in P.relations:
        v = np.zeros(n, dtype=np.int64)
        for c, w in rel.terms:
            if w.length <= N:
                v[column[w]] = (v[column[w]] + c) % p
        rows.append(v)
    ideal = ffla.span(rows, p, n)
    maps = _shift_maps(Q, paths, column)
    frontier = ideal.basis
    while frontier.shape[0]:
        new = []
        for src, dst in maps:
            if src.size == 0:
                continue
            shifted = np.zeros((frontier.shape[0], n), dtype=np.int64)
            shifted[:, dst] = frontier[:, src]
            new.append(shifted)
        if not new:
            break
        cand = np.vstack(new)
        cand = cand[cand.any(axis=1)]
        cand = cand[ideal.reduce(cand).any(axis=1)] if cand.size else cand
        if not cand.shape[0]:
            break
        grown = ideal + Subspace.span(cand, p, n)
        frontier = cand
        ideal = grown
    normal_cols = sorted(ideal.complement_indices(), key=lambda c: paths[c].key())
    return QuotientData(P, N, paths, column, ideal, normal_cols)


def _top_paths_vanish(data: QuotientData) -> bool:
    top = [c for c, w in enumerate(data.paths) if w.length == data.bound]
    if not top:
        return True
    E = np.zeros((len(top), len(data.paths)), dtype=np.int64)
    E[np.arange(len(top)), top] = 1
    return not data.ideal.reduce(E).any()


def quotient_algebra(P: Presentation, ceiling: int | None = None) -> StructureAlgebra:
    """The algebra kQ/I with a word basis, vertex idempotents and path grading."""
    if ceiling is None:
        ceiling = bound_ceiling()
    max_term = max((w.length for r in P.relations for _, w in r.terms), default=1)
    N = P.bound if P.bound is not None else max_term + 1
    if not P.relations and not P.quiver.arrows:
        N = 1
    while True:
        if N > ceiling:
            raise BoundCeilingError(
                f"arrow ideal of {P.name or 'presentation'} not nilpotent up to bound {ceiling}"
            )
        data = _saturate(P, N)
        if _top_paths_vanish(data):
            break
        N += 1
    return _assemble(P, data)


def _assemble(P: Presentation, data: QuotientData) -> StructureAlgebra:
    Q, p = P.quiver, P.p
    words = [data.paths[c] for c in data.normal]
    d = len(words)
    mult = np.zeros((d, d, d), dtype=np.int64)
    for i, u in enumerate(words):
        for j, v in enumerate(words):
            w = compose(u, v)
            if w is not None and w.length < data.bound:
                mult[i, j] = data.path_coords(w)
    idem = []
    for vtx in range(len(Q.vertices)):
        idem.append(data.path_coords(Path((), vtx, vtx)))
    unit = np.sum(idem, axis=0) % p if idem else np.zeros(d, dtype=np.int64)
    return StructureAlgebra(
        p,
        [path_label(Q, w) for w in words],
        mult,
        unit,
        idempotents=idem,
        idempotent_labels=list(Q.vertices),
        grading=[w.length for w in words],
        graded_radical=True,
        provenance=P.name or "presentation",
        meta={"quotient": data, "words": words},
    )


def word_coords(A: StructureAlgebra, expr: str) -> np.ndarray:
    """Coordinates of a word or linear combination of words in A.

    Words whose arrows do not compose are zero; unknown names raise.
    """
    data: QuotientData | None = A.meta.get("quotient")
    if data is None:
        raise PresentationError(f"{A.provenance} carries no presentation data")
    P = data.presentation
    out = np.zeros(A.dim, dtype=np.int64)
    for c, w in parse_expr(P.quiver, expr, P.p, strict=False):
        out = (out + c * data.path_coords(w)) % P.p
    return out


def layer_dimensions(A: StructureAlgebra) -> list[int]:
    """Number of basis words of each path length."""
    if A.grading is None:
        raise PresentationError("algebra has no grading")
    top = max(A.grading, default=0)
    return [sum(1 for g in A.grading if g == k) for k in range(top + 1)]
