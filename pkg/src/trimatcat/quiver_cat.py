"""Quivers with relations and their (truncated) path categories.

Paths are written right to left: ``b*a`` means ``a`` first, then ``b``.
Internally a path is a tuple of arrow names in application order, so
``b*a`` is stored as ``("a", "b")``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
import re

import numpy as np

from .exact_linalg import QQ, VectorSpace, complement_coords, field_from_spec
from .klinear_core import CategoryError, LinearCategory


class QuiverParseError(ValueError):
    def __init__(self, message, line=None, column=None, source=None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        where = f"line {line}, column {column}: " if line is not None else ""
        shown = f"\n    {source}" if source else ""
        super().__init__(where + message + shown)


class NonAdmissibleError(CategoryError):
    pass


@dataclass
class QuiverPresentation:
    vertices: list
    arrows: list  # (name, source, target)
    relations: list = dc_field(default_factory=list)  # [(coeff, path tuple)]
    max_path_length: int | None = None
    field: object = QQ

    def __post_init__(self):
        self._src = {a: s for a, s, _ in self.arrows}
        self._tgt = {a: t for a, _, t in self.arrows}

    def arrow_ends(self, name):
        return self._src[name], self._tgt[name]

    def path_ends(self, path):
        return self._src[path[0]], self._tgt[path[-1]]

    def is_acyclic(self):
        succ = {v: [] for v in self.vertices}
        for _, s, t in self.arrows:
            succ[s].append(t)
        state = {}

        def visit(v):
            state[v] = 1
            for w in succ[v]:
                if state.get(w) == 1 or (w not in state and not visit(w)):
                    return False
            state[v] = 2
            return True

        return all(state.get(v) == 2 or visit(v) for v in self.vertices)

    def bound(self):
        if self.max_path_length is not None:
            return self.max_path_length
        longest = max((len(p) for rel in self.relations for _, p in rel), default=0)
        return max(len(self.vertices), longest)

    def sources(self):
        targets = {t for _, _, t in self.arrows}
        return [v for v in self.vertices if v not in targets]

    def to_text(self):
        lines = [f"field {self.field}"]
        lines += [f"vertex {v}" for v in self.vertices]
        lines += [f"arrow {a} : {s} -> {t}" for a, s, t in self.arrows]
        for rel in self.relations:
            terms = " + ".join(f"{self.field.format(c)} {write_path(p)}" for c, p in rel)
            lines.append(f"relation {terms}")
        if self.max_path_length is not None:
            lines.append(f"maxlen {self.max_path_length}")
        return "\n".join(lines) + "\n"

    def delete_vertex(self, v):
        """Drop ``v``, its arrows, and every relation whose paths touch ``v``."""
        arrows = [a for a in self.arrows if v not in (a[1], a[2])]
        keep = {a for a, _, _ in arrows}
        rels = [rel for rel in self.relations
                if all(all(x in keep for x in p) for _, p in rel)]
        return QuiverPresentation([w for w in self.vertices if w != v], arrows, rels,
                                  self.max_path_length, self.field)


def write_path(path):
    return "*".join(reversed(path))


def _validate(q, pos=None):
    pos = pos or {}
    verts = set(q.vertices)
    if len(verts) != len(q.vertices):
        raise QuiverParseError("duplicate vertex")
    names = set()
    for a, s, t in q.arrows:
        where = pos.get(("arrow", a), (None, None))
        for v in (s, t):
            if v not in verts:
                raise QuiverParseError(f"unknown vertex {v!r} in arrow {a!r}", *where)
        if a in names:
            raise QuiverParseError(f"duplicate arrow {a!r}", *where)
        names.add(a)
    for k, rel in enumerate(q.relations):
        where = pos.get(("relation", k), (None, None))
        ends = None
        for _, p in rel:
            if len(p) < 2:
                raise QuiverParseError("relation terms must have length >= 2", *where)
            for x in p:
                if x not in names:
                    raise QuiverParseError(f"unknown arrow {x!r}", *where)
            for x, y in zip(p, p[1:]):
                if q.arrow_ends(x)[1] != q.arrow_ends(y)[0]:
                    raise QuiverParseError(f"arrows {y}*{x} do not compose", *where)
            e = q.path_ends(p)
            if ends is not None and e != ends:
                raise QuiverParseError("relation terms are not parallel", *where)
            ends = e
        if q.max_path_length is not None and any(len(p) > q.max_path_length for _, p in rel):
            raise QuiverParseError("relation longer than maxlen", *where)
    if q.max_path_length is not None and q.max_path_length < 1:
        raise QuiverParseError("maxlen must be positive")
    return q


_ARROW = re.compile(r"^arrow\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)\s*$")


def parse_quiver(text):
    """Parse the quiver text format; errors carry line, column and the offending line."""
    try:
        return _parse_quiver(text)
    except QuiverParseError as exc:
        lines = text.splitlines()
        if exc.line is None or exc.source or not 0 < exc.line <= len(lines):
            raise
        raise QuiverParseError(exc.message, exc.line, exc.column,
                               lines[exc.line - 1].strip()) from None


def _parse_quiver(text):
    fld = None
    vertices, arrows, relations, maxlen = [], [], [], None
    pos = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        col = raw.index(line[0]) + 1
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "field":
            try:
                fld = field_from_spec(rest)
            except ValueError as exc:
                raise QuiverParseError(str(exc), lineno, col) from None
        elif key == "vertex":
            if not rest or " " in rest:
                raise QuiverParseError("expected 'vertex <name>'", lineno, col)
            vertices.append(rest)
        elif key == "arrow":
            m = _ARROW.match(line)
            if not m:
                raise QuiverParseError("expected 'arrow <name> : <src> -> <tgt>'", lineno, col)
            arrows.append(m.groups())
            pos[("arrow", m.group(1))] = (lineno, col)
        elif key == "relation":
            if fld is None:
                raise QuiverParseError("relation before field declaration", lineno, col)
            pos[("relation", len(relations))] = (lineno, col)
            relations.append(_parse_relation(fld, rest, lineno, col))
        elif key == "maxlen":
            try:
                maxlen = int(rest)
            except ValueError:
                raise QuiverParseError("maxlen expects an integer", lineno, col) from None
        else:
            raise QuiverParseError(f"unknown declaration {key!r}", lineno, col)
    if fld is None:
        raise QuiverParseError("missing field declaration ('field Q' or 'field F p')", 1, 1)
    return _validate(QuiverPresentation(vertices, arrows, relations, maxlen, fld), pos)


def _parse_relation(fld, rest, lineno, col):
    terms, chunk = [], []
    for tok in rest.split() + ["+"]:
        if tok != "+":
            chunk.append(tok)
            continue
        if not chunk:
            raise QuiverParseError("empty relation term", lineno, col)
        if len(chunk) > 2:
            raise QuiverParseError(f"cannot parse relation term {' '.join(chunk)!r}", lineno, col)
        coeff, word = fld.one, chunk[-1]
        if len(chunk) == 2:
            try:
                coeff = fld.coerce(chunk[0])
            except (ValueError, ZeroDivisionError):
                raise QuiverParseError(f"bad coefficient {chunk[0]!r}", lineno, col) from None
        terms.append((fld.reduce(coeff), tuple(reversed(word.split("*")))))
        chunk = []
    return terms


# ---------------------------------------------------------------------------


def _enumerate_paths(q, bound):
    out = {(x, y): [] for x in q.vertices for y in q.vertices}
    frontier = [((), v, v) for v in q.vertices]
    for length in range(bound + 1):
        nxt = []
        for p, s, t in frontier:
            out[(s, t)].append(p)
            if length < bound:
                for a, s2, t2 in q.arrows:
                    if s2 == t:
                        nxt.append((p + (a,), s, t2))
        frontier = nxt
    for key in out:
        out[key].sort(key=lambda p: (len(p), p))
    return out


class PathCategory(LinearCategory):
    """Path category K Q / I, truncated: paths longer than the bound are 0."""

    def __init__(self, q, bound=None):
        super().__init__(q.vertices, q.field)
        self.quiver = q
        self.bound = q.bound() if bound is None else bound
        self._paths = _enumerate_paths(q, self.bound)
        self._normal = {}
        self._homs = {}
        for key, paths in self._paths.items():
            self._reduce_pair(key, paths)

    def _ideal_vectors(self, key, paths):
        q, fld = self.quiver, self.field
        index = {p: i for i, p in enumerate(paths)}
        vecs = []
        x, y = key
        for rel in q.relations:
            s, t = q.path_ends(rel[0][1])
            for pre in self._paths[(x, s)]:
                for post in self._paths[(t, y)]:
                    v = fld.zero_vector(len(paths))
                    hit = False
                    for c, p in rel:
                        full = pre + p + post
                        if len(full) <= self.bound:
                            v[index[full]] = fld.reduce(v[index[full]] + c)
                            hit = True
                    if hit:
                        vecs.append(v)
        return vecs

    def _reduce_pair(self, key, paths):
        fld = self.field
        n = len(paths)
        vecs = self._ideal_vectors(key, paths)
        # pivots should land on the largest paths, so reduce in reversed order
        if vecs:
            a = np.vstack(vecs)[:, ::-1].T.copy()
        else:
            a = fld.zeros(n, 0)
        keep_rev, proj_rev = complement_coords(fld, a)
        keep = [n - 1 - j for j in keep_rev][::-1]
        proj = proj_rev[::-1, ::-1]
        basis_paths = [paths[j] for j in keep]
        self._normal[key] = ({p: i for i, p in enumerate(paths)}, proj, basis_paths)
        self._homs[key] = VectorSpace(tuple(self.path_label(p, key[0]) for p in basis_paths))

    @staticmethod
    def path_label(p, source):
        return f"id_{source}" if not p else write_path(p)

    def hom(self, x, y):
        try:
            return self._homs[(x, y)]
        except KeyError:
            raise CategoryError(f"unknown objects {x!r}, {y!r}") from None

    def basis_paths(self, x, y):
        return list(self._normal[(x, y)][2])

    def path_vector(self, path, source=None):
        """Normal form (coordinates in Hom) of a path; ``()`` needs ``source``."""
        path = tuple(path)
        if path:
            x, y = self.quiver.path_ends(path)
        else:
            x = y = source
        index, proj, _ = self._normal[(x, y)]
        if len(path) > self.bound:
            return self.field.zero_vector(proj.shape[0])
        return proj[:, index[path]].copy()

    def parse_morphism(self, word, source=None):
        if word.startswith("id_"):
            return self.path_vector((), word[3:])
        return self.path_vector(tuple(reversed(word.split("*"))))

    def _build_table(self, x, y, z):
        fp, gp = self.basis_paths(x, y), self.basis_paths(y, z)
        index, proj, _ = self._normal[(x, z)]
        t = np.empty((len(gp), len(fp), proj.shape[0]), dtype=object)
        t.fill(self.field.zero)
        for j, g in enumerate(gp):
            for i, f in enumerate(fp):
                full = f + g
                if len(full) <= self.bound:
                    t[j, i] = proj[:, index[full]]
        return t

    def identity(self, x):
        return self.path_vector((), x)

    def arrow_vector(self, name):
        return self.path_vector((name,))

    def generators(self):
        """Arrows generate every Hom space under composition."""
        return [(s, t, self.arrow_vector(a)) for a, s, t in self.quiver.arrows]


def path_category(q, check_admissible=True):
    cat = PathCategory(q)
    if check_admissible and not q.is_acyclic():
        bigger = PathCategory(q, cat.bound + 1)
        for x in q.vertices:
            for y in q.vertices:
                if cat.dim(x, y) != bigger.dim(x, y):
                    raise NonAdmissibleError(
                        f"Hom({x},{y}) does not stabilize at path length {cat.bound}: "
                        "the relations do not make the cycles nilpotent")
    return cat


def count_paths(q, x, y, limit=None):
    """Brute-force DFS path counter (for acyclic quivers)."""
    limit = len(q.vertices) if limit is None else limit

    def dfs(v, depth):
        total = 1 if v == y else 0
        if depth < limit:
            for _, s, t in q.arrows:
                if s == v:
                    total += dfs(t, depth + 1)
        return total

    return dfs(x, 0)
