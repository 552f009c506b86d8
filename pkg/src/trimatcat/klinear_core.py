"""Finite K-linear categories given by structure constants.

A category stores, for each ordered pair of objects, a basis of the
Hom-space, and for each triple ``(X, Y, Z)`` a composition table of shape
``(dim Hom(Y,Z), dim Hom(X,Y), dim Hom(X,Z))``: entry ``[j, i]`` is the
coordinate vector of ``g_j ∘ f_i``.  Subclasses may build these tables
lazily; they are cached once built.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
import itertools

import numpy as np

from .exact_linalg import (
    QQ, FiniteAlgebra, VectorSpace, in_span, is_invertible,
    jacobson_radical, matmul, row_basis,
)


class CategoryError(ValueError):
    pass


@dataclass
class Report:
    """Outcome of an exhaustive or sampled property check."""

    name: str
    checked: int = 0
    failures: list = dc_field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def fail(self, **witness):
        self.failures.append(witness)

    def extend(self, other):
        self.checked += other.checked
        self.failures.extend(other.failures)
        return self

    def to_dict(self):
        return {"name": self.name, "passed": self.ok, "checked": self.checked,
                "failures": self.failures}

    def __bool__(self):
        return self.ok


class LinearCategory:
    """Abstract finite K-linear category; see module docstring."""

    def __init__(self, objects, field=QQ, zero_objects=()):
        self.objects = tuple(objects)
        if len(set(self.objects)) != len(self.objects):
            raise CategoryError("duplicate object names")
        self.field = field
        self.zero_objects = frozenset(zero_objects)
        self._tables = {}
        self._op = None

    # -- interface for subclasses ------------------------------------------
    def hom(self, x, y):
        raise NotImplementedError

    def _build_table(self, x, y, z):
        raise NotImplementedError

    def identity(self, x):
        raise NotImplementedError

    # -- derived -----------------------------------------------------------
    def dim(self, x, y):
        return self.hom(x, y).dim

    def check_object(self, x):
        if x not in self.objects:
            raise CategoryError(f"unknown object {x!r}")

    def table(self, x, y, z):
        key = (x, y, z)
        t = self._tables.get(key)
        if t is None:
            t = self._build_table(x, y, z)
            self._tables[key] = t
        return t

    def compose(self, g, f, x, y, z):
        """Coordinates of ``g ∘ f`` for f: x→y, g: y→z."""
        fld = self.field
        t = self.table(x, y, z)
        out = fld.zero_vector(t.shape[2])
        if t.shape[2] == 0:
            return out
        for j, gj in enumerate(g):
            if gj == 0:
                continue
            for i, fi in enumerate(f):
                if fi != 0:
                    out = out + (gj * fi) * t[j, i]
        return fld.reduce(out)

    def basis_vector(self, x, y, i):
        return self.field.unit_vector(self.dim(x, y), i)

    def left_mult_matrix(self, g, x, y, z):
        """Matrix of ``f ↦ g ∘ f`` from Hom(x,y) to Hom(x,z)."""
        t = self.table(x, y, z)
        m = self.field.zeros(t.shape[2], t.shape[1])
        for j, gj in enumerate(g):
            if gj != 0:
                m = m + gj * t[j].T
        return self.field.reduce(m)

    def right_mult_matrix(self, f, x, y, z):
        """Matrix of ``g ↦ g ∘ f`` from Hom(y,z) to Hom(x,z)."""
        t = self.table(x, y, z)
        m = self.field.zeros(t.shape[2], t.shape[0])
        for i, fi in enumerate(f):
            if fi != 0:
                m = m + fi * t[:, i, :].T
        return self.field.reduce(m)

    def opposite(self):
        if self._op is None:
            self._op = OppositeCategory(self)
        return self._op

    def total_dim(self):
        return sum(self.dim(x, y) for x in self.objects for y in self.objects)

    def __repr__(self):
        return f"<{type(self).__name__} objects={list(self.objects)}>"


class TableCategory(LinearCategory):
    """A category given by explicit Hom bases, tables and identities."""

    def __init__(self, objects, homs, tables, identities, field=QQ, zero_objects=()):
        super().__init__(objects, field, zero_objects)
        self._homs = dict(homs)
        self._ids = {x: np.asarray(v, dtype=object) for x, v in identities.items()}
        empty = VectorSpace(())
        for x in self.objects:
            for y in self.objects:
                self._homs.setdefault((x, y), empty)
        for key, t in tables.items():
            self._tables[key] = np.asarray(t, dtype=object)

    def hom(self, x, y):
        try:
            return self._homs[(x, y)]
        except KeyError:
            raise CategoryError(f"unknown objects {x!r}, {y!r}") from None

    def _build_table(self, x, y, z):
        a, b, c = self.dim(y, z), self.dim(x, y), self.dim(x, z)
        t = np.empty((a, b, c), dtype=object)
        t.fill(self.field.zero)
        return t

    def identity(self, x):
        return self._ids[x]


class OppositeCategory(LinearCategory):
    """Hom_op(X, Y) = Hom(Y, X) with reversed composition."""

    def __init__(self, base):
        super().__init__(base.objects, base.field, base.zero_objects)
        self.base = base
        self._op = base

    def hom(self, x, y):
        return self.base.hom(y, x)

    def _build_table(self, x, y, z):
        # g_op ∘ f_op for f_op: x→y (f: y→x), g_op: y→z (g: z→y) is f ∘ g
        t = self.base.table(z, y, x)  # [f_index, g_index, out]
        return np.transpose(t, (1, 0, 2)).copy()

    def identity(self, x):
        return self.base.identity(x)


# ---------------------------------------------------------------------------
# checks


def _sample_vector(fld, rng, n):
    return fld.array([fld.random(rng) for _ in range(n)]) if n else fld.zero_vector(0)


def check_category_axioms(cat, trials=None, rng=None):
    """Associativity and identity laws.

    Exhaustive over basis triples when ``trials`` is None, otherwise
    ``trials`` random composable triples of random morphisms.
    """
    rep = Report("category_axioms")
    fld = cat.field
    objs = cat.objects
    for x in objs:
        idx = cat.identity(x)
        for y in objs:
            n = cat.dim(x, y)
            for i in range(n if trials is None else 0):
                f = cat.basis_vector(x, y, i)
                rep.checked += 1
                if not np.array_equal(cat.compose(cat.identity(y), f, x, y, y), f):
                    rep.fail(law="left_identity", source=x, target=y, basis=i)
                if not np.array_equal(cat.compose(f, idx, x, x, y), f):
                    rep.fail(law="right_identity", source=x, target=y, basis=i)
    if trials is None:
        for w, x, y, z in itertools.product(objs, repeat=4):
            a, b, c = cat.dim(w, x), cat.dim(x, y), cat.dim(y, z)
            if not (a and b and c):
                continue
            t_wxy, t_xyz = cat.table(w, x, y), cat.table(x, y, z)
            for k in range(c):
                for j in range(b):
                    for i in range(a):
                        rep.checked += 1
                        # (h ∘ g) ∘ f  vs  h ∘ (g ∘ f)
                        lhs = cat.compose(t_xyz[k, j], fld.unit_vector(a, i), w, x, z)
                        rhs = cat.compose(fld.unit_vector(c, k), t_wxy[j, i], w, y, z)
                        if not np.array_equal(lhs, rhs):
                            rep.fail(law="associativity", objects=[w, x, y, z],
                                     basis=[k, j, i])
        return rep
    rng = rng if rng is not None else np.random.default_rng(0)
    # sample chains w → x → y → z with nonzero Homs, step by step
    succ = {x: [y for y in objs if cat.dim(x, y)] for x in objs}
    mid = {x: [y for y in succ[x] if succ[y]] for x in objs}
    starts = [(w, x) for w in objs for x in succ[w] if mid[x]]
    if not starts:
        return rep
    for _ in range(trials):
        w, x = starts[int(rng.integers(len(starts)))]
        y = mid[x][int(rng.integers(len(mid[x])))]
        z = succ[y][int(rng.integers(len(succ[y])))]
        f = _sample_vector(fld, rng, cat.dim(w, x))
        g = _sample_vector(fld, rng, cat.dim(x, y))
        h = _sample_vector(fld, rng, cat.dim(y, z))
        rep.checked += 1
        lhs = cat.compose(cat.compose(h, g, x, y, z), f, w, x, z)
        rhs = cat.compose(h, cat.compose(g, f, w, x, y), w, y, z)
        if not np.array_equal(lhs, rhs):
            rep.fail(law="associativity", objects=[w, x, y, z],
                     morphisms=[[fld.format(v) for v in m] for m in (h, g, f)])
        for (s, t, m) in ((w, x, f), (x, y, g)):
            rep.checked += 1
            if not (np.array_equal(cat.compose(cat.identity(t), m, s, t, t), m)
                    and np.array_equal(cat.compose(m, cat.identity(s), s, s, t), m)):
                rep.fail(law="identity", source=s, target=t)
    return rep


# ---------------------------------------------------------------------------
# subcategories and additive closure


def full_subcategory(cat, objects):
    objects = list(objects)
    for x in objects:
        cat.check_object(x)
    homs = {(x, y): cat.hom(x, y) for x in objects for y in objects}
    tables = {(x, y, z): cat.table(x, y, z)
              for x in objects for y in objects for z in objects}
    ids = {x: cat.identity(x) for x in objects}
    return TableCategory(objects, homs, tables, ids, cat.field,
                         cat.zero_objects & set(objects))


@dataclass(frozen=True)
class FormalSumObject:
    """A finite direct sum of objects, kept in canonical (sorted) order."""

    summands: tuple = ()

    @classmethod
    def of(cls, cat, names):
        order = {x: i for i, x in enumerate(cat.objects)}
        for x in names:
            if x not in order:
                raise CategoryError(f"unknown summand {x!r}")
        return cls(tuple(sorted(names, key=lambda x: order[x])))

    @property
    def name(self):
        return "+".join(self.summands) if self.summands else "0"


class AdditiveClosure(LinearCategory):
    """Objects are formal sums; Hom spaces are block spaces.

    The basis of Hom(⊕X_i, ⊕Y_j) runs over source summand i, then target
    summand j, then the basis of Hom(X_i, Y_j); labels are ``"i,j:label"``.
    """

    def __init__(self, base, sums):
        sums = [s if isinstance(s, FormalSumObject) else FormalSumObject.of(base, s)
                for s in sums]
        for s in sums:
            for x in s.summands:
                base.check_object(x)
        names = [s.name for s in sums]
        zeros = [s.name for s in sums if not s.summands]
        super().__init__(names, base.field, zeros)
        self.base = base
        self.sums = dict(zip(names, sums))
        self._homs = {}
        self._blocks = {}

    def blocks(self, x, y):
        key = (x, y)
        if key not in self._blocks:
            xs, ys = self.sums[x].summands, self.sums[y].summands
            offs, labels, pos = {}, [], 0
            for i, a in enumerate(xs):
                for j, b in enumerate(ys):
                    hb = self.base.hom(a, b)
                    offs[(i, j)] = (pos, hb.dim)
                    labels.extend(f"{i},{j}:{lab}" for lab in hb.labels)
                    pos += hb.dim
            self._blocks[key] = offs
            self._homs[key] = VectorSpace(tuple(labels))
        return self._blocks[key]

    def hom(self, x, y):
        self.blocks(x, y)
        return self._homs[(x, y)]

    def _build_table(self, x, y, z):
        fld = self.field
        bxy, byz, bxz = self.blocks(x, y), self.blocks(y, z), self.blocks(x, z)
        xs, ys, zs = (self.sums[o].summands for o in (x, y, z))
        t = np.empty((self.dim(y, z), self.dim(x, y), self.dim(x, z)), dtype=object)
        t.fill(fld.zero)
        for i, a in enumerate(xs):
            for j, b in enumerate(ys):
                o1, n1 = bxy[(i, j)]
                for k, c in enumerate(zs):
                    o2, n2 = byz[(j, k)]
                    o3, n3 = bxz[(i, k)]
                    if n1 and n2 and n3:
                        t[o2:o2 + n2, o1:o1 + n1, o3:o3 + n3] = self.base.table(a, b, c)
        return t

    def identity(self, x):
        v = self.field.zero_vector(self.dim(x, x))
        b = self.blocks(x, x)
        for i, a in enumerate(self.sums[x].summands):
            o, n = b[(i, i)]
            v[o:o + n] = self.base.identity(a)
        return v

    def embed(self, x, y, i, j, vec):
        """Put a morphism X_i → Y_j into the block coordinates of Hom(x, y)."""
        v = self.field.zero_vector(self.dim(x, y))
        o, n = self.blocks(x, y)[(i, j)]
        v[o:o + n] = vec
        return v


def additive_closure(cat, objs):
    return AdditiveClosure(cat, objs)


class WithZero(LinearCategory):
    """``cat`` with a zero object ``"0"`` adjoined; other Hom bases are unchanged."""

    ZERO = "0"

    def __init__(self, base):
        if self.ZERO in base.objects:
            raise CategoryError("object name '0' is reserved for the zero object")
        super().__init__(tuple(base.objects) + (self.ZERO,), base.field,
                         base.zero_objects | {self.ZERO})
        self.base = base

    def hom(self, x, y):
        if self.ZERO in (x, y):
            self.check_object(x)
            self.check_object(y)
            return VectorSpace(())
        return self.base.hom(x, y)

    def _build_table(self, x, y, z):
        if self.ZERO in (x, y, z):
            t = np.empty((self.dim(y, z), self.dim(x, y), self.dim(x, z)), dtype=object)
            t.fill(self.field.zero)
            return t
        return self.base.table(x, y, z)

    def identity(self, x):
        if x == self.ZERO:
            return self.field.zero_vector(0)
        return self.base.identity(x)


def with_zero_object(cat):
    if isinstance(cat, WithZero) or "0" in cat.zero_objects:
        return cat
    return WithZero(cat)


# ---------------------------------------------------------------------------
# endomorphism algebras and radicals


def end_algebra(cat, x):
    """End(x) with product ``a · b = a ∘ b``."""
    if isinstance(x, FormalSumObject):
        closure = AdditiveClosure(cat, [x])
        return end_algebra(closure, x.name)
    hs = cat.hom(x, x)
    t = cat.table(x, x, x)
    return FiniteAlgebra(hs, t.copy(), cat.identity(x), cat.field)


def radical_subspace(cat, x, y):
    """rad(x, y) as the (x→y) block of J(End(x ⊕ y)), in echelon form."""
    fld = cat.field
    if x == y:
        return row_basis(fld, jacobson_radical(end_algebra(cat, x)), cat.dim(x, x))
    if cat.dim(x, y) == 0:
        return fld.zeros(0, 0)
    return radical_blocks(cat, x, y)[(x, y)]


def radical_blocks(cat, x, y):
    """All four blocks rad(a, b), a, b ∈ {x, y}, read off one J(End(x ⊕ y))."""
    fld = cat.field
    if x == y:
        return {(x, x): radical_subspace(cat, x, x)}
    pair = AdditiveClosure(cat, [FormalSumObject.of(cat, (x, y))])
    s = pair.objects[0]
    summ = pair.sums[s].summands
    jac = jacobson_radical(end_algebra(pair, s))
    out = {}
    for a, b in itertools.product((x, y), repeat=2):
        o, n = pair.blocks(s, s)[(summ.index(a), summ.index(b))]
        out[(a, b)] = row_basis(fld, [v[o:o + n] for v in jac], n) if n else fld.zeros(0, 0)
    return out


def radical_table(cat, pairs=None):
    """rad(x, y) for the given ordered pairs (default: all), one algebra per unordered pair."""
    pairs = list(pairs) if pairs is not None else list(itertools.product(cat.objects, repeat=2))
    out = {}
    for x, y in pairs:
        if (x, y) not in out:
            out.update(radical_blocks(cat, x, y))
    return {p: out[p] for p in pairs}


def is_invertible_endo(cat, x, e):
    """Is ``e ∈ End(x)`` invertible (left multiplication nonsingular)?"""
    return is_invertible(cat.field, cat.left_mult_matrix(e, x, x, x))


def check_radical_definition(cat, x, y, rad_basis):
    """For r in the basis and basis g: y→x, id_x − g∘r must be invertible."""
    rep = Report("radical_definition")
    fld = cat.field
    idx = cat.identity(x)
    for ri, r in enumerate(rad_basis):
        for gi in range(cat.dim(y, x)):
            g = cat.basis_vector(y, x, gi)
            rep.checked += 1
            e = fld.reduce(idx - cat.compose(g, r, x, y, x))
            if not is_invertible_endo(cat, x, e):
                rep.fail(source=x, target=y, radical_index=ri, test_index=gi)
    return rep


def check_radical_ideal(cat, rad):
    """``rad`` maps (x, y) → basis array; closure under composition."""
    rep = Report("radical_ideal")
    fld = cat.field
    for (x, y), basis in rad.items():
        for r in basis:
            for z in cat.objects:
                for gi in range(cat.dim(y, z)):
                    rep.checked += 1
                    v = cat.compose(cat.basis_vector(y, z, gi), r, x, y, z)
                    if not in_span(fld, rad[(x, z)], v):
                        rep.fail(side="left", source=x, target=y, via=z, basis=gi)
                for hi in range(cat.dim(z, x)):
                    rep.checked += 1
                    v = cat.compose(r, cat.basis_vector(z, x, hi), z, x, y)
                    if not in_span(fld, rad[(z, y)], v):
                        rep.fail(side="right", source=x, target=y, via=z, basis=hi)
    return rep


# ---------------------------------------------------------------------------
# functors between finite categories


class FunctorTable:
    """Object map plus, per Hom pair, the matrix of the linear map on Homs.

    ``contravariant`` functors send Hom(x, y) to Hom(F y, F x).
    """

    def __init__(self, source, target, obj_map, hom_maps, contravariant=False):
        self.source = source
        self.target = target
        self.obj_map = dict(obj_map)
        self.hom_maps = dict(hom_maps)
        self.contravariant = contravariant

    def image_pair(self, x, y):
        fx, fy = self.obj_map[x], self.obj_map[y]
        return (fy, fx) if self.contravariant else (fx, fy)

    def apply(self, x, y, vec):
        return matmul(self.source.field, self.hom_maps[(x, y)],
                      np.asarray(vec, dtype=object).reshape(-1, 1)).reshape(-1)

    def to_dict(self):
        fmt = self.source.field.format
        return {
            "contravariant": self.contravariant,
            "objects": {str(k): v for k, v in self.obj_map.items()},
            "homs": [{"source": x, "target": y,
                      "matrix": [[fmt(e) for e in row] for row in m.tolist()]}
                     for (x, y), m in sorted(self.hom_maps.items())],
        }


def check_functor(ft, require_iso=True):
    """Identities, composition on all basis pairs, and (optionally) bijectivity."""
    rep = Report("functor")
    src, tgt = ft.source, ft.target
    fld = src.field
    objs = src.objects
    for x in objs:
        for y in objs:
            m = ft.hom_maps[(x, y)]
            a, b = ft.image_pair(x, y)
            if m.shape != (tgt.dim(a, b), src.dim(x, y)):
                rep.fail(check="shape", source=x, target=y)
            elif require_iso and not is_invertible(fld, m):
                rep.fail(check="hom_bijection", source=x, target=y)
            rep.checked += 1
        rep.checked += 1
        fx = ft.obj_map[x]
        if not np.array_equal(ft.apply(x, x, src.identity(x)), tgt.identity(fx)):
            rep.fail(check="identity", object=x)
    if not rep.ok:
        return rep
    for x, y, z in itertools.product(objs, repeat=3):
        for j in range(src.dim(y, z)):
            g = src.basis_vector(y, z, j)
            for i in range(src.dim(x, y)):
                f = src.basis_vector(x, y, i)
                rep.checked += 1
                lhs = ft.apply(x, z, src.compose(g, f, x, y, z))
                fg, ff = ft.apply(y, z, g), ft.apply(x, y, f)
                fx, fy, fz = (ft.obj_map[o] for o in (x, y, z))
                if ft.contravariant:
                    rhs = tgt.compose(ff, fg, fz, fy, fx)
                else:
                    rhs = tgt.compose(fg, ff, fx, fy, fz)
                if not np.array_equal(lhs, rhs):
                    rep.fail(check="composition", objects=[x, y, z], basis=[j, i])
    return rep

