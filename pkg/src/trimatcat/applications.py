"""Constructions on quivers: splitting torsion pairs, one-point extensions,
and the Hom / Ext¹ matrix categories."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bimodule import Bimodule, bimodule_ext1, bimodule_from_hom, hom_bimodule
from .exact_linalg import QQ, VectorSpace
from .functor_modules import module_category
from .klinear_core import CategoryError, FunctorTable, Report, TableCategory, check_functor
from .quiver_cat import PathCategory, QuiverPresentation, path_category
from .trimat import build_lambda


class TorsionPairError(CategoryError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass
class TorsionPairSpec:
    C: object
    U_objs: list
    T_objs: list

    def violations(self):
        """Nonzero Hom_C(X, Y) with X in U and Y in T, as (X, Y, first basis label)."""
        out = []
        for x in self.U_objs:
            for y in self.T_objs:
                if self.C.dim(x, y):
                    out.append((x, y, self.C.hom(x, y).labels[0]))
        return out

    def validate(self):
        objs = list(self.C.objects)
        for x in self.U_objs + self.T_objs:
            self.C.check_object(x)
        if set(self.U_objs) & set(self.T_objs):
            raise TorsionPairError("U and T overlap")
        if sorted(self.U_objs + self.T_objs, key=objs.index) != objs:
            raise TorsionPairError("U and T must partition the objects")
        bad = self.violations()
        if bad:
            x, y, lab = bad[0]
            raise TorsionPairError(f"Hom({x},{y}) is nonzero: {lab}",
                                   witness={"source": x, "target": y, "morphism": lab})
        return self


def _block_functor(C, L, obj_map, hom_blocks):
    """FunctorTable C → Λ where Hom_C(x, y) is copied into one block of Λ(Fx, Fy).

    ``hom_blocks(x, y)`` returns (block name, change-of-basis matrix) or None.
    """
    fld = C.field
    maps = {}
    for x in C.objects:
        for y in C.objects:
            fx, fy = obj_map[x], obj_map[y]
            m = fld.zeros(L.dim(fx, fy), C.dim(x, y))
            spec = hom_blocks(x, y)
            if spec is not None and C.dim(x, y):
                block, cob = spec
                o, n = L.blocks(fx, fy)[block]
                m[o:o + n, :] = cob
            maps[(x, y)] = m
    return FunctorTable(C, L, obj_map, maps)


def splitting_equivalence(spec):
    """Λ = [𝒯 0; Ĥom 𝒰] and the functor H: C → Λ, X ↦ (X, 0) or (0, X).

    Objects of C must already be indecomposable and sorted into U and T.
    """
    spec.validate()
    C = spec.C
    fld = C.field
    M = bimodule_from_hom(C, spec.U_objs, spec.T_objs)
    L = build_lambda(M.tcat, M.ucat, M, zero_objects=True)
    T, U = set(spec.T_objs), set(spec.U_objs)
    obj_map = {x: L.obj(x, "0") if x in T else L.obj("0", x) for x in C.objects}

    def blocks(x, y):
        n = C.dim(x, y)
        if x in T and y in T:
            return "t", fld.eye(n)
        if x in T and y in U:
            return "m", fld.eye(n)
        if x in U and y in U:
            return "u", fld.eye(n)
        return None

    H = _block_functor(C, L, obj_map, blocks)
    rep = check_functor(H)
    rep.name = "splitting_equivalence"
    return L, H, rep


def sink_partition(pc):
    """U = sinks, T = the rest."""
    q = pc.quiver
    srcs = {s for _, s, _ in q.arrows}
    U = [v for v in q.vertices if v not in srcs]
    return TorsionPairSpec(pc, U, [v for v in q.vertices if v not in U])


def point_category(name, fld):
    """One object with End = K."""
    return TableCategory([name], {(name, name): VectorSpace((f"id_{name}",))},
                         {(name, name, name): [[[fld.one]]]}, {name: [fld.one]}, fld)


@dataclass
class OnePointExtension:
    quiver: QuiverPresentation
    source: str
    reduced: QuiverPresentation
    full: PathCategory
    M: Bimodule
    L: object
    functor: FunctorTable
    report: Report


def one_point_extension(q, i):
    """KQ/I ≅ [K 0; M Λ′] for a source i, with M(U′, i) = Hom_{KQ/I}(i, U′)."""
    if i not in q.vertices:
        raise CategoryError(f"unknown vertex {i!r}")
    if i not in q.sources():
        raise CategoryError(f"vertex {i!r} is not a source")
    fld = q.field
    full = path_category(q)
    qp = q.delete_vertex(i)
    ucat = PathCategory(qp, full.bound)
    tcat = point_category(i, fld)
    space, left, right = {}, {}, {}
    for u in qp.vertices:
        space[(u, i)] = full.hom(i, u)
        d = full.dim(i, u)
        right[(i, i, u)] = np.asarray(fld.eye(d), dtype=object).reshape(1, d, d)
        for u2 in qp.vertices:
            mats = [full.left_mult_matrix(full.path_vector(p, u), i, u, u2)
                    for p in ucat.basis_paths(u, u2)]
            st = np.empty((len(mats), full.dim(i, u2), full.dim(i, u)), dtype=object)
            st.fill(fld.zero)
            for k, m in enumerate(mats):
                st[k] = m
            left[(u, u2, i)] = st
    M = Bimodule(tcat, ucat, space, left, right)
    L = build_lambda(tcat, ucat, M, zero_objects=True)
    obj_map = {v: L.obj(i, "0") if v == i else L.obj("0", v) for v in q.vertices}

    def blocks(x, y):
        n = full.dim(x, y)
        if x == i:
            return ("t" if y == i else "m"), fld.eye(n)
        if y == i or not n:
            return None
        cols = [ucat.path_vector(p, x) for p in full.basis_paths(x, y)]
        return "u", np.column_stack(cols)

    F = _block_functor(full, L, obj_map, blocks)
    rep = check_functor(F)
    rep.name = "one_point_extension"
    return OnePointExtension(q, i, qp, full, M, L, F, rep)


def hom_matrix_category(C, zero_objects=False):
    """[C 0; Ĥom C] with M(U, T) = Hom_C(T, U) on the duplicated object set."""
    M = hom_bimodule(C, C, C)
    return build_lambda(C, C, M, zero_objects=zero_objects)


def check_diagonal_recovery(C, L):
    """The t-blocks of Λ over a fixed U reproduce C's Hom labels and tables."""
    rep = Report("diagonal_recovery")
    u0 = L.ucat.objects[0]
    objs = [o for o in C.objects if o != "0"]
    for x in objs:
        for y in objs:
            rep.checked += 1
            lx, ly = L.obj(x, u0), L.obj(y, u0)
            o, n = L.blocks(lx, ly)["t"]
            labels = L.hom(lx, ly).labels[o:o + n]
            if n != C.dim(x, y) or [s[2:] for s in labels] != list(C.hom(x, y).labels):
                rep.fail(check="hom", source=x, target=y)
    for x in objs:
        for y in objs:
            for z in objs:
                rep.checked += 1
                if not np.array_equal(L.tcat.table(x, y, z), C.table(x, y, z)):
                    rep.fail(check="table", objects=[x, y, z])
    return rep


def ext1_matrix_category(pc, reps):
    """[𝒞 0; Êxt¹ 𝒞] over the full subcategory 𝒞 of the given representations."""
    C = module_category(reps)
    M = bimodule_ext1(pc, reps, C)
    return build_lambda(C, C, M)


def window_quiver(n, field=None):
    """Finite window {u_i, t_i : |i| ≤ n} of the ℤ-indexed quiver with
    arrows t_i → u_i, t_i → t_{i+1} and t_i → u_{i+1}.

    Only paths inside the window exist, so Homs near i = ±n are those of the
    truncated quiver, not of the infinite one.
    """
    idx = range(-n, n + 1)
    verts = [f"t{i}" for i in idx] + [f"u{i}" for i in idx]
    arrows = []
    for i in idx:
        arrows.append((f"a{i}", f"t{i}", f"u{i}"))
        if i < n:
            arrows.append((f"b{i}", f"t{i}", f"t{i + 1}"))
            arrows.append((f"c{i}", f"t{i}", f"u{i + 1}"))
    return QuiverPresentation(verts, arrows, [], None, field or QQ)
