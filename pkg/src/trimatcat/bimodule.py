"""Bimodules M ∈ Mod(𝒰 ⊗ 𝒯ᵒᵖ).

``M.space[(U, T)]`` is the space M(U,T).  Actions are stored per basis
morphism:

* ``left[(U, U2, T)][k]`` is the matrix of ``m ↦ u_k • m``,  M(U,T) → M(U2,T);
* ``right[(T, T2, U)][k]`` is the matrix of ``m ↦ m • t_k``, M(U,T2) → M(U,T),

where ``u_k`` runs over the basis of Hom_𝒰(U,U2) and ``t_k`` over Hom_𝒯(T,T2).
"""
from __future__ import annotations

import itertools

import numpy as np

from .exact_linalg import VectorSpace, complement_coords, matmul
from .klinear_core import (
    CategoryError, Report, WithZero, full_subcategory, with_zero_object,
)


class BimoduleError(ValueError):
    pass


def _stack(fld, mats, rows, cols):
    out = np.empty((len(mats), rows, cols), dtype=object)
    out.fill(fld.zero)
    for k, m in enumerate(mats):
        out[k] = m
    return out


class Bimodule:
    def __init__(self, tcat, ucat, space, left, right):
        tcat.field.check(ucat.field)
        self.tcat = tcat
        self.ucat = ucat
        self.field = tcat.field
        self.space = {}
        for u in ucat.objects:
            for t in tcat.objects:
                sp = space.get((u, t), VectorSpace(()))
                if isinstance(sp, int):
                    sp = VectorSpace.of_dim(sp, prefix="m")
                self.space[(u, t)] = sp
        self.left = {}
        for u, u2, t in itertools.product(ucat.objects, ucat.objects, tcat.objects):
            shape = (ucat.dim(u, u2), self.dim(u2, t), self.dim(u, t))
            a = left.get((u, u2, t))
            self.left[(u, u2, t)] = self._check_shape(a, shape, ("left", u, u2, t))
        self.right = {}
        for t, t2, u in itertools.product(tcat.objects, tcat.objects, ucat.objects):
            shape = (tcat.dim(t, t2), self.dim(u, t), self.dim(u, t2))
            a = right.get((t, t2, u))
            self.right[(t, t2, u)] = self._check_shape(a, shape, ("right", t, t2, u))
        self._op = None

    def _check_shape(self, a, shape, where):
        if a is None:
            z = np.empty(shape, dtype=object)
            z.fill(self.field.zero)
            return z
        a = np.asarray(a, dtype=object)
        if a.size == 0 and int(np.prod(shape)) == 0:
            a = a.reshape(shape)
        if a.shape != shape:
            raise BimoduleError(f"{where}: action array has shape {a.shape}, expected {shape}")
        return a

    def dim(self, u, t):
        return self.space[(u, t)].dim

    def left_matrix(self, uvec, u, u2, t):
        """Matrix of ``m ↦ u • m`` for an arbitrary u ∈ Hom_𝒰(u, u2)."""
        acts = self.left[(u, u2, t)]
        out = self.field.zeros(acts.shape[1], acts.shape[2])
        for k, c in enumerate(uvec):
            if c != 0:
                out = out + c * acts[k]
        return self.field.reduce(out)

    def right_matrix(self, tvec, t, t2, u):
        """Matrix of ``m ↦ m • t`` for an arbitrary t ∈ Hom_𝒯(t, t2)."""
        acts = self.right[(t, t2, u)]
        out = self.field.zeros(acts.shape[1], acts.shape[2])
        for k, c in enumerate(tvec):
            if c != 0:
                out = out + c * acts[k]
        return self.field.reduce(out)

    def total_dim(self):
        return sum(sp.dim for sp in self.space.values())

    def opposite(self):
        """M̄ over (𝒰ᵒᵖ as the new 𝒯, 𝒯ᵒᵖ as the new 𝒰); M̄(T,U) = M(U,T)."""
        if self._op is None:
            tc, uc = self.ucat.opposite(), self.tcat.opposite()
            space = {(t, u): self.space[(u, t)] for (u, t) in self.space}
            # new left action along t^op: T2 → T (t: T → T2) is the old right action
            left = {(t2, t, u): a for (t, t2, u), a in self.right.items()}
            # new right action along u^op: U2 → U (u: U → U2) is the old left action
            right = {(u2, u, t): a for (u, u2, t), a in self.left.items()}
            op = Bimodule(tc, uc, space, left, right)
            op._op = self
            self._op = op
        return self._op

    def with_zero_objects(self):
        """Extend by zero along the adjoined zero objects of 𝒯 and 𝒰."""
        tc, uc = with_zero_object(self.tcat), with_zero_object(self.ucat)
        if tc is self.tcat and uc is self.ucat:
            return self
        return Bimodule(tc, uc, self.space, self.left, self.right)

    def __eq__(self, other):
        if not isinstance(other, Bimodule):
            return NotImplemented
        return (self.tcat is other.tcat and self.ucat is other.ucat
                and self.space == other.space
                and all(np.array_equal(self.left[k], other.left[k]) for k in self.left)
                and all(np.array_equal(self.right[k], other.right[k]) for k in self.right))

    __hash__ = object.__hash__


def zero_bimodule(tcat, ucat):
    return Bimodule(tcat, ucat, {}, {}, {})


def check_bimodule(M):
    """Functoriality of both actions and their commutation, on all bases."""
    rep = Report("bimodule")
    fld = M.field
    tc, uc = M.tcat, M.ucat
    eq = np.array_equal
    for t in tc.objects:
        for u in uc.objects:
            n = M.dim(u, t)
            rep.checked += 2
            if not eq(M.left_matrix(uc.identity(u), u, u, t), fld.eye(n)):
                rep.fail(law="left_identity", U=u, T=t)
            if not eq(M.right_matrix(tc.identity(t), t, t, u), fld.eye(n)):
                rep.fail(law="right_identity", U=u, T=t)
    for u1, u2, u3 in itertools.product(uc.objects, repeat=3):
        t12 = uc.table(u1, u2, u3)
        for t in tc.objects:
            for j in range(uc.dim(u2, u3)):
                g = M.left[(u2, u3, t)][j]
                for i in range(uc.dim(u1, u2)):
                    rep.checked += 1
                    lhs = M.left_matrix(t12[j, i], u1, u3, t)
                    rhs = matmul(fld, g, M.left[(u1, u2, t)][i])
                    if not eq(lhs, rhs):
                        rep.fail(law="left_composition", objects=[u1, u2, u3], T=t,
                                 basis=[uc.hom(u2, u3).labels[j], uc.hom(u1, u2).labels[i]])
    for t1, t2, t3 in itertools.product(tc.objects, repeat=3):
        tab = tc.table(t1, t2, t3)
        for u in uc.objects:
            for j in range(tc.dim(t2, t3)):
                for i in range(tc.dim(t1, t2)):
                    rep.checked += 1
                    # m • (g ∘ f) = (m • g) • f
                    lhs = M.right_matrix(tab[j, i], t1, t3, u)
                    rhs = matmul(fld, M.right[(t1, t2, u)][i], M.right[(t2, t3, u)][j])
                    if not eq(lhs, rhs):
                        rep.fail(law="right_composition", objects=[t1, t2, t3], U=u,
                                 basis=[tc.hom(t2, t3).labels[j], tc.hom(t1, t2).labels[i]])
    for u, u2 in itertools.product(uc.objects, repeat=2):
        for t, t2 in itertools.product(tc.objects, repeat=2):
            for j in range(uc.dim(u, u2)):
                for i in range(tc.dim(t, t2)):
                    rep.checked += 1
                    lhs = matmul(fld, M.left[(u, u2, t)][j], M.right[(t, t2, u)][i])
                    rhs = matmul(fld, M.right[(t, t2, u2)][i], M.left[(u, u2, t2)][j])
                    if not eq(lhs, rhs):
                        rep.fail(law="commuting_actions", U=[u, u2], T=[t, t2],
                                 basis=[uc.hom(u, u2).labels[j], tc.hom(t, t2).labels[i]])
    return rep


def hom_bimodule(C, tcat, ucat):
    """M(U,T) = Hom_C(T,U) with post- and pre-composition.

    ``tcat`` and ``ucat`` must be full subcategories of ``C`` (same object
    names, same Hom bases), possibly with a zero object adjoined.
    """
    Z = WithZero.ZERO
    space, left, right = {}, {}, {}

    def hm(x, y):
        return VectorSpace(()) if Z in (x, y) else C.hom(x, y)

    for u in ucat.objects:
        for t in tcat.objects:
            space[(u, t)] = hm(t, u)
    fld = C.field
    for u, u2, t in itertools.product(ucat.objects, ucat.objects, tcat.objects):
        if Z in (u, u2, t):
            continue
        n = ucat.dim(u, u2)
        mats = [C.left_mult_matrix(fld.unit_vector(n, k), t, u, u2) for k in range(n)]
        left[(u, u2, t)] = _stack(fld, mats, C.dim(t, u2), C.dim(t, u))
    for t, t2, u in itertools.product(tcat.objects, tcat.objects, ucat.objects):
        if Z in (t, t2, u):
            continue
        n = tcat.dim(t, t2)
        mats = [C.right_mult_matrix(fld.unit_vector(n, k), t, t2, u) for k in range(n)]
        right[(t, t2, u)] = _stack(fld, mats, C.dim(t, u), C.dim(t2, u))
    return Bimodule(tcat, ucat, space, left, right)


def bimodule_from_hom(C, U_objs, T_objs):
    """The restricted Hom bifunctor on disjoint object lists of ``C``."""
    U_objs, T_objs = list(U_objs), list(T_objs)
    overlap = set(U_objs) & set(T_objs)
    if overlap:
        raise BimoduleError(f"U and T object lists overlap: {sorted(overlap)}")
    for x in U_objs + T_objs:
        C.check_object(x)
    return hom_bimodule(C, full_subcategory(C, T_objs), full_subcategory(C, U_objs))


def mt_module(M, t):
    """M_T: the 𝒰-module U ↦ M(U,T)."""
    from .functor_modules import FiniteModule

    if t not in M.tcat.objects:
        raise CategoryError(f"unknown T object {t!r}")
    uc = M.ucat
    dims = {u: M.dim(u, t) for u in uc.objects}
    action = {(u, u2): M.left[(u, u2, t)] for u in uc.objects for u2 in uc.objects}
    return FiniteModule(uc, dims, action)


def mu_module(M, u):
    """M_U: the 𝒯ᵒᵖ-module T ↦ M(U,T)."""
    from .functor_modules import FiniteModule

    if u not in M.ucat.objects:
        raise CategoryError(f"unknown U object {u!r}")
    tc = M.tcat
    dims = {t: M.dim(u, t) for t in tc.objects}
    # Hom_op(t2, t) = Hom(t, t2) acts M(u,t2) → M(u,t)
    action = {(t2, t): M.right[(t, t2, u)] for t in tc.objects for t2 in tc.objects}
    return FiniteModule(tc.opposite(), dims, action)


# ---------------------------------------------------------------------------
# Ext¹ for representations of acyclic relation-free quivers


class Ext1Space:
    """Ext¹(Y, X) as coker δ, δ(φ)_a = X_a φ_i − φ_j Y_a.

    Coordinates of ⊕_a Hom_K(Y_i, X_j) run over arrows in quiver order, each
    block row-major.  ``keep``/``proj`` describe the canonical complement.
    """

    def __init__(self, pc, Y, X):
        q = pc.quiver
        fld = pc.field
        self.pc, self.Y, self.X = pc, Y, X
        self.offsets = {}
        pos = 0
        for a, s, t in q.arrows:
            self.offsets[a] = (pos, Y.dims[s], X.dims[t])
            pos += Y.dims[s] * X.dims[t]
        ncod = pos
        voff, pos = {}, 0
        for v in q.vertices:
            voff[v] = (pos, Y.dims[v], X.dims[v])
            pos += Y.dims[v] * X.dims[v]
        delta = fld.zeros(ncod, pos)
        for a, s, t in q.arrows:
            o, ys, xt = self.offsets[a]
            xa, ya = X.arrow_matrix(a), Y.arrow_matrix(a)
            os_, yv, xv = voff[s]
            ot, yw, xw = voff[t]
            # vec row-major: X_a φ_s ↦ kron(X_a, I), φ_t Y_a ↦ kron(I, Y_aᵀ)
            if xt and ys:
                if yv * xv:
                    delta[o:o + xt * ys, os_:os_ + xv * yv] += np.kron(xa, fld.eye(ys))
                if yw * xw:
                    delta[o:o + xt * ys, ot:ot + xw * yw] -= np.kron(fld.eye(xt), ya.T)
        self.delta = fld.reduce(delta)
        self.keep, self.proj = complement_coords(fld, self.delta)
        self.ncod = ncod

    @property
    def dim(self):
        return len(self.keep)

    def section(self):
        fld = self.pc.field
        s = fld.zeros(self.ncod, len(self.keep))
        for k, j in enumerate(self.keep):
            s[j, k] = fld.one
        return s

    def _blockwise(self, other, fn):
        fld = self.pc.field
        op = fld.zeros(other.ncod, self.ncod)
        for a, s, t in self.pc.quiver.arrows:
            o1, ys1, xt1 = self.offsets[a]
            o2, ys2, xt2 = other.offsets[a]
            if xt1 * ys1 and xt2 * ys2:
                op[o2:o2 + xt2 * ys2, o1:o1 + xt1 * ys1] = fn(s, t)
        return matmul(fld, matmul(fld, other.proj, op), self.section())

    def post(self, g, other):
        """Induced map Ext¹(Y,X) → Ext¹(Y,X') of g: X → X' (``g[v]`` matrices)."""
        fld = self.pc.field
        return self._blockwise(other, lambda s, t: np.kron(g[t], fld.eye(self.Y.dims[s])))

    def pre(self, h, other):
        """Induced map Ext¹(Y,X) → Ext¹(Y',X) of h: Y' → Y."""
        fld = self.pc.field
        return self._blockwise(other, lambda s, t: np.kron(fld.eye(self.X.dims[t]), h[s].T))


def _check_quiver_for_ext(pc):
    q = pc.quiver
    if q.relations:
        raise BimoduleError("Ext¹ builder needs a quiver without relations")
    if not q.is_acyclic():
        raise BimoduleError("Ext¹ builder needs an acyclic quiver")


def ext1_dim(pc, Y, X):
    _check_quiver_for_ext(pc)
    return Ext1Space(pc, Y, X).dim


def bimodule_ext1(pc, reps, category=None):
    """Êxt¹ on the full subcategory 𝒞 of ``reps``: M(U,T) = Ext¹(T,U).

    ``reps`` maps names to modules over the path category ``pc``.  Returns
    the bimodule over ``(𝒞, 𝒞)``; ``category`` may pass a prebuilt 𝒞.
    """
    from .functor_modules import module_category

    _check_quiver_for_ext(pc)
    C = category if category is not None else module_category(reps)
    names = list(C.objects)
    ext = {(u, t): Ext1Space(pc, C.modules[t], C.modules[u]) for u in names for t in names}
    space = {(u, t): VectorSpace(tuple(f"x{k}" for k in range(e.dim))) for (u, t), e in ext.items()}
    fld = pc.field
    left, right = {}, {}
    for u, u2, t in itertools.product(names, repeat=3):
        mats = [ext[(u, t)].post(C.nat_components(u, u2, k), ext[(u2, t)])
                for k in range(C.dim(u, u2))]
        left[(u, u2, t)] = _stack(fld, mats, ext[(u2, t)].dim, ext[(u, t)].dim)
    for t, t2, u in itertools.product(names, repeat=3):
        # m • h for h: t → t2 maps Ext¹(t2, u) → Ext¹(t, u)
        mats = [ext[(u, t2)].pre(C.nat_components(t, t2, k), ext[(u, t)])
                for k in range(C.dim(t, t2))]
        right[(t, t2, u)] = _stack(fld, mats, ext[(u, t)].dim, ext[(u, t2)].dim)
    return Bimodule(C, C, space, left, right)


def ext1_dim_oracle(pc, Y, X):
    """dim Hom(ΩY, X) − dim Hom(P(Y), X) + dim Hom(Y, X) via a projective cover."""
    from .functor_modules import hom_modules, module_kernel, projective_cover

    _check_quiver_for_ext(pc)
    P, eps = projective_cover(pc, Y)
    omega, _ = module_kernel(P, Y, eps)
    return (hom_modules(omega, X).dim - hom_modules(P, X).dim + hom_modules(Y, X).dim)
