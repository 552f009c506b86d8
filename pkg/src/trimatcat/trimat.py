"""The triangular matrix category Λ = [𝒯 0; M 𝒰].

Objects are pairs named ``"T|U"``.  Hom((T,U),(T',U')) has the block basis
``t:<label>`` (Hom_𝒯(T,T')), ``m:<label>`` (M(U',T)) and ``u:<label>``
(Hom_𝒰(U,U')), in that order.
"""
from __future__ import annotations

import itertools

import numpy as np

from .bimodule import BimoduleError, check_bimodule, zero_bimodule
from .exact_linalg import VectorSpace, in_span, is_zero, matmul, nullspace, rank, row_basis
from .klinear_core import (
    AdditiveClosure, CategoryError, FormalSumObject, FunctorTable, LinearCategory,
    Report, radical_subspace, radical_table,
)


class LambdaCategory(LinearCategory):
    def __init__(self, tcat, ucat, bimod, sep="|"):
        tcat.field.check(ucat.field)
        self.tcat, self.ucat, self.bimod = tcat, ucat, bimod
        self.sep = sep
        self._pairs = {}
        names = []
        for t in tcat.objects:
            for u in ucat.objects:
                n = f"{t}{sep}{u}"
                self._pairs[n] = (t, u)
                names.append(n)
        zeros = [self.obj(t, u) for t in tcat.zero_objects for u in ucat.zero_objects]
        super().__init__(names, tcat.field, zeros)
        self._homs = {}
        self._blocks = {}
        self._component_rad = {}

    def component_radical(self, side, a, b):
        """rad_𝒯(a, b) or rad_𝒰(a, b), memoized per instance."""
        key = (side, a, b)
        if key not in self._component_rad:
            cat = self.tcat if side == "t" else self.ucat
            self._component_rad[key] = radical_subspace(cat, a, b)
        return self._component_rad[key]

    def pair(self, x):
        try:
            return self._pairs[x]
        except KeyError:
            raise CategoryError(f"unknown Λ object {x!r}") from None

    def obj(self, t, u):
        return f"{t}{self.sep}{u}"

    def blocks(self, x, y):
        key = (x, y)
        if key not in self._blocks:
            (t, u), (t2, u2) = self.pair(x), self.pair(y)
            nt, nm, nu = self.tcat.dim(t, t2), self.bimod.dim(u2, t), self.ucat.dim(u, u2)
            self._blocks[key] = {"t": (0, nt), "m": (nt, nm), "u": (nt + nm, nu)}
            labels = ([f"t:{s}" for s in self.tcat.hom(t, t2).labels] +
                      [f"m:{s}" for s in self.bimod.space[(u2, t)].labels] +
                      [f"u:{s}" for s in self.ucat.hom(u, u2).labels])
            self._homs[key] = VectorSpace(tuple(labels))
        return self._blocks[key]

    def hom(self, x, y):
        self.blocks(x, y)
        return self._homs[(x, y)]

    def split(self, x, y, v):
        b = self.blocks(x, y)
        return tuple(np.asarray(v[o:o + n], dtype=object) for o, n in
                     (b["t"], b["m"], b["u"]))

    def join(self, x, y, t=None, m=None, u=None):
        """Coordinates of (t, m, u) in Hom(x, y); missing blocks are 0."""
        v = self.field.zero_vector(self.dim(x, y))
        for key, part in (("t", t), ("m", m), ("u", u)):
            if part is not None:
                o, n = self.blocks(x, y)[key]
                v[o:o + n] = part
        return v

    def _build_table(self, x, y, z):
        fld = self.field
        (t1, u1), (t2, u2), (t3, u3) = self.pair(x), self.pair(y), self.pair(z)
        bxy, byz, bxz = self.blocks(x, y), self.blocks(y, z), self.blocks(x, z)
        M = self.bimod
        t = np.empty((self.dim(y, z), self.dim(x, y), self.dim(x, z)), dtype=object)
        t.fill(fld.zero)
        # (t2,m2,u2)(t1,m1,u1) = (t2 t1, m2 • t1 + u2 • m1, u2 u1)
        otg, ntg = byz["t"]
        otf, ntf = bxy["t"]
        oto, nto = bxz["t"]
        if ntg and ntf and nto:
            t[otg:otg + ntg, otf:otf + ntf, oto:oto + nto] = self.tcat.table(t1, t2, t3)
        oug, nug = byz["u"]
        ouf, nuf = bxy["u"]
        ouo, nuo = bxz["u"]
        if nug and nuf and nuo:
            t[oug:oug + nug, ouf:ouf + nuf, ouo:ouo + nuo] = self.ucat.table(u1, u2, u3)
        omo, nmo = bxz["m"]
        if nmo:
            omg, nmg = byz["m"]
            for j in range(nmg):
                for i in range(ntf):
                    # m2 • t1 with m2 ∈ M(u3, t2), t1: t1 → t2, landing in M(u3, t1)
                    t[omg + j, otf + i, omo:omo + nmo] = M.right[(t1, t2, u3)][i][:, j]
            omf, nmf = bxy["m"]
            for j in range(nug):
                for i in range(nmf):
                    # u2 • m1 with m1 ∈ M(u2, t1), u2: u2 → u3
                    t[oug + j, omf + i, omo:omo + nmo] = M.left[(u2, u3, t1)][j][:, i]
        return t

    def identity(self, x):
        t, u = self.pair(x)
        return self.join(x, x, t=self.tcat.identity(t), u=self.ucat.identity(u))


def build_lambda(tcat, ucat, M, zero_objects=False, check=True):
    """Λ = [𝒯 0; M 𝒰]; optionally with zero objects adjoined to 𝒯 and 𝒰."""
    if M.tcat is not tcat or M.ucat is not ucat:
        raise BimoduleError("bimodule does not live over the given categories")
    if check:
        rep = check_bimodule(M)
        if not rep.ok:
            raise BimoduleError(f"invalid bimodule: {rep.failures[0]}")
    if zero_objects:
        M = M.with_zero_objects()
        tcat, ucat = M.tcat, M.ucat
    return LambdaCategory(tcat, ucat, M)


def product_lambda(tcat, ucat):
    """Λ with M = 0."""
    return build_lambda(tcat, ucat, zero_bimodule(tcat, ucat))


def lambda_radical(L, x, y):
    """rad_𝒯(T,T′) ⊕ M(U′,T) ⊕ rad_𝒰(U,U′) in the block basis."""
    fld = L.field
    (t, u), (t2, u2) = L.pair(x), L.pair(y)
    n = L.dim(x, y)
    vecs = []
    rt = L.component_radical("t", t, t2)
    for r in rt:
        vecs.append(L.join(x, y, t=r))
    nm = L.bimod.dim(u2, t)
    for k in range(nm):
        vecs.append(L.join(x, y, m=fld.unit_vector(nm, k)))
    ru = L.component_radical("u", u, u2)
    for r in ru:
        vecs.append(L.join(x, y, u=r))
    return row_basis(fld, vecs, n)


def check_radical_formula(L, pairs=None):
    """The block formula agrees with J(End(x ⊕ y)) as subspaces."""
    rep = Report("radical_formula")
    fld = L.field
    jac = radical_table(L, pairs)
    for (x, y), b in jac.items():
        rep.checked += 1
        a = lambda_radical(L, x, y)
        if not (all(in_span(fld, b, v) for v in a) and all(in_span(fld, a, v) for v in b)):
            rep.fail(source=x, target=y, block_dim=int(a.shape[0]), jacobson_dim=int(b.shape[0]))
    return rep


def check_hom_finite(L):
    rep = Report("hom_finite")
    for x, y in itertools.product(L.objects, repeat=2):
        (t, u), (t2, u2) = L.pair(x), L.pair(y)
        rep.checked += 1
        expect = L.tcat.dim(t, t2) + L.bimod.dim(u2, t) + L.ucat.dim(u, u2)
        if L.dim(x, y) != expect:
            rep.fail(source=x, target=y, dim=L.dim(x, y), expected=expect)
    return rep


def check_coproducts(L, x, x2, z):
    """dim Hom(x ⊕ x2, z) = dim Hom(x, z) + dim Hom(x2, z) in the additive closure."""
    rep = Report("coproducts")
    closure = AdditiveClosure(L, [FormalSumObject.of(L, (x, x2)), FormalSumObject((z,))])
    s = closure.objects[0]
    rep.checked += 1
    if closure.dim(s, z) != L.dim(x, z) + L.dim(x2, z):
        rep.fail(sum=[x, x2], target=z)
    return rep


# ---------------------------------------------------------------------------
# the opposite category and 𝕋


def opposite_lambda(L):
    """Λ̄ = [𝒰ᵒᵖ 0; M̄ 𝒯ᵒᵖ] built from the opposite bimodule."""
    Mbar = L.bimod.opposite()
    return LambdaCategory(Mbar.tcat, Mbar.ucat, Mbar)


def opposite_iso(L):
    """𝕋: Λᵒᵖ → Λ̄, (T,U) ↦ (U,T), [t 0; m u]ᵒᵖ ↦ [uᵒᵖ 0; m tᵒᵖ]."""
    Lbar = opposite_lambda(L)
    Lop = L.opposite()
    fld = L.field
    obj_map = {}
    for x in L.objects:
        t, u = L.pair(x)
        obj_map[x] = Lbar.obj(u, t)
    hom_maps = {}
    for x, y in itertools.product(L.objects, repeat=2):
        # Λᵒᵖ(x, y) = Λ(y, x): coordinates [t | m | u] of a map y → x
        b = L.blocks(y, x)
        fx, fy = obj_map[x], obj_map[y]
        bb = Lbar.blocks(fx, fy)
        n = L.dim(y, x)
        mat = fld.zeros(Lbar.dim(fx, fy), n)
        for src, dst in (("t", "u"), ("m", "m"), ("u", "t")):
            o, k = b[src]
            o2, k2 = bb[dst]
            if k != k2:
                raise CategoryError("block dimension mismatch under 𝕋")
            for i in range(k):
                mat[o2 + i, o + i] = fld.one
        hom_maps[(x, y)] = mat
    return Lbar, FunctorTable(Lop, Lbar, obj_map, hom_maps)


def check_opposite_random(L, ft, pairs=100, rng=None):
    """Composition preservation of 𝕋 on random composable pairs."""
    rep = Report("opposite_iso_random")
    rng = rng if rng is not None else np.random.default_rng(0)
    Lop, Lbar = ft.source, ft.target
    fld = L.field
    triples = [(x, y, z) for x, y, z in itertools.product(Lop.objects, repeat=3)
               if Lop.dim(x, y) and Lop.dim(y, z)]
    if not triples:
        return rep
    for _ in range(pairs):
        x, y, z = triples[int(rng.integers(len(triples)))]
        f = fld.array([fld.random(rng) for _ in range(Lop.dim(x, y))])
        g = fld.array([fld.random(rng) for _ in range(Lop.dim(y, z))])
        lhs = ft.apply(x, z, Lop.compose(g, f, x, y, z))
        fx, fy, fz = (ft.obj_map[o] for o in (x, y, z))
        rhs = Lbar.compose(ft.apply(y, z, g), ft.apply(x, y, f), fx, fy, fz)
        rep.checked += 1
        if not np.array_equal(lhs, rhs):
            rep.fail(objects=[x, y, z])
    return rep


# ---------------------------------------------------------------------------
# idempotents


class SplitError(ValueError):
    pass


def verify_idempotent_split(L, x, e, t_split, u_split):
    """Kernel of an idempotent e = (t, m, u) on x = (T, U).

    ``t_split = (L_obj, mu, r)`` with μ: L → T, r: T → L, and
    ``u_split = (K_obj, nu, p)`` with ν: K → U, p: U → K, such that
    r μ = 1, μ r = 1 − t (and likewise for u).  The kernel is
    [μ 0; −m•μ ν]: (L, K) → (T, U); factorizations use m′ = p • n.
    """
    fld = L.field
    tc, uc, M = L.tcat, L.ucat, L.bimod
    T, U = L.pair(x)
    e = np.asarray(e, dtype=object)
    if not np.array_equal(L.compose(e, e, x, x, x), e):
        raise SplitError("e is not idempotent")
    if t_split is None or u_split is None:
        raise SplitError("component splitting data is required for both 𝒯 and 𝒰")
    tpart, mpart, upart = L.split(x, x, e)
    Lo, mu, r = t_split
    Ko, nu, p = u_split
    mu, r, nu, p = (np.asarray(v, dtype=object) for v in (mu, r, nu, p))
    rep = Report("idempotent_split")
    # component witnesses
    checks = [
        ("r∘μ = 1_L", tc.compose(r, mu, Lo, T, Lo), tc.identity(Lo)),
        ("μ∘r = 1_T − t", tc.compose(mu, r, T, Lo, T), fld.reduce(tc.identity(T) - tpart)),
        ("p∘ν = 1_K", uc.compose(p, nu, Ko, U, Ko), uc.identity(Ko)),
        ("ν∘p = 1_U − u", uc.compose(nu, p, U, Ko, U), fld.reduce(uc.identity(U) - upart)),
    ]
    for name, lhs, rhs in checks:
        rep.checked += 1
        if not np.array_equal(lhs, rhs):
            rep.fail(check=name)
    if not rep.ok:
        raise SplitError(f"component splitting data is wrong: {rep.failures[0]['check']}")
    k_obj = L.obj(Lo, Ko)
    m_mu = matmul_vec(fld, M.right_matrix(mu, Lo, T, U), mpart)
    kmap = L.join(k_obj, x, t=mu, m=fld.reduce(-m_mu), u=nu)
    rep.checked += 1
    if not is_zero(L.compose(e, kmap, k_obj, x, x)):
        rep.fail(check="e ∘ kernel = 0")
    for y in L.objects:
        n = L.dim(y, x)
        if n == 0:
            continue
        left_e = L.left_mult_matrix(e, y, x, x)
        tests = nullspace(fld, left_e) if left_e.shape[0] else fld.eye(n)
        for g in tests:
            ty, uy = L.pair(y)
            alpha, nvec, beta = L.split(y, x, g)
            a2 = tc.compose(r, alpha, ty, T, Lo)
            b2 = uc.compose(p, beta, uy, U, Ko)
            m2 = matmul_vec(fld, M.left_matrix(p, U, Ko, ty), nvec)
            fac = L.join(y, k_obj, t=a2, m=m2, u=b2)
            rep.checked += 1
            if not np.array_equal(L.compose(kmap, fac, y, k_obj, x), g):
                rep.fail(check="factorization", test_source=y,
                         morphism=[fld.format(c) for c in g])
        rep.checked += 1
        if L.dim(y, k_obj) and rank(fld, L.left_mult_matrix(kmap, y, k_obj, x)) != L.dim(y, k_obj):
            rep.fail(check="kernel_mono", test_source=y)
    return {"kernel_object": k_obj, "kernel_morphism": kmap, "report": rep}


def matmul_vec(fld, a, v):
    return matmul(fld, a, np.asarray(v, dtype=object).reshape(-1, 1)).reshape(-1)

