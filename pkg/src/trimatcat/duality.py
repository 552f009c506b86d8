"""The duality 𝔻 = Hom_K(−, K), the comma-side duality Θ̂, and the ν square."""
from __future__ import annotations

import numpy as np

from .functor_modules import (
    FiniteModule, ModuleTriple, TripleMorphism, _module_from_triple, check_module,
    check_triple, check_triple_morphism, identity_triple_morphism, is_natural,
)
from .klinear_core import Report
from .trimat import opposite_iso


def dualize_module(C):
    """𝔻C over the opposite category; the action of f is the transpose of C(f)."""
    op = C.base.opposite()
    action = {(y, x): np.transpose(a, (0, 2, 1)) for (x, y), a in C.action.items()}
    return FiniteModule(op, dict(C.dims), action)


def dual_map(eta):
    """𝔻η: 𝔻B → 𝔻A for η: A → B (objectwise transpose)."""
    return {x: m.T.copy() for x, m in eta.items()}


def double_dual_check(C):
    """Evaluation C → 𝔻𝔻C is the identity in dual coordinates; verify it is a natural iso."""
    rep = Report("double_dual")
    DD = dualize_module(dualize_module(C))
    rep.checked += 1
    if DD.base is not C.base:
        rep.fail(check="base_category")
        return None, rep
    ev = {x: C.field.eye(C.dims[x]) for x in C.base.objects}
    rep.extend(check_module(dualize_module(C)))
    rep.checked += 2
    if DD != C:
        rep.fail(check="double_dual_data")
    if not is_natural(C, DD, ev):
        rep.fail(check="evaluation_natural")
    return ev, rep


def theta_hat(tr):
    """(A, f, B) ↦ (𝔻B, f̄, 𝔻A) with [f̄_U(s)]_T(m)(x) = s(m · x)."""
    Mbar = tr.M.opposite()
    A2 = dualize_module(tr.B)
    B2 = dualize_module(tr.A)
    act = {(t, u): np.transpose(a, (2, 1, 0)) for (u, t), a in tr.act.items()}
    return ModuleTriple(Mbar, A2, B2, act)


def theta_hat_morphism(phi, src=None, tgt=None):
    """(α, β): X → Y  ↦  (𝔻β, 𝔻α): Θ̂Y → Θ̂X."""
    src = theta_hat(phi.target) if src is None else src
    tgt = theta_hat(phi.source) if tgt is None else tgt
    return TripleMorphism(src, tgt, dual_map(phi.beta), dual_map(phi.alpha))


def check_theta_twice(tr):
    """Θ̂Θ̂ is the identity on data; the identity morphism is a valid iso."""
    rep = Report("theta_twice")
    back = theta_hat(theta_hat(tr))
    rep.checked += 1
    if back.M is not tr.M or back != tr:
        rep.fail(check="theta_twice_equal")
        return rep
    rep.extend(check_triple_morphism(identity_triple_morphism(tr)))
    return rep


def _pullback(module, ft):
    """Restrict a module over ft.target along a covariant functor table."""
    src = ft.source
    fld = module.field
    dims = {x: module.dims[ft.obj_map[x]] for x in src.objects}
    action = {}
    for x in src.objects:
        for y in src.objects:
            fx, fy = ft.obj_map[x], ft.obj_map[y]
            mat = ft.hom_maps[(x, y)]
            st = np.empty((src.dim(x, y), dims[y], dims[x]), dtype=object)
            st.fill(fld.zero)
            for k in range(src.dim(x, y)):
                st[k] = module.matrix(fx, fy, mat[:, k])
            action[(x, y)] = st
    return FiniteModule(src, dims, action)


def nu_square_check(tr, L):
    """Compare 𝕋*(𝔉̄(Θ̂ tr)) with 𝔻(𝔉 tr) through the block swap ν(s′, w′) = (w′, s′)."""
    rep = Report("nu_square")
    rep.extend(check_triple(tr))
    fld = tr.field
    Lbar, ft = opposite_iso(L)
    th = theta_hat(tr)
    rep.extend(check_triple(th))
    path1 = _pullback(_module_from_triple(th, Lbar), ft)
    path2 = dualize_module(_module_from_triple(tr, L))
    Lop = path2.base
    nu = {}
    for x in L.objects:
        t, u = L.pair(x)
        a, b = tr.A.dims[t], tr.B.dims[u]
        m = fld.zeros(a + b, a + b)
        # path1 coordinates: (𝔻B(U), 𝔻A(T)); path2: (A(T)*, B(U)*)
        for i in range(a):
            m[i, b + i] = fld.one
        for j in range(b):
            m[a + j, j] = fld.one
        nu[x] = m
        rep.checked += 1
        if path1.dims[x] != path2.dims[x]:
            rep.fail(check="dimension", object=x)
    if not rep.ok:
        return nu, rep
    for x in Lop.objects:
        for y in Lop.objects:
            labels = Lop.hom(x, y).labels
            for k in range(Lop.dim(x, y)):
                rep.checked += 1
                lhs = path2.action[(x, y)][k] @ nu[x] if nu[x].size else path2.action[(x, y)][k]
                rhs = nu[y] @ path1.action[(x, y)][k] if nu[y].size else path1.action[(x, y)][k]
                if not np.array_equal(fld.reduce(np.asarray(lhs, dtype=object)),
                                      fld.reduce(np.asarray(rhs, dtype=object))):
                    rep.fail(check="naturality", source=x, target=y, morphism=labels[k])
    return nu, rep


def witness_to_dict(nu, rep, fld):
    return {
        "schema_version": 1,
        "nu": {x: [[fld.format(v) for v in row] for row in m.tolist()] for x, m in nu.items()},
        "report": rep.to_dict(),
    }
