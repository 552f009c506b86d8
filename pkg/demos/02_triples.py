# Λ-modules are the same thing as triples (A, f, B) with f: M ⊗ A -> B.
import numpy as np

from trimatcat import fixture, module_from_triple, triple_from_module
from trimatcat.functor_modules import check_triple, random_triple, projective_triple

fx = fixture("a3")
L, M = fx.L, fx.M
print(L.objects)

rng = np.random.default_rng(0)
tr = random_triple(M, rng)
print("A dims", tr.A.dims, "B dims", tr.B.dims, "valid", check_triple(tr).ok)

C = module_from_triple(tr, L)
print("module dims", C.dims)

back = triple_from_module(C, L)
print("round trip dims", back.A.dims, back.B.dims)

# representables come out as (Hom(T,-), ., M_T ⊕ Hom(U,-))
P = projective_triple(L, "1|3")
print("P_(1|3):", P.A.dims, P.B.dims)
