# The dual of the triple (A, f, B) is (DB, f̄, DA) over Λ with the roles of
# 𝒯 and 𝒰 swapped.  nu_square_check compares the two routes to the dual module.
import numpy as np

from trimatcat import fixture, nu_square_check, theta_hat
from trimatcat.functor_modules import random_triple

L = fixture("kronecker").L
tr = random_triple(L.bimod, np.random.default_rng(3))
dual = theta_hat(tr)
print("triple ", tr.A.dims, tr.B.dims)
print("dual   ", dual.A.dims, dual.B.dims)

nu, rep = nu_square_check(tr, L)
print("squares commute:", rep.ok, "after", rep.checked, "checks")
for x, m in nu.items():
    print(x, m.astype(int).tolist())   # a block swap, so the entries are 0 and 1
