# Building Λ = [𝒯 0; M 𝒰] from the quiver t --a--> u.
# 𝒯 and 𝒰 are the one-object categories on t and u, and M(u, t) = Hom(t, u).
from trimatcat import fixture, check_category_axioms, lambda_radical

L = fixture("a2").L
x = "t|u"
print(L.objects)
print(L.hom(x, x).labels)          # one basis vector per block

# morphisms compose like lower triangular 2x2 matrices
f = L.field.array([2, 3, 5])
g = L.field.array([7, 11, 13])
fmt = L.field.format
print([fmt(v) for v in L.compose(f, g, x, x, x)])   # 14, 76, 65

print(check_category_axioms(L).ok)

# the radical is the off-diagonal block
print([[fmt(v) for v in row] for row in lambda_radical(L, x, x)])
