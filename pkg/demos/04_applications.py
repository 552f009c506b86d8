# Three ways to land in a triangular matrix category.
from trimatcat import applications as apps
from trimatcat.bimodule import ext1_dim_oracle
from trimatcat.fixtures import quiver_category, quiver_text, simples
from trimatcat.quiver_cat import parse_quiver

# 1. a category with no maps from U-objects to T-objects
pc = quiver_category("a3")
spec = apps.sink_partition(pc)
L, H, rep = apps.splitting_equivalence(spec)
print("splitting", spec.U_objs, spec.T_objs, rep.ok)
print(H.obj_map)

# a bad partition is reported with the offending arrow
try:
    apps.splitting_equivalence(apps.TorsionPairSpec(quiver_category("a2"), ["t"], ["u"]))
except apps.TorsionPairError as exc:
    print("rejected:", exc.witness)

# 2. one-point extension at a source vertex
ope = apps.one_point_extension(parse_quiver(quiver_text("a3_rel")), "1")
print("one point", {u: ope.M.dim(u, "1") for u in ope.M.ucat.objects}, ope.report.ok)

# 3. Ext^1 between simples as the bimodule
kr = quiver_category("kronecker")
S = simples(kr)
E = apps.ext1_matrix_category(kr, S)
print({k: v.dim for k, v in E.bimod.space.items()})
print("oracle", ext1_dim_oracle(kr, S["S1"], S["S2"]))
