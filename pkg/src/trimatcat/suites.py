"""Property suites over fixtures or user-supplied inputs.

Every suite returns a list of ledger entries; a suite passes when every
entry passes.  Randomness comes only from ``numpy.random.default_rng``
seeded with (seed, suite, target), so each suite is reproducible on its own.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
import itertools

import numpy as np

from . import applications as apps
from .bimodule import check_bimodule, ext1_dim_oracle
from .duality import (
    check_theta_twice, double_dual_check, nu_square_check, theta_hat, theta_hat_morphism,
)
from .exact_linalg import UnsupportedFieldError
from .fixtures import (
    LAMBDA_FIXTURES, fixture, projectives, quiver_category, quiver_text, simples,
)
from .functor_modules import (
    Adjunction, check_adjunction_naturality, check_exact_sequence, check_f_representable,
    check_full_faithful, check_roundtrip, check_triple, cover_epi, g_functor, hom_triples,
    kernel_cokernel_triples, module_from_triple, projective_iso, random_module,
    random_module_map, random_triple, representable, roundtrip_iso, triple_morphism_from,
    zero_triple,
)
from .klinear_core import (
    Report, check_category_axioms, check_functor, check_radical_definition, check_radical_ideal,
)
from .quiver_cat import parse_quiver
from .trimat import (
    check_coproducts, check_hom_finite, check_opposite_random, check_radical_formula,
    lambda_radical, opposite_iso,
)

SUITES = ("axioms", "radical", "equivalence", "adjunction", "duality", "applications")
WINDOW_TRIALS = 1000


@dataclass
class Target:
    name: str
    L: object = None
    category: object = None
    pc: object = None
    triples: list = dc_field(default_factory=list)
    large: bool = False
    user: bool = False

    @property
    def M(self):
        return self.L.bimod if self.L is not None else None


def fixture_targets(field="Q", with_window=True):
    out = []
    for name in LAMBDA_FIXTURES:
        f = fixture(name, field)
        out.append(Target(name, f.L, pc=f.pc))
    if with_window:
        f = fixture("window3", field)
        out.append(Target("window3", f.L, pc=f.pc, large=True))
    return out


def entry(suite, target, rep, limit=10):
    return {
        "suite": suite,
        "target": target,
        "check": rep.name,
        "checked": rep.checked,
        "passed": rep.ok,
        "failures": rep.failures[:limit],
    }


def _rng(seed, suite, k):
    return np.random.default_rng([seed, SUITES.index(suite), k])


def preflight(tg):
    """Validity of user input: axioms, bimodule compatibility, triple identities."""
    reps = []
    if tg.category is not None:
        reps.append(check_category_axioms(tg.category))
    if tg.L is not None:
        for cat in (tg.L.tcat, tg.L.ucat):
            reps.append(check_category_axioms(cat))
        reps.append(check_bimodule(tg.L.bimod))
        for tr in tg.triples:
            reps.append(check_triple(tr))
    return reps


# ---------------------------------------------------------------------------


def suite_axioms(tg, rng, trials):
    reps = []
    if tg.pc is not None:
        r = check_category_axioms(tg.pc)
        r.name = "path_category_axioms"
        reps.append(r)
    if tg.L is None:
        return reps
    L = tg.L
    reps.append(check_bimodule(L.bimod))
    r = check_bimodule(L.bimod.opposite())
    r.name = "opposite_bimodule"
    reps.append(r)
    if tg.large:
        reps.append(check_category_axioms(L, trials=WINDOW_TRIALS, rng=rng))
    else:
        reps.append(check_category_axioms(L))
    reps.append(check_hom_finite(L))
    Lbar, ft = opposite_iso(L)
    reps.append(check_opposite_random(L, ft, pairs=min(trials, 100), rng=rng))
    if not tg.large:
        r = check_functor(ft)
        r.name = "opposite_iso"
        reps.append(r)
        r = check_category_axioms(Lbar)
        r.name = "opposite_lambda_axioms"
        reps.append(r)
    objs = L.objects
    if len(objs) >= 2:
        for z in objs[:4]:
            reps.append(check_coproducts(L, objs[0], objs[1], z))
    return reps


def suite_radical(tg, rng, trials):
    if tg.L is None:
        return []
    L = tg.L
    if L.field.characteristic != 0:
        raise UnsupportedFieldError(
            f"radical computations need characteristic 0, got field {L.field}")
    reps = [check_radical_formula(L)]
    rad = {(x, y): lambda_radical(L, x, y) for x, y in itertools.product(L.objects, repeat=2)}
    defn = Report("radical_definition")
    for (x, y), basis in rad.items():
        defn.extend(check_radical_definition(L, x, y, basis))
    reps.append(defn)
    # closure under composition is cubic in the object count; small targets only
    if not tg.large:
        reps.append(check_radical_ideal(L, rad))
    return reps


def _triples(tg, rng, n):
    if tg.user:
        return list(tg.triples)
    return [random_triple(tg.M, rng) for _ in range(n)]


def suite_equivalence(tg, rng, trials):
    if tg.L is None:
        return []
    L, M = tg.L, tg.M
    fld = L.field
    n = 0 if tg.large else min(trials, 50)
    trs = _triples(tg, rng, n)
    roundtrip, triple_ok, ff = Report("roundtrip"), Report("triple_identities"), Report("full_faithful")
    for i, tr in enumerate(trs):
        triple_ok.extend(check_triple(tr))
        roundtrip.extend(check_roundtrip(tr, L))
        ff.extend(check_full_faithful(tr, trs[(i + 1) % len(trs)], L))
    reps = [triple_ok, roundtrip, ff]
    rt_iso, proj, epi, kc = (Report("roundtrip_iso"), Report("projective_iso"),
                             Report("cover_epi"), Report("kernel_cokernel"))
    objs = [] if tg.large else L.objects
    for x in objs:
        rt_iso.extend(roundtrip_iso(representable(L, x), L)[3])
        P, _, r = projective_iso(L, x)
        proj.extend(r)
        t, u = L.pair(x)
        b = np.concatenate([fld.zero_vector(M.dim(u, t)), M.ucat.identity(u)])
        epi.extend(cover_epi(P, L, x, M.tcat.identity(t), b)[1])
        z = zero_triple(M)
        epi.extend(cover_epi(z, L, x, fld.zero_vector(0), fld.zero_vector(0))[1])
    for i, tr in enumerate(trs[: min(len(trs), 10)]):
        other = trs[(i + 1) % len(trs)]
        H = hom_triples(tr, other)
        if H.dim:
            kc.extend(kernel_cokernel_triples(triple_morphism_from(H, H.random(rng)))[4])
    return reps + [rt_iso, proj, epi, kc]


def suite_adjunction(tg, rng, trials):
    if tg.L is None or tg.large:
        return []
    M = tg.M
    adj, nat, fin = Report("adjunction"), Report("adjunction_naturality"), Report("g_finite")
    for _ in range(min(trials, 25)):
        A, pres = random_module(M.tcat, rng)
        B, _ = random_module(M.ucat, rng)
        adj.extend(Adjunction(M, A, pres, B).check())
        B2, _ = random_module(M.ucat, rng)
        A2, pres2 = random_module(M.tcat, rng)
        g = random_module_map(B, B2, rng)
        h = random_module_map(A2, A, rng)
        nat.extend(check_adjunction_naturality(M, A, pres, B, B2, g, A2, pres2, h))
        G = g_functor(M, B)
        fin.checked += 1
        if any(G.nats[t].dim != G.dims[t] for t in M.tcat.objects):
            fin.fail(check="solved_basis")
    rep = Report("f_representable")
    for t in M.tcat.objects:
        rep.extend(check_f_representable(M, t))
    return [adj, nat, fin, rep]


def _dual_exactness(phi):
    ker, cok, inc, proj, rep = kernel_cokernel_triples(phi)
    th = {k: theta_hat(v) for k, v in
          (("ker", ker), ("src", phi.source), ("tgt", phi.target), ("cok", cok))}
    seq = [theta_hat_morphism(proj, th["cok"], th["tgt"]),
           theta_hat_morphism(phi, th["tgt"], th["src"]),
           theta_hat_morphism(inc, th["src"], th["ker"])]
    out = check_exact_sequence(seq)
    out.name = "dual_exact"
    return out


def suite_duality(tg, rng, trials):
    if tg.L is None or tg.large:
        return []
    L = tg.L
    nu_proj, nu_rand = Report("nu_square_projective"), Report("nu_square_random")
    dd, tt, ex = Report("double_dual"), Report("theta_twice"), Report("dual_exact")
    if not tg.user:
        for x in L.objects:
            P, _, _ = projective_iso(L, x)
            nu_proj.extend(nu_square_check(P, L)[1])
    trs = _triples(tg, rng, min(trials, 25))
    for i, tr in enumerate(trs):
        nu_rand.extend(nu_square_check(tr, L)[1])
        tt.extend(check_theta_twice(tr))
        dd.extend(double_dual_check(module_from_triple(tr, L))[1])
        if i < 5:
            H = hom_triples(tr, trs[(i + 1) % len(trs)])
            if H.dim:
                ex.extend(_dual_exactness(triple_morphism_from(H, H.random(rng))))
    return [nu_proj, nu_rand, dd, tt, ex]


def suite_applications(field="Q"):
    """Fixed instances; they do not depend on the input target."""
    reps = []
    for name in ("a2", "a3"):
        pc = quiver_category(name, field)
        _, _, r = apps.splitting_equivalence(apps.sink_partition(pc))
        r.name = f"splitting_equivalence[{name}]"
        reps.append(r)
    w = fixture("window3", field).pc
    _, _, r = apps.splitting_equivalence(apps.sink_partition(w))
    r.name = "splitting_equivalence[window3]"
    reps.append(r)
    for name in ("a3", "a3_rel"):
        q = parse_quiver(quiver_text(name, field))
        r = Report(f"one_point_extension[{name}]")
        for i in q.sources():
            ope = apps.one_point_extension(q, i)
            r.extend(ope.report)
            r.checked += 1
            pc = ope.full
            total = sum(pc.dim(x, y) for x in pc.objects for y in pc.objects)
            image = sum(ope.L.dim(ope.functor.obj_map[x], ope.functor.obj_map[y])
                        for x in pc.objects for y in pc.objects)
            if total != image:
                r.fail(check="total_dim", source=i, path_category=total, lam=image)
        reps.append(r)
    a2 = quiver_category("a2", field)
    HL = apps.hom_matrix_category(a2)
    r = apps.check_diagonal_recovery(a2, HL)
    reps.append(r)
    r = check_category_axioms(HL)
    r.name = "hom_matrix_axioms"
    reps.append(r)
    for name, expect in (("a2", 1), ("kronecker", 2)):
        pc = quiver_category(name, field)
        S = simples(pc)
        E = apps.ext1_matrix_category(pc, S)
        r = Report(f"ext1_matrix[{name}]")
        nonzero = {k: v.dim for k, v in E.bimod.space.items() if v.dim}
        r.checked += 1
        if list(nonzero.values()) != [expect]:
            r.fail(check="unique_block", blocks={"->".join(k): v for k, v in nonzero.items()})
        for (u, t), d in E.bimod.space.items():
            r.checked += 1
            oracle = ext1_dim_oracle(pc, S[t], S[u])
            if oracle != d.dim:
                r.fail(check="oracle", U=u, T=t, ext=d.dim, oracle=oracle)
        r.extend(check_bimodule(E.bimod))
        r.extend(check_category_axioms(E))
        reps.append(r)
        P = projectives(pc)
        r = Report(f"ext1_projectives[{name}]")
        r.checked += 1
        if apps.ext1_matrix_category(pc, P).bimod.total_dim():
            r.fail(check="projective_ext_vanishes")
        reps.append(r)
    return reps


RUNNERS = {
    "axioms": suite_axioms,
    "radical": suite_radical,
    "equivalence": suite_equivalence,
    "adjunction": suite_adjunction,
    "duality": suite_duality,
}


def run_suite(suite, targets, seed=0, trials=50, field="Q"):
    """Ledger entries for one suite over the given targets."""
    out = []
    user = any(tg.user for tg in targets)
    for k, tg in enumerate(targets):
        if tg.user:
            pre = preflight(tg)
            for r in pre:
                out.append(entry(suite, tg.name, r))
            if not all(r.ok for r in pre):
                continue
        if suite == "applications":
            continue
        for r in RUNNERS[suite](tg, _rng(seed, suite, k), trials):
            out.append(entry(suite, tg.name, r))
    if suite == "applications" and not user:
        out.extend(entry(suite, "fixtures", r) for r in suite_applications(field))
    return out


def run(suites, targets, seed=0, trials=50, field="Q"):
    names = list(SUITES) if "all" in suites else list(suites)
    ledger = []
    for s in names:
        ledger.extend(run_suite(s, targets, seed, trials, field))
    return {
        "schema_version": 1,
        "seed": seed,
        "trials": trials,
        "suites": names,
        "passed": all(e["passed"] for e in ledger),
        "checks": ledger,
    }
