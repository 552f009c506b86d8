"""Acceptance criteria 1-8, exact arithmetic, with wall-clock limits.

Each test prints one ``criterion N: PASS|FAIL`` line.  Fixture categories
are built once, before any clock starts.
"""
import itertools
import json
import time

import numpy as np
import pytest

from trimatcat import applications as apps
from trimatcat import jsonio
from trimatcat.bimodule import check_bimodule, ext1_dim_oracle
from trimatcat.cli import main
from trimatcat.duality import double_dual_check, nu_square_check
from trimatcat.exact_linalg import same_span
from trimatcat.fixtures import (
    LAMBDA_FIXTURES, fixture, projectives, quiver_category, quiver_text, simples,
)
from trimatcat.functor_modules import (
    Adjunction, check_adjunction_naturality, check_f_representable, check_full_faithful,
    check_roundtrip, check_triple, cover_epi, hom_triples, kernel_cokernel_triples,
    module_from_triple, projective_iso, random_module, random_module_map, random_triple,
    representable, triple_morphism_from,
)
from trimatcat.klinear_core import (
    Report, check_category_axioms, check_radical_definition, radical_table,
)
from trimatcat.quiver_cat import parse_quiver, path_category
from trimatcat.trimat import lambda_radical

SEED = 20240601


@pytest.fixture(scope="module", autouse=True)
def built_fixtures():
    for name in LAMBDA_FIXTURES + ("window3",):
        fixture(name)


def _rng(k):
    return np.random.default_rng([SEED, k])


def criterion(n, limit, capsys, body):
    start = time.perf_counter()
    reports, error = [], None
    try:
        reports = body()
    except Exception as exc:  # reported as FAIL below, then re-raised
        error = exc
    elapsed = time.perf_counter() - start
    bad = [r for r in reports if not r.ok]
    ok = error is None and not bad and elapsed < limit
    checked = sum(r.checked for r in reports)
    with capsys.disabled():
        print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} "
              f"({checked} checks, {elapsed:.2f}s, limit {limit}s)")
    if error is not None:
        raise error
    assert not bad, [(r.name, r.failures[:3]) for r in bad]
    assert elapsed < limit, f"took {elapsed:.2f}s"


def test_criterion_1_lambda_axioms(capsys):
    def body():
        reps = [check_category_axioms(fixture(name).L) for name in LAMBDA_FIXTURES]
        r = check_category_axioms(fixture("window3").L, trials=1000, rng=_rng(1))
        assert r.checked >= 1000
        return reps + [r]
    criterion(1, 5, capsys, body)


def test_criterion_2_radical(capsys):
    def body():
        reps = []
        for name in LAMBDA_FIXTURES + ("window3",):
            L = fixture(name).L
            formula, defn = Report(f"radical_formula[{name}]"), Report(f"radical_definition[{name}]")
            # each J(End(x ⊕ y)) serves both (x, y) and (y, x)
            for (x, y), jac in radical_table(L).items():
                ours = lambda_radical(L, x, y)
                formula.checked += 1
                if not same_span(L.field, ours, jac):
                    formula.fail(source=x, target=y)
                defn.extend(check_radical_definition(L, x, y, ours))
            reps += [formula, defn]
        return reps
    criterion(2, 5, capsys, body)


def test_criterion_3_equivalence(capsys):
    def body():
        reps = []
        for k, name in enumerate(LAMBDA_FIXTURES):
            L = fixture(name).L
            rng = _rng(300 + k)
            trs = [random_triple(L.bimod, rng) for _ in range(50)]
            rt, ff = Report(f"roundtrip[{name}]"), Report(f"full_faithful[{name}]")
            for i, tr in enumerate(trs):
                rt.extend(check_triple(tr))
                rt.extend(check_roundtrip(tr, L))
                ff.extend(check_full_faithful(tr, trs[(i + 1) % len(trs)], L))
            reps += [rt, ff]
        return reps
    criterion(3, 10, capsys, body)


def test_criterion_4_adjunction(capsys):
    def body():
        reps = []
        for k, name in enumerate(LAMBDA_FIXTURES):
            M = fixture(name).M
            rng = _rng(400 + k)
            adj, nat = Report(f"adjunction[{name}]"), Report(f"naturality[{name}]")
            for _ in range(25):
                A, pres = random_module(M.tcat, rng)
                B, _ = random_module(M.ucat, rng)
                adj.extend(Adjunction(M, A, pres, B).check())
                A2, pres2 = random_module(M.tcat, rng)
                B2, _ = random_module(M.ucat, rng)
                nat.extend(check_adjunction_naturality(
                    M, A, pres, B, B2, random_module_map(B, B2, rng),
                    A2, pres2, random_module_map(A2, A, rng)))
            reps += [adj, nat]
            reps += [check_f_representable(M, t) for t in M.tcat.objects]
        return reps
    criterion(4, 10, capsys, body)


def test_criterion_5_projectives_and_epis(capsys):
    def body():
        reps = []
        for k, name in enumerate(LAMBDA_FIXTURES):
            L = fixture(name).L
            M, fld = L.bimod, L.field
            rng = _rng(500 + k)
            for x in L.objects:
                P, _, r = projective_iso(L, x)
                reps.append(r)
                t, u = L.pair(x)
                a = M.tcat.identity(t)
                b = np.concatenate([fld.zero_vector(M.dim(u, t)), M.ucat.identity(u)])
                reps.append(cover_epi(P, L, x, a, b)[1])
                # a cyclic quotient of P_x, covered through the image of its generator
                for y in L.objects:
                    H = hom_triples(projective_iso(L, y)[0], P)
                    if not H.dim:
                        continue
                    _, cok, _, proj, r = kernel_cokernel_triples(triple_morphism_from(H, H.random(rng)))
                    reps.append(r)
                    reps.append(cover_epi(cok, L, x, proj.alpha[t] @ a if a.size else a,
                                          proj.beta[u] @ b if b.size else b)[1])
        return reps
    criterion(5, 5, capsys, body)


def test_criterion_6_duality(capsys):
    def body():
        reps = []
        for k, name in enumerate(LAMBDA_FIXTURES):
            L = fixture(name).L
            rng = _rng(600 + k)
            for x in L.objects:
                P, _, _ = projective_iso(L, x)
                reps.append(nu_square_check(P, L)[1])
                reps.append(double_dual_check(representable(L, x))[1])
            for _ in range(25):
                tr = random_triple(L.bimod, rng)
                reps.append(nu_square_check(tr, L)[1])
                reps.append(double_dual_check(module_from_triple(tr, L))[1])
        return reps
    criterion(6, 10, capsys, body)


def _hom_dims_exact(C, L, H, name):
    r = Report(name)
    for x, y in itertools.product(C.objects, repeat=2):
        r.checked += 1
        if C.dim(x, y) != L.dim(H.obj_map[x], H.obj_map[y]):
            r.fail(source=x, target=y)
    return r


def test_criterion_7_applications(capsys):
    def body():
        reps = []
        for name in ("a2", "a3", "window3"):
            pc = fixture(name).pc if name == "window3" else quiver_category(name)
            L, H, r = apps.splitting_equivalence(apps.sink_partition(pc))
            reps += [r, _hom_dims_exact(pc, L, H, f"splitting_dims[{name}]")]
        for name in ("a3", "a3_rel"):
            q = parse_quiver(quiver_text(name))
            for i in q.sources():
                ope = apps.one_point_extension(q, i)
                reps += [ope.report,
                         _hom_dims_exact(path_category(q), ope.L, ope.functor, f"one_point[{name}]")]
        for name, expect in (("a2", 1), ("kronecker", 2)):
            pc = quiver_category(name)
            S = simples(pc)
            E = apps.ext1_matrix_category(pc, S)
            r = Report(f"ext1[{name}]")
            nonzero = [sp.dim for sp in E.bimod.space.values() if sp.dim]
            r.checked += 1
            if nonzero != [expect]:
                r.fail(blocks=nonzero)
            for (u, t), sp in E.bimod.space.items():
                r.checked += 1
                if sp.dim != ext1_dim_oracle(pc, S[t], S[u]):
                    r.fail(U=u, T=t)
            reps += [r, check_bimodule(E.bimod), check_category_axioms(E)]
            r = Report(f"ext1_projectives[{name}]")
            r.checked += 1
            if apps.ext1_matrix_category(pc, projectives(pc)).bimod.total_dim():
                r.fail()
            reps.append(r)
        return reps
    criterion(7, 10, capsys, body)


# criterion 8 ----------------------------------------------------------------

SUITE_NAMES = ("axioms", "radical", "equivalence", "adjunction", "duality", "applications")

A4 = """field Q
vertex 1
vertex 2
vertex 3
vertex 4
arrow a : 1 -> 2
arrow b : 2 -> 3
arrow c : 3 -> 4
"""


def _corrupt_files(tmp_path):
    d = jsonio.category_to_dict(path_category(parse_quiver(A4)))
    for c in d["composition"]:
        if c["objects"] == ["1", "3", "4"]:
            c["table"]["entries"][0][3] = "2/1"
    cat = tmp_path / "cat.json"
    cat.write_text(jsonio.dumps(d))

    d = jsonio.lambda_to_dict(fixture("a3").L)
    d["bimodule"]["right"]["1->1->3"]["entries"][0][3] = "2/1"
    lam = tmp_path / "lambda.json"
    lam.write_text(jsonio.dumps(d))

    L = fixture("a3").L
    P, _, _ = projective_iso(L, "1|3")
    d = jsonio.triple_to_dict(P)
    d["act"]["3->2"]["entries"][0][3] = "2/1"
    tr = tmp_path / "triple.json"
    tr.write_text(jsonio.dumps(d))
    return {
        "associativity": (["--category", cat], "category_axioms", "law", "associativity"),
        "bimodule": (["--lambda", lam], "bimodule", "law", "right_identity"),
        "triple_action": (["--lambda", "a3", "--triple", tr], "triple", None, None),
    }


def test_criterion_8_negative_controls(capsys, tmp_path):
    cases = _corrupt_files(tmp_path)

    def body():
        reps = []
        for (label, (args, check, key, value)), suite in itertools.product(cases.items(), SUITE_NAMES):
            r = Report(f"{label}/{suite}")
            code = main(["check", "--suite", suite, *map(str, args)])
            out, _ = capsys.readouterr()
            r.checked += 1
            bad = [e for e in json.loads(out)["checks"] if not e["passed"]]
            if code != 3 or not bad or bad[0]["check"] != check or not bad[0]["failures"]:
                r.fail(code=code, failing=[e["check"] for e in bad])
            elif key and bad[0]["failures"][0].get(key) != value:
                r.fail(witness=bad[0]["failures"][0])
            reps.append(r)
        return reps
    criterion(8, 30, capsys, body)
