import numpy as np
import pytest
from hypothesis import given, strategies as st

from trimatcat.bimodule import mt_module, zero_bimodule
from trimatcat.exact_linalg import QQ
from trimatcat.fixtures import LAMBDA_FIXTURES, fixture, quiver_category, simples
from trimatcat.functor_modules import (
    Adjunction, FiniteModule, ModuleError, ModuleTriple, PresentationError, Presentation,
    TripleError, TripleMorphism, canonical_presentation, check_adjunction_naturality,
    check_f_representable, check_full_faithful, check_module, check_presentation,
    check_roundtrip, check_triple, check_triple_morphism, cover_epi, f_functor, g_functor,
    hom_modules, hom_triples, identity_nat, identity_triple_morphism, kernel_cokernel_triples,
    module_from_presentation, module_from_triple, projective_iso, projective_triple,
    random_module, random_module_map, random_triple, representable, roundtrip_iso,
    trivial_presentation, triple_from_module, zero_module, zero_triple,
)

seeds = st.integers(0, 2**32 - 1)


def regular_a2():
    """A(t) = K, B(u) = K, m·x = mx."""
    M = fixture("a2").M
    A = FiniteModule(M.tcat, {"t": 1}, {("t", "t"): [[[1]]]})
    B = FiniteModule(M.ucat, {"u": 1}, {("u", "u"): [[[1]]]})
    act = {("u", "t"): QQ.array([1], (1, 1, 1))}
    return ModuleTriple(M, A, B, act)


# --- modules ---------------------------------------------------------------


def test_from_arrows_checks_functoriality():
    pc = quiver_category("a3")
    C = FiniteModule.from_arrows(pc, {"1": 1, "2": 1, "3": 1}, {"a": [[1]], "b": [[2]]})
    assert check_module(C).ok
    assert C.matrix("1", "3", pc.parse_morphism("b*a")).tolist() == [[2]]


def test_bad_action_is_reported():
    pc = quiver_category("a2")
    C = FiniteModule(pc, {"t": 1, "u": 1}, {("t", "t"): [[[2]]]})
    assert not check_module(C).ok


def test_action_shape_validated():
    with pytest.raises(ModuleError):
        FiniteModule(quiver_category("a2"), {"t": 1}, {("t", "t"): [[[1, 0]]]})


def test_hom_modules_examples():
    pc = quiver_category("a2")
    S = simples(pc)
    assert hom_modules(S["St"], S["Su"]).dim == 0
    P = representable(pc, "t")
    assert hom_modules(P, P).dim >= 1


def test_hom_modules_base_mismatch():
    with pytest.raises(ModuleError):
        hom_modules(zero_module(quiver_category("a2")), zero_module(quiver_category("a3")))


@pytest.mark.parametrize("name", ["a2", "a3", "kronecker"])
@given(seed=seeds)
def test_yoneda(name, seed):
    pc = quiver_category(name)
    A, _ = random_module(pc, np.random.default_rng(seed))
    for x in pc.objects:
        assert hom_modules(representable(pc, x), A).dim == A.dims[x]


@pytest.mark.parametrize("name", ["a3", "kronecker"])
@given(seed=seeds)
def test_random_module_presentation_exact(name, seed):
    pc = quiver_category(name)
    A, pres = random_module(pc, np.random.default_rng(seed))
    assert check_module(A).ok
    assert check_presentation(A, pres).ok
    assert check_presentation(A, canonical_presentation(A)).ok


def test_non_exact_presentation_rejected():
    M = fixture("a3").M
    A = representable(M.tcat, "1")
    # a zero generator at 2 does not reach A(1)
    pres = Presentation(M.tcat, ["2"], [], {}, [QQ.zero_vector(1)])
    with pytest.raises(PresentationError):
        f_functor(M, A, pres)
    wrong_size = Presentation(M.tcat, ["2"], [], {}, [QQ.zero_vector(0)])
    assert not check_presentation(A, wrong_size).ok


# --- triples and 𝔉 ------------------------------------------------------------


def test_module_from_triple_zero_action():
    M = fixture("a2").M
    tr = ModuleTriple(M, representable(M.tcat, "t"), zero_module(M.ucat), {})
    C = module_from_triple(tr, fixture("a2").L)
    assert C.dims == {"t|u": 1}


def test_module_from_regular_triple():
    L = fixture("a2").L
    C = module_from_triple(regular_a2(), L)
    assert C.dims == {"t|u": 2}
    assert C.matrix("t|u", "t|u", QQ.array([0, 1, 0])).tolist() == [[0, 0], [1, 0]]
    assert check_module(C).ok


def test_zero_triple_gives_zero_module():
    f = fixture("a3")
    assert module_from_triple(zero_triple(f.M), f.L).is_zero()
    back = triple_from_module(zero_module(f.L), f.L)
    assert back.A.is_zero() and back.B.is_zero()


def test_invalid_triple_named():
    tr = regular_a2()
    act = {("u", "t"): QQ.array([1], (1, 1, 1))}
    bad_B = FiniteModule(tr.M.ucat, {"u": 1}, {("u", "u"): [[[1]]]})
    # break (u•m)·x = u⋄(m·x) by a wrong identity action on A
    bad_A = FiniteModule(tr.M.tcat, {"t": 1}, {("t", "t"): [[[3]]]})
    bad = ModuleTriple(tr.M, bad_A, bad_B, act)
    rep = check_triple(bad)
    assert not rep.ok
    with pytest.raises(TripleError):
        module_from_triple(bad, fixture("a2").L)


def test_a3_corrupted_triple_fails_compatibility():
    f = fixture("a3")
    P = projective_triple(f.L, "1|3")
    act = {k: v.copy() for k, v in P.act.items()}
    act[("3", "2")][0, 0, 0] += 1
    rep = check_triple(ModuleTriple(f.M, P.A, P.B, act))
    assert any("(m•t)" in str(fl) for fl in rep.failures)


def test_representable_extraction_a2():
    L = fixture("a2").L
    tr = triple_from_module(representable(L, "t|u"), L)
    assert tr.A.dims == {"t": 1}
    assert tr.B.dims == {"u": 2}


@pytest.mark.parametrize("name", LAMBDA_FIXTURES)
@given(seed=seeds)
def test_roundtrip_identity_on_data(name, seed):
    f = fixture(name)
    tr = random_triple(f.M, np.random.default_rng(seed))
    assert check_triple(tr).ok
    assert check_roundtrip(tr, f.L).ok


@pytest.mark.parametrize("name", LAMBDA_FIXTURES)
@given(seed=seeds)
def test_full_faithful(name, seed):
    f = fixture(name)
    rng = np.random.default_rng(seed)
    t1, t2 = random_triple(f.M, rng), random_triple(f.M, rng)
    assert check_full_faithful(t1, t2, f.L).ok


@pytest.mark.parametrize("name", ["a2", "a3", "kronecker"])
def test_roundtrip_iso_on_representables(name):
    L = fixture(name).L
    for x in L.objects:
        _, psi, phi, rep = roundtrip_iso(representable(L, x), L)
        assert rep.ok


@given(seed=seeds)
def test_roundtrip_iso_on_random_lambda_modules(seed):
    L = fixture("a3").L
    C, _ = random_module(L, np.random.default_rng(seed), max_gens=2, max_rels=1)
    assert roundtrip_iso(C, L)[3].ok


# --- 𝔾 and 𝔽 ------------------------------------------------------------------


def test_g_examples():
    M = fixture("a2").M
    assert g_functor(M, representable(M.ucat, "u")).dims == {"t": 1}
    assert g_functor(M, zero_module(M.ucat)).is_zero()
    Z = zero_bimodule(M.tcat, M.ucat)
    assert g_functor(Z, representable(M.ucat, "u")).is_zero()


@pytest.mark.parametrize("name", LAMBDA_FIXTURES)
def test_f_of_representable_is_m_t(name):
    M = fixture(name).M
    for t in M.tcat.objects:
        assert check_f_representable(M, t).ok


def test_f_examples():
    M = fixture("a3").M
    tc = M.tcat
    # S1 = coker(Hom(2,−) → Hom(1,−)) via a
    pres = Presentation(tc, ["1"], ["2"], {(0, 0): QQ.array([1])})
    S1 = module_from_presentation(pres)
    assert S1.dims == {"1": 1, "2": 0}
    assert f_functor(M, S1, pres).dims == {"3": 0}
    # A = 0 presented by the identity
    pres0 = Presentation(tc, ["1"], ["1"], {(0, 0): tc.identity("1")})
    Z = module_from_presentation(pres0)
    assert Z.is_zero() and f_functor(M, Z, pres0).is_zero()
    assert f_functor(M, representable(tc, "2"), trivial_presentation(tc, "2")) == mt_module(M, "2")


@pytest.mark.parametrize("name", LAMBDA_FIXTURES)
@given(seed=seeds)
def test_adjunction_bijection(name, seed):
    M = fixture(name).M
    rng = np.random.default_rng(seed)
    A, pres = random_module(M.tcat, rng)
    B, _ = random_module(M.ucat, rng)
    adj = Adjunction(M, A, pres, B)
    assert adj.left.dim == adj.right.dim
    assert adj.check().ok


def test_adjunction_zero_b():
    M = fixture("a2").M
    A, pres = random_module(M.tcat, np.random.default_rng(0))
    adj = Adjunction(M, A, pres, zero_module(M.ucat))
    assert adj.left.dim == adj.right.dim == 0


@pytest.mark.parametrize("name", ["a3", "kronecker"])
@given(seed=seeds)
def test_adjunction_representable_is_yoneda(name, seed):
    M = fixture(name).M
    B, _ = random_module(M.ucat, np.random.default_rng(seed))
    G = g_functor(M, B)
    for t in M.tcat.objects:
        adj = Adjunction(M, representable(M.tcat, t), trivial_presentation(M.tcat, t), B)
        assert adj.left.dim == hom_modules(mt_module(M, t), B).dim == G.dims[t]


@pytest.mark.parametrize("name", ["a2", "a3", "kronecker"])
@given(seed=seeds)
def test_adjunction_naturality(name, seed):
    M = fixture(name).M
    rng = np.random.default_rng(seed)
    A, pres = random_module(M.tcat, rng)
    A2, pres2 = random_module(M.tcat, rng)
    B, _ = random_module(M.ucat, rng)
    B2, _ = random_module(M.ucat, rng)
    g = random_module_map(B, B2, rng)
    h = random_module_map(A2, A, rng)
    assert check_adjunction_naturality(M, A, pres, B, B2, g, A2, pres2, h).ok


# --- projectives, kernels, epis --------------------------------------------------


def test_projective_examples():
    L = fixture("a2").L
    P = projective_triple(L, "t|u")
    assert P.B.dims == {"u": 2}
    A3 = fixture("a3").L
    assert projective_triple(A3, "1|3").B.dims == {"3": 2}


def test_projective_splits_for_zero_bimodule():
    from trimatcat.trimat import product_lambda
    f = fixture("a3")
    L = product_lambda(f.M.tcat, f.M.ucat)
    P = projective_triple(L, "1|3")
    assert P.A == representable(L.tcat, "1")
    assert P.B == representable(L.ucat, "3")
    assert all(not np.any(a) for a in P.act.values())


@pytest.mark.parametrize("name", LAMBDA_FIXTURES)
def test_projective_iso_every_object(name):
    L = fixture(name).L
    for x in L.objects:
        _, phi, rep = projective_iso(L, x)
        assert rep.ok


def test_kernel_cokernel_identity_and_zero():
    f = fixture("a3")
    tr = random_triple(f.M, np.random.default_rng(3))
    ker, cok, _, _, rep = kernel_cokernel_triples(identity_triple_morphism(tr))
    assert rep.ok and ker.A.is_zero() and ker.B.is_zero() and cok.A.is_zero() and cok.B.is_zero()
    zero = TripleMorphism(tr, tr, {t: 0 * m for t, m in identity_nat(tr.A).items()},
                          {u: 0 * m for u, m in identity_nat(tr.B).items()})
    ker, cok, _, _, rep = kernel_cokernel_triples(zero)
    assert rep.ok and ker.dims() == tr.dims() and cok.dims() == tr.dims()


def test_cokernel_of_b_part_is_a_part():
    tr = regular_a2()
    M = tr.M
    sub = ModuleTriple(M, zero_module(M.tcat), tr.B, {})
    inc = TripleMorphism(sub, tr, {"t": QQ.zeros(1, 0)}, {"u": QQ.eye(1)})
    assert check_triple_morphism(inc).ok
    ker, cok, _, _, rep = kernel_cokernel_triples(inc)
    assert rep.ok
    assert cok.A.dims == {"t": 1} and cok.B.dims == {"u": 0}
    assert ker.A.is_zero() and ker.B.is_zero()


@pytest.mark.parametrize("name", ["a3", "kronecker"])
@given(seed=seeds)
def test_kernel_cokernel_random(name, seed):
    f = fixture(name)
    rng = np.random.default_rng(seed)
    t1, t2 = random_triple(f.M, rng), random_triple(f.M, rng)
    H = hom_triples(t1, t2)
    if H.dim:
        from trimatcat.functor_modules import triple_morphism_from
        phi = triple_morphism_from(H, H.random(rng))
        assert check_triple_morphism(phi).ok
        assert kernel_cokernel_triples(phi)[4].ok


def test_cover_epi_cases():
    L = fixture("a2").L
    P = projective_triple(L, "t|u")
    gamma, rep = cover_epi(P, L, "t|u", QQ.array([1]), QQ.array([0, 1]))
    assert rep.ok
    for t, m in gamma.alpha.items():
        assert np.array_equal(m, QQ.eye(m.shape[0]))
    gamma, rep = cover_epi(regular_a2(), L, "t|u", QQ.array([1]), QQ.array([1]))
    assert rep.ok
    z = zero_triple(L.bimod)
    _, rep = cover_epi(z, L, "t|u", QQ.zero_vector(0), QQ.zero_vector(0))
    assert rep.ok


def test_cover_epi_rejects_non_surjective():
    L = fixture("a2").L
    with pytest.raises(ModuleError):
        cover_epi(regular_a2(), L, "t|u", QQ.array([0]), QQ.array([0]))
